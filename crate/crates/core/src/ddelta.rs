//! D^Δ-pairs `(L, u)`: a p-group with a p'-automorphism, the semidirect
//! product `L⟨u⟩`, its pair automorphisms, enumeration up to pair
//! isomorphism, and the structural test for non-vanishing essential algebras.

use std::collections::BTreeSet;

use num_integer::Integer;

use crate::auto::{automorphisms, for_each_isomorphism, AutGroup, AutMap, DEFAULT_AUT_CAP};
use crate::catalogue::{named_group, p_group_names};
use crate::error::{Error, Result};
use crate::group::{is_power_of, PermGroup, Subgroup};

/// `L ⋊ ⟨u⟩` realized by its left regular action on `|L|·ord(u)` points.
#[derive(Clone, Debug)]
pub struct Semidirect {
    pub group: PermGroup,
    /// Image of each element of `L`.
    pub embed_l: Vec<usize>,
    /// `embed_u[k]` is the image of `u^k`.
    pub embed_u: Vec<usize>,
}

impl Semidirect {
    /// The element `u`.
    pub fn u(&self) -> usize {
        self.embed_u[1 % self.embed_u.len()]
    }

    pub fn l_subgroup(&self) -> Subgroup {
        Subgroup::from_members(self.embed_l.clone())
    }

    /// Position in `L` of an element of the image of `L`.
    pub fn l_preimage(&self, x: usize) -> Option<usize> {
        self.embed_l.iter().position(|&y| y == x)
    }
}

/// Builds `L⟨u⟩` for an automorphism `u` of `L`.
pub fn semidirect(l: &PermGroup, u: &AutMap) -> Result<Semidirect> {
    let m = l.order();
    let n = u.order();
    let mut pows = vec![AutMap::identity(m)];
    for k in 1..n {
        pows.push(u.compose(&pows[k - 1]));
    }
    // (a, i) has index a + m i
    let mul = |x: usize, y: usize| {
        let (a, i) = (x % m, x / m);
        let (b, j) = (y % m, y / m);
        l.mul(a, pows[i].apply(b)) + m * ((i + j) % n)
    };
    let mut gens = l.generator_indices();
    if n > 1 {
        gens.push(m);
    }
    let (group, embed) = PermGroup::regular_representation(m * n, mul, &gens)?;
    Ok(Semidirect {
        embed_l: embed[..m].to_vec(),
        embed_u: (0..n).map(|k| embed[m * k]).collect(),
        group,
    })
}

#[derive(Clone, Debug)]
pub struct DDeltaPair {
    /// Label of `L` (a catalogue name when known).
    pub name: String,
    pub l: PermGroup,
    pub u: AutMap,
    pub p: u64,
}

impl DDeltaPair {
    pub fn new(name: impl Into<String>, l: PermGroup, u: AutMap, p: u64) -> Result<Self> {
        if !is_ddelta_pair(&l, &u, p) {
            return Err(Error::InvalidInput(
                "not a D^Δ-pair: L must be a p-group and u a p'-automorphism".into(),
            ));
        }
        Ok(DDeltaPair {
            name: name.into(),
            l,
            u,
            p,
        })
    }

    /// The pair `(L, 1)`.
    pub fn trivial_u(name: impl Into<String>, l: PermGroup, p: u64) -> Result<Self> {
        let id = AutMap::identity(l.order());
        Self::new(name, l, id, p)
    }

    pub fn u_order(&self) -> usize {
        self.u.order()
    }

    /// Short text form, e.g. `(V4, u of order 3)`.
    pub fn describe(&self) -> String {
        match self.u_order() {
            1 => format!("({}, 1)", self.name),
            k => format!("({}, u of order {k})", self.name),
        }
    }
}

/// `L` is a p-group and `u` an automorphism of `L` of order prime to `p`.
pub fn is_ddelta_pair(l: &PermGroup, u: &AutMap, p: u64) -> bool {
    u.len() == l.order()
        && is_power_of(l.order(), p)
        && (u.order() as u64).gcd(&p) == 1
        && u.is_homomorphism(l, l)
        && {
            let mut seen = vec![false; l.order()];
            (0..l.order()).all(|x| !std::mem::replace(&mut seen[u.apply(x)], true))
        }
}

/// Automorphism data of a pair.
#[derive(Clone, Debug)]
pub struct PairAutData {
    pub pair: DDeltaPair,
    pub product: Semidirect,
    /// `Aut(L⟨u⟩)`.
    pub aut_lu: AutGroup,
    /// `Aut(L, u)`: automorphisms sending `u` to a conjugate of `u`.
    pub aut_pair: AutGroup,
}

impl PairAutData {
    pub fn out_pair_order(&self) -> usize {
        self.aut_pair.out_order()
    }

    /// Generators of `Out(L,u)` as class indices, labelled `o1, o2, ...`.
    pub fn out_generators(&self) -> Vec<(String, usize)> {
        self.aut_pair
            .out_generators()
            .into_iter()
            .enumerate()
            .map(|(i, c)| (format!("o{}", i + 1), c))
            .collect()
    }

    /// Outer class in `Out(L,u)` of an element of `Aut(L,u)` given as a map.
    pub fn out_class_of(&self, m: &AutMap) -> Option<usize> {
        self.aut_pair.index_of(m).map(|i| self.aut_pair.out_class(i))
    }
}

pub fn pair_aut(pair: &DDeltaPair) -> Result<PairAutData> {
    let product = semidirect(&pair.l, &pair.u)?;
    let g = &product.group;
    let aut_lu = automorphisms(g, DEFAULT_AUT_CAP)?;
    let u = product.u();
    let aut_pair = aut_lu.filter(g, |m| g.are_conjugate(m.apply(u), u));
    Ok(PairAutData {
        pair: pair.clone(),
        product,
        aut_lu,
        aut_pair,
    })
}

/// Whether some isomorphism `L⟨u⟩ → L'⟨u'⟩` sends `u` to a conjugate of `u'`.
pub fn pairs_isomorphic(a: &DDeltaPair, b: &DDeltaPair) -> Result<bool> {
    if a.l.order() != b.l.order() || a.u_order() != b.u_order() || a.p != b.p {
        return Ok(false);
    }
    let sa = semidirect(&a.l, &a.u)?;
    let sb = semidirect(&b.l, &b.u)?;
    let (ua, ub) = (sa.u(), sb.u());
    let mut found = false;
    for_each_isomorphism(&sa.group, &sb.group, &sb.group.whole(), &mut |m| {
        found = sb.group.are_conjugate(m.apply(ua), ub);
        !found
    });
    Ok(found)
}

/// Representatives of the `Aut(L)`-conjugacy classes of p'-elements of
/// `Aut(L)`, each the least map of its class.
fn pprime_aut_classes(aut: &AutGroup, p: u64) -> Vec<AutMap> {
    let n = aut.order();
    let gens: Vec<usize> = {
        // all maps generate; a smaller generating set keeps orbits cheap
        let mut gens = Vec::new();
        let mut reached: BTreeSet<usize> = BTreeSet::from([0]);
        for a in 0..n {
            if reached.contains(&a) {
                continue;
            }
            gens.push(a);
            let mut list: Vec<usize> = reached.iter().copied().collect();
            let mut i = 0;
            while i < list.len() {
                for &s in &gens {
                    let y = aut.compose(s, list[i]);
                    if reached.insert(y) {
                        list.push(y);
                    }
                }
                i += 1;
            }
        }
        gens
    };
    let mut seen = vec![false; n];
    let mut reps = Vec::new();
    for a in 0..n {
        if seen[a] || (aut.map(a).order() as u64) % p == 0 {
            continue;
        }
        seen[a] = true;
        let mut orbit = vec![a];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for &s in &gens {
                let sinv = aut.index_of(&aut.map(s).inverse()).unwrap();
                let y = aut.compose(aut.compose(s, x), sinv);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        reps.push(aut.map(*orbit.iter().min().unwrap()).clone());
    }
    reps.sort();
    reps
}

/// All D^Δ-pairs with `|L| ≤ max_order` from the p-group catalogue, up to
/// pair isomorphism; sorted by `|L|`, catalogue position, then `u`.
pub fn enumerate_ddelta_pairs(p: u64, max_order: usize) -> Result<Vec<DDeltaPair>> {
    let mut out = Vec::new();
    for name in p_group_names(p, max_order)? {
        let l = named_group(&name)?;
        let aut = automorphisms(&l, DEFAULT_AUT_CAP)?;
        for u in pprime_aut_classes(&aut, p) {
            out.push(DDeltaPair::new(name.clone(), l.clone(), u, p)?);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VanishingReason {
    NoNormalSylowComplementForm,
    KNotElementaryOrSplitFailure,
    KNotCyclic,
    KNotFaithful,
}

impl std::fmt::Display for VanishingReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Self::NoNormalSylowComplementForm => "NoNormalSylowComplementForm",
            Self::KNotElementaryOrSplitFailure => "KNotElementaryOrSplitFailure",
            Self::KNotCyclic => "KNotCyclic",
            Self::KNotFaithful => "KNotFaithful",
        };
        f.write_str(s)
    }
}

/// The structural data of `G = P ⋊ K` with `K = ⟨k⟩` cyclic and faithful.
#[derive(Clone, Debug)]
pub struct SupportData {
    pub sylow: Subgroup,
    pub complement: Subgroup,
    /// Least generator of the complement.
    pub k_generator: usize,
    /// `P` as a group; local index `i` is `sylow.members()[i]`.
    pub l: PermGroup,
    /// Conjugation by `k_generator` on `l`.
    pub u: AutMap,
}

impl SupportData {
    pub fn k_order(&self) -> usize {
        self.complement.order()
    }
}

#[derive(Clone, Debug)]
pub enum EssentialSupport {
    NonVanishing(SupportData),
    Vanishing(VanishingReason),
}

impl EssentialSupport {
    pub fn is_nonvanishing(&self) -> bool {
        matches!(self, EssentialSupport::NonVanishing(_))
    }
}

/// Searches a complement to the normal Sylow p-subgroup: a p'-subgroup of
/// order `|G|/|P|`.
pub fn find_complement(g: &PermGroup, p: u64, sylow: &Subgroup) -> Option<Subgroup> {
    let target = g.order() / sylow.order();
    if sylow.order() == 1 {
        return Some(g.whole());
    }
    let pprime: Vec<usize> = (1..g.order())
        .filter(|&x| g.elem_order(x) as u64 % p != 0)
        .collect();
    let mut visited: BTreeSet<Subgroup> = BTreeSet::new();
    let mut stack = vec![g.trivial()];
    while let Some(h) = stack.pop() {
        if h.order() == target {
            return Some(h);
        }
        for &x in pprime.iter().rev() {
            if h.contains(x) {
                continue;
            }
            let mut gens = g.generating_set(&h);
            gens.push(x);
            let k = g.subgroup_generated(&gens);
            if k.order() as u64 % p != 0 && target % k.order() == 0 && visited.insert(k.clone()) {
                stack.push(k);
            }
        }
    }
    None
}

/// Nilpotent with at most one non-cyclic Sylow subgroup.
fn is_elementary(g: &PermGroup, k: &Subgroup) -> bool {
    let mut non_cyclic = 0;
    for q in crate::group::prime_divisors(k.order()) {
        let s = g.sylow_of(q, k);
        if !g.is_normal_in(&s, k) {
            return false;
        }
        if !s.members().iter().any(|&x| g.elem_order(x) == s.order()) {
            non_cyclic += 1;
        }
    }
    non_cyclic <= 1
}

/// Support data of `L⟨u⟩` with `L` as the Sylow subgroup and `⟨u⟩` as the
/// complement.
pub fn support_for_pair(s: &Semidirect) -> SupportData {
    let g = &s.group;
    let sylow = s.l_subgroup();
    let gen = s.u();
    let l = g.subgroup_as_group(&sylow);
    let pos = |x: usize| sylow.members().binary_search(&x).unwrap();
    let u = AutMap::from_images(sylow.members().iter().map(|&x| pos(g.conj(gen, x))).collect());
    SupportData {
        complement: Subgroup::from_members(s.embed_u.clone()),
        sylow,
        k_generator: gen,
        l,
        u,
    }
}

/// Structural classification of non-vanishing essential algebras, with the
/// first failing condition reported.
pub fn essential_support(g: &PermGroup, p: u64) -> EssentialSupport {
    use VanishingReason::*;
    let sylow = g.sylow(p);
    if !g.is_normal(&sylow) {
        return EssentialSupport::Vanishing(NoNormalSylowComplementForm);
    }
    let k = match find_complement(g, p, &sylow) {
        Some(k) if is_elementary(g, &k) => k,
        _ => return EssentialSupport::Vanishing(KNotElementaryOrSplitFailure),
    };
    let Some(&gen) = k.members().iter().find(|&&x| g.elem_order(x) == k.order()) else {
        return EssentialSupport::Vanishing(KNotCyclic);
    };
    if g.centralizer_in(sylow.members(), &k).order() != 1 {
        return EssentialSupport::Vanishing(KNotFaithful);
    }
    let l = g.subgroup_as_group(&sylow);
    let pos = |x: usize| sylow.members().binary_search(&x).unwrap();
    let u = AutMap::from_images(sylow.members().iter().map(|&x| pos(g.conj(gen, x))).collect());
    EssentialSupport::NonVanishing(SupportData {
        sylow,
        complement: k,
        k_generator: gen,
        l,
        u,
    })
}

/// Automorphisms of `g` restricting to the identity on `p`, and the
/// conjugations by elements of `Z(p)`, as sorted lists.
pub fn pointwise_fixers(g: &PermGroup, p: &Subgroup) -> Result<(Vec<AutMap>, Vec<AutMap>)> {
    let aut = automorphisms(g, DEFAULT_AUT_CAP)?;
    let fixing: Vec<AutMap> = aut
        .maps()
        .iter()
        .filter(|m| p.members().iter().all(|&x| m.apply(x) == x))
        .cloned()
        .collect();
    let central: BTreeSet<AutMap> = g
        .center_of(p)
        .members()
        .iter()
        .map(|&z| AutMap::inner(g, z))
        .collect();
    Ok((fixing, central.into_iter().collect()))
}
