//! Evaluations of simple diagonal p-permutation functors: defect profiles,
//! the sets `ζ(G,Q)`, `𝒵(G,L)` and `𝒫(G,L,u)` up to conjugation, the groups
//! `G_{Q,δ} ≤ G_{Q,δ,u} ≤ Ĝ_{Q,δ}` with the maps `θ_g`, and dimensions of
//! evaluations as ranks of relative trace maps.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use crate::auto::{isomorphisms, AutMap};
use crate::cartan::cartan_matrix;
use crate::ddelta::PairAutData;
use crate::error::{Error, Result};
use crate::ffmat::{Echelon, Mat};
use crate::gf::{Elem, Gf};
use crate::group::{p_part, PermGroup, Subgroup};
use crate::ident::{iso_label, subgroups_isomorphic};
use crate::meataxe::extend_to_elements;

/// Defect of one p-regular class.
#[derive(Clone, Debug)]
pub struct DefectEntry {
    pub representative: usize,
    pub class_size: usize,
    /// A Sylow p-subgroup of the centralizer of the representative.
    pub defect: Subgroup,
    pub label: String,
}

pub fn defect_profile(g: &PermGroup, p: u64) -> Vec<DefectEntry> {
    g.p_regular_classes(p)
        .into_iter()
        .map(|c| {
            let cent = g.centralizer(&[c.representative]);
            let defect = g.sylow_of(p, &cent);
            DefectEntry {
                representative: c.representative,
                class_size: c.size,
                label: iso_label(g, &defect),
                defect,
            }
        })
        .collect()
}

/// Number of p-regular classes whose defect is isomorphic to `l`.
pub fn dim_simple_l1_trivial(g: &PermGroup, p: u64, l: &PermGroup) -> usize {
    defect_profile(g, p)
        .iter()
        .filter(|e| subgroups_isomorphic(g, &e.defect, l, &l.whole()))
        .count()
}

/// One `N_G(Q)`-orbit on `ζ(G,Q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaRep {
    /// Least element of the orbit.
    pub z: usize,
    pub orbit_size: usize,
    /// `|N_G(Q,z) C_G(Q)|`.
    pub stabilizer_order: usize,
    /// Number of `n ∈ N_G(Q)` fixing the class of `z` in `QC_G(Q)/Q`,
    /// counted directly.
    pub class_stabilizer_order: usize,
    /// `|N_G(Q,z) C_G(Q) / QC_G(Q)|`.
    pub quotient_stabilizer_order: usize,
}

#[derive(Clone, Debug)]
pub struct ZetaOrbits {
    pub q: Subgroup,
    pub reps: Vec<ZetaRep>,
}

/// Whether `z ∈ ζ(G,Q)`: a p'-element of `C_G(Q)` such that `Z(Q)` is a
/// Sylow p-subgroup of `C_G(Q,z)`.
pub fn in_zeta(g: &PermGroup, p: u64, q: &Subgroup, z: usize) -> bool {
    if !g.is_p_regular(z, p) || q.members().iter().any(|&x| g.mul(x, z) != g.mul(z, x)) {
        return false;
    }
    let mut set = q.members().to_vec();
    set.push(z);
    let c = g.centralizer(&set);
    p_part(c.order(), p) == g.center_of(q).order()
}

pub fn zeta(g: &PermGroup, p: u64, q: &Subgroup) -> ZetaOrbits {
    let cq = g.centralizer(q.members());
    let nq = g.normalizer(q);
    let qcq = g.product_set(q, &cq);
    let members: Vec<usize> = cq.members().iter().copied().filter(|&z| in_zeta(g, p, q, z)).collect();
    let mut seen = HashSet::new();
    let mut reps = Vec::new();
    for &z in &members {
        if seen.contains(&z) {
            continue;
        }
        let orbit: BTreeSet<usize> = nq.members().iter().map(|&n| g.conj(n, z)).collect();
        seen.extend(orbit.iter().copied());
        let nqz = g.centralizer_in(&[z], &nq);
        let stab = g.product_set(&nqz, &cq);
        let class_stab = nq
            .members()
            .iter()
            .filter(|&&n| {
                let y = g.conj(n, z);
                cq.members()
                    .iter()
                    .any(|&c| q.contains(g.mul(g.conj(c, y), g.inv(z))))
            })
            .count();
        reps.push(ZetaRep {
            z,
            orbit_size: orbit.len(),
            stabilizer_order: stab.order(),
            class_stabilizer_order: class_stab,
            quotient_stabilizer_order: stab.order() / qcq.order(),
        });
    }
    ZetaOrbits { q: q.clone(), reps }
}

/// Representatives of the conjugacy classes of subgroups of `g` isomorphic
/// to the p-group `l`.
pub fn subgroup_classes_isomorphic_to(g: &PermGroup, p: u64, l: &PermGroup) -> Vec<Subgroup> {
    if p_part(g.order(), p) % l.order() != 0 {
        return Vec::new();
    }
    g.p_subgroup_classes(p)
        .into_iter()
        .filter(|q| q.order() == l.order() && subgroups_isomorphic(l, &l.whole(), g, q))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZcalRep {
    pub q: Subgroup,
    pub z: usize,
}

/// `G`-orbit representatives of `𝒵(G,L)`.
pub fn zcal(g: &PermGroup, p: u64, l: &PermGroup) -> Vec<ZcalRep> {
    subgroup_classes_isomorphic_to(g, p, l)
        .into_iter()
        .flat_map(|q| {
            zeta(g, p, &q)
                .reps
                .into_iter()
                .map(move |r| ZcalRep { q: q.clone(), z: r.z })
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Restriction data of a pair's automorphism groups to `L`.
#[derive(Clone, Debug)]
pub struct PairMaps {
    /// Restriction to `L` of every automorphism of `L⟨u⟩`, to its class in
    /// `Out(L⟨u⟩)`.
    pub lu_class: HashMap<AutMap, usize>,
    /// Restriction to `L` of every element of `Aut(L,u)`, to its class in
    /// `Out(L,u)`.
    pub pair_class: HashMap<AutMap, usize>,
    /// Restrictions to `L` of inner automorphisms of `L⟨u⟩`.
    pub inner: HashSet<AutMap>,
}

fn restrict(data: &PairAutData, m: &AutMap) -> AutMap {
    let prod = &data.product;
    AutMap::from_images(
        prod.embed_l
            .iter()
            .map(|&x| prod.l_preimage(m.apply(x)).expect("L is characteristic"))
            .collect(),
    )
}

impl PairMaps {
    /// Fails if two automorphisms with the same restriction lie in different
    /// outer classes.
    pub fn new(data: &PairAutData) -> Result<Self> {
        let mut lu_class = HashMap::new();
        for (i, m) in data.aut_lu.maps().iter().enumerate() {
            let c = data.aut_lu.out_class(i);
            if let Some(prev) = lu_class.insert(restrict(data, m), c) {
                if prev != c {
                    return Err(Error::InvariantViolation(
                        "automorphisms agreeing on L lie in different outer classes".into(),
                    ));
                }
            }
        }
        let mut pair_class = HashMap::new();
        for (i, m) in data.aut_pair.maps().iter().enumerate() {
            pair_class.insert(restrict(data, m), data.aut_pair.out_class(i));
        }
        let g = &data.product.group;
        let inner = (0..g.order())
            .map(|x| restrict(data, &AutMap::inner(g, x)))
            .collect();
        Ok(PairMaps {
            lu_class,
            pair_class,
            inner,
        })
    }
}

/// `δ⁻¹ ∘ i_g ∘ δ` for `g ∈ N_G(Q)`, with `delta[l]` the image of `l`.
pub fn conj_through(g: &PermGroup, delta: &[usize], inv: &HashMap<usize, usize>, x: usize) -> AutMap {
    AutMap::from_images(delta.iter().map(|&d| inv[&g.conj(x, d)]).collect())
}

fn inverse_map(delta: &[usize]) -> HashMap<usize, usize> {
    delta.iter().enumerate().map(|(l, &d)| (d, l)).collect()
}

/// One orbit representative `(Q, δ)` of `𝒫(G,L,u)`.
#[derive(Clone, Debug)]
pub struct PsetRep {
    pub q: Subgroup,
    /// `delta[l]` is `δ(l)`.
    pub delta: Vec<usize>,
    /// Some `s ∈ N_G(Q)` with `i_s ∘ δ = δ ∘ u`.
    pub s_u: usize,
    pub normalizer: Subgroup,
    pub g_qd: Subgroup,
    pub g_hat: Subgroup,
    pub g_qdu: Subgroup,
    /// `(g, θ_g)` for `g ∈ Ĝ_{Q,δ}`, with `θ_g` a class of `Out(L⟨u⟩)`.
    pub theta: Vec<(usize, usize)>,
}

impl PsetRep {
    pub fn g_bar_order(&self) -> usize {
        self.g_hat.order() / self.g_qd.order()
    }

    pub fn g_bar_u_order(&self) -> usize {
        self.g_qdu.order() / self.g_qd.order()
    }
}

#[derive(Clone, Debug)]
pub struct PsetOrbits {
    pub reps: Vec<PsetRep>,
}

/// Orbit representatives of `𝒫(G,L,u)` under `g·(P,γ)·φ = (gPg⁻¹, i_g∘γ∘φ)`.
pub fn pset(g: &PermGroup, data: &PairAutData) -> Result<PsetOrbits> {
    let pair = &data.pair;
    let l = &pair.l;
    let maps = PairMaps::new(data)?;
    let restrictions: Vec<AutMap> = {
        let set: BTreeSet<AutMap> = maps.lu_class.keys().cloned().collect();
        set.into_iter().collect()
    };
    let mut reps = Vec::new();
    for q in subgroup_classes_isomorphic_to(g, pair.p, l) {
        let nq = g.normalizer(&q);
        let n_gens = g.generating_set(&nq);
        let admissible: Vec<(Vec<usize>, usize)> = isomorphisms(l, g, &q)
            .into_iter()
            .filter_map(|m| {
                let delta = m.images();
                let target: Vec<usize> = (0..l.order()).map(|x| delta[pair.u.apply(x)]).collect();
                nq.members()
                    .iter()
                    .find(|&&s| delta.iter().zip(&target).all(|(&d, &t)| g.conj(s, d) == t))
                    .map(|&s| (delta, s))
            })
            .collect();
        let index: HashMap<Vec<usize>, usize> =
            admissible.iter().enumerate().map(|(i, (d, _))| (d.clone(), i)).collect();
        let mut seen = vec![false; admissible.len()];
        for start in 0..admissible.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut i = 0;
            while i < orbit.len() {
                let delta = admissible[orbit[i]].0.clone();
                let mut next: Vec<Vec<usize>> = n_gens
                    .iter()
                    .map(|&x| delta.iter().map(|&d| g.conj(x, d)).collect())
                    .collect();
                next.extend(
                    restrictions
                        .iter()
                        .map(|r| (0..l.order()).map(|x| delta[r.apply(x)]).collect()),
                );
                for d in next {
                    let j = *index.get(&d).ok_or_else(|| {
                        Error::InvariantViolation("𝒫(G,L,u) is not closed under the biset action".into())
                    })?;
                    if !seen[j] {
                        seen[j] = true;
                        orbit.push(j);
                    }
                }
                i += 1;
            }
            let rep = *orbit.iter().min_by(|&&a, &&b| admissible[a].0.cmp(&admissible[b].0)).unwrap();
            let (delta, s_u) = admissible[rep].clone();
            reps.push(pset_rep(g, &maps, q.clone(), nq.clone(), delta, s_u));
        }
    }
    Ok(PsetOrbits { reps })
}

fn pset_rep(g: &PermGroup, maps: &PairMaps, q: Subgroup, nq: Subgroup, delta: Vec<usize>, s_u: usize) -> PsetRep {
    let inv = inverse_map(&delta);
    let mut g_qd = Vec::new();
    let mut g_hat = Vec::new();
    let mut g_qdu = Vec::new();
    let mut theta = Vec::new();
    for &x in nq.members() {
        let a = conj_through(g, &delta, &inv, x);
        if maps.inner.contains(&a) {
            g_qd.push(x);
        }
        if let Some(&c) = maps.lu_class.get(&a) {
            g_hat.push(x);
            theta.push((x, c));
        }
        if maps.pair_class.contains_key(&a) {
            g_qdu.push(x);
        }
    }
    PsetRep {
        q,
        delta,
        s_u,
        normalizer: nq,
        g_qd: Subgroup::from_members(g_qd),
        g_hat: Subgroup::from_members(g_hat),
        g_qdu: Subgroup::from_members(g_qdu),
        theta,
    }
}

/// `θ_g` as a class of `Out(L⟨u⟩)`.
pub fn theta_map(rep: &PsetRep, g: usize) -> Result<usize> {
    rep.theta
        .iter()
        .find(|&&(x, _)| x == g)
        .map(|&(_, c)| c)
        .ok_or(Error::NotInGHat)
}

/// Violations of the structural laws of one `𝒫(G,L,u)` representative: the
/// chain `G_{Q,δ} ⊴ Ĝ_{Q,δ}`, `G_{Q,δ} ≤ G_{Q,δ,u} ≤ Ĝ_{Q,δ}`, and `θ` a
/// homomorphism `Ĝ_{Q,δ} → Out(L⟨u⟩)` with kernel `G_{Q,δ}`.
pub fn pset_law_violations(g: &PermGroup, data: &PairAutData, rep: &PsetRep) -> Vec<String> {
    let mut out = Vec::new();
    for (name, h) in [("G_{Q,δ}", &rep.g_qd), ("Ĝ_{Q,δ}", &rep.g_hat), ("G_{Q,δ,u}", &rep.g_qdu)] {
        if !g.is_subgroup(h.members()) {
            out.push(format!("{name} is not a subgroup"));
        }
    }
    if !rep.g_qd.is_subset_of(&rep.g_qdu) || !rep.g_qdu.is_subset_of(&rep.g_hat) {
        out.push("G_{Q,δ} ≤ G_{Q,δ,u} ≤ Ĝ_{Q,δ} fails".into());
    }
    if !g.is_normal_in(&rep.g_qd, &rep.g_hat) {
        out.push("G_{Q,δ} is not normal in Ĝ_{Q,δ}".into());
    }
    let theta: HashMap<usize, usize> = rep.theta.iter().copied().collect();
    for &(x, cx) in &rep.theta {
        if (cx == 0) != rep.g_qd.contains(x) {
            out.push(format!("kernel of θ differs from G_{{Q,δ}} at element {x}"));
            break;
        }
    }
    'outer: for &(x, cx) in &rep.theta {
        for &(y, cy) in &rep.theta {
            if theta.get(&g.mul(x, y)) != Some(&data.aut_lu.out_mul(cx, cy)) {
                out.push("θ is not a homomorphism".into());
                break 'outer;
            }
        }
    }
    out
}

/// A representation of `Out(L,u)` over `GF(p^m)`, by matrices of the
/// generator labels `o1, o2, ...`.
#[derive(Clone, Debug)]
pub struct OutRepW {
    pub field: Arc<Gf>,
    pub dim: usize,
    pub mats: Vec<(String, Mat)>,
}

impl OutRepW {
    pub fn trivial(field: Arc<Gf>, data: &PairAutData) -> Self {
        OutRepW {
            field,
            dim: 1,
            mats: data
                .out_generators()
                .into_iter()
                .map(|(label, _)| (label, Mat::identity(1)))
                .collect(),
        }
    }

    /// Matrix of every class of `Out(L,u)`, after checking the generator
    /// labels and all relations of the multiplication table.
    pub fn class_matrices(&self, data: &PairAutData) -> Result<Vec<Mat>> {
        let gens = data.out_generators();
        let mut want: Vec<&str> = gens.iter().map(|(l, _)| l.as_str()).collect();
        let mut have: Vec<&str> = self.mats.iter().map(|(l, _)| l.as_str()).collect();
        want.sort_unstable();
        have.sort_unstable();
        if want != have {
            return Err(Error::WrongPairForW(format!(
                "Out(L,u) of {} has generators [{}], W gives [{}]",
                data.pair.describe(),
                want.join(", "),
                have.join(", ")
            )));
        }
        let mats: Vec<Mat> = gens
            .iter()
            .map(|(l, _)| self.mats.iter().find(|(m, _)| m == l).unwrap().1.clone())
            .collect();
        let classes: Vec<usize> = gens.iter().map(|&(_, c)| c).collect();
        let out = &data.aut_pair;
        extend_to_elements(
            &self.field,
            self.dim,
            out.out_order(),
            0,
            &classes,
            |a, b| out.out_mul(a, b),
            &mats,
        )
    }
}

/// Least-element representatives of the left cosets of `k` in `h`.
fn coset_reps(g: &PermGroup, h: &Subgroup, k: &Subgroup) -> Vec<usize> {
    let mut covered = HashSet::new();
    let mut reps = Vec::new();
    for &x in h.members() {
        if covered.contains(&x) {
            continue;
        }
        reps.push(x);
        covered.extend(k.members().iter().map(|&y| g.mul(x, y)));
    }
    reps
}

fn sum_rank(f: &Gf, dim: usize, mats: &[&Mat]) -> usize {
    let mut acc = Mat::zero(dim, dim);
    for m in mats {
        acc = acc.add(f, m);
    }
    acc.rank(f)
}

/// `dim S_{L,1,W}(G) = Σ_{(Q,z)} rank Σ_{g ∈ N_G(Q,z)/QC_G(Q,z)} W(θ(g))`.
pub fn dim_simple_l1_w(g: &PermGroup, p: u64, data: &PairAutData, w: &OutRepW) -> Result<usize> {
    if !data.pair.u.is_identity() {
        return Err(Error::WrongPairForW(format!(
            "expected a pair (L, 1), got {}",
            data.pair.describe()
        )));
    }
    if w.field.characteristic() != p {
        return Err(Error::InvalidInput(format!(
            "W is over characteristic {}, expected {p}",
            w.field.characteristic()
        )));
    }
    let f = &w.field;
    let l = &data.pair.l;
    let rho = w.class_matrices(data)?;
    let maps = PairMaps::new(data)?;
    let mut total = 0;
    for rep in zcal(g, p, l) {
        let q = &rep.q;
        let nq = g.normalizer(q);
        let nqz = g.centralizer_in(&[rep.z], &nq);
        let mut set = q.members().to_vec();
        set.push(rep.z);
        let k = g.product_set(q, &g.centralizer(&set));
        let isos = isomorphisms(l, g, q);
        let mut ranks = Vec::new();
        for delta in [isos.first(), isos.last()].into_iter().flatten() {
            let delta = delta.images();
            let inv = inverse_map(&delta);
            let class = |x: usize| -> Result<usize> {
                maps.pair_class
                    .get(&conj_through(g, &delta, &inv, x))
                    .copied()
                    .ok_or_else(|| Error::InvariantViolation("δ⁻¹ i_g δ is not an automorphism of L".into()))
            };
            for &h in k.members() {
                if class(h)? != 0 {
                    return Err(Error::InvariantViolation(
                        "QC_G(Q,z) acts by non-inner automorphisms".into(),
                    ));
                }
            }
            let terms = coset_reps(g, &nqz, &k)
                .into_iter()
                .map(|x| class(x).map(|c| &rho[c]))
                .collect::<Result<Vec<_>>>()?;
            ranks.push(sum_rank(f, w.dim, &terms));
        }
        if ranks.windows(2).any(|r| r[0] != r[1]) {
            return Err(Error::InvariantViolation("trace rank depends on the choice of δ".into()));
        }
        total += ranks[0];
    }
    Ok(total)
}

/// Per-iso-type breakdown of the p-regular classes by defect.
#[derive(Clone, Debug)]
pub struct PartitionReport {
    /// `(label, dim S_{L,1,k}(G))` for each defect type occurring.
    pub breakdown: Vec<(String, usize)>,
    pub p_regular_classes: usize,
}

impl PartitionReport {
    pub fn total(&self) -> usize {
        self.breakdown.iter().map(|(_, d)| d).sum()
    }

    pub fn holds(&self) -> bool {
        self.total() == self.p_regular_classes
    }
}

pub fn partition_check(g: &PermGroup, p: u64) -> PartitionReport {
    let profile = defect_profile(g, p);
    let mut types: Vec<&DefectEntry> = Vec::new();
    for e in &profile {
        if !types
            .iter()
            .any(|t| subgroups_isomorphic(g, &t.defect, g, &e.defect))
        {
            types.push(e);
        }
    }
    let breakdown = types
        .iter()
        .map(|t| {
            let l = g.subgroup_as_group(&t.defect);
            (t.label.clone(), dim_simple_l1_trivial(g, p, &l))
        })
        .collect();
    PartitionReport {
        breakdown,
        p_regular_classes: profile.len(),
    }
}

/// Result of the general trace-rank evaluation for arbitrary `u`.
#[derive(Clone, Debug)]
pub struct GeneralDim {
    pub dimension: usize,
    pub per_rep: Vec<usize>,
    /// Inconsistencies met on the way; the result is only indicative when
    /// this is non-empty.
    pub warnings: Vec<String>,
}

/// `Σ_{(Q,δ)} rank Tr over Ḡ_{Q,δ,u}` on `F Cart(kC_G(Q)/Z(Q), u) ⊗ W`, with
/// `Ḡ_{Q,δ,u}` acting on simple labels of `C_G(Q)/Z(Q)` by conjugation and
/// on `W` through `θ_g`.
pub fn dim_simple_general(g: &PermGroup, data: &PairAutData, w: &OutRepW, seed: u64, cap: usize) -> Result<GeneralDim> {
    let p = data.pair.p;
    if w.field.characteristic() != p {
        return Err(Error::InvalidInput(format!(
            "W is over characteristic {}, expected {p}",
            w.field.characteristic()
        )));
    }
    let f = &w.field;
    let rho = w.class_matrices(data)?;
    let maps = PairMaps::new(data)?;
    let orbits = pset(g, data)?;
    let mut per_rep = Vec::new();
    let mut warnings = Vec::new();
    for rep in &orbits.reps {
        let cq = g.centralizer(rep.q.members());
        let zq = g.center_of(&rep.q);
        let quot = g.quotient(&cq, &zq)?;
        let cbar = &quot.group;
        let cd = cartan_matrix(cbar, p, seed, cap)?;
        let classes = &cd.inventory.classes;
        let k = classes.len();
        let brauer = &cd.inventory.brauer;

        // label permutation induced by conjugation with x ∈ N_G(Q):
        // ^xS has Brauer character χ_S(x⁻¹ · x)
        let label_perm = |x: usize| -> Result<Vec<usize>> {
            let xi = g.inv(x);
            let moved: Vec<usize> = classes
                .iter()
                .map(|c| {
                    let lift = quot.projection.iter().find(|&&(_, img)| img == c.representative).unwrap().0;
                    let img = quot.project(g.conj(xi, lift)).unwrap();
                    let rep = cbar.conjugacy_classes()[cbar.class_of(img)].representative;
                    classes.iter().position(|d| d.representative == rep).unwrap()
                })
                .collect();
            (0..k)
                .map(|s| {
                    let row: Vec<_> = moved.iter().map(|&c| brauer[s][c].clone()).collect();
                    brauer
                        .iter()
                        .position(|b| *b == row)
                        .ok_or_else(|| Error::InvariantViolation("twisted simple module not found".into()))
                })
                .collect()
        };

        let pu = label_perm(rep.s_u)?;
        let fixed: Vec<usize> = (0..k).filter(|&t| pu[t] == t).collect();
        let cols: Vec<Vec<Elem>> = fixed
            .iter()
            .map(|&t| (0..k).map(|s| f.from_int(cd.cartan[s][t])).collect())
            .collect();
        let space = Echelon::of_rows(f, cols);
        let d = w.dim;

        let act = |perm: &[usize], m: &Mat, v: &[Elem], j: usize, out: &mut [Elem]| {
            for (s, &a) in v.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for t in 0..d {
                    let b = m.get(j, t);
                    if b != 0 {
                        let idx = perm[s] * d + t;
                        out[idx] = f.add(out[idx], f.mul(a, b));
                    }
                }
            }
        };

        let inv = inverse_map(&rep.delta);
        let pair_class = |x: usize| maps.pair_class.get(&conj_through(g, &rep.delta, &inv, x)).copied();

        for &x in rep.g_qd.members() {
            let perm = label_perm(x)?;
            let moved = space.rows.iter().any(|v| {
                let mut img = vec![0; k];
                for (s, &a) in v.iter().enumerate() {
                    img[perm[s]] = a;
                }
                !space.contains(f, &img)
            });
            if moved || pair_class(x) != Some(0) {
                warnings.push(format!(
                    "element {x} of G_{{Q,δ}} acts non-trivially on the Cartan image or W"
                ));
                break;
            }
        }

        let mut ops = Vec::new();
        for x in coset_reps(g, &rep.g_qdu, &rep.g_qd) {
            let c = pair_class(x).ok_or_else(|| Error::InvariantViolation("θ_g ∉ Out(L,u)".into()))?;
            ops.push((label_perm(x)?, c));
        }
        let mut image = Echelon::empty(k * d);
        for v in &space.rows {
            for j in 0..d {
                let mut out = vec![0; k * d];
                for (perm, c) in &ops {
                    act(perm, &rho[*c], v, j, &mut out);
                }
                image.insert(f, out);
            }
        }
        per_rep.push(image.rank());
    }
    Ok(GeneralDim {
        dimension: per_rep.iter().sum(),
        per_rep,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::auto::automorphisms;
    use crate::catalogue::named_group;
    use crate::ddelta::{pair_aut, DDeltaPair};

    fn labels(g: &str, p: u64) -> Vec<String> {
        defect_profile(&named_group(g).unwrap(), p)
            .into_iter()
            .map(|e| e.label)
            .collect()
    }

    #[test]
    fn defect_profiles() {
        assert_eq!(labels("S4", 2), vec!["D8", "1"]);
        assert_eq!(labels("A4", 2), vec!["V4", "1", "1"]);
        assert_eq!(labels("C3", 3), vec!["C3"]);
    }

    #[test]
    fn simple_dims_by_defect() {
        let s4 = named_group("S4").unwrap();
        assert_eq!(dim_simple_l1_trivial(&s4, 2, &named_group("C2").unwrap()), 0);
        assert_eq!(dim_simple_l1_trivial(&s4, 2, &named_group("D8").unwrap()), 1);
        assert_eq!(dim_simple_l1_trivial(&s4, 2, &named_group("C1").unwrap()), 1);
        let c5 = named_group("C5").unwrap();
        assert_eq!(dim_simple_l1_trivial(&c5, 5, &named_group("C1").unwrap()), 0);
    }

    #[test]
    fn zeta_examples() {
        let s4 = named_group("S4").unwrap();
        let t = s4.subgroup_generated(&[s4.index_of(&crate::Perm::parse_cycles("(1,2)", 4).unwrap()).unwrap()]);
        assert!(zeta(&s4, 2, &t).reps.is_empty());
        let a4 = named_group("A4").unwrap();
        let v4 = a4.sylow(2);
        let z = zeta(&a4, 2, &v4);
        assert_eq!(z.reps.len(), 1);
        assert_eq!(z.reps[0].z, 0);
        let s3 = named_group("S3").unwrap();
        let c3 = named_group("C3").unwrap();
        let zc = zcal(&s3, 3, &c3);
        assert_eq!(zc.len(), 1);
        assert_eq!(zc[0].z, 0);
        assert!(zcal(&s4, 2, &named_group("C2").unwrap()).is_empty());
        assert!(zcal(&s3, 3, &named_group("C9").unwrap()).is_empty());
        for r in z.reps {
            assert_eq!(r.stabilizer_order, r.class_stabilizer_order);
        }
    }

    #[test]
    fn pset_examples() {
        let a4 = named_group("A4").unwrap();
        let v4 = named_group("V4").unwrap();
        let aut = automorphisms(&v4, 500).unwrap();
        let u = aut.maps().iter().find(|m| m.order() == 3).unwrap().clone();
        let data = pair_aut(&DDeltaPair::new("V4", v4.clone(), u, 2).unwrap()).unwrap();
        let orbits = pset(&a4, &data).unwrap();
        assert_eq!(orbits.reps.len(), 1);
        let rep = &orbits.reps[0];
        assert!(pset_law_violations(&a4, &data, rep).is_empty());
        for &(x, c) in &rep.theta {
            if a4.elem_order(x) == 3 {
                assert_eq!(c, 0);
            }
        }
        assert_eq!(theta_map(rep, 0).unwrap(), 0);

        let s4 = named_group("S4").unwrap();
        let c2 = named_group("C2").unwrap();
        let data = pair_aut(&DDeltaPair::trivial_u("C2", c2, 2).unwrap()).unwrap();
        let orbits = pset(&s4, &data).unwrap();
        assert_eq!(orbits.reps.len(), 2);
        for rep in &orbits.reps {
            assert!(pset_law_violations(&s4, &data, rep).is_empty());
            let cq = s4.centralizer(rep.q.members());
            assert_eq!(rep.g_qd, s4.product_set(&rep.q, &cq));
            assert_eq!(rep.g_qdu, rep.normalizer);
            assert_eq!(rep.g_hat, rep.normalizer);
        }
    }

    #[test]
    fn trace_rank_examples() {
        let a4 = named_group("A4").unwrap();
        let v4 = named_group("V4").unwrap();
        let data = pair_aut(&DDeltaPair::trivial_u("V4", v4, 2).unwrap()).unwrap();
        let f2 = Gf::new(2, 1).unwrap();
        let triv = OutRepW::trivial(f2.clone(), &data);
        assert_eq!(dim_simple_l1_w(&a4, 2, &data, &triv).unwrap(), 1);
        assert_eq!(data.out_pair_order(), 6);

        // Aut(V4) acting on V4 as a 2-dimensional space over GF(2)
        let prod = &data.product.group;
        let basis = prod.generating_set(&prod.whole());
        assert_eq!(basis.len(), 2);
        let coords = |x: usize| -> Vec<u32> {
            (0..4u32)
                .find(|&c| {
                    let mut y = 0;
                    for (i, &b) in basis.iter().enumerate() {
                        if c >> i & 1 == 1 {
                            y = prod.mul(y, b);
                        }
                    }
                    y == x
                })
                .map(|c| vec![c & 1, c >> 1 & 1])
                .unwrap()
        };
        let mats = data
            .out_generators()
            .into_iter()
            .map(|(label, c)| {
                let m = data.aut_pair.map(data.aut_pair.out_reps()[c]);
                let rows: Vec<Vec<u32>> = basis.iter().map(|&b| coords(m.apply(b))).collect();
                (label, Mat::from_rows(&rows))
            })
            .collect();
        let natural = OutRepW { field: f2, dim: 2, mats };
        assert_eq!(dim_simple_l1_w(&a4, 2, &data, &natural).unwrap(), 0);
        let s4 = named_group("S4").unwrap();
        assert!(dim_simple_l1_w(&s4, 2, &data, &natural).is_ok());
    }

    #[test]
    fn partition_examples() {
        let r = partition_check(&named_group("S4").unwrap(), 2);
        assert!(r.holds());
        assert_eq!(r.p_regular_classes, 2);
        let r = partition_check(&named_group("A5").unwrap(), 2);
        assert!(r.holds());
        assert_eq!(r.p_regular_classes, 4);
    }

    #[test]
    fn general_path_smallest_case() {
        let s3 = named_group("S3").unwrap();
        let c3 = named_group("C3").unwrap();
        let aut = automorphisms(&c3, 500).unwrap();
        let u = aut.maps().iter().find(|m| m.order() == 2).unwrap().clone();
        let data = pair_aut(&DDeltaPair::new("C3", c3, u, 3).unwrap()).unwrap();
        let w = OutRepW::trivial(Gf::new(3, 1).unwrap(), &data);
        let r = dim_simple_general(&s3, &data, &w, 1, 60).unwrap();
        assert_eq!(r.per_rep.len(), 1);
        assert!(r.dimension <= 1);
    }
}
