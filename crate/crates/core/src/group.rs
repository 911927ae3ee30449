//! Exhaustive permutation-group machinery.
//!
//! A [`PermGroup`] stores its full element list in lexicographic order together
//! with a Cayley table, so every query below is a plain scan. Element handles
//! are indices into that sorted list; index 0 is always the identity.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Default cap on the order of any enumerated group.
pub const DEFAULT_ORDER_CAP: usize = 2000;

pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
    table: Vec<u32>,
    inverses: Vec<u32>,
    orders: Vec<u32>,
    classes: OnceLock<Vec<ConjClassRec>>,
    class_of: OnceLock<Vec<usize>>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup::from_sorted_elements(self.degree, self.generators.clone(), self.elements.clone())
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// One conjugacy class. `representative` is the least member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClassRec {
    pub representative: usize,
    pub size: usize,
    pub element_order: usize,
    pub members: Vec<usize>,
}

/// A subgroup of some parent [`PermGroup`], as a sorted index set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}: {:?})", self.members.len(), self.members)
    }
}

impl Subgroup {
    /// Wraps an index set; the caller guarantees it is a subgroup.
    pub fn from_members(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        Subgroup { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            members: self
                .members
                .iter()
                .copied()
                .filter(|&x| other.contains(x))
                .collect(),
        }
    }
}

/// Output of [`PermGroup::quotient`]: the factor group realized on cosets.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: PermGroup,
    /// `(element of the numerator, image in the factor group)`, sorted by element.
    pub projection: Vec<(usize, usize)>,
}

impl Quotient {
    pub fn project(&self, x: usize) -> Option<usize> {
        self.projection
            .binary_search_by_key(&x, |&(e, _)| e)
            .ok()
            .map(|i| self.projection[i].1)
    }
}

impl PermGroup {
    /// Closure of `gens` under composition, with the default order cap.
    pub fn from_generators(degree: usize, gens: &[Perm]) -> Result<Self> {
        Self::from_generators_capped(degree, gens, DEFAULT_ORDER_CAP)
    }

    pub fn from_generators_capped(degree: usize, gens: &[Perm], cap: usize) -> Result<Self> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {g} has degree {} but the group has degree {degree}",
                    g.degree()
                )));
            }
        }
        let id = Perm::identity(degree);
        let mut seen: HashSet<Perm> = HashSet::new();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for s in gens {
                let y = s.compose(&x);
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return Err(Error::ClosureExceedsCap { cap });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Perm> = seen.into_iter().collect();
        elements.sort();
        let gens = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        Ok(Self::from_sorted_elements(degree, gens, elements))
    }

    fn from_sorted_elements(degree: usize, generators: Vec<Perm>, elements: Vec<Perm>) -> Self {
        let n = elements.len();
        let index: HashMap<Perm, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let mut table = vec![0u32; n * n];
        let mut buf = vec![0u32; degree];
        for (a, pa) in elements.iter().enumerate() {
            let ra = pa.raw();
            for (b, pb) in elements.iter().enumerate() {
                for (slot, &i) in buf.iter_mut().zip(pb.raw()) {
                    *slot = ra[i as usize];
                }
                let key = Perm::from_raw(buf.clone());
                table[a * n + b] = index[&key];
            }
        }
        let mut inverses = vec![0u32; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] == 0 {
                    inverses[a] = b as u32;
                    break;
                }
            }
        }
        let mut orders = vec![0u32; n];
        for (a, slot) in orders.iter_mut().enumerate() {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = table[x * n + a] as usize;
                k += 1;
            }
            *slot = k;
        }
        PermGroup {
            degree,
            generators,
            elements,
            index,
            table,
            inverses,
            orders,
            classes: OnceLock::new(),
            class_of: OnceLock::new(),
        }
    }

    /// Regular permutation representation of an abstract group given by a
    /// multiplication function on `0..n` (0 must be the identity).
    ///
    /// Returns the group and, for every abstract element, its index in it.
    pub fn regular_representation(
        n: usize,
        mul: impl Fn(usize, usize) -> usize,
        gens: &[usize],
    ) -> Result<(PermGroup, Vec<usize>)> {
        let left = |g: usize| Perm::from_raw((0..n).map(|x| mul(g, x) as u32).collect());
        let gen_perms: Vec<Perm> = gens.iter().map(|&g| left(g)).collect();
        let group = PermGroup::from_generators(n, &gen_perms)?;
        let mut embed = Vec::with_capacity(n);
        for x in 0..n {
            let idx = group.index_of(&left(x)).ok_or_else(|| {
                Error::InvalidInput("regular representation: generators do not generate".into())
            })?;
            embed.push(idx);
        }
        Ok((group, embed))
    }

    /// Direct product acting on the disjoint union of the point sets.
    pub fn direct_product(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
        let deg = a.degree + b.degree;
        let mut gens: Vec<Perm> = a.generators.iter().map(|g| g.shifted(0, deg)).collect();
        gens.extend(b.generators.iter().map(|g| g.shifted(a.degree, deg)));
        PermGroup::from_generators(deg, &gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    pub const fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    #[inline]
    pub fn elem_order(&self, a: usize) -> usize {
        self.orders[a] as usize
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let o = self.elem_order(a) as i64;
        let k = k.rem_euclid(o);
        let mut x = 0;
        for _ in 0..k {
            x = self.mul(x, a);
        }
        x
    }

    /// `g x g^-1`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// Indices of the stored generators.
    pub fn generator_indices(&self) -> Vec<usize> {
        self.generators
            .iter()
            .map(|g| self.index_of(g).expect("generator is an element"))
            .collect()
    }

    pub fn exponent(&self) -> usize {
        self.orders
            .iter()
            .fold(1, |acc, &o| num_integer::lcm(acc, o as usize))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generator_indices();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            members: (0..self.order()).collect(),
        }
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup { members: vec![0] }
    }

    /// Subgroup generated by the given elements.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        let mut mask = vec![false; self.order()];
        mask[0] = true;
        let mut members = vec![0];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &s in gens {
                let y = self.mul(s, x);
                if !mask[y] {
                    mask[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        Subgroup::from_members(members)
    }

    /// Greedy generating set of a subgroup, preferring elements of large order.
    pub fn generating_set(&self, h: &Subgroup) -> Vec<usize> {
        let mut cands: Vec<usize> = h.members().iter().copied().filter(|&x| x != 0).collect();
        cands.sort_by_key(|&x| (std::cmp::Reverse(self.elem_order(x)), x));
        let mut gens = Vec::new();
        let mut cur = self.trivial();
        for x in cands {
            if cur.order() == h.order() {
                break;
            }
            if !cur.contains(x) {
                gens.push(x);
                cur = self.subgroup_generated(&gens);
            }
        }
        gens
    }

    pub fn is_subgroup(&self, members: &[usize]) -> bool {
        let set: HashSet<usize> = members.iter().copied().collect();
        set.contains(&0)
            && members
                .iter()
                .all(|&a| members.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    pub fn conjugate_subgroup(&self, g: usize, h: &Subgroup) -> Subgroup {
        Subgroup::from_members(h.members().iter().map(|&x| self.conj(g, x)).collect())
    }

    pub fn is_normal_in(&self, h: &Subgroup, ambient: &Subgroup) -> bool {
        ambient
            .members()
            .iter()
            .all(|&g| h.members().iter().all(|&x| h.contains(self.conj(g, x))))
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.is_normal_in(h, &self.whole())
    }

    /// All conjugacy classes, sorted by representative.
    pub fn conjugacy_classes(&self) -> &[ConjClassRec] {
        self.classes.get_or_init(|| {
            let n = self.order();
            let gens = self.generator_indices();
            let mut seen = vec![false; n];
            let mut out = Vec::new();
            for start in 0..n {
                if seen[start] {
                    continue;
                }
                seen[start] = true;
                let mut members = vec![start];
                let mut i = 0;
                while i < members.len() {
                    let x = members[i];
                    for &s in &gens {
                        let y = self.conj(s, x);
                        if !seen[y] {
                            seen[y] = true;
                            members.push(y);
                        }
                    }
                    i += 1;
                }
                members.sort_unstable();
                out.push(ConjClassRec {
                    representative: members[0],
                    size: members.len(),
                    element_order: self.elem_order(start),
                    members,
                });
            }
            out
        })
    }

    /// Class index of every element.
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of.get_or_init(|| {
            let mut v = vec![0; self.order()];
            for (ci, c) in self.conjugacy_classes().iter().enumerate() {
                for &m in &c.members {
                    v[m] = ci;
                }
            }
            v
        })[x]
    }

    pub fn are_conjugate(&self, x: usize, y: usize) -> bool {
        self.class_of(x) == self.class_of(y)
    }

    pub fn centralizer(&self, set: &[usize]) -> Subgroup {
        self.centralizer_in(set, &self.whole())
    }

    /// Elements of `ambient` commuting with every element of `set`.
    pub fn centralizer_in(&self, set: &[usize], ambient: &Subgroup) -> Subgroup {
        Subgroup {
            members: ambient
                .members()
                .iter()
                .copied()
                .filter(|&g| set.iter().all(|&s| self.mul(g, s) == self.mul(s, g)))
                .collect(),
        }
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        self.normalizer_in(h, &self.whole())
    }

    pub fn normalizer_in(&self, h: &Subgroup, ambient: &Subgroup) -> Subgroup {
        Subgroup {
            members: ambient
                .members()
                .iter()
                .copied()
                .filter(|&g| h.members().iter().all(|&x| h.contains(self.conj(g, x))))
                .collect(),
        }
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(&(0..self.order()).collect::<Vec<_>>())
    }

    /// Center of a subgroup `h`.
    pub fn center_of(&self, h: &Subgroup) -> Subgroup {
        self.centralizer_in(h.members(), h)
    }

    pub fn derived_subgroup(&self, h: &Subgroup) -> Subgroup {
        let mut comms = BTreeSet::new();
        for &a in h.members() {
            for &b in h.members() {
                comms.insert(self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b))));
            }
        }
        self.subgroup_generated(&comms.into_iter().collect::<Vec<_>>())
    }

    /// Sylow p-subgroup grown one p-element at a time inside normalizers.
    pub fn sylow(&self, p: u64) -> Subgroup {
        self.sylow_of(p, &self.whole())
    }

    /// Sylow p-subgroup of a subgroup `h`.
    pub fn sylow_of(&self, p: u64, h: &Subgroup) -> Subgroup {
        let target = p_part(h.order(), p);
        let mut cur = self.trivial();
        while cur.order() < target {
            let norm = self.normalizer_in(&cur, h);
            let mut grown = None;
            for &x in norm.members() {
                if cur.contains(x) || !is_power_of(self.elem_order(x), p) {
                    continue;
                }
                let mut gens = cur.members().to_vec();
                gens.push(x);
                let cand = self.subgroup_generated(&gens);
                if is_power_of(cand.order(), p) {
                    grown = Some(cand);
                    break;
                }
            }
            cur = grown.expect("normalizer of a non-Sylow p-subgroup contains a new p-element");
        }
        cur
    }

    /// Unique factorization `x = x_p * x_p'` into commuting powers of `x`.
    pub fn pp_decomposition(&self, x: usize, p: u64) -> (usize, usize) {
        let n = self.elem_order(x);
        let q = p_part(n, p);
        let m = n / q;
        // e ≡ 1 (mod q), e ≡ 0 (mod m)
        let e = (0..n).step_by(m.max(1)).find(|e| e % q == 1 % q).unwrap_or(0);
        let xp = self.pow(x, e as i64);
        let xq = self.pow(x, (n + 1 - e) as i64);
        (xp, xq)
    }

    pub fn is_p_regular(&self, x: usize, p: u64) -> bool {
        self.elem_order(x) as u64 % p != 0
    }

    /// Conjugacy classes of p-regular elements.
    pub fn p_regular_classes(&self, p: u64) -> Vec<&ConjClassRec> {
        self.conjugacy_classes()
            .iter()
            .filter(|c| c.element_order as u64 % p != 0)
            .collect()
    }

    /// All subgroups of the p-group `s`, by cyclic extension level by level.
    pub fn subgroups_of_p_group(&self, p: u64, s: &Subgroup) -> Vec<Subgroup> {
        let mut all: Vec<Subgroup> = vec![self.trivial()];
        let mut level: BTreeSet<Subgroup> = BTreeSet::from([self.trivial()]);
        while !level.is_empty() {
            let mut next = BTreeSet::new();
            for m in &level {
                let norm = self.normalizer_in(m, s);
                for &x in norm.members() {
                    if m.contains(x) || !m.contains(self.pow(x, p as i64)) {
                        continue;
                    }
                    let mut gens = m.members().to_vec();
                    gens.push(x);
                    next.insert(self.subgroup_generated(&gens));
                }
            }
            all.extend(next.iter().cloned());
            level = next;
        }
        all
    }

    /// Conjugacy-class representatives of p-subgroups, sorted by order then
    /// member list. Each representative is a subgroup of the fixed Sylow
    /// p-subgroup returned by [`sylow`](Self::sylow).
    pub fn p_subgroup_classes(&self, p: u64) -> Vec<Subgroup> {
        let s = self.sylow(p);
        let mut subs = self.subgroups_of_p_group(p, &s);
        subs.sort_by(|a, b| (a.order(), a.members()).cmp(&(b.order(), b.members())));
        let in_s: HashSet<Subgroup> = subs.iter().cloned().collect();
        let mut taken: HashSet<Subgroup> = HashSet::new();
        let mut reps = Vec::new();
        for h in subs {
            if taken.contains(&h) {
                continue;
            }
            for g in 0..self.order() {
                let c = self.conjugate_subgroup(g, &h);
                if in_s.contains(&c) {
                    taken.insert(c);
                }
            }
            reps.push(h);
        }
        reps
    }

    /// Conjugacy-class representatives of subgroups of `h`'s class under
    /// `ambient`-conjugation, i.e. whether `a` and `b` are conjugate by an
    /// element of `ambient`.
    pub fn subgroups_conjugate_in(&self, a: &Subgroup, b: &Subgroup, ambient: &Subgroup) -> bool {
        a.order() == b.order()
            && ambient
                .members()
                .iter()
                .any(|&g| &self.conjugate_subgroup(g, a) == b)
    }

    /// The subgroup `h` as a group in its own right. Because member lists are
    /// sorted and element order is lexicographic, local index `i` corresponds
    /// to `h.members()[i]`.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> PermGroup {
        let gens = self
            .generating_set(h)
            .into_iter()
            .map(|x| self.elements[x].clone())
            .collect();
        let elements = h.members().iter().map(|&x| self.elements[x].clone()).collect();
        PermGroup::from_sorted_elements(self.degree, gens, elements)
    }

    /// `h / n` realized by the action of `h` on the left cosets of `n`.
    /// Requires `n` normal in `h`.
    pub fn quotient(&self, h: &Subgroup, n: &Subgroup) -> Result<Quotient> {
        if !n.is_subset_of(h) || !self.is_normal_in(n, h) {
            return Err(Error::InvalidInput("quotient by a non-normal subgroup".into()));
        }
        // label each element of h by the least element of its coset xN
        let mut label: HashMap<usize, usize> = HashMap::new();
        let mut cosets: Vec<usize> = Vec::new();
        for &x in h.members() {
            if label.contains_key(&x) {
                continue;
            }
            let id = cosets.len();
            cosets.push(x);
            for &m in n.members() {
                label.insert(self.mul(x, m), id);
            }
        }
        let k = cosets.len();
        let action = |g: usize| -> Perm {
            Perm::from_raw(
                cosets
                    .iter()
                    .map(|&c| label[&self.mul(g, c)] as u32)
                    .collect(),
            )
        };
        let gens: Vec<Perm> = self.generating_set(h).into_iter().map(action).collect();
        let group = PermGroup::from_generators(k, &gens)?;
        let projection = h
            .members()
            .iter()
            .map(|&x| (x, group.index_of(&action(x)).expect("image lies in the quotient")))
            .collect();
        Ok(Quotient { group, projection })
    }

    /// The product set `A·B`.
    pub fn product_set(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut set = BTreeSet::new();
        for &x in a.members() {
            for &y in b.members() {
                set.insert(self.mul(x, y));
            }
        }
        Subgroup {
            members: set.into_iter().collect(),
        }
    }
}

/// Largest power of `p` dividing `n`.
pub fn p_part(n: usize, p: u64) -> usize {
    let p = p as usize;
    let mut n = n;
    let mut out = 1;
    while n % p == 0 && n > 0 {
        n /= p;
        out *= p;
    }
    out
}

pub fn is_power_of(n: usize, p: u64) -> bool {
    p_part(n, p) == n
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

pub fn prime_divisors(mut n: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d as u64);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n as u64);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue::named_group;

    fn perm(s: &str, n: usize) -> Perm {
        Perm::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn closure_examples() {
        let s3 = PermGroup::from_generators(3, &[perm("(1 2)", 3), perm("(1 2 3)", 3)]).unwrap();
        assert_eq!(s3.order(), 6);
        let triv = PermGroup::from_generators(1, &[]).unwrap();
        assert_eq!(triv.order(), 1);
        let v4 = PermGroup::from_generators(4, &[perm("(1 2)(3 4)", 4), perm("(1 3)(2 4)", 4)])
            .unwrap();
        assert_eq!(v4.order(), 4);
        assert_eq!(v4.exponent(), 2);
    }

    #[test]
    fn closure_cap_and_degree_errors() {
        let gens = [perm("(1 2)", 6), perm("(1 2 3 4 5 6)", 6)];
        assert_eq!(
            PermGroup::from_generators_capped(6, &gens, 100).unwrap_err(),
            Error::ClosureExceedsCap { cap: 100 }
        );
        assert!(PermGroup::from_generators(4, &[perm("(1 2)", 3)]).is_err());
    }

    #[test]
    fn identity_is_index_zero_and_elements_sorted() {
        let g = named_group("S4").unwrap();
        assert!(g.element(0).is_identity());
        assert!(g.elements().windows(2).all(|w| w[0] < w[1]));
        for a in 0..g.order() {
            assert_eq!(g.mul(a, g.inv(a)), 0);
        }
    }

    #[test]
    fn class_examples() {
        let sizes = |name: &str| {
            let mut v: Vec<usize> = named_group(name)
                .unwrap()
                .conjugacy_classes()
                .iter()
                .map(|c| c.size)
                .collect();
            v.sort_unstable();
            v
        };
        assert_eq!(sizes("S4"), vec![1, 3, 6, 6, 8]);
        assert_eq!(sizes("A4"), vec![1, 3, 4, 4]);
        assert_eq!(sizes("C1"), vec![1]);
    }

    #[test]
    fn centralizer_center_examples() {
        let s4 = named_group("S4").unwrap();
        let t = s4.index_of(&perm("(1 2)", 4)).unwrap();
        assert_eq!(s4.centralizer(&[t]).order(), 4);
        assert_eq!(s4.centralizer(&[0]).order(), 24);
        let q8 = named_group("Q8").unwrap();
        assert_eq!(q8.center().order(), 2);
    }

    #[test]
    fn sylow_examples() {
        let s4 = named_group("S4").unwrap();
        assert_eq!(s4.sylow(2).order(), 8);
        assert_eq!(named_group("S3").unwrap().sylow(5).order(), 1);
        let a4 = named_group("A4").unwrap();
        let p = a4.sylow(2);
        assert_eq!(p.order(), 4);
        assert!(a4.is_normal(&p));
    }

    #[test]
    fn pp_decomposition_in_c6() {
        let c6 = named_group("C6").unwrap();
        let g = c6.generator_indices()[0];
        let (x3, x2) = c6.pp_decomposition(g, 3);
        assert_eq!(x3, c6.pow(g, 4));
        assert_eq!(x2, c6.pow(g, 3));
        assert_eq!(c6.mul(x3, x2), g);
        assert_eq!(c6.pp_decomposition(0, 3), (0, 0));
        let (a, b) = c6.pp_decomposition(c6.pow(g, 2), 3);
        assert_eq!((a, b), (c6.pow(g, 2), 0));
    }

    #[test]
    fn p_subgroup_class_examples() {
        let a4 = named_group("A4").unwrap();
        let orders: Vec<usize> = a4.p_subgroup_classes(2).iter().map(|h| h.order()).collect();
        assert_eq!(orders, vec![1, 2, 4]);
        assert_eq!(named_group("S3").unwrap().p_subgroup_classes(5).len(), 1);
    }

    #[test]
    fn quotient_by_center() {
        let q8 = named_group("Q8").unwrap();
        let q = q8.quotient(&q8.whole(), &q8.center()).unwrap();
        assert_eq!(q.group.order(), 4);
        assert_eq!(q.group.exponent(), 2);
        for a in 0..8 {
            for b in 0..8 {
                let ab = q8.mul(a, b);
                assert_eq!(
                    q.project(ab).unwrap(),
                    q.group.mul(q.project(a).unwrap(), q.project(b).unwrap())
                );
            }
        }
    }

    #[test]
    fn subgroup_as_group_keeps_index_correspondence() {
        let s4 = named_group("S4").unwrap();
        let p = s4.sylow(2);
        let d8 = s4.subgroup_as_group(&p);
        for (i, &x) in p.members().iter().enumerate() {
            assert_eq!(d8.element(i), s4.element(x));
        }
    }
}
