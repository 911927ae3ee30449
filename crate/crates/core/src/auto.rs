//! Isomorphisms and automorphism groups by generator-image backtracking.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{PermGroup, Subgroup};

/// Default cap on the group order for automorphism computations.
pub const DEFAULT_AUT_CAP: usize = 500;

/// A homomorphism given by the images of all domain elements (element
/// indices of the codomain group).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AutMap {
    images: Vec<u32>,
}

impl std::fmt::Debug for AutMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AutMap{:?}", self.images)
    }
}

impl AutMap {
    pub fn from_images(images: Vec<usize>) -> Self {
        AutMap {
            images: images.into_iter().map(|x| x as u32).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        AutMap {
            images: (0..n as u32).collect(),
        }
    }

    /// Conjugation `x ↦ g x g^-1` on `g`'s own group.
    pub fn inner(group: &PermGroup, g: usize) -> Self {
        AutMap::from_images((0..group.order()).map(|x| group.conj(g, x)).collect())
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    /// `self ∘ other`; requires the codomain of `other` to be the domain of `self`.
    pub fn compose(&self, other: &AutMap) -> AutMap {
        AutMap {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    /// Inverse of a bijection on `0..len`.
    pub fn inverse(&self) -> AutMap {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        AutMap { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Whether this map is a homomorphism from `dom` into `cod`.
    pub fn is_homomorphism(&self, dom: &PermGroup, cod: &PermGroup) -> bool {
        (0..dom.order()).all(|x| {
            (0..dom.order())
                .all(|y| self.apply(dom.mul(x, y)) == cod.mul(self.apply(x), self.apply(y)))
        })
    }

    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut cur = self.clone();
        while !cur.is_identity() {
            cur = self.compose(&cur);
            k += 1;
        }
        k
    }
}

/// For each element, the sizes of its centralizer inside `set` (a subgroup).
fn centralizer_sizes(g: &PermGroup, set: &[usize]) -> HashMap<usize, usize> {
    set.iter()
        .map(|&x| {
            let c = set.iter().filter(|&&y| g.mul(x, y) == g.mul(y, x)).count();
            (x, c)
        })
        .collect()
}

struct Search<'a> {
    src: &'a PermGroup,
    dst: &'a PermGroup,
    gens: Vec<usize>,
    cands: Vec<Vec<usize>>,
    map: Vec<Option<u32>>,
    used: HashMap<usize, usize>,
    img: Vec<usize>,
}

impl Search<'_> {
    /// Extends the map from `<g_0..g_{j-1}>` to `<g_0..g_j>`; returns the newly
    /// assigned elements, or `None` on a conflict (after rolling back).
    fn extend(&mut self, j: usize) -> Option<Vec<usize>> {
        let mut assigned = Vec::new();
        let mut queue: Vec<usize> = (0..self.src.order()).filter(|&x| self.map[x].is_some()).collect();
        let mut i = 0;
        let mut ok = true;
        'outer: while i < queue.len() {
            let x = queue[i];
            let fx = self.map[x].unwrap() as usize;
            for k in 0..=j {
                let y = self.src.mul(self.gens[k], x);
                let fy = self.dst.mul(self.img[k], fx);
                match self.map[y] {
                    Some(v) if v as usize == fy => {}
                    Some(_) => {
                        ok = false;
                        break 'outer;
                    }
                    None => {
                        if self.used.contains_key(&fy) {
                            ok = false;
                            break 'outer;
                        }
                        self.map[y] = Some(fy as u32);
                        self.used.insert(fy, y);
                        assigned.push(y);
                        queue.push(y);
                    }
                }
            }
            i += 1;
        }
        if ok {
            Some(assigned)
        } else {
            self.rollback(&assigned);
            None
        }
    }

    fn rollback(&mut self, assigned: &[usize]) {
        for &y in assigned {
            let fy = self.map[y].take().unwrap() as usize;
            self.used.remove(&fy);
        }
    }

    fn run(&mut self, j: usize, visit: &mut dyn FnMut(AutMap) -> bool) -> bool {
        if j == self.gens.len() {
            let images = self.map.iter().map(|v| v.unwrap()).collect();
            return visit(AutMap { images });
        }
        let cands = self.cands[j].clone();
        for c in cands {
            if self.used.contains_key(&c) {
                continue;
            }
            self.img.push(c);
            if let Some(assigned) = self.extend(j) {
                let keep_going = self.run(j + 1, visit);
                self.rollback(&assigned);
                if !keep_going {
                    self.img.pop();
                    return false;
                }
            }
            self.img.pop();
        }
        true
    }
}

/// Visits every isomorphism from `src` onto the subgroup `target` of `dst`
/// (images are indices of `dst`). The visitor returns `false` to stop.
pub fn for_each_isomorphism(
    src: &PermGroup,
    dst: &PermGroup,
    target: &Subgroup,
    visit: &mut dyn FnMut(AutMap) -> bool,
) {
    if src.order() != target.order() {
        return;
    }
    let gens = src.generating_set(&src.whole());
    let src_cent = centralizer_sizes(src, &(0..src.order()).collect::<Vec<_>>());
    let dst_cent = centralizer_sizes(dst, target.members());
    let cands: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            target
                .members()
                .iter()
                .copied()
                .filter(|&c| dst.elem_order(c) == src.elem_order(g) && dst_cent[&c] == src_cent[&g])
                .collect()
        })
        .collect();
    let mut map = vec![None; src.order()];
    map[0] = Some(0);
    let mut search = Search {
        src,
        dst,
        gens,
        cands,
        map,
        used: HashMap::from([(0, 0)]),
        img: Vec::new(),
    };
    search.run(0, visit);
}

/// All isomorphisms `src → target ≤ dst`, sorted.
pub fn isomorphisms(src: &PermGroup, dst: &PermGroup, target: &Subgroup) -> Vec<AutMap> {
    let mut out = Vec::new();
    for_each_isomorphism(src, dst, target, &mut |m| {
        out.push(m);
        true
    });
    out.sort();
    out
}

/// Some isomorphism `src → target ≤ dst`, if one exists.
pub fn find_isomorphism(src: &PermGroup, dst: &PermGroup, target: &Subgroup) -> Option<AutMap> {
    if src.order() != target.order() || order_census(src, &src.whole()) != order_census(dst, target) {
        return None;
    }
    let mut out = None;
    for_each_isomorphism(src, dst, target, &mut |m| {
        out = Some(m);
        false
    });
    out
}

pub fn are_isomorphic(a: &PermGroup, b: &PermGroup) -> bool {
    find_isomorphism(a, b, &b.whole()).is_some()
}

/// Sorted multiset of element orders of a subgroup.
pub fn order_census(g: &PermGroup, h: &Subgroup) -> Vec<usize> {
    let mut v: Vec<usize> = h.members().iter().map(|&x| g.elem_order(x)).collect();
    v.sort_unstable();
    v
}

/// A group of automorphisms of a [`PermGroup`] that contains all inner
/// automorphisms, together with its quotient by them.
#[derive(Clone, Debug)]
pub struct AutGroup {
    maps: Vec<AutMap>,
    index: HashMap<AutMap, usize>,
    inner_of: Vec<usize>,
    inner_count: usize,
    out_of: Vec<usize>,
    out_reps: Vec<usize>,
}

impl AutGroup {
    /// Wraps a set of automorphisms closed under composition and containing
    /// every inner automorphism of `g`.
    pub fn from_maps(g: &PermGroup, mut maps: Vec<AutMap>) -> Self {
        maps.sort();
        maps.dedup();
        let index: HashMap<AutMap, usize> =
            maps.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let inner_of: Vec<usize> = (0..g.order())
            .map(|x| index[&AutMap::inner(g, x)])
            .collect();
        let mut inner: Vec<usize> = inner_of.clone();
        inner.sort_unstable();
        inner.dedup();
        let mut out_of = vec![usize::MAX; maps.len()];
        let mut out_reps = Vec::new();
        for a in 0..maps.len() {
            if out_of[a] != usize::MAX {
                continue;
            }
            let class = out_reps.len();
            out_reps.push(a);
            for &i in &inner {
                out_of[index[&maps[a].compose(&maps[i])]] = class;
            }
        }
        AutGroup {
            maps,
            index,
            inner_of,
            inner_count: inner.len(),
            out_of,
            out_reps,
        }
    }

    pub fn order(&self) -> usize {
        self.maps.len()
    }

    pub fn inner_order(&self) -> usize {
        self.inner_count
    }

    pub fn out_order(&self) -> usize {
        self.out_reps.len()
    }

    pub fn maps(&self) -> &[AutMap] {
        &self.maps
    }

    pub fn map(&self, i: usize) -> &AutMap {
        &self.maps[i]
    }

    pub fn index_of(&self, m: &AutMap) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Index of conjugation by the group element `g`.
    pub fn inner_index(&self, g: usize) -> usize {
        self.inner_of[g]
    }

    pub fn is_inner(&self, a: usize) -> bool {
        self.out_of[a] == 0
    }

    /// Outer class of an automorphism. Class 0 is the inner automorphisms.
    pub fn out_class(&self, a: usize) -> usize {
        self.out_of[a]
    }

    /// Least automorphism of each outer class, as indices.
    pub fn out_reps(&self) -> &[usize] {
        &self.out_reps
    }

    pub fn compose(&self, a: usize, b: usize) -> usize {
        self.index[&self.maps[a].compose(&self.maps[b])]
    }

    pub fn out_mul(&self, a: usize, b: usize) -> usize {
        self.out_of[self.compose(self.out_reps[a], self.out_reps[b])]
    }

    /// The subset satisfying `keep`, as a new automorphism group. The caller
    /// guarantees the subset is a subgroup containing the inner automorphisms.
    pub fn filter(&self, g: &PermGroup, keep: impl Fn(&AutMap) -> bool) -> AutGroup {
        AutGroup::from_maps(g, self.maps.iter().filter(|m| keep(m)).cloned().collect())
    }

    /// Greedy generators of the outer automorphism group, as class indices.
    pub fn out_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut reached = vec![false; self.out_order()];
        reached[0] = true;
        for c in 1..self.out_order() {
            if reached[c] {
                continue;
            }
            gens.push(c);
            let mut list: Vec<usize> = (0..self.out_order()).filter(|&x| reached[x]).collect();
            let mut i = 0;
            while i < list.len() {
                let x = list[i];
                for &s in &gens {
                    let y = self.out_mul(s, x);
                    if !reached[y] {
                        reached[y] = true;
                        list.push(y);
                    }
                }
                i += 1;
            }
        }
        gens
    }
}

/// The full automorphism group of `g`.
pub fn automorphisms(g: &PermGroup, cap: usize) -> Result<AutGroup> {
    if g.order() > cap {
        return Err(Error::CapExceeded {
            what: "automorphism computation",
            order: g.order(),
            cap,
        });
    }
    let maps = isomorphisms(g, g, &g.whole());
    Ok(AutGroup::from_maps(g, maps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue::named_group;
    use crate::perm::Perm;

    #[test]
    fn isomorphism_examples() {
        let c2 = named_group("C2").unwrap();
        let s3 = named_group("S3").unwrap();
        let t = s3.index_of(&Perm::parse_cycles("(1 2)", 3).unwrap()).unwrap();
        let q = s3.subgroup_generated(&[t]);
        assert_eq!(isomorphisms(&c2, &s3, &q).len(), 1);

        let v4 = named_group("V4").unwrap();
        let s4 = named_group("S4").unwrap();
        assert_eq!(isomorphisms(&v4, &s4, &named_subgroup_v4(&s4)).len(), 6);

        let c4 = named_group("C4").unwrap();
        assert!(isomorphisms(&c4, &v4, &v4.whole()).is_empty());
        assert!(!are_isomorphic(&c4, &v4));
    }

    fn named_subgroup_v4(s4: &PermGroup) -> Subgroup {
        let gens: Vec<usize> = ["(1 2)(3 4)", "(1 3)(2 4)"]
            .iter()
            .map(|c| s4.index_of(&Perm::parse_cycles(c, 4).unwrap()).unwrap())
            .collect();
        s4.subgroup_generated(&gens)
    }

    #[test]
    fn automorphism_examples() {
        let s3 = automorphisms(&named_group("S3").unwrap(), 500).unwrap();
        assert_eq!((s3.order(), s3.out_order()), (6, 1));
        let c1 = automorphisms(&named_group("C1").unwrap(), 500).unwrap();
        assert_eq!(c1.order(), 1);
        let a4 = automorphisms(&named_group("A4").unwrap(), 500).unwrap();
        assert_eq!((a4.order(), a4.inner_order(), a4.out_order()), (24, 12, 2));
        assert!(matches!(
            automorphisms(&named_group("S4").unwrap(), 10),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn automorphisms_are_homomorphisms_and_out_is_consistent() {
        let g = named_group("D8").unwrap();
        let aut = automorphisms(&g, 500).unwrap();
        assert_eq!(aut.order(), 8);
        assert!(aut.maps().iter().all(|m| m.is_homomorphism(&g, &g)));
        assert_eq!(aut.inner_order() * aut.out_order(), aut.order());
        assert_eq!(aut.inner_order(), g.order() / g.center().order());
        let gens = aut.out_generators();
        assert_eq!(gens.len(), 1);
    }

    #[test]
    fn larger_automorphism_groups() {
        let e8 = automorphisms(&named_group("E8").unwrap(), 500).unwrap();
        assert_eq!(e8.order(), 168);
        let q8 = automorphisms(&named_group("Q8").unwrap(), 500).unwrap();
        assert_eq!((q8.order(), q8.out_order()), (24, 6));
    }
}
