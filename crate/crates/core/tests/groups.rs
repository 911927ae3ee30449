use std::collections::BTreeSet;

use proptest::prelude::*;

use ppfun_core::auto::{are_isomorphic, automorphisms, DEFAULT_AUT_CAP};
use ppfun_core::catalogue::{named_group, SMALL_GROUPS};
use ppfun_core::group::{prime_divisors, PermGroup, Subgroup};
use ppfun_core::perm::Perm;

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((1..=n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(&v).unwrap())
}

/// Subgroups of `S_n`, `n ≤ 6`, from one to three random generators.
fn group() -> impl Strategy<Value = PermGroup> {
    (2usize..=6)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(perm(n), 1..=3)))
        .prop_map(|(n, gens)| PermGroup::from_generators(n, &gens).unwrap())
}

/// Exponent of `p` in `n`, by repeated division.
fn p_power(mut n: usize, p: u64) -> usize {
    let mut out = 1;
    while n % p as usize == 0 {
        n /= p as usize;
        out *= p as usize;
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn class_equation(g in group()) {
        let sizes: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.size).collect();
        prop_assert_eq!(sizes.iter().sum::<usize>(), g.order());
        prop_assert!(sizes.iter().all(|s| g.order() % s == 0));
    }

    #[test]
    fn lagrange(g in group(), picks in prop::collection::vec(any::<prop::sample::Index>(), 1..3)) {
        let gens: Vec<usize> = picks.iter().map(|i| i.index(g.order())).collect();
        let h = g.subgroup_generated(&gens);
        prop_assert!(g.is_subgroup(h.members()));
        prop_assert_eq!(g.order() % h.order(), 0);
    }

    #[test]
    fn sylow_orders(g in group()) {
        for p in prime_divisors(g.order()) {
            let s = g.sylow(p);
            prop_assert_eq!(s.order(), p_power(g.order(), p));
            prop_assert!(g.is_subgroup(s.members()));
        }
    }

    #[test]
    fn pp_decomposition_laws(g in group(), pick in any::<prop::sample::Index>()) {
        let x = pick.index(g.order());
        for p in [2u64, 3, 5] {
            let (a, b) = g.pp_decomposition(x, p);
            prop_assert_eq!(g.mul(a, b), x);
            prop_assert_eq!(g.mul(a, b), g.mul(b, a));
            prop_assert_eq!(g.elem_order(a) * g.elem_order(b), g.elem_order(x));
            prop_assert_eq!(p_power(g.elem_order(a), p), g.elem_order(a));
            prop_assert!(g.is_p_regular(b, p));
            let powers: BTreeSet<usize> = (0..g.elem_order(x) as i64).map(|k| g.pow(x, k)).collect();
            prop_assert!(powers.contains(&a) && powers.contains(&b));
        }
    }
}

/// All subgroups of `s`, by scanning subsets closed under multiplication.
fn brute_subgroups(g: &PermGroup, s: &Subgroup) -> Vec<Subgroup> {
    let others: Vec<usize> = s.members().iter().copied().filter(|&x| x != 0).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << others.len()) {
        let mut members = vec![0];
        members.extend(others.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x));
        let set: BTreeSet<usize> = members.iter().copied().collect();
        if members.iter().all(|&a| members.iter().all(|&b| set.contains(&g.mul(a, b)))) {
            out.push(Subgroup::from_members(members));
        }
    }
    out
}

#[test]
fn p_subgroup_classes_match_subset_scan() {
    for name in ["S3", "D8", "Q8", "A4", "S4", "C4xC2", "D12", "SL(2,3)", "C2xD8", "SD16", "A5"] {
        let g = named_group(name).unwrap();
        for p in prime_divisors(g.order()) {
            let s = g.sylow(p);
            if s.order() > 16 {
                continue;
            }
            let mut classes: Vec<BTreeSet<Subgroup>> = Vec::new();
            for h in brute_subgroups(&g, &s) {
                if classes.iter().any(|c| c.contains(&h)) {
                    continue;
                }
                classes.push((0..g.order()).map(|x| g.conjugate_subgroup(x, &h)).collect());
            }
            assert_eq!(g.p_subgroup_classes(p).len(), classes.len(), "{name} at p={p}");
        }
    }
}

#[test]
fn aut_and_inn_orders() {
    for name in SMALL_GROUPS.iter().filter(|n| **n != "E16") {
        let g = named_group(name).unwrap();
        let aut = automorphisms(&g, DEFAULT_AUT_CAP).unwrap();
        assert_eq!(aut.order(), aut.inner_order() * aut.out_order(), "{name}");
        assert_eq!(aut.inner_order(), g.order() / g.center().order(), "{name}");
        assert_eq!(aut.out_reps().len(), aut.out_order(), "{name}");
    }
}

#[test]
fn catalogue_is_irredundant() {
    let groups: Vec<(&str, PermGroup)> = SMALL_GROUPS.iter().map(|n| (*n, named_group(n).unwrap())).collect();
    for (i, (a, ga)) in groups.iter().enumerate() {
        for (b, gb) in &groups[i + 1..] {
            if ga.order() == gb.order() {
                assert!(!are_isomorphic(ga, gb), "{a} ≅ {b}");
            }
        }
    }
    // number of groups of each order up to 24
    let counts = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15];
    for (n, &want) in counts.iter().enumerate() {
        let got = groups.iter().filter(|(_, g)| g.order() == n + 1).count();
        assert_eq!(got, want, "order {}", n + 1);
    }
}
