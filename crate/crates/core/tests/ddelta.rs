use ppfun_core::auto::{are_isomorphic, automorphisms, DEFAULT_AUT_CAP};
use ppfun_core::catalogue::{named_group, SMALL_GROUPS};
use ppfun_core::ddelta::{
    enumerate_ddelta_pairs, essential_support, is_ddelta_pair, pair_aut, pairs_isomorphic, semidirect, DDeltaPair,
    EssentialSupport,
};
use ppfun_core::group::prime_divisors;

#[test]
fn nonvanishing_support_rebuilds_the_group() {
    for name in SMALL_GROUPS {
        let g = named_group(name).unwrap();
        for p in prime_divisors(g.order()) {
            if let EssentialSupport::NonVanishing(s) = essential_support(&g, p) {
                let rebuilt = semidirect(&s.l, &s.u).unwrap().group;
                assert!(are_isomorphic(&rebuilt, &g), "{name} at p={p}");
                assert_eq!(s.l.order() * s.k_order(), g.order(), "{name} at p={p}");
            }
        }
    }
}

#[test]
fn out_of_trivial_pair_is_out_of_l() {
    for (p, name) in [(2, "C2"), (2, "V4"), (2, "C4"), (2, "D8"), (2, "Q8"), (2, "E8"), (3, "C3"), (3, "E9"), (5, "C5")] {
        let l = named_group(name).unwrap();
        let data = pair_aut(&DDeltaPair::trivial_u(name, l.clone(), p).unwrap()).unwrap();
        let direct = automorphisms(&l, DEFAULT_AUT_CAP).unwrap();
        assert_eq!(data.out_pair_order(), direct.out_order(), "{name}");
    }
}

#[test]
fn enumerated_pairs_are_valid_and_irredundant() {
    for (p, max) in [(2, 8), (3, 9), (5, 5)] {
        let pairs = enumerate_ddelta_pairs(p, max).unwrap();
        for (i, a) in pairs.iter().enumerate() {
            assert!(is_ddelta_pair(&a.l, &a.u, p), "{}", a.describe());
            for b in &pairs[i + 1..] {
                assert!(!pairs_isomorphic(a, b).unwrap(), "{} ≅ {}", a.describe(), b.describe());
            }
        }
    }
}

#[test]
fn pair_counts() {
    assert_eq!(enumerate_ddelta_pairs(2, 4).unwrap().len(), 5);
    assert_eq!(enumerate_ddelta_pairs(3, 3).unwrap().len(), 3);
    // Aut(C5) is abelian of order 4, so each automorphism is its own class
    assert_eq!(enumerate_ddelta_pairs(5, 5).unwrap().len(), 1 + 4);
}
