use num_bigint::BigInt;

use ppfun_core::cartan::{cartan_matrix, reconstruct_cartan_columns, vx_checks, DEFAULT_ORACLE_CAP};
use ppfun_core::catalogue::{named_group, SMALL_GROUPS};
use ppfun_core::cyclo::CycloField;
use ppfun_core::error::Error;
use ppfun_core::ffmat::Mat;
use ppfun_core::group::{prime_divisors, PermGroup};

fn p_part(mut n: usize, p: u64) -> usize {
    let mut out = 1;
    while n as u64 % p == 0 {
        n /= p as usize;
        out *= p as usize;
    }
    out
}

fn p_regular_class_count(g: &PermGroup, p: u64) -> usize {
    g.conjugacy_classes().iter().filter(|c| c.element_order as u64 % p != 0).count()
}

fn groups() -> impl Iterator<Item = (String, PermGroup)> {
    SMALL_GROUPS
        .iter()
        .chain(&["A5", "S3xC3"])
        .filter(|n| **n != "C1")
        .map(|n| (n.to_string(), named_group(n).unwrap()))
}

#[test]
fn cartan_invariants_on_small_groups() {
    for (name, g) in groups() {
        for p in prime_divisors(g.order()).into_iter().chain([5]) {
            let d = match cartan_matrix(&g, p, 11, DEFAULT_ORACLE_CAP) {
                Err(Error::FieldTableExhausted { .. }) if g.order() as u64 % p != 0 => continue,
                r => r.unwrap(),
            };
            let k = d.cartan.len();
            assert_eq!(k, p_regular_class_count(&g, p), "{name} at p={p}");
            let dims = d.dims();
            let mut total = 0;
            for t in 0..k {
                for s in 0..k {
                    assert_eq!(d.cartan[t][s], d.cartan[s][t], "{name} at p={p}");
                    total += dims[t] as i64 * d.cartan[t][s] * dims[s] as i64;
                }
            }
            assert_eq!(total, g.order() as i64, "{name} at p={p}");
            let det: usize = d.inventory.classes.iter().map(|c| p_part(c.centralizer_order, p)).product();
            assert_eq!(d.determinant, BigInt::from(det), "{name} at p={p}");
            let mut bn: Vec<BigInt> =
                d.inventory.classes.iter().map(|c| BigInt::from(p_part(c.centralizer_order, p))).collect();
            bn.sort();
            assert_eq!(d.snf, bn, "{name} at p={p}");
            let defect_zero = d.inventory.classes.iter().filter(|c| c.centralizer_order as u64 % p != 0).count();
            assert_eq!(d.rank_mod_p, defect_zero, "{name} at p={p}");
            assert_eq!(d.gamma.len(), defect_zero, "{name} at p={p}");
            assert!(reconstruct_cartan_columns(&d).unwrap().iter().all(|&b| b), "{name} at p={p}");
            assert!(vx_checks(&g, &d).unwrap().iter().all(|r| r.passes()), "{name} at p={p}");
            if g.order() as u64 % p != 0 {
                for (t, row) in d.cartan.iter().enumerate() {
                    for (s, &c) in row.iter().enumerate() {
                        assert_eq!(c, (s == t) as i64, "{name} at p={p}");
                    }
                }
                assert_eq!(Mat::from_rows(&d.gamma).rank(d.field()), k, "{name} at p={p}");
            }
        }
    }
}

#[test]
fn brauer_characters() {
    for (name, g) in groups() {
        for p in prime_divisors(g.order()) {
            let d = cartan_matrix(&g, p, 3, DEFAULT_ORACLE_CAP).unwrap();
            let cf = CycloField::new(d.n());
            let classes = &d.inventory.classes;
            for (s, row) in d.inventory.brauer.iter().enumerate() {
                assert_eq!(row[0], cf.from_int(d.dims()[s] as i64), "{name} at p={p}");
                for (c, info) in classes.iter().enumerate() {
                    assert_eq!(row[info.inverse], cf.conj(&row[c]), "{name} at p={p}");
                }
            }
        }
    }
}

#[test]
fn chop_is_seed_independent_for_cartan() {
    for (name, p) in [("S4", 3), ("A4", 2), ("SL(2,3)", 3), ("A5", 2)] {
        let g = named_group(name).unwrap();
        let a = cartan_matrix(&g, p, 1, DEFAULT_ORACLE_CAP).unwrap();
        let b = cartan_matrix(&g, p, 99, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(a.cartan, b.cartan, "{name}");
        assert_eq!(a.dims(), b.dims(), "{name}");
    }
}
