use num_traits::ToPrimitive;
use proptest::prelude::*;

use ppfun_core::catalogue::named_group;
use ppfun_core::cyclo::CycloField;
use ppfun_core::essential::{build_essential, rbar};
use ppfun_core::gf::Gf;
use ppfun_core::lattice::{rank_mod_p, rank_rational};

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn phi(n: usize) -> usize {
    (1..=n).filter(|&k| gcd(k, n) == 1).count()
}

proptest! {
    #[test]
    fn rbar_rank_over_q_and_fp(n in 1usize..=30, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let q = rbar(n, 0).unwrap();
        prop_assert_eq!(q.rank, phi(n));
        if n as u64 % p != 0 {
            let r = rbar(n, p).unwrap();
            prop_assert_eq!(r.rank, phi(n));
            if !q.relations.is_empty() {
                prop_assert_eq!(rank_rational(&q.relations), rank_mod_p(&q.relations, p));
            }
        } else {
            prop_assert!(rbar(n, p).is_err());
        }
    }
}

const ALGEBRAS: [(&str, u64); 7] =
    [("A4", 2), ("S3", 3), ("D10", 5), ("C5:C4", 5), ("C7:C3", 7), ("C3^2:C2", 3), ("C2xA4", 2)];

#[test]
fn out_action_is_additive() {
    for (name, p) in ALGEBRAS {
        let e = build_essential(&named_group(name).unwrap(), p, 0).unwrap();
        let n = e.n();
        for gamma in 0..e.out_order() {
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(
                        e.out_action(gamma, (i + j) % n),
                        (e.out_action(gamma, i) + e.out_action(gamma, j)) % n,
                        "{name}"
                    );
                }
            }
        }
    }
}

#[test]
fn e_x_is_multiplicative() {
    for (name, p) in ALGEBRAS {
        let g = named_group(name).unwrap();
        let exact = build_essential(&g, p, 0).unwrap();
        let n = exact.n();
        let k = exact.support.k_generator;
        let gens: Vec<usize> = (1..n).filter(|&e| gcd(e, n) == 1).map(|e| g.pow(k, e as i64)).collect();
        let cf = CycloField::new(n);
        for &x in &gens {
            for a in 0..n {
                for b in 0..n {
                    let ea = exact.e_x_exact(&g, x, &exact.rbar.coords(a)).unwrap();
                    let eb = exact.e_x_exact(&g, x, &exact.rbar.coords(b)).unwrap();
                    let eab = exact.e_x_exact(&g, x, &exact.rbar.coords(a + b)).unwrap();
                    assert_eq!(cf.mul(&ea, &eb), eab, "{name}, char 0");
                }
            }
        }

        let modular = build_essential(&g, p, p).unwrap();
        let f = Gf::with_roots_of_unity(p, n).unwrap();
        let coords = |i: usize| -> Vec<u32> {
            modular
                .rbar
                .coords(i)
                .iter()
                .map(|c| f.from_int(c.to_integer().to_i64().unwrap()))
                .collect()
        };
        for &x in &gens {
            for a in 0..n {
                for b in 0..n {
                    let ea = modular.e_x_modular(&g, x, &f, &coords(a)).unwrap();
                    let eb = modular.e_x_modular(&g, x, &f, &coords(b)).unwrap();
                    let eab = modular.e_x_modular(&g, x, &f, &coords(a + b)).unwrap();
                    assert_eq!(f.mul(ea, eb), eab, "{name}, char {p}");
                }
            }
        }
    }
}

#[test]
fn laws_and_dimensions() {
    for (name, p) in ALGEBRAS {
        let g = named_group(name).unwrap();
        for field_char in [0, p] {
            let e = build_essential(&g, p, field_char).unwrap();
            assert_eq!(e.check_laws(), Ok(()), "{name} in characteristic {field_char}");
            assert_eq!(e.dimension(), e.out_order() * phi(e.n()));
        }
    }
    assert_eq!(build_essential(&named_group("A4").unwrap(), 2, 2).unwrap().dimension(), 4);
    assert_eq!(build_essential(&named_group("S3").unwrap(), 3, 3).unwrap().dimension(), 1);
    assert!(build_essential(&named_group("S3").unwrap(), 2, 2).is_err());
}
