use std::collections::BTreeSet;

use ppfun_core::catalogue::named_group;
use ppfun_core::ddelta::{pair_aut, DDeltaPair};
use ppfun_core::error::Error;
use ppfun_core::ffmat::Mat;
use ppfun_core::functor_eval::{
    dim_simple_l1_trivial, dim_simple_l1_w, in_zeta, partition_check, pset, zeta, OutRepW,
};
use ppfun_core::gf::Gf;
use ppfun_core::group::{prime_divisors, PermGroup, Subgroup};
use ppfun_core::ident::iso_label;

const GROUPS: [&str; 9] = ["S3", "A4", "S4", "D8", "D10", "C3:C4", "SL(2,3)", "C3^2:C2", "C2xA4"];

fn commute(g: &PermGroup, a: usize, b: usize) -> bool {
    let (x, y) = (g.element(a), g.element(b));
    x.compose(y) == y.compose(x)
}

fn p_part(mut n: usize, p: usize) -> usize {
    let mut out = 1;
    while n % p == 0 {
        n /= p;
        out *= p;
    }
    out
}

/// Normalizes `set` under conjugation by `x`, computed on permutations.
fn normalizes(g: &PermGroup, x: usize, set: &Subgroup) -> bool {
    let (px, pinv) = (g.element(x), g.element(x).inverse());
    set.members().iter().all(|&q| {
        let c = px.compose(g.element(q)).compose(&pinv);
        set.contains(g.index_of(&c).unwrap())
    })
}

fn product_order(g: &PermGroup, a: &[usize], b: &[usize]) -> usize {
    let set: BTreeSet<usize> = a
        .iter()
        .flat_map(|&x| b.iter().map(move |&y| g.index_of(&g.element(x).compose(g.element(y))).unwrap()))
        .collect();
    set.len()
}

#[test]
fn zeta_membership_by_scan() {
    for name in GROUPS {
        let g = named_group(name).unwrap();
        for p in prime_divisors(g.order()) {
            for q in g.p_subgroup_classes(p) {
                let zq = q.members().iter().filter(|&&a| q.members().iter().all(|&b| commute(&g, a, b))).count();
                for z in 0..g.order() {
                    let regular = g.element(z).order() as u64 % p != 0;
                    let centralizes = q.members().iter().all(|&a| commute(&g, a, z));
                    let c = (0..g.order())
                        .filter(|&x| commute(&g, x, z) && q.members().iter().all(|&a| commute(&g, a, x)))
                        .count();
                    let want = regular && centralizes && p_part(c, p as usize) == zq;
                    assert_eq!(in_zeta(&g, p, &q, z), want, "{name} p={p} |Q|={} z={z}", q.order());
                }
            }
        }
    }
}

#[test]
fn zeta_stabilizers_by_scan() {
    for name in GROUPS {
        let g = named_group(name).unwrap();
        for p in prime_divisors(g.order()) {
            for q in g.p_subgroup_classes(p) {
                let nq: Vec<usize> = (0..g.order()).filter(|&x| normalizes(&g, x, &q)).collect();
                let cq: Vec<usize> =
                    (0..g.order()).filter(|&x| q.members().iter().all(|&a| commute(&g, a, x))).collect();
                let qcq = product_order(&g, q.members(), &cq);
                for rep in zeta(&g, p, &q).reps {
                    let nqz: Vec<usize> = nq.iter().copied().filter(|&x| commute(&g, x, rep.z)).collect();
                    let stab = product_order(&g, &nqz, &cq);
                    assert_eq!(rep.stabilizer_order, stab, "{name} p={p}");
                    assert_eq!(rep.quotient_stabilizer_order, stab / qcq, "{name} p={p}");
                    assert_eq!(rep.orbit_size * nqz.len(), nq.len(), "{name} p={p}");
                }
            }
        }
    }
}

#[test]
fn two_routes_agree_beyond_the_corpus() {
    for name in GROUPS {
        let g = named_group(name).unwrap();
        for p in prime_divisors(g.order()) {
            let mut total = 0;
            let mut labels = BTreeSet::new();
            for q in g.p_subgroup_classes(p) {
                let label = iso_label(&g, &q);
                if !labels.insert(label.clone()) {
                    continue;
                }
                let l = g.subgroup_as_group(&q);
                let data = pair_aut(&DDeltaPair::trivial_u(label, l.clone(), p).unwrap()).unwrap();
                let w = OutRepW::trivial(Gf::new(p, 1).unwrap(), &data);
                let trace = dim_simple_l1_w(&g, p, &data, &w).unwrap();
                assert_eq!(trace, dim_simple_l1_trivial(&g, p, &l), "{name} at p={p}");
                total += trace;
            }
            let report = partition_check(&g, p);
            assert!(report.holds(), "{name} at p={p}");
            assert_eq!(total, report.p_regular_classes, "{name} at p={p}");
        }
    }
}

#[test]
fn trivial_u_collapse() {
    for name in GROUPS {
        let g = named_group(name).unwrap();
        for p in prime_divisors(g.order()) {
            for q in g.p_subgroup_classes(p) {
                let data = pair_aut(&DDeltaPair::trivial_u("L", g.subgroup_as_group(&q), p).unwrap()).unwrap();
                for rep in pset(&g, &data).unwrap().reps {
                    assert_eq!(rep.g_qdu, rep.g_hat, "{name} at p={p}");
                    let cq = g.centralizer(rep.q.members());
                    assert_eq!(rep.g_qd, g.product_set(&rep.q, &cq), "{name} at p={p}");
                }
            }
        }
    }
}

#[test]
fn w_must_satisfy_out_relations() {
    let c3 = named_group("C3").unwrap();
    let data = pair_aut(&DDeltaPair::trivial_u("C3", c3, 3).unwrap()).unwrap();
    let f = Gf::new(3, 2).unwrap();
    let label = data.out_generators()[0].0.clone();
    let sign = OutRepW {
        field: f.clone(),
        dim: 1,
        mats: vec![(label.clone(), Mat::from_rows(&[vec![f.from_int(-1)]]))],
    };
    assert!(sign.class_matrices(&data).is_ok());
    // an element of order 8 cannot represent an involution
    let bad = OutRepW {
        field: f.clone(),
        dim: 1,
        mats: vec![(label, Mat::from_rows(&[vec![f.primitive()]]))],
    };
    assert!(matches!(bad.class_matrices(&data), Err(Error::RelationCheckFailed(_))));
    let unlabeled = OutRepW {
        field: f,
        dim: 1,
        mats: vec![("x".into(), Mat::from_rows(&[vec![1]]))],
    };
    assert!(unlabeled.class_matrices(&data).is_err());
}
