//! Isomorphism-type labels for small subgroups.
//!
//! A label is the catalogue name when the subgroup is isomorphic to a
//! catalogued p-group, and otherwise an invariant fingerprint.

use std::sync::OnceLock;

use crate::auto::{find_isomorphism, order_census};
use crate::catalogue::{named_group, p_group_catalogue_bound, p_group_names};
use crate::group::{prime_divisors, PermGroup, Subgroup};

/// Abelian invariants (prime powers, sorted) of an abelian subgroup.
pub fn abelian_invariants(g: &PermGroup, h: &Subgroup) -> Option<Vec<usize>> {
    let ms = h.members();
    if !ms.iter().all(|&a| ms.iter().all(|&b| g.mul(a, b) == g.mul(b, a))) {
        return None;
    }
    let mut out = Vec::new();
    for p in prime_divisors(h.order()) {
        let p = p as usize;
        // log_p |{x : x^(p^k) = 1}| for k = 0, 1, ...
        let mut logs = vec![0usize];
        let mut pk = 1;
        loop {
            pk *= p;
            let n = ms.iter().filter(|&&x| pk % g.elem_order(x) == 0).count();
            let l = int_log(n, p);
            if l == *logs.last().unwrap() {
                break;
            }
            logs.push(l);
        }
        // number of cyclic factors of exponent >= k is logs[k] - logs[k-1]
        let ge: Vec<usize> = logs.windows(2).map(|w| w[1] - w[0]).collect();
        for k in 1..=ge.len() {
            let exactly = ge[k - 1] - ge.get(k).copied().unwrap_or(0);
            for _ in 0..exactly {
                out.push(p.pow(k as u32));
            }
        }
    }
    out.sort_unstable();
    Some(out)
}

fn int_log(mut n: usize, p: usize) -> usize {
    let mut k = 0;
    while n > 1 {
        n /= p;
        k += 1;
    }
    k
}

/// Invariant fingerprint of a subgroup. Equal fingerprints do not imply
/// isomorphism; [`iso_label`] resolves ties by an isomorphism test.
pub fn iso_key(g: &PermGroup, h: &Subgroup) -> String {
    if let Some(inv) = abelian_invariants(g, h) {
        let parts: Vec<String> = inv.iter().map(|n| n.to_string()).collect();
        return format!("{}:ab[{}]", h.order(), parts.join(","));
    }
    let census = order_census(g, h);
    let mut counts: Vec<(usize, usize)> = Vec::new();
    for o in census {
        match counts.last_mut() {
            Some((q, c)) if *q == o => *c += 1,
            _ => counts.push((o, 1)),
        }
    }
    let census: Vec<String> = counts.iter().map(|(o, c)| format!("{o}^{c}")).collect();
    format!(
        "{}:nab[{}]z{}d{}",
        h.order(),
        census.join(","),
        g.center_of(h).order(),
        g.derived_subgroup(h).order()
    )
}

struct Entry {
    name: String,
    group: PermGroup,
    key: String,
}

fn catalogue_for(p: u64) -> &'static [Entry] {
    static CATS: OnceLock<Vec<(u64, Vec<Entry>)>> = OnceLock::new();
    let cats = CATS.get_or_init(|| {
        [2u64, 3]
            .iter()
            .map(|&p| {
                let names = p_group_names(p, p_group_catalogue_bound(p)).unwrap_or_default();
                let entries = names
                    .into_iter()
                    .map(|name| {
                        let group = named_group(&name).expect("catalogue name builds");
                        let key = iso_key(&group, &group.whole());
                        Entry { name, group, key }
                    })
                    .collect();
                (p, entries)
            })
            .collect()
    });
    cats.iter()
        .find(|(q, _)| *q == p)
        .map(|(_, v)| v.as_slice())
        .unwrap_or(&[])
}

/// Canonical label of the isomorphism type of `h`.
///
/// The trivial group is `1`. Cyclic and elementary abelian groups of prime
/// power order get `C<n>` / `E<n>` style names, catalogued p-groups their
/// catalogue name; everything else falls back to [`iso_key`].
pub fn iso_label(g: &PermGroup, h: &Subgroup) -> String {
    if h.order() == 1 {
        return "1".to_string();
    }
    let key = iso_key(g, h);
    let primes = prime_divisors(h.order());
    if primes.len() == 1 {
        let p = primes[0];
        if let Some(inv) = abelian_invariants(g, h) {
            if inv.len() == 1 {
                return format!("C{}", inv[0]);
            }
            if inv.iter().all(|&q| q as u64 == p) {
                return if h.order() == 4 { "V4".into() } else { format!("E{}", h.order()) };
            }
        }
        let sub = g.subgroup_as_group(h);
        for e in catalogue_for(p) {
            if e.key == key && find_isomorphism(&e.group, &sub, &sub.whole()).is_some() {
                return e.name.clone();
            }
        }
    }
    key
}

/// Whether two subgroups (possibly of different groups) are isomorphic.
pub fn subgroups_isomorphic(g: &PermGroup, a: &Subgroup, h: &PermGroup, b: &Subgroup) -> bool {
    if a.order() != b.order() || iso_key(g, a) != iso_key(h, b) {
        return false;
    }
    let ga = g.subgroup_as_group(a);
    find_isomorphism(&ga, h, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(name: &str) -> String {
        let g = named_group(name).unwrap();
        iso_label(&g, &g.whole())
    }

    #[test]
    fn labels_of_catalogue_groups() {
        assert_eq!(label("C1"), "1");
        assert_eq!(label("C4"), "C4");
        assert_eq!(label("V4"), "V4");
        assert_eq!(label("E8"), "E8");
        assert_eq!(label("Q8"), "Q8");
        assert_eq!(label("D8"), "D8");
        assert_eq!(label("D16"), "D16");
        assert_eq!(label("He27"), "He27");
        assert_eq!(label("C4xC2"), "C4xC2");
    }

    #[test]
    fn abelian_invariant_examples() {
        let g = named_group("C4xC2xC2").unwrap();
        assert_eq!(abelian_invariants(&g, &g.whole()).unwrap(), vec![2, 2, 4]);
        let g = named_group("C6xC2").unwrap();
        assert_eq!(abelian_invariants(&g, &g.whole()).unwrap(), vec![2, 2, 3]);
        let g = named_group("S3").unwrap();
        assert!(abelian_invariants(&g, &g.whole()).is_none());
    }

    #[test]
    fn labels_are_realization_independent() {
        let s4 = named_group("S4").unwrap();
        assert_eq!(iso_label(&s4, &s4.sylow(2)), "D8");
        let a5 = named_group("A5").unwrap();
        assert_eq!(iso_label(&a5, &a5.sylow(2)), "V4");
    }
}
