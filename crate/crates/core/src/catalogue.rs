//! Builtin groups: the name grammar accepted by [`named_group`], the p-group
//! catalogue used for pair enumeration, and a list of small groups.

use crate::error::{Error, Result};
use crate::group::{is_prime, PermGroup};
use crate::perm::Perm;

fn cycle_perm(degree: usize, pts: &[usize]) -> Perm {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for (i, &a) in pts.iter().enumerate() {
        images[a] = pts[(i + 1) % pts.len()] as u32;
    }
    Perm::from_raw(images)
}

pub fn cyclic(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::UnknownName("C0".into()));
    }
    let pts: Vec<usize> = (0..n).collect();
    PermGroup::from_generators(n, &[cycle_perm(n, &pts)])
}

pub fn symmetric(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::UnknownName("S0".into()));
    }
    if n == 1 {
        return PermGroup::from_generators(1, &[]);
    }
    let pts: Vec<usize> = (0..n).collect();
    PermGroup::from_generators(n, &[cycle_perm(n, &[0, 1]), cycle_perm(n, &pts)])
}

pub fn alternating(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::UnknownName("A0".into()));
    }
    let gens: Vec<Perm> = (2..n).map(|i| cycle_perm(n, &[0, 1, i])).collect();
    PermGroup::from_generators(n, &gens)
}

/// Dihedral group of the given order (at least 6) acting on a polygon.
pub fn dihedral(order: usize) -> Result<PermGroup> {
    let n = order / 2;
    let rot: Vec<usize> = (0..n).collect();
    let refl = Perm::from_raw((0..n).map(|i| ((n - i) % n) as u32).collect());
    PermGroup::from_generators(n, &[cycle_perm(n, &rot), refl])
}

pub fn klein_four() -> Result<PermGroup> {
    PermGroup::from_generators(
        4,
        &[cycle_perm(4, &[0, 1]).compose(&cycle_perm(4, &[2, 3])), {
            cycle_perm(4, &[0, 2]).compose(&cycle_perm(4, &[1, 3]))
        }],
    )
}

/// `<a, b | a^m = 1, b^n = a^s, b a b^-1 = a^r>` in its regular representation.
pub fn metacyclic(m: usize, n: usize, r: usize, s: usize) -> Result<PermGroup> {
    let mut rp = vec![1usize; n + 1];
    for j in 1..=n {
        rp[j] = rp[j - 1] * r % m;
    }
    if rp[n] != 1 % m || (s * (r + m - 1)) % m != 0 {
        return Err(Error::InvalidInput(format!(
            "metacyclic parameters ({m},{n},{r},{s}) are inconsistent"
        )));
    }
    // element a^i b^j has index i + m j
    let mul = |x: usize, y: usize| {
        let (i, j) = (x % m, x / m);
        let (k, l) = (y % m, y / m);
        let mut e = i + k * rp[j];
        let mut f = j + l;
        if f >= n {
            f -= n;
            e += s;
        }
        e % m + m * f
    };
    let gens = if n > 1 { vec![1, m] } else { vec![1] };
    Ok(PermGroup::regular_representation(m * n, mul, &gens)?.0)
}

/// Split extension `B ⋊ C_t` of an abelian group `B = Z_{n_1} × ... × Z_{n_k}`
/// by a cyclic group whose generator sends the i-th basis vector of `B` to
/// `images[i]`.
pub fn abelian_by_cyclic(base: &[usize], images: &[Vec<usize>], t: usize) -> Result<PermGroup> {
    let bsize: usize = base.iter().product();
    let decode = |mut v: usize| -> Vec<usize> {
        base.iter()
            .map(|&n| {
                let d = v % n;
                v /= n;
                d
            })
            .collect()
    };
    let encode = |c: &[usize]| -> usize {
        c.iter()
            .zip(base)
            .rev()
            .fold(0, |acc, (&d, &n)| acc * n + d % n)
    };
    let phi = |v: usize| -> usize {
        let c = decode(v);
        let mut out = vec![0usize; base.len()];
        for (i, &ci) in c.iter().enumerate() {
            for (j, o) in out.iter_mut().enumerate() {
                *o += ci * images[i][j];
            }
        }
        encode(&out)
    };
    let add = |a: usize, b: usize| -> usize {
        let (ca, cb) = (decode(a), decode(b));
        encode(&ca.iter().zip(&cb).map(|(x, y)| x + y).collect::<Vec<_>>())
    };
    let mut powers = vec![(0..bsize).collect::<Vec<_>>()];
    for k in 1..t {
        powers.push(powers[k - 1].iter().map(|&v| phi(v)).collect());
    }
    if (0..bsize).any(|v| phi(powers[t - 1][v]) != v) {
        return Err(Error::InvalidInput("automorphism order does not divide t".into()));
    }
    let add_table: Vec<usize> = (0..bsize * bsize).map(|x| add(x / bsize, x % bsize)).collect();
    let mul = |x: usize, y: usize| {
        let (v1, k1) = (x % bsize, x / bsize);
        let (v2, k2) = (y % bsize, y / bsize);
        add_table[v1 * bsize + powers[k1][v2]] + bsize * ((k1 + k2) % t)
    };
    let mut gens = Vec::new();
    let mut stride = 1;
    for &n in base {
        if n > 1 {
            gens.push(stride);
        }
        stride *= n;
    }
    if t > 1 {
        gens.push(bsize);
    }
    Ok(PermGroup::regular_representation(bsize * t, mul, &gens)?.0)
}

/// Subgroup of `GL(2, p)` generated by the given matrices, acting on the
/// nonzero vectors of `GF(p)^2`.
pub fn linear_group_2(p: usize, mats: &[[usize; 4]]) -> Result<PermGroup> {
    let vecs: Vec<(usize, usize)> = (0..p * p)
        .filter(|&i| i != 0)
        .map(|i| (i % p, i / p))
        .collect();
    let pos = |v: (usize, usize)| vecs.iter().position(|&w| w == v).unwrap();
    let gens: Vec<Perm> = mats
        .iter()
        .map(|m| {
            Perm::from_raw(
                vecs.iter()
                    .map(|&(x, y)| pos(((m[0] * x + m[1] * y) % p, (m[2] * x + m[3] * y) % p)) as u32)
                    .collect(),
            )
        })
        .collect();
    PermGroup::from_generators(vecs.len(), &gens)
}

fn elementary_abelian(p: usize, k: usize) -> Result<PermGroup> {
    let mut g = PermGroup::from_generators(1, &[])?;
    for _ in 0..k {
        g = PermGroup::direct_product(&g, &cyclic(p)?)?;
    }
    Ok(g)
}

/// Decomposes `q` as `p^k` with `p` prime.
fn prime_power(q: usize) -> Option<(usize, usize)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut r = q;
    let mut k = 0;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

fn special(name: &str) -> Option<Result<PermGroup>> {
    let g = match name {
        "V4" => klein_four(),
        "Q8" => metacyclic(4, 2, 3, 2),
        "Q16" => metacyclic(8, 2, 7, 4),
        "SD16" => metacyclic(8, 2, 3, 0),
        "M16" => metacyclic(8, 2, 5, 0),
        "C4:C4" => metacyclic(4, 4, 3, 0),
        "M27" => metacyclic(9, 3, 4, 0),
        "C3:C4" | "Dic3" => metacyclic(3, 4, 2, 0),
        "C3:C8" => metacyclic(3, 8, 2, 0),
        "C5:C4" | "F20" => metacyclic(5, 4, 2, 0),
        "Dic5" => metacyclic(5, 4, 4, 0),
        "Dic6" => metacyclic(12, 2, 11, 6),
        "C7:C3" => metacyclic(7, 3, 2, 0),
        "He27" => abelian_by_cyclic(&[3, 3], &[vec![1, 1], vec![0, 1]], 3),
        "C2^2:C4" => abelian_by_cyclic(&[4, 2], &[vec![1, 1], vec![0, 1]], 2),
        "C4oD8" => abelian_by_cyclic(&[4, 2], &[vec![3, 0], vec![2, 1]], 2),
        "C3^2:C2" | "(C3xC3):C2" | "(C3×C3):C2" => {
            abelian_by_cyclic(&[3, 3], &[vec![2, 0], vec![0, 2]], 2)
        }
        "(C3xC3):(C2xC2)" | "(C3×C3):(C2×C2)" => named_group("S3xS3"),
        "C3:D8" => abelian_by_cyclic(&[3, 2, 2], &[vec![2, 0, 0], vec![0, 0, 1], vec![0, 1, 0]], 2),
        "SL(2,3)" => linear_group_2(3, &[[1, 1, 0, 1], [0, 2, 1, 0]]),
        "GL(2,3)" => linear_group_2(3, &[[1, 1, 0, 1], [0, 2, 1, 0], [2, 0, 0, 1]]),
        _ => return None,
    };
    Some(g)
}

/// Splits a name on `x` / `×` outside parentheses.
fn product_factors(name: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in name.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            'x' | '×' if depth == 0 => {
                out.push(&name[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&name[start..]);
    out
}

/// Builds a group from its builtin name.
///
/// Accepted: `C<n>`, `S<n>`, `A<n>`, `D<2n>`, `Q8`, `V4`, `E<p^k>`, `C<p>^<k>`,
/// the named p-groups of the catalogue, a few small non-nilpotent groups, and
/// direct products written `AxB` or `A×B`.
pub fn named_group(name: &str) -> Result<PermGroup> {
    let name = name.trim();
    let unknown = || Error::UnknownName(name.to_string());
    if let Some(g) = special(name) {
        return g;
    }
    let factors = product_factors(name);
    if factors.len() > 1 {
        let mut g = named_group(factors[0])?;
        for f in &factors[1..] {
            g = PermGroup::direct_product(&g, &named_group(f)?)?;
        }
        return Ok(g);
    }
    if let Some(inner) = name.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
        return named_group(inner);
    }
    if let Some((base, exp)) = name.split_once('^') {
        let p: usize = base.strip_prefix('C').and_then(|s| s.parse().ok()).ok_or_else(unknown)?;
        let k: usize = exp.parse().map_err(|_| unknown())?;
        if !is_prime(p as u64) {
            return Err(unknown());
        }
        return elementary_abelian(p, k);
    }
    let (head, num) = name.split_at(name.find(|c: char| c.is_ascii_digit()).ok_or_else(unknown)?);
    let n: usize = num.parse().map_err(|_| unknown())?;
    if n == 0 || n > 10_000 {
        return Err(unknown());
    }
    match head {
        "C" => cyclic(n),
        "S" => symmetric(n),
        "A" => alternating(n),
        "D" if n % 2 == 0 => match n {
            2 => cyclic(2),
            4 => klein_four(),
            _ => dihedral(n),
        },
        "E" => {
            let (p, k) = prime_power(n).ok_or_else(unknown)?;
            elementary_abelian(p, k)
        }
        _ => Err(unknown()),
    }
}

const P2_GROUPS: &[&str] = &[
    "C1", "C2", "C4", "V4", "C8", "C4xC2", "E8", "D8", "Q8", "C16", "C8xC2", "C4xC4",
    "C4xC2xC2", "E16", "D16", "SD16", "Q16", "M16", "C4:C4", "C2xD8", "C2xQ8", "C2^2:C4",
    "C4oD8",
];

const P3_GROUPS: &[&str] = &["C1", "C3", "C9", "E9", "C27", "C9xC3", "E27", "He27", "M27"];

/// Largest order up to which the shipped p-group list is complete.
pub fn p_group_catalogue_bound(p: u64) -> usize {
    match p {
        2 => 16,
        3 => 27,
        _ => (p * p) as usize,
    }
}

/// Names of all p-groups of order at most `max_order`, sorted by order with
/// catalogue order within one order.
pub fn p_group_names(p: u64, max_order: usize) -> Result<Vec<String>> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let bound = p_group_catalogue_bound(p);
    if max_order > bound {
        return Err(Error::CatalogueIncomplete {
            p,
            complete_to: bound,
            requested: max_order,
        });
    }
    let all: Vec<String> = match p {
        2 => P2_GROUPS.iter().map(|s| s.to_string()).collect(),
        3 => P3_GROUPS.iter().map(|s| s.to_string()).collect(),
        _ => vec![
            "C1".into(),
            format!("C{p}"),
            format!("C{}", p * p),
            format!("E{}", p * p),
        ],
    };
    let mut out = Vec::new();
    for name in all {
        let order = order_of_name(&name)?;
        if order <= max_order {
            out.push((order, name));
        }
    }
    out.sort_by_key(|(o, _)| *o);
    Ok(out.into_iter().map(|(_, n)| n).collect())
}

fn order_of_name(name: &str) -> Result<usize> {
    Ok(named_group(name)?.order())
}

/// The p-groups of order at most `max_order` with their names.
pub fn p_group_catalogue(p: u64, max_order: usize) -> Result<Vec<(String, PermGroup)>> {
    p_group_names(p, max_order)?
        .into_iter()
        .map(|n| named_group(&n).map(|g| (n, g)))
        .collect()
}

/// One group of each isomorphism type of order at most 24.
pub const SMALL_GROUPS: &[&str] = &[
    "C1", "C2", "C3", "C4", "V4", "C5", "C6", "S3", "C7", "C8", "C4xC2", "E8", "D8", "Q8",
    "C9", "E9", "C10", "D10", "C11", "C12", "C6xC2", "A4", "D12", "C3:C4", "C13", "C14", "D14",
    "C15", "C16", "C8xC2", "C4xC4", "C4xC2xC2", "E16", "D16", "SD16", "Q16", "M16", "C4:C4",
    "C2xD8", "C2xQ8", "C2^2:C4", "C4oD8", "C17", "C18", "C6xC3", "D18", "S3xC3", "C3^2:C2",
    "C19", "C20", "C10xC2", "D20", "C5:C4", "Dic5", "C21", "C7:C3", "C22", "D22", "C23", "C24",
    "C12xC2", "C6xC2xC2", "S4", "SL(2,3)", "C3:C8", "C4xS3", "D24", "C2xA4", "C3xD8", "C3xQ8",
    "D12xC2", "Dic6", "C2xDic3", "C3:D8",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_group_examples() {
        assert_eq!(named_group("S4").unwrap().order(), 24);
        assert_eq!(named_group("C1").unwrap().order(), 1);
        let q8 = named_group("Q8").unwrap();
        assert_eq!(q8.order(), 8);
        assert_eq!((0..8).filter(|&x| q8.elem_order(x) == 2).count(), 1);
        assert!(matches!(named_group("Z7"), Err(Error::UnknownName(_))));
        assert!(matches!(named_group("E12"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn name_grammar_orders() {
        for (name, order) in [
            ("A5", 60),
            ("D2", 2),
            ("D4", 4),
            ("D10", 10),
            ("E8", 8),
            ("C3^2", 9),
            ("C2xC3", 6),
            ("C2×C2", 4),
            ("S3xS3", 36),
            ("(C3xC3):C2", 18),
            ("(C3xC3):(C2xC2)", 36),
            ("SL(2,3)", 24),
            ("GL(2,3)", 48),
            ("He27", 27),
            ("M27", 27),
        ] {
            assert_eq!(named_group(name).unwrap().order(), order, "{name}");
        }
        assert_eq!(named_group("He27").unwrap().exponent(), 3);
        assert_eq!(named_group("M27").unwrap().exponent(), 9);
    }

    #[test]
    fn catalogue_completeness_errors() {
        assert_eq!(p_group_names(2, 4).unwrap(), ["C1", "C2", "C4", "V4"]);
        assert_eq!(p_group_names(2, 16).unwrap().len(), 23);
        assert!(matches!(
            p_group_names(2, 32),
            Err(Error::CatalogueIncomplete { complete_to: 16, .. })
        ));
        assert_eq!(p_group_names(5, 25).unwrap().len(), 4);
        assert!(p_group_names(5, 125).is_err());
    }

    #[test]
    fn small_groups_build_with_expected_bound() {
        for name in SMALL_GROUPS {
            let g = named_group(name).unwrap();
            assert!(g.order() <= 24, "{name}");
        }
    }
}
