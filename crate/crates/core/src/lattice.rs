//! Exact integer matrices: Smith normal form, determinants, ranks mod p.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn to_big(m: &[Vec<i64>]) -> IntMatrix {
    m.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Nonzero invariant factors `d_1 | d_2 | ...` of an integer matrix, all
/// positive.
pub fn smith_invariants(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = &a[t][j] * &q;
                    a[i][j] -= v;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &row[t] * &q;
                    row[j] -= v;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility condition against the rest of the block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
                match bad {
                    Some((i, _)) => {
                        let row_i = a[i].clone();
                        for (x, y) in a[t].iter_mut().zip(row_i) {
                            *x += y;
                        }
                        continue;
                    }
                    None => break,
                }
            }
            // move the smallest nonzero entry of row/column t into place
            let mut best = (t, t);
            for i in t..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(i) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, i);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Rank over `GF(p)`.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> usize {
    let pb = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    let v = x.mod_floor(&pb);
                    v.to_u64_digits().1.first().copied().unwrap_or(0)
                })
                .collect()
        })
        .collect();
    rank_mod_p_u64(&mut a, p)
}

pub(crate) fn rank_mod_p_u64(a: &mut [Vec<u64>], p: u64) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&i| a[i][c] % p != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = mod_inverse(a[rank][c], p);
        for j in 0..cols {
            a[rank][j] = a[rank][j] * inv % p;
        }
        for i in 0..rows {
            if i != rank && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..cols {
                    a[i][j] = (a[i][j] + (p - f) * a[rank][j]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Inverse of `a` modulo the prime `p`.
pub fn mod_inverse(a: u64, p: u64) -> u64 {
    let e = i64::extended_gcd(&((a % p) as i64), &(p as i64));
    e.x.rem_euclid(p as i64) as u64
}

/// Rank over the rationals (number of nonzero invariant factors).
pub fn rank_rational(m: &IntMatrix) -> usize {
    smith_invariants(m).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_examples() {
        let m = to_big(&[vec![2, 1], vec![1, 2]]);
        assert_eq!(smith_invariants(&m), ints(&[1, 3]));
        let m = to_big(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(smith_invariants(&m), ints(&[2, 6, 12]));
        let m = to_big(&[vec![0, 0], vec![0, 0]]);
        assert!(smith_invariants(&m).is_empty());
        let m = to_big(&[vec![4, 0], vec![0, 6]]);
        assert_eq!(smith_invariants(&m), ints(&[2, 12]));
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&to_big(&[vec![2, 1], vec![1, 2]])), BigInt::from(3));
        let m = to_big(&[vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 9]]);
        assert_eq!(determinant(&m), BigInt::from(-3));
        assert_eq!(determinant(&to_big(&[vec![1, 2], vec![2, 4]])), BigInt::zero());
    }

    #[test]
    fn rank_examples() {
        let m = to_big(&[vec![2, 1], vec![1, 2]]);
        assert_eq!(rank_mod_p(&m, 3), 1);
        assert_eq!(rank_mod_p(&m, 2), 2);
        assert_eq!(rank_rational(&m), 2);
        assert_eq!(mod_inverse(3, 7), 5);
    }
}
