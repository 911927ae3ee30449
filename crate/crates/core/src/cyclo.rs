//! Exact arithmetic in the cyclotomic field `Q(ζ_N)`.
//!
//! Values are rational polynomials in `ζ_N` reduced modulo the N-th
//! cyclotomic polynomial, so equal values have equal representations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Integer coefficients (constant term first) of the n-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: usize) -> Vec<BigInt> {
    assert!(n >= 1);
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![BigInt::zero(); n + 1];
    num[0] = BigInt::from(-1);
    num[n] = BigInt::one();
    for d in (1..n).filter(|d| n % d == 0) {
        num = exact_div(&num, &cyclotomic_poly(d));
    }
    num
}

/// Quotient of integer polynomials, the divisor being monic.
fn exact_div(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() <= db {
        return vec![BigInt::zero()];
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].clone();
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    debug_assert!(r.iter().all(|x| x.is_zero()));
    q
}

pub fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count()
}

/// The field `Q(ζ_N)`.
#[derive(Clone, Debug)]
pub struct CycloField {
    n: usize,
    /// Φ_N with rational coefficients, constant term first.
    modulus: Vec<BigRational>,
}

/// An element of `Q(ζ_N)`: coefficients of `1, ζ, ..., ζ^(φ(N)-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclo {
    coeffs: Vec<BigRational>,
}

impl Cyclo {
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The value as a rational number, if it lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// The value as an integer, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }
}

impl std::fmt::Display for Cyclo {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => format!("{c}"),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{i}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl CycloField {
    pub fn new(n: usize) -> Self {
        let modulus = cyclotomic_poly(n)
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        CycloField { n, modulus }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    fn reduce(&self, mut p: Vec<BigRational>) -> Cyclo {
        let d = self.degree();
        for k in (d..p.len()).rev() {
            let c = std::mem::take(&mut p[k]);
            if c.is_zero() {
                continue;
            }
            for (j, m) in self.modulus.iter().enumerate().take(d) {
                p[k - d + j] -= &c * m;
            }
        }
        p.resize(d, BigRational::zero());
        Cyclo { coeffs: p }
    }

    pub fn zero(&self) -> Cyclo {
        Cyclo {
            coeffs: vec![BigRational::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> Cyclo {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> Cyclo {
        self.from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(&self, v: BigRational) -> Cyclo {
        let mut z = self.zero();
        z.coeffs[0] = v;
        z
    }

    /// `ζ_N^k`.
    pub fn zeta_pow(&self, k: i64) -> Cyclo {
        let k = k.rem_euclid(self.n as i64) as usize;
        let mut p = vec![BigRational::zero(); k.max(self.degree()) + 1];
        p[k] = BigRational::one();
        self.reduce(p)
    }

    pub fn add(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        Cyclo {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        Cyclo {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn neg(&self, a: &Cyclo) -> Cyclo {
        Cyclo {
            coeffs: a.coeffs.iter().map(|x| -x).collect(),
        }
    }

    pub fn scale(&self, a: &Cyclo, r: &BigRational) -> Cyclo {
        Cyclo {
            coeffs: a.coeffs.iter().map(|x| x * r).collect(),
        }
    }

    pub fn mul(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        let d = self.degree();
        let mut p = vec![BigRational::zero(); 2 * d.max(1)];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                p[i + j] += x * y;
            }
        }
        self.reduce(p)
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against Φ_N.
    pub fn inv(&self, a: &Cyclo) -> Option<Cyclo> {
        if a.is_zero() {
            return None;
        }
        // invariant: s * a ≡ r (mod Φ_N)
        let mut r0 = trim(self.modulus.clone());
        let mut r1 = trim(a.coeffs.clone());
        let mut s0: Vec<BigRational> = vec![BigRational::zero()];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while r1.len() > 1 || !r1[0].is_zero() {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        // r0 is a nonzero constant since Φ_N is irreducible
        let c = r0[0].clone();
        let mut s = s0;
        for x in s.iter_mut() {
            *x /= &c;
        }
        let mut p = s;
        if p.len() < self.degree() {
            p.resize(self.degree(), BigRational::zero());
        }
        Some(self.reduce(p))
    }

    /// Complex conjugation `ζ ↦ ζ^-1`.
    pub fn conj(&self, a: &Cyclo) -> Cyclo {
        let mut out = self.zero();
        for (i, c) in a.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = self.add(&out, &self.scale(&self.zeta_pow(-(i as i64)), c));
            }
        }
        out
    }

    /// Galois action `ζ ↦ ζ^k` for `k` prime to N.
    pub fn galois(&self, a: &Cyclo, k: i64) -> Cyclo {
        let mut out = self.zero();
        for (i, c) in a.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = self.add(&out, &self.scale(&self.zeta_pow(k * i as i64), c));
            }
        }
        out
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    if p.is_empty() {
        p.push(BigRational::zero());
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut p = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            p[i + j] += x * y;
        }
    }
    trim(p)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let p = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(p)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() <= db {
        return (vec![BigRational::zero()], trim(r));
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] / &lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= &c * bj;
            }
        }
        q[k] = c;
    }
    r.truncate(db.max(1));
    (trim(q), trim(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(p: &[BigInt]) -> Vec<i64> {
        p.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(ints(&cyclotomic_poly(1)), vec![-1, 1]);
        assert_eq!(ints(&cyclotomic_poly(3)), vec![1, 1, 1]);
        assert_eq!(ints(&cyclotomic_poly(4)), vec![1, 0, 1]);
        assert_eq!(ints(&cyclotomic_poly(6)), vec![1, -1, 1]);
        assert_eq!(ints(&cyclotomic_poly(12)), vec![1, 0, -1, 0, 1]);
        for n in 1..40 {
            assert_eq!(cyclotomic_poly(n).len() - 1, euler_phi(n));
        }
    }

    #[test]
    fn field_arithmetic() {
        let f = CycloField::new(3);
        let z = f.zeta_pow(1);
        let sum = f.add(&f.add(&f.one(), &z), &f.zeta_pow(2));
        assert!(sum.is_zero());
        assert_eq!(f.mul(&z, &f.zeta_pow(2)), f.one());
        let a = f.add(&f.from_int(2), &z);
        let ai = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &ai), f.one());
        assert_eq!(f.conj(&z), f.zeta_pow(2));

        let f1 = CycloField::new(1);
        assert_eq!(f1.zeta_pow(5), f1.one());
        let h = f1.from_int(7);
        assert_eq!(f1.mul(&h, &f1.inv(&h).unwrap()), f1.one());
    }

    #[test]
    fn inverses_in_larger_fields() {
        for n in [5usize, 8, 12, 15] {
            let f = CycloField::new(n);
            let a = f.add(&f.add(&f.from_int(3), &f.zeta_pow(1)), &f.zeta_pow(4));
            let ai = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ai), f.one(), "n = {n}");
        }
    }
}
