//! Finite fields `GF(p^m)` with `p^m ≤ 2^20`, via log/exp and Zech tables.
//!
//! An element is encoded as the integer `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`
//! where `c_0 + c_1 x + ...` is its residue modulo the field's modulus. The
//! modulus is the least monic irreducible polynomial of degree `m` in that
//! same encoding (or the one given in the file named by `PPFUN_FIELD_TABLE`),
//! and the fixed primitive element is the least encoded generator of the
//! multiplicative group.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::group::prime_divisors;

/// Largest field order handled.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Environment variable naming a file of `p m c_0 ... c_m` modulus lines.
pub const FIELD_TABLE_ENV: &str = "PPFUN_FIELD_TABLE";

pub type Elem = u32;

#[derive(Debug)]
pub struct Gf {
    p: u64,
    m: u32,
    q: u64,
    modulus: Vec<u64>,
    primitive: Elem,
    exp: Vec<Elem>,
    log: Vec<u32>,
    /// `zech[t]` is `1 + g^t`.
    zech: Vec<Elem>,
    minus_one: Elem,
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

fn digits(x: u64, p: u64, m: u32) -> Vec<u64> {
    let mut v = Vec::with_capacity(m as usize);
    let mut x = x;
    for _ in 0..m {
        v.push(x % p);
        x /= p;
    }
    v
}

fn undigits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Product of two residues modulo a monic polynomial, coefficient vectors of length m.
fn poly_mulmod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * m];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for k in (m..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for j in 0..m {
            prod[k - m + j] = (prod[k - m + j] + (p - c) * modulus[j]) % p;
        }
    }
    prod.truncate(m);
    prod
}

/// Whether a monic polynomial (coefficients constant term first) is
/// irreducible over GF(p), by trial division with all monic polynomials of
/// degree at most half.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    for d in 1..=m / 2 {
        for low in 0..p.pow(d as u32) {
            let mut g = digits(low, p, d as u32);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    for k in (dg..r.len()).rev() {
        let c = r[k];
        if c == 0 {
            continue;
        }
        for j in 0..=dg {
            r[k - dg + j] = (r[k - dg + j] + (p - c) * g[j]) % p;
        }
    }
    r.truncate(dg);
    r
}

fn table_modulus(p: u64, m: u32) -> Result<Option<Vec<u64>>> {
    let Ok(path) = std::env::var(FIELD_TABLE_ENV) else {
        return Ok(None);
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Error::InvalidInput(format!("{FIELD_TABLE_ENV}={path}: {e}")))?;
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let nums: Vec<u64> = line
            .split_whitespace()
            .map(|t| t.parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse(format!("field table line `{line}`")))?;
        if nums.len() < 3 || nums[0] != p || nums[1] != m as u64 {
            continue;
        }
        let coeffs = nums[2..].to_vec();
        if coeffs.len() != m as usize + 1 || coeffs[m as usize] != 1 || coeffs.iter().any(|&c| c >= p) {
            return Err(Error::Parse(format!("field table line `{line}` is not a monic degree-{m} polynomial")));
        }
        if !is_irreducible(&coeffs, p) {
            return Err(Error::InvalidInput(format!("field table polynomial `{line}` is reducible")));
        }
        return Ok(Some(coeffs));
    }
    Ok(None)
}

fn default_modulus(p: u64, m: u32) -> Vec<u64> {
    (0..p.pow(m))
        .map(|low| {
            let mut f = digits(low, p, m);
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

impl Gf {
    fn build(p: u64, m: u32) -> Result<Gf> {
        let q = p.pow(m);
        let modulus = match table_modulus(p, m)? {
            Some(f) => f,
            None => default_modulus(p, m),
        };
        let mul = |a: u64, b: u64| {
            undigits(
                &poly_mulmod(&digits(a, p, m), &digits(b, p, m), &modulus, p),
                p,
            )
        };
        let pow = |a: u64, mut e: u64| {
            let mut base = a;
            let mut acc = 1u64;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul(acc, base);
                }
                base = mul(base, base);
                e >>= 1;
            }
            acc
        };
        let factors = prime_divisors((q - 1) as usize);
        let primitive = (1..q)
            .find(|&a| factors.iter().all(|&r| pow(a, (q - 1) / r) != 1))
            .expect("the multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![0u32; q as usize];
        let mut x = 1u64;
        for i in 0..q - 1 {
            exp.push(x as Elem);
            log[x as usize] = i as u32;
            x = mul(x, primitive);
        }
        let add_one = |a: u64| {
            let mut d = digits(a, p, m);
            d[0] = (d[0] + 1) % p;
            undigits(&d, p)
        };
        let zech = exp.iter().map(|&e| add_one(e as u64) as Elem).collect();
        let minus_one = undigits(&{
            let mut d = vec![0u64; m as usize];
            d[0] = p - 1;
            d
        }, p) as Elem;
        Ok(Gf {
            p,
            m,
            q,
            modulus,
            primitive: primitive as Elem,
            exp,
            log,
            zech,
            minus_one,
        })
    }

    /// `GF(p^m)`, shared and cached.
    pub fn new(p: u64, m: u32) -> Result<Arc<Gf>> {
        if !crate::group::is_prime(p) || m == 0 {
            return Err(Error::InvalidInput(format!("GF({p}^{m}) is not a field")));
        }
        match p.checked_pow(m) {
            Some(q) if q <= MAX_FIELD_ORDER => {}
            _ => {
                return Err(Error::FieldTableExhausted {
                    p,
                    exponent: 0,
                })
            }
        }
        static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Arc<Gf>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(f) = cache.lock().unwrap().get(&(p, m)) {
            return Ok(f.clone());
        }
        let f = Arc::new(Gf::build(p, m)?);
        cache.lock().unwrap().insert((p, m), f.clone());
        Ok(f)
    }

    /// Least `m` with `n | p^m - 1`, if `p^m ≤ 2^20`.
    pub fn degree_for_roots(p: u64, n: usize) -> Result<u32> {
        if n as u64 % p == 0 {
            return Err(Error::CharDividesOrder { char: p, n });
        }
        let mut q = 1u64;
        for m in 1.. {
            q *= p;
            if q > MAX_FIELD_ORDER {
                return Err(Error::FieldTableExhausted { p, exponent: n });
            }
            if (q - 1) % n as u64 == 0 {
                return Ok(m);
            }
        }
        unreachable!()
    }

    /// Smallest field of characteristic `p` containing the n-th roots of unity.
    pub fn with_roots_of_unity(p: u64, n: usize) -> Result<Arc<Gf>> {
        Gf::new(p, Gf::degree_for_roots(p, n)?)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    /// Modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn primitive(&self) -> Elem {
        self.primitive
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let n = self.q as u32 - 1;
        let la = self.log[a as usize];
        let t = (self.log[b as usize] + n - la) % n;
        let z = self.zech[t as usize];
        self.mul(a, z)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.mul(a, self.minus_one)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q as u32 - 1;
        let s = self.log[a as usize] + self.log[b as usize];
        self.exp[(if s >= n { s - n } else { s }) as usize]
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        let n = self.q as u32 - 1;
        Some(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn pow(&self, a: Elem, e: i64) -> Elem {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let n = self.q as i64 - 1;
        let l = (self.log[a as usize] as i64 * e.rem_euclid(n)).rem_euclid(n);
        self.exp[l as usize]
    }

    /// Discrete logarithm base the primitive element.
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    /// `g^k` for the primitive element `g`.
    pub fn exp(&self, k: i64) -> Elem {
        let n = self.q as i64 - 1;
        self.exp[k.rem_euclid(n) as usize]
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, v: i64) -> Elem {
        v.rem_euclid(self.p as i64) as Elem
    }

    /// The fixed primitive n-th root of unity `g^((q-1)/n)`.
    pub fn root_of_unity(&self, n: usize) -> Result<Elem> {
        if (self.q - 1) % n as u64 != 0 {
            return Err(Error::InvalidInput(format!(
                "GF({}) has no primitive {n}-th root of unity",
                self.q
            )));
        }
        Ok(self.exp(((self.q - 1) / n as u64) as i64))
    }

    /// Multiplicative order of a nonzero element.
    pub fn elem_order(&self, a: Elem) -> u64 {
        let n = self.q - 1;
        n / num_integer::gcd(n, self.log[a as usize] as u64)
    }

    /// Human-readable form: an integer for prime fields, else the polynomial in `x`.
    pub fn format(&self, a: Elem) -> String {
        if self.m == 1 {
            return a.to_string();
        }
        let d = digits(a as u64, self.p, self.m);
        let terms: Vec<String> = d
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = Gf::new(7, 1).unwrap();
        assert_eq!(f.add(5, 4), 2);
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.inv(3), Some(5));
        assert_eq!(f.neg(2), 5);
        assert_eq!(f.sub(2, 5), 4);
        assert_eq!(f.primitive(), 3);
    }

    #[test]
    fn gf4_conventions() {
        let f = Gf::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let w = f.root_of_unity(3).unwrap();
        assert_eq!(f.elem_order(w), 3);
        assert_eq!(f.add(f.add(1, w), f.mul(w, w)), 0);
        assert_eq!(f.format(w), "x");
    }

    #[test]
    fn field_axioms_gf9_gf8() {
        for (p, m) in [(3u64, 2u32), (2, 3), (5, 2)] {
            let f = Gf::new(p, m).unwrap();
            let q = f.order() as Elem;
            for a in 0..q {
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.sub(f.add(a, b), b), a);
                    for c in [1, q - 1] {
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
            }
        }
    }

    #[test]
    fn splitting_degrees() {
        assert_eq!(Gf::degree_for_roots(3, 2).unwrap(), 1);
        assert_eq!(Gf::degree_for_roots(2, 3).unwrap(), 2);
        assert_eq!(Gf::degree_for_roots(2, 1).unwrap(), 1);
        assert_eq!(Gf::degree_for_roots(2, 15).unwrap(), 4);
        assert!(matches!(Gf::degree_for_roots(2, 6), Err(Error::CharDividesOrder { .. })));
        assert!(matches!(
            Gf::degree_for_roots(2, 1 << 21 | 1),
            Err(Error::FieldTableExhausted { .. })
        ));
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2));
        assert!(is_irreducible(&[1, 1, 0, 1], 2));
    }
}
