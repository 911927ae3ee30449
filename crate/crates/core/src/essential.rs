//! The essential algebra `Out(G) ⋉ R̄(K)` of a group `G = P ⋊ K` with `K`
//! cyclic of order `n` acting faithfully.
//!
//! `R̄(K)` is the character ring of `K` modulo all characters induced from
//! proper subgroups. With characters `χ^i` indexed by exponent relative to a
//! fixed generator of `K`, the relations are the fiber sums
//! `Σ_{i ≡ t mod m} χ^i` for proper divisors `m` of `n`, the quotient has
//! rank `φ(n)`, and `χ^0, ..., χ^{φ(n)-1}` is a basis.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::auto::{automorphisms, AutGroup, DEFAULT_AUT_CAP};
use crate::cyclo::{cyclotomic_poly, euler_phi, Cyclo, CycloField};
use crate::ddelta::{essential_support, EssentialSupport, PairAutData, SupportData};
use crate::error::{Error, Result};
use crate::gf::{Elem, Gf};
use crate::group::{is_prime, PermGroup, Subgroup};
use crate::lattice::{rank_mod_p, rank_rational, smith_invariants, IntMatrix};

/// Largest `|Out(G)|` for which the algebra is built.
pub const DEFAULT_OUT_CAP: usize = 1024;

/// Coefficient field: the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Coeffs {
    pub char: u64,
}

impl Coeffs {
    pub fn normalize(&self, x: BigRational) -> BigRational {
        if self.char == 0 {
            return x;
        }
        let p = BigInt::from(self.char);
        let num = x.numer().mod_floor(&p);
        let den = x.denom().mod_floor(&p);
        let den_inv = den.modpow(&(&p - 2u32), &p);
        BigRational::from_integer((num * den_inv).mod_floor(&p))
    }

    pub fn from_int(&self, v: &BigInt) -> BigRational {
        self.normalize(BigRational::from_integer(v.clone()))
    }
}

/// `R̄(K)` for `K` cyclic of order `n`.
#[derive(Clone, Debug)]
pub struct RBar {
    pub n: usize,
    pub field_char: u64,
    pub rank: usize,
    /// Character exponents forming the basis.
    pub basis: Vec<usize>,
    /// Row `i`: coordinates of `χ̄^i` in the basis.
    pub rewrite: Vec<Vec<BigInt>>,
    /// Fiber-sum relation rows.
    pub relations: IntMatrix,
    /// Nonzero invariant factors of the relation matrix.
    pub relation_invariants: Vec<BigInt>,
}

impl RBar {
    /// Coordinates of `χ̄^i` over the coefficient field.
    pub fn coords(&self, i: usize) -> Vec<BigRational> {
        let c = Coeffs { char: self.field_char };
        self.rewrite[i % self.n].iter().map(|x| c.from_int(x)).collect()
    }
}

fn fiber_relations(n: usize) -> IntMatrix {
    let mut rows = Vec::new();
    for m in (1..n).filter(|m| n % m == 0) {
        for t in 0..m {
            rows.push(
                (0..n)
                    .map(|i| BigInt::from((i % m == t) as i64))
                    .collect(),
            );
        }
    }
    rows
}

/// Builds `R̄(K)` for `|K| = n` over a field of the given characteristic.
pub fn rbar(n: usize, field_char: u64) -> Result<RBar> {
    if n == 0 {
        return Err(Error::InvalidInput("cyclic group of order 0".into()));
    }
    if field_char != 0 {
        if !is_prime(field_char) {
            return Err(Error::InvalidInput(format!("{field_char} is not prime")));
        }
        if n as u64 % field_char == 0 {
            return Err(Error::CharDividesOrder {
                char: field_char,
                n,
            });
        }
    }
    let relations = fiber_relations(n);
    let relation_invariants = if relations.is_empty() {
        Vec::new()
    } else {
        smith_invariants(&relations)
    };
    let rank = n - relation_invariants.len();
    let phi = euler_phi(n);
    if rank != phi {
        return Err(Error::InvalidInput(format!(
            "relation lattice for n = {n} has corank {rank}, expected {phi}"
        )));
    }
    if field_char != 0 && !relations.is_empty() && rank_mod_p(&relations, field_char) != n - rank {
        return Err(Error::InvalidInput(format!(
            "relation rank for n = {n} differs between Q and GF({field_char})"
        )));
    }
    // χ^i ↦ x^i mod Φ_n, which kills every fiber sum
    let phi_poly = cyclotomic_poly(n);
    let mut rewrite = Vec::with_capacity(n);
    let mut cur = vec![BigInt::zero(); phi];
    cur[0] = BigInt::one();
    for _ in 0..n {
        rewrite.push(cur.clone());
        // multiply by x and reduce
        let top = cur[phi - 1].clone();
        let mut next = vec![BigInt::zero(); phi];
        next[1..phi].clone_from_slice(&cur[..phi - 1]);
        if !top.is_zero() {
            for (j, c) in phi_poly.iter().enumerate().take(phi) {
                next[j] -= &top * c;
            }
        }
        if phi == 1 {
            // x ≡ -Φ_n(0) when Φ_n is linear
            next[0] = -&phi_poly[0] * &cur[0];
        }
        cur = next;
    }
    let out = RBar {
        n,
        field_char,
        rank,
        basis: (0..rank).collect(),
        rewrite,
        relations,
        relation_invariants,
    };
    check_rewrite(&out)?;
    Ok(out)
}

/// Each relation rewrites to zero, and each `χ^i - rewrite(χ^i)` lies in the
/// rational span of the relations.
fn check_rewrite(r: &RBar) -> Result<()> {
    for row in &r.relations {
        let mut acc = vec![BigInt::zero(); r.rank];
        for (i, c) in row.iter().enumerate() {
            for (a, x) in acc.iter_mut().zip(&r.rewrite[i]) {
                *a += c * x;
            }
        }
        if acc.iter().any(|x| !x.is_zero()) {
            return Err(Error::InvalidInput(format!("relation does not rewrite to zero for n = {}", r.n)));
        }
    }
    let base_rank = r.n - r.rank;
    for i in 0..r.n {
        let mut v = vec![BigInt::zero(); r.n];
        v[i] += 1;
        for (k, &b) in r.basis.iter().enumerate() {
            v[b] -= &r.rewrite[i][k];
        }
        if v.iter().all(|x| x.is_zero()) {
            continue;
        }
        let mut m = r.relations.clone();
        m.push(v);
        if rank_rational(&m) != base_rank {
            return Err(Error::InvalidInput(format!("rewrite of χ^{i} is not a relation consequence")));
        }
    }
    Ok(())
}

/// An element `Σ_γ γ ⋉ v_γ` with `v_γ` coordinates in `R̄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssElement {
    pub coeffs: Vec<Vec<BigRational>>,
}

impl EssElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(|c| c.is_zero())
    }
}

#[derive(Clone, Debug)]
pub struct EssentialAlgebra {
    pub p: u64,
    pub field_char: u64,
    pub support: SupportData,
    pub aut: AutGroup,
    /// `a_γ` with `γ(k) ≡ k^{a_γ} mod P`, per outer class.
    pub out_exponents: Vec<usize>,
    /// `out_table[γ][δ]` = class of `γ ∘ δ`.
    pub out_table: Vec<Vec<usize>>,
    pub rbar: RBar,
}

/// Exponent `a` with `γ(k) ≡ k^a` modulo the normal Sylow subgroup.
fn exponent_mod_p(g: &PermGroup, sylow: &Subgroup, k: usize, n: usize, image: usize) -> Option<usize> {
    (0..n).find(|&a| sylow.contains(g.mul(image, g.inv(g.pow(k, a as i64)))))
}

impl EssentialAlgebra {
    /// Builds the algebra for `G` presented by `support`.
    pub fn from_support(g: &PermGroup, p: u64, field_char: u64, support: SupportData) -> Result<Self> {
        if field_char != 0 && field_char != p {
            return Err(Error::InvalidInput(format!(
                "coefficient characteristic must be 0 or {p}, got {field_char}"
            )));
        }
        let n = support.k_order();
        let rbar = rbar(n, field_char)?;
        let aut = automorphisms(g, DEFAULT_AUT_CAP)?;
        if aut.out_order() > DEFAULT_OUT_CAP {
            return Err(Error::CapExceeded {
                what: "outer automorphism group",
                order: aut.out_order(),
                cap: DEFAULT_OUT_CAP,
            });
        }
        let k = support.k_generator;
        let mut out_exponents = vec![usize::MAX; aut.out_order()];
        for (a, m) in aut.maps().iter().enumerate() {
            let e = exponent_mod_p(g, &support.sylow, k, n, m.apply(k)).ok_or_else(|| {
                Error::InvalidInput("automorphism does not preserve the Sylow subgroup".into())
            })?;
            let class = aut.out_class(a);
            if aut.is_inner(a) && e != 1 % n.max(1) && n > 1 {
                return Err(Error::InvalidInput("inner automorphism acts nontrivially on K".into()));
            }
            match out_exponents[class] {
                usize::MAX => out_exponents[class] = e,
                prev if prev != e => {
                    return Err(Error::InvalidInput("outer class acts inconsistently on K".into()))
                }
                _ => {}
            }
        }
        let out_table = (0..aut.out_order())
            .map(|x| (0..aut.out_order()).map(|y| aut.out_mul(x, y)).collect())
            .collect();
        Ok(EssentialAlgebra {
            p,
            field_char,
            support,
            aut,
            out_exponents,
            out_table,
            rbar,
        })
    }

    pub fn out_order(&self) -> usize {
        self.out_exponents.len()
    }

    pub fn dimension(&self) -> usize {
        self.out_order() * self.rbar.rank
    }

    pub fn n(&self) -> usize {
        self.rbar.n
    }

    fn coeffs(&self) -> Coeffs {
        Coeffs {
            char: self.field_char,
        }
    }

    /// Action of an outer class on character exponents: `χ^i ∘ γ = χ^{i a_γ}`.
    pub fn out_action(&self, gamma: usize, i: usize) -> usize {
        (i * self.out_exponents[gamma]) % self.n()
    }

    pub fn zero(&self) -> EssElement {
        EssElement {
            coeffs: vec![vec![BigRational::zero(); self.rbar.rank]; self.out_order()],
        }
    }

    /// Basis element `γ ⋉ χ̄^{basis[k]}`.
    pub fn basis_element(&self, gamma: usize, k: usize) -> EssElement {
        let mut e = self.zero();
        e.coeffs[gamma][k] = BigRational::one();
        e
    }

    pub fn one(&self) -> EssElement {
        self.basis_element(0, 0)
    }

    /// Bilinear extension of `(γ ⋉ λ)(δ ⋉ μ) = (γ∘δ) ⋉ ((λ∘δ)·μ)`.
    pub fn multiply(&self, a: &EssElement, b: &EssElement) -> EssElement {
        let c = self.coeffs();
        let n = self.n();
        let mut out = self.zero();
        for (gamma, va) in a.coeffs.iter().enumerate() {
            for (i, x) in va.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (delta, vb) in b.coeffs.iter().enumerate() {
                    let target = self.out_table[gamma][delta];
                    let shifted = self.out_action(delta, self.rbar.basis[i]);
                    for (j, y) in vb.iter().enumerate() {
                        if y.is_zero() {
                            continue;
                        }
                        let idx = (shifted + self.rbar.basis[j]) % n;
                        let xy = x * y;
                        for (slot, r) in out.coeffs[target].iter_mut().zip(&self.rbar.rewrite[idx]) {
                            if !r.is_zero() {
                                *slot += &xy * BigRational::from_integer(r.clone());
                            }
                        }
                    }
                }
            }
        }
        for v in out.coeffs.iter_mut() {
            for x in v.iter_mut() {
                *x = c.normalize(std::mem::take(x));
            }
        }
        out
    }

    /// Products of basis elements, flattened as `γ·rank + k`, in sparse form.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<(usize, BigRational)>>> {
        let r = self.rbar.rank;
        let basis: Vec<EssElement> = (0..self.dimension()).map(|b| self.basis_element(b / r, b % r)).collect();
        let sparse = |e: EssElement| -> Vec<(usize, BigRational)> {
            e.coeffs
                .into_iter()
                .flatten()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect()
        };
        basis
            .iter()
            .map(|a| basis.iter().map(|b| sparse(self.multiply(a, b))).collect())
            .collect()
    }

    /// Unit and associativity laws on all basis pairs and triples.
    pub fn check_laws(&self) -> std::result::Result<(), String> {
        let t: Vec<Vec<Vec<(usize, i64)>>> = self
            .structure_constants()
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| v.into_iter().map(|(m, c)| coeff_to_i64(&c).map(|c| (m, c))).collect())
                    .collect::<Option<_>>()
            })
            .collect::<Option<_>>()
            .ok_or("structure constant is not a small integer")?;
        for (i, row) in t.iter().enumerate() {
            if t[0][i] != [(i, 1)] || row[0] != [(i, 1)] {
                return Err(format!("unit law fails at basis element {i}"));
            }
        }
        let d = t.len();
        let reduce = |v: i128| match self.field_char {
            0 => v,
            q => v.rem_euclid(q as i128),
        };
        let mut lhs = vec![0i128; d];
        let mut rhs = vec![0i128; d];
        let mut touched = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for &(l, x) in &t[i][j] {
                        for &(m, y) in &t[l][k] {
                            lhs[m] += x as i128 * y as i128;
                            touched.push(m);
                        }
                    }
                    for &(l, x) in &t[j][k] {
                        for &(m, y) in &t[i][l] {
                            rhs[m] += x as i128 * y as i128;
                            touched.push(m);
                        }
                    }
                    let mut ok = true;
                    for &m in &touched {
                        ok &= reduce(lhs[m]) == reduce(rhs[m]);
                        lhs[m] = 0;
                        rhs[m] = 0;
                    }
                    touched.clear();
                    if !ok {
                        return Err(format!("associativity fails at ({i},{j},{k})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Exponent `e` with `x ≡ k^e mod P`; errors unless `x` generates `G/P`.
    pub fn generator_exponent(&self, g: &PermGroup, x: usize) -> Result<usize> {
        let n = self.n();
        let e = exponent_mod_p(g, &self.support.sylow, self.support.k_generator, n, x)
            .ok_or(Error::NotAGenerator)?;
        if e.gcd(&n) != 1 && n > 1 {
            return Err(Error::NotAGenerator);
        }
        Ok(e)
    }

    /// `e_x` with values in `GF(p^m)`: `χ̄^i ↦ ω^{i e}` for the fixed primitive
    /// n-th root of unity `ω`, extended linearly over R̄ coordinates.
    pub fn e_x_modular(&self, g: &PermGroup, x: usize, field: &Gf, v: &[Elem]) -> Result<Elem> {
        let e = self.generator_exponent(g, x)?;
        let w = field.root_of_unity(self.n())?;
        let mut acc = 0;
        for (k, &c) in v.iter().enumerate() {
            let val = field.pow(w, (self.rbar.basis[k] * e) as i64);
            acc = field.add(acc, field.mul(c, val));
        }
        Ok(acc)
    }

    /// `e_x` with exact values in `Q(ζ_n)`.
    pub fn e_x_exact(&self, g: &PermGroup, x: usize, v: &[BigRational]) -> Result<Cyclo> {
        let e = self.generator_exponent(g, x)?;
        let f = CycloField::new(self.n());
        let mut acc = f.zero();
        for (k, c) in v.iter().enumerate() {
            acc = f.add(&acc, &f.scale(&f.zeta_pow((self.rbar.basis[k] * e) as i64), c));
        }
        Ok(acc)
    }

    /// Text form `gamma[i] ⋉ (c_1,...,c_r)` joined by `+`.
    pub fn format(&self, a: &EssElement) -> String {
        let terms: Vec<String> = a
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, v)| v.iter().any(|c| !c.is_zero()))
            .map(|(g, v)| {
                let cs: Vec<String> = v.iter().map(|c| c.to_string()).collect();
                format!("gamma[{g}] ⋉ ({})", cs.join(","))
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// The essential algebra of `G` at `p`, or the reason it vanishes.
pub fn build_essential(g: &PermGroup, p: u64, field_char: u64) -> Result<EssentialAlgebra> {
    match essential_support(g, p) {
        EssentialSupport::NonVanishing(s) => EssentialAlgebra::from_support(g, p, field_char, s),
        EssentialSupport::Vanishing(r) => Err(Error::VanishingEssentialAlgebra(r.to_string())),
    }
}

/// One orbit of generators of `⟨u⟩` under automorphisms of `L⟨u⟩` that
/// stabilize `⟨u⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorOrbit {
    /// Exponents `e` (with `x = u^e`) in the orbit, sorted.
    pub exponents: Vec<usize>,
    /// Least exponent in the orbit.
    pub representative: usize,
    /// `|Out(L, x)|` for `x = u^representative`.
    pub out_order: usize,
}

pub fn simple_param_orbits(data: &PairAutData) -> Vec<GeneratorOrbit> {
    let prod = &data.product;
    let g = &prod.group;
    let n = prod.embed_u.len();
    let cyclic = Subgroup::from_members(prod.embed_u.clone());
    let stabilizer: Vec<usize> = (0..data.aut_lu.order())
        .filter(|&a| {
            let m = data.aut_lu.map(a);
            prod.embed_u.iter().all(|&y| cyclic.contains(m.apply(y)))
        })
        .collect();
    let gens: Vec<usize> = (1..=n.max(1)).map(|e| e % n.max(1)).filter(|&e| e.gcd(&n) == 1 || n == 1).collect();
    let mut seen = vec![false; n.max(1)];
    let mut out = Vec::new();
    for &e in &gens {
        if seen[e] {
            continue;
        }
        let x = prod.embed_u[e];
        let mut orbit: Vec<usize> = stabilizer
            .iter()
            .map(|&a| {
                let y = data.aut_lu.map(a).apply(x);
                prod.embed_u.iter().position(|&z| z == y).unwrap()
            })
            .collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &f in &orbit {
            seen[f] = true;
        }
        let out_order = data
            .aut_lu
            .filter(g, |m| g.are_conjugate(m.apply(x), x))
            .out_order();
        out.push(GeneratorOrbit {
            representative: orbit[0],
            exponents: orbit,
            out_order,
        });
    }
    out
}

/// `φ(n)` as a cross-check helper for callers.
pub fn totient(n: usize) -> usize {
    euler_phi(n)
}

/// Integer value of a rational coefficient (for display of char-p results).
pub fn coeff_to_i64(c: &BigRational) -> Option<i64> {
    c.is_integer().then(|| c.to_integer().to_i64()).flatten()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::auto::AutMap;
    use crate::catalogue::named_group;
    use crate::ddelta::{pair_aut, DDeltaPair};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn rbar_examples() {
        let r = rbar(1, 0).unwrap();
        assert_eq!(r.rank, 1);
        let r = rbar(3, 2).unwrap();
        assert_eq!(r.rank, 2);
        assert_eq!(r.relations.len(), 1);
        assert_eq!(r.rewrite[2], ints(&[-1, -1]));
        let r = rbar(4, 3).unwrap();
        assert_eq!(r.rank, 2);
        assert_eq!(r.relations.len(), 3);
        assert_eq!(r.rewrite[2], ints(&[-1, 0]));
        assert_eq!(r.rewrite[3], ints(&[0, -1]));
        assert!(matches!(rbar(6, 3), Err(Error::CharDividesOrder { .. })));
    }

    #[test]
    fn rbar_rank_is_totient() {
        for n in 1..=30 {
            assert_eq!(rbar(n, 0).unwrap().rank, euler_phi(n));
            for p in [2u64, 3, 5, 7] {
                if n as u64 % p != 0 {
                    assert_eq!(rbar(n, p).unwrap().rank, euler_phi(n));
                }
            }
        }
    }

    #[test]
    fn algebra_dimensions() {
        let a4 = named_group("A4").unwrap();
        let e = build_essential(&a4, 2, 2).unwrap();
        assert_eq!(e.dimension(), 4);
        let s3 = named_group("S3").unwrap();
        let e = build_essential(&s3, 3, 3).unwrap();
        assert_eq!(e.dimension(), 1);
        let b = e.basis_element(0, 0);
        assert_eq!(e.multiply(&b, &b), b);
        let c2 = named_group("C2").unwrap();
        assert_eq!(build_essential(&c2, 2, 2).unwrap().dimension(), 1);
        assert!(matches!(
            build_essential(&named_group("C6").unwrap(), 3, 3),
            Err(Error::VanishingEssentialAlgebra(_))
        ));
    }

    #[test]
    fn a4_product_rule() {
        let a4 = named_group("A4").unwrap();
        let e = build_essential(&a4, 2, 2).unwrap();
        assert_eq!(e.out_order(), 2);
        assert_eq!(e.out_action(1, 1), 2);
        let x = e.basis_element(1, 1);
        assert_eq!(e.multiply(&x, &x), e.one());
        for g in 0..2 {
            for k in 0..2 {
                let b = e.basis_element(g, k);
                assert_eq!(e.multiply(&e.one(), &b), b);
                assert_eq!(e.multiply(&b, &e.one()), b);
            }
        }
    }

    #[test]
    fn e_x_values() {
        let v4 = named_group("V4").unwrap();
        let aut = automorphisms(&v4, 500).unwrap();
        let u: AutMap = aut.maps().iter().find(|m| m.order() == 3).unwrap().clone();
        let pair = DDeltaPair::new("V4", v4, u, 2).unwrap();
        let data = pair_aut(&pair).unwrap();
        let support = crate::ddelta::support_for_pair(&data.product);
        let g = &data.product.group;
        let e = EssentialAlgebra::from_support(g, 2, 2, support).unwrap();
        let f = Gf::with_roots_of_unity(2, 3).unwrap();
        let w = f.root_of_unity(3).unwrap();
        let u_el = data.product.u();
        assert_eq!(e.e_x_modular(g, u_el, &f, &[0, 1]).unwrap(), w);
        // the fiber sum χ^0 + χ^1 + χ^2 rewrites to zero and so maps to zero
        let sum: Vec<Elem> = (0..2)
            .map(|k| {
                let s: BigInt = (0..3).map(|i| e.rbar.rewrite[i][k].clone()).sum();
                f.from_int(i64::try_from(s).unwrap())
            })
            .collect();
        assert_eq!(e.e_x_modular(g, u_el, &f, &sum).unwrap(), 0);
        assert!(matches!(e.e_x_modular(g, 0, &f, &[1, 0]), Err(Error::NotAGenerator)));
    }

    #[test]
    fn generator_orbits() {
        let v4 = named_group("V4").unwrap();
        let aut = automorphisms(&v4, 500).unwrap();
        let u = aut.maps().iter().find(|m| m.order() == 3).unwrap().clone();
        let data = pair_aut(&DDeltaPair::new("V4", v4.clone(), u, 2).unwrap()).unwrap();
        let orbits = simple_param_orbits(&data);
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].exponents, vec![1, 2]);

        let data = pair_aut(&DDeltaPair::trivial_u("V4", v4, 2).unwrap()).unwrap();
        let orbits = simple_param_orbits(&data);
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].exponents, vec![0]);
    }
}
