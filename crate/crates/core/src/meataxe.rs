//! Chopping modules over finite fields into composition factors.
//!
//! Modules are given by matrices of a fixed generating sequence acting on row
//! vectors from the right. Irreducibility is certified by Norton's test: an
//! element `B` of the enveloping algebra with one-dimensional kernel such that
//! a kernel vector generates the module and a kernel vector of `B^T`
//! generates the transposed module.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ffmat::{spin, Echelon, Mat};
use crate::gf::{Elem, Gf};
use crate::group::PermGroup;

/// Retries of the irreducibility search before giving up.
pub const CERTIFICATE_TRIES: usize = 64;

#[derive(Clone, Debug)]
pub struct ModuleRep {
    pub field: Arc<Gf>,
    pub dim: usize,
    pub gens: Vec<Mat>,
}

impl ModuleRep {
    pub fn new(field: Arc<Gf>, dim: usize, gens: Vec<Mat>) -> Self {
        debug_assert!(gens.iter().all(|g| g.rows() == dim && g.cols() == dim));
        ModuleRep { field, dim, gens }
    }

    /// Right regular module: `e_y · x = e_{yx}` for each generator `x`.
    pub fn regular(g: &PermGroup, field: Arc<Gf>) -> Self {
        let n = g.order();
        let gens = g
            .generator_indices()
            .into_iter()
            .map(|x| {
                let mut m = Mat::zero(n, n);
                for y in 0..n {
                    m.set(y, g.mul(y, x), 1);
                }
                m
            })
            .collect();
        ModuleRep::new(field, n, gens)
    }

    pub fn trivial(field: Arc<Gf>, ngens: usize) -> Self {
        ModuleRep::new(field, 1, vec![Mat::identity(1); ngens])
    }

    /// The same space with transposed generator matrices.
    pub fn transposed(&self) -> Self {
        ModuleRep::new(
            self.field.clone(),
            self.dim,
            self.gens.iter().map(|g| g.transpose()).collect(),
        )
    }

    pub fn submodule(&self, sub: &Echelon) -> Self {
        let f = &self.field;
        ModuleRep::new(f.clone(), sub.rank(), self.gens.iter().map(|g| g.restrict(f, sub)).collect())
    }

    pub fn quotient(&self, sub: &Echelon) -> Self {
        let f = &self.field;
        ModuleRep::new(
            f.clone(),
            self.dim - sub.rank(),
            self.gens.iter().map(|g| g.quotient(f, sub)).collect(),
        )
    }

    /// Matrices of every element of `g`, whose generator indices correspond
    /// to `self.gens`; fails unless the assignment is a homomorphism.
    pub fn element_matrices(&self, g: &PermGroup) -> Result<Vec<Mat>> {
        let gens = g.generator_indices();
        extend_to_elements(&self.field, self.dim, g.order(), g.identity(), &gens, |a, b| g.mul(a, b), &self.gens)
    }
}

/// Extends generator matrices to all elements of a finite group given by its
/// multiplication, checking consistency on every Cayley graph edge.
pub fn extend_to_elements(
    f: &Gf,
    dim: usize,
    order: usize,
    identity: usize,
    gens: &[usize],
    mul: impl Fn(usize, usize) -> usize,
    mats: &[Mat],
) -> Result<Vec<Mat>> {
    if gens.len() != mats.len() {
        return Err(Error::RelationCheckFailed(format!(
            "{} matrices for {} generators",
            mats.len(),
            gens.len()
        )));
    }
    if mats.iter().any(|m| m.rows() != dim || m.cols() != dim) {
        return Err(Error::RelationCheckFailed(format!("matrices must be {dim}x{dim}")));
    }
    let mut out: Vec<Option<Mat>> = vec![None; order];
    out[identity] = Some(Mat::identity(dim));
    let mut queue = vec![identity];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let mx = out[x].clone().unwrap();
        for (&s, ms) in gens.iter().zip(mats) {
            let y = mul(x, s);
            let my = mx.mul(f, ms);
            match &out[y] {
                Some(prev) if *prev != my => {
                    return Err(Error::RelationCheckFailed(
                        "matrices do not satisfy the group relations".into(),
                    ))
                }
                Some(_) => {}
                None => {
                    out[y] = Some(my);
                    queue.push(y);
                }
            }
        }
    }
    out.into_iter()
        .map(|m| m.ok_or_else(|| Error::RelationCheckFailed("generators do not generate".into())))
        .collect()
}

/// An enveloping algebra element `Σ c_i w_i - λ I`, where `w_0..w_{k-1}` are
/// the generators and each later word is a product of two earlier ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recipe {
    pub products: Vec<(usize, usize)>,
    pub coeffs: Vec<Elem>,
    pub lambda: Elem,
}

impl Recipe {
    fn words(&self, f: &Gf, dim: usize, gens: &[Mat]) -> Vec<Mat> {
        let mut pool: Vec<Mat> = gens.to_vec();
        for &(i, j) in &self.products {
            let m = pool[i].mul(f, &pool[j]);
            pool.push(m);
        }
        debug_assert!(pool.iter().all(|m| m.rows() == dim));
        pool
    }

    pub fn evaluate(&self, f: &Gf, dim: usize, gens: &[Mat]) -> Mat {
        let mut acc = Mat::zero(dim, dim);
        for (w, &c) in self.words(f, dim, gens).iter().zip(&self.coeffs) {
            if c != 0 {
                acc = acc.add(f, &w.scale(f, c));
            }
        }
        acc.minus_scalar(f, self.lambda)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub recipe: Recipe,
    /// Spans the kernel of the recipe's matrix.
    pub kernel: Vec<Elem>,
}

#[derive(Clone, Debug)]
pub enum Reduction {
    Split(Echelon),
    Irreducible(Certificate),
}

fn random_recipe(f: &Gf, ngens: usize, rng: &mut ChaCha8Rng) -> Recipe {
    let mut products = Vec::new();
    if ngens > 0 {
        for step in 0..6 {
            let size = ngens + step;
            products.push((rng.gen_range(0..size), rng.gen_range(0..size)));
        }
    }
    let total = ngens + products.len();
    let q = f.order();
    let coeffs = (0..total).map(|_| rng.gen_range(0..q) as Elem).collect();
    Recipe {
        products,
        coeffs,
        lambda: 0,
    }
}

/// Characteristic polynomial of a square matrix, lowest coefficient first,
/// via reduction to Hessenberg form.
fn char_poly(f: &Gf, a: &Mat) -> Vec<Elem> {
    let n = a.rows();
    let mut h = a.to_rows();
    for j in 0..n.saturating_sub(2) {
        let Some(i) = (j + 1..n).find(|&i| h[i][j] != 0) else {
            continue;
        };
        if i != j + 1 {
            h.swap(i, j + 1);
            for row in h.iter_mut() {
                row.swap(i, j + 1);
            }
        }
        let piv = f.inv(h[j + 1][j]).expect("nonzero pivot");
        for k in j + 2..n {
            let u = f.mul(h[k][j], piv);
            if u == 0 {
                continue;
            }
            for c in 0..n {
                let t = f.mul(u, h[j + 1][c]);
                h[k][c] = f.sub(h[k][c], t);
            }
            for r in 0..n {
                let t = f.mul(u, h[r][k]);
                h[r][j + 1] = f.add(h[r][j + 1], t);
            }
        }
    }
    let one = f.from_int(1);
    let mut polys: Vec<Vec<Elem>> = vec![vec![one]];
    for m in 0..n {
        let prev = &polys[m];
        let mut next = vec![0; m + 2];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = f.add(next[d + 1], c);
            next[d] = f.sub(next[d], f.mul(h[m][m], c));
        }
        let mut t = one;
        for i in (0..m).rev() {
            t = f.mul(t, h[i + 1][i]);
            let coef = f.mul(h[i][m], t);
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = f.sub(next[d], f.mul(coef, c));
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

fn eval_poly(f: &Gf, poly: &[Elem], x: Elem) -> Elem {
    poly.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// Finds a proper submodule or an irreducibility certificate.
pub fn reduce_module(m: &ModuleRep, rng: &mut ChaCha8Rng) -> Result<Reduction> {
    let f = &m.field;
    if m.dim == 0 {
        return Err(Error::CertificateFailure("zero module".into()));
    }
    for _ in 0..CERTIFICATE_TRIES {
        let mut recipe = random_recipe(f, m.gens.len(), rng);
        let a = recipe.evaluate(f, m.dim, &m.gens);
        let poly = char_poly(f, &a);
        let Some(lambda) = (0..f.order()).map(|l| l as Elem).find(|&l| eval_poly(f, &poly, l) == 0) else {
            continue;
        };
        let kernel = a.minus_scalar(f, lambda).left_nullspace(f);
        recipe.lambda = lambda;
        for v in &kernel {
            let sub = spin(f, std::slice::from_ref(v), &m.gens);
            if sub.rank() < m.dim {
                return Ok(Reduction::Split(sub));
            }
        }
        if kernel.len() != 1 {
            continue;
        }
        let b = a.minus_scalar(f, lambda);
        let dual_kernel = b.transpose().left_nullspace(f);
        let t = m.transposed();
        let dual_sub = spin(f, &dual_kernel[..1], &t.gens);
        if dual_sub.rank() < m.dim {
            let basis = Mat::from_rows(&dual_sub.rows).transpose();
            let ann = Echelon::of_rows(f, basis.left_nullspace(f));
            return Ok(Reduction::Split(ann));
        }
        return Ok(Reduction::Irreducible(Certificate {
            recipe,
            kernel: kernel.into_iter().next().unwrap(),
        }));
    }
    Err(Error::CertificateFailure(format!(
        "no certificate for a {}-dimensional module after {CERTIFICATE_TRIES} tries",
        m.dim
    )))
}

/// Rechecks a certificate from scratch.
pub fn verify_certificate(m: &ModuleRep, c: &Certificate) -> bool {
    let f = &m.field;
    let b = c.recipe.evaluate(f, m.dim, &m.gens);
    let ns = b.left_nullspace(f);
    if ns.len() != 1 || b.vec_mul(f, &c.kernel).iter().any(|&x| x != 0) || c.kernel.iter().all(|&x| x == 0) {
        return false;
    }
    if spin(f, std::slice::from_ref(&c.kernel), &m.gens).rank() != m.dim {
        return false;
    }
    let dk = b.transpose().left_nullspace(f);
    dk.len() == 1 && spin(f, &dk, &m.transposed().gens).rank() == m.dim
}

/// Spin-up script: which earlier basis vector and generator produced each
/// new standard basis vector.
fn standard_basis(f: &Gf, v: &[Elem], gens: &[Mat]) -> (Vec<(usize, usize)>, Vec<Vec<Elem>>) {
    let mut basis = vec![v.to_vec()];
    let mut space = Echelon::empty(v.len());
    space.insert(f, v.to_vec());
    let mut script = Vec::new();
    let mut i = 0;
    while i < basis.len() {
        for (k, g) in gens.iter().enumerate() {
            let w = g.vec_mul(f, &basis[i]);
            if space.insert(f, w.clone()) {
                basis.push(w);
                script.push((i, k));
            }
        }
        i += 1;
    }
    (script, basis)
}

fn follow_script(f: &Gf, v: &[Elem], gens: &[Mat], script: &[(usize, usize)]) -> Vec<Vec<Elem>> {
    let mut basis = vec![v.to_vec()];
    for &(i, k) in script {
        let w = gens[k].vec_mul(f, &basis[i]);
        basis.push(w);
    }
    basis
}

/// Whether `other` is isomorphic to the irreducible module `m` certified by
/// `cert`.
pub fn is_isomorphic(m: &ModuleRep, cert: &Certificate, other: &ModuleRep) -> bool {
    if m.dim != other.dim || m.gens.len() != other.gens.len() {
        return false;
    }
    let f = &m.field;
    let b = cert.recipe.evaluate(f, other.dim, &other.gens);
    let ns = b.left_nullspace(f);
    if ns.len() != 1 {
        return false;
    }
    let (script, basis) = standard_basis(f, &cert.kernel, &m.gens);
    let other_basis = follow_script(f, &ns[0], &other.gens, &script);
    let s1 = Mat::from_rows(&basis);
    let s2 = Mat::from_rows(&other_basis);
    let (Some(i1), Some(i2)) = (s1.inverse(f), s2.inverse(f)) else {
        return false;
    };
    m.gens
        .iter()
        .zip(&other.gens)
        .all(|(g, h)| s1.mul(f, g).mul(f, &i1) == s2.mul(f, h).mul(f, &i2))
}

/// An irreducible composition factor with its multiplicity.
#[derive(Clone, Debug)]
pub struct Factor {
    pub module: ModuleRep,
    pub certificate: Certificate,
    pub multiplicity: usize,
}

/// Composition factors of `m` up to isomorphism, in order of first
/// appearance.
pub fn chop(m: &ModuleRep, seed: u64) -> Result<Vec<Factor>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors: Vec<Factor> = Vec::new();
    let mut work = vec![m.clone()];
    while let Some(x) = work.pop() {
        if let Some(fac) = factors.iter_mut().find(|fac| is_isomorphic(&fac.module, &fac.certificate, &x)) {
            fac.multiplicity += 1;
            continue;
        }
        match reduce_module(&x, &mut rng)? {
            Reduction::Split(sub) => {
                work.push(x.quotient(&sub));
                work.push(x.submodule(&sub));
            }
            Reduction::Irreducible(certificate) => {
                if !verify_certificate(&x, &certificate) {
                    return Err(Error::CertificateFailure("certificate does not verify".into()));
                }
                factors.push(Factor {
                    module: x,
                    certificate,
                    multiplicity: 1,
                });
            }
        }
    }
    let total: usize = factors.iter().map(|f| f.module.dim * f.multiplicity).sum();
    if total != m.dim {
        return Err(Error::CertificateFailure(format!(
            "composition factors have total dimension {total}, module has {}",
            m.dim
        )));
    }
    Ok(factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue::named_group;

    fn dims(fs: &[Factor]) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = fs.iter().map(|f| (f.module.dim, f.multiplicity)).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn char_poly_annihilates() {
        let f = Gf::new(5, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..7 {
            let rows: Vec<Vec<Elem>> = (0..n)
                .map(|_| (0..n).map(|_| rng.gen_range(0..f.order()) as Elem).collect())
                .collect();
            let a = Mat::from_rows(&rows);
            let poly = char_poly(&f, &a);
            assert_eq!(poly.len(), n + 1);
            let mut acc = Mat::zero(n, n);
            for &c in poly.iter().rev() {
                acc = acc.mul(&f, &a).add(&f, &Mat::identity(n).scale(&f, c));
            }
            assert!(acc.is_zero(), "n={n}");
        }
    }

    #[test]
    fn chop_small_regular_modules() {
        let c2 = named_group("C2").unwrap();
        let f = Gf::new(2, 1).unwrap();
        let fs = chop(&ModuleRep::regular(&c2, f), 1).unwrap();
        assert_eq!(dims(&fs), vec![(1, 2)]);

        let s3 = named_group("S3").unwrap();
        let f = Gf::new(3, 1).unwrap();
        let fs = chop(&ModuleRep::regular(&s3, f.clone()), 7).unwrap();
        assert_eq!(dims(&fs), vec![(1, 3), (1, 3)]);

        // over GF(5) the regular module of S3 is semisimple: 1 + 1 + 2·2
        let f5 = Gf::new(5, 1).unwrap();
        let fs = chop(&ModuleRep::regular(&s3, f5), 3).unwrap();
        assert_eq!(dims(&fs), vec![(1, 1), (1, 1), (2, 2)]);
    }

    #[test]
    fn trivial_module_is_irreducible() {
        let f = Gf::new(3, 1).unwrap();
        let m = ModuleRep::trivial(f, 2);
        let fs = chop(&m, 0).unwrap();
        assert_eq!(dims(&fs), vec![(1, 1)]);
    }

    #[test]
    fn chop_is_seed_independent() {
        let a4 = named_group("A4").unwrap();
        let f = Gf::new(2, 2).unwrap();
        let m = ModuleRep::regular(&a4, f);
        let a = chop(&m, 1).unwrap();
        let b = chop(&m, 99).unwrap();
        assert_eq!(dims(&a), vec![(1, 4), (1, 4), (1, 4)]);
        assert_eq!(dims(&a), dims(&b));
        for x in &a {
            assert!(b.iter().any(|y| is_isomorphic(&x.module, &x.certificate, &y.module)));
        }
    }

    #[test]
    fn element_matrices_check_relations() {
        let s3 = named_group("S3").unwrap();
        let f = Gf::new(3, 1).unwrap();
        let reg = ModuleRep::regular(&s3, f.clone());
        let mats = reg.element_matrices(&s3).unwrap();
        assert_eq!(mats.len(), 6);
        let bad = ModuleRep::new(f, 1, vec![Mat::from_rows(&[vec![2]]); s3.generator_indices().len()]);
        // a map sending every generator to -1 is not a homomorphism of S3
        // unless all generators are transpositions
        let ok = s3.generator_indices().iter().all(|&x| s3.elem_order(x) == 2);
        assert_eq!(bad.element_matrices(&s3).is_ok(), ok);
    }
}
