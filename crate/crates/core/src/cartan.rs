//! Modular representation oracle: simple modules over a splitting field,
//! Brauer characters in `Q(ζ_N)`, characters of projective indecomposables,
//! the Cartan matrix and the `γ_x` basis of `kCart(G)`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cyclo::{Cyclo, CycloField};
use crate::error::{Error, Result};
use crate::ffmat::Mat;
use crate::gf::{Elem, Gf};
use crate::group::{p_part, PermGroup};
use crate::lattice::{determinant, rank_mod_p, smith_invariants, IntMatrix};
use crate::meataxe::{chop, Certificate, ModuleRep};

pub const DEFAULT_ORACLE_CAP: usize = 60;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u64,
    pub m: u32,
    /// Modulus coefficients, constant term first.
    pub modulus: Vec<u64>,
    /// The p'-part of the exponent of the group.
    pub n: usize,
}

impl FieldSpec {
    pub fn field(&self) -> Result<Arc<Gf>> {
        Gf::new(self.p, self.m)
    }
}

/// Least `GF(p^m)` containing the roots of unity of order the p'-part of the
/// exponent of `g`.
pub fn splitting_field(g: &PermGroup, p: u64) -> Result<FieldSpec> {
    let e = g.exponent();
    let n = e / p_part(e, p);
    let m = Gf::degree_for_roots(p, n)?;
    let f = Gf::new(p, m)?;
    Ok(FieldSpec {
        p,
        m,
        modulus: f.modulus().to_vec(),
        n,
    })
}

/// A p-regular conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub representative: usize,
    pub size: usize,
    pub element_order: usize,
    pub centralizer_order: usize,
    /// Position of the class of inverses in the same list.
    pub inverse: usize,
}

/// p-regular classes sorted by representative; the identity class is first.
pub fn p_regular_class_info(g: &PermGroup, p: u64) -> Vec<ClassInfo> {
    let classes = g.p_regular_classes(p);
    let reps: Vec<usize> = classes.iter().map(|c| c.representative).collect();
    classes
        .iter()
        .map(|c| {
            let inv_class = g.class_of(g.inv(c.representative));
            let inv_rep = g.conjugacy_classes()[inv_class].representative;
            ClassInfo {
                representative: c.representative,
                size: c.size,
                element_order: c.element_order,
                centralizer_order: g.order() / c.size,
                inverse: reps.iter().position(|&r| r == inv_rep).unwrap(),
            }
        })
        .collect()
}

/// The multiset `{|C_G(x)|_p}` over p-regular class representatives, sorted.
pub fn elementary_divisors_bn(g: &PermGroup, p: u64) -> Vec<usize> {
    let mut v: Vec<usize> = p_regular_class_info(g, p)
        .iter()
        .map(|c| p_part(c.centralizer_order, p))
        .collect();
    v.sort_unstable();
    v
}

/// Representatives of p-regular classes with centralizer of order prime to p.
pub fn defect_zero_classes(g: &PermGroup, p: u64) -> Vec<usize> {
    p_regular_class_info(g, p)
        .iter()
        .filter(|c| c.centralizer_order as u64 % p != 0)
        .map(|c| c.representative)
        .collect()
}

/// Dimension of the simple functor `S_{1,1}` at `g`: the number of
/// defect-zero classes.
pub fn dim_s_11(g: &PermGroup, p: u64) -> usize {
    defect_zero_classes(g, p).len()
}

/// Brauer character of a module at the given p-regular elements, lifted to
/// `Q(ζ_n)` through the fixed primitive element of `f`.
pub fn brauer_character(
    f: &Gf,
    n: usize,
    element_mats: &[Mat],
    g: &PermGroup,
    reps: &[usize],
) -> Result<Vec<Cyclo>> {
    let cf = CycloField::new(n);
    reps.iter()
        .map(|&x| {
            let d = g.elem_order(x);
            let mx = &element_mats[x];
            let dim = mx.rows();
            let w = f.root_of_unity(d)?;
            let mut value = cf.zero();
            let mut total = 0;
            for i in 0..d {
                let mult = dim - mx.minus_scalar(f, f.pow(w, i as i64)).rank(f);
                total += mult;
                if mult > 0 {
                    let z = cf.zeta_pow((i * (n / d)) as i64);
                    value = cf.add(&value, &cf.scale(&z, &BigRational::from_integer(mult.into())));
                }
            }
            if total != dim {
                return Err(Error::InvariantViolation(format!(
                    "element of order {d} is not diagonalizable over GF({})",
                    f.order()
                )));
            }
            Ok(value)
        })
        .collect()
}

/// Image of a value of `Q(ζ_n)` in `GF(p^m)` under `ζ_n ↦ g^((q-1)/n)`.
pub fn reduce_cyclo(f: &Gf, n: usize, c: &Cyclo) -> Result<Elem> {
    let z = f.root_of_unity(n)?;
    let p = BigInt::from(f.characteristic());
    let mut acc = 0;
    for (i, a) in c.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let den = a.denom().mod_floor(&p);
        if den.is_zero() {
            return Err(Error::DenominatorDivisibleByP(a.to_string()));
        }
        let num = a.numer().mod_floor(&p).to_i64().unwrap();
        let den = f.from_int(den.to_i64().unwrap());
        let coeff = f.mul(f.from_int(num), f.inv(den).unwrap());
        acc = f.add(acc, f.mul(coeff, f.pow(z, i as i64)));
    }
    Ok(acc)
}

/// A simple module with its certificate and multiplicity in the regular
/// module.
#[derive(Clone, Debug)]
pub struct Simple {
    pub module: ModuleRep,
    pub certificate: Certificate,
    pub regular_multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct SimpleInventory {
    pub spec: FieldSpec,
    pub field: Arc<Gf>,
    pub classes: Vec<ClassInfo>,
    /// Trivial module first, then by dimension and Brauer character.
    pub simples: Vec<Simple>,
    /// `brauer[S][c]`.
    pub brauer: Vec<Vec<Cyclo>>,
}

fn check_cap(g: &PermGroup, cap: usize) -> Result<()> {
    if g.order() > cap {
        return Err(Error::OracleCapExceeded {
            order: g.order(),
            cap,
        });
    }
    Ok(())
}

/// Simple modules by chopping the regular module.
pub fn simple_modules(g: &PermGroup, p: u64, seed: u64, cap: usize) -> Result<SimpleInventory> {
    check_cap(g, cap)?;
    let spec = splitting_field(g, p)?;
    let field = spec.field()?;
    let classes = p_regular_class_info(g, p);
    let reps: Vec<usize> = classes.iter().map(|c| c.representative).collect();
    let factors = chop(&ModuleRep::regular(g, field.clone()), seed)?;
    let mut rows = Vec::new();
    for fac in factors {
        let mats = fac.module.element_matrices(g)?;
        let chi = brauer_character(&field, spec.n, &mats, g, &reps)?;
        rows.push((
            Simple {
                module: fac.module,
                certificate: fac.certificate,
                regular_multiplicity: fac.multiplicity,
            },
            chi,
        ));
    }
    let one = CycloField::new(spec.n).one();
    rows.sort_by_cached_key(|(s, chi)| {
        let trivial = chi.iter().all(|v| *v == one);
        (!trivial, s.module.dim, chi.iter().map(|v| v.to_string()).collect::<Vec<_>>())
    });
    if rows.len() != classes.len() {
        return Err(Error::InvariantViolation(format!(
            "{} simple modules but {} p-regular classes",
            rows.len(),
            classes.len()
        )));
    }
    let (simples, brauer) = rows.into_iter().unzip();
    Ok(SimpleInventory {
        spec,
        field,
        classes,
        simples,
        brauer,
    })
}

/// Inverse of a square matrix over `Q(ζ_n)`.
fn invert(cf: &CycloField, m: &[Vec<Cyclo>]) -> Option<Vec<Vec<Cyclo>>> {
    let k = m.len();
    let mut a: Vec<Vec<Cyclo>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..k).map(|j| if i == j { cf.one() } else { cf.zero() }));
            r
        })
        .collect();
    for c in 0..k {
        let piv = (c..k).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, piv);
        let inv = cf.inv(&a[c][c])?;
        a[c] = a[c].iter().map(|x| cf.mul(x, &inv)).collect();
        let pivot_row = a[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != c && !row[c].is_zero() {
                let fct = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = cf.sub(x, &cf.mul(&fct, y));
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[k..].to_vec()).collect())
}

fn unit_fraction(n: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(n))
}

/// Characters of projective indecomposables from the simple Brauer table:
/// the unique `P` with `Σ_c P[T][c] B[S][c⁻¹] / |C_G(x_c)| = δ_{T,S}`.
pub fn pim_characters(brauer: &[Vec<Cyclo>], classes: &[ClassInfo], n: usize) -> Result<Vec<Vec<Cyclo>>> {
    let cf = CycloField::new(n);
    let k = classes.len();
    let m: Vec<Vec<Cyclo>> = (0..k)
        .map(|c| {
            (0..k)
                .map(|s| cf.scale(&brauer[s][classes[c].inverse], &unit_fraction(classes[c].centralizer_order)))
                .collect()
        })
        .collect();
    invert(&cf, &m).ok_or(Error::SingularBrauerTable)
}

#[derive(Clone, Debug)]
pub struct CartanData {
    pub p: u64,
    pub group_order: usize,
    pub inventory: SimpleInventory,
    /// `pim[T][c]`.
    pub pim: Vec<Vec<Cyclo>>,
    /// `cartan[T][S]`.
    pub cartan: Vec<Vec<i64>>,
    pub determinant: BigInt,
    /// Invariant factors, ascending.
    pub snf: Vec<BigInt>,
    /// Brauer–Nesbitt multiset, ascending.
    pub bn: Vec<usize>,
    pub rank_mod_p: usize,
    /// Indices into `inventory.classes` of the defect-zero classes.
    pub defect_zero: Vec<usize>,
    /// `gamma[x][S]`, one row per defect-zero class.
    pub gamma: Vec<Vec<Elem>>,
}

impl CartanData {
    pub fn dims(&self) -> Vec<usize> {
        self.inventory.simples.iter().map(|s| s.module.dim).collect()
    }

    pub fn field(&self) -> &Gf {
        &self.inventory.field
    }

    pub fn n(&self) -> usize {
        self.inventory.spec.n
    }
}

fn violation(msg: String) -> Error {
    Error::InvariantViolation(msg)
}

/// The Cartan matrix `c_{T,S} = Σ_c Φ_T(x_c) Φ_S(x_c⁻¹) / |C_G(x_c)|` with
/// every consistency check applied before returning.
pub fn cartan_matrix(g: &PermGroup, p: u64, seed: u64, cap: usize) -> Result<CartanData> {
    let inventory = simple_modules(g, p, seed, cap)?;
    let n = inventory.spec.n;
    let cf = CycloField::new(n);
    let classes = inventory.classes.clone();
    let k = classes.len();
    let brauer = &inventory.brauer;

    for (s, row) in brauer.iter().enumerate() {
        let dim = inventory.simples[s].module.dim as i64;
        if row[0] != cf.from_int(dim) {
            return Err(violation(format!("Brauer character of simple {s} at 1 is not its dimension")));
        }
        for (c, info) in classes.iter().enumerate() {
            if row[info.inverse] != cf.conj(&row[c]) {
                return Err(violation(format!("Brauer character of simple {s} is not conjugate-symmetric")));
            }
        }
    }

    let pim = pim_characters(brauer, &classes, n)?;
    let mut cartan = vec![vec![0i64; k]; k];
    for t in 0..k {
        for s in 0..k {
            let mut acc = cf.zero();
            for (c, info) in classes.iter().enumerate() {
                let term = cf.mul(&pim[t][c], &pim[s][info.inverse]);
                acc = cf.add(&acc, &cf.scale(&term, &unit_fraction(info.centralizer_order)));
            }
            let v = acc.as_integer().ok_or_else(|| Error::NonIntegralCartan(acc.to_string()))?;
            if v.is_negative() {
                return Err(Error::NonIntegralCartan(format!("negative entry {v}")));
            }
            cartan[t][s] = v.to_i64().unwrap();
        }
    }

    let dims: Vec<i64> = inventory.simples.iter().map(|s| s.module.dim as i64).collect();
    for t in 0..k {
        if cartan[t][t] <= 0 {
            return Err(violation("Cartan matrix has a non-positive diagonal entry".into()));
        }
        for s in 0..k {
            if cartan[t][s] != cartan[s][t] {
                return Err(violation("Cartan matrix is not symmetric".into()));
            }
        }
        let dim_p: i64 = (0..k).map(|s| cartan[t][s] * dims[s]).sum();
        if pim[t][0] != cf.from_int(dim_p) {
            return Err(violation(format!("Φ_{t}(1) differs from Σ_S c_TS dim S")));
        }
        if dim_p != inventory.simples[t].regular_multiplicity as i64 {
            return Err(violation(format!(
                "dim P_{t} = {dim_p} but the simple occurs {} times in the regular module",
                inventory.simples[t].regular_multiplicity
            )));
        }
    }
    let total: i64 = (0..k)
        .flat_map(|t| (0..k).map(move |s| (t, s)))
        .map(|(t, s)| dims[t] * cartan[t][s] * dims[s])
        .sum();
    if total != g.order() as i64 {
        return Err(violation(format!("Σ dim S c dim T = {total}, expected {}", g.order())));
    }

    let bn = elementary_divisors_bn(g, p);
    let big: IntMatrix = cartan.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let det = determinant(&big);
    let bn_product: BigInt = bn.iter().map(|&x| BigInt::from(x)).product();
    if det != bn_product {
        return Err(violation(format!("det = {det}, product of |C_G(x)|_p = {bn_product}")));
    }
    let mut snf = smith_invariants(&big);
    snf.sort();
    let bn_big: Vec<BigInt> = bn.iter().map(|&x| BigInt::from(x)).collect();
    if snf != bn_big {
        return Err(violation("Smith normal form differs from the Brauer–Nesbitt multiset".into()));
    }
    let rank = rank_mod_p(&big, p);
    let defect_zero: Vec<usize> = (0..k).filter(|&c| classes[c].centralizer_order as u64 % p != 0).collect();
    if rank != defect_zero.len() {
        return Err(violation(format!(
            "Cartan rank mod p is {rank}, expected {} defect-zero classes",
            defect_zero.len()
        )));
    }

    let f = inventory.field.clone();
    let gamma = defect_zero
        .iter()
        .map(|&c| {
            let info = &classes[c];
            (0..k)
                .map(|s| reduce_cyclo(&f, n, &cf.scale(&pim[s][info.inverse], &unit_fraction(info.centralizer_order))))
                .collect::<Result<Vec<Elem>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if !gamma.is_empty() && Mat::from_rows(&gamma).rank(&f) != gamma.len() {
        return Err(violation("γ rows are linearly dependent".into()));
    }

    Ok(CartanData {
        p,
        group_order: g.order(),
        inventory,
        pim,
        cartan,
        determinant: det,
        snf,
        bn,
        rank_mod_p: rank,
        defect_zero,
        gamma,
    })
}

/// For each simple `T`: whether the mod-p Cartan column of `T` equals
/// `Σ_x ρ(Φ_T(x)) γ_x`.
pub fn reconstruct_cartan_columns(data: &CartanData) -> Result<Vec<bool>> {
    let f = data.field();
    let k = data.cartan.len();
    (0..k)
        .map(|t| {
            let mut rhs = vec![0; k];
            for (row, &c) in data.gamma.iter().zip(&data.defect_zero) {
                let a = reduce_cyclo(f, data.n(), &data.pim[t][c])?;
                for (r, &gx) in rhs.iter_mut().zip(row) {
                    *r = f.add(*r, f.mul(a, gx));
                }
            }
            let lhs: Vec<Elem> = (0..k).map(|s| f.from_int(data.cartan[s][t])).collect();
            Ok(lhs == rhs)
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct VxReport {
    pub class: usize,
    /// Character of `v_x` on the p-regular classes.
    pub character: Vec<Cyclo>,
    /// Coordinates of `v_x` in the PIM basis.
    pub coefficients: Vec<Cyclo>,
    pub character_ok: bool,
    pub image_ok: bool,
}

impl VxReport {
    pub fn passes(&self) -> bool {
        self.character_ok && self.image_ok
    }
}

/// Builds `v_x = Ind_{⟨x⟩}^G(|x| 1_x)` in PIM coordinates and checks its
/// character and Cartan image. `class` indexes `data.inventory.classes`.
pub fn vx_check(g: &PermGroup, data: &CartanData, class: usize) -> Result<VxReport> {
    let cf = CycloField::new(data.n());
    let pim_inv = invert(&cf, &data.pim).ok_or(Error::SingularBrauerTable)?;
    vx_check_with(g, data, &cf, &pim_inv, class)
}

/// [`vx_check`] for every defect-zero class, inverting the PIM table once.
pub fn vx_checks(g: &PermGroup, data: &CartanData) -> Result<Vec<VxReport>> {
    let cf = CycloField::new(data.n());
    let pim_inv = invert(&cf, &data.pim).ok_or(Error::SingularBrauerTable)?;
    data.defect_zero
        .iter()
        .map(|&c| vx_check_with(g, data, &cf, &pim_inv, c))
        .collect()
}

fn vx_check_with(
    g: &PermGroup,
    data: &CartanData,
    cf: &CycloField,
    pim_inv: &[Vec<Cyclo>],
    class: usize,
) -> Result<VxReport> {
    let classes = &data.inventory.classes;
    let k = classes.len();
    let n = data.n();
    let f = data.field();
    let x = classes[class].representative;
    // Ind from ⟨x⟩ of |x|·1_x at y is #{t : t⁻¹yt = x}
    let target: Vec<Cyclo> = classes
        .iter()
        .map(|info| {
            let y = info.representative;
            let hits = (0..g.order())
                .filter(|&t| g.conj(g.inv(t), y) == x)
                .count();
            cf.from_int(hits as i64)
        })
        .collect();
    // solve Σ_T a_T Φ_T = target through the PIM inverse
    let coefficients: Vec<Cyclo> = (0..k)
        .map(|t| {
            (0..k).fold(cf.zero(), |acc, c| cf.add(&acc, &cf.mul(&target[c], &pim_inv[c][t])))
        })
        .collect();
    let character: Vec<Cyclo> = (0..k)
        .map(|c| (0..k).fold(cf.zero(), |acc, t| cf.add(&acc, &cf.mul(&coefficients[t], &data.pim[t][c]))))
        .collect();
    let cx = classes[class].centralizer_order as i64;
    let character_ok = character
        .iter()
        .enumerate()
        .all(|(c, v)| *v == cf.from_int(if c == class { cx } else { 0 }));
    let image_ok = match data.defect_zero.iter().position(|&c| c == class) {
        Some(row) => {
            let mut ok = true;
            for s in 0..k {
                let mut lhs = 0;
                for (t, a) in coefficients.iter().enumerate() {
                    let a = reduce_cyclo(f, n, a)?;
                    lhs = f.add(lhs, f.mul(a, f.from_int(data.cartan[s][t])));
                }
                ok &= lhs == f.mul(f.from_int(cx), data.gamma[row][s]);
            }
            ok
        }
        None => false,
    };
    Ok(VxReport {
        class,
        character,
        coefficients,
        character_ok,
        image_ok,
    })
}

/// `dim S_{1,1}(G)` from the oracle: the rank of the γ matrix, asserted equal
/// to the defect-zero class count.
pub fn dim_s_11_oracle(data: &CartanData) -> Result<usize> {
    let r = if data.gamma.is_empty() {
        0
    } else {
        Mat::from_rows(&data.gamma).rank(data.field())
    };
    if r != data.defect_zero.len() {
        return Err(violation("γ rank differs from the defect-zero class count".into()));
    }
    Ok(r)
}

/// Integer Cartan matrix as a `BigInt` matrix.
pub fn cartan_as_int_matrix(data: &CartanData) -> IntMatrix {
    data.cartan
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}
