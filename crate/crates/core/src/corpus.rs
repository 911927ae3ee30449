//! The consistency corpus: every property check of the library run over a
//! fixed list of small groups, in a fixed order.

use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::auto::are_isomorphic;
use crate::cartan::{cartan_matrix, reconstruct_cartan_columns, splitting_field, vx_checks, DEFAULT_ORACLE_CAP};
use crate::catalogue::{named_group, SMALL_GROUPS};
use crate::ddelta::{
    enumerate_ddelta_pairs, essential_support, pair_aut, pairs_isomorphic, pointwise_fixers, DDeltaPair,
    EssentialSupport, VanishingReason,
};
use crate::error::{Error, Result};
use crate::essential::{build_essential, rbar, totient};
use crate::functor_eval::{
    dim_simple_l1_trivial, dim_simple_l1_w, partition_check, pset, pset_law_violations, OutRepW,
};
use crate::gf::Gf;
use crate::group::{p_part, prime_divisors, PermGroup, Subgroup};
use crate::ident::iso_label;
use crate::meataxe::{chop, is_isomorphic, ModuleRep};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    Quick,
    Full,
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Profile::Quick),
            "full" => Ok(Profile::Full),
            _ => Err(Error::InvalidInput(format!("unknown profile `{s}` (expected quick or full)"))),
        }
    }
}

impl Profile {
    pub fn name(self) -> &'static str {
        match self {
            Profile::Quick => "quick",
            Profile::Full => "full",
        }
    }

    /// Groups for the simple-dimension, partition and `𝒫` checks.
    pub fn functor_groups(self) -> &'static [&'static str] {
        match self {
            Profile::Quick => &["C2", "C3", "S3", "A4"],
            Profile::Full => &["C2", "C3", "C6", "C12", "S3", "S4", "A4", "A5", "D8", "Q8", "C3^2:C2"],
        }
    }

    pub fn cartan_cells(self) -> &'static [(&'static str, u64)] {
        match self {
            Profile::Quick => &[("C2", 2), ("S3", 3), ("A4", 2)],
            Profile::Full => &[
                ("C2", 2),
                ("C3", 3),
                ("C6", 2),
                ("C6", 3),
                ("S3", 2),
                ("S3", 3),
                ("A4", 2),
                ("A4", 3),
                ("D8", 2),
                ("Q8", 2),
                ("S4", 2),
                ("S4", 3),
            ],
        }
    }

    /// Groups whose outer automorphism group exceeds the build cap are skipped.
    fn essential_groups(self) -> &'static [&'static str] {
        match self {
            Profile::Quick => &["C2", "S3", "A4", "C6"],
            Profile::Full => SMALL_GROUPS,
        }
    }

    fn rbar_bound(self) -> usize {
        match self {
            Profile::Quick => 12,
            Profile::Full => 30,
        }
    }
}

/// Outcome of one check.
#[derive(Clone, Debug)]
pub struct CheckResult {
    /// Acceptance criterion the check belongs to, 1..=10.
    pub criterion: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct CorpusReport {
    pub profile: Profile,
    pub prime: Option<u64>,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl CorpusReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn criterion_passed(&self, criterion: u8) -> Option<bool> {
        let mut it = self.checks.iter().filter(|c| c.criterion == criterion).peekable();
        it.peek()?;
        Some(it.all(|c| c.passed))
    }
}

struct Runner {
    prime: Option<u64>,
    checks: Vec<CheckResult>,
}

impl Runner {
    fn wants(&self, p: u64) -> bool {
        self.prime.map_or(true, |q| q == p)
    }

    fn run(&mut self, criterion: u8, name: String, f: impl FnOnce() -> Result<(bool, String)>) {
        let start = Instant::now();
        let (passed, detail) = match f() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        self.checks.push(CheckResult {
            criterion,
            name,
            passed,
            detail,
            elapsed: start.elapsed(),
        });
    }
}

fn ok_if(cond: bool, detail: String) -> Result<(bool, String)> {
    Ok((cond, detail))
}

fn primes_of(g: &PermGroup) -> Vec<u64> {
    prime_divisors(g.order())
}

/// One representative per isomorphism type of p-subgroups of `g`.
pub fn p_subgroup_types(g: &PermGroup, p: u64) -> Vec<Subgroup> {
    let mut out: Vec<Subgroup> = Vec::new();
    for q in g.p_subgroup_classes(p) {
        if !out.iter().any(|r| r.order() == q.order() && are_isomorphic(&g.subgroup_as_group(r), &g.subgroup_as_group(&q))) {
            out.push(q);
        }
    }
    out
}

fn trivial_pair(g: &PermGroup, q: &Subgroup, p: u64) -> Result<DDeltaPair> {
    DDeltaPair::trivial_u(iso_label(g, q), g.subgroup_as_group(q), p)
}

/// Runs every check of the profile, restricted to one prime if given.
pub fn run_corpus(profile: Profile, prime: Option<u64>, seed: u64) -> Result<CorpusReport> {
    let mut r = Runner {
        prime,
        checks: Vec::new(),
    };
    simple_dimension_checks(&mut r, profile)?;
    cartan_checks(&mut r, profile, seed)?;
    essential_checks(&mut r, profile)?;
    vanishing_checks(&mut r, profile)?;
    pair_checks(&mut r, profile)?;
    pset_checks(&mut r, profile)?;
    pointwise_checks(&mut r, profile)?;
    chop_checks(&mut r, profile, seed)?;
    Ok(CorpusReport {
        profile,
        prime,
        seed,
        checks: r.checks,
    })
}

fn simple_dimension_checks(r: &mut Runner, profile: Profile) -> Result<()> {
    for name in profile.functor_groups() {
        let g = named_group(name)?;
        for p in primes_of(&g) {
            if !r.wants(p) {
                continue;
            }
            let mut trace_total = 0;
            for q in p_subgroup_types(&g, p) {
                let label = iso_label(&g, &q);
                let pair = trivial_pair(&g, &q, p)?;
                let mut trace = 0;
                r.run(1, format!("two-route dim S_{{{label},1,k}}({name}) at p={p}"), || {
                    let data = pair_aut(&pair)?;
                    let w = OutRepW::trivial(Gf::new(p, 1)?, &data);
                    trace = dim_simple_l1_w(&g, p, &data, &w)?;
                    let count = dim_simple_l1_trivial(&g, p, &pair.l);
                    ok_if(trace == count, format!("trace rank {trace}, defect count {count}"))
                });
                trace_total += trace;
            }
            r.run(2, format!("partition identity for {name} at p={p}"), || {
                let rep = partition_check(&g, p);
                let parts: Vec<String> = rep.breakdown.iter().map(|(l, d)| format!("{l}:{d}")).collect();
                ok_if(
                    rep.holds() && trace_total == rep.p_regular_classes,
                    format!(
                        "[{}] sum {} (trace route {trace_total}), p-regular classes {}",
                        parts.join(", "),
                        rep.total(),
                        rep.p_regular_classes
                    ),
                )
            });
        }
    }
    Ok(())
}

fn cartan_checks(r: &mut Runner, profile: Profile, seed: u64) -> Result<()> {
    for &(name, p) in profile.cartan_cells() {
        if !r.wants(p) {
            continue;
        }
        let g = named_group(name)?;
        let mut data = None;
        r.run(3, format!("Cartan matrix of {name} at p={p}"), || {
            // cartan_matrix verifies integrality, symmetry, determinant, SNF,
            // rank mod p and the dimension bookkeeping before returning
            let d = cartan_matrix(&g, p, seed, DEFAULT_ORACLE_CAP)?;
            let detail = format!("cartan {:?}, det {}, snf {:?}", d.cartan, d.determinant, d.snf);
            data = Some(d);
            ok_if(true, detail)
        });
        let Some(data) = data else { continue };
        r.run(4, format!("γ-basis of {name} at p={p}"), || {
            let cols = reconstruct_cartan_columns(&data)?;
            let bad: Vec<usize> =
                vx_checks(&g, &data)?.iter().filter(|r| !r.passes()).map(|r| r.class).collect();
            let mut ok = cols.iter().all(|&b| b) && bad.is_empty();
            if (name, p) == ("S3", 3) {
                ok &= data.gamma == vec![vec![2, 1]] && data.cartan == vec![vec![2, 1], vec![1, 2]];
            }
            ok_if(
                ok,
                format!(
                    "{} γ rows, columns reconstructed {:?}, failing classes {:?}",
                    data.gamma.len(),
                    cols,
                    bad
                ),
            )
        });
    }
    Ok(())
}

fn essential_checks(r: &mut Runner, profile: Profile) -> Result<()> {
    for (name, p, dim) in [("A4", 2, 4), ("S3", 3, 1)] {
        if r.wants(p) {
            r.run(5, format!("dim E({name}) at p={p}"), || {
                let d = build_essential(&named_group(name)?, p, p)?.dimension();
                ok_if(d == dim, format!("dimension {d}, expected {dim}"))
            });
        }
    }
    for name in profile.essential_groups() {
        let g = named_group(name)?;
        for p in primes_of(&g) {
            if !r.wants(p) || !essential_support(&g, p).is_nonvanishing() {
                continue;
            }
            if matches!(build_essential(&g, p, 0), Err(Error::CapExceeded { .. })) {
                continue;
            }
            for field_char in [0, p] {
                r.run(5, format!("algebra laws of E({name}) at p={p}, characteristic {field_char}"), || {
                    let e = build_essential(&g, p, field_char)?;
                    match e.check_laws() {
                        Ok(()) => ok_if(true, format!("dimension {}", e.dimension())),
                        Err(why) => ok_if(false, why),
                    }
                });
            }
        }
    }
    for field_char in [0, 2, 3, 5, 7] {
        if field_char != 0 && !r.wants(field_char) {
            continue;
        }
        let bound = profile.rbar_bound();
        r.run(5, format!("rank R̄(n) = φ(n) for n ≤ {bound}, characteristic {field_char}"), || {
            let mut bad = Vec::new();
            for n in (1..=bound).filter(|&n| field_char == 0 || n as u64 % field_char != 0) {
                if rbar(n, field_char)?.rank != totient(n) {
                    bad.push(n);
                }
            }
            ok_if(bad.is_empty(), format!("failing n: {bad:?}"))
        });
    }
    Ok(())
}

/// Non-vanishing iff the Sylow subgroup is normal with cyclic quotient and
/// its centralizer is a p-group.
fn support_oracle(g: &PermGroup, p: u64) -> Result<bool> {
    let s = g.sylow(p);
    if !g.is_normal(&s) {
        return Ok(false);
    }
    let q = g.quotient(&g.whole(), &s)?.group;
    let c = g.centralizer(s.members());
    Ok(q.exponent() == q.order() && p_part(c.order(), p) == c.order())
}

fn vanishing_checks(r: &mut Runner, profile: Profile) -> Result<()> {
    let groups: &[&str] = match profile {
        Profile::Quick => &["C1", "C2", "C6", "S3", "A4", "D10"],
        Profile::Full => SMALL_GROUPS,
    };
    for name in groups {
        let g = named_group(name)?;
        for p in primes_of(&g).into_iter().chain([5]) {
            if !r.wants(p) {
                continue;
            }
            r.run(6, format!("vanishing classification of {name} at p={p}"), || {
                let got = essential_support(&g, p);
                let want = support_oracle(&g, p)?;
                ok_if(got.is_nonvanishing() == want, describe_support(&got))
            });
        }
    }
    use VanishingReason::*;
    let witnesses = [
        ("S3", 2, Some(NoNormalSylowComplementForm)),
        ("C6", 3, Some(KNotFaithful)),
        ("S3xS3", 3, Some(KNotCyclic)),
        ("S3", 5, Some(KNotElementaryOrSplitFailure)),
        ("S3", 3, None),
        ("A4", 2, None),
        ("D10", 5, None),
        ("C3^2:C2", 3, None),
    ];
    for (name, p, reason) in witnesses {
        if !r.wants(p) {
            continue;
        }
        r.run(6, format!("vanishing witness {name} at p={p}"), || {
            let got = essential_support(&named_group(name)?, p);
            let ok = match (&got, reason) {
                (EssentialSupport::Vanishing(a), Some(b)) => *a == b,
                (EssentialSupport::NonVanishing(_), None) => true,
                _ => false,
            };
            ok_if(ok, describe_support(&got))
        });
    }
    Ok(())
}

fn describe_support(s: &EssentialSupport) -> String {
    match s {
        EssentialSupport::NonVanishing(d) => format!("non-vanishing, |K| = {}", d.k_order()),
        EssentialSupport::Vanishing(r) => format!("vanishing: {r}"),
    }
}

fn pair_checks(r: &mut Runner, _profile: Profile) -> Result<()> {
    for (p, max, count) in [(2, 4, 5), (3, 3, 3)] {
        if !r.wants(p) {
            continue;
        }
        r.run(7, format!("D^Δ-pairs at p={p} with |L| ≤ {max}"), || {
            let pairs = enumerate_ddelta_pairs(p, max)?;
            for (i, a) in pairs.iter().enumerate() {
                for b in &pairs[i + 1..] {
                    if pairs_isomorphic(a, b)? {
                        return ok_if(false, format!("{} ≅ {}", a.describe(), b.describe()));
                    }
                }
            }
            let names: Vec<String> = pairs.iter().map(DDeltaPair::describe).collect();
            ok_if(pairs.len() == count, format!("{} pairs: {}", pairs.len(), names.join(", ")))
        });
    }
    Ok(())
}

fn pset_checks(r: &mut Runner, profile: Profile) -> Result<()> {
    let mut pair_cache: Vec<(u64, usize, Vec<DDeltaPair>)> = Vec::new();
    for name in profile.functor_groups() {
        let g = named_group(name)?;
        for p in primes_of(&g) {
            if !r.wants(p) {
                continue;
            }
            let types = p_subgroup_types(&g, p);
            for q in &types {
                let label = iso_label(&g, q);
                r.run(8, format!("𝒫({name},{label},1) collapse"), || {
                    let data = pair_aut(&trivial_pair(&g, q, p)?)?;
                    let orbits = pset(&g, &data)?;
                    let classes = g
                        .p_subgroup_classes(p)
                        .into_iter()
                        .filter(|c| c.order() == q.order() && are_isomorphic(&g.subgroup_as_group(c), &data.pair.l))
                        .count();
                    let mut problems = Vec::new();
                    for rep in &orbits.reps {
                        problems.extend(pset_law_violations(&g, &data, rep));
                        let cq = g.centralizer(rep.q.members());
                        if rep.g_qd != g.product_set(&rep.q, &cq) {
                            problems.push("G_{Q,δ} ≠ QC_G(Q)".into());
                        }
                    }
                    if orbits.reps.len() != classes {
                        problems.push(format!("{} orbits, {classes} subgroup classes", orbits.reps.len()));
                    }
                    ok_if(problems.is_empty(), format!("{} orbits; {}", orbits.reps.len(), problems.join("; ")))
                });
            }
            let bound = p_part(g.order(), p);
            if !pair_cache.iter().any(|(q, b, _)| *q == p && *b == bound) {
                pair_cache.push((p, bound, enumerate_ddelta_pairs(p, bound)?));
            }
            let pairs = &pair_cache.iter().find(|(q, b, _)| *q == p && *b == bound).unwrap().2;
            for pair in pairs.iter().filter(|pr| pr.u_order() > 1) {
                if !types.iter().any(|q| q.order() == pair.l.order() && are_isomorphic(&g.subgroup_as_group(q), &pair.l)) {
                    continue;
                }
                r.run(8, format!("θ laws on 𝒫({name},{})", pair.describe()), || {
                    let data = pair_aut(pair)?;
                    let orbits = pset(&g, &data)?;
                    let problems: Vec<String> = orbits
                        .reps
                        .iter()
                        .flat_map(|rep| pset_law_violations(&g, &data, rep))
                        .collect();
                    ok_if(problems.is_empty(), format!("{} orbits; {}", orbits.reps.len(), problems.join("; ")))
                });
            }
        }
    }
    Ok(())
}

fn pointwise_checks(r: &mut Runner, profile: Profile) -> Result<()> {
    let mut groups: Vec<&str> = profile.functor_groups().to_vec();
    groups.extend(["D10", "C7:C3"]);
    for name in groups {
        let g = named_group(name)?;
        for p in primes_of(&g) {
            if !r.wants(p) {
                continue;
            }
            let EssentialSupport::NonVanishing(s) = essential_support(&g, p) else {
                continue;
            };
            r.run(9, format!("pointwise stabilizer of the Sylow subgroup of {name} at p={p}"), || {
                let (fixing, central) = pointwise_fixers(&g, &s.sylow)?;
                ok_if(
                    fixing == central,
                    format!("{} fixing automorphisms, {} central conjugations", fixing.len(), central.len()),
                )
            });
        }
    }
    Ok(())
}

fn chop_checks(r: &mut Runner, profile: Profile, seed: u64) -> Result<()> {
    for &(name, p) in profile.cartan_cells() {
        if !r.wants(p) {
            continue;
        }
        r.run(10, format!("chop of the regular module of {name} at p={p} under two seeds"), || {
            let g = named_group(name)?;
            let m = ModuleRep::regular(&g, splitting_field(&g, p)?.field()?);
            let a = chop(&m, seed)?;
            let b = chop(&m, seed.wrapping_add(1))?;
            let same = a.len() == b.len()
                && a.iter().all(|x| {
                    b.iter().any(|y| {
                        x.multiplicity == y.multiplicity
                            && x.module.dim == y.module.dim
                            && is_isomorphic(&x.module, &x.certificate, &y.module)
                    })
                });
            let mut dims: Vec<(usize, usize)> = a.iter().map(|f| (f.module.dim, f.multiplicity)).collect();
            dims.sort_unstable();
            ok_if(same, format!("(dim, multiplicity) {dims:?}"))
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_profile_passes() {
        let rep = run_corpus(Profile::Quick, None, 7).unwrap();
        for c in &rep.checks {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
        for k in 1..=10 {
            assert_eq!(rep.criterion_passed(k), Some(true), "criterion {k}");
        }
    }

    #[test]
    fn prime_filter() {
        let rep = run_corpus(Profile::Quick, Some(3), 7).unwrap();
        assert!(rep.checks.iter().all(|c| !c.name.contains("p=2")));
        assert!("medium".parse::<Profile>().is_err());
    }
}
