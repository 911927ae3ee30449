use std::fmt::Display;
use std::process::ExitCode;
use std::time::Instant;

use clap::{CommandFactory, Parser, ValueEnum};
use serde_json::{json, Map, Value};

use ppfun_core::cartan::{cartan_matrix, DEFAULT_ORACLE_CAP};
use ppfun_core::corpus::{run_corpus, Profile};
use ppfun_core::ddelta::{enumerate_ddelta_pairs, essential_support, pair_aut, DDeltaPair, EssentialSupport, PairAutData};
use ppfun_core::error::Error;
use ppfun_core::essential::{build_essential, simple_param_orbits};
use ppfun_core::functor_eval::{
    defect_profile, dim_simple_general, dim_simple_l1_trivial, dim_simple_l1_w, partition_check, pset,
    pset_law_violations, OutRepW,
};
use ppfun_core::gf::Gf;
use ppfun_core::group::{is_prime, PermGroup};
use ppfun_core::parse::{load_group, load_w, parse_aut};

const SCHEMA_VERSION: u32 = 1;
const DEFAULT_PAIR_BOUND: usize = 8;
const GRAMMAR: &str = "ppfun <classes|defects|ddelta|essential|simple-dim|pset|cartan|check> \
[--group <src>] [--p <prime>] [--L <src>] [--u <spec>] [--W <file>] [--format table|json] \
[--cap <n>] [--seed <n>] [--profile quick|full] [--timings]";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Command {
    Classes,
    Defects,
    Ddelta,
    Essential,
    SimpleDim,
    Pset,
    Cartan,
    Check,
}

impl Command {
    fn name(self) -> String {
        self.to_possible_value().unwrap().get_name().to_string()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

/// Invariants of diagonal p-permutation functors on small permutation groups.
#[derive(Parser, Debug)]
#[command(name = "ppfun", version, override_usage = GRAMMAR)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Builtin group name or group definition file.
    #[arg(long)]
    group: Option<String>,
    #[arg(long = "p", value_parser = parse_prime)]
    p: Option<u64>,
    /// The p-group L of a D^Δ-pair: builtin name or file.
    #[arg(long = "L")]
    l: Option<String>,
    /// Automorphism of L: `identity` or the images of 0..|L|-1, comma separated.
    #[arg(long)]
    u: Option<String>,
    /// Representation of Out(L,u) over a finite field.
    #[arg(long = "W")]
    w: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Order cap: modular oracle for `cartan`/`simple-dim`, max |L| for `ddelta`.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    cap: Option<u64>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_parser = parse_profile)]
    profile: Option<Profile>,
    /// Report wall-clock timings (makes the output nondeterministic).
    #[arg(long)]
    timings: bool,
}

fn parse_prime(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(p) if is_prime(p) => Ok(p),
        _ => Err(format!("`{s}` is not a prime")),
    }
}

fn parse_profile(s: &str) -> Result<Profile, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

type Outcome<T> = Result<T, Failure>;

struct Report {
    inputs: Map<String, Value>,
    results: Value,
    headline: Vec<String>,
    warnings: Vec<String>,
    /// Set by `check` when some check failed.
    failed: bool,
}

impl Report {
    fn new(inputs: Map<String, Value>, results: Value, headline: Vec<String>) -> Self {
        Report {
            inputs,
            results,
            headline,
            warnings: Vec::new(),
            failed: false,
        }
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    inputs: Map<String, Value>,
}

impl Ctx<'_> {
    fn missing(&self, flag: &str) -> Failure {
        Failure::Usage(format!("`{}` requires {flag}", self.cli.command.name()))
    }

    fn group(&mut self) -> Outcome<PermGroup> {
        let src = self.cli.group.as_deref().ok_or_else(|| self.missing("--group"))?;
        self.inputs.insert("group".into(), json!(src));
        load_group(src).map_err(|e| Failure::Usage(format!("--group {src}: {e}")))
    }

    fn p(&mut self) -> Outcome<u64> {
        let p = self.cli.p.ok_or_else(|| self.missing("--p"))?;
        self.inputs.insert("p".into(), json!(p));
        Ok(p)
    }

    fn seed(&mut self) -> u64 {
        self.inputs.insert("seed".into(), json!(self.cli.seed));
        self.cli.seed
    }

    fn oracle_cap(&mut self) -> usize {
        let cap = self.cli.cap.map_or(DEFAULT_ORACLE_CAP, |c| c as usize);
        self.inputs.insert("cap".into(), json!(cap));
        cap
    }

    /// The pair `(L, u)` from `--L` and `--u`; `u` defaults to the identity.
    fn pair(&mut self, p: u64) -> Outcome<DDeltaPair> {
        let src = self.cli.l.as_deref().ok_or_else(|| self.missing("--L"))?;
        let l = load_group(src).map_err(|e| Failure::Usage(format!("--L {src}: {e}")))?;
        let spec = self.cli.u.as_deref().unwrap_or("identity");
        let u = parse_aut(&l, spec).map_err(|e| Failure::Usage(format!("--u {spec}: {e}")))?;
        self.inputs.insert("L".into(), json!(src));
        self.inputs.insert("u".into(), json!(spec));
        Ok(DDeltaPair::new(src, l, u, p)?)
    }

    fn w(&mut self, data: &PairAutData) -> Outcome<Option<OutRepW>> {
        let Some(path) = self.cli.w.as_deref() else {
            return Ok(None);
        };
        self.inputs.insert("W".into(), json!(path));
        let w = load_w(path).map_err(|e| Failure::Usage(format!("--W {path}: {e}")))?;
        w.class_matrices(data)?;
        Ok(Some(w))
    }
}

/// A JSON number for integers too large for `i64`.
fn big(x: impl Display) -> Value {
    let s = x.to_string();
    serde_json::from_str(&s).unwrap_or(Value::String(s))
}

fn cmd_classes(cx: &mut Ctx) -> Outcome<Report> {
    let g = cx.group()?;
    let p = cx.cli.p;
    if let Some(p) = p {
        cx.inputs.insert("p".into(), json!(p));
    }
    let classes: Vec<Value> = g
        .conjugacy_classes()
        .iter()
        .map(|c| {
            let mut o = json!({
                "representative": g.element(c.representative).to_string(),
                "size": c.size,
                "element_order": c.element_order,
                "centralizer_order": g.order() / c.size,
            });
            if let Some(p) = p {
                o["p_regular"] = json!(c.element_order as u64 % p != 0);
            }
            o
        })
        .collect();
    let headline = vec![format!("|G| = {}, {} conjugacy classes", g.order(), classes.len())];
    let results = json!({ "order": g.order(), "degree": g.degree(), "class_count": classes.len(), "classes": classes });
    Ok(Report::new(cx.inputs.clone(), results, headline))
}

fn cmd_defects(cx: &mut Ctx) -> Outcome<Report> {
    let g = cx.group()?;
    let p = cx.p()?;
    let src = cx.cli.group.clone().unwrap_or_default();
    let classes: Vec<Value> = defect_profile(&g, p)
        .iter()
        .map(|d| {
            json!({
                "representative": g.element(d.representative).to_string(),
                "class_size": d.class_size,
                "defect": d.label,
                "defect_order": d.defect.order(),
            })
        })
        .collect();
    let part = partition_check(&g, p);
    let headline = part
        .breakdown
        .iter()
        .map(|(l, d)| format!("dim S_{{{l},1,k}}({src}) = {d}"))
        .collect();
    let breakdown: Vec<Value> = part.breakdown.iter().map(|(l, d)| json!({ "L": l, "dimension": d })).collect();
    let results = json!({
        "p_regular_classes": part.p_regular_classes,
        "classes": classes,
        "simple_dimensions": breakdown,
        "partition_total": part.total(),
        "partition_holds": part.holds(),
    });
    Ok(Report::new(cx.inputs.clone(), results, headline))
}

fn pair_json(data: &PairAutData) -> Value {
    let orbits: Vec<Value> = simple_param_orbits(data)
        .iter()
        .map(|o| json!({ "exponents": o.exponents, "representative": o.representative, "out_order": o.out_order }))
        .collect();
    json!({
        "pair": data.pair.describe(),
        "l_order": data.pair.l.order(),
        "u_order": data.pair.u_order(),
        "out_order": data.out_pair_order(),
        "out_generators": data.out_generators().iter().map(|(l, _)| l.clone()).collect::<Vec<_>>(),
        "generator_orbits": orbits,
    })
}

fn cmd_ddelta(cx: &mut Ctx) -> Outcome<Report> {
    let p = cx.p()?;
    if cx.cli.l.is_some() {
        let data = pair_aut(&cx.pair(p)?)?;
        let headline = vec![format!("{}: |Out(L,u)| = {}", data.pair.describe(), data.out_pair_order())];
        return Ok(Report::new(cx.inputs.clone(), pair_json(&data), headline));
    }
    let max = cx.cli.cap.map_or(DEFAULT_PAIR_BOUND, |c| c as usize);
    cx.inputs.insert("cap".into(), json!(max));
    let pairs = enumerate_ddelta_pairs(p, max)?;
    let list: Vec<Value> = pairs
        .iter()
        .map(|pr| json!({ "pair": pr.describe(), "l_order": pr.l.order(), "u_order": pr.u_order() }))
        .collect();
    let mut headline = vec![format!("{} D^Δ-pairs at p={p} with |L| ≤ {max}", pairs.len())];
    headline.extend(pairs.iter().map(|pr| format!("  {}", pr.describe())));
    let results = json!({ "max_order": max, "count": pairs.len(), "pairs": list });
    Ok(Report::new(cx.inputs.clone(), results, headline))
}

fn cmd_essential(cx: &mut Ctx) -> Outcome<Report> {
    let g = cx.group()?;
    let p = cx.p()?;
    let src = cx.cli.group.clone().unwrap_or_default();
    if let EssentialSupport::Vanishing(reason) = essential_support(&g, p) {
        let headline = vec![format!("E({src}) at p={p} vanishes: {reason}"), "dimension 0".into()];
        let results = json!({ "nonvanishing": false, "reason": format!("{reason:?}"), "dimension": 0 });
        return Ok(Report::new(cx.inputs.clone(), results, headline));
    }
    let e = build_essential(&g, p, p)?;
    let basis: Vec<String> = (0..e.out_order())
        .flat_map(|c| (0..e.rbar.rank).map(move |k| (c, k)))
        .map(|(c, k)| e.format(&e.basis_element(c, k)))
        .collect();
    let headline = vec![
        format!("E({src}) at p={p}: Out(G) ⋉ R̄(C{})", e.n()),
        format!("dimension {}", e.dimension()),
    ];
    let results = json!({
        "nonvanishing": true,
        "sylow_order": e.support.sylow.order(),
        "k_order": e.n(),
        "out_order": e.out_order(),
        "rbar_rank": e.rbar.rank,
        "out_exponents": e.out_exponents,
        "dimension": e.dimension(),
        "basis": basis,
    });
    Ok(Report::new(cx.inputs.clone(), results, headline))
}

fn cmd_simple_dim(cx: &mut Ctx) -> Outcome<Report> {
    let g = cx.group()?;
    let p = cx.p()?;
    let src = cx.cli.group.clone().unwrap_or_default();
    let pair = cx.pair(p)?;
    let data = pair_aut(&pair)?;
    let w = cx.w(&data)?;
    let u_label = if pair.u_order() == 1 { "1" } else { "u" };
    let w_label = if w.is_some() { "W" } else { "k" };
    let symbol = format!("dim S_{{{},{u_label},{w_label}}}({src})", pair.name);
    let trivial = w.is_none();
    let w = match w {
        Some(w) => w,
        None => OutRepW::trivial(Gf::new(p, 1)?, &data),
    };
    if pair.u_order() == 1 {
        let trace = dim_simple_l1_w(&g, p, &data, &w)?;
        let mut headline = vec![format!("{symbol} = {trace}"), format!("  trace-rank route: {trace}")];
        let mut results = json!({ "dimension": trace, "routes": { "trace_rank": trace } });
        if trivial {
            let count = dim_simple_l1_trivial(&g, p, &pair.l);
            if count != trace {
                return Err(Error::InvariantViolation(format!("trace rank {trace} but defect count {count}")).into());
            }
            headline.push(format!("  defect-count route: {count}"));
            results["routes"]["defect_count"] = json!(count);
        }
        return Ok(Report::new(cx.inputs.clone(), results, headline));
    }
    let seed = cx.seed();
    let cap = cx.oracle_cap();
    let general = dim_simple_general(&g, &data, &w, seed, cap)?;
    let mut report = Report::new(
        cx.inputs.clone(),
        json!({ "dimension": general.dimension, "per_rep": general.per_rep, "experimental": true }),
        vec![format!("{symbol} = {} (EXPERIMENTAL)", general.dimension)],
    );
    report
        .warnings
        .push("EXPERIMENTAL: nontrivial u is evaluated through Cartan data of C_G(Q)/Z(Q)".into());
    report.warnings.extend(general.warnings);
    Ok(report)
}

fn cmd_pset(cx: &mut Ctx) -> Outcome<Report> {
    let g = cx.group()?;
    let p = cx.p()?;
    let data = pair_aut(&cx.pair(p)?)?;
    let orbits = pset(&g, &data)?;
    let reps: Vec<Value> = orbits
        .reps
        .iter()
        .map(|r| {
            json!({
                "q_order": r.q.order(),
                "q_generators": g.generating_set(&r.q).iter().map(|&x| g.element(x).to_string()).collect::<Vec<_>>(),
                "delta": r.delta.iter().map(|&x| g.element(x).to_string()).collect::<Vec<_>>(),
                "s_u": g.element(r.s_u).to_string(),
                "normalizer_order": r.normalizer.order(),
                "g_qd_order": r.g_qd.order(),
                "g_hat_order": r.g_hat.order(),
                "g_qdu_order": r.g_qdu.order(),
                "g_bar_order": r.g_bar_order(),
                "g_bar_u_order": r.g_bar_u_order(),
                "law_violations": pset_law_violations(&g, &data, r),
            })
        })
        .collect();
    let headline = vec![format!("{} G-orbits on 𝒫(G, {})", reps.len(), data.pair.describe())];
    let results = json!({ "orbit_count": reps.len(), "orbits": reps });
    Ok(Report::new(cx.inputs.clone(), results, headline))
}

fn cmd_cartan(cx: &mut Ctx) -> Outcome<Report> {
    let g = cx.group()?;
    let p = cx.p()?;
    let seed = cx.seed();
    let cap = cx.oracle_cap();
    let d = cartan_matrix(&g, p, seed, cap)?;
    let spec = &d.inventory.spec;
    let classes: Vec<Value> = d
        .inventory
        .classes
        .iter()
        .map(|c| {
            json!({
                "representative": g.element(c.representative).to_string(),
                "size": c.size,
                "element_order": c.element_order,
                "centralizer_order": c.centralizer_order,
            })
        })
        .collect();
    let defect_zero: Vec<String> = d
        .defect_zero
        .iter()
        .map(|&c| g.element(d.inventory.classes[c].representative).to_string())
        .collect();
    let mut headline = vec![format!("Cartan matrix at p={p} over GF({}^{})", spec.p, spec.m)];
    headline.extend(d.cartan.iter().map(|row| format!("  {row:?}")));
    let results = json!({
        "field": { "p": spec.p, "m": spec.m, "modulus": spec.modulus },
        "p_regular_classes": classes,
        "simple_dims": d.dims(),
        "cartan": d.cartan,
        "determinant": big(&d.determinant),
        "snf": d.snf.iter().map(big).collect::<Vec<_>>(),
        "brauer_nesbitt": d.bn,
        "rank_mod_p": d.rank_mod_p,
        "defect_zero": d.defect_zero.len(),
        "defect_zero_classes": defect_zero,
        "gamma": d.gamma,
    });
    Ok(Report::new(cx.inputs.clone(), results, headline))
}

fn cmd_check(cx: &mut Ctx) -> Outcome<Report> {
    let profile = cx.cli.profile.unwrap_or(Profile::Quick);
    cx.inputs.insert("profile".into(), json!(profile.name()));
    if let Some(p) = cx.cli.p {
        cx.inputs.insert("p".into(), json!(p));
    }
    let seed = cx.seed();
    let rep = run_corpus(profile, cx.cli.p, seed)?;
    let timings = cx.cli.timings;
    let checks: Vec<Value> = rep
        .checks
        .iter()
        .map(|c| {
            let mut o = json!({ "criterion": c.criterion, "name": c.name, "passed": c.passed, "detail": c.detail });
            if timings {
                o["elapsed_ms"] = json!(c.elapsed.as_secs_f64() * 1e3);
            }
            o
        })
        .collect();
    let criteria: Vec<Value> = (1..=10)
        .filter_map(|k| rep.criterion_passed(k).map(|ok| json!({ "criterion": k, "passed": ok })))
        .collect();
    let mut headline: Vec<String> = rep
        .checks
        .iter()
        .map(|c| format!("{} [{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.criterion, c.name, c.detail))
        .collect();
    let failures = rep.checks.iter().filter(|c| !c.passed).count();
    headline.push(format!("{} checks, {failures} failed", rep.checks.len()));
    let results = json!({ "passed": rep.passed(), "criteria": criteria, "checks": checks });
    let mut report = Report::new(cx.inputs.clone(), results, headline);
    report.failed = !rep.passed();
    Ok(report)
}

/// `key = value` lines; arrays and objects holding no objects stay inline.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    fn has_object(v: &Value) -> bool {
        match v {
            Value::Object(_) => true,
            Value::Array(a) => a.iter().any(has_object),
            _ => false,
        }
    }
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(a) if has_object(v) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::String(s) => out.push(format!("{prefix} = {s}")),
        _ => out.push(format!("{prefix} = {v}")),
    }
}

fn render(command: Command, report: &Report, format: Format, elapsed_ms: Option<f64>) -> String {
    match format {
        Format::Json => {
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "command": command.name(),
                "inputs": report.inputs,
                "results": report.results,
                "warnings": report.warnings,
                "timing_ms": elapsed_ms,
            });
            serde_json::to_string_pretty(&doc).expect("JSON values serialize") + "\n"
        }
        Format::Table => {
            let mut lines = report.headline.clone();
            lines.push(String::new());
            flatten("", &report.results, &mut lines);
            lines.extend(report.warnings.iter().map(|w| format!("warning: {w}")));
            if let Some(ms) = elapsed_ms {
                lines.push(format!("time: {ms:.1} ms"));
            }
            lines.join("\n") + "\n"
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let start = Instant::now();
    let mut cx = Ctx {
        cli: &cli,
        inputs: Map::new(),
    };
    let outcome = match cli.command {
        Command::Classes => cmd_classes(&mut cx),
        Command::Defects => cmd_defects(&mut cx),
        Command::Ddelta => cmd_ddelta(&mut cx),
        Command::Essential => cmd_essential(&mut cx),
        Command::SimpleDim => cmd_simple_dim(&mut cx),
        Command::Pset => cmd_pset(&mut cx),
        Command::Cartan => cmd_cartan(&mut cx),
        Command::Check => cmd_check(&mut cx),
    };
    match outcome {
        Ok(report) => {
            let elapsed = cli.timings.then(|| start.elapsed().as_secs_f64() * 1e3);
            print!("{}", render(cli.command, &report, cli.format, elapsed));
            if report.failed {
                eprintln!("error: some checks failed");
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\n{}", Cli::command().render_usage());
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
