use std::process::Command;
use std::time::Duration;

use ppfun_core::corpus::{run_corpus, CorpusReport, Profile};

const NAMES: [&str; 10] = [
    "two-route simple dimensions",
    "partition identity",
    "Cartan pipeline",
    "γ-basis verification",
    "essential algebra",
    "vanishing classification",
    "D^Δ-pair enumeration",
    "𝒫 scaffolding laws",
    "pointwise automorphism law",
    "determinism",
];

/// Wall-clock budgets per criterion.
fn budget(criterion: u8) -> Option<Duration> {
    match criterion {
        1 => Some(Duration::from_secs(120)),
        3 => Some(Duration::from_secs(300)),
        5 => Some(Duration::from_secs(60)),
        _ => None,
    }
}

fn corpus_verdict(rep: &CorpusReport, k: u8) -> (bool, String) {
    let checks: Vec<_> = rep.checks.iter().filter(|c| c.criterion == k).collect();
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    let elapsed: Duration = checks.iter().map(|c| c.elapsed).sum();
    let in_time = budget(k).map_or(true, |b| elapsed <= b);
    let ok = !checks.is_empty() && failed.is_empty() && in_time;
    let mut detail = format!("{} checks, {:.2}s", checks.len(), elapsed.as_secs_f64());
    if !failed.is_empty() {
        detail += &format!(", failing: {}", failed.join("; "));
    }
    if !in_time {
        detail += &format!(", over budget {:?}", budget(k).unwrap());
    }
    (ok, detail)
}

fn quick_check_json() -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_ppfun"))
        .args(["check", "--profile", "quick", "--seed", "7", "--format", "json"])
        .output()
        .expect("ppfun runs");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

#[test]
fn acceptance() {
    let rep = run_corpus(Profile::Full, None, 7).expect("corpus runs");
    let mut verdicts: Vec<(bool, String)> = (1..=9).map(|k| corpus_verdict(&rep, k)).collect();

    let (chop_ok, chop_detail) = corpus_verdict(&rep, 10);
    let a = quick_check_json();
    let b = quick_check_json();
    let same = a == b;
    verdicts.push((
        chop_ok && same,
        format!("chop seeds: {chop_detail}; quick JSON byte-identical: {same} ({} bytes)", a.len()),
    ));

    for (k, (ok, detail)) in verdicts.iter().enumerate() {
        println!("{} {:>2} {}: {detail}", if *ok { "PASS" } else { "FAIL" }, k + 1, NAMES[k]);
    }
    let failing: Vec<usize> = (1..=10).filter(|&k| !verdicts[k - 1].0).collect();
    assert!(failing.is_empty(), "failing criteria: {failing:?}");
}
