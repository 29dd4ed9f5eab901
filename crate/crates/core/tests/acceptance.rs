//! Acceptance criteria, one PASS/FAIL line each. Runs with its own `main`
//! so the lines are printed even when everything passes.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use skewverify::constants::Constants;
use skewverify::field_tower::KElem;
use skewverify::rational::int;
use skewverify::residue::{
    mu_in_fq, ramification_witnesses, reduce_f_at_residue, reduce_minpoly_mod, roots, FiniteFieldElement,
    ResiduePrime,
};
use skewverify::verifier::{CheckResult, ConstantsOverride, Settings, Status, Verifier};

const BIN: &str = env!("CARGO_BIN_EXE_skewverify");

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn run_checks(v: &Verifier, names: &[&str]) -> Vec<CheckResult> {
    names.iter().map(|n| v.run_check(n).expect("registered check")).collect()
}

fn failures(results: &[CheckResult]) -> Vec<String> {
    results
        .iter()
        .filter(|r| r.status != Status::Pass)
        .map(|r| format!("{} {}: {}", r.status.label(), r.name, r.detail))
        .collect()
}

fn settings(trials: usize) -> Settings {
    Settings {
        seed: 0,
        trials,
        precision: 12,
    }
}

fn exact_identity_suite() -> Outcome {
    let start = Instant::now();
    let v = Verifier::standard(settings(100)).expect("valid settings");
    let results = run_checks(
        &v,
        &[
            "rel_u_cubed",
            "rel_commutation",
            "rel_f_sigma",
            "rel_inner_theta",
            "rel_inner_u",
            "rel_d_fixed",
            "rel_norm_lambda",
            "norm_pi_is_7",
            "t_central",
        ],
    );
    let norm = KElem::pi().norm();
    let elapsed = start.elapsed();
    let bad = failures(&results);
    let ok = bad.is_empty() && norm == Ok(int(7)) && elapsed < Duration::from_secs(5);
    outcome(
        ok,
        format!(
            "{} checks, N(π) = {:?}, {:.2} s{}",
            results.len(),
            norm.map(|n| n.to_string()),
            elapsed.as_secs_f64(),
            if bad.is_empty() { String::new() } else { format!("; {}", bad.join("; ")) }
        ),
    )
}

fn residue_suite() -> Outcome {
    let mut problems = Vec::new();

    let m2 = reduce_minpoly_mod(2);
    let n2 = m2.leading().field_elements().len();
    if m2.coeffs.map(|c| c.value()) != [1, 0, 1, 1] || n2 != 2 || !roots(&m2).is_empty() {
        problems.push(format!("minpoly mod 2 = {m2}, {n2} candidates"));
    }

    let m7 = reduce_minpoly_mod(7);
    let n7 = m7.leading().field_elements().len();
    let witnesses: Vec<u64> = ramification_witnesses(7).iter().map(|r| r.value()).collect();
    if m7.coeffs.map(|c| c.value()) != [6, 5, 1, 1] || n7 != 7 || witnesses != [2] {
        problems.push(format!("minpoly mod 7 = {m7}, witnesses {witnesses:?}"));
    }

    match reduce_f_at_residue(ResiduePrime::Two) {
        Ok(f2) => {
            let n = f2.leading().field_elements().len();
            let expected = [vec![1], vec![1, 1], vec![0, 1], vec![1]];
            let got = f2.coeffs.clone().map(|c| c.coeffs().to_vec());
            let trimmed: Vec<Vec<u64>> = got
                .iter()
                .map(|c| {
                    let mut c = c.clone();
                    while c.len() > 1 && c.last() == Some(&0) {
                        c.pop();
                    }
                    c
                })
                .collect();
            if trimmed != expected || n != 8 || !roots(&f2).is_empty() {
                problems.push(format!("f mod (2) = {f2}, {n} candidates"));
            }
        }
        Err(e) => problems.push(format!("f mod (2): {e}")),
    }

    match reduce_f_at_residue(ResiduePrime::Pi) {
        Ok(fp) => {
            let n = fp.leading().field_elements().len();
            let got: Vec<u64> = fp.coeffs.iter().map(|c| c.coeffs()[0]).collect();
            if got != [1, 4, 0, 1] || n != 7 || !roots(&fp).is_empty() {
                problems.push(format!("f mod (π) = {fp}, {n} candidates"));
            }
        }
        Err(e) => problems.push(format!("f mod (π): {e}")),
    }

    let v = Verifier::standard(settings(100)).expect("valid settings");
    problems.extend(failures(&run_checks(
        &v,
        &["minpoly_irred_mod2", "minpoly_cube_mod7", "f_rootless_mod2", "f_rootless_modpi"],
    )));
    let ok = problems.is_empty();
    outcome(
        ok,
        if ok {
            "x³+x²+1 rootless over F₂; (x−2)³ mod 7 with r = 2; f rootless over F₈ and F₇".into()
        } else {
            problems.join("; ")
        },
    )
}

fn root_of_unity_predicates() -> Outcome {
    let got = [mu_in_fq(3, 7), mu_in_fq(9, 7), mu_in_fq(3, 2)];
    let ok = got == [Ok(true), Ok(false), Ok(false)];
    outcome(ok, format!("mu(3,7), mu(9,7), mu(3,2) = {got:?}"))
}

fn property_suites() -> Outcome {
    let full = Verifier::standard(settings(100)).expect("valid settings");
    let fifty = Verifier::standard(settings(50)).expect("valid settings");
    let mut results = run_checks(
        &full,
        &[
            "d_ring_axioms",
            "homomorphism_sigma_tilde",
            "inner_random",
            "automorphism_orders",
            "automorphism_homomorphisms",
            "norm_multiplicativity",
            "valuation_axioms",
        ],
    );
    results.extend(run_checks(&fifty, &["series_inverse", "tame_delta_residue"]));
    let bad = failures(&results);
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} suites pass (seed 0)", results.len())
        } else {
            bad.join("; ")
        },
    )
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(BIN).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

fn status_in(report: &str, name: &str) -> Option<String> {
    let doc: serde_json::Value = serde_json::from_str(report).ok()?;
    doc["checks"]
        .as_array()?
        .iter()
        .find(|c| c["name"] == name)
        .and_then(|c| c["status"].as_str().map(str::to_string))
}

fn negative_controls() -> Outcome {
    let dir = tempfile::tempdir().expect("temp dir");
    let lambda_path = dir.path().join("lambda_one.json");
    let d_path = dir.path().join("d_one.json");
    std::fs::write(&lambda_path, r#"{"lambda": [[1,0,0],[0,0,0],[0,0,0]]}"#).expect("write");
    std::fs::write(
        &d_path,
        r#"{"d": [[[1,0,0],[0,0,0],[0,0,0]],[[0,0,0],[0,0,0],[0,0,0]],[[0,0,0],[0,0,0],[0,0,0]]]}"#,
    )
    .expect("write");

    let mut problems = Vec::new();
    let lambda = lambda_path.to_str().expect("utf-8 path");
    let (code, report) = cli(&["all", "--format", "json", "--trials", "10", "--constants", lambda]);
    for name in ["rel_u_cubed", "rel_norm_lambda"] {
        if status_in(&report, name).as_deref() != Some("fail") {
            problems.push(format!("λ := 1: {name} did not fail"));
        }
    }
    if code == 0 {
        problems.push("λ := 1: exit code 0".into());
    }

    let d = d_path.to_str().expect("utf-8 path");
    let (code, report) = cli(&["all", "--format", "json", "--trials", "10", "--constants", d]);
    if status_in(&report, "t_central").as_deref() != Some("fail") {
        problems.push("d := 1: t_central did not fail".into());
    }
    if code == 0 {
        problems.push("d := 1: exit code 0".into());
    }

    // Same controls through the library.
    let lambda_one = ConstantsOverride::load(&lambda_path).expect("valid override");
    let v = Verifier::new(settings(10), lambda_one.apply(&Constants::standard())).expect("valid settings");
    for r in run_checks(&v, &["rel_u_cubed", "rel_norm_lambda"]) {
        if r.status != Status::Fail {
            problems.push(format!("library λ := 1: {} is {}", r.name, r.status.label()));
        }
    }

    let ok = problems.is_empty();
    outcome(
        ok,
        if ok {
            "λ := 1 fails rel_u_cubed and rel_norm_lambda; d := 1 fails t_central; both exit nonzero".into()
        } else {
            problems.join("; ")
        },
    )
}

fn full_run() -> Outcome {
    let start = Instant::now();
    let (code, report) = cli(&["all"]);
    let elapsed = start.elapsed();
    let last = report.lines().last().unwrap_or("").to_string();
    outcome(
        code == 0 && elapsed < Duration::from_secs(60),
        format!("exit {code} in {:.1} s; {last}", elapsed.as_secs_f64()),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 6] = [
        ("exact identity suite", exact_identity_suite),
        ("residue suite", residue_suite),
        ("root-of-unity predicates", root_of_unity_predicates),
        ("property suites", property_suites),
        ("negative controls", negative_controls),
        ("full run under 60 s", full_run),
    ];
    let mut all_ok = true;
    for (i, (title, criterion)) in criteria.iter().enumerate() {
        let o = criterion();
        all_ok &= o.ok;
        println!(
            "{} criterion {}: {title}: {}",
            if o.ok { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
