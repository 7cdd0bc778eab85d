//! Acceptance gate: one PASS/FAIL line per criterion, with timings against
//! the stated limits. Runs without the libtest harness so the lines are
//! always printed.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use degen_core::identities::{parse_selection, run_suite_in, Bounds};
use degen_core::stirling::StirlingCache;
use serde_json::Value;

struct Outcome {
    passed: bool,
    detail: String,
}

fn suite(ids: &str, expected: usize) -> Outcome {
    let sel = parse_selection(ids).expect("known ids");
    let reps = run_suite_in(&StirlingCache::new(), &sel, &Bounds::default(), 0);
    let failed: Vec<_> = reps.iter().filter(|r| !r.passed).collect();
    let mut detail = format!("{} reports", reps.len());
    if let Some(f) = failed.first() {
        let c = f.counterexample.as_ref().unwrap();
        detail += &format!(", {} failed; first: {} {:?} at {}", failed.len(), f.check, f.params, c.location);
    }
    if reps.len() != expected {
        detail += &format!(", expected {expected} reports");
    }
    Outcome { passed: failed.is_empty() && reps.len() == expected, detail }
}

fn from_result(r: Result<String, String>) -> Outcome {
    match r {
        Ok(detail) => Outcome { passed: true, detail },
        Err(detail) => Outcome { passed: false, detail },
    }
}

fn degen(args: &[&str]) -> Result<(i32, Value), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_degen"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    let code = out.status.code().unwrap_or(-1);
    let v = if out.stdout.is_empty() {
        Value::Null
    } else {
        serde_json::from_slice(&out.stdout).map_err(|e| format!("{args:?}: output is not JSON: {e}"))?
    };
    Ok((code, v))
}

fn report_schema_ok(r: &Value) -> bool {
    let cx = &r["counterexample"];
    r["check"].is_string()
        && r["params"].is_object()
        && r["passed"].is_boolean()
        && (cx.is_null() || (cx["location"].is_string() && !cx["lhs"].is_null() && !cx["rhs"].is_null()))
        && (r["passed"] == true) == cx.is_null()
}

fn cli_contract() -> Result<String, String> {
    use degen_core::render::Canonical;
    use degen_core::{LambdaPoly, TruncSeries, XPoly};

    let want = |code: i32, args: &[&str]| -> Result<Value, String> {
        let (c, v) = degen(args)?;
        if c == code {
            Ok(v)
        } else {
            Err(format!("{args:?} exited {c}, expected {code}"))
        }
    };
    let t = want(0, &["table", "stirling2d", "--nmax", "8"])?;
    for row in t["rows"].as_array().ok_or("table without rows")? {
        for cell in row.as_array().ok_or("row is not an array")? {
            LambdaPoly::from_json(cell).map_err(|e| e.to_string())?;
        }
    }
    let s = want(0, &["series", "degen-log", "--order", "8"])?;
    TruncSeries::<LambdaPoly>::from_json(&s).map_err(|e| e.to_string())?;
    let s = want(0, &["series", "rfubini-d", "--r", "2", "--order", "6"])?;
    TruncSeries::<XPoly>::from_json(&s).map_err(|e| e.to_string())?;
    want(0, &["eval", "fubini-d", "--n", "5", "--x", "1", "--lambda", "1/2"])?;
    want(2, &["verify", "--suite", "nosuch"])?;

    let all = want(0, &["verify", "--suite", "all"])?;
    let reps = all.as_array().ok_or("verify output is not an array")?;
    if !reps.iter().all(report_schema_ok) {
        return Err("a report does not match the report schema".into());
    }
    let faulty = want(1, &["verify", "--suite", "all", "--inject-fault", "stirling2r:1:5:2"])?;
    let caught = faulty
        .as_array()
        .ok_or("verify output is not an array")?
        .iter()
        .filter(|r| r["passed"] == false)
        .count();
    Ok(format!("{} reports on the clean build, {caught} failing under fault injection", reps.len()))
}

fn main() -> ExitCode {
    type Crit = (&'static str, u64, Box<dyn Fn() -> Outcome>);
    let criteria: Vec<Crit> = vec![
        ("thm1 operator identity, both forms", 10, Box::new(|| suite("thm1", 35))),
        ("thm2 random f x three g x r <= 3", 30, Box::new(|| suite("thm2", 1200))),
        ("thm3 coefficients and certified numeric sums", 20, Box::new(|| suite("thm3,thm3num", 36 + 30))),
        ("thm4 Fubini differential recurrence", 5, Box::new(|| suite("thm4", 16))),
        ("thm5 with the r = 1 splitting relation", 10, Box::new(|| suite("thm5", 48))),
        ("thm6 derivatives of the harmonic GF", 10, Box::new(|| suite("thm6", 8))),
        ("cor7 hyperharmonic closed form", 5, Box::new(|| suite("cor7", 100))),
        ("thm8 harmonic-weighted sums", 30, Box::new(|| suite("thm8", 28))),
        ("three-way Stirling agreement", 30, Box::new(|| suite("stirling", 20))),
        (
            "classical limit vs enumeration, n <= 7",
            20,
            Box::new(|| from_result(common::classical_limit_checks(7, 2).map(|n| format!("{n} comparisons")))),
        ),
        (
            "kernel laws",
            20,
            Box::new(|| {
                from_result(common::kernel_laws(200).and_then(|n| {
                    if n < 1000 {
                        Err(format!("only {n} cases"))
                    } else if !common::exp_log_inverse(16) {
                        Err("e_l(log_l(1 + t)) != 1 + t at order 16".into())
                    } else {
                        Ok(format!("{n} randomized cases, exp/log inverse at order 16"))
                    }
                }))
            }),
        ),
        ("CLI contract", 120, Box::new(|| from_result(cli_contract()))),
    ];

    let mut all = true;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = elapsed < Duration::from_secs(*limit);
        let ok = out.passed && in_time;
        all &= ok;
        println!(
            "{} {:>2}  {name}: {} ({:.2} s, limit {limit} s)",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            out.detail,
            elapsed.as_secs_f64(),
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
