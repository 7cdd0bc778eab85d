//! `degen`: tables, series and identity verification for degenerate
//! Stirling, Bell, Fubini and harmonic numbers over Q[λ].
//!
//! Exit status: 0 on success, 1 when an identity check fails, 2 on a
//! usage error.

mod names;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use degen_core::factorial::degen_falling;
use degen_core::identities::{parse_selection, reports_to_json, run_suite_in, summarize, Bounds};
use degen_core::polynomials::{gf_series, poly_by_sum_in, PolyFamily};
use degen_core::render::{ascii_lambda_poly, parse_rational, Canonical};
use degen_core::ring::{factorial, int, Ring};
use degen_core::stirling::{Fault, StirlingCache, StirlingFamily};
use degen_core::{elementary, harmonic, LambdaPoly, Rational, TruncSeries, XPoly};
use serde_json::{json, Value};

use names::Target;

/// Largest value `--cap` accepts.
const MAX_CAP: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Command {
    Table,
    Series,
    Verify,
    Eval,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "degen", version, about = "Exact degenerate special numbers over Q[λ]")]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Family or series name (same as --family)
    name: Option<String>,
    #[arg(long)]
    family: Option<String>,
    /// Comma-separated check ids, or `all`
    #[arg(long)]
    suite: Option<String>,
    #[arg(long)]
    nmax: Option<usize>,
    #[arg(long)]
    rmax: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    order: Option<usize>,
    /// Index for `eval` (defaults to --nmax)
    #[arg(long)]
    n: Option<usize>,
    /// Substitute λ = p/q
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Evaluate a polynomial family at x = p/q (`eval` only)
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random polynomials for thm2
    #[arg(long)]
    samples: Option<usize>,
    /// Upper limit for --nmax, --n and --order (at most 256)
    #[arg(long, default_value_t = 64)]
    cap: usize,
    /// FAMILY:R:N:K adds 1 to one cached Stirling entry
    #[arg(long, hide = true)]
    inject_fault: Vec<String>,
}

enum Failure {
    Usage(String),
    Identity,
}

type CmdResult = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Identity) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    if cli.cap > MAX_CAP {
        return Err(usage(format!("--cap may not exceed {MAX_CAP}")));
    }
    for (flag, v) in [("--nmax", cli.nmax), ("--n", cli.n), ("--order", cli.order)] {
        if let Some(v) = v {
            if v > cli.cap {
                return Err(usage(format!("{flag} {v} exceeds the cap of {}", cli.cap)));
            }
        }
    }
    if cli.name.is_some() && cli.family.is_some() {
        return Err(usage("give the family either positionally or with --family, not both"));
    }
    let lambda = cli
        .lambda
        .as_deref()
        .map(parse_rational)
        .transpose()
        .map_err(|e| usage(format!("--lambda: {e}")))?;
    let cache = fault_cache(&cli.inject_fault)?;
    let cache = cache.as_ref().unwrap_or_else(|| StirlingCache::global());
    match cli.command {
        Command::Table => table(cli, cache, lambda.as_ref()),
        Command::Series => series(cli, lambda.as_ref()),
        Command::Eval => eval(cli, cache, lambda.as_ref()),
        Command::Verify => verify(cli, cache, lambda.as_ref()),
    }
}

fn fault_cache(specs: &[String]) -> Result<Option<StirlingCache>, Failure> {
    if specs.is_empty() {
        return Ok(None);
    }
    let mut faults = Vec::new();
    for spec in specs {
        let parts: Vec<&str> = spec.split(':').collect();
        let bad = || usage(format!("--inject-fault expects FAMILY:R:N:K, got `{spec}`"));
        let [fam, r, n, k] = parts[..] else { return Err(bad()) };
        let Some(Target::Stirling(kind)) = names::target(fam) else { return Err(bad()) };
        let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
        let family = StirlingFamily::new(kind, num(r)?).map_err(|e| usage(e.to_string()))?;
        faults.push(Fault { family, n: num(n)?, k: num(k)?, delta: int(1) });
    }
    Ok(Some(StirlingCache::with_faults(faults)))
}

fn selected_name(cli: &Cli) -> Result<&str, Failure> {
    cli.name
        .as_deref()
        .or(cli.family.as_deref())
        .ok_or_else(|| usage("missing family name"))
}

fn resolve(name: &str) -> Result<Target, Failure> {
    names::target(name)
        .ok_or_else(|| usage(format!("unknown family `{name}`; known: {}", names::target_names())))
}

fn stirling_family(kind: degen_core::stirling::StirlingKind, r: Option<usize>) -> Result<StirlingFamily, Failure> {
    StirlingFamily::new(kind, r.unwrap_or(0)).map_err(|e| usage(e.to_string()))
}

fn poly_family(kind: degen_core::polynomials::PolyKind, r: Option<usize>) -> Result<PolyFamily, Failure> {
    PolyFamily::new(kind, r.unwrap_or(0)).map_err(|e| usage(e.to_string()))
}

fn hyper_r(target: Target, r: Option<usize>) -> Result<usize, Failure> {
    match (target, r) {
        (Target::Harmonic, None | Some(0)) => Ok(1),
        (Target::Harmonic, Some(r)) => Err(usage(format!("harmonic takes no r (got {r}); use hyperharmonic"))),
        (_, None) => Ok(1),
        (_, Some(0)) => Err(usage("hyperharmonic needs r >= 1")),
        (_, Some(r)) => Ok(r),
    }
}

fn padded(p: &XPoly, len: usize) -> Vec<LambdaPoly> {
    (0..len).map(|k| p.coeff(k)).collect()
}

fn family_label(target: Target) -> &'static str {
    match target {
        Target::Stirling(k) => k.id(),
        Target::Poly(k) => k.id(),
        Target::Harmonic => "harmonic",
        Target::Hyperharmonic => "hyperharmonic",
    }
}

/// Rows of cells: row `n` of a triangle, the `x`-coefficients of the
/// `n`th polynomial, or the single value of a sequence.
fn table_rows(target: Target, r: Option<usize>, nmax: usize, cache: &StirlingCache) -> Result<(usize, Vec<Vec<LambdaPoly>>), Failure> {
    Ok(match target {
        Target::Stirling(kind) => {
            let fam = stirling_family(kind, r)?;
            (fam.r(), cache.triangle(fam, nmax).rows()[..=nmax].to_vec())
        }
        Target::Poly(kind) => {
            let fam = poly_family(kind, r)?;
            let rows = (0..=nmax).map(|n| padded(&poly_by_sum_in(cache, fam, n), n + 1)).collect();
            (fam.r(), rows)
        }
        Target::Harmonic | Target::Hyperharmonic => {
            let r = hyper_r(target, r)?;
            let values = harmonic::degen_hyperharmonic_table(nmax, r).expect("r >= 1");
            let r = if target == Target::Harmonic { 0 } else { r };
            (r, values.into_iter().map(|v| vec![v]).collect())
        }
    })
}

fn cell_json(c: &LambdaPoly, lambda: Option<&Rational>) -> Value {
    match lambda {
        Some(q) => c.at_lambda(q).to_json(),
        None => c.to_json(),
    }
}

fn cell_text(c: &LambdaPoly, lambda: Option<&Rational>) -> String {
    match lambda {
        Some(q) => c.at_lambda(q).to_string(),
        None => ascii_lambda_poly(c),
    }
}

fn lambda_json(lambda: Option<&Rational>) -> Value {
    lambda.map_or(Value::Null, |q| q.to_json())
}

fn emit_json(v: &Value) -> CmdResult {
    let mut out = io::stdout().lock();
    writeln!(out, "{v}").map_err(|e| usage(e.to_string()))
}

fn emit_csv(rows: &[Vec<LambdaPoly>], lambda: Option<&Rational>) -> CmdResult {
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .has_headers(false)
        .from_writer(io::stdout().lock());
    for row in rows {
        w.write_record(row.iter().map(|c| cell_text(c, lambda)))
            .map_err(|e| usage(e.to_string()))?;
    }
    w.flush().map_err(|e| usage(e.to_string()))
}

fn table(cli: &Cli, cache: &StirlingCache, lambda: Option<&Rational>) -> CmdResult {
    let target = resolve(selected_name(cli)?)?;
    let nmax = cli.nmax.unwrap_or(10);
    let (r, rows) = table_rows(target, cli.r, nmax, cache)?;
    match cli.format {
        Format::Csv => emit_csv(&rows, lambda),
        Format::Json => emit_json(&json!({
            "family": family_label(target),
            "r": r,
            "nmax": nmax,
            "lambda": lambda_json(lambda),
            "rows": rows.iter()
                .map(|row| row.iter().map(|c| cell_json(c, lambda)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })),
    }
}

enum AnySeries {
    Scalar(TruncSeries<LambdaPoly>),
    Nested(TruncSeries<XPoly>),
}

fn named_series(name: &str, r: Option<usize>, order: usize) -> Result<AnySeries, Failure> {
    let no_r = |s: AnySeries| match r {
        None | Some(0) => Ok(s),
        Some(r) => Err(usage(format!("series `{name}` takes no r (got {r})"))),
    };
    match name {
        "degen-exp" => no_r(AnySeries::Scalar(elementary::degen_exp_pow(1, order))),
        "degen-exp-x" => no_r(AnySeries::Nested(TruncSeries::from_fn(order, |n| {
            degen_falling(&XPoly::var(), n).scale(&factorial(n).recip())
        }))),
        "degen-log" => no_r(AnySeries::Scalar(elementary::degen_log1p(order))),
        "degen-log1m" => no_r(AnySeries::Scalar(elementary::degen_log1m(order))),
        "harmonic-gf" => no_r(AnySeries::Scalar(harmonic::harmonic_gf(1, order).expect("r = 1"))),
        "hyperharmonic-gf" => {
            let r = hyper_r(Target::Hyperharmonic, r)?;
            Ok(AnySeries::Scalar(harmonic::harmonic_gf(r, order).expect("r >= 1")))
        }
        _ => match names::target(name) {
            Some(Target::Poly(kind)) => Ok(AnySeries::Nested(gf_series(poly_family(kind, r)?, order))),
            _ => Err(usage(format!(
                "unknown series `{name}`; known: {}, or a polynomial family name",
                names::SERIES.join(", ")
            ))),
        },
    }
}

fn series(cli: &Cli, lambda: Option<&Rational>) -> CmdResult {
    let name = selected_name(cli)?;
    let order = cli.order.unwrap_or(10);
    let s = named_series(name, cli.r, order)?;
    match cli.format {
        Format::Json => emit_json(&match (&s, lambda) {
            (AnySeries::Scalar(s), None) => s.to_json(),
            (AnySeries::Scalar(s), Some(q)) => s.map(|c| c.at_lambda(q)).to_json(),
            (AnySeries::Nested(s), None) => s.to_json(),
            (AnySeries::Nested(s), Some(q)) => s.map(|c| c.at_lambda(q)).to_json(),
        }),
        Format::Csv => {
            let rows: Vec<Vec<LambdaPoly>> = match &s {
                AnySeries::Scalar(s) => s.coeffs().iter().map(|c| vec![c.clone()]).collect(),
                AnySeries::Nested(s) => s.coeffs().iter().map(|c| c.coeffs().to_vec()).collect(),
            };
            emit_csv(&rows, lambda)
        }
    }
}

fn eval(cli: &Cli, cache: &StirlingCache, lambda: Option<&Rational>) -> CmdResult {
    let target = resolve(selected_name(cli)?)?;
    let n = cli.n.or(cli.nmax).ok_or_else(|| usage("eval needs --n (or --nmax)"))?;
    let x = cli
        .x
        .as_deref()
        .map(parse_rational)
        .transpose()
        .map_err(|e| usage(format!("--x: {e}")))?;
    let (r, value): (usize, Vec<LambdaPoly>) = match target {
        Target::Poly(kind) => {
            let fam = poly_family(kind, cli.r)?;
            let p = poly_by_sum_in(cache, fam, n);
            let cells = match &x {
                Some(x) => vec![p.eval(&LambdaPoly::constant(x.clone()))],
                None => padded(&p, n + 1),
            };
            (fam.r(), cells)
        }
        _ if x.is_some() => return Err(usage("--x applies to polynomial families only")),
        _ => {
            let (r, mut rows) = table_rows(target, cli.r, n, cache)?;
            (r, rows.swap_remove(n))
        }
    };
    let scalar = !matches!(target, Target::Stirling(_)) && (x.is_some() || !matches!(target, Target::Poly(_)));
    match cli.format {
        Format::Csv => emit_csv(&[value], lambda),
        Format::Json => {
            let v = if scalar {
                cell_json(&value[0], lambda)
            } else {
                Value::Array(value.iter().map(|c| cell_json(c, lambda)).collect())
            };
            emit_json(&json!({
                "family": family_label(target),
                "r": r,
                "n": n,
                "lambda": lambda_json(lambda),
                "x": x.as_ref().map_or(Value::Null, |x| x.to_json()),
                "value": v,
            }))
        }
    }
}

fn verify(cli: &Cli, cache: &StirlingCache, lambda: Option<&Rational>) -> CmdResult {
    if lambda.is_some() {
        return Err(usage("verify works in Q[λ]; --lambda does not apply"));
    }
    if cli.format == Format::Csv {
        return Err(usage("verify writes JSON only"));
    }
    let selection = parse_selection(cli.suite.as_deref().unwrap_or("all")).map_err(|e| usage(e.to_string()))?;
    let bounds = Bounds {
        nmax: cli.nmax,
        rmax: cli.rmax,
        order: cli.order,
        samples: cli.samples,
    };
    let reports = run_suite_in(cache, &selection, &bounds, cli.seed);
    emit_json(&reports_to_json(&reports))?;
    let (total, passed) = summarize(&reports);
    eprintln!("verify: {passed}/{total} checks passed");
    if passed == total {
        Ok(())
    } else {
        Err(Failure::Identity)
    }
}
