//! Executable identity checks and the suite runner.
//!
//! Every check compares two independently assembled sides exactly in
//! Q[λ] (or Q[λ][x]), so a pass certifies the instance for all λ. The only
//! exception is `thm3num`, which sums a numeric series at a concrete λ
//! against a certified tail bound.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::Value;

use crate::elementary::degen_log1m;
use crate::error::{Error, Result};
use crate::factorial::{degen_falling_at, gen_binomial};
use crate::harmonic::{degen_harmonic_table, degen_hyperharmonic, harmonic_gf};
use crate::operator::{euler_operator_check_in, two_series_check_in};
use crate::poly::{LambdaPoly, XPoly};
use crate::polynomials::{poly_by_gf, poly_by_sum_in, rfubini_number, PolyFamily, PolyKind};
use crate::render::Canonical;
use crate::report::{CheckReport, ReportBuilder};
use crate::ring::{binomial, factorial, frac, int, Rational, Ring};
use crate::series::{exp_series, geometric, inverse_power_of_one_minus, TruncSeries};
use crate::stirling::{
    triangle_by_basis, triangle_by_gf, triangle_by_recurrence, StirlingCache, StirlingFamily,
    StirlingKind,
};

type Series = TruncSeries<LambdaPoly>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckId {
    Cor7,
    Stirling,
    Thm1,
    Thm2,
    Thm3,
    Thm3Num,
    Thm4,
    Thm5,
    Thm6,
    Thm8,
}

impl CheckId {
    /// All checks, sorted by id.
    pub const ALL: [CheckId; 10] = [
        CheckId::Cor7,
        CheckId::Stirling,
        CheckId::Thm1,
        CheckId::Thm2,
        CheckId::Thm3,
        CheckId::Thm3Num,
        CheckId::Thm4,
        CheckId::Thm5,
        CheckId::Thm6,
        CheckId::Thm8,
    ];

    pub fn id(self) -> &'static str {
        match self {
            CheckId::Cor7 => "cor7",
            CheckId::Stirling => "stirling",
            CheckId::Thm1 => "thm1",
            CheckId::Thm2 => "thm2",
            CheckId::Thm3 => "thm3",
            CheckId::Thm3Num => "thm3num",
            CheckId::Thm4 => "thm4",
            CheckId::Thm5 => "thm5",
            CheckId::Thm6 => "thm6",
            CheckId::Thm8 => "thm8",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| Error::UnknownCheck {
                id: s.to_string(),
                valid: CheckId::ALL.map(CheckId::id).join(", "),
            })
    }
}

/// Parses `"all"` or a comma-separated list of check ids. The result is
/// sorted and deduplicated; an empty string selects nothing.
pub fn parse_selection(s: &str) -> Result<Vec<CheckId>> {
    let mut ids = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if part == "all" {
            ids.extend(CheckId::ALL);
        } else {
            ids.push(part.parse()?);
        }
    }
    ids.sort();
    ids.dedup();
    Ok(ids)
}

/// Overrides for the default parameter grids. `nmax` bounds each check's
/// primary index (`n`, `m`, `k`, or the random polynomial degree for
/// `thm2`), `rmax` bounds `r`, `order` sets the series order, `samples`
/// the number of random polynomials for `thm2`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Bounds {
    pub nmax: Option<usize>,
    pub rmax: Option<usize>,
    pub order: Option<usize>,
    pub samples: Option<usize>,
}

// ---------------------------------------------------------------------------
// Individual checks

/// `(1/(1-x)) F^{(r)}_{m,λ}(x/(1-x)) = Σ_n (n+r)_{m,λ} x^n`
pub fn check_thm3_in(cache: &StirlingCache, m: usize, r: usize, order: usize) -> CheckReport {
    let mut rep = ReportBuilder::new("thm3")
        .param("m", m)
        .param("r", r)
        .param("order", order);
    let fub = poly_by_sum_in(cache, PolyFamily::with_r(PolyKind::RFubiniDegenerate, r), m);
    let geo = geometric::<LambdaPoly>(order);
    let s = geo.shift(1);
    let lhs = Series::from_poly(&fub, order)
        .compose(&s)
        .and_then(|v| v.mul(&geo))
        .expect("equal orders");
    let rhs = Series::from_fn(order, |n| degen_falling_at((n + r) as i64, m));
    rep.compare_series("series", &lhs, &rhs);
    rep.finish()
}

/// `F^{(r)}_{m,λ}(1) = Σ_n (n+r)_{m,λ} 2^{-(n+1)}` at a concrete λ, with a
/// certified tail below `10^{-tol_exponent}`.
pub fn check_thm3_numeric_in(
    cache: &StirlingCache,
    m: usize,
    r: usize,
    lambda: &Rational,
    tol_exponent: u32,
) -> CheckReport {
    let mut rep = ReportBuilder::new("thm3num")
        .param("m", m)
        .param("r", r)
        .param("lambda", lambda.to_string())
        .param("tol_exponent", tol_exponent);
    let fub = poly_by_sum_in(cache, PolyFamily::with_r(PolyKind::RFubiniDegenerate, r), m);
    let exact = fub.at_lambda(lambda).eval(&Rational::one());
    let sum = rfubini_number(m, r, lambda, tol_exponent);
    let within = (&sum.value - &exact).abs() <= sum.tail_bound;
    let tol = Rational::one() / Rational::from_integer(num_bigint::BigInt::from(10).pow(tol_exponent));
    if !within || sum.tail_bound >= tol {
        rep.compare(
            &format!("partial sum of {} terms, tail bound {}", sum.terms, sum.tail_bound),
            &sum.value,
            &exact,
        );
    }
    rep.finish()
}

/// `x F'_{n,λ} + x (x F_{n,λ})' - nλ F_{n,λ} = F_{n+1,λ}`
pub fn check_thm4_in(cache: &StirlingCache, n: usize) -> CheckReport {
    let mut rep = ReportBuilder::new("thm4").param("n", n);
    let fam = PolyFamily::plain(PolyKind::FubiniDegenerate);
    let f = poly_by_sum_in(cache, fam, n);
    let x = XPoly::var();
    let nl = XPoly::constant(LambdaPoly::var().scale(&int(n as i64)));
    let lhs = &(&(&x * &f.derivative()) + &(&x * &(&x * &f).derivative())) - &(&nl * &f);
    let rhs = poly_by_gf(fam, n + 1, n + 1).expect("order = n + 1");
    rep.compare_xpoly("polynomial", &lhs, &rhs);
    rep.finish()
}

/// `n! H^{(r)}_{n,λ} = [n+r, r+1]_{r,λ}` together with
/// `n! H_{n,λ} = 2λ [n+1, 3]_{1,λ} + [n+1, 2]_λ = [n+1, 2]_{1,λ}`.
pub fn check_thm5_in(cache: &StirlingCache, n: usize, r: usize) -> CheckReport {
    let mut rep = ReportBuilder::new("thm5").param("n", n).param("r", r);
    let s1ru = |r: usize, n: usize, k: usize| {
        cache.get(StirlingFamily::with_r(StirlingKind::S1rUnsignedDegenerate, r), n, k)
    };
    let nf = factorial(n);
    let hyper = degen_hyperharmonic(n, r).expect("r >= 1").scale(&nf);
    rep.compare("n! H^(r)_n vs [n+r, r+1]_r", &hyper, &s1ru(r, n, 1));

    let harmonic = degen_harmonic_table(n)[n].scale(&nf);
    let unsigned = cache.get(StirlingFamily::plain(StirlingKind::S1UnsignedDegenerate), n + 1, 2);
    let two_lambda = LambdaPoly::var().scale(&int(2));
    let combo = &(&two_lambda * &s1ru(1, n, 2)) + &unsigned;
    rep.compare("n! H_n vs 2λ[n+1, 3]_1 + [n+1, 2]", &harmonic, &combo);
    rep.compare("[n+1, 2]_1 vs 2λ[n+1, 3]_1 + [n+1, 2]", &s1ru(1, n, 1), &combo);
    rep.finish()
}

/// `g^{(k)}(t) = k!/(1-t)^{k+1} (H_{k,λ} - C(k-λ, k) log_λ(1-t))` for
/// `g = -log_λ(1-t)/(1-t)`, and `g^{(k)}(0) = k! H_{k,λ}`.
pub fn check_thm6(k: usize, order: usize) -> CheckReport {
    let mut rep = ReportBuilder::new("thm6").param("k", k).param("order", order);
    let g = harmonic_gf(1, order + k).expect("r = 1");
    let lhs = g.derive_n(k).expect("order + k >= k");
    let h_k = degen_harmonic_table(k)[k].clone();
    let top = &LambdaPoly::from_int(k as i64) - &LambdaPoly::var();
    let bracket = degen_log1m(order)
        .scale_by(&-gen_binomial(&top, k))
        .add(&Series::constant(h_k.clone(), order))
        .expect("equal orders");
    let rhs = inverse_power_of_one_minus::<LambdaPoly>(k + 1, order)
        .mul(&bracket)
        .expect("equal orders")
        .scale(&factorial(k));
    rep.compare_series("derivative", &lhs, &rhs);
    rep.compare("value at 0", lhs.coeff(0), &h_k.scale(&factorial(k)));
    rep.finish()
}

/// `C(k-λ, k) H^{(k+1)}_{n,λ} = C(n+k, k) (H_{n+k,λ} - H_{k,λ})`
pub fn check_cor7(n: usize, k: usize) -> CheckReport {
    let mut rep = ReportBuilder::new("cor7").param("n", n).param("k", k);
    let top = &LambdaPoly::from_int(k as i64) - &LambdaPoly::var();
    let lhs = &gen_binomial(&top, k) * &degen_hyperharmonic(n, k + 1).expect("k + 1 >= 1");
    let h = degen_harmonic_table(n + k);
    let rhs = (&h[n + k] - &h[k]).scale(&binomial(n + k, k));
    rep.compare("value", &lhs, &rhs);
    rep.finish()
}

/// `Σ_n H_{n,λ} (n+r)_{m,λ} x^n =
///  (1/(1-x)) Σ_k {m+r, k+r}_{r,λ} k! (x/(1-x))^k (H_{k,λ} - C(k-λ,k) log_λ(1-x))`
pub fn check_thm8_in(cache: &StirlingCache, m: usize, r: usize, order: usize) -> CheckReport {
    let mut rep = ReportBuilder::new("thm8")
        .param("m", m)
        .param("r", r)
        .param("order", order);
    let h = degen_harmonic_table(order.max(m));
    let lhs = Series::from_fn(order, |n| &h[n] * &degen_falling_at((n + r) as i64, m));

    let geo = geometric::<LambdaPoly>(order);
    let s = geo.shift(1);
    let log = degen_log1m(order);
    let fam = StirlingFamily::with_r(StirlingKind::S2rDegenerate, r);
    let mut sum = Series::zero(order);
    let mut s_pow = Series::one(order);
    for k in 0..=m {
        let c = cache.get(fam, m, k).scale(&factorial(k));
        if !c.is_zero() {
            let top = &LambdaPoly::from_int(k as i64) - &LambdaPoly::var();
            let bracket = log
                .scale_by(&-gen_binomial(&top, k))
                .add(&Series::constant(h[k].clone(), order))
                .expect("equal orders");
            let term = s_pow.mul(&bracket).expect("equal orders").scale_by(&c);
            sum = sum.add(&term).expect("equal orders");
        }
        s_pow = s_pow.mul(&s).expect("equal orders");
    }
    let rhs = geo.mul(&sum).expect("equal orders");
    rep.compare_series("series", &lhs, &rhs);
    rep.finish()
}

/// The cached triangle of `family` against fresh basis-conversion, GF
/// extraction and (where one exists) recurrence triangles. For
/// `S2-degenerate` the two-sided inverse relation with `S1-degenerate`
/// is checked as well.
pub fn check_stirling_in(cache: &StirlingCache, family: StirlingFamily, nmax: usize) -> CheckReport {
    let mut rep = ReportBuilder::new("stirling")
        .param("family", family.kind().id())
        .param("r", family.r())
        .param("nmax", nmax);
    let cached = cache.triangle(family, nmax).truncated(nmax);
    let mut routes = vec![("basis", triangle_by_basis(family, nmax)), ("gf", triangle_by_gf(family, nmax))];
    if let Some(t) = triangle_by_recurrence(family, nmax) {
        routes.push(("recurrence", t));
    }
    for (name, t) in &routes {
        if let Some((n, k)) = cached.first_difference(t) {
            rep.compare(&format!("cached vs {name} at (n={n}, k={k})"), &cached.get(n, k), &t.get(n, k));
        }
    }
    if family == StirlingFamily::plain(StirlingKind::S2Degenerate) {
        let s1 = cache.triangle(StirlingFamily::plain(StirlingKind::S1Degenerate), nmax);
        for n in 0..=nmax {
            for k in 0..=n {
                let want = if n == k { LambdaPoly::one() } else { LambdaPoly::zero() };
                let ab = (k..=n).fold(LambdaPoly::zero(), |acc, j| &acc + &(&s1.get(n, j) * &cached.get(j, k)));
                let ba = (k..=n).fold(LambdaPoly::zero(), |acc, j| &acc + &(&cached.get(n, j) * &s1.get(j, k)));
                rep.compare(&format!("S1·S2 at ({n}, {k})"), &ab, &want);
                rep.compare(&format!("S2·S1 at ({n}, {k})"), &ba, &want);
            }
        }
    }
    rep.finish()
}

// ---------------------------------------------------------------------------
// Suite

/// Test series `g` for the two-series identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestSeries {
    Geometric,
    Exp,
    HarmonicGf,
}

impl TestSeries {
    pub const ALL: [TestSeries; 3] = [TestSeries::Geometric, TestSeries::Exp, TestSeries::HarmonicGf];

    pub fn name(self) -> &'static str {
        match self {
            TestSeries::Geometric => "1/(1-x)",
            TestSeries::Exp => "exp(x)",
            TestSeries::HarmonicGf => "-log_l(1-x)/(1-x)",
        }
    }

    pub fn series(self, order: usize) -> Series {
        match self {
            TestSeries::Geometric => geometric(order),
            TestSeries::Exp => exp_series(order),
            TestSeries::HarmonicGf => harmonic_gf(1, order).expect("r = 1"),
        }
    }
}

/// Seeded random polynomials with small rational coefficients.
pub fn random_polys(seed: u64, count: usize, max_degree: usize) -> Vec<XPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let deg = rng.gen_range(0..=max_degree);
            XPoly::new(
                (0..=deg)
                    .map(|_| {
                        let p: i64 = rng.gen_range(-9..=9);
                        let q: i64 = rng.gen_range(1..=6);
                        LambdaPoly::constant(frac(p, q))
                    })
                    .collect(),
            )
        })
        .collect()
}

/// λ values for the numeric r-Fubini probes.
pub fn numeric_lambdas() -> [Rational; 2] {
    [frac(1, 3), frac(1, 2)]
}

pub const NUMERIC_TOL_EXPONENT: u32 = 12;

type Task<'a> = Box<dyn Fn() -> CheckReport + Send + Sync + 'a>;

fn tasks_for<'a>(cache: &'a StirlingCache, id: CheckId, b: &Bounds, seed: u64) -> Vec<Task<'a>> {
    let mut out: Vec<Task<'a>> = Vec::new();
    match id {
        CheckId::Thm1 => {
            let (nmax, rmax) = (b.nmax.unwrap_or(8), b.rmax.unwrap_or(4));
            for m in 0..=nmax {
                for r in 0..=m.min(rmax) {
                    out.push(Box::new(move || euler_operator_check_in(cache, m, r, 10)));
                }
            }
        }
        CheckId::Thm2 => {
            let (deg, rmax) = (b.nmax.unwrap_or(6), b.rmax.unwrap_or(3));
            let order = b.order.unwrap_or(16);
            let samples = b.samples.unwrap_or(100);
            let polys = random_polys(seed, samples, deg);
            for (i, f) in polys.into_iter().enumerate() {
                for g in TestSeries::ALL {
                    let gs = g.series(order + deg);
                    for r in 0..=rmax {
                        let f = f.clone();
                        let gs = gs.clone();
                        out.push(Box::new(move || {
                            let rep = ReportBuilder::new("thm2")
                                .param("sample", i)
                                .param("f", f.to_json())
                                .param("g", g.name())
                                .param("r", r)
                                .param("order", order)
                                .param("seed", seed);
                            two_series_check_in(cache, rep, &f, &gs, r, order)
                                .expect("g padded to order + deg f")
                        }));
                    }
                }
            }
        }
        CheckId::Thm3 => {
            let (nmax, rmax, order) = (b.nmax.unwrap_or(8), b.rmax.unwrap_or(3), b.order.unwrap_or(20));
            for m in 0..=nmax {
                for r in 0..=rmax {
                    out.push(Box::new(move || check_thm3_in(cache, m, r, order.max(m))));
                }
            }
        }
        CheckId::Thm3Num => {
            let (nmax, rmax) = (b.nmax.unwrap_or(4), b.rmax.unwrap_or(2));
            for lambda in numeric_lambdas() {
                for m in 0..=nmax {
                    for r in 0..=rmax {
                        let lambda = lambda.clone();
                        out.push(Box::new(move || {
                            check_thm3_numeric_in(cache, m, r, &lambda, NUMERIC_TOL_EXPONENT)
                        }));
                    }
                }
            }
        }
        CheckId::Thm4 => {
            for n in 0..=b.nmax.unwrap_or(15) {
                out.push(Box::new(move || check_thm4_in(cache, n)));
            }
        }
        CheckId::Thm5 => {
            for n in 1..=b.nmax.unwrap_or(12) {
                for r in 1..=b.rmax.unwrap_or(4) {
                    out.push(Box::new(move || check_thm5_in(cache, n, r)));
                }
            }
        }
        CheckId::Thm6 => {
            let order = b.order.unwrap_or(16);
            for k in 1..=b.nmax.unwrap_or(8) {
                out.push(Box::new(move || check_thm6(k, order)));
            }
        }
        CheckId::Cor7 => {
            let nmax = b.nmax.unwrap_or(10);
            for n in 1..=nmax {
                for k in 1..=nmax {
                    out.push(Box::new(move || check_cor7(n, k)));
                }
            }
        }
        CheckId::Thm8 => {
            let (nmax, rmax, order) = (b.nmax.unwrap_or(6), b.rmax.unwrap_or(3), b.order.unwrap_or(16));
            for m in 0..=nmax {
                for r in 0..=rmax {
                    out.push(Box::new(move || check_thm8_in(cache, m, r, order)));
                }
            }
        }
        CheckId::Stirling => {
            let (nmax, rmax) = (b.nmax.unwrap_or(12), b.rmax.unwrap_or(4));
            for kind in StirlingKind::ALL {
                let rs = if kind.has_r() { rmax } else { 0 };
                for r in 0..=rs {
                    let fam = StirlingFamily::with_r(kind, r);
                    out.push(Box::new(move || check_stirling_in(cache, fam, nmax)));
                }
            }
        }
    }
    out
}

/// Runs the selected checks over their grids, reading Stirling numbers
/// from `cache`. Reports are ordered by check id, then by parameters in
/// grid order, independently of how the work is scheduled.
pub fn run_suite_in(
    cache: &StirlingCache,
    selection: &[CheckId],
    bounds: &Bounds,
    seed: u64,
) -> Vec<CheckReport> {
    let mut ids = selection.to_vec();
    ids.sort();
    ids.dedup();
    let tasks: Vec<Task<'_>> = ids
        .into_iter()
        .flat_map(|id| tasks_for(cache, id, bounds, seed))
        .collect();
    tasks.par_iter().map(|t| t()).collect()
}

pub fn run_suite(selection: &[CheckId], bounds: &Bounds, seed: u64) -> Vec<CheckReport> {
    run_suite_in(StirlingCache::global(), selection, bounds, seed)
}

/// `(total, passed)`
pub fn summarize(reports: &[CheckReport]) -> (usize, usize) {
    (reports.len(), reports.iter().filter(|r| r.passed).count())
}

/// Serializes reports as a JSON array.
pub fn reports_to_json(reports: &[CheckReport]) -> Value {
    serde_json::to_value(reports).expect("reports serialize")
}

pub fn check_thm3(m: usize, r: usize, order: usize) -> CheckReport {
    check_thm3_in(StirlingCache::global(), m, r, order)
}

pub fn check_thm4(n: usize) -> CheckReport {
    check_thm4_in(StirlingCache::global(), n)
}

pub fn check_thm5(n: usize, r: usize) -> CheckReport {
    check_thm5_in(StirlingCache::global(), n, r)
}

pub fn check_thm8(m: usize, r: usize, order: usize) -> CheckReport {
    check_thm8_in(StirlingCache::global(), m, r, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stirling::Fault;

    #[test]
    fn selection_parsing() {
        assert_eq!(parse_selection("thm5,thm4,thm5").unwrap(), vec![CheckId::Thm4, CheckId::Thm5]);
        assert_eq!(parse_selection("all").unwrap().len(), CheckId::ALL.len());
        assert!(parse_selection("").unwrap().is_empty());
        let err = parse_selection("nosuch").unwrap_err();
        assert!(err.to_string().contains("thm4"));
    }

    #[test]
    fn small_instances() {
        assert!(check_thm3(0, 2, 6).passed);
        assert!(check_thm3(1, 0, 6).passed);
        assert!(check_thm4(0).passed);
        assert!(check_thm4(1).passed);
        assert!(check_thm5(1, 3).passed);
        assert!(check_thm5(2, 1).passed);
        assert!(check_thm6(1, 4).passed);
        assert!(check_thm6(2, 4).passed);
        assert!(check_cor7(1, 1).passed);
        assert!(check_cor7(2, 1).passed);
        assert!(check_thm8(0, 0, 6).passed);
        assert!(check_thm8(1, 0, 6).passed);
    }

    #[test]
    fn suite_counts() {
        let b = Bounds { nmax: Some(3), ..Bounds::default() };
        let reps = run_suite(&[CheckId::Thm4], &b, 0);
        assert_eq!(reps.len(), 4);
        assert!(reps.iter().all(|r| r.passed));
        assert!(run_suite(&[], &Bounds::default(), 0).is_empty());
    }

    #[test]
    fn injected_fault_is_localized() {
        let fam = StirlingFamily::with_r(StirlingKind::S2rDegenerate, 1);
        let cache = StirlingCache::with_faults(vec![Fault { family: fam, n: 3, k: 1, delta: int(1) }]);
        let b = Bounds { nmax: Some(4), rmax: Some(1), order: Some(8), samples: Some(3) };
        let reps = run_suite_in(&cache, &[CheckId::Thm3, CheckId::Stirling], &b, 1);
        let bad: Vec<_> = reps.iter().filter(|r| !r.passed).collect();
        assert!(bad.iter().any(|r| r.check == "thm3"));
        let st = bad.iter().find(|r| r.check == "stirling").unwrap();
        assert!(st.counterexample.as_ref().unwrap().location.contains("(n=3, k=1)"));
    }

    #[test]
    fn deterministic_reports() {
        let b = Bounds { nmax: Some(3), rmax: Some(1), order: Some(6), samples: Some(4) };
        let a = reports_to_json(&run_suite(&CheckId::ALL, &b, 7));
        let c = reports_to_json(&run_suite(&CheckId::ALL, &b, 7));
        assert_eq!(a.to_string(), c.to_string());
    }
}
