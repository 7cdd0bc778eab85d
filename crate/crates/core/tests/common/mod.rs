//! Shared test oracles: brute-force combinatorial counts for the λ = 0
//! limit, random generators for kernel laws.

#![allow(dead_code)]

use degen_core::factorial::{from_basis, to_basis, BasisId};
use degen_core::elementary::{degen_exp_pow, degen_log1p};
use degen_core::harmonic::{classical_harmonic, degen_harmonic, degen_hyperharmonic};
use degen_core::polynomials::{poly_by_sum, PolyFamily, PolyKind};
use degen_core::ring::{factorial, frac, int};
use degen_core::stirling::{triangle, StirlingFamily, StirlingKind};
use degen_core::{LambdaPoly, Poly, Rational, TruncSeries, XPoly};
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

// ---------------------------------------------------------------------------
// Brute-force counts

/// `counts[n][k]`: set partitions of `{1..n+r}` into `k + r` blocks with the
/// first `r` elements in distinct blocks.
pub fn r_partition_counts(nmax: usize, r: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![0u64; nmax + 1]; nmax + 1];
    for (n, row) in out.iter_mut().enumerate() {
        // restricted growth strings with a_i = i for i < r
        fn walk(pos: usize, len: usize, blocks: usize, r: usize, row: &mut [u64]) {
            if pos == len {
                row[blocks - r] += 1;
                return;
            }
            for b in 0..=blocks {
                walk(pos + 1, len, blocks.max(b + 1), r, row);
            }
        }
        if n + r == 0 {
            row[0] = 1;
        } else if r == 0 {
            walk(0, n, 0, 0, row);
        } else {
            walk(r, n + r, r, r, row);
        }
    }
    out
}

/// `counts[n][k]`: surjections `{1..n} -> {1..k}` (ordered set partitions).
pub fn surjection_counts(nmax: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![0u64; nmax + 1]; nmax + 1];
    for (n, row) in out.iter_mut().enumerate() {
        for (k, cell) in row.iter_mut().enumerate() {
            let total = (k as u64).pow(n as u32);
            let mut f = vec![0usize; n];
            for idx in 0..total {
                let mut v = idx;
                for slot in f.iter_mut() {
                    *slot = (v % k as u64) as usize;
                    v /= k as u64;
                }
                let mut seen = vec![false; k];
                f.iter().for_each(|&i| seen[i] = true);
                if seen.iter().all(|&s| s) {
                    *cell += 1;
                }
            }
        }
    }
    out
}

fn cycles(perm: &[usize]) -> (usize, Vec<usize>) {
    let mut label = vec![usize::MAX; perm.len()];
    let mut c = 0;
    for start in 0..perm.len() {
        if label[start] == usize::MAX {
            let mut i = start;
            while label[i] == usize::MAX {
                label[i] = c;
                i = perm[i];
            }
            c += 1;
        }
    }
    (c, label)
}

/// `counts[n][k]`: permutations of `{1..n+r}` with `k + r` cycles and the
/// first `r` elements in distinct cycles.
pub fn r_cycle_counts(nmax: usize, r: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![0u64; nmax + 1]; nmax + 1];
    for (n, row) in out.iter_mut().enumerate() {
        let len = n + r;
        let mut perm: Vec<usize> = (0..len).collect();
        let mut record = |p: &[usize]| {
            let (c, label) = cycles(p);
            let distinct = (0..r).all(|i| (0..i).all(|j| label[i] != label[j]));
            if distinct && c >= r {
                row[c - r] += 1;
            }
        };
        permute(&mut perm, 0, &mut record);
    }
    out
}

fn permute(p: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
    if i == p.len() {
        f(p);
        return;
    }
    for j in i..p.len() {
        p.swap(i, j);
        permute(p, i + 1, f);
        p.swap(i, j);
    }
}

/// `1 + 1/2 + ... + 1/n` by direct fraction addition.
pub fn fraction_sum(n: usize) -> Rational {
    let mut acc = Rational::zero();
    for k in 1..=n {
        acc += Rational::new(1.into(), (k as i64).into());
    }
    acc
}

fn at0(p: &LambdaPoly) -> Rational {
    p.at_lambda(&int(0))
}

fn signed(count: u64, n: usize, k: usize) -> Rational {
    let v = int(count as i64);
    if (n - k) % 2 == 1 {
        -v
    } else {
        v
    }
}

/// Compares every λ = 0 specialization against the brute-force counts for
/// `n ≤ nmax`. Returns the number of comparisons, or the first mismatch.
pub fn classical_limit_checks(nmax: usize, rmax: usize) -> Result<usize, String> {
    let mut checked = 0usize;
    let mut check = |what: String, got: Rational, want: Rational| -> Result<(), String> {
        checked += 1;
        if got == want {
            Ok(())
        } else {
            Err(format!("{what}: got {got}, expected {want}"))
        }
    };
    let surj = surjection_counts(nmax);
    for r in 0..=rmax {
        let parts = r_partition_counts(nmax, r);
        let cyc = r_cycle_counts(nmax, r);
        let fam = |kind| StirlingFamily::with_r(kind, r);
        let s2r = triangle(fam(StirlingKind::S2rDegenerate), nmax);
        let s1r = triangle(fam(StirlingKind::S1rDegenerate), nmax);
        let s1ru = triangle(fam(StirlingKind::S1rUnsignedDegenerate), nmax);
        for n in 0..=nmax {
            let rbell = poly_by_sum(PolyFamily::with_r(PolyKind::RBellDegenerate, r), n);
            let rfub = poly_by_sum(PolyFamily::with_r(PolyKind::RFubiniDegenerate, r), n);
            for k in 0..=n {
                let p = int(parts[n][k] as i64);
                let c = int(cyc[n][k] as i64);
                check(format!("S2r r={r} ({n},{k})"), at0(&s2r.get(n, k)), p.clone())?;
                check(format!("S1ru r={r} ({n},{k})"), at0(&s1ru.get(n, k)), c)?;
                if r == 0 {
                    check(format!("S1r r=0 ({n},{k})"), at0(&s1r.get(n, k)), signed(cyc[n][k], n, k))?;
                }
                check(format!("r-Bell r={r} n={n} x^{k}"), at0(&rbell.coeff(k)), p.clone())?;
                check(format!("r-Fubini r={r} n={n} x^{k}"), at0(&rfub.coeff(k)), p * factorial(k))?;
            }
            if r >= 1 {
                let h = degen_hyperharmonic(n, r).unwrap();
                check(format!("n! H^({r})_{n}"), at0(&h) * factorial(n), int(cyc[n][1] as i64))?;
            }
        }
        if r == 0 {
            let plain = |kind| triangle(StirlingFamily::plain(kind), nmax);
            let s2c = plain(StirlingKind::S2Classical);
            let s2d = plain(StirlingKind::S2Degenerate);
            let s1c = plain(StirlingKind::S1Classical);
            let s1d = plain(StirlingKind::S1Degenerate);
            let s1ud = plain(StirlingKind::S1UnsignedDegenerate);
            for n in 0..=nmax {
                let bell = poly_by_sum(PolyFamily::plain(PolyKind::BellDegenerate), n);
                let fc = poly_by_sum(PolyFamily::plain(PolyKind::FubiniClassical), n);
                let fd = poly_by_sum(PolyFamily::plain(PolyKind::FubiniDegenerate), n);
                for k in 0..=n {
                    let p = int(parts[n][k] as i64);
                    let s = int(surj[n][k] as i64);
                    check(format!("S2 ({n},{k})"), at0(&s2c.get(n, k)), p.clone())?;
                    check(format!("S2d ({n},{k})"), at0(&s2d.get(n, k)), p.clone())?;
                    check(format!("S1 ({n},{k})"), at0(&s1c.get(n, k)), signed(cyc[n][k], n, k))?;
                    check(format!("S1d ({n},{k})"), at0(&s1d.get(n, k)), signed(cyc[n][k], n, k))?;
                    check(format!("S1ud ({n},{k})"), at0(&s1ud.get(n, k)), int(cyc[n][k] as i64))?;
                    check(format!("Bell n={n} x^{k}"), at0(&bell.coeff(k)), p)?;
                    check(format!("Fubini n={n} x^{k}"), at0(&fc.coeff(k)), s.clone())?;
                    check(format!("degenerate Fubini n={n} x^{k}"), at0(&fd.coeff(k)), s)?;
                }
                check(format!("H_{n}"), at0(&degen_harmonic(n)), fraction_sum(n))?;
                check(format!("classical H_{n}"), classical_harmonic(n), fraction_sum(n))?;
                if n < nmax {
                    check(
                        format!("n! H_{n} vs cycles"),
                        at0(&degen_harmonic(n)) * factorial(n),
                        int(cyc[n + 1][2] as i64),
                    )?;
                }
            }
        }
    }
    Ok(checked)
}

// ---------------------------------------------------------------------------
// Generators

pub fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=12).prop_map(|(p, q)| frac(p, q))
}

pub fn lambda_poly() -> impl Strategy<Value = LambdaPoly> {
    prop::collection::vec(rational(), 0..5).prop_map(Poly::new)
}

pub fn xpoly() -> impl Strategy<Value = XPoly> {
    prop::collection::vec(lambda_poly(), 0..4).prop_map(Poly::new)
}

pub const SERIES_ORDER: usize = 6;

pub fn series() -> impl Strategy<Value = TruncSeries<LambdaPoly>> {
    prop::collection::vec(lambda_poly(), SERIES_ORDER + 1)
        .prop_map(|c| TruncSeries::new(SERIES_ORDER, c))
}

/// A series with invertible (nonzero rational) constant term.
pub fn unit_series() -> impl Strategy<Value = TruncSeries<LambdaPoly>> {
    (rational().prop_filter("nonzero", |q| !q.is_zero()), series()).prop_map(|(c, s)| {
        let mut coeffs = s.into_coeffs();
        coeffs[0] = LambdaPoly::constant(c);
        TruncSeries::new(SERIES_ORDER, coeffs)
    })
}

fn eq<T: PartialEq + std::fmt::Debug>(a: T, b: T, what: &str) -> Result<(), TestCaseError> {
    if a == b {
        Ok(())
    } else {
        Err(TestCaseError::fail(format!("{what}: {a:?} != {b:?}")))
    }
}

fn ring_laws<T>(a: &T, b: &T, c: &T) -> Result<(), TestCaseError>
where
    T: degen_core::Ring,
{
    eq(a.clone() + b.clone(), b.clone() + a.clone(), "a+b")?;
    eq(a.clone() * b.clone(), b.clone() * a.clone(), "ab")?;
    eq((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()), "(a+b)+c")?;
    eq((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()), "(ab)c")?;
    eq(
        a.clone() * (b.clone() + c.clone()),
        a.clone() * b.clone() + a.clone() * c.clone(),
        "a(b+c)",
    )?;
    eq(a.clone() + T::zero(), a.clone(), "a+0")?;
    eq(a.clone() * T::one(), a.clone(), "a1")?;
    eq(a.clone() - a.clone(), T::zero(), "a-a")
}

type Series = TruncSeries<LambdaPoly>;

fn series_laws(a: &Series, b: &Series, c: &Series) -> Result<(), TestCaseError> {
    let ok = |r: degen_core::Result<Series>| r.map_err(|e| TestCaseError::fail(e.to_string()));
    eq(ok(a.add(b))?, ok(b.add(a))?, "a+b")?;
    eq(ok(a.mul(b))?, ok(b.mul(a))?, "ab")?;
    eq(ok(ok(a.mul(b))?.mul(c))?, ok(a.mul(&ok(b.mul(c))?))?, "(ab)c")?;
    eq(ok(a.mul(&ok(b.add(c))?))?, ok(ok(a.mul(b))?.add(&ok(a.mul(c))?))?, "a(b+c)")?;
    eq(ok(a.mul(&Series::one(SERIES_ORDER)))?, a.clone(), "a1")?;
    eq(ok(a.sub(a))?, Series::zero(SERIES_ORDER), "a-a")
}

/// Runs the randomized kernel laws with `cases` cases per property and
/// returns the total number of cases executed.
pub fn kernel_laws(cases: u32) -> Result<usize, String> {
    let mut total = 0usize;
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let mut run = |name: &str, f: &mut dyn FnMut(&mut TestRunner) -> Result<(), String>| {
        let mut runner = TestRunner::new_with_rng(
            config.clone(),
            proptest::test_runner::TestRng::deterministic_rng(proptest::test_runner::RngAlgorithm::ChaCha),
        );
        f(&mut runner).map_err(|e| format!("{name}: {e}"))?;
        total += cases as usize;
        Ok::<(), String>(())
    };
    fn s<T: std::fmt::Debug>(r: Result<(), proptest::test_runner::TestError<T>>) -> Result<(), String> {
        r.map_err(|e| format!("{e}"))
    }

    run("rational ring laws", &mut |rn| {
        s(rn.run(&(rational(), rational(), rational()), |(a, b, c)| ring_laws(&a, &b, &c)))
    })?;
    run("Q[λ] ring laws", &mut |rn| {
        s(rn.run(&(lambda_poly(), lambda_poly(), lambda_poly()), |(a, b, c)| ring_laws(&a, &b, &c)))
    })?;
    run("Q[λ][x] ring laws", &mut |rn| {
        s(rn.run(&(xpoly(), xpoly(), xpoly()), |(a, b, c)| ring_laws(&a, &b, &c)))
    })?;
    run("series ring laws", &mut |rn| {
        s(rn.run(&(series(), series(), series()), |(a, b, c)| series_laws(&a, &b, &c)))
    })?;
    run("reciprocal", &mut |rn| {
        s(rn.run(&unit_series(), |a| {
            let inv = a.reciprocal().map_err(|e| TestCaseError::fail(e.to_string()))?;
            eq(a.mul(&inv).unwrap(), Series::one(SERIES_ORDER), "a · 1/a")
        }))
    })?;
    run("λ substitution is a homomorphism", &mut |rn| {
        s(rn.run(&(lambda_poly(), lambda_poly(), rational()), |(a, b, q)| {
            eq((&a * &b).at_lambda(&q), a.at_lambda(&q) * b.at_lambda(&q), "product")?;
            eq((&a + &b).at_lambda(&q), a.at_lambda(&q) + b.at_lambda(&q), "sum")
        }))
    })?;
    run("x evaluation is a homomorphism", &mut |rn| {
        s(rn.run(&(xpoly(), xpoly(), lambda_poly()), |(a, b, x)| {
            eq((&a * &b).eval(&x), &a.eval(&x) * &b.eval(&x), "product")
        }))
    })?;
    run("basis round trip", &mut |rn| {
        s(rn.run(&(xpoly(), 0usize..5, -2i64..=2), |(p, kind, shift)| {
            let basis = BasisId::shifted(BasisId::ALL_KINDS[kind], shift);
            let c = to_basis(&p, basis);
            eq(from_basis(&c, basis), p.clone(), "round trip")?;
            eq(c.len(), p.coeffs().len(), "triangularity")
        }))
    })?;
    Ok(total)
}

/// `e_λ(log_λ(1 + t)) = 1 + t`
pub fn exp_log_inverse(order: usize) -> bool {
    let e = degen_exp_pow(1, order);
    let l = degen_log1p(order);
    let want = TruncSeries::new(order, [LambdaPoly::one(), LambdaPoly::one()]);
    e.compose(&l).map(|v| v == want).unwrap_or(false)
}
