//! Degenerate harmonic and hyperharmonic numbers.
//!
//! `H_{n,λ} = Σ_{k=1..n} (-1)^{k-1} (1/λ) C(λ, k)`. The factor `1/λ`
//! cancels against the leading `λ` of `C(λ, k)`, so each summand is the
//! polynomial `(-1)^{k-1} (λ-1)(λ-2)⋯(λ-k+1) / k!` and everything stays in
//! Q[λ]. At `λ = 0` the summand is `1/k` and `H_{n,λ}` becomes the
//! classical `H_n`, with `H_0 = 0`.

use num_traits::{One, Zero};

use crate::elementary::degen_log1m;
use crate::error::{Error, Result};
use crate::poly::LambdaPoly;
use crate::ring::{factorial, frac, Rational, Ring};
use crate::series::{inverse_power_of_one_minus, TruncSeries};

/// `H_{n,λ}` for every `n` in `0..=nmax`.
pub fn degen_harmonic_table(nmax: usize) -> Vec<LambdaPoly> {
    let lam = LambdaPoly::var();
    let mut out = Vec::with_capacity(nmax + 1);
    out.push(LambdaPoly::zero());
    // (λ-1)(λ-2)⋯(λ-k+1)
    let mut falling = LambdaPoly::one();
    for k in 1..=nmax {
        if k > 1 {
            falling = &falling * &(&lam - &LambdaPoly::from_int(k as i64 - 1));
        }
        let mut term = falling.scale(&factorial(k).recip());
        if k % 2 == 0 {
            term = -term;
        }
        out.push(&out[k - 1] + &term);
    }
    out
}

/// `H_{n,λ}`
pub fn degen_harmonic(n: usize) -> LambdaPoly {
    degen_harmonic_table(n).swap_remove(n)
}

/// `H^{(r)}_{n,λ}` for `n` in `0..=nmax`, from the partial-sum recursion
/// `H^{(r)}_{n,λ} = Σ_{k=1..n} H^{(r-1)}_{k,λ}`.
pub fn degen_hyperharmonic_table(nmax: usize, r: usize) -> Result<Vec<LambdaPoly>> {
    if r == 0 {
        return Err(Error::InvalidParameter("hyperharmonic order r must be at least 1".into()));
    }
    let mut row = degen_harmonic_table(nmax);
    for _ in 1..r {
        let mut acc = LambdaPoly::zero();
        for v in row.iter_mut().skip(1) {
            acc = &acc + v;
            *v = acc.clone();
        }
    }
    Ok(row)
}

/// `H^{(r)}_{n,λ}`, with `H^{(1)}_{n,λ} = H_{n,λ}` and `H^{(r)}_{0,λ} = 0`.
pub fn degen_hyperharmonic(n: usize, r: usize) -> Result<LambdaPoly> {
    Ok(degen_hyperharmonic_table(n, r)?.swap_remove(n))
}

/// `-log_λ(1 - t) / (1 - t)^r = Σ H^{(r)}_{n,λ} t^n`
pub fn harmonic_gf(r: usize, order: usize) -> Result<TruncSeries<LambdaPoly>> {
    if r == 0 {
        return Err(Error::InvalidParameter("hyperharmonic order r must be at least 1".into()));
    }
    degen_log1m(order)
        .neg()
        .mul(&inverse_power_of_one_minus(r, order))
}

/// Classical `H_n = 1 + 1/2 + ⋯ + 1/n`, with `H_0 = 0`.
pub fn classical_harmonic(n: usize) -> Rational {
    (1..=n as i64).fold(Rational::zero(), |acc, k| acc + frac(1, k))
}
