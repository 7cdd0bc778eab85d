//! Degenerate exponential and logarithm as truncated series over Q[λ].

use num_traits::One;

use crate::factorial::degen_falling;
use crate::poly::LambdaPoly;
use crate::ring::{factorial, Ring};
use crate::series::TruncSeries;

/// `e_λ^x(t) = Σ (x)_{n,λ} t^n / n!` for `x` in Q[λ].
pub fn degen_exp(x: &LambdaPoly, order: usize) -> TruncSeries<LambdaPoly> {
    TruncSeries::from_fn(order, |n| degen_falling(x, n).scale(&factorial(n).recip()))
}

/// `e_λ^r(t)` for an integer power `r`.
pub fn degen_exp_pow(r: i64, order: usize) -> TruncSeries<LambdaPoly> {
    degen_exp(&LambdaPoly::from_int(r), order)
}

/// Coefficient of `t^n` in `log_λ(1 + t)`: `λ^{n-1}(1)_{n,1/λ}/n!`, which
/// as a polynomial is `(λ - 1)(λ - 2)⋯(λ - n + 1)/n!`.
fn log1p_coeff(n: usize) -> LambdaPoly {
    if n == 0 {
        return LambdaPoly::from_int(0);
    }
    let lam = LambdaPoly::var();
    (1..n)
        .fold(LambdaPoly::one(), |acc, j| {
            &acc * &(&lam - &LambdaPoly::from_int(j as i64))
        })
        .scale(&factorial(n).recip())
}

/// `log_λ(1 + t)`, the compositional inverse of `e_λ(t) - 1`.
pub fn degen_log1p(order: usize) -> TruncSeries<LambdaPoly> {
    TruncSeries::from_fn(order, log1p_coeff)
}

/// `log_λ(1 - t)`
pub fn degen_log1m(order: usize) -> TruncSeries<LambdaPoly> {
    TruncSeries::from_fn(order, |n| {
        let c = log1p_coeff(n);
        if n % 2 == 1 {
            -c
        } else {
            c
        }
    })
}
