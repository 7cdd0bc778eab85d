//! Degenerate Bell, r-Bell, Fubini and r-Fubini polynomials.
//!
//! Each family has a Stirling-sum form and a generating-function form:
//!
//! | family      | sum                               | EGF in `t`                              |
//! |-------------|-----------------------------------|-----------------------------------------|
//! | `bell-d`    | `Σ S_{2,λ}(n,k) x^k`              | `exp(x(e_λ(t) - 1))`                    |
//! | `rbell-d`   | `Σ {n+r, k+r}_{r,λ} x^k`          | `e_λ^r(t) exp(x(e_λ(t) - 1))`           |
//! | `fubini-c`  | `Σ S_2(n,k) k! x^k`               | `1 / (1 - x(e^t - 1))`                  |
//! | `fubini-d`  | `Σ S_{2,λ}(n,k) k! x^k`           | `1 / (1 - x(e_λ(t) - 1))`               |
//! | `rfubini-d` | `Σ {n+r, k+r}_{r,λ} k! x^k`       | `e_λ^r(t) / (1 - x(e_λ(t) - 1))`        |

use num_traits::{One, Signed, Zero};

use crate::elementary::degen_exp_pow;
use crate::error::{Error, Result};
use crate::factorial::degen_falling;
use crate::poly::{LambdaPoly, XPoly};
use crate::ring::{factorial, frac, int, Rational, Ring};
use crate::series::{exp_series, TruncSeries};
use crate::stirling::{StirlingCache, StirlingFamily, StirlingKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolyKind {
    BellDegenerate,
    RBellDegenerate,
    FubiniClassical,
    FubiniDegenerate,
    RFubiniDegenerate,
}

impl PolyKind {
    pub const ALL: [PolyKind; 5] = [
        PolyKind::BellDegenerate,
        PolyKind::RBellDegenerate,
        PolyKind::FubiniClassical,
        PolyKind::FubiniDegenerate,
        PolyKind::RFubiniDegenerate,
    ];

    pub fn id(self) -> &'static str {
        match self {
            PolyKind::BellDegenerate => "bell-degenerate",
            PolyKind::RBellDegenerate => "rbell-degenerate",
            PolyKind::FubiniClassical => "fubini-classical",
            PolyKind::FubiniDegenerate => "fubini-degenerate",
            PolyKind::RFubiniDegenerate => "rfubini-degenerate",
        }
    }

    pub fn has_r(self) -> bool {
        matches!(self, PolyKind::RBellDegenerate | PolyKind::RFubiniDegenerate)
    }

    fn is_fubini(self) -> bool {
        !matches!(self, PolyKind::BellDegenerate | PolyKind::RBellDegenerate)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PolyFamily {
    kind: PolyKind,
    r: usize,
}

impl PolyFamily {
    pub fn new(kind: PolyKind, r: usize) -> Result<Self> {
        if r != 0 && !kind.has_r() {
            return Err(Error::InvalidParameter(format!(
                "{} takes no r parameter (got r = {r})",
                kind.id()
            )));
        }
        Ok(PolyFamily { kind, r })
    }

    pub const fn plain(kind: PolyKind) -> Self {
        PolyFamily { kind, r: 0 }
    }

    pub fn with_r(kind: PolyKind, r: usize) -> Self {
        Self::new(kind, r).expect("r given to a family without r")
    }

    pub fn kind(self) -> PolyKind {
        self.kind
    }

    pub fn r(self) -> usize {
        self.r
    }

    fn stirling(self) -> StirlingFamily {
        match self.kind {
            PolyKind::FubiniClassical => StirlingFamily::plain(StirlingKind::S2Classical),
            PolyKind::BellDegenerate | PolyKind::FubiniDegenerate => {
                StirlingFamily::plain(StirlingKind::S2Degenerate)
            }
            PolyKind::RBellDegenerate | PolyKind::RFubiniDegenerate => {
                StirlingFamily::with_r(StirlingKind::S2rDegenerate, self.r)
            }
        }
    }
}

/// The Stirling-sum form, reading Stirling numbers from `cache`.
pub fn poly_by_sum_in(cache: &StirlingCache, family: PolyFamily, n: usize) -> XPoly {
    let tri = cache.triangle(family.stirling(), n);
    XPoly::new(
        (0..=n)
            .map(|k| {
                let s = tri.get(n, k);
                if family.kind.is_fubini() {
                    s.scale(&factorial(k))
                } else {
                    s
                }
            })
            .collect(),
    )
}

pub fn poly_by_sum(family: PolyFamily, n: usize) -> XPoly {
    poly_by_sum_in(StirlingCache::global(), family, n)
}

/// The family's exponential generating function as a series in `t` over
/// Q[λ][x].
pub fn gf_series(family: PolyFamily, order: usize) -> TruncSeries<XPoly> {
    let x = XPoly::var();
    let lift = |s: &TruncSeries<LambdaPoly>| s.map(|c| XPoly::constant(c.clone()));
    let one = TruncSeries::<XPoly>::one(order);
    let base = match family.kind {
        PolyKind::FubiniClassical => exp_series::<XPoly>(order),
        _ => lift(&degen_exp_pow(1, order)),
    };
    // y = x(e(t) - 1)
    let y = base.sub(&one).expect("equal orders").scale_by(&x);
    let core = if family.kind.is_fubini() {
        one.sub(&y).and_then(|d| d.reciprocal())
    } else {
        exp_series::<XPoly>(order).compose(&y)
    }
    .expect("well-formed generating function");
    if family.kind.has_r() {
        lift(&degen_exp_pow(family.r as i64, order))
            .mul(&core)
            .expect("equal orders")
    } else {
        core
    }
}

/// `n!` times the `t^n` coefficient of the family's generating function.
pub fn poly_by_gf(family: PolyFamily, n: usize, order: usize) -> Result<XPoly> {
    if order < n {
        return Err(Error::OrderTooSmall { order, needed: n });
    }
    Ok(gf_series(family, order).coeff(n).scale(&factorial(n)))
}

/// Partial sum of a convergent series together with a proven bound on the
/// absolute value of the omitted tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedSum {
    pub value: Rational,
    pub tail_bound: Rational,
    pub terms: usize,
}

/// `F^{(r)}_{m,λ} = Σ_{n≥0} (n+r)_{m,λ} (1/2)^{n+1}` at a concrete `λ`,
/// summed until the tail is provably below `10^{-tol_exponent}`.
///
/// The tail after `N` terms is bounded with `|(n+r)_{m,λ}| ≤ (n + c)^m`,
/// `c = r + m|λ|`: the majorant `a_n = (n+c)^m / 2^{n+1}` has ratio
/// `a_{n+1}/a_n ≤ ρ` for all `n > N` once `ρ < 1`, so the tail is at most
/// `a_{N+1} / (1 - ρ)`.
pub fn rfubini_number(m: usize, r: usize, lambda: &Rational, tol_exponent: u32) -> CertifiedSum {
    let tol = Rational::one() / Rational::from_integer(num_bigint::BigInt::from(10).pow(tol_exponent));
    let c = int(r as i64) + lambda.abs() * int(m as i64);
    let majorant = |n: usize| -> Rational {
        let base = int(n as i64) + &c;
        (0..m).fold(Rational::one(), |acc, _| acc * &base) * frac(1, 2).pow(n as i32 + 1)
    };
    let mut value = Rational::zero();
    let mut half_pow = frac(1, 2);
    let mut n = 0usize;
    loop {
        let term = degen_falling(&LambdaPoly::from_int((n + r) as i64), m).at_lambda(lambda);
        value += term * &half_pow;
        half_pow /= int(2);
        // ratio bound for indices > n
        let a = int(n as i64 + 1) + &c;
        let b = int(n as i64 + 2) + &c;
        let rho = (0..m).fold(frac(1, 2), |acc, _| acc * &b / &a);
        if rho < Rational::one() {
            let tail = majorant(n + 1) / (Rational::one() - rho);
            if tail < tol {
                return CertifiedSum {
                    value,
                    tail_bound: tail,
                    terms: n + 1,
                };
            }
        }
        n += 1;
    }
}

/// Value of an `x`-polynomial at a rational point after substituting `λ`.
pub fn eval_at(p: &XPoly, lambda: &Rational, x: &Rational) -> Rational {
    p.at_lambda(lambda).eval(x)
}
