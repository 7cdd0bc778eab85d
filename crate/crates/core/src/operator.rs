//! The degenerate Euler operator `(x d/dx)_{m,λ}` and the operator
//! identities built on it.
//!
//! The operator acts diagonally on monomials, `x^j ↦ (j)_{m,λ} x^j`, and is
//! applied here in exactly that form. The right-hand sides are assembled
//! from degenerate r-Stirling numbers of the second kind and repeated
//! differentiation, so agreement of the two is a genuine check.

use num_traits::Zero;

pub use crate::factorial::degen_transform;
use crate::error::{Error, Result};
use crate::factorial::{classical_falling, degen_falling_at};
use crate::poly::{LambdaPoly, XPoly};
use crate::report::{CheckReport, ReportBuilder};
use crate::ring::Ring;
use crate::series::TruncSeries;
use crate::stirling::{StirlingCache, StirlingFamily, StirlingKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorMode {
    /// `(x d/dx)_{m,λ} x^r`
    Plain,
    /// `(x d/dx)_{m-r,λ} x^r (d/dx)^r`
    Shifted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OperatorSpec {
    pub m: usize,
    pub r: usize,
    pub mode: OperatorMode,
}

impl OperatorSpec {
    pub fn plain(m: usize, r: usize) -> Self {
        OperatorSpec { m, r, mode: OperatorMode::Plain }
    }

    pub fn shifted(m: usize, r: usize) -> Result<Self> {
        let spec = OperatorSpec { m, r, mode: OperatorMode::Shifted };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        if self.mode == OperatorMode::Shifted && self.m < self.r {
            return Err(Error::InvalidParameter(format!(
                "shifted operator needs m >= r (m = {}, r = {})",
                self.m, self.r
            )));
        }
        Ok(())
    }
}

/// Things the operator can act on: polynomials and truncated series in `x`
/// over Q[λ].
pub trait Operand: Sized + Clone {
    /// `x^s · f^{(l)}` for `s ≥ l`. For a series of order `N` the result has
    /// order `N + s - l`.
    fn x_pow_derivative(&self, s: usize, l: usize) -> Self;

    /// Multiplies the coefficient of `x^j` by `eigen(j)`.
    fn diagonal(&self, eigen: impl Fn(usize) -> LambdaPoly) -> Self;

    fn plus(&self, other: &Self) -> Self;

    fn times(&self, c: &LambdaPoly) -> Self;

    /// Zero with the shape `x^s · f^{(l)}` would have.
    fn zero_like(&self, s: usize, l: usize) -> Self;
}

impl Operand for XPoly {
    fn x_pow_derivative(&self, s: usize, l: usize) -> Self {
        let mut d = self.clone();
        for _ in 0..l {
            d = d.derivative();
        }
        d.shift(s)
    }

    fn diagonal(&self, eigen: impl Fn(usize) -> LambdaPoly) -> Self {
        XPoly::new(
            self.coeffs()
                .iter()
                .enumerate()
                .map(|(j, c)| c * &eigen(j))
                .collect(),
        )
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn times(&self, c: &LambdaPoly) -> Self {
        self.scale_by(c)
    }

    fn zero_like(&self, _s: usize, _l: usize) -> Self {
        XPoly::zero()
    }
}

impl Operand for TruncSeries<LambdaPoly> {
    fn x_pow_derivative(&self, s: usize, l: usize) -> Self {
        assert!(s >= l, "x^s f^(l) needs s >= l");
        let order = self.order() + s - l;
        if l > self.order() {
            // every surviving term has degree >= s > order
            return TruncSeries::zero(order);
        }
        let d = self.derive_n(l).expect("l <= order");
        TruncSeries::new(
            order,
            std::iter::repeat_n(LambdaPoly::zero(), s).chain(d.coeffs().iter().cloned()),
        )
    }

    fn diagonal(&self, eigen: impl Fn(usize) -> LambdaPoly) -> Self {
        TruncSeries::from_fn(self.order(), |j| self.coeff(j) * &eigen(j))
    }

    fn plus(&self, other: &Self) -> Self {
        self.add(other).expect("operand orders agree")
    }

    fn times(&self, c: &LambdaPoly) -> Self {
        self.scale_by(c)
    }

    fn zero_like(&self, s: usize, l: usize) -> Self {
        TruncSeries::zero(self.order() + s - l)
    }
}

fn s2r(cache: &StirlingCache, r: usize, n: usize, k: usize) -> LambdaPoly {
    cache.get(StirlingFamily::with_r(StirlingKind::S2rDegenerate, r), n, k)
}

/// Applies the operator through its diagonal action on monomials.
pub fn euler_apply<T: Operand>(spec: OperatorSpec, p: &T) -> Result<T> {
    spec.validate()?;
    Ok(match spec.mode {
        OperatorMode::Plain => p
            .x_pow_derivative(spec.r, 0)
            .diagonal(|j| degen_falling_at(j as i64, spec.m)),
        OperatorMode::Shifted => p
            .x_pow_derivative(spec.r, spec.r)
            .diagonal(|j| degen_falling_at(j as i64, spec.m - spec.r)),
    })
}

/// The Stirling-sum side of the operator identity:
/// plain mode `Σ_{l=0..m} {m+r, l+r}_{r,λ} x^{l+r} f^{(l)}`,
/// shifted mode `Σ_{l=r..m} {m, l}_{r,λ} x^l f^{(l)}`.
pub fn euler_expansion_in<T: Operand>(cache: &StirlingCache, spec: OperatorSpec, f: &T) -> Result<T> {
    spec.validate()?;
    let (m, r) = (spec.m, spec.r);
    Ok(match spec.mode {
        OperatorMode::Plain => (0..=m).fold(f.zero_like(r, 0), |acc, l| {
            let c = s2r(cache, r, m, l);
            if c.is_zero() {
                return acc;
            }
            acc.plus(&f.x_pow_derivative(l + r, l).times(&c))
        }),
        OperatorMode::Shifted => (r..=m).fold(f.zero_like(0, 0), |acc, l| {
            // {m, l}_{r,λ} is the r-Stirling number at shifted indices (m-r, l-r)
            let c = s2r(cache, r, m - r, l - r);
            if c.is_zero() {
                return acc;
            }
            acc.plus(&f.x_pow_derivative(l, l).times(&c))
        }),
    })
}

pub fn euler_expansion<T: Operand>(spec: OperatorSpec, f: &T) -> Result<T> {
    euler_expansion_in(StirlingCache::global(), spec, f)
}

/// Both operator forms on every monomial `x^j`, `j ≤ jmax`.
pub fn euler_operator_check_in(cache: &StirlingCache, m: usize, r: usize, jmax: usize) -> CheckReport {
    let mut rep = ReportBuilder::new("thm1")
        .param("m", m)
        .param("r", r)
        .param("jmax", jmax);
    let mut specs = vec![OperatorSpec::plain(m, r)];
    if m >= r {
        specs.push(OperatorSpec { m, r, mode: OperatorMode::Shifted });
    }
    for spec in specs {
        for j in 0..=jmax {
            let xj = XPoly::monomial(LambdaPoly::from_int(1), j);
            let lhs = euler_apply(spec, &xj).expect("validated");
            let rhs = euler_expansion_in(cache, spec, &xj).expect("validated");
            rep.compare_xpoly(&format!("{:?} form on x^{j}", spec.mode), &lhs, &rhs);
        }
    }
    rep.finish()
}

/// Checks both forms of the two-series identity for a polynomial `f` and a
/// series `g`, comparing the two sides to `order`.
///
/// `g` must be tracked to at least `order + deg f`.
pub fn two_series_check_in(
    cache: &StirlingCache,
    mut rep: ReportBuilder,
    f: &XPoly,
    g: &TruncSeries<LambdaPoly>,
    r: usize,
    order: usize,
) -> Result<CheckReport> {
    let deg = f.degree().unwrap_or(0);
    if g.order() < order + deg {
        return Err(Error::OrderTooSmall {
            order: g.order(),
            needed: order + deg,
        });
    }
    let a = |n: usize| f.coeff(n);
    let b = |n: usize| g.coeff(n).clone();
    let zero = TruncSeries::<LambdaPoly>::zero(order);
    // x^k g^(k), shared by both forms
    let xg: Vec<TruncSeries<LambdaPoly>> = (0..=deg)
        .map(|k| g.x_pow_derivative(k, k).truncate(order).expect("order checked"))
        .collect();

    let lhs1 = (0..=deg).fold(zero.clone(), |acc, n| {
        let an = a(n);
        if an.is_zero() {
            return acc;
        }
        let inner = (0..=n).fold(zero.clone(), |s, k| {
            s.plus(&xg[k].times(&s2r(cache, r, n, k)))
        });
        acc.plus(&inner.times(&an))
    });
    let f_lambda = degen_transform(f);
    let rhs1 = TruncSeries::from_fn(order, |n| &b(n) * &f_lambda.at_int((n + r) as i64));
    rep.compare_series("first form", &lhs1, &rhs1);

    let lhs2 = (r..=deg).fold(zero.clone(), |acc, m| {
        let am = a(m);
        if am.is_zero() {
            return acc;
        }
        let inner = (r..=m).fold(zero.clone(), |s, k| {
            s.plus(&xg[k].times(&s2r(cache, r, m - r, k - r)))
        });
        acc.plus(&inner.times(&am))
    });
    let rhs2 = TruncSeries::from_fn(order, |n| {
        if n < r {
            return LambdaPoly::zero();
        }
        let inner = (r..=deg).fold(LambdaPoly::zero(), |s, m| {
            &s + &(&a(m) * &degen_falling_at(n as i64, m - r))
        });
        let nr = classical_falling(&LambdaPoly::from_int(n as i64), r);
        &(&b(n) * &nr) * &inner
    });
    rep.compare_series("second form", &lhs2, &rhs2);
    Ok(rep.finish())
}

pub fn two_series_check(
    f: &XPoly,
    g: &TruncSeries<LambdaPoly>,
    r: usize,
    order: usize,
) -> Result<CheckReport> {
    let rep = ReportBuilder::new("thm2").param("r", r).param("order", order);
    two_series_check_in(StirlingCache::global(), rep, f, g, r, order)
}
