//! Truncated formal power series.
//!
//! A [`TruncSeries`] of order `N` is known modulo `t^(N+1)` and always
//! holds exactly `N + 1` coefficients. Binary operations require equal
//! orders; a mismatch is reported as an error instead of truncating.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::{Rational, Ring};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries<R> {
    order: usize,
    coeffs: Vec<R>,
}

impl<R: Ring> TruncSeries<R> {
    /// Builds a series of the given order, padding with zeros or dropping
    /// coefficients past the order.
    pub fn new(order: usize, coeffs: impl IntoIterator<Item = R>) -> Self {
        let mut coeffs: Vec<R> = coeffs.into_iter().take(order + 1).collect();
        coeffs.resize(order + 1, R::zero());
        TruncSeries { order, coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> R) -> Self {
        TruncSeries {
            order,
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, [])
    }

    pub fn one(order: usize) -> Self {
        Self::constant(R::one(), order)
    }

    pub fn constant(c: R, order: usize) -> Self {
        Self::new(order, [c])
    }

    /// The series `t`.
    pub fn var(order: usize) -> Self {
        Self::new(order, [R::zero(), R::one()])
    }

    pub fn from_poly(p: &Poly<R>, order: usize) -> Self {
        Self::new(order, p.coeffs().iter().cloned())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Coefficient of `t^n`. Panics past the order, where the coefficient
    /// is unknown.
    pub fn coeff(&self, n: usize) -> &R {
        &self.coeffs[n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.zip_with(other, R::add_ref))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.zip_with(other, R::sub_ref))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&R, &R) -> R) -> Self {
        TruncSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c.clone())
    }

    /// Cauchy product truncated to the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order;
        let mut out = vec![R::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Ok(TruncSeries {
            order: n,
            coeffs: out,
        })
    }

    pub fn pow(&self, k: usize) -> Result<Self> {
        let mut acc = Self::one(self.order);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn scale_by(&self, c: &R) -> Self {
        self.map(|a| a.mul_ref(c))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.map(|a| a.scale(q))
    }

    /// Termwise derivative; the result has order one less.
    pub fn derive(&self) -> Result<Self> {
        if self.order == 0 {
            return Err(Error::DeriveOrderZero);
        }
        Ok(TruncSeries {
            order: self.order - 1,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul_ref(&R::from_int(i as i64)))
                .collect(),
        })
    }

    /// `k`-fold derivative, order drops by `k`.
    pub fn derive_n(&self, k: usize) -> Result<Self> {
        (0..k).try_fold(self.clone(), |acc, _| acc.derive())
    }

    /// `outer(inner)` by Horner accumulation over truncated products.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_order(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstantTerm);
        }
        let mut acc = Self::zero(self.order);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner)?;
            acc.coeffs[0] = acc.coeffs[0].add_ref(c);
        }
        Ok(acc)
    }

    /// Multiplicative inverse via the recursive convolution
    /// `b_n = -a_0^{-1} Σ_{k=1..n} a_k b_{n-k}`.
    pub fn reciprocal(&self) -> Result<Self> {
        let inv0 = self.coeffs[0].try_inverse().ok_or(Error::NotInvertible)?;
        let mut out: Vec<R> = Vec::with_capacity(self.order + 1);
        out.push(inv0.clone());
        for n in 1..=self.order {
            let s = (1..=n).fold(R::zero(), |acc, k| {
                acc.add_ref(&self.coeffs[k].mul_ref(&out[n - k]))
            });
            out.push(-(s.mul_ref(&inv0)));
        }
        Ok(TruncSeries {
            order: self.order,
            coeffs: out,
        })
    }

    /// Drops to a lower order.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order {
            return Err(Error::OrderTooSmall {
                order: self.order,
                needed: order,
            });
        }
        Ok(Self::new(order, self.coeffs.iter().cloned()))
    }

    /// Multiplies by `t^k` at the same order.
    pub fn shift(&self, k: usize) -> Self {
        Self::new(
            self.order,
            std::iter::repeat_n(R::zero(), k).chain(self.coeffs.iter().cloned()),
        )
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&R) -> U) -> TruncSeries<U> {
        TruncSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Index of the first coefficient that differs, if any. Both series
    /// are compared up to the smaller order.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }
}

/// `1/(1 - t)` = Σ t^n
pub fn geometric<R: Ring>(order: usize) -> TruncSeries<R> {
    TruncSeries::from_fn(order, |_| R::one())
}

/// `(1 - t)^(-r)` with coefficients `C(n + r - 1, n)`.
pub fn inverse_power_of_one_minus<R: Ring>(r: usize, order: usize) -> TruncSeries<R> {
    TruncSeries::from_fn(order, |n| {
        if r == 0 {
            if n == 0 {
                R::one()
            } else {
                R::zero()
            }
        } else {
            R::from_rational(&crate::ring::binomial(n + r - 1, n))
        }
    })
}

/// The classical exponential `Σ t^n / n!`.
pub fn exp_series<R: Ring>(order: usize) -> TruncSeries<R> {
    let mut f = Rational::one();
    TruncSeries::from_fn(order, |n| {
        if n > 0 {
            f = &f / crate::ring::int(n as i64);
        }
        R::from_rational(&f)
    })
}

/// The classical `log(1 + t) = Σ (-1)^(n-1) t^n / n`.
pub fn log1p_series<R: Ring>(order: usize) -> TruncSeries<R> {
    TruncSeries::from_fn(order, |n| match n {
        0 => R::zero(),
        _ => {
            let sign = if n % 2 == 1 { 1 } else { -1 };
            R::from_rational(&crate::ring::frac(sign, n as i64))
        }
    })
}
