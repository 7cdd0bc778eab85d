//! Dense univariate polynomials over a [`Ring`].
//!
//! Coefficients are stored in ascending degree with trailing zeros
//! stripped, so two polynomials are equal exactly when their coefficient
//! vectors are equal. The zero polynomial has no coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::ring::{LambdaRing, Rational, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Ring> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::monomial(T::one(), 1)
    }

    /// `c · var^degree`
    pub fn monomial(c: T, degree: usize) -> Self {
        let mut coeffs = vec![T::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `var^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, at: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc.mul_ref(at).add_ref(c))
    }

    /// Substitutes `inner` for the variable.
    pub fn compose(&self, inner: &Poly<T>) -> Poly<T> {
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            &(&acc * inner) + &Poly::constant(c.clone())
        })
    }

    pub fn derivative(&self) -> Poly<T> {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul_ref(&T::from_int(i as i64)))
                .collect(),
        )
    }

    /// Multiplies by `var^k`.
    pub fn shift(&self, k: usize) -> Poly<T> {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn scale_by(&self, c: &T) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    fn zip_with(&self, other: &Poly<T>, f: impl Fn(&T, &T) -> T) -> Poly<T> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = T::zero();
        Poly::new(
            (0..n)
                .map(|i| {
                    f(
                        self.coeffs.get(i).unwrap_or(&zero),
                        other.coeffs.get(i).unwrap_or(&zero),
                    )
                })
                .collect(),
        )
    }
}

impl<T: Ring> Zero for Poly<T> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Ring> One for Poly<T> {
    fn one() -> Self {
        Poly::constant(T::one())
    }
}

impl<T: Ring> Add<&Poly<T>> for &Poly<T> {
    type Output = Poly<T>;

    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        self.zip_with(rhs, T::add_ref)
    }
}

impl<T: Ring> Sub<&Poly<T>> for &Poly<T> {
    type Output = Poly<T>;

    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        self.zip_with(rhs, T::sub_ref)
    }
}

impl<T: Ring> Mul<&Poly<T>> for &Poly<T> {
    type Output = Poly<T>;

    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Poly::new(out)
    }
}

impl<T: Ring> Neg for &Poly<T> {
    type Output = Poly<T>;

    fn neg(self) -> Poly<T> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl<T: Ring> $tr<Poly<T>> for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, rhs: Poly<T>) -> Poly<T> {
                (&self).$m(&rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl<T: Ring> Neg for Poly<T> {
    type Output = Poly<T>;

    fn neg(self) -> Poly<T> {
        -&self
    }
}

impl<T: Ring> Ring for Poly<T> {
    fn from_rational(q: &Rational) -> Self {
        Poly::constant(T::from_rational(q))
    }

    /// Only nonzero constants with invertible value are units.
    fn try_inverse(&self) -> Option<Self> {
        match self.coeffs.as_slice() {
            [c] => c.try_inverse().map(Poly::constant),
            _ => None,
        }
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn scale(&self, q: &Rational) -> Self {
        self.map(|c| c.scale(q))
    }
}

/// An element of Q[λ]: polynomial in the degeneracy parameter.
pub type LambdaPoly = Poly<Rational>;

/// An element of Q[λ][x].
pub type XPoly = Poly<LambdaPoly>;

impl LambdaRing for LambdaPoly {
    fn lambda() -> Self {
        Poly::var()
    }
}

impl LambdaRing for XPoly {
    fn lambda() -> Self {
        Poly::constant(LambdaPoly::var())
    }
}

impl LambdaPoly {
    /// Substitutes a concrete value for `λ`.
    pub fn at_lambda(&self, lambda: &Rational) -> Rational {
        self.eval(lambda)
    }
}

impl XPoly {
    /// Lifts a polynomial with rational coefficients into Q[λ][x].
    pub fn from_rational_poly(p: &Poly<Rational>) -> XPoly {
        p.map(|c| LambdaPoly::constant(c.clone()))
    }

    /// Value at an integer point `x = m`, as an element of Q[λ].
    pub fn at_int(&self, m: i64) -> LambdaPoly {
        self.eval(&LambdaPoly::from_int(m))
    }

    /// Substitutes a concrete `λ`, leaving a rational polynomial in `x`.
    pub fn at_lambda(&self, lambda: &Rational) -> Poly<Rational> {
        self.map(|c| c.eval(lambda))
    }

    /// `x ↦ x + shift`
    pub fn translate(&self, shift: i64) -> XPoly {
        self.compose(&Poly::new(vec![LambdaPoly::from_int(shift), LambdaPoly::one()]))
    }
}
