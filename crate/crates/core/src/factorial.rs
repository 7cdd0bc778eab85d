//! Falling and rising factorials, classical and degenerate, and expansion
//! of polynomials in Q[λ][x] over the corresponding factorial bases.

use num_traits::{One, Zero};

use crate::poly::{LambdaPoly, XPoly};
use crate::ring::{factorial, LambdaRing, Ring};

fn product<T: Ring>(n: usize, factor: impl Fn(usize) -> T) -> T {
    (0..n).fold(T::one(), |acc, j| acc.mul_ref(&factor(j)))
}

/// `(x)_{n,λ} = x(x - λ)⋯(x - (n-1)λ)`, with `(x)_{0,λ} = 1`.
pub fn degen_falling<T: LambdaRing>(x: &T, n: usize) -> T {
    let lambda = T::lambda();
    product(n, |j| x.sub_ref(&lambda.mul_ref(&T::from_int(j as i64))))
}

/// `⟨x⟩_{n,λ} = x(x + λ)⋯(x + (n-1)λ)`
pub fn degen_rising<T: LambdaRing>(x: &T, n: usize) -> T {
    let lambda = T::lambda();
    product(n, |j| x.add_ref(&lambda.mul_ref(&T::from_int(j as i64))))
}

/// `(x)_n = x(x - 1)⋯(x - n + 1)`
pub fn classical_falling<T: Ring>(x: &T, n: usize) -> T {
    product(n, |j| x.sub_ref(&T::from_int(j as i64)))
}

/// `⟨x⟩_n = x(x + 1)⋯(x + n - 1)`
pub fn classical_rising<T: Ring>(x: &T, n: usize) -> T {
    product(n, |j| x.add_ref(&T::from_int(j as i64)))
}

/// `C(top, k) = top(top - 1)⋯(top - k + 1) / k!` for a polynomial top.
pub fn gen_binomial(top: &LambdaPoly, k: usize) -> LambdaPoly {
    classical_falling(top, k).scale(&factorial(k).recip())
}

/// Degenerate falling factorial at an integer argument, as an element of Q[λ].
pub fn degen_falling_at(m: i64, n: usize) -> LambdaPoly {
    degen_falling(&LambdaPoly::from_int(m), n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisKind {
    Monomial,
    Falling,
    Rising,
    DegenerateFalling,
    DegenerateRising,
}

/// A polynomial basis of Q[λ][x]: the `k`-th element is the `k`-th
/// polynomial of `kind` evaluated at `x + shift`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisId {
    pub kind: BasisKind,
    pub shift: i64,
}

impl BasisId {
    pub const fn new(kind: BasisKind) -> Self {
        BasisId { kind, shift: 0 }
    }

    pub const fn shifted(kind: BasisKind, shift: i64) -> Self {
        BasisId { kind, shift }
    }

    pub const ALL_KINDS: [BasisKind; 5] = [
        BasisKind::Monomial,
        BasisKind::Falling,
        BasisKind::Rising,
        BasisKind::DegenerateFalling,
        BasisKind::DegenerateRising,
    ];
}

fn unshifted_element(kind: BasisKind, k: usize) -> XPoly {
    let x = XPoly::var();
    match kind {
        BasisKind::Monomial => XPoly::monomial(LambdaPoly::one(), k),
        BasisKind::Falling => classical_falling(&x, k),
        BasisKind::Rising => classical_rising(&x, k),
        BasisKind::DegenerateFalling => degen_falling(&x, k),
        BasisKind::DegenerateRising => degen_rising(&x, k),
    }
}

/// The `k`-th element of `basis` as a polynomial in `x`.
pub fn basis_poly(basis: BasisId, k: usize) -> XPoly {
    let p = unshifted_element(basis.kind, k);
    if basis.shift == 0 {
        p
    } else {
        p.translate(basis.shift)
    }
}

/// Coefficients `c_k` with `p = Σ c_k · basis_k`, one per degree
/// `0..=deg p`. Every basis is monic and triangular, so the coefficients
/// come out of back-substitution from the top degree.
pub fn to_basis(p: &XPoly, basis: BasisId) -> Vec<LambdaPoly> {
    // p(x) = Σ c_k B_k(x + s)  ⟺  p(y - s) = Σ c_k B_k(y)
    let mut rem = if basis.shift == 0 {
        p.clone()
    } else {
        p.translate(-basis.shift)
    };
    let Some(deg) = rem.degree() else {
        return Vec::new();
    };
    if basis.kind == BasisKind::Monomial {
        return rem.into_coeffs();
    }
    let mut out = vec![LambdaPoly::zero(); deg + 1];
    for k in (0..=deg).rev() {
        let c = rem.coeff(k);
        if c.is_zero() {
            continue;
        }
        let b = unshifted_element(basis.kind, k);
        rem = &rem - &b.scale_by(&c);
        out[k] = c;
    }
    debug_assert!(rem.is_zero());
    out
}

/// Inverse of [`to_basis`]: evaluates the linear combination.
pub fn from_basis(coeffs: &[LambdaPoly], basis: BasisId) -> XPoly {
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(XPoly::zero(), |acc, (k, c)| {
            &acc + &basis_poly(basis, k).scale_by(c)
        })
}

/// Replaces each monomial `a_n x^n` by `a_n (x)_{n,λ}`.
pub fn degen_transform(f: &XPoly) -> XPoly {
    from_basis(f.coeffs(), BasisId::new(BasisKind::DegenerateFalling))
}
