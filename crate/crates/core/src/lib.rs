//! Exact computation of degenerate special numbers and polynomials over
//! Q[λ]: Stirling numbers of both kinds and their r-variants, Bell and
//! Fubini polynomials, degenerate harmonic and hyperharmonic numbers, the
//! degenerate Euler operator, and executable checks of the identities
//! that relate them.
//!
//! All arithmetic is exact. The coefficient machinery is generic over a
//! [`Ring`]; the concrete types used throughout are the aliases below.

pub mod elementary;
pub mod operator;
pub mod error;
pub mod factorial;
pub mod harmonic;
pub mod identities;
pub mod poly;
pub mod polynomials;
pub mod render;
pub mod report;
pub mod ring;
pub mod series;
pub mod stirling;

pub use error::{Error, Result};
pub use poly::Poly;
pub use ring::{LambdaRing, Ring};
pub use series::TruncSeries;

/// Exact rational scalar.
pub type Rational = ring::Rational;
/// Polynomial in the degeneracy parameter λ.
pub type LambdaPoly = poly::LambdaPoly;
/// Polynomial in x over Q[λ].
pub type XPoly = poly::XPoly;
/// Truncated power series with coefficients in Q[λ].
pub type LambdaSeries = TruncSeries<LambdaPoly>;
/// Truncated power series with coefficients in Q[λ][x].
pub type XSeries = TruncSeries<XPoly>;
