//! Canonical text renderings shared by the CLI, reports and test fixtures.
//!
//! * `Rational`: `"p/q"` with `q > 0`, or `"p"` when `q = 1`.
//! * `LambdaPoly`: JSON array of rational strings, ascending degree.
//! * `XPoly`: JSON array of `LambdaPoly` arrays.
//! * `TruncSeries`: `{"order": N, "coeffs": [...]}`.

use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::{LambdaPoly, Poly};
use crate::ring::{Rational, Ring};
use crate::series::TruncSeries;

pub trait Canonical: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

/// Parses a rational in canonical form only: `"2/4"` or `"1/-2"` are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let q = Rational::from_str(s.trim())
        .map_err(|_| Error::Parse(format!("not a rational: `{s}`")))?;
    if q.to_string() != s.trim() {
        return Err(Error::Parse(format!(
            "rational `{s}` is not in canonical form (expected `{q}`)"
        )));
    }
    Ok(q)
}

impl Canonical for Rational {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            other => Err(Error::Parse(format!("expected rational string, got {other}"))),
        }
    }
}

impl<T: Ring + Canonical> Canonical for Poly<T> {
    fn to_json(&self) -> Value {
        Value::Array(self.coeffs().iter().map(Canonical::to_json).collect())
    }

    fn from_json(v: &Value) -> Result<Self> {
        let items = v
            .as_array()
            .ok_or_else(|| Error::Parse(format!("expected polynomial array, got {v}")))?;
        let coeffs = items.iter().map(T::from_json).collect::<Result<Vec<_>>>()?;
        let p = Poly::new(coeffs);
        if p.coeffs().len() != items.len() {
            return Err(Error::Parse("polynomial has trailing zero coefficients".into()));
        }
        Ok(p)
    }
}

impl<R: Ring + Canonical> Canonical for TruncSeries<R> {
    fn to_json(&self) -> Value {
        json!({
            "order": self.order(),
            "coeffs": self.coeffs().iter().map(Canonical::to_json).collect::<Vec<_>>(),
        })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let order = v
            .get("order")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("series without integer `order`".into()))?
            as usize;
        let coeffs = v
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("series without `coeffs` array".into()))?;
        if coeffs.len() != order + 1 {
            return Err(Error::Parse(format!(
                "series of order {order} must have {} coefficients, found {}",
                order + 1,
                coeffs.len()
            )));
        }
        let coeffs = coeffs.iter().map(R::from_json).collect::<Result<Vec<_>>>()?;
        Ok(TruncSeries::new(order, coeffs))
    }
}

/// ASCII rendering of an element of Q[λ], using `l` for `λ`:
/// `"c0 + c1 l + c2 l^2"`. Zero terms are skipped, unit coefficients on
/// powers of `l` are omitted, negative terms are written with `-`.
pub fn ascii_lambda_poly(p: &LambdaPoly) -> String {
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let var = match k {
            0 => String::new(),
            1 => "l".to_string(),
            _ => format!("l^{k}"),
        };
        if k == 0 {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&var);
        } else {
            out.push_str(&format!("{mag} {var}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
