//! Structured results of identity checks.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::poly::{LambdaPoly, XPoly};
use crate::render::Canonical;
use crate::series::TruncSeries;

/// First place where the two sides of an identity disagree, with both
/// sides rendered canonically.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub location: String,
    pub lhs: Value,
    pub rhs: Value,
}

/// Outcome of one instantiated identity check. `passed` is true exactly
/// when `counterexample` is absent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub params: BTreeMap<String, Value>,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

/// Accumulates comparisons for one report, keeping the first failure.
#[derive(Debug)]
pub struct ReportBuilder {
    check: String,
    params: BTreeMap<String, Value>,
    failure: Option<Counterexample>,
}

impl ReportBuilder {
    pub fn new(check: &str) -> Self {
        ReportBuilder {
            check: check.to_string(),
            params: BTreeMap::new(),
            failure: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn failed(&self) -> bool {
        self.failure.is_some()
    }

    fn fail(&mut self, location: String, lhs: Value, rhs: Value) {
        if self.failure.is_none() {
            self.failure = Some(Counterexample { location, lhs, rhs });
        }
    }

    pub fn compare<T: Canonical + PartialEq>(&mut self, location: &str, lhs: &T, rhs: &T) {
        if lhs != rhs {
            self.fail(location.to_string(), lhs.to_json(), rhs.to_json());
        }
    }

    /// Coefficientwise comparison of two series of equal order.
    pub fn compare_series(
        &mut self,
        label: &str,
        lhs: &TruncSeries<LambdaPoly>,
        rhs: &TruncSeries<LambdaPoly>,
    ) {
        if lhs.order() != rhs.order() {
            self.fail(
                format!("{label}: order"),
                Value::from(lhs.order()),
                Value::from(rhs.order()),
            );
        } else if let Some(i) = lhs.first_difference(rhs) {
            self.fail(
                format!("{label}: coefficient of x^{i}"),
                lhs.coeff(i).to_json(),
                rhs.coeff(i).to_json(),
            );
        }
    }

    pub fn compare_xpoly(&mut self, label: &str, lhs: &XPoly, rhs: &XPoly) {
        if lhs == rhs {
            return;
        }
        let len = lhs.coeffs().len().max(rhs.coeffs().len());
        let i = (0..len).find(|&i| lhs.coeff(i) != rhs.coeff(i)).unwrap_or(0);
        self.fail(
            format!("{label}: coefficient of x^{i}"),
            lhs.coeff(i).to_json(),
            rhs.coeff(i).to_json(),
        );
    }

    pub fn finish(self) -> CheckReport {
        CheckReport {
            check: self.check,
            params: self.params,
            passed: self.failure.is_none(),
            counterexample: self.failure,
        }
    }
}
