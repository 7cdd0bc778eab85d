//! Stirling numbers: classical, degenerate, and degenerate r-variants.
//!
//! Each family is reachable by up to three independent routes:
//!
//! * basis conversion: expand the family's source polynomial in its target
//!   factorial basis ([`stirling_by_basis`]);
//! * the row recurrence `S(n+1,k) = S(n,k-1) + (k - nλ) S(n,k)`, available
//!   for the second-kind families only ([`stirling2_by_recurrence`]);
//! * coefficient extraction from the exponential generating function
//!   ([`stirling_by_gf`]).
//!
//! Bulk access goes through [`StirlingCache`], which memoizes one
//! [`Triangle`] per family.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::elementary::{degen_exp_pow, degen_log1m, degen_log1p};
use crate::error::{Error, Result};
use crate::factorial::{
    basis_poly, classical_falling, classical_rising, degen_falling, BasisId, BasisKind,
};
use crate::poly::{LambdaPoly, XPoly};
use crate::render::Canonical;
use crate::ring::{factorial, int, Rational, Ring};
use crate::series::{exp_series, inverse_power_of_one_minus, log1p_series, TruncSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StirlingKind {
    /// `(x)_n = Σ S_1(n,k) x^k`
    S1Classical,
    /// `x^n = Σ S_2(n,k) (x)_k`
    S2Classical,
    /// `(x)_n = Σ S_{1,λ}(n,k) (x)_{k,λ}`
    S1Degenerate,
    /// `(x)_{n,λ} = Σ S_{2,λ}(n,k) (x)_k`
    S2Degenerate,
    /// `(x+r)_n = Σ S^{(r)}_{1,λ}(n+r,k+r) (x)_{k,λ}`
    S1rDegenerate,
    /// `(x+r)_{n,λ} = Σ {n+r, k+r}_{r,λ} (x)_k`
    S2rDegenerate,
    /// `⟨x+r⟩_n = Σ [n+r, k+r]_{r,λ} ⟨x⟩_{k,λ}`
    S1rUnsignedDegenerate,
    /// `[n, k]_λ = (-1)^{n-k} S_{1,λ}(n,k)`
    S1UnsignedDegenerate,
}

impl StirlingKind {
    pub const ALL: [StirlingKind; 8] = [
        StirlingKind::S1Classical,
        StirlingKind::S2Classical,
        StirlingKind::S1Degenerate,
        StirlingKind::S2Degenerate,
        StirlingKind::S1rDegenerate,
        StirlingKind::S2rDegenerate,
        StirlingKind::S1rUnsignedDegenerate,
        StirlingKind::S1UnsignedDegenerate,
    ];

    pub fn id(self) -> &'static str {
        match self {
            StirlingKind::S1Classical => "S1-classical",
            StirlingKind::S2Classical => "S2-classical",
            StirlingKind::S1Degenerate => "S1-degenerate",
            StirlingKind::S2Degenerate => "S2-degenerate",
            StirlingKind::S1rDegenerate => "S1r-degenerate",
            StirlingKind::S2rDegenerate => "S2r-degenerate",
            StirlingKind::S1rUnsignedDegenerate => "S1r-unsigned-degenerate",
            StirlingKind::S1UnsignedDegenerate => "S1-unsigned-degenerate",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.id() == id)
    }

    pub fn has_r(self) -> bool {
        matches!(
            self,
            StirlingKind::S1rDegenerate
                | StirlingKind::S2rDegenerate
                | StirlingKind::S1rUnsignedDegenerate
        )
    }

    pub fn is_degenerate(self) -> bool {
        !matches!(self, StirlingKind::S1Classical | StirlingKind::S2Classical)
    }

    /// The same numbers without the `r` shift, for `r = 0` reductions.
    pub fn plain(self) -> Self {
        match self {
            StirlingKind::S1rDegenerate => StirlingKind::S1Degenerate,
            StirlingKind::S2rDegenerate => StirlingKind::S2Degenerate,
            StirlingKind::S1rUnsignedDegenerate => StirlingKind::S1UnsignedDegenerate,
            k => k,
        }
    }

    /// Classical counterpart, reached by `λ = 0`. Unsigned first-kind
    /// families have no classical kind here and map to `None`.
    pub fn classical(self) -> Option<Self> {
        match self {
            StirlingKind::S1Classical | StirlingKind::S1Degenerate => {
                Some(StirlingKind::S1Classical)
            }
            StirlingKind::S2Classical | StirlingKind::S2Degenerate => {
                Some(StirlingKind::S2Classical)
            }
            _ => None,
        }
    }
}

/// A Stirling family together with its `r` parameter (zero unless the
/// kind is an r-family).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StirlingFamily {
    kind: StirlingKind,
    r: usize,
}

impl StirlingFamily {
    pub fn new(kind: StirlingKind, r: usize) -> Result<Self> {
        if r != 0 && !kind.has_r() {
            return Err(Error::InvalidParameter(format!(
                "{} takes no r parameter (got r = {r})",
                kind.id()
            )));
        }
        Ok(StirlingFamily { kind, r })
    }

    /// A family without `r` (or an r-family at `r = 0`).
    pub const fn plain(kind: StirlingKind) -> Self {
        StirlingFamily { kind, r: 0 }
    }

    /// Convenience constructor for r-families.
    pub fn with_r(kind: StirlingKind, r: usize) -> Self {
        Self::new(kind, r).expect("r given to a family without r")
    }

    pub fn kind(self) -> StirlingKind {
        self.kind
    }

    pub fn r(self) -> usize {
        self.r
    }
}

impl fmt::Display for StirlingFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.kind.has_r() {
            write!(f, "{}(r={})", self.kind.id(), self.r)
        } else {
            f.write_str(self.kind.id())
        }
    }
}

// ---------------------------------------------------------------------------
// Route 1: basis conversion

fn source_poly(family: StirlingFamily, n: usize) -> XPoly {
    let x = XPoly::var();
    let xr = x.translate(family.r as i64);
    match family.kind {
        StirlingKind::S1Classical | StirlingKind::S1Degenerate => classical_falling(&x, n),
        StirlingKind::S2Classical => XPoly::monomial(LambdaPoly::one(), n),
        StirlingKind::S2Degenerate => degen_falling(&x, n),
        StirlingKind::S1rDegenerate => classical_falling(&xr, n),
        StirlingKind::S2rDegenerate => degen_falling(&xr, n),
        StirlingKind::S1rUnsignedDegenerate => classical_rising(&xr, n),
        StirlingKind::S1UnsignedDegenerate => classical_rising(&x, n),
    }
}

fn target_basis(kind: StirlingKind) -> BasisKind {
    match kind {
        StirlingKind::S1Classical => BasisKind::Monomial,
        StirlingKind::S2Classical | StirlingKind::S2Degenerate | StirlingKind::S2rDegenerate => {
            BasisKind::Falling
        }
        StirlingKind::S1Degenerate | StirlingKind::S1rDegenerate => BasisKind::DegenerateFalling,
        StirlingKind::S1rUnsignedDegenerate | StirlingKind::S1UnsignedDegenerate => {
            BasisKind::DegenerateRising
        }
    }
}

/// Expands `p` over precomputed monic basis elements `basis[k]` of degree `k`.
fn expand_over(p: &XPoly, basis: &[XPoly]) -> Vec<LambdaPoly> {
    let mut rem = p.clone();
    let deg = rem.degree().map_or(0, |d| d + 1);
    let mut out = vec![LambdaPoly::zero(); deg];
    for k in (0..deg).rev() {
        let c = rem.coeff(k);
        if !c.is_zero() {
            rem = &rem - &basis[k].scale_by(&c);
            out[k] = c;
        }
    }
    out
}

/// Row `n` by basis conversion, padded to `n + 1` entries.
fn basis_row(family: StirlingFamily, n: usize, basis: &[XPoly]) -> Vec<LambdaPoly> {
    let mut row = expand_over(&source_poly(family, n), basis);
    row.resize(n + 1, LambdaPoly::zero());
    row
}

fn basis_elements(kind: StirlingKind, nmax: usize) -> Vec<XPoly> {
    let b = BasisId::new(target_basis(kind));
    (0..=nmax).map(|k| basis_poly(b, k)).collect()
}

/// The coefficient of the `k`-th target basis element in the expansion of
/// the `n`-th source polynomial. Zero when `k > n`.
pub fn stirling_by_basis(family: StirlingFamily, n: usize, k: usize) -> LambdaPoly {
    if k > n {
        return LambdaPoly::zero();
    }
    basis_row(family, n, &basis_elements(family.kind, n)).swap_remove(k)
}

pub fn triangle_by_basis(family: StirlingFamily, nmax: usize) -> Triangle {
    let basis = basis_elements(family.kind, nmax);
    Triangle {
        family,
        nmax,
        rows: (0..=nmax).map(|n| basis_row(family, n, &basis)).collect(),
    }
}

// ---------------------------------------------------------------------------
// Route 2: recurrence

fn recurrence_rows(nmax: usize, lambda: &LambdaPoly) -> Vec<Vec<LambdaPoly>> {
    let mut rows: Vec<Vec<LambdaPoly>> = vec![vec![LambdaPoly::one()]];
    for n in 0..nmax {
        let prev = &rows[n];
        let nl = lambda.scale(&int(n as i64));
        let row = (0..=n + 1)
            .map(|k| {
                let mut v = LambdaPoly::zero();
                if k >= 1 {
                    v = &v + &prev[k - 1];
                }
                if k >= 1 && k <= n {
                    let w = &LambdaPoly::from_int(k as i64) - &nl;
                    v = &v + &(&w * &prev[k]);
                }
                v
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// `S_{2,λ}(n,k)` from the row recurrence seeded with `S(0,0) = 1`,
/// `S(n,0) = 0` for `n ≥ 1`.
pub fn stirling2_by_recurrence(n: usize, k: usize) -> LambdaPoly {
    if k > n {
        return LambdaPoly::zero();
    }
    recurrence_rows(n, &LambdaPoly::var())[n][k].clone()
}

/// Triangle from the recurrence; `None` for families without one.
pub fn triangle_by_recurrence(family: StirlingFamily, nmax: usize) -> Option<Triangle> {
    let lambda = match family.kind {
        StirlingKind::S2Degenerate => LambdaPoly::var(),
        StirlingKind::S2rDegenerate if family.r == 0 => LambdaPoly::var(),
        StirlingKind::S2Classical => LambdaPoly::zero(),
        _ => return None,
    };
    Some(Triangle {
        family,
        nmax,
        rows: recurrence_rows(nmax, &lambda),
    })
}

// ---------------------------------------------------------------------------
// Route 3: generating functions

/// `(base, prefactor)` with EGF of column `k` equal to `prefactor · base^k / k!`.
fn gf_parts(family: StirlingFamily, order: usize) -> (TruncSeries<LambdaPoly>, TruncSeries<LambdaPoly>) {
    let one = TruncSeries::one(order);
    let r = family.r;
    match family.kind {
        StirlingKind::S1Classical => (log1p_series(order), one),
        StirlingKind::S2Classical => (exp_series(order).sub(&one).unwrap(), one),
        StirlingKind::S1Degenerate => (degen_log1p(order), one),
        StirlingKind::S2Degenerate => (degen_exp_pow(1, order).sub(&one).unwrap(), one),
        StirlingKind::S1rDegenerate => {
            let one_plus_t = TruncSeries::new(order, [LambdaPoly::one(), LambdaPoly::one()]);
            (degen_log1p(order), one_plus_t.pow(r).unwrap())
        }
        StirlingKind::S2rDegenerate => (
            degen_exp_pow(1, order).sub(&one).unwrap(),
            degen_exp_pow(r as i64, order),
        ),
        StirlingKind::S1rUnsignedDegenerate => {
            (degen_log1m(order).neg(), inverse_power_of_one_minus(r, order))
        }
        StirlingKind::S1UnsignedDegenerate => (degen_log1m(order).neg(), one),
    }
}

/// EGF of column `k` of a family, as a series of the given order.
pub fn gf_column(family: StirlingFamily, k: usize, order: usize) -> TruncSeries<LambdaPoly> {
    let (base, pre) = gf_parts(family, order);
    base.pow(k)
        .and_then(|p| p.mul(&pre))
        .expect("equal orders")
        .scale(&factorial(k).recip())
}

/// `n!` times the `t^n` coefficient of column `k`'s EGF.
pub fn stirling_by_gf(family: StirlingFamily, n: usize, k: usize, order: usize) -> Result<LambdaPoly> {
    if order < n {
        return Err(Error::OrderTooSmall { order, needed: n });
    }
    if k > n {
        return Ok(LambdaPoly::zero());
    }
    Ok(gf_column(family, k, order).coeff(n).scale(&factorial(n)))
}

pub fn triangle_by_gf(family: StirlingFamily, nmax: usize) -> Triangle {
    let (base, pre) = gf_parts(family, nmax);
    let mut rows: Vec<Vec<LambdaPoly>> = (0..=nmax).map(|n| vec![LambdaPoly::zero(); n + 1]).collect();
    let mut power = pre;
    for k in 0..=nmax {
        let inv_kf = factorial(k).recip();
        for (n, row) in rows.iter_mut().enumerate().skip(k) {
            row[k] = power.coeff(n).scale(&(factorial(n) * &inv_kf));
        }
        power = power.mul(&base).expect("equal orders");
    }
    Triangle { family, nmax, rows }
}

/// `[n, k]_λ = (-1)^{n-k} S_{1,λ}(n,k)`
pub fn unsigned_first_kind(n: usize, k: usize) -> LambdaPoly {
    if k > n {
        return LambdaPoly::zero();
    }
    let s = stirling_by_basis(StirlingFamily::plain(StirlingKind::S1Degenerate), n, k);
    if (n - k) % 2 == 1 {
        -s
    } else {
        s
    }
}

// ---------------------------------------------------------------------------
// Triangles

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    family: StirlingFamily,
    nmax: usize,
    rows: Vec<Vec<LambdaPoly>>,
}

impl Triangle {
    pub fn family(&self) -> StirlingFamily {
        self.family
    }

    pub fn nmax(&self) -> usize {
        self.nmax
    }

    pub fn rows(&self) -> &[Vec<LambdaPoly>] {
        &self.rows
    }

    /// Entry `(n, k)`; zero outside `0 ≤ k ≤ n`. Panics if `n > nmax`.
    pub fn get(&self, n: usize, k: usize) -> LambdaPoly {
        assert!(n <= self.nmax, "row {n} beyond triangle nmax {}", self.nmax);
        self.rows[n].get(k).cloned().unwrap_or_else(LambdaPoly::zero)
    }

    /// The first `nmax + 1` rows.
    pub fn truncated(&self, nmax: usize) -> Triangle {
        Triangle {
            family: self.family,
            nmax,
            rows: self.rows[..=nmax].to_vec(),
        }
    }

    pub fn map(&self, f: impl Fn(usize, usize, &LambdaPoly) -> LambdaPoly) -> Triangle {
        Triangle {
            family: self.family,
            nmax: self.nmax,
            rows: self
                .rows
                .iter()
                .enumerate()
                .map(|(n, row)| row.iter().enumerate().map(|(k, v)| f(n, k, v)).collect())
                .collect(),
        }
    }

    /// First `(n, k)` where the two triangles differ, over their common rows.
    pub fn first_difference(&self, other: &Triangle) -> Option<(usize, usize)> {
        let nmax = self.nmax.min(other.nmax);
        (0..=nmax)
            .flat_map(|n| (0..=n).map(move |k| (n, k)))
            .find(|&(n, k)| self.get(n, k) != other.get(n, k))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family.kind.id(),
            "r": self.family.r,
            "nmax": self.nmax,
            "rows": self.rows.iter()
                .map(|row| row.iter().map(Canonical::to_json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Triangle> {
        let field = |name: &str| {
            v.get(name)
                .ok_or_else(|| Error::Parse(format!("triangle without `{name}`")))
        };
        let kind = field("family")?
            .as_str()
            .and_then(StirlingKind::from_id)
            .ok_or_else(|| Error::Parse("unknown triangle family".into()))?;
        let r = field("r")?
            .as_u64()
            .ok_or_else(|| Error::Parse("`r` must be a nonnegative integer".into()))?;
        let nmax = field("nmax")?
            .as_u64()
            .ok_or_else(|| Error::Parse("`nmax` must be a nonnegative integer".into()))?
            as usize;
        let rows = field("rows")?
            .as_array()
            .ok_or_else(|| Error::Parse("`rows` must be an array".into()))?;
        if rows.len() != nmax + 1 {
            return Err(Error::Parse(format!("expected {} rows", nmax + 1)));
        }
        let rows = rows
            .iter()
            .enumerate()
            .map(|(n, row)| {
                let row = row
                    .as_array()
                    .filter(|a| a.len() == n + 1)
                    .ok_or_else(|| Error::Parse(format!("row {n} must have {} entries", n + 1)))?;
                row.iter().map(LambdaPoly::from_json).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Triangle {
            family: StirlingFamily::new(kind, r as usize)?,
            nmax,
            rows,
        })
    }
}

/// Triangle by the family's primary route: the recurrence for the
/// second-kind families that have one, a sign flip of `S_{1,λ}` for the
/// unsigned degenerate first kind, basis conversion otherwise.
pub fn triangle(family: StirlingFamily, nmax: usize) -> Triangle {
    if let Some(t) = triangle_by_recurrence(family, nmax) {
        return t;
    }
    if family.kind == StirlingKind::S1UnsignedDegenerate {
        let signed = triangle_by_basis(StirlingFamily::plain(StirlingKind::S1Degenerate), nmax);
        return Triangle {
            family,
            ..signed.map(|n, k, v| if (n - k) % 2 == 1 { -v.clone() } else { v.clone() })
        };
    }
    triangle_by_basis(family, nmax)
}

/// A deliberate corruption of one cached triangle entry: `delta` is added
/// to entry `(n, k)` of `family`. Used to test that the identity checks
/// notice a wrong table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fault {
    pub family: StirlingFamily,
    pub n: usize,
    pub k: usize,
    pub delta: Rational,
}

const MIN_CACHED_ROWS: usize = 12;

/// Memoized triangles, one per family. Requests never observe a
/// half-built table and the same family is never built twice
/// concurrently.
#[derive(Debug, Default)]
pub struct StirlingCache {
    tables: Mutex<HashMap<StirlingFamily, Arc<Triangle>>>,
    faults: Vec<Fault>,
}

impl StirlingCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// A cache whose triangles carry the given faults.
    pub fn with_faults(faults: Vec<Fault>) -> Self {
        StirlingCache {
            tables: Mutex::default(),
            faults,
        }
    }

    pub fn global() -> &'static StirlingCache {
        static GLOBAL: OnceLock<StirlingCache> = OnceLock::new();
        GLOBAL.get_or_init(StirlingCache::new)
    }

    pub fn faults(&self) -> &[Fault] {
        &self.faults
    }

    /// A triangle with at least `nmax` rows. The returned table may be
    /// larger than requested.
    pub fn triangle(&self, family: StirlingFamily, nmax: usize) -> Arc<Triangle> {
        let mut tables = self.tables.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(t) = tables.get(&family) {
            if t.nmax >= nmax {
                return Arc::clone(t);
            }
        }
        let size = tables
            .get(&family)
            .map_or(MIN_CACHED_ROWS, |t| 2 * t.nmax)
            .max(nmax);
        let mut t = triangle(family, size);
        for f in self.faults.iter().filter(|f| f.family == family && f.n <= size && f.k <= f.n) {
            t.rows[f.n][f.k] = &t.rows[f.n][f.k] + &LambdaPoly::constant(f.delta.clone());
        }
        let t = Arc::new(t);
        tables.insert(family, Arc::clone(&t));
        t
    }

    pub fn get(&self, family: StirlingFamily, n: usize, k: usize) -> LambdaPoly {
        if k > n {
            return LambdaPoly::zero();
        }
        self.triangle(family, n).get(n, k)
    }
}
