//! Short names accepted by `table`, `eval` and `series`.

use degen_core::polynomials::PolyKind;
use degen_core::stirling::StirlingKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Stirling(StirlingKind),
    Poly(PolyKind),
    Harmonic,
    Hyperharmonic,
}

const STIRLING: [(&str, StirlingKind); 8] = [
    ("stirling1c", StirlingKind::S1Classical),
    ("stirling2c", StirlingKind::S2Classical),
    ("stirling1d", StirlingKind::S1Degenerate),
    ("stirling2d", StirlingKind::S2Degenerate),
    ("stirling1r", StirlingKind::S1rDegenerate),
    ("stirling2r", StirlingKind::S2rDegenerate),
    ("stirling1ru", StirlingKind::S1rUnsignedDegenerate),
    ("stirling1ud", StirlingKind::S1UnsignedDegenerate),
];

const POLY: [(&str, PolyKind); 5] = [
    ("bell-d", PolyKind::BellDegenerate),
    ("rbell-d", PolyKind::RBellDegenerate),
    ("fubini-c", PolyKind::FubiniClassical),
    ("fubini-d", PolyKind::FubiniDegenerate),
    ("rfubini-d", PolyKind::RFubiniDegenerate),
];

/// Resolves a short name or a full family id. Never guesses.
pub fn target(name: &str) -> Option<Target> {
    if let Some((_, k)) = STIRLING.iter().find(|(n, _)| *n == name) {
        return Some(Target::Stirling(*k));
    }
    if let Some(k) = StirlingKind::from_id(name) {
        return Some(Target::Stirling(k));
    }
    if let Some((_, k)) = POLY.iter().find(|(n, k)| *n == name || k.id() == name) {
        return Some(Target::Poly(*k));
    }
    match name {
        "harmonic" => Some(Target::Harmonic),
        "hyperharmonic" => Some(Target::Hyperharmonic),
        _ => None,
    }
}

pub fn target_names() -> String {
    STIRLING
        .iter()
        .map(|(n, _)| *n)
        .chain(POLY.iter().map(|(n, _)| *n))
        .chain(["harmonic", "hyperharmonic"])
        .collect::<Vec<_>>()
        .join(", ")
}

/// Series exposed by `series`, besides the polynomial-family generating
/// functions which use the family names.
pub const SERIES: [&str; 6] = [
    "degen-exp",
    "degen-exp-x",
    "degen-log",
    "degen-log1m",
    "harmonic-gf",
    "hyperharmonic-gf",
];
