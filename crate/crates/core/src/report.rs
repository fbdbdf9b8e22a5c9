//! Regularity reports shared by the Fueter and slice checkers.

use std::fmt::{self, Write};

use serde::{Serialize, Serializer};

use crate::expr::CanonicalPoly;
use crate::quaternion::Quaternion;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RegularityMode {
    FueterLeft,
    FueterRight,
    SliceRegular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    Symbolic,
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Regular,
    NotRegular,
}

/// How much a verdict establishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Evidence {
    /// Exact computation on the canonical polynomial.
    Exact,
    /// Finite differences at sampled points; not a proof.
    SampleBased,
}

/// Unit imaginary `x1 i + x2 j + x3 k` of the slice a residual was taken on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SliceDirection {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Residual {
    pub point: Quaternion,
    pub residual: Quaternion,
    pub norm: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slice: Option<SliceDirection>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegularityReport {
    pub mode: RegularityMode,
    pub method: Method,
    pub verdict: Verdict,
    pub evidence: Evidence,
    pub residuals: Vec<Residual>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "poly_string")]
    pub symbolic_result: Option<CanonicalPoly>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub notes: Vec<String>,
}

fn poly_string<S: Serializer>(p: &Option<CanonicalPoly>, s: S) -> Result<S::Ok, S::Error> {
    match p {
        Some(p) => s.serialize_str(&p.to_string()),
        None => s.serialize_none(),
    }
}

pub(crate) const SAMPLE_NOTE: &str =
    "numeric verdict: sample-based evidence at finitely many points, not a proof; differentiability is not certified";

impl RegularityReport {
    /// Verdict from an exact operator image: regular iff it is zero.
    pub fn symbolic(mode: RegularityMode, result: CanonicalPoly) -> Self {
        RegularityReport {
            mode,
            method: Method::Symbolic,
            verdict: if result.is_zero() { Verdict::Regular } else { Verdict::NotRegular },
            evidence: Evidence::Exact,
            residuals: Vec::new(),
            symbolic_result: Some(result),
            tolerance: None,
            notes: Vec::new(),
        }
    }

    /// Verdict from sampled residuals: regular iff every norm is within `tol`.
    pub fn numeric(mode: RegularityMode, residuals: Vec<Residual>, tol: f64) -> Self {
        let ok = residuals.iter().all(|r| r.norm <= tol);
        RegularityReport {
            mode,
            method: Method::Numeric,
            verdict: if ok { Verdict::Regular } else { Verdict::NotRegular },
            evidence: Evidence::SampleBased,
            residuals,
            symbolic_result: None,
            tolerance: Some(tol),
            notes: vec![SAMPLE_NOTE.to_string()],
        }
    }

    pub fn is_regular(&self) -> bool {
        self.verdict == Verdict::Regular
    }

    pub fn max_residual(&self) -> Option<f64> {
        self.residuals.iter().map(|r| r.norm).reduce(f64::max)
    }

    pub fn min_residual(&self) -> Option<f64> {
        self.residuals.iter().map(|r| r.norm).reduce(f64::min)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for RegularityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let _ = writeln!(out, "mode: {:?}", self.mode);
        let _ = writeln!(out, "method: {:?}", self.method);
        let _ = writeln!(out, "verdict: {:?}", self.verdict);
        if let Some(p) = &self.symbolic_result {
            let _ = writeln!(out, "symbolic result: {p}");
        }
        if !self.residuals.is_empty() {
            let _ = writeln!(
                out,
                "residuals: {} points, max norm {:e}, min norm {:e}",
                self.residuals.len(),
                self.max_residual().unwrap_or(0.0),
                self.min_residual().unwrap_or(0.0)
            );
        }
        if let Some(t) = self.tolerance {
            let _ = writeln!(out, "tolerance: {t:e}");
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        f.write_str(&out)
    }
}
