//! Check results shared by every verification routine and the CLI.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Amended,
}

impl Status {
    /// Amended checks hold in a documented corrected form and count as passing.
    pub fn is_pass(self) -> bool {
        !matches!(self, Status::Fail)
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Amended => "amended",
        })
    }
}

/// A residual that remembers whether it came from exact arithmetic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Residual {
    /// Exact computation, exactly zero.
    ExactZero,
    /// Exact computation, nonzero; the magnitude is its float image.
    Exact(f64),
    Float(f64),
}

impl Residual {
    pub fn exact(magnitude: f64, is_zero: bool) -> Self {
        if is_zero {
            Residual::ExactZero
        } else {
            Residual::Exact(magnitude)
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Residual::ExactZero => 0.0,
            Residual::Exact(v) | Residual::Float(v) => v,
        }
    }

    pub fn is_exact_zero(self) -> bool {
        matches!(self, Residual::ExactZero)
    }

    /// The larger of two residuals; exact zeros only survive against exact zeros.
    pub fn max(self, other: Residual) -> Residual {
        match (self, other) {
            (Residual::ExactZero, r) | (r, Residual::ExactZero) => r,
            (Residual::Exact(a), Residual::Exact(b)) => Residual::Exact(a.max(b)),
            (a, b) => Residual::Float(a.value().max(b.value())),
        }
    }
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residual::ExactZero => f.write_str("0 (exact)"),
            Residual::Exact(v) => write!(f, "{v:.12e} (exact)"),
            Residual::Float(v) => write!(f, "{v:.12e}"),
        }
    }
}

impl Serialize for Residual {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Formats a float the way every report does.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.12e}")
}

/// A complex float matrix as rows of `[re, im]` pairs in [`fmt_float`] form.
pub fn ser_float_matrix<S: serde::Serializer>(m: &crate::numerics::FloatMatrix, s: S) -> Result<S::Ok, S::Error> {
    let rows: Vec<Vec<[String; 2]>> = (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| [fmt_float(m[(r, c)].re), fmt_float(m[(r, c)].im)]).collect())
        .collect();
    rows.serialize(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub status: Status,
    pub residual: Residual,
    pub details: Value,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, status: Status, residual: Residual, details: Value) -> Self {
        Self { name: name.into(), status, residual, details }
    }

    /// Pass when the residual is within `tol` (exact zero always passes).
    pub fn within(name: impl Into<String>, residual: Residual, tol: f64, details: Value) -> Self {
        let ok = residual.value() <= tol;
        Self::new(name, Status::from_bool(ok), residual, details)
    }
}
