use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    AtMost,
    AtLeast,
}

/// A measured number next to the bound it was tested against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Checked {
    pub value: f64,
    pub tolerance: f64,
    pub relation: Relation,
    pub passed: bool,
}

impl Checked {
    pub fn at_most(value: f64, tolerance: f64) -> Self {
        Checked { value, tolerance, relation: Relation::AtMost, passed: value <= tolerance }
    }

    pub fn at_least(value: f64, tolerance: f64) -> Self {
        Checked { value, tolerance, relation: Relation::AtLeast, passed: value >= tolerance }
    }
}

impl std::fmt::Display for Checked {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rel = match self.relation {
            Relation::AtMost => "<=",
            Relation::AtLeast => ">=",
        };
        let mark = if self.passed { "ok" } else { "FAIL" };
        write!(f, "{:.3e} {rel} {:e} {mark}", self.value, self.tolerance)
    }
}

/// Whether a section's own checks all held.
pub trait Passes {
    fn passes(&self) -> bool;
}

impl Passes for Checked {
    fn passes(&self) -> bool {
        self.passed
    }
}

/// Result of one analysis. `undefined` marks a quantity that does not exist
/// for this homomorphism (no dual map, circle not mapped to scalars) and is
/// not a failure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome<T> {
    Ok { value: T },
    Failed { error: String },
    Undefined { reason: String },
    Skipped { reason: String },
}

impl<T> Outcome<T> {
    pub fn from_result(r: crate::Result<T>) -> Self {
        match r {
            Ok(value) => Outcome::Ok { value },
            Err(e @ (Error::NoDual(_) | Error::NotCircleValued(_))) => Outcome::Undefined { reason: e.to_string() },
            Err(e) => Outcome::Failed { error: e.to_string() },
        }
    }

    pub fn value(&self) -> Option<&T> {
        match self {
            Outcome::Ok { value } => Some(value),
            _ => None,
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            Outcome::Ok { .. } => "ok",
            Outcome::Failed { .. } => "failed",
            Outcome::Undefined { .. } => "undefined",
            Outcome::Skipped { .. } => "skipped",
        }
    }

    pub fn message(&self) -> Option<&str> {
        match self {
            Outcome::Ok { .. } => None,
            Outcome::Failed { error } => Some(error),
            Outcome::Undefined { reason } | Outcome::Skipped { reason } => Some(reason),
        }
    }
}

impl<T: Passes> Outcome<T> {
    pub fn passes(&self) -> bool {
        match self {
            Outcome::Ok { value } => value.passes(),
            Outcome::Failed { .. } => false,
            Outcome::Undefined { .. } | Outcome::Skipped { .. } => true,
        }
    }
}

/// Wall-clock time. Left out of reports unless asked for, so that two runs
/// with the same seed serialize identically.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub seconds: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checked_relations() {
        assert!(Checked::at_most(1e-9, 1e-8).passed);
        assert!(!Checked::at_most(1e-7, 1e-8).passed);
        assert!(Checked::at_least(0.17, 0.16).passed);
        assert!(!Checked::at_most(f64::NAN, 1.0).passed);
    }

    #[test]
    fn undefined_is_not_failure() {
        let o: Outcome<Checked> = Outcome::from_result(Err(Error::NoDual("x".into())));
        assert_eq!(o.status(), "undefined");
        assert!(o.passes());
        let o: Outcome<Checked> = Outcome::from_result(Err(Error::Convergence("x".into())));
        assert!(!o.passes());
        let json = serde_json::to_string(&o).unwrap();
        assert!(json.contains("\"status\":\"failed\""));
        assert_eq!(serde_json::from_str::<Outcome<Checked>>(&json).unwrap(), o);
    }
}
