use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Violated,
    NoViolationFound,
}

/// Result of a bounded search for a negative value.
///
/// `Violated` always carries a witness whose value is below `-tol`.
/// `NoViolationFound` is a report on the points tried, not a proof of
/// positivity.
#[derive(Debug, Clone, PartialEq)]
pub struct PositivityVerdict {
    pub status: Status,
    /// Smallest value seen.
    pub min: f64,
    pub witness: Option<Vec<Complex64>>,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
}

impl PositivityVerdict {
    /// Verdict from the best candidate `(value, point)` of a search.
    pub fn from_best(best: Option<(f64, Vec<Complex64>)>, samples: usize, seed: u64, tol: f64) -> Self {
        match best {
            Some((value, point)) if value < -tol => Self {
                status: Status::Violated,
                min: value,
                witness: Some(point),
                samples,
                seed,
                tol,
            },
            Some((value, _)) => Self {
                status: Status::NoViolationFound,
                min: value,
                witness: None,
                samples,
                seed,
                tol,
            },
            None => Self {
                status: Status::NoViolationFound,
                min: 0.0,
                witness: None,
                samples,
                seed,
                tol,
            },
        }
    }

    pub fn is_violated(&self) -> bool {
        self.status == Status::Violated
    }

    /// Combines two partial searches: minimum of minima, lowest witness wins.
    pub fn merge(self, other: Self) -> Self {
        let samples = self.samples + other.samples;
        let (mut best, rest) = if other.min < self.min { (other, self) } else { (self, other) };
        best.samples = samples;
        best.tol = best.tol.max(rest.tol);
        best
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(VerdictJson::from(self)).expect("verdict serialization cannot fail")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let json: VerdictJson = serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(json.into())
    }
}

/// Wire format: `{ "status", "min", "witness": [[re, im], …] | null, "samples", "seed", "tol" }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct VerdictJson {
    status: Status,
    min: f64,
    witness: Option<Vec<[f64; 2]>>,
    samples: usize,
    seed: u64,
    tol: f64,
}

impl From<&PositivityVerdict> for VerdictJson {
    fn from(v: &PositivityVerdict) -> Self {
        Self {
            status: v.status,
            min: v.min,
            witness: v.witness.as_ref().map(|w| w.iter().map(|c| [c.re, c.im]).collect()),
            samples: v.samples,
            seed: v.seed,
            tol: v.tol,
        }
    }
}

impl From<VerdictJson> for PositivityVerdict {
    fn from(v: VerdictJson) -> Self {
        Self {
            status: v.status,
            min: v.min,
            witness: v.witness.map(|w| w.into_iter().map(|[re, im]| Complex64::new(re, im)).collect()),
            samples: v.samples,
            seed: v.seed,
            tol: v.tol,
        }
    }
}
