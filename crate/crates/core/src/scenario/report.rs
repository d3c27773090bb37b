use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Direction in which a record's value is compared with its tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Comparison {
    #[serde(rename = "<")]
    Below,
    /// Lower bounds, for checks that something is observably nonzero.
    #[serde(rename = ">")]
    Above,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub quantity: String,
    /// Serialized as `null` when the computation failed.
    pub max_deviation: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub pass: bool,
}

impl CheckRecord {
    pub fn below(id: &str, quantity: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self {
            id: id.to_string(),
            quantity: quantity.into(),
            max_deviation: value,
            tolerance,
            comparison: Comparison::Below,
            pass: value < tolerance,
        }
    }

    pub fn above(id: &str, quantity: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self {
            id: id.to_string(),
            quantity: quantity.into(),
            max_deviation: value,
            tolerance,
            comparison: Comparison::Above,
            pass: value > tolerance,
        }
    }

    /// A record for a computation that could not be carried out.
    pub fn failed(id: &str, quantity: impl Into<String>, tolerance: f64) -> Self {
        Self {
            id: id.to_string(),
            quantity: quantity.into(),
            max_deviation: f64::NAN,
            tolerance,
            comparison: Comparison::Below,
            pass: false,
        }
    }
}

impl fmt::Display for CheckRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.comparison {
            Comparison::Below => "<",
            Comparison::Above => ">",
        };
        write!(
            f,
            "{} {:<4} {}: {:.3e} {op} {:.1e}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.quantity,
            self.max_deviation,
            self.tolerance
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    pub crate_version: String,
    pub seed: u64,
    /// Tolerances, sample counts and other run settings, sorted by key.
    pub settings: BTreeMap<String, f64>,
}

impl Environment {
    pub fn new(seed: u64) -> Self {
        Self {
            crate_version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            settings: BTreeMap::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub pass: bool,
    pub environment: Environment,
    pub records: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn new(environment: Environment, records: Vec<CheckRecord>) -> Self {
        Self {
            schema: 1,
            pass: records.iter().all(|r| r.pass),
            environment,
            records,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
