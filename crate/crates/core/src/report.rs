//! Structured pass/fail records for the numeric verifiers.
//!
//! Serialized reports are deterministic: field order is fixed by the
//! struct, grids are emitted in evaluation order, and wall-clock timing
//! is kept out of the JSON (callers may log it separately).

use serde::{Deserialize, Serialize};

pub const REPORT_SCHEMA: u32 = 1;

/// Location and value of the worst offender of a failed (or tight) check.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Witness {
    /// Grid value or parameter where the violation occurred.
    pub location: f64,
    /// Offending value.
    pub value: f64,
    /// What was being checked there.
    pub note: String,
}

/// One named sub-check inside a report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Section {
    pub name: String,
    pub pass: bool,
    /// Worst margin in the check's own units (positive = slack).
    pub margin: f64,
    pub max_violation: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Verification record: quantity checked, grid, tolerance, outcome.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub lemma: String,
    pub grid: Vec<f64>,
    pub tolerance: f64,
    pub pass: bool,
    pub max_violation: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub sections: Vec<Section>,
}

impl VerificationReport {
    pub fn new(lemma: &str, grid: Vec<f64>, tolerance: f64) -> Self {
        Self {
            schema: REPORT_SCHEMA,
            lemma: lemma.to_string(),
            grid,
            tolerance,
            pass: true,
            max_violation: 0.0,
            witness: None,
            sections: Vec::new(),
        }
    }

    /// Record a violation of size `amount` (≤ 0 means no violation).
    pub fn record(&mut self, amount: f64, location: f64, value: f64, note: &str) {
        if amount > self.max_violation {
            self.max_violation = amount;
            self.witness = Some(Witness {
                location,
                value,
                note: note.to_string(),
            });
        }
        if amount > 0.0 {
            self.pass = false;
        }
    }

    pub fn push_section(&mut self, section: Section) {
        if !section.pass {
            self.pass = false;
            if section.max_violation > self.max_violation {
                self.max_violation = section.max_violation;
                self.witness = section.witness.clone();
            }
        }
        self.sections.push(section);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}
