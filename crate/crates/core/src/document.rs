//! The JSON document format for mass functions.
//!
//! ```json
//! {"frame": ["a", "b"],
//!  "focal": [{"set": ["a"], "mass": 0.2}, {"set": ["a", "b"], "mass": 0.8}]}
//! ```
//!
//! [`emit_bpa`] writes a canonical form (frame in its own order, focal sets by
//! increasing bitmask, masses with 17 significant digits) that
//! [`parse_bpa`] reads back to the identical [`MassFunction`].

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::evidence::{MassFunction, MASS_TOL};
use crate::frame::{Frame, SubsetMask};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BpaDocument {
    pub frame: Vec<String>,
    pub focal: Vec<FocalEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FocalEntry {
    pub set: Vec<String>,
    pub mass: f64,
}

/// A dense belief table, `belief[A]` indexed by subset bitmask.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BeliefDocument {
    pub frame: Vec<String>,
    pub belief: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DocumentError {
    #[error("line {line}, column {column}: {message}")]
    Malformed {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("frame: {0}")]
    Frame(Error),
    #[error("{field}: unknown label `{label}`")]
    UnknownLabel { field: String, label: String },
    #[error("{field}: set repeats focal[{first}]")]
    DuplicateSet { field: String, first: usize },
    #[error("{field}: the empty set cannot carry mass")]
    EmptySet { field: String },
    #[error("{field}: mass {mass} is not positive")]
    NonPositiveMass { field: String, mass: f64 },
    #[error("focal: masses sum to {sum}, which deviates from 1 by more than {MASS_TOL:e}")]
    SumDeviation { sum: f64 },
    #[error("focal: list is empty")]
    NoFocalSets,
}

impl DocumentError {
    /// Stable short identifier for diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            DocumentError::Malformed { .. } => "malformed",
            DocumentError::Frame(_) => "bad-frame",
            DocumentError::UnknownLabel { .. } => "unknown-label",
            DocumentError::DuplicateSet { .. } => "duplicate-set",
            DocumentError::EmptySet { .. } => "empty-set",
            DocumentError::NonPositiveMass { .. } => "non-positive-mass",
            DocumentError::SumDeviation { .. } => "sum-deviation",
            DocumentError::NoFocalSets => "no-focal-sets",
        }
    }
}

fn malformed(e: serde_json::Error) -> DocumentError {
    DocumentError::Malformed {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

impl BpaDocument {
    pub fn from_mass(m: &MassFunction) -> Self {
        let frame = m.frame();
        BpaDocument {
            frame: frame.labels().to_vec(),
            focal: m
                .focal()
                .map(|(set, mass)| FocalEntry {
                    set: frame
                        .subset_labels(set)
                        .into_iter()
                        .map(String::from)
                        .collect(),
                    mass,
                })
                .collect(),
        }
    }

    pub fn to_mass(&self) -> Result<MassFunction, DocumentError> {
        let frame = Frame::new(self.frame.iter().cloned()).map_err(DocumentError::Frame)?;
        if self.focal.is_empty() {
            return Err(DocumentError::NoFocalSets);
        }
        let mut seen: HashMap<SubsetMask, usize> = HashMap::new();
        let mut entries = Vec::with_capacity(self.focal.len());
        for (i, entry) in self.focal.iter().enumerate() {
            let mut mask = SubsetMask::EMPTY;
            for (j, label) in entry.set.iter().enumerate() {
                let index = frame
                    .index_of(label)
                    .ok_or_else(|| DocumentError::UnknownLabel {
                        field: format!("focal[{i}].set[{j}]"),
                        label: label.clone(),
                    })?;
                mask = mask | SubsetMask::singleton(index);
            }
            if mask.is_empty() {
                return Err(DocumentError::EmptySet {
                    field: format!("focal[{i}].set"),
                });
            }
            if let Some(&first) = seen.get(&mask) {
                return Err(DocumentError::DuplicateSet {
                    field: format!("focal[{i}].set"),
                    first,
                });
            }
            seen.insert(mask, i);
            if entry.mass.is_nan() || entry.mass <= 0.0 {
                return Err(DocumentError::NonPositiveMass {
                    field: format!("focal[{i}].mass"),
                    mass: entry.mass,
                });
            }
            entries.push((mask, entry.mass));
        }
        MassFunction::new(&frame, entries).map_err(|e| match e {
            Error::MassSum { sum } => DocumentError::SumDeviation { sum },
            other => DocumentError::Frame(other),
        })
    }
}

/// Parses and validates a mass-function document.
pub fn parse_bpa(text: &str) -> Result<MassFunction, DocumentError> {
    let doc: BpaDocument = serde_json::from_str(text).map_err(malformed)?;
    doc.to_mass()
}

/// Either kind of document accepted by validation.
#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Mass(MassFunction),
    Belief { frame: Frame, values: Vec<f64> },
}

/// Parses a mass-function document, or a belief table when the object has a
/// `belief` field.
pub fn parse_document(text: &str) -> Result<Document, DocumentError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(malformed)?;
    if value.get("belief").is_some() {
        let doc: BeliefDocument =
            serde_json::from_value(value).map_err(|e| DocumentError::Malformed {
                line: 0,
                column: 0,
                message: e.to_string(),
            })?;
        let frame = Frame::new(doc.frame).map_err(DocumentError::Frame)?;
        return Ok(Document::Belief {
            frame,
            values: doc.belief,
        });
    }
    parse_bpa(text).map(Document::Mass)
}

/// Formats with 17 significant digits, as a plain decimal where practical.
pub fn format_sig17(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x:?}");
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exponent) = sci.split_once('e').expect("scientific notation");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    if !(-7..17).contains(&exponent) {
        return sci;
    }
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    if exponent < 0 {
        let zeros = "0".repeat((-exponent - 1) as usize);
        format!("{sign}0.{zeros}{digits}")
    } else {
        let split = exponent as usize + 1;
        format!("{sign}{}.{}", &digits[..split], &digits[split..])
    }
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

/// Canonical text of a mass function.
pub fn emit_bpa(m: &MassFunction) -> String {
    let frame = m.frame();
    let labels: Vec<String> = frame.labels().iter().map(|l| json_string(l)).collect();
    let mut out = format!(
        "{{\n  \"frame\": [{}],\n  \"focal\": [\n",
        labels.join(", ")
    );
    let count = m.focal_count();
    for (k, (set, mass)) in m.focal().enumerate() {
        let members: Vec<String> = frame
            .subset_labels(set)
            .into_iter()
            .map(json_string)
            .collect();
        out.push_str(&format!(
            "    {{\"set\": [{}], \"mass\": {}}}{}\n",
            members.join(", "),
            format_sig17(mass),
            if k + 1 < count { "," } else { "" }
        ));
    }
    out.push_str("  ]\n}\n");
    out
}
