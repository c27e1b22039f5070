//! Structured defect reports shared by the verification routines.

use std::fmt::Debug;

use serde::{Deserialize, Serialize};

use crate::exact::{format_scalar, LinComb, Tensor};

/// Anything that can be zero or not, with printable nonzero terms.
pub trait Defect {
    fn nonzero_terms(&self) -> usize;
    fn sample(&self, k: usize) -> Vec<(String, String)>;
}

impl Defect for Tensor {
    fn nonzero_terms(&self) -> usize {
        self.nnz()
    }

    fn sample(&self, k: usize) -> Vec<(String, String)> {
        self.iter().take(k).map(|(i, c)| (format!("{i:?}"), format_scalar(c))).collect()
    }
}

impl<K: Ord + Clone + Debug> Defect for LinComb<K> {
    fn nonzero_terms(&self) -> usize {
        self.len()
    }

    fn sample(&self, k: usize) -> Vec<(String, String)> {
        self.iter().take(k).map(|(i, c)| (format!("{i:?}"), format_scalar(c))).collect()
    }
}

impl<T: Defect> Defect for &T {
    fn nonzero_terms(&self) -> usize {
        (*self).nonzero_terms()
    }

    fn sample(&self, k: usize) -> Vec<(String, String)> {
        (*self).sample(k)
    }
}

/// One named defect; zero when the checked identity holds.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct DefectEntry {
    pub condition: String,
    pub key: String,
    pub nonzero_terms: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sample: Vec<(String, String)>,
}

impl DefectEntry {
    pub fn is_zero(&self) -> bool {
        self.nonzero_terms == 0
    }
}

/// A list of defects for one verification run.
#[derive(Debug, Clone, Default, Serialize, PartialEq, Eq)]
pub struct DefectReport {
    entries: Vec<DefectEntry>,
}

impl DefectReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, condition: impl Into<String>, key: impl Into<String>, defect: impl Defect) {
        self.entries.push(DefectEntry {
            condition: condition.into(),
            key: key.into(),
            nonzero_terms: defect.nonzero_terms(),
            sample: defect.sample(4),
        });
    }

    pub fn extend(&mut self, other: DefectReport) {
        self.entries.extend(other.entries);
    }

    pub fn entries(&self) -> &[DefectEntry] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(DefectEntry::is_zero)
    }

    /// Entries whose defect is nonzero.
    pub fn failures(&self) -> impl Iterator<Item = &DefectEntry> {
        self.entries.iter().filter(|e| !e.is_zero())
    }

    /// Whether every entry of the given condition vanishes.
    pub fn condition_is_zero(&self, condition: &str) -> bool {
        self.entries.iter().filter(|e| e.condition == condition).all(DefectEntry::is_zero)
    }

    /// Whether the report contains any entry for the given condition.
    pub fn has_condition(&self, condition: &str) -> bool {
        self.entries.iter().any(|e| e.condition == condition)
    }
}
