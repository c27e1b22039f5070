//! Machine-readable command reports and their text rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::hquant::GaugeEvent;
use crate::report::{DefectEntry, DefectReport};

/// Process exit status of a command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    /// Unusable invocation or an unexpected internal failure.
    Failure,
    Defect,
    Schema,
    SolverCap,
    NotEquivalent,
}

impl Outcome {
    pub fn code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Failure => 1,
            Outcome::Defect => 2,
            Outcome::Schema => 3,
            Outcome::SolverCap => 4,
            Outcome::NotEquivalent => 5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

/// Result of one named check with the locations of its nonzero defects.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    pub entries: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<DefectEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    pub fn from_report(name: impl Into<String>, degree: Option<usize>, rep: &DefectReport) -> Self {
        let failures: Vec<DefectEntry> = rep.failures().cloned().collect();
        Self {
            name: name.into(),
            status: if failures.is_empty() { CheckStatus::Pass } else { CheckStatus::Fail },
            degree,
            entries: rep.entries().len(),
            failures,
            note: None,
        }
    }

    pub fn skipped(name: impl Into<String>, why: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: CheckStatus::Skipped,
            degree: None,
            entries: 0,
            failures: Vec::new(),
            note: Some(why.into()),
        }
    }

    pub fn failed(name: impl Into<String>, why: impl Into<String>) -> Self {
        Self { status: CheckStatus::Fail, ..Self::skipped(name, why) }
    }

    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

/// Degree caps in effect for a solve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CapsReport {
    pub order: usize,
    pub degree_cap: usize,
    pub leg_cap_at_top_order: usize,
    pub total_cap_at_top_order: usize,
    pub window: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArtifactRef {
    pub path: String,
    pub digest: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogLine {
    pub name: String,
    pub description: String,
}

/// Everything a command reports. Timing fields appear only when requested.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: String,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_digest: Option<String>,
    pub status: Outcome,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pointer: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub solver_log: Vec<GaugeEvent>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub caps: Option<CapsReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub artifact: Option<ArtifactRef>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub catalog: Vec<CatalogLine>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at_unix: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u128>>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            tool: format!("gammaq {}", env!("CARGO_PKG_VERSION")),
            command: command.to_string(),
            input_digest: None,
            status: Outcome::Pass,
            exit_code: 0,
            reason: None,
            pointer: None,
            checks: Vec::new(),
            solver_log: Vec::new(),
            caps: None,
            artifact: None,
            witness: None,
            certificate: None,
            catalog: Vec::new(),
            generated_at_unix: None,
            timings_ms: None,
        }
    }

    pub fn finish(&mut self, outcome: Outcome, reason: Option<String>) {
        self.status = outcome;
        self.exit_code = outcome.code();
        self.reason = reason;
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = write!(s, "{} {}", self.tool, self.command);
        if let Some(d) = &self.input_digest {
            let _ = write!(s, "  input sha256:{}", &d[..d.len().min(16)]);
        }
        s.push('\n');
        for line in &self.catalog {
            let _ = writeln!(s, "  {:<18} {}", line.name, line.description);
        }
        for c in &self.checks {
            let status = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "skipped",
            };
            let degree = c.degree.map(|d| format!(" (degree ≤ {d})")).unwrap_or_default();
            let _ = writeln!(s, "  {:<24} {status}{degree}", c.name);
            if let Some(n) = &c.note {
                let _ = writeln!(s, "      {n}");
            }
            for f in c.failures.iter().take(5) {
                let _ = write!(s, "      {} at {}: {} nonzero terms", f.condition, f.key, f.nonzero_terms);
                if let Some((k, v)) = f.sample.first() {
                    let _ = write!(s, ", e.g. {k} ↦ {v}");
                }
                s.push('\n');
            }
            if c.failures.len() > 5 {
                let _ = writeln!(s, "      … {} more", c.failures.len() - 5);
            }
        }
        for ev in &self.solver_log {
            let _ = writeln!(s, "  log: {}: {}", ev.object, ev.action);
        }
        if let Some(c) = &self.caps {
            let _ = writeln!(
                s,
                "  caps: order {}, degree cap {}, leg ≤ {}, total ≤ {} at the top order",
                c.order, c.degree_cap, c.leg_cap_at_top_order, c.total_cap_at_top_order
            );
        }
        if let Some(a) = &self.artifact {
            let _ = writeln!(s, "  artifact: {} (sha256:{})", a.path, a.digest);
        }
        if self.witness.is_some() {
            let _ = writeln!(s, "  witness found (see --format json for its tables)");
        }
        if let Some(c) = &self.certificate {
            let _ = writeln!(s, "  certificate: {c}");
        }
        if let Some(t) = &self.timings_ms {
            for (k, v) in t {
                let _ = writeln!(s, "  time {k}: {v} ms");
            }
        }
        if let Some(p) = &self.pointer {
            let _ = writeln!(s, "  at {p}");
        }
        let _ = write!(s, "status: {:?} (exit {})", self.status, self.exit_code);
        if let Some(r) = &self.reason {
            let _ = write!(s, ": {r}");
        }
        s.push('\n');
        s
    }
}
