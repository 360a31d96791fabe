use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub const REPORT_HEADER: &str =
    "empirical verification at bounded degree on a concrete model; not a proof";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of one check on one model. Failures are entries, never panics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub model: String,
    pub bound: u32,
    pub seed: u64,
    pub header: String,
    pub skipped: Option<String>,
    pub entries: Vec<ReportEntry>,
}

impl Report {
    pub fn new(check: &str, model: &str, bound: u32, seed: u64) -> Self {
        Self {
            check: check.to_string(),
            model: model.to_string(),
            bound,
            seed,
            header: REPORT_HEADER.to_string(),
            skipped: None,
            entries: Vec::new(),
        }
    }

    pub fn skip(mut self, reason: &str) -> Self {
        self.skipped = Some(reason.to_string());
        self
    }

    pub fn push(&mut self, label: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.entries.push(ReportEntry {
            label: label.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn pass(&mut self, label: impl Into<String>, detail: impl Into<String>) {
        self.push(label, true, detail);
    }

    pub fn fail(&mut self, label: impl Into<String>, detail: impl Into<String>) {
        self.push(label, false, detail);
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportEntry> {
        self.entries.iter().filter(|e| !e.passed)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let status = match (&self.skipped, self.passed()) {
            (Some(_), _) => "SKIP",
            (None, true) => "PASS",
            (None, false) => "FAIL",
        };
        let _ = writeln!(
            out,
            "[{status}] {} on {} (bound {}, seed {})",
            self.check, self.model, self.bound, self.seed
        );
        let _ = writeln!(out, "  # {}", self.header);
        if let Some(reason) = &self.skipped {
            let _ = writeln!(out, "  skipped: {reason}");
        }
        for e in &self.entries {
            let mark = if e.passed { "ok  " } else { "FAIL" };
            let _ = writeln!(out, "  {mark} {}: {}", e.label, e.detail);
        }
        out
    }
}
