//! Machine-readable verification reports shared by all check suites.

use serde::Serialize;

/// Outcome of a single named check item.
#[derive(Clone, Debug, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    /// Residual as a decimal string; exact checks report "0".
    pub residual: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckItem {
    pub fn exact(name: impl Into<String>, passed: bool) -> Self {
        CheckItem {
            name: name.into(),
            passed,
            residual: "0".to_owned(),
            note: None,
        }
    }

    pub fn with_residual(name: impl Into<String>, passed: bool, residual: impl Into<String>) -> Self {
        CheckItem {
            name: name.into(),
            passed,
            residual: residual.into(),
            note: None,
        }
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Aggregated result of a verification suite.
///
/// `passed` is true iff every item passed. `max_residual` is the worst
/// item residual as a decimal string ("0" when all checks were exact).
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub passed: bool,
    pub max_residual: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub samples: u64,
    pub details: Vec<CheckItem>,
}

impl VerificationReport {
    pub fn new(check: impl Into<String>) -> Self {
        VerificationReport {
            check: check.into(),
            passed: true,
            max_residual: "0".to_owned(),
            seed: None,
            samples: 0,
            details: Vec::new(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn push(&mut self, item: CheckItem) {
        self.passed &= item.passed;
        self.details.push(item);
    }

    /// Record the numerically worst residual seen so far.
    ///
    /// Residual strings are compared through f64; this only affects the
    /// summary field, never pass/fail decisions.
    pub fn update_max_residual(&mut self, residual: &str) {
        let cur: f64 = self.max_residual.parse().unwrap_or(0.0);
        let new: f64 = residual.parse().unwrap_or(f64::INFINITY);
        if new > cur {
            self.max_residual = residual.to_owned();
        }
    }

    pub fn push_residual_item(&mut self, item: CheckItem) {
        self.update_max_residual(&item.residual);
        self.push(item);
    }

    /// One human-readable line per item plus a summary line.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for item in &self.details {
            out.push_str(&format!(
                "  [{}] {} (residual {})\n",
                if item.passed { "pass" } else { "FAIL" },
                item.name,
                item.residual
            ));
            if let Some(n) = &item.note {
                out.push_str(&format!("         note: {n}\n"));
            }
        }
        out.push_str(&format!(
            "{}: {} ({} items, max residual {})\n",
            self.check,
            if self.passed { "PASS" } else { "FAIL" },
            self.details.len(),
            self.max_residual
        ));
        out
    }
}
