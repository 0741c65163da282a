//! Pass/fail records for the verification battery.

/// Outcome of a single check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Passed,
    Failed,
    /// The check does not apply to the given input (wrong structure class).
    Skipped,
}

/// One verified statement: a stable identifier, what was measured, and the
/// budget it had to stay under.
#[derive(Debug, Clone)]
pub struct CheckRecord {
    pub anchor: &'static str,
    pub detail: String,
    pub measured: f64,
    pub budget: f64,
    pub status: CheckStatus,
}

impl CheckRecord {
    /// Pass iff `measured <= budget`.
    pub fn measured(
        anchor: &'static str,
        detail: impl Into<String>,
        measured: f64,
        budget: f64,
    ) -> Self {
        let status = if measured <= budget {
            CheckStatus::Passed
        } else {
            CheckStatus::Failed
        };
        Self {
            anchor,
            detail: detail.into(),
            measured,
            budget,
            status,
        }
    }

    pub fn skipped(anchor: &'static str, detail: impl Into<String>) -> Self {
        Self {
            anchor,
            detail: detail.into(),
            measured: 0.0,
            budget: 0.0,
            status: CheckStatus::Skipped,
        }
    }

    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Failed
    }
}

impl std::fmt::Display for CheckRecord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.status {
            CheckStatus::Skipped => {
                write!(f, "SKIP [{}] {}", self.anchor, self.detail)
            }
            _ => {
                let tag = if self.status == CheckStatus::Passed {
                    "PASS"
                } else {
                    "FAIL"
                };
                write!(
                    f,
                    "{tag} [{}] {}: measured {: >12.6e} <= budget {: >12.6e}",
                    self.anchor, self.detail, self.measured, self.budget
                )
            }
        }
    }
}

/// Ordered collection of check records.
#[derive(Debug, Clone, Default)]
pub struct VerificationReport {
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn push(&mut self, record: CheckRecord) {
        self.checks.push(record);
    }

    pub fn extend(&mut self, records: impl IntoIterator<Item = CheckRecord>) {
        self.checks.extend(records);
    }

    /// True when no check failed (skips do not count against).
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckRecord::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

impl std::fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for check in &self.checks {
            writeln!(f, "{check}")?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        let skipped = self
            .checks
            .iter()
            .filter(|c| c.status == CheckStatus::Skipped)
            .count();
        write!(
            f,
            "{} checks, {} failed, {} skipped",
            self.checks.len(),
            failed,
            skipped
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn measured_records_classify_by_budget() {
        let ok = CheckRecord::measured("a", "ok", 1.0e-4, 1.0e-3);
        assert!(ok.passed());
        let bad = CheckRecord::measured("b", "bad", 2.0e-3, 1.0e-3);
        assert!(!bad.passed());
        let mut report = VerificationReport::default();
        report.push(ok);
        assert!(report.all_passed());
        report.push(bad);
        assert!(!report.all_passed());
        report.push(CheckRecord::skipped("c", "n/a"));
        assert_eq!(report.failures().count(), 1);
    }
}
