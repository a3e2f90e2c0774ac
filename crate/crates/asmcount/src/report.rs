//! Pass/fail reporting for verification checks.

use std::fmt;

/// Outcome of one verification check: how many cases were examined and a
/// witness string for each failing case.
///
/// Checks report failures instead of panicking so a caller can run a whole
/// battery and present every broken case at once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    name: String,
    checked: usize,
    failures: Vec<String>,
}

impl CheckReport {
    /// An empty report for the named check.
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            checked: 0,
            failures: Vec::new(),
        }
    }

    /// Records one examined case that held.
    pub fn record_pass(&mut self) {
        self.checked += 1;
    }

    /// Records one examined case that failed, with a witness describing it.
    pub fn record_fail(&mut self, witness: impl Into<String>) {
        self.checked += 1;
        self.failures.push(witness.into());
    }

    /// Records a case that either held or failed with the given witness.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        if ok {
            self.record_pass();
        } else {
            self.record_fail(witness());
        }
    }

    /// The check's name.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// How many cases were examined.
    pub fn checked(&self) -> usize {
        self.checked
    }

    /// Witnesses for the failing cases, in the order they were found.
    pub fn failures(&self) -> &[String] {
        &self.failures
    }

    /// Whether at least one case ran and none failed.
    pub fn passed(&self) -> bool {
        self.checked > 0 && self.failures.is_empty()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.failures.is_empty() {
            write!(f, "{}: {} cases, all passed", self.name, self.checked)
        } else {
            write!(
                f,
                "{}: {} cases, {} failed (first: {})",
                self.name,
                self.checked,
                self.failures.len(),
                self.failures[0]
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_bookkeeping() {
        let mut r = CheckReport::new("demo");
        assert!(!r.passed(), "a report with no cases has shown nothing");
        r.record_pass();
        assert!(r.passed());
        r.record(true, || unreachable!("witness is not built on pass"));
        r.record_fail("2 + 2 = 5");
        assert!(!r.passed());
        assert_eq!(r.checked(), 3);
        assert_eq!(r.failures(), &["2 + 2 = 5".to_string()]);
        assert_eq!(format!("{r}"), "demo: 3 cases, 1 failed (first: 2 + 2 = 5)");
    }
}
