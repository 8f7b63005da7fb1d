//! Structured verdicts produced by every checker.

use std::fmt;

/// One checked instance: the index it concerns, the predicted and observed
/// values rendered as text, and whether they agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub index: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

/// Outcome of one check over a declared range.
///
/// The verdict is derived, never stored: a report passes iff it has at least
/// one witness and every witness passes. An empty report means the declared
/// range was not covered and counts as a failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    check_name: String,
    p: u64,
    r: Option<u32>,
    range: String,
    witnesses: Vec<Witness>,
    metrics: Vec<(String, String)>,
}

impl CheckReport {
    pub fn new(check_name: impl Into<String>, p: u64, r: Option<u32>, range: impl Into<String>) -> Self {
        CheckReport {
            check_name: check_name.into(),
            p,
            r,
            range: range.into(),
            witnesses: Vec::new(),
            metrics: Vec::new(),
        }
    }

    pub fn push(
        &mut self,
        index: impl fmt::Display,
        expected: impl fmt::Display,
        actual: impl fmt::Display,
        pass: bool,
    ) {
        self.witnesses.push(Witness {
            index: index.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            pass,
        });
    }

    /// Pushes a witness that passes iff `expected == actual`.
    pub fn push_eq<T: PartialEq + fmt::Display>(&mut self, index: impl fmt::Display, expected: T, actual: T) {
        let pass = expected == actual;
        self.push(index, expected, actual, pass);
    }

    pub fn add_metric(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        self.metrics.push((key.into(), value.to_string()));
    }

    /// Appends the witnesses and metrics of `other`.
    pub fn absorb(&mut self, other: CheckReport) {
        self.witnesses.extend(other.witnesses);
        self.metrics.extend(other.metrics);
    }

    pub fn check_name(&self) -> &str {
        &self.check_name
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> Option<u32> {
        self.r
    }

    pub fn range(&self) -> &str {
        &self.range
    }

    pub fn witnesses(&self) -> &[Witness] {
        &self.witnesses
    }

    pub fn metrics(&self) -> &[(String, String)] {
        &self.metrics
    }

    pub fn metric(&self, key: &str) -> Option<&str> {
        self.metrics.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn verdict(&self) -> Verdict {
        if !self.witnesses.is_empty() && self.witnesses.iter().all(|w| w.pass) {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict() == Verdict::Pass
    }

    pub fn pass_count(&self) -> usize {
        self.witnesses.iter().filter(|w| w.pass).count()
    }

    pub fn fail_count(&self) -> usize {
        self.witnesses.len() - self.pass_count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Witness> {
        self.witnesses.iter().filter(|w| !w.pass)
    }

    pub fn first_failure(&self) -> Option<&Witness> {
        self.failures().next()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.r.map_or_else(|| "-".to_string(), |r| r.to_string());
        write!(
            f,
            "{} p={} r={} [{}]: {} ({}/{} witnesses pass)",
            self.check_name,
            self.p,
            r,
            self.range,
            self.verdict(),
            self.pass_count(),
            self.witnesses.len()
        )?;
        if let Some(w) = self.first_failure() {
            write!(
                f,
                "; first failure at {}: expected {}, got {}",
                w.index, w.expected, w.actual
            )?;
        }
        Ok(())
    }
}
