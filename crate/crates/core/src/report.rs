//! Pass/fail bookkeeping shared by every verification routine.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

/// Where an identity failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// An index tuple, e.g. the triple `(a, b, c)` of a failed set identity.
    Indices {
        values: Vec<usize>,
    },
    /// A tensor coefficient that differs; `basis` lists the `(a, g)` pairs of
    /// the basis tensor `h_a w_g (x) ...`.
    Coefficient {
        basis: Vec<[usize; 2]>,
        left: String,
        right: String,
    },
    /// A matrix entry that differs.
    Entry {
        row: usize,
        col: usize,
        left: String,
        right: String,
    },
    Note {
        text: String,
    },
}

impl Witness {
    pub fn indices(values: &[usize]) -> Self {
        Witness::Indices { values: values.to_vec() }
    }

    pub fn note(text: impl Into<String>) -> Self {
        Witness::Note { text: text.into() }
    }

    /// Prefixes the witness with the outer indices of the loop that found it.
    pub fn within(self, outer: &[usize]) -> Self {
        match self {
            Witness::Indices { values } => {
                let mut all = outer.to_vec();
                all.extend(values);
                Witness::Indices { values: all }
            }
            other => Witness::Note { text: format!("at {:?}: {}", outer, other) },
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Indices { values } => write!(f, "indices {:?}", values),
            Witness::Coefficient { basis, left, right } => {
                write!(f, "coefficient of {:?}: {} vs {}", basis, left, right)
            }
            Witness::Entry { row, col, left, right } => write!(f, "entry ({}, {}): {} vs {}", row, col, left, right),
            Witness::Note { text } => f.write_str(text),
        }
    }
}

/// Outcome of a single exhaustive check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Counterexample(Witness),
}

impl Verdict {
    pub fn from_witness(w: Option<Witness>) -> Self {
        match w {
            None => Verdict::Pass,
            Some(w) => Verdict::Counterexample(w),
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Pass => None,
            Verdict::Counterexample(w) => Some(w),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// The identity being checked, written out as a formula.
    #[serde(rename = "paper_anchor")]
    pub anchor: String,
    pub status: CheckStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default)]
    pub millis: u64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

/// An ordered list of named checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub checks: Vec<Check>,
}

impl PropertyReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a check; `None` means it passed.
    pub fn record(&mut self, name: &str, anchor: &str, witness: Option<Witness>) {
        let status = if witness.is_some() { CheckStatus::Fail } else { CheckStatus::Pass };
        self.checks.push(Check {
            name: name.to_string(),
            anchor: anchor.to_string(),
            status,
            witness,
            reason: None,
            millis: 0,
        });
    }

    /// Runs `check` and records it together with its wall time.
    pub fn timed<F>(&mut self, name: &str, anchor: &str, check: F)
    where
        F: FnOnce() -> Option<Witness>,
    {
        let start = Instant::now();
        let witness = check();
        self.record(name, anchor, witness);
        if let Some(last) = self.checks.last_mut() {
            last.millis = start.elapsed().as_millis() as u64;
        }
    }

    pub fn skip(&mut self, name: &str, anchor: &str, reason: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            anchor: anchor.to_string(),
            status: CheckStatus::Skipped,
            witness: None,
            reason: Some(reason.into()),
            millis: 0,
        });
    }

    pub fn extend(&mut self, other: PropertyReport) {
        self.checks.extend(other.checks);
    }

    /// True iff every non-skipped check passed.
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// True iff the named check exists and passed.
    pub fn passed(&self, name: &str) -> bool {
        self.get(name).map_or(false, Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn zero_timings(&mut self) {
        for c in &mut self.checks {
            c.millis = 0;
        }
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "skip",
            };
            write!(f, "[{}] {}", status, c.name)?;
            if let Some(w) = &c.witness {
                write!(f, " ({})", w)?;
            }
            if let Some(r) = &c.reason {
                write!(f, " ({})", r)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fail_carries_witness_and_skips_do_not_fail() {
        let mut r = PropertyReport::new();
        r.record("a", "x = x", None);
        r.skip("b", "y = y", "too large");
        assert!(r.all_passed());
        r.record("c", "z = z", Some(Witness::indices(&[1, 2])));
        assert!(!r.all_passed());
        let failed: Vec<_> = r.failures().collect();
        assert_eq!(failed.len(), 1);
        assert!(failed[0].witness.is_some());
        assert!(r.passed("a") && !r.passed("b") && !r.passed("c"));
    }
}
