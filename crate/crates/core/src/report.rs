//! Check reports shared by the library verifiers and the CLI.

use std::fmt::Display;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub label: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl Check {
    /// `pass` is exact equality of the two sides.
    pub fn equal<T: PartialEq + Display>(label: impl Into<String>, lhs: T, rhs: T) -> Self {
        Check {
            label: label.into(),
            pass: lhs == rhs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub checks: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub command: Value,
    pub results: Map<String, Value>,
    pub checks: Vec<Check>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.summary.checks += 1;
        if !check.pass {
            self.summary.failures += 1;
        }
        self.checks.push(check);
    }

    pub fn check<T: PartialEq + Display>(&mut self, label: impl Into<String>, lhs: T, rhs: T) -> bool {
        let c = Check::equal(label, lhs, rhs);
        let pass = c.pass;
        self.push(c);
        pass
    }

    pub fn extend(&mut self, other: Report) {
        for c in other.checks {
            self.push(c);
        }
        self.results.extend(other.results);
    }

    /// Appends `other`'s checks with `prefix` prepended to each label.
    pub fn extend_prefixed(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.label = format!("{prefix}{}", c.label);
            self.push(c);
        }
    }

    pub fn set_result(&mut self, key: &str, value: impl Serialize) {
        self.results.insert(
            key.to_string(),
            serde_json::to_value(value).expect("serializable result"),
        );
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failures == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_tracks_failures() {
        let mut r = Report::new();
        r.check("a", 1, 1);
        r.check("b", 2, 3);
        assert_eq!(r.summary, Summary { checks: 2, failures: 1 });
        assert!(!r.all_pass());
        assert_eq!(r.failures().next().unwrap().label, "b");
        let v = serde_json::to_value(&r).unwrap();
        assert!(v.get("timing_ms").is_none());
        assert_eq!(v["checks"][1]["lhs"], "2");
    }
}
