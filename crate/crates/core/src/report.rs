//! Pass/fail bookkeeping shared by the suites, the CLI and the acceptance runner.

use std::fmt::Display;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A known discrepancy in reference material; reported, never fatal.
    Flagged,
}

impl Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Flagged => "FLAGGED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        ok: bool,
        expected: impl Display,
        actual: impl Display,
    ) -> Self {
        Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            expected: expected.to_string(),
            actual: actual.to_string(),
            tolerance: None,
            note: None,
        }
    }

    /// Compares the Display forms.
    pub fn exact(name: impl Into<String>, expected: impl Display, actual: impl Display) -> Self {
        let (e, a) = (expected.to_string(), actual.to_string());
        Check::new(name, e == a, e, a)
    }

    /// |actual/expected − 1| ≤ tol, or |actual| ≤ tol when expected is 0.
    pub fn rel(name: impl Into<String>, expected: f64, actual: f64, tol: f64) -> Self {
        let err = if expected == 0.0 {
            actual.abs()
        } else {
            (actual / expected - 1.0).abs()
        };
        let mut c = Check::new(name, err <= tol, fmt_f64(expected), fmt_f64(actual));
        c.tolerance = Some(tol);
        c
    }

    pub fn abs(name: impl Into<String>, expected: f64, actual: f64, tol: f64) -> Self {
        let mut c = Check::new(
            name,
            (actual - expected).abs() <= tol,
            fmt_f64(expected),
            fmt_f64(actual),
        );
        c.tolerance = Some(tol);
        c
    }

    /// Reference value that the computation contradicts.
    pub fn flagged(
        name: impl Into<String>,
        reference: impl Display,
        computed: impl Display,
        note: impl Into<String>,
    ) -> Self {
        Check {
            name: name.into(),
            status: Status::Flagged,
            expected: reference.to_string(),
            actual: computed.to_string(),
            tolerance: None,
            note: Some(note.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 || (1e-4..1e6).contains(&x.abs()) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Check) -> &mut Self {
        self.checks.push(c);
        self
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// No check failed; flagged items do not count against this.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("== {} ==\n", self.title);
        for c in &self.checks {
            out.push_str(&format!(
                "[{}] {}: expected {}, got {}",
                c.status, c.name, c.expected, c.actual
            ));
            if let Some(t) = c.tolerance {
                out.push_str(&format!(" (tol {t:e})"));
            }
            if let Some(n) = &c.note {
                out.push_str(&format!(" -- {n}"));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{} pass, {} fail, {} flagged\n",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Flagged)
        ));
        out
    }
}
