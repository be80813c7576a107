//! Acceptance criteria runners.

use std::time::{Duration, Instant};

use jetgauge_core::pheno::Constants;
use jetgauge_core::proca::{proca_table, PROCA_DIM};
use jetgauge_core::report::{Check, Report};
use jetgauge_core::{suites, Result};

/// The 28x28 trace table as printed, one row per line.
pub const PRINTED_PROCA_TABLE: &str = include_str!("../data/proca_table.txt");

pub fn parse_printed_table() -> Vec<Vec<i64>> {
    PRINTED_PROCA_TABLE
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            l.split_whitespace()
                .map(|x| x.parse().expect("integer entry"))
                .collect()
        })
        .collect()
}

pub struct Criterion {
    pub id: u32,
    pub title: &'static str,
    pub budget: Duration,
    run: fn() -> Result<Report>,
}

pub struct Outcome {
    pub id: u32,
    pub title: &'static str,
    pub report: Report,
    pub elapsed: Duration,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }

    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        format!(
            "criterion {:>2} [{status}] {} ({} checks, {} flagged, {:.0} ms)",
            self.id,
            self.title,
            self.report.checks.len(),
            self.report.count(jetgauge_core::Status::Flagged),
            self.elapsed.as_secs_f64() * 1e3
        )
    }
}

impl Criterion {
    pub fn run(&self) -> Outcome {
        let start = Instant::now();
        let mut report = (self.run)().unwrap_or_else(|e| {
            let mut r = Report::new(self.title);
            r.push(Check::new("runs without error", false, "ok", e));
            r
        });
        let elapsed = start.elapsed();
        report.push(Check::new(
            "runtime",
            elapsed <= self.budget,
            format!("<= {} s", self.budget.as_secs_f64()),
            format!("{:.3} s", elapsed.as_secs_f64()),
        ));
        Outcome {
            id: self.id,
            title: self.title,
            report,
            elapsed,
        }
    }
}

fn proca_criterion() -> Result<Report> {
    let mut r = suites::proca_suite(0)?;
    let printed = parse_printed_table();
    let computed = proca_table();
    let shape_ok = printed.len() == PROCA_DIM && printed.iter().all(|row| row.len() == PROCA_DIM);
    r.push(Check::exact(
        "printed table shape",
        "28x28",
        if shape_ok { "28x28" } else { "malformed" },
    ));
    let mut mismatches = Vec::new();
    for (i, row) in printed.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if computed.get(i, j).to_string() != v.to_string() {
                mismatches.push(format!("({},{})", i + 1, j + 1));
            }
        }
    }
    r.push(Check::exact(
        "784 printed entries reproduced",
        "0 mismatches",
        format!("{} mismatches {}", mismatches.len(), mismatches.join(" ")).trim_end(),
    ));
    Ok(r)
}

fn pheno_criterion() -> Result<Report> {
    suites::pheno_suite(&Constants::paper_tables())
}

pub fn criteria() -> Vec<Criterion> {
    let s = Duration::from_secs;
    vec![
        Criterion {
            id: 1,
            title: "jet signatures",
            budget: s(1),
            run: suites::jet_suite,
        },
        Criterion {
            id: 2,
            title: "so(4) structure",
            budget: s(1),
            run: suites::so4_suite,
        },
        Criterion {
            id: 3,
            title: "Killing identity",
            budget: s(1),
            run: suites::killing_suite,
        },
        Criterion {
            id: 4,
            title: "Proca table",
            budget: s(1),
            run: proca_criterion,
        },
        Criterion {
            id: 5,
            title: "mode censuses",
            budget: s(1),
            run: suites::census_suite,
        },
        Criterion {
            id: 6,
            title: "total isotropy",
            budget: s(1),
            run: suites::isotropic_suite,
        },
        Criterion {
            id: 7,
            title: "electroweak breaking",
            budget: s(1),
            run: suites::electroweak_suite,
        },
        Criterion {
            id: 8,
            title: "octonion battery",
            budget: s(5),
            run: || suites::octonion_suite(0),
        },
        Criterion {
            id: 9,
            title: "dynamics",
            budget: s(10),
            run: suites::dynamics_suite,
        },
        Criterion {
            id: 10,
            title: "phenomenology",
            budget: s(1),
            run: pheno_criterion,
        },
    ]
}
