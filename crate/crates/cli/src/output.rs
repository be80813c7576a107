//! Rendering of command results in text, JSON and CSV.

use std::io::Write;
use std::path::Path;

use anyhow::Context;
use clap::ValueEnum;
use jetgauge_core::report::Report;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// What a subcommand produced. `ok` decides the exit status.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub csv: String,
    pub ok: bool,
}

impl Output {
    pub fn render(&self, format: Format, full_precision: bool) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Csv => self.csv.clone(),
            Format::Json => {
                let v = if full_precision {
                    self.json.clone()
                } else {
                    round_json(&self.json)
                };
                let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
                s.push('\n');
                s
            }
        }
    }
}

/// Rounds every non-integer number to 6 significant digits.
pub fn round_json(v: &Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64");
            let r: f64 = format!("{x:.5e}").parse().expect("formatted float parses");
            serde_json::Number::from_f64(r)
                .map(Value::Number)
                .unwrap_or(Value::Null)
        }
        Value::Array(a) => Value::Array(a.iter().map(round_json).collect()),
        Value::Object(m) => {
            Value::Object(m.iter().map(|(k, x)| (k.clone(), round_json(x))).collect())
        }
        other => other.clone(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv_row<S: AsRef<str>>(cols: &[S]) -> String {
    let mut line = cols
        .iter()
        .map(|c| csv_field(c.as_ref()))
        .collect::<Vec<_>>()
        .join(",");
    line.push('\n');
    line
}

pub const REPORT_CSV_HEADER: [&str; 7] = [
    "suite",
    "check",
    "status",
    "expected",
    "actual",
    "tolerance",
    "note",
];

pub fn report_csv_rows(r: &Report) -> String {
    r.checks
        .iter()
        .map(|c| {
            csv_row(&[
                r.title.clone(),
                c.name.clone(),
                c.status.to_string().to_lowercase(),
                c.expected.clone(),
                c.actual.clone(),
                c.tolerance.map(|t| format!("{t:e}")).unwrap_or_default(),
                c.note.clone().unwrap_or_default(),
            ])
        })
        .collect()
}

pub fn reports_csv(reports: &[Report]) -> String {
    let mut s = csv_row(&REPORT_CSV_HEADER);
    for r in reports {
        s.push_str(&report_csv_rows(r));
    }
    s
}

pub fn report_output(r: Report) -> Output {
    Output {
        text: r.render_text(),
        csv: reports_csv(std::slice::from_ref(&r)),
        ok: r.passed(),
        json: serde_json::to_value(&r).expect("report serializes"),
    }
}

pub fn write_out(content: &str, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, content).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(content.as_bytes())?;
            so.flush()?;
            Ok(())
        }
    }
}
