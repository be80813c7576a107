mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use jetgauge_core::dynamics::{run_simulation, OutputFormat, SimConfig};
use jetgauge_core::jetspace::{enumerate_basis, signature};
use jetgauge_core::liealg::LieElement;
use jetgauge_core::octonion::{parse_im, stabilizer_su3, unit_product, G2_LABELS};
use jetgauge_core::pheno::{self, Constants, PhenoReport};
use jetgauge_core::proca::{
    find_isotropic_basis, h_metric, isotropic_23_basis, isotropic_33_basis, mode_census,
    proca_table, SectorLabel, PROCA_DIM,
};
use jetgauge_core::report::{Report, Status};
use jetgauge_core::{electroweak, suites};
use serde_json::json;

use output::{csv_row, report_output, reports_csv, write_out, Format, Output};

#[derive(Parser)]
#[command(
    name = "jetgauge",
    version,
    about = "Exact and numerical checks for jet-space gauge structures"
)]
struct Cli {
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// JSON file overriding physical constants.
    #[arg(long, global = true)]
    constants: Option<PathBuf>,
    /// Keep full float precision in JSON.
    #[arg(long, global = true)]
    full_precision: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Timelike/spacelike counts of the jet basis.
    Signature {
        #[arg(long, default_value_t = 4)]
        axes: usize,
        #[arg(long, default_value_t = 3)]
        order: usize,
        /// Also list the basis monomials per order.
        #[arg(long)]
        list: bool,
    },
    /// The 28x28 table tr(h X_ij X_ij).
    ProcaTable,
    /// Positive/negative/zero mode counts per sector.
    Census {
        /// Sector as "a,b"; all sectors when omitted.
        #[arg(long)]
        sector: Option<String>,
    },
    /// Mass matrix, mixing angle and spectrum for g' = 1, g = 2.
    Electroweak,
    /// Octonion checks.
    Octonion {
        #[command(subcommand)]
        action: OctonionAction,
    },
    /// Stabilizer of an imaginary octonion inside g2.
    Su3 {
        /// "e4" or seven comma-separated rationals.
        #[arg(long, default_value = "e4")]
        fix: String,
    },
    /// Totally isotropic bases and their U(1)_Y invariance.
    Isotropic {
        #[arg(long)]
        sector: Option<String>,
    },
    /// Mass scales and electroweak consistency numbers.
    Pheno {
        #[command(subcommand)]
        action: PhenoAction,
        /// Use M_W = 80.379, the value the printed tables were evaluated with.
        #[arg(long, global = true)]
        table_inputs: bool,
    },
    /// Integrate a charged particle from a JSON config.
    Simulate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run every exact suite.
    VerifyAll,
}

#[derive(Subcommand)]
enum OctonionAction {
    /// Table, cross product, g2 and stabilizer battery.
    Verify,
    /// The multiplication table of the units.
    Table,
}

#[derive(Subcommand, Clone, Copy)]
enum PhenoAction {
    Table1,
    Consistency,
    Predict,
}

/// Bad input; every error exits with status 2.
fn input_err(msg: impl Into<String>) -> anyhow::Error {
    anyhow::anyhow!(msg.into())
}

fn parse_sector(s: &str) -> anyhow::Result<SectorLabel> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b] = parts.as_slice() else {
        return Err(input_err(format!(
            "sector must look like \"3,3\", got \"{s}\""
        )));
    };
    let (a, b) = (
        a.parse()
            .map_err(|_| input_err(format!("bad sector '{s}'")))?,
        b.parse()
            .map_err(|_| input_err(format!("bad sector '{s}'")))?,
    );
    SectorLabel::new(a, b).map_err(|e| input_err(e.to_string()))
}

fn load_constants(path: Option<&Path>, table_inputs: bool) -> anyhow::Result<Constants> {
    match path {
        Some(p) => {
            let s = std::fs::read_to_string(p)
                .map_err(|e| input_err(format!("{}: {e}", p.display())))?;
            Constants::from_json_str(&s).map_err(|e| input_err(e.to_string()))
        }
        None if table_inputs => Ok(Constants::paper_tables()),
        None => Ok(Constants::default()),
    }
}

fn cmd_signature(axes: usize, order: usize, list: bool) -> anyhow::Result<Output> {
    let (p, q) = signature(axes, order).map_err(|e| input_err(e.to_string()))?;
    let basis = enumerate_basis(axes, order)?;
    let mut text = format!("({p}, {q})\n");
    let mut csv = csv_row(&["order", "timelike", "label"]);
    let mut orders = Vec::new();
    for k in 1..=order {
        let (minus, plus) = (basis.class_labels(k, true), basis.class_labels(k, false));
        if list {
            text.push_str(&format!("J^{k}_-: {}\n", minus.join(" ")));
            text.push_str(&format!("J^{k}_+: {}\n", plus.join(" ")));
        }
        for (t, labels) in [(true, &minus), (false, &plus)] {
            for l in labels {
                csv.push_str(&csv_row(&[k.to_string(), t.to_string(), l.clone()]));
            }
        }
        orders.push(json!({"order": k, "timelike": minus, "spacelike": plus}));
    }
    Ok(Output {
        text,
        csv,
        json: json!({"axes": axes, "order": order, "p": p, "q": q, "basis": orders}),
        ok: true,
    })
}

fn cmd_proca_table() -> Output {
    let t = proca_table().rows_as_strings();
    let text: String = t
        .iter()
        .map(|r| r.iter().map(|x| format!("{x:>3}")).collect::<String>() + "\n")
        .collect();
    let csv: String = t.iter().map(|r| csv_row(r)).collect();
    let h: Vec<String> = h_metric()
        .as_slice()
        .iter()
        .map(ToString::to_string)
        .collect();
    let ints: Vec<Vec<i64>> = t
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| x.parse().expect("integer entries"))
                .collect()
        })
        .collect();
    Output {
        text,
        csv,
        json: json!({"dim": PROCA_DIM, "h": h, "table": ints}),
        ok: true,
    }
}

fn cmd_census(sector: Option<&str>) -> anyhow::Result<Output> {
    let sectors = match sector {
        Some(s) => vec![parse_sector(s)?],
        None => SectorLabel::all(),
    };
    let mut text = format!(
        "{:<8}{:>9}{:>9}{:>6}\n",
        "sector", "positive", "negative", "zero"
    );
    let mut csv = csv_row(&["sector", "positive", "negative", "zero"]);
    let mut rows = Vec::new();
    for s in sectors {
        let c = mode_census(s)?;
        text.push_str(&format!(
            "{:<8}{:>9}{:>9}{:>6}\n",
            s.to_string(),
            c.positive,
            c.negative,
            c.zero
        ));
        csv.push_str(&csv_row(&[
            s.to_string(),
            c.positive.to_string(),
            c.negative.to_string(),
            c.zero.to_string(),
        ]));
        rows.push(json!({"sector": s.to_string(), "positive": c.positive, "negative": c.negative, "zero": c.zero}));
    }
    let report = suites::census_suite()?;
    text.push('\n');
    text.push_str(&report.render_text());
    Ok(Output {
        text,
        csv,
        ok: report.passed(),
        json: json!({"census": rows, "report": report}),
    })
}

fn matrix_text(rows: &[Vec<String>]) -> String {
    let w = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    rows.iter()
        .map(|r| {
            format!(
                "  [{}]\n",
                r.iter()
                    .map(|x| format!("{x:>w$}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            )
        })
        .collect()
}

fn cmd_electroweak() -> anyhow::Result<Output> {
    let s = electroweak::summary();
    let report = suites::electroweak_suite()?;
    let mut text = format!(
        "mass matrix ({} x):\n{}",
        s.mass_prefactor,
        matrix_text(&s.mass_matrix)
    );
    text.push_str(&format!(
        "cos theta_W = {}, sin theta_W = {}, sin^2 theta_W = {}\n",
        s.cos_theta, s.sin_theta, s.sin2_theta
    ));
    text.push_str(&format!("rotated:\n{}", matrix_text(&s.mixed_matrix)));
    text.push_str(&format!(
        "spectrum (photon, Z, W, W): {}\n",
        s.spectrum.join(", ")
    ));
    text.push_str(&format!("M_Z/M_W = {} = {:.6}\n", s.ratio, s.ratio_float));
    text.push_str(&format!(
        "sin^2 theta_W: {} here, {} +/- {} measured\n\n",
        s.sin2_theory, s.sin2_experiment, s.sin2_experiment_err
    ));
    text.push_str(&report.render_text());
    let mut csv = csv_row(&["quantity", "value"]);
    for (k, v) in [
        ("cos_theta", s.cos_theta.clone()),
        ("sin_theta", s.sin_theta.clone()),
        ("sin2_theta", s.sin2_theta.clone()),
        ("photon", s.spectrum[0].clone()),
        ("z", s.spectrum[1].clone()),
        ("w1", s.spectrum[2].clone()),
        ("w2", s.spectrum[3].clone()),
        ("ratio", s.ratio.clone()),
    ] {
        csv.push_str(&csv_row(&[k.to_string(), v]));
    }
    let mut json = serde_json::to_value(&s)?;
    json["report"] = serde_json::to_value(&report)?;
    Ok(Output {
        text,
        csv,
        json,
        ok: report.passed(),
    })
}

fn cmd_octonion_table() -> Output {
    let name = |k: usize| {
        if k == 0 {
            "1".to_string()
        } else {
            format!("e{k}")
        }
    };
    let cell = |i: usize, j: usize| {
        let (s, k) = unit_product(i, j);
        format!("{}{}", if s < 0 { "-" } else { "" }, name(k))
    };
    let mut text = format!("{:>4}", "");
    let mut csv = csv_row(
        &std::iter::once(String::new())
            .chain((0..8).map(name))
            .collect::<Vec<_>>(),
    );
    for j in 0..8 {
        text.push_str(&format!("{:>4}", name(j)));
    }
    text.push('\n');
    let mut rows = Vec::new();
    for i in 0..8 {
        let row: Vec<String> = (0..8).map(|j| cell(i, j)).collect();
        text.push_str(&format!(
            "{:>4}{}\n",
            name(i),
            row.iter().map(|c| format!("{c:>4}")).collect::<String>()
        ));
        csv.push_str(&csv_row(
            &std::iter::once(name(i))
                .chain(row.iter().cloned())
                .collect::<Vec<_>>(),
        ));
        rows.push(row);
    }
    Output {
        text,
        csv,
        json: json!({"table": rows}),
        ok: true,
    }
}

fn cmd_su3(fix: &str, seed: u64) -> anyhow::Result<Output> {
    let z = parse_im(fix).map_err(|e| input_err(e.to_string()))?;
    let st = stabilizer_su3(&z).map_err(|e| input_err(e.to_string()))?;
    let mut report = Report::new(format!("stabilizer of {z}"));
    report.push(jetgauge_core::Check::exact("dimension", 8, st.dim()));
    report.push(jetgauge_core::Check::new(
        "bracket closure",
        st.is_closed()?,
        true,
        st.is_closed()?,
    ));
    let nd = st.killing_negative_definite()?;
    report.push(jetgauge_core::Check::new(
        "Killing form negative definite",
        nd,
        true,
        nd,
    ));
    report.push(jetgauge_core::Check::exact(
        "rank",
        2,
        st.rank_estimate(seed)?,
    ));
    let basis: Vec<String> = st
        .coords
        .iter()
        .map(|c| {
            let terms: Vec<String> = c
                .iter()
                .zip(G2_LABELS)
                .filter(|(x, _)| !x.is_zero())
                .map(|(x, l)| {
                    if *x == jetgauge_core::QuadScalar::one() {
                        l.to_string()
                    } else {
                        format!("({x}) {l}")
                    }
                })
                .collect();
            terms.join(" + ")
        })
        .collect();
    let mut text = format!("stabilizer of {z} in g2, basis:\n");
    for b in &basis {
        text.push_str(&format!("  {b}\n"));
    }
    text.push('\n');
    text.push_str(&report.render_text());
    let mut csv = csv_row(&["index", "element"]);
    for (i, b) in basis.iter().enumerate() {
        csv.push_str(&csv_row(&[(i + 1).to_string(), b.clone()]));
    }
    Ok(Output {
        text,
        csv,
        ok: report.passed(),
        json: json!({"z": z.to_strings(), "basis": basis, "report": report}),
    })
}

fn element_terms(v: &LieElement) -> String {
    v.coeffs()
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((i, j), c)| {
            let c = c.to_string();
            match c.as_str() {
                "1" => format!("+X{i},{j}"),
                "-1" => format!("-X{i},{j}"),
                _ if c.starts_with('-') => format!("{c} X{i},{j}"),
                _ => format!("+{c} X{i},{j}"),
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_isotropic(sector: Option<&str>) -> anyhow::Result<Output> {
    let sectors = match sector {
        Some(s) => vec![parse_sector(s)?],
        None => vec![SectorLabel::new(3, 3)?, SectorLabel::new(2, 3)?],
    };
    let mut text = String::new();
    let mut csv = csv_row(&["sector", "index", "vector"]);
    let mut bases = Vec::new();
    for s in sectors {
        let b = match (s.alpha, s.beta) {
            (3, 3) => isotropic_33_basis(),
            (2, 3) => isotropic_23_basis(),
            _ => find_isotropic_basis(s).map_err(|e| input_err(e.to_string()))?,
        };
        text.push_str(&format!("{s}: {} vectors\n", b.vectors.len()));
        let terms: Vec<String> = b.vectors.iter().map(element_terms).collect();
        for (i, t) in terms.iter().enumerate() {
            text.push_str(&format!("  v{}: {t}\n", i + 1));
            csv.push_str(&csv_row(&[s.to_string(), (i + 1).to_string(), t.clone()]));
        }
        bases.push(json!({"sector": s.to_string(), "vectors": terms}));
    }
    let report = suites::isotropic_suite()?;
    text.push('\n');
    text.push_str(&report.render_text());
    Ok(Output {
        text,
        csv,
        ok: report.passed(),
        json: json!({"bases": bases, "report": report}),
    })
}

fn pheno_output(p: PhenoReport) -> Output {
    let mut text = String::new();
    let mut csv = csv_row(&["name", "value", "unit", "reference", "rel_deviation"]);
    for v in &p.values {
        text.push_str(&format!(
            "{:<48} {:>14.6e} {:<8} ref {:>12.6e}  dev {:+.2e}\n",
            v.name, v.value, v.unit, v.reference, v.rel_deviation
        ));
        csv.push_str(&csv_row(&[
            v.name.clone(),
            format!("{:e}", v.value),
            v.unit.clone(),
            format!("{:e}", v.reference),
            format!("{:e}", v.rel_deviation),
        ]));
    }
    text.push('\n');
    text.push_str(&p.report.render_text());
    Output {
        text,
        csv,
        ok: p.report.passed(),
        json: serde_json::to_value(&p).expect("serializable"),
    }
}

fn cmd_pheno(action: PhenoAction, k: &Constants) -> anyhow::Result<Output> {
    let p = match action {
        PhenoAction::Table1 => pheno::table1(k)?,
        PhenoAction::Consistency => pheno::consistency(k),
        PhenoAction::Predict => pheno::predicted_masses(k),
    };
    Ok(pheno_output(p))
}

/// `--format` wins over the config's output format; CSV otherwise.
fn cmd_simulate(
    config: &Path,
    format: Option<Format>,
    out: Option<&Path>,
) -> anyhow::Result<(Output, Format, Option<PathBuf>)> {
    let s = std::fs::read_to_string(config)
        .map_err(|e| input_err(format!("{}: {e}", config.display())))?;
    let cfg: SimConfig =
        serde_json::from_str(&s).map_err(|e| input_err(format!("{}: {e}", config.display())))?;
    let traj = run_simulation(&cfg).map_err(|e| input_err(e.to_string()))?;
    let mut csv = Vec::new();
    traj.write_csv(&mut csv)?;
    let csv = String::from_utf8(csv)?;
    let cfg_out = cfg.output.as_ref();
    let format = format.unwrap_or(match cfg_out.map(|o| o.format) {
        Some(OutputFormat::Json) => Format::Json,
        _ => Format::Csv,
    });
    let path = out
        .map(Path::to_path_buf)
        .or_else(|| cfg_out.and_then(|o| o.path.clone()).map(PathBuf::from));
    let out = Output {
        text: csv.clone(),
        csv,
        json: serde_json::to_value(&traj)?,
        ok: true,
    };
    Ok((out, format, path))
}

fn cmd_verify_all(seed: u64) -> anyhow::Result<Output> {
    let reports = suites::verify_all(seed)?;
    let mut text = String::new();
    for r in &reports {
        text.push_str(&r.render_text());
        text.push('\n');
    }
    let count = |s: Status| reports.iter().map(|r| r.count(s)).sum::<usize>();
    let ok = reports.iter().all(Report::passed);
    text.push_str(&format!(
        "total: {} pass, {} fail, {} flagged\n",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Flagged)
    ));
    Ok(Output {
        text,
        csv: reports_csv(&reports),
        json: json!({
            "suites": reports,
            "pass": count(Status::Pass),
            "fail": count(Status::Fail),
            "flagged": count(Status::Flagged),
        }),
        ok,
    })
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let mut format = cli.format;
    let mut out = cli.out.clone();
    let output = match cli.command {
        Command::Signature { axes, order, list } => cmd_signature(axes, order, list)?,
        Command::ProcaTable => cmd_proca_table(),
        Command::Census { sector } => cmd_census(sector.as_deref())?,
        Command::Electroweak => cmd_electroweak()?,
        Command::Octonion { action } => match action {
            OctonionAction::Verify => report_output(suites::octonion_suite(cli.seed)?),
            OctonionAction::Table => cmd_octonion_table(),
        },
        Command::Su3 { fix } => cmd_su3(&fix, cli.seed)?,
        Command::Isotropic { sector } => cmd_isotropic(sector.as_deref())?,
        Command::Pheno {
            action,
            table_inputs,
        } => {
            let k = load_constants(cli.constants.as_deref(), table_inputs)?;
            cmd_pheno(action, &k)?
        }
        Command::Simulate { config } => {
            let (o, f, path) = cmd_simulate(&config, cli.format, cli.out.as_deref())?;
            format = Some(f);
            out = path;
            o
        }
        Command::VerifyAll => cmd_verify_all(cli.seed)?,
    };
    let rendered = output.render(format.unwrap_or(Format::Text), cli.full_precision);
    write_out(&rendered, out.as_deref()).context("writing output")?;
    Ok(output.ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
