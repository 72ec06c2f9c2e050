//! Command-line harness: table regeneration, figure datasets, reconciliation,
//! benchmarking and one-off evaluation.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::approximations::{eval_cdf_extended, list_approximations, ApproxId, Phi9Coefficients};
use crate::bench::{run_bench, MIN_EVALUATIONS};
use crate::error::Error;
use crate::inverse::{quantile_approx_extended, QuantileApproxId};
use crate::metrics::{compute_error_report, delta_curve, error_curve, inverse_table, GridSpec};
use crate::output::{format_sig3, Cell, Document, OutputFormat, View};
use crate::reconcile::{reconcile_phi9, render_report, ReconciliationReport};
use crate::reference::{ref_cdf, ref_quantile};

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "normapprox", version, about = "Normal CDF approximations: accuracy tables, figure data and benchmarks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct GridArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub grid_start: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub grid_stop: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub grid_step: Option<f64>,
}

impl GridArgs {
    /// Fills unset flags from `default` and validates the result.
    pub fn resolve(&self, default: GridSpec) -> Result<GridSpec, Error> {
        GridSpec::new(
            self.grid_start.unwrap_or(default.start),
            self.grid_stop.unwrap_or(default.stop),
            self.grid_step.unwrap_or(default.step),
        )
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "markdown")]
    pub format: OutputFormat,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// MXAE and MAE of all nine CDF approximations (default grid 0..=5 step 0.001).
    Table2 {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Quantile approximations and their differences at z = 0..=4.8 step 0.4.
    Table34 {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Error-curve datasets: signed CDF error against z, and quantile error against p.
    Curves {
        #[arg(long, default_value_t = 9, value_parser = clap::value_parser!(u32).range(1..=9))]
        approx: u32,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=3))]
        inverse: u32,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value = "csv")]
        format: OutputFormat,
        /// Directory receiving one file per dataset; stdout if omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Evaluation throughput of each approximation and the reference oracle.
    Bench {
        #[arg(long, default_value_t = MIN_EVALUATIONS)]
        evaluations: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Score every reading of the ninth approximation's coefficients.
    Reconcile {
        #[command(flatten)]
        grid: GridArgs,
        /// Report file; printed to stdout if omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Evaluate CDF approximations at one point (negative z by symmetry).
    Eval {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=9))]
        approx: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        z: f64,
        #[arg(long, value_enum, default_value = "markdown")]
        format: OutputFormat,
    },
    /// Evaluate quantile approximations at one probability (p < 0.5 by symmetry).
    Invert {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=3))]
        inverse: Option<u32>,
        #[arg(long)]
        p: f64,
        #[arg(long, value_enum, default_value = "markdown")]
        format: OutputFormat,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Io { .. } => CliError::Io(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn grid_meta(grid: &GridSpec) -> serde_json::Value {
    json!({ "start": grid.start, "stop": grid.stop, "step": grid.step, "count": grid.count })
}

/// Accuracy table for all nine approximations on `grid`.
pub fn table2_document(grid: &GridSpec) -> Result<Document, Error> {
    let coeffs = Phi9Coefficients::default();
    let mut doc = Document::new(
        "MXAE and MAE of the CDF approximations",
        &[
            "approximation",
            "name",
            "mxae",
            "mae",
            "mxae_location",
            "mxae_display",
            "mae_display",
            "reported_mxae",
            "reported_mae",
        ],
    )
    .meta("grid", grid_meta(grid))
    .meta("variant", coeffs.variant_tag.as_str());
    for d in list_approximations() {
        let r = compute_error_report(d.id, grid, Some(&coeffs))?;
        doc.push(vec![
            d.id.to_string().into(),
            d.name.into(),
            r.mxae.into(),
            r.mae.into(),
            r.mxae_location.into(),
            format_sig3(r.mxae).into(),
            format_sig3(r.mae).into(),
            d.reported_mxae.into(),
            d.reported_mae.into(),
        ]);
    }
    doc.views = vec![View {
        title: doc.title.clone(),
        columns: vec![0, 1, 5, 6, 2, 3, 4],
    }];
    Ok(doc)
}

/// Combined quantile table: approximations (first view) and their
/// differences from the true z (second view).
pub fn table34_document(grid: &GridSpec) -> Result<Document, Error> {
    let rows = inverse_table(&grid.points()?)?;
    let mut doc = Document::new(
        "Quantile approximations at selected z",
        &[
            "z", "p", "z1", "z2", "z3", "delta1", "delta2", "delta3", "z_display", "p_display",
            "z1_display", "z2_display", "z3_display", "delta1_display", "delta2_display",
            "delta3_display",
        ],
    )
    .meta("grid", grid_meta(grid));
    for r in &rows {
        let mut cells: Vec<Cell> = vec![r.z.into(), r.p.into()];
        cells.extend(r.approx.iter().map(|&v| Cell::from(v)));
        cells.extend(r.delta.iter().map(|&v| Cell::from(v)));
        cells.push(format!("{:.1}", r.z).into());
        cells.push(format!("{:.4}", r.p).into());
        cells.extend(r.approx.iter().map(|v| Cell::from(format!("{v:.4}"))));
        cells.extend(r.delta.iter().map(|v| Cell::from(format!("{v:.5}"))));
        doc.push(cells);
    }
    doc.views = vec![
        View {
            title: "Quantile approximations".into(),
            columns: vec![8, 9, 10, 11, 12],
        },
        View {
            title: "Differences from the true z".into(),
            columns: vec![8, 9, 13, 14, 15],
        },
    ];
    Ok(doc)
}

/// Signed error `approx - reference` against z.
pub fn cdf_curve_document(id: ApproxId, grid: &GridSpec) -> Result<Document, Error> {
    let coeffs = Phi9Coefficients::default();
    let curve = error_curve(id, grid, Some(&coeffs))?;
    let mut doc = Document::new(format!("{id} minus reference"), &["z", "error"])
        .meta("grid", grid_meta(grid))
        .meta("approximation", id.to_string());
    if id == ApproxId::Proposed {
        doc = doc.meta("variant", coeffs.variant_tag.as_str());
    }
    for pt in curve {
        doc.push(vec![pt.z.into(), pt.error.into()]);
    }
    Ok(doc)
}

/// `ẑ(p) - Φ⁻¹(p)` against p.
pub fn delta_curve_document(id: QuantileApproxId, grid: &GridSpec) -> Result<Document, Error> {
    let curve = delta_curve(id, grid)?;
    let mut doc = Document::new(format!("{id} minus exact quantile"), &["p", "delta"])
        .meta("grid", grid_meta(grid))
        .meta("approximation", id.to_string());
    for pt in curve {
        doc.push(vec![pt.p.into(), pt.delta.into()]);
    }
    Ok(doc)
}

pub fn bench_document(evaluations: u64) -> Result<Document, Error> {
    let results = run_bench(evaluations)?;
    let mut doc = Document::new(
        "Evaluation throughput",
        &["subject", "evaluations", "wall_time_s", "per_eval_ns"],
    )
    .meta("note", "timings are specific to this machine and build");
    for r in results {
        doc.push(vec![
            r.subject.label().into(),
            r.evaluations.into(),
            r.wall_time.as_secs_f64().into(),
            r.per_eval_ns.into(),
        ]);
    }
    Ok(doc)
}

pub fn eval_document(approx: Option<ApproxId>, z: f64) -> Result<Document, Error> {
    let reference = ref_cdf(z)?;
    let mut doc = Document::new(
        format!("CDF approximations at z = {z}"),
        &["approximation", "z", "value", "reference", "error"],
    )
    .meta("variant", Phi9Coefficients::default().variant_tag);
    let ids: Vec<ApproxId> = approx.map_or_else(|| ApproxId::ALL.to_vec(), |id| vec![id]);
    for id in ids {
        let v = eval_cdf_extended(id, z, None)?;
        doc.push(vec![id.to_string().into(), z.into(), v.into(), reference.into(), (v - reference).into()]);
    }
    doc.push(vec!["reference".into(), z.into(), reference.into(), reference.into(), 0.0.into()]);
    Ok(doc)
}

pub fn invert_document(inverse: Option<QuantileApproxId>, p: f64) -> Result<Document, Error> {
    let exact = ref_quantile(p)?;
    let mut doc = Document::new(
        format!("quantile approximations at p = {p}"),
        &["approximation", "p", "z", "reference", "delta"],
    );
    let ids: Vec<QuantileApproxId> =
        inverse.map_or_else(|| QuantileApproxId::ALL.to_vec(), |id| vec![id]);
    for id in ids {
        let z = quantile_approx_extended(id, p)?;
        doc.push(vec![id.to_string().into(), p.into(), z.into(), exact.into(), (z - exact).into()]);
    }
    doc.push(vec!["reference".into(), p.into(), exact.into(), exact.into(), 0.0.into()]);
    Ok(doc)
}

pub fn reconcile_summary(report: &ReconciliationReport) -> String {
    let sel = report.selected_result();
    format!(
        "selected {} mxae {:e} at z = {} (mae {:e}, success {}, escalated {})\n",
        report.selected,
        sel.report.mxae,
        sel.report.mxae_location,
        sel.report.mae,
        report.success,
        report.escalated
    )
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::Io(format!("cannot write output: {e}")))
}

fn deliver(out: &mut dyn Write, doc: &Document, args: &OutputArgs) -> Result<(), CliError> {
    let text = doc.render(args.format);
    match &args.output {
        Some(path) => write_file(path, &text),
        None => emit(out, &text),
    }
}

/// Runs one parsed command, writing results to `out` unless redirected to
/// a file.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Table2 { grid, out: args } => {
            let grid = grid.resolve(GridSpec::grid_b())?;
            deliver(out, &table2_document(&grid)?, &args)
        }
        Command::Table34 { grid, out: args } => {
            let grid = grid.resolve(GridSpec::inverse_table_default())?;
            deliver(out, &table34_document(&grid)?, &args)
        }
        Command::Curves {
            approx,
            inverse,
            grid,
            format,
            output,
        } => {
            let id = ApproxId::from_index(approx)?;
            let qid = QuantileApproxId::from_index(inverse)?;
            let grid = grid.resolve(GridSpec::grid_a())?;
            let fig1 = cdf_curve_document(id, &grid)?;
            let fig2 = delta_curve_document(qid, &GridSpec::delta_curve_default())?;
            match output {
                Some(dir) => {
                    fs::create_dir_all(&dir).map_err(|e| {
                        CliError::Io(format!("cannot create {}: {e}", dir.display()))
                    })?;
                    let ext = format.extension();
                    let f1 = dir.join(format!("fig1_phi{}.{ext}", id.index()));
                    let f2 = dir.join(format!("fig2_delta{}.{ext}", qid.index()));
                    write_file(&f1, &fig1.render(format))?;
                    write_file(&f2, &fig2.render(format))?;
                    emit(out, &format!("{}\n{}\n", f1.display(), f2.display()))
                }
                None => {
                    emit(out, &fig1.render(format))?;
                    emit(out, "\n")?;
                    emit(out, &fig2.render(format))
                }
            }
        }
        Command::Bench { evaluations, out: args } => deliver(out, &bench_document(evaluations)?, &args),
        Command::Reconcile { grid, output } => {
            let grid = grid.resolve(GridSpec::grid_b())?;
            let report = reconcile_phi9(&grid)?;
            let text = render_report(&report);
            match output {
                Some(path) => write_file(&path, &text)?,
                None => emit(out, &text)?,
            }
            emit(out, &reconcile_summary(&report))
        }
        Command::Eval { approx, z, format } => {
            let id = approx.map(ApproxId::from_index).transpose()?;
            emit(out, &eval_document(id, z)?.render(format))
        }
        Command::Invert { inverse, p, format } => {
            let id = inverse.map(QuantileApproxId::from_index).transpose()?;
            emit(out, &invert_document(id, p)?.render(format))
        }
    }
}

/// Parses `std::env::args`, runs, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
