//! `acps` command-line interface.
//!
//! Every command writes CSV files (`,` separated, `\n` terminated, header
//! row always present) into `--out-dir`. Numbers use the shortest
//! representation that round-trips to the same `f64`.
//!
//! Exit codes: 0 success, 1 domain/runtime error, 2 usage or parse error.

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::conformable::{discrepancy_report, DiscrepancyReport};
use crate::fracpoly::FractionalPolynomial;
use crate::metrics::{comparison_table, uniform_times, ErrorTable};
use crate::models::{default_sir, parse_model_config, sir_spec, ModelSpec, SIR_INFECTION_RATE, SIR_RECOVERY_RATE};
use crate::rk4::{rk4_integrate, Trajectory};
use crate::solver::{solve, AcpsSolution};
use crate::special::gamma;
use crate::Error;

#[derive(Debug, Parser)]
#[command(name = "acps", version, about = "Correctional power-series solver for Caputo fractional ODE systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a model and write series coefficients and sampled curves.
    Solve(SolveArgs),
    /// Compare the α = 1 series against a Runge–Kutta reference at t₀ + i·(t_end − t₀)/10.
    Compare(CompareArgs),
    /// Report Caputo vs conformable derivative of (t − t₀)^β.
    Conformable(ConformableArgs),
    /// Solve for several α and write one curve table per variable.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Builtin model name (`sir`) or path to a JSON model config.
    #[arg(long, default_value = "sir")]
    pub model: String,
    /// Infection rate of the builtin SIR model.
    #[arg(long)]
    pub p1: Option<f64>,
    /// Recovery rate of the builtin SIR model.
    #[arg(long)]
    pub p2: Option<f64>,
    /// Initial state of the builtin SIR model, e.g. `620,10,70`.
    #[arg(long, value_delimiter = ',', num_args = 3)]
    pub initial: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Fractional order; defaults to the model's.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = 9)]
    pub degree: usize,
    #[arg(long, default_value_t = 1.0)]
    pub t_end: f64,
    /// Number of sampling intervals on [t0, t_end].
    #[arg(long, default_value_t = 10)]
    pub samples: usize,
    /// Add a `scaled` column with cᵢ·Γ(iα+1).
    #[arg(long)]
    pub scaled: bool,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReferenceKind {
    Rk4,
    Acps,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 9)]
    pub degree: usize,
    #[arg(long, default_value_t = 1e-4)]
    pub rk_step: f64,
    #[arg(long, default_value_t = 1.0)]
    pub t_end: f64,
    #[arg(long, value_enum, default_value_t = ReferenceKind::Rk4)]
    pub reference: ReferenceKind,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct ConformableArgs {
    #[arg(long)]
    pub beta: f64,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Fractional orders; repeat the flag or separate with commas.
    #[arg(long, required = true, value_delimiter = ',')]
    pub alpha: Vec<f64>,
    #[arg(long, default_value_t = 9)]
    pub degree: usize,
    #[arg(long, default_value_t = 1.0)]
    pub t_end: f64,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Runtime(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Validation(_) => CliError::Usage(e.to_string()),
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `args` (including the program name) and runs the command.
/// Diagnostics go to stderr; the return value is the process exit code.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli.command) {
        Ok(written) => {
            let mut out = std::io::stdout().lock();
            for path in written {
                let _ = writeln!(out, "{}", path.display());
            }
            0
        }
        Err(e) => {
            eprintln!("acps: {e}");
            e.exit_code()
        }
    }
}

/// Runs a parsed command, returning the files written.
pub fn execute(command: &Command) -> CliResult<Vec<PathBuf>> {
    match command {
        Command::Solve(a) => cmd_solve(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Conformable(a) => cmd_conformable(a),
        Command::Sweep(a) => cmd_sweep(a),
    }
}

fn load_model(args: &ModelArgs) -> CliResult<ModelSpec<f64>> {
    let has_overrides = args.p1.is_some() || args.p2.is_some() || args.initial.is_some();
    if args.model == "sir" {
        if !has_overrides {
            return Ok(default_sir());
        }
        let base = default_sir();
        let initial = match &args.initial {
            Some(v) => [v[0], v[1], v[2]],
            None => [base.initial[0], base.initial[1], base.initial[2]],
        };
        return Ok(sir_spec(
            args.p1.unwrap_or(SIR_INFECTION_RATE),
            args.p2.unwrap_or(SIR_RECOVERY_RATE),
            initial,
            base.alpha,
        )?);
    }
    if has_overrides {
        return Err(CliError::Usage("--p1/--p2/--initial only apply to the builtin `sir` model".into()));
    }
    let text = fs::read_to_string(&args.model)
        .map_err(|e| CliError::Usage(format!("cannot read model `{}`: {e}", args.model)))?;
    parse_model_config(&text).map_err(|e| CliError::Usage(format!("{}: {e}", args.model)))
}

fn with_alpha(spec: ModelSpec<f64>, alpha: Option<f64>) -> CliResult<ModelSpec<f64>> {
    match alpha {
        Some(a) => Ok(spec.with_alpha(a).map_err(|e| CliError::Usage(e.to_string()))?),
        None => Ok(spec),
    }
}

fn check_interval(t0: f64, t_end: f64) -> CliResult<()> {
    if t_end.is_finite() && t_end > t0 {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--t-end {t_end} must exceed t0 {t0}")))
    }
}

fn write_file(dir: &Path, name: &str, contents: &str) -> CliResult<PathBuf> {
    fs::create_dir_all(dir).map_err(|e| CliError::Runtime(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}

pub fn cmd_solve(args: &SolveArgs) -> CliResult<Vec<PathBuf>> {
    let spec = with_alpha(load_model(&args.model)?, args.alpha)?;
    check_interval(spec.t0, args.t_end)?;
    if args.samples == 0 {
        return Err(CliError::Usage("--samples must be positive".into()));
    }
    let solution = solve(&spec.problem(args.degree)?)?;
    let times = uniform_times(spec.t0, args.t_end, args.samples);
    let coeffs = coefficients_csv(&spec.variable_names, &solution.series, args.scaled)?;
    let samples = samples_csv(&spec.variable_names, &solution, &times)?;
    Ok(vec![
        write_file(&args.out_dir, "coefficients.csv", &coeffs)?,
        write_file(&args.out_dir, "samples.csv", &samples)?,
    ])
}

pub fn cmd_compare(args: &CompareArgs) -> CliResult<Vec<PathBuf>> {
    if args.alpha != 1.0 {
        return Err(CliError::Runtime("compare requires --alpha 1".into()));
    }
    let spec = with_alpha(load_model(&args.model)?, Some(1.0))?;
    check_interval(spec.t0, args.t_end)?;
    let solution = solve(&spec.problem(args.degree)?)?;
    let tables = compare_tables(&spec, &solution, args.reference, args.rk_step, args.t_end)?;
    tables
        .iter()
        .map(|table| write_file(&args.out_dir, &format!("compare_{}.csv", table.variable), &table_csv(table)?))
        .collect()
}

/// Comparison tables at the 11 points `t₀ + i (t_end − t₀)/10`, one per variable.
pub fn compare_tables(
    spec: &ModelSpec<f64>,
    solution: &AcpsSolution<f64>,
    reference: ReferenceKind,
    rk_step: f64,
    t_end: f64,
) -> CliResult<Vec<ErrorTable<f64>>> {
    let times = uniform_times(spec.t0, t_end, 10);
    let trajectory = match reference {
        ReferenceKind::Acps => Trajectory::from_series(&solution.series, &times)?,
        ReferenceKind::Rk4 => {
            if !(rk_step > 0.0) {
                return Err(CliError::Runtime(format!("step size must be positive, got {rk_step}")));
            }
            let steps_per_sample = ((t_end - spec.t0) / 10.0 / rk_step).round();
            if steps_per_sample < 1.0 {
                return Err(CliError::Runtime(format!("--rk-step {rk_step} exceeds the sample spacing")));
            }
            rk4_integrate(&spec.field()?, &spec.initial, spec.t0, t_end, rk_step, steps_per_sample as usize)?
        }
    };
    spec.variable_names
        .iter()
        .enumerate()
        .map(|(k, name)| Ok(comparison_table(&trajectory, &solution.series, k, &times, name)?))
        .collect()
}

pub fn cmd_conformable(args: &ConformableArgs) -> CliResult<Vec<PathBuf>> {
    let report = discrepancy_report(args.beta, args.alpha)?;
    Ok(vec![write_file(&args.out_dir, "conformable.csv", &report_csv(&report)?)?])
}

pub fn cmd_sweep(args: &SweepArgs) -> CliResult<Vec<PathBuf>> {
    let base = load_model(&args.model)?;
    check_interval(base.t0, args.t_end)?;
    if args.samples == 0 {
        return Err(CliError::Usage("--samples must be positive".into()));
    }
    let specs = args.alpha.iter().map(|&a| with_alpha(base.clone(), Some(a))).collect::<CliResult<Vec<_>>>()?;
    let times = uniform_times(base.t0, args.t_end, args.samples);

    // one independent solve per order
    let solutions = std::thread::scope(|scope| {
        let handles: Vec<_> =
            specs.iter().map(|spec| scope.spawn(move || spec.problem(args.degree).and_then(|p| solve(&p)))).collect();
        handles.into_iter().map(|h| h.join().expect("solver thread panicked")).collect::<Result<Vec<_>, _>>()
    })?;

    let mut written = Vec::new();
    for (k, name) in base.variable_names.iter().enumerate() {
        let curves: Vec<&FractionalPolynomial<f64>> = solutions.iter().map(|s| &s.series[k]).collect();
        let csv = sweep_csv(&args.alpha, &curves, &times)?;
        written.push(write_file(&args.out_dir, &format!("sweep_{name}.csv"), &csv)?);
    }
    Ok(written)
}

/// Shortest round-trip decimal form of `x`; `NaN` for not-a-number.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        "NaN".to_string()
    } else {
        format!("{x:?}")
    }
}

struct CsvBuilder(csv::Writer<Vec<u8>>);

impl CsvBuilder {
    fn new() -> Self {
        Self(csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new()))
    }

    fn row<I, S>(&mut self, fields: I) -> CliResult<()>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.0.write_record(fields).map_err(|e| CliError::Runtime(e.to_string()))
    }

    fn finish(self) -> CliResult<String> {
        let bytes = self.0.into_inner().map_err(|e| CliError::Runtime(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Runtime(e.to_string()))
    }
}

/// `variable,index,coefficient[,scaled]`
pub fn coefficients_csv(names: &[String], series: &[FractionalPolynomial<f64>], scaled: bool) -> CliResult<String> {
    let mut w = CsvBuilder::new();
    if scaled {
        w.row(["variable", "index", "coefficient", "scaled"])?;
    } else {
        w.row(["variable", "index", "coefficient"])?;
    }
    for (name, poly) in names.iter().zip(series) {
        for (i, &c) in poly.coeffs().iter().enumerate() {
            let mut fields = vec![name.clone(), i.to_string(), format_number(c)];
            if scaled {
                let g = gamma(i as f64 * poly.alpha() + 1.0)?;
                fields.push(format_number(c * g));
            }
            w.row(&fields)?;
        }
    }
    w.finish()
}

/// `t,<var1>,<var2>,...`
pub fn samples_csv(names: &[String], solution: &AcpsSolution<f64>, times: &[f64]) -> CliResult<String> {
    let mut w = CsvBuilder::new();
    w.row(std::iter::once("t").chain(names.iter().map(String::as_str)))?;
    for &t in times {
        let state = solution.evaluate(t)?;
        w.row(std::iter::once(format_number(t)).chain(state.into_iter().map(format_number)))?;
    }
    w.finish()
}

/// `t,reference,acps,abs_err,rel_err`
pub fn table_csv(table: &ErrorTable<f64>) -> CliResult<String> {
    let mut w = CsvBuilder::new();
    w.row(["t", "reference", "acps", "abs_err", "rel_err"])?;
    for r in &table.rows {
        w.row([r.t, r.reference, r.approximation, r.absolute_error, r.relative_error].map(format_number))?;
    }
    w.finish()
}

/// `field,value`
pub fn report_csv(report: &DiscrepancyReport<f64>) -> CliResult<String> {
    let mut w = CsvBuilder::new();
    w.row(["field", "value"])?;
    w.row(["alpha".to_string(), format_number(report.alpha)])?;
    w.row(["beta".to_string(), format_number(report.beta_exp)])?;
    w.row(["m".to_string(), report.m.to_string()])?;
    w.row(["caputo_coefficient".to_string(), format_number(report.caputo_coefficient)])?;
    w.row(["conformable_coefficient".to_string(), format_number(report.conformable_coefficient)])?;
    w.row(["ratio".to_string(), format_number(report.ratio)])?;
    w.finish()
}

/// `t,alpha=<a1>,alpha=<a2>,...`
pub fn sweep_csv(alphas: &[f64], curves: &[&FractionalPolynomial<f64>], times: &[f64]) -> CliResult<String> {
    let mut w = CsvBuilder::new();
    w.row(std::iter::once("t".to_string()).chain(alphas.iter().map(|a| format!("alpha={}", format_number(*a)))))?;
    for &t in times {
        let values = curves.iter().map(|c| c.evaluate(t).map(format_number)).collect::<Result<Vec<_>, _>>()?;
        w.row(std::iter::once(format_number(t)).chain(values))?;
    }
    w.finish()
}
