//! `polygamy-lab`: command-line front end for the `polygamy-core` experiments.
//!
//! [`run`] parses arguments, executes one subcommand and returns the process
//! exit code. Reports are JSON, tables are CSV, and both go to `--out` or
//! standard output. Progress and summaries go to standard error unless
//! `--quiet` is set. Failures print one `error: <kind>: <reason>` line.

mod state_file;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use polygamy_core::audit::{
    beta_grid, beta_sweep, lemma_grid_audit, random_audit, tangle_audit, wstate_case, write_audit_csv,
    write_sweep_csv, write_tangle_csv, AuditConfig, AuditSummary, GlobalState, SweepSource,
};
use polygamy_core::bounds::{evaluate_bounds, BoundReport, EntanglementProfile, EvalOptions, ProfileSource};
use polygamy_core::measures::{assisted_measure, OptimizerOptions, PureMeasure};
use polygamy_core::states::SystemLayout;
use serde_json::{json, Value};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NUMERICAL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INPUT: u8 = 3;

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "POLYGAMY_LAB_THREADS";

#[derive(Debug, Parser)]
#[command(name = "polygamy-lab", version, about = "Polygamy-inequality experiments for entanglement of assistance")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Master seed for every random stream.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Suppress progress and summaries on standard error.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Debug, Args, Clone, Copy)]
struct OptimizerArgs {
    /// Independent optimizer restarts per estimate.
    #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u64).range(1..))]
    restarts: u64,
    /// Iteration cap per restart.
    #[arg(long, default_value_t = 500)]
    iterations: usize,
    /// Largest decomposition size tried.
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..))]
    ensemble_cap: u64,
}

impl OptimizerArgs {
    fn options(&self, seed: u64) -> OptimizerOptions {
        OptimizerOptions {
            restarts: self.restarts as usize,
            iterations: self.iterations,
            ensemble_cap: self.ensemble_cap as usize,
            seed,
            ..Default::default()
        }
    }
}

#[derive(Debug, Args)]
struct ProfileArgs {
    /// Comma-separated pairwise values E_0,E_1,...
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    profile: Vec<f64>,
    /// Left-hand side E(A|B0...); defaults to the profile sum.
    #[arg(long, allow_negative_numbers = true)]
    lhs: Option<f64>,
    /// Fix k instead of using the smallest feasible value.
    #[arg(long, allow_negative_numbers = true)]
    k: Option<f64>,
    /// Evaluate the profile in the given order.
    #[arg(long)]
    no_sort: bool,
    /// Treat the profile as optimizer estimates (looser verdict tolerance).
    #[arg(long)]
    estimated: bool,
    /// Verdict tolerance override.
    #[arg(long)]
    tolerance: Option<f64>,
}

impl ProfileArgs {
    fn resolve(&self) -> Result<(f64, EntanglementProfile, EvalOptions), Failure> {
        if self.profile.is_empty() {
            return Err(Failure::input("profile", "--profile needs at least one value".into()));
        }
        let source = if self.estimated { ProfileSource::Estimated } else { ProfileSource::Analytic };
        let profile = EntanglementProfile::new(self.profile.clone(), source)?;
        let lhs = self.lhs.unwrap_or_else(|| self.profile.iter().sum());
        if let Some(t) = self.tolerance {
            if !(t.is_finite() && t >= 0.0) {
                return Err(Failure::input("tolerance", format!("tolerance {t} must be finite and nonnegative")));
            }
        }
        let opts = EvalOptions { k_override: self.k, sort: !self.no_sort, tolerance: self.tolerance };
        Ok((lhs, profile, opts))
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SourceKind {
    Wstate,
    Profile,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MeasureKind {
    Entropy,
    Tangle,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bound report for the three-qubit W state.
    VerifyWstate {
        #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
        beta: f64,
    },
    /// CSV of every bound as a function of beta.
    SweepBeta {
        #[arg(long, value_enum, default_value_t = SourceKind::Wstate)]
        source: SourceKind,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        start: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        stop: f64,
        #[arg(long, default_value_t = 101)]
        steps: usize,
        #[command(flatten)]
        profile: ProfileArgs,
    },
    /// Minimum of the weight-factor inequality residual over a grid.
    LemmaCheck {
        /// Grid points per axis.
        #[arg(long, default_value_t = 50)]
        resolution: usize,
    },
    /// Bound checks on seeded random states; writes one CSV row per trial and beta.
    RandomAudit {
        /// Comma-separated local dimensions; the first is subsystem A.
        #[arg(long, value_delimiter = ',', default_value = "2,2,2")]
        layout: Vec<usize>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, value_delimiter = ',', default_value = "0.3,0.5,0.8", allow_negative_numbers = true)]
        betas: Vec<f64>,
        /// Audit marginals of random pure states with an ancilla of this dimension.
        #[arg(long)]
        mixed_ancilla: Option<usize>,
        /// Also write the per-beta summary as JSON to this file.
        #[arg(long)]
        summary_out: Option<PathBuf>,
        #[command(flatten)]
        optimizer: OptimizerArgs,
    },
    /// Three-qubit tangle polygamy checks on seeded random states.
    TangleAudit {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long)]
        summary_out: Option<PathBuf>,
        #[command(flatten)]
        optimizer: OptimizerArgs,
    },
    /// Assisted measure of a state read from a JSON file.
    ComputeEoa {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = MeasureKind::Entropy)]
        measure: MeasureKind,
        #[command(flatten)]
        optimizer: OptimizerArgs,
    },
    /// Bound report for an explicit profile.
    Bounds {
        #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
        beta: f64,
        #[command(flatten)]
        profile: ProfileArgs,
    },
}

/// A failed run: exit code plus a one-line reason.
#[derive(Debug)]
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn input(kind: &'static str, message: String) -> Self {
        Self { code: EXIT_INPUT, kind, message }
    }

    fn io(path: Option<&Path>, err: io::Error) -> Self {
        let message = match path {
            Some(p) => format!("{}: {err}", p.display()),
            None => err.to_string(),
        };
        Self { code: EXIT_NUMERICAL, kind: "io", message }
    }
}

impl From<polygamy_core::Error> for Failure {
    fn from(err: polygamy_core::Error) -> Self {
        use polygamy_core::Error as E;
        let (code, kind) = match &err {
            E::Convergence { .. } => (EXIT_NUMERICAL, "convergence"),
            E::Positivity(_) => (EXIT_NUMERICAL, "positivity"),
            E::Shape(_) => (EXIT_INPUT, "shape"),
            E::Size { .. } => (EXIT_INPUT, "size"),
            E::Layout(_) => (EXIT_INPUT, "layout"),
            E::Domain(_) => (EXIT_INPUT, "domain"),
            E::Range(_) => (EXIT_INPUT, "range"),
            E::InvalidState(_) => (EXIT_INPUT, "invalid_state"),
        };
        Self { code, kind, message: err.to_string() }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code.
pub fn run<S: AsRef<str>>(args: &[S]) -> u8 {
    let cli = match Cli::try_parse_from(args.iter().map(AsRef::as_ref)) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match thread_count() {
        Ok(None) => execute(&cli),
        Ok(Some(n)) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(Failure { code: EXIT_NUMERICAL, kind: "threads", message: e.to_string() }),
        },
        Err(f) => Err(f),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("error: {}: {}", f.kind, f.message.replace(['\n', '\r'], " "));
            f.code
        }
    }
}

fn thread_count() -> Result<Option<usize>, Failure> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(Failure {
                code: EXIT_USAGE,
                kind: "usage",
                message: format!("{THREADS_ENV}={v:?} is not a positive integer"),
            }),
        },
    }
}

fn execute(cli: &Cli) -> Result<(), Failure> {
    let common = &cli.common;
    match &cli.command {
        Command::VerifyWstate { beta } => {
            let report = wstate_case(*beta)?;
            emit_json(common, &report_json(&report))
        }
        Command::Bounds { beta, profile } => {
            let (lhs, profile, opts) = profile.resolve()?;
            let report = evaluate_bounds(lhs, &profile, *beta, &opts)?;
            emit_json(common, &report_json(&report))
        }
        Command::SweepBeta { source, start, stop, steps, profile } => {
            let source = match source {
                SourceKind::Wstate => SweepSource::WState,
                SourceKind::Profile => {
                    let (lhs, profile, opts) = profile.resolve()?;
                    SweepSource::Profile { lhs, profile, opts }
                }
            };
            let rows = beta_sweep(&source, &beta_grid(*start, *stop, *steps)?)?;
            emit(common, |w| write_sweep_csv(w, &rows))
        }
        Command::LemmaCheck { resolution } => {
            let min = lemma_grid_audit(*resolution)?;
            let holds = min >= -1e-12;
            emit_json(common, &json!({ "resolution": resolution, "min_residual": min, "holds": holds }))?;
            if holds {
                Ok(())
            } else {
                Err(Failure { code: EXIT_NUMERICAL, kind: "lemma", message: format!("minimum residual {min:e} is negative") })
            }
        }
        Command::RandomAudit { layout, trials, betas, mixed_ancilla, summary_out, optimizer } => {
            let layout = SystemLayout::new(layout.clone())?;
            let mut config = AuditConfig::new(layout, *trials, betas.clone(), common.seed);
            config.optimizer = optimizer.options(common.seed);
            if let Some(d) = mixed_ancilla {
                config.global = GlobalState::Mixed { ancilla_dim: *d };
            }
            let outcome = random_audit(&config)?;
            emit(common, |w| write_audit_csv(w, &outcome.records))?;
            report_summaries(common, &outcome.summaries, summary_out.as_deref())
        }
        Command::TangleAudit { trials, summary_out, optimizer } => {
            let outcome = tangle_audit(*trials, common.seed, &optimizer.options(common.seed))?;
            emit(common, |w| write_tangle_csv(w, &outcome.records))?;
            report_summaries(common, std::slice::from_ref(&outcome.summary), summary_out.as_deref())
        }
        Command::ComputeEoa { input, measure, optimizer } => {
            let rho = state_file::load(input)?;
            let measure = match measure {
                MeasureKind::Entropy => PureMeasure::Entropy,
                MeasureKind::Tangle => PureMeasure::Tangle,
            };
            let estimate = assisted_measure(&rho, measure, &optimizer.options(common.seed))?;
            let witness: Vec<Value> = estimate
                .witness
                .members()
                .iter()
                .map(|(p, psi)| {
                    let amps: Vec<[f64; 2]> = psi.amplitudes().iter().map(|z| [z.re, z.im]).collect();
                    json!({ "probability": p, "amplitudes": amps })
                })
                .collect();
            emit_json(
                common,
                &json!({
                    "measure": measure.name(),
                    "dims": rho.layout().dims(),
                    "value": estimate.value,
                    "reconstruction_residual": estimate.witness.residual(&rho),
                    "diagnostics": estimate.diagnostics,
                    "witness": witness,
                }),
            )
        }
    }
}

fn report_json(report: &BoundReport) -> Value {
    let mut value = serde_json::to_value(report).expect("reports serialize");
    if let Value::Object(map) = &mut value {
        map.insert("gap_thm1".into(), json!(report.gap_thm1()));
        map.insert("gap_kim".into(), json!(report.gap_kim()));
        map.insert("residual".into(), json!(report.residual()));
    }
    value
}

fn report_summaries(common: &Common, summaries: &[AuditSummary], path: Option<&Path>) -> Result<(), Failure> {
    let value = serde_json::to_value(summaries).expect("summaries serialize");
    if let Some(path) = path {
        write_to(path, |w| {
            serde_json::to_writer_pretty(&mut *w, &value)?;
            writeln!(w)
        })?;
    }
    if !common.quiet {
        for s in summaries {
            eprintln!("{}", serde_json::to_string(s).expect("summaries serialize"));
        }
    }
    Ok(())
}

fn emit_json(common: &Common, value: &Value) -> Result<(), Failure> {
    emit(common, |w| {
        serde_json::to_writer_pretty(&mut *w, value)?;
        writeln!(w)
    })
}

fn emit<F>(common: &Common, body: F) -> Result<(), Failure>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match &common.out {
        Some(path) => write_to(path, body),
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            body(&mut lock).and_then(|_| lock.flush()).map_err(|e| Failure::io(None, e))
        }
    }
}

fn write_to<F>(path: &Path, body: F) -> Result<(), Failure>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    let file = File::create(path).map_err(|e| Failure::io(Some(path), e))?;
    let mut w = BufWriter::new(file);
    body(&mut w).and_then(|_| w.flush()).map_err(|e| Failure::io(Some(path), e))
}
