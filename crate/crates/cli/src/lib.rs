//! Command layer for the `plucker` binary.
//!
//! [`run`] parses arguments and returns the exit code with the captured
//! output, so the commands can be driven in-process by tests.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage or input error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use plucker_core::grassmann::max_relation_residual;
use plucker_core::harness::{
    run_invariance, run_monotonicity, InvarianceConfig, MonotonicityConfig,
};
use plucker_core::hyperdet::{levay_convention, LevayConvention};
use plucker_core::io::{fmt_f64, parse_state, plucker_csv, state_to_json, to_json};
use plucker_core::oracles::{audit, AuditOptions};
use plucker_core::tolerance::{self, Tolerances};
use plucker_core::{
    bipartition_matrix, hyperdet_222, hyperdet_via_diophantine, hyperdet_via_levay,
    plucker_coordinates, three_tangle, total_monotone, Complex64, MonotoneReport, NamedState,
    PureState,
};
use serde::Serialize;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "plucker",
    version,
    about = "Plücker-coordinate entanglement monotones for pure multi-qubit states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Per-qubit monotones, total monotone, and (for 3 qubits) the hyperdeterminant.
    Compute(StateCommand),
    /// Plücker coordinates of every bipartition and their relation residuals.
    Plucker(StateCommand),
    /// Hyperdeterminant of a 3-qubit state by three routes.
    Hyperdet(StateCommand),
    /// Runs every applicable oracle against the main code paths.
    Check(CheckCommand),
    /// Randomized local-unitary and SL(2,C) invariance trials.
    Invariance(TrialCommand),
    /// Randomized one-step LOCC trials; reports violation statistics.
    Monotonicity(TrialCommand),
    /// Emits a Haar-random state file.
    Random(RandomCommand),
}

#[derive(Debug, Args)]
pub struct StateSource {
    /// State JSON file.
    #[arg(long, conflicts_with = "named", required_unless_present = "named")]
    pub input: Option<PathBuf>,
    /// Named state: GHZ or W.
    #[arg(long, requires = "qubits")]
    pub named: Option<String>,
    /// Number of qubits for a named state.
    #[arg(long)]
    pub qubits: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        Ok(x) => Err(format!("must be a positive finite number, got {x}")),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Args)]
pub struct StateCommand {
    #[command(flatten)]
    pub source: StateSource,
    /// Normalization constant N of the total monotone.
    #[arg(long, default_value_t = 1.0, value_parser = positive)]
    pub normalization: f64,
    /// Residual tolerance.
    #[arg(long, value_parser = positive)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CheckCommand {
    #[command(flatten)]
    pub source: StateSource,
    #[arg(long, value_parser = positive)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Perturb one Plücker coordinate before the relation check (negative control).
    #[arg(long, hide = true)]
    pub corrupt_plucker: bool,
}

#[derive(Debug, Args)]
pub struct TrialCommand {
    /// Number of qubits.
    #[arg(long = "m", visible_alias = "qubits", default_value_t = 3, value_parser = clap::value_parser!(u64).range(2..=12))]
    pub m: u64,
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Relative invariance tolerance; the hyperdeterminant gate is ten times this.
    #[arg(long, value_parser = positive)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = 1.0, value_parser = positive)]
    pub normalization: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct RandomCommand {
    #[arg(long)]
    pub qubits: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Self {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {}\n", msg.into()),
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    seed: Option<u64>,
    normalization: f64,
    convention: &'a LevayConvention,
    #[serde(flatten)]
    body: T,
}

fn envelope<T: Serialize>(
    command: &'static str,
    seed: Option<u64>,
    normalization: f64,
    body: T,
) -> Result<String, Outcome> {
    let convention = levay_convention().map_err(|e| Outcome::usage(e.to_string()))?;
    Ok(to_json(&Envelope {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        command,
        seed,
        normalization,
        convention,
        body,
    }) + "\n")
}

fn load_state(src: &StateSource) -> Result<PureState, Outcome> {
    if let Some(path) = &src.input {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Outcome::usage(format!("{}: {e}", path.display())))?;
        return parse_state(&text).map_err(|e| Outcome::usage(format!("{}: {e}", path.display())));
    }
    let name = src.named.as_deref().unwrap_or_default();
    let qubits = src
        .qubits
        .ok_or_else(|| Outcome::usage("--named requires --qubits"))?;
    let name: NamedState = name
        .parse()
        .map_err(|e: plucker_core::Error| Outcome::usage(e.to_string()))?;
    PureState::named(name, qubits).map_err(|e| Outcome::usage(e.to_string()))
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Debug, Serialize)]
struct HyperdetBlock {
    #[serde(rename = "det_eq9")]
    det_cayley: [f64; 2],
    det_diophantine: [f64; 2],
    det_levay: [f64; 2],
    /// Evaluated on the unit-norm representative.
    three_tangle: f64,
}

fn hyperdet_block(state: &PureState) -> plucker_core::Result<HyperdetBlock> {
    Ok(HyperdetBlock {
        det_cayley: pair(hyperdet_222(state)?),
        det_diophantine: pair(hyperdet_via_diophantine(state)?),
        det_levay: pair(hyperdet_via_levay(state)?),
        three_tangle: three_tangle(&state.normalize()?)?,
    })
}

fn hyperdet_text(h: &HyperdetBlock) -> String {
    let c = |p: [f64; 2]| format!("{} {:+}i", fmt_f64(p[0]), p[1]);
    format!(
        "det (polynomial)   = {}\ndet (diophantine)  = {}\ndet (pauli-vector) = {}\nthree-tangle       = {}\n",
        c(h.det_cayley),
        c(h.det_diophantine),
        c(h.det_levay),
        fmt_f64(h.three_tangle)
    )
}

#[derive(Debug, Serialize)]
struct ComputeBody {
    num_qubits: usize,
    monotone: MonotoneReport,
    hyperdet: Option<HyperdetBlock>,
}

fn cmd_compute(cmd: &StateCommand) -> Result<Outcome, Outcome> {
    if cmd.format == Format::Csv {
        return Err(Outcome::usage("compute supports --format json or text"));
    }
    let state = load_state(&cmd.source)?;
    let monotone =
        total_monotone(&state, cmd.normalization).map_err(|e| Outcome::usage(e.to_string()))?;
    let hyperdet = match state.num_qubits() {
        3 => Some(hyperdet_block(&state).map_err(|e| Outcome::usage(e.to_string()))?),
        _ => None,
    };
    let body = ComputeBody {
        num_qubits: state.num_qubits(),
        monotone,
        hyperdet,
    };
    let out = match cmd.format {
        Format::Text => {
            let mut s = String::new();
            for (j, e) in body.monotone.per_qubit.iter().enumerate() {
                s.push_str(&format!("E_{} = {}\n", j + 1, fmt_f64(*e)));
            }
            s.push_str(&format!(
                "N = {}\nE = {}\n",
                fmt_f64(body.monotone.normalization),
                fmt_f64(body.monotone.total)
            ));
            if let Some(h) = &body.hyperdet {
                s.push_str(&hyperdet_text(h));
            }
            s
        }
        _ => envelope("compute", None, cmd.normalization, &body)?,
    };
    Ok(Outcome::ok(EXIT_OK, out))
}

#[derive(Debug, Serialize)]
struct PluckerTable {
    j: usize,
    max_residual: f64,
    /// `[c1, c2, re, im]` rows.
    coords: Vec<(usize, usize, f64, f64)>,
}

#[derive(Debug, Serialize)]
struct PluckerBody {
    num_qubits: usize,
    tolerance: f64,
    max_residual: f64,
    passed: bool,
    bipartitions: Vec<PluckerTable>,
}

fn cmd_plucker(cmd: &StateCommand) -> Result<Outcome, Outcome> {
    let state = load_state(&cmd.source)?;
    if state.num_qubits() < 2 {
        return Err(Outcome::usage(
            plucker_core::Error::NoBipartition.to_string(),
        ));
    }
    let tol = cmd.tol.unwrap_or(tolerance::RESIDUAL);
    let sets = (1..=state.num_qubits())
        .map(|j| plucker_coordinates(&bipartition_matrix(&state, j)?))
        .collect::<plucker_core::Result<Vec<_>>>()
        .map_err(|e| Outcome::usage(e.to_string()))?;
    let tables: Vec<PluckerTable> = sets
        .iter()
        .map(|s| PluckerTable {
            j: s.qubit(),
            max_residual: max_relation_residual(s),
            coords: s.iter().map(|(c1, c2, p)| (c1, c2, p.re, p.im)).collect(),
        })
        .collect();
    let max_residual = tables.iter().map(|t| t.max_residual).fold(0.0f64, f64::max);
    let passed = max_residual < tol;
    let out = match cmd.format {
        Format::Json => envelope(
            "plucker",
            None,
            cmd.normalization,
            PluckerBody {
                num_qubits: state.num_qubits(),
                tolerance: tol,
                max_residual,
                passed,
                bipartitions: tables,
            },
        )?,
        Format::Csv => plucker_csv(&sets),
        Format::Text => {
            let mut s = plucker_csv(&sets);
            for t in &tables {
                s.push_str(&format!(
                    "# j={} max_residual={}\n",
                    t.j,
                    fmt_f64(t.max_residual)
                ));
            }
            s
        }
    };
    Ok(Outcome::ok(
        if passed { EXIT_OK } else { EXIT_CHECK_FAILED },
        out,
    ))
}

fn cmd_hyperdet(cmd: &StateCommand) -> Result<Outcome, Outcome> {
    let state = load_state(&cmd.source)?;
    let block = hyperdet_block(&state).map_err(|e| Outcome::usage(e.to_string()))?;
    let out = match cmd.format {
        Format::Text => hyperdet_text(&block),
        Format::Json => envelope("hyperdet", None, cmd.normalization, &block)?,
        Format::Csv => return Err(Outcome::usage("hyperdet supports --format json or text")),
    };
    Ok(Outcome::ok(EXIT_OK, out))
}

#[derive(Debug, Serialize)]
struct CheckBody {
    num_qubits: usize,
    passed: bool,
    checks: Vec<plucker_core::oracles::CheckResult>,
}

fn cmd_check(cmd: &CheckCommand) -> Result<Outcome, Outcome> {
    let state = load_state(&cmd.source)?;
    let opts = AuditOptions {
        tol: cmd.tol.unwrap_or(tolerance::RESIDUAL),
        corrupt_plucker: cmd.corrupt_plucker,
    };
    let checks = audit(&state, opts).map_err(|e| Outcome::usage(e.to_string()))?;
    let passed = checks.iter().all(|c| c.passed);
    let out = match cmd.format {
        Format::Text => checks
            .iter()
            .map(|c| {
                format!(
                    "{} {} residual={} tol={}\n",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    fmt_f64(c.residual),
                    fmt_f64(c.tolerance)
                )
            })
            .collect(),
        Format::Json => envelope(
            "check",
            None,
            1.0,
            CheckBody {
                num_qubits: state.num_qubits(),
                passed,
                checks,
            },
        )?,
        Format::Csv => return Err(Outcome::usage("check supports --format json or text")),
    };
    Ok(Outcome::ok(
        if passed { EXIT_OK } else { EXIT_CHECK_FAILED },
        out,
    ))
}

#[derive(Serialize)]
struct ReportBody<T: Serialize> {
    report: T,
}

fn cmd_invariance(cmd: &TrialCommand) -> Result<Outcome, Outcome> {
    let tol = cmd.tol.unwrap_or(tolerance::INVARIANCE);
    let mut cfg = InvarianceConfig::new(cmd.m as usize, cmd.trials, cmd.seed);
    cfg.tolerances = Tolerances {
        invariance: tol,
        hyperdet_invariance: tol * 10.0,
        ..Tolerances::default()
    };
    let report = run_invariance(&cfg).map_err(|e| Outcome::usage(e.to_string()))?;
    let code = if report.summary.passed {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    };
    let out = match cmd.format {
        Format::Text => {
            let s = &report.summary;
            let mut t = format!(
                "local unitary       max {}\nsl2 plucker coords  max {}\nsl2 partial E_j     max {}\n",
                fmt_f64(s.local_unitary.max),
                fmt_f64(s.sl2_plucker.max),
                fmt_f64(s.sl2_partial.max)
            );
            if let Some(d) = &s.sl2_hyperdet {
                t.push_str(&format!("sl2^3 |Det|         max {}\n", fmt_f64(d.max)));
            }
            t.push_str(if s.passed { "PASS\n" } else { "FAIL\n" });
            t
        }
        Format::Json => envelope(
            "invariance",
            Some(cmd.seed),
            cmd.normalization,
            ReportBody { report },
        )?,
        Format::Csv => return Err(Outcome::usage("invariance supports --format json or text")),
    };
    Ok(Outcome::ok(code, out))
}

fn cmd_monotonicity(cmd: &TrialCommand) -> Result<Outcome, Outcome> {
    let cfg = MonotonicityConfig {
        num_qubits: cmd.m as usize,
        trials: cmd.trials,
        seed: cmd.seed,
        normalization: cmd.normalization,
    };
    let report = run_monotonicity(&cfg).map_err(|e| Outcome::usage(e.to_string()))?;
    let out = match cmd.format {
        Format::Text => {
            let v = &report.violation;
            format!(
                "violation p50 {} p90 {} p99 {} max {}\nviolating trials {} / {}\nunitary-pair max violation {}\n",
                fmt_f64(v.p50),
                fmt_f64(v.p90),
                fmt_f64(v.p99),
                fmt_f64(v.max),
                report.violating_trials,
                report.trials,
                fmt_f64(report.controls.unitary_pair_max_violation)
            )
        }
        Format::Json => envelope(
            "monotonicity",
            Some(cmd.seed),
            cmd.normalization,
            ReportBody { report },
        )?,
        Format::Csv => {
            return Err(Outcome::usage(
                "monotonicity supports --format json or text",
            ))
        }
    };
    Ok(Outcome::ok(EXIT_OK, out))
}

fn cmd_random(cmd: &RandomCommand) -> Result<Outcome, Outcome> {
    let state =
        PureState::haar_random(cmd.qubits, cmd.seed).map_err(|e| Outcome::usage(e.to_string()))?;
    Ok(Outcome::ok(EXIT_OK, state_to_json(&state) + "\n"))
}

/// Parses `args` (program name first) and runs the selected subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome::ok(EXIT_OK, text)
                }
                _ => Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let result = match &cli.command {
        Command::Compute(c) => cmd_compute(c),
        Command::Plucker(c) => cmd_plucker(c),
        Command::Hyperdet(c) => cmd_hyperdet(c),
        Command::Check(c) => cmd_check(c),
        Command::Invariance(c) => cmd_invariance(c),
        Command::Monotonicity(c) => cmd_monotonicity(c),
        Command::Random(c) => cmd_random(c),
    };
    result.unwrap_or_else(|e| e)
}
