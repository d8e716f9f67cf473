mod export;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use qudit_core::algorithm::{sample_outcomes, verify_up_to, PhaseEntry, RunReport};
use qudit_core::nmr::{
    epsilon_component, inject_readout_noise, run_protocol, GateSource, OptimizerConfig,
    OracleChoice, PseudoPureSpec, SpinSystem, Stage,
};
use qudit_core::{
    phase_table, run_classical, run_quantum, Chirality, Error, FourierKind, Permutation,
};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NOT_CYCLIC: u8 = 3;
const EXIT_UNCONVERGED: u8 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "qudit",
    version,
    about = "Single-qudit permutation classification and its NMR replay"
)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify one permutation with the quantum circuit or the classical baseline.
    Run(RunArgs),
    /// Check classification, phases and query bounds for every d up to dmax.
    Verify(VerifyArgs),
    /// List the 2d cyclic permutations of one dimension with their phases.
    Enumerate(EnumerateArgs),
    /// Synthesize pulses for one protocol stage and export the density matrix.
    Nmr(NmrArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Quantum,
    Classical,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Fourier {
    #[value(alias = "general")]
    Standard,
    #[value(alias = "eq3")]
    Qutrit,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long)]
    dim: usize,
    /// Image list, e.g. 2,3,4,1.
    #[arg(long)]
    perm: Permutation,
    #[arg(long, value_enum, default_value = "quantum")]
    mode: Mode,
    #[arg(long, value_enum, default_value = "standard")]
    fourier: Fourier,
    /// Basis relabeling applied to the Fourier gate and the promise set.
    #[arg(long)]
    relabel: Option<Permutation>,
    /// Read --perm as an arrangement of the --relabel sequence.
    #[arg(long, requires = "relabel")]
    as_arrangement: bool,
    /// Sample this many measurement outcomes from the final state.
    #[arg(long)]
    shots: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Also write the JSON report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(3..=12))]
    dmax: u64,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(3..=64))]
    dim: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Gate {
    Qft,
    U2,
    U6,
    Full2,
    Full6,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StageArg {
    /// The stage that ends with the named gate.
    After,
    AfterQft,
    AfterOracle,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Source {
    Ideal,
    Smp,
}

#[derive(Args, Debug)]
struct NmrArgs {
    #[arg(long, value_enum)]
    gate: Gate,
    #[arg(long, value_enum, default_value = "after")]
    stage: StageArg,
    #[arg(long, value_enum, default_value = "smp")]
    source: Source,
    /// Optimizer seed; overrides the config file.
    #[arg(long)]
    seed: Option<u64>,
    /// Optimizer config, JSON or TOML (by extension).
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    segments: Option<usize>,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    min_fidelity: Option<f64>,
    #[arg(long)]
    max_iter: Option<usize>,
    #[arg(long, default_value_t = PseudoPureSpec::default().epsilon)]
    epsilon: f64,
    /// Relative readout noise added to the exported matrices.
    #[arg(long)]
    readout_noise: Option<f64>,
    #[arg(long, env = "QUDIT_OUT_DIR", default_value = "qudit-out")]
    out: PathBuf,
}

/// Error carrying the process exit code.
#[derive(Debug)]
struct Exit {
    code: u8,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Exit {
    fn from(error: anyhow::Error) -> Self {
        let code = match error.downcast_ref::<Error>() {
            Some(Error::NotCyclic(_)) => EXIT_NOT_CYCLIC,
            Some(Error::InvalidPermutation(_)) | Some(Error::DimensionMismatch { .. }) => {
                EXIT_USAGE
            }
            _ => EXIT_FAILURE,
        };
        Exit { code, error }
    }
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

fn usage(msg: impl Into<String>) -> Exit {
    Exit {
        code: EXIT_USAGE,
        error: anyhow!(msg.into()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Run(args) => cmd_run(args, cli.json),
        Command::Verify(args) => cmd_verify(args, cli.json),
        Command::Enumerate(args) => cmd_enumerate(args, cli.json),
        Command::Nmr(args) => cmd_nmr(args, cli.json),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(exit) => {
            eprintln!("error: {:#}", exit.error);
            ExitCode::from(exit.code)
        }
    }
}

/// The serialized (kebab-case) name of a unit enum variant.
fn label<T: Serialize>(value: &T) -> String {
    serde_json::to_value(value)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Exit> {
    println!(
        "{}",
        serde_json::to_string_pretty(value).context("serializing output")?
    );
    Ok(())
}

#[derive(Serialize)]
struct RunOutput<'a> {
    #[serde(flatten)]
    report: &'a RunReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    counts: Option<Vec<usize>>,
}

fn cmd_run(args: &RunArgs, json: bool) -> Result<u8, Exit> {
    if args.perm.dim() != args.dim {
        return Err(usage(format!(
            "--perm has {} entries but --dim is {}",
            args.perm.dim(),
            args.dim
        )));
    }
    let hidden = match (&args.relabel, args.as_arrangement) {
        (Some(sigma), true) => Permutation::from_arrangement(&args.perm, sigma)?,
        _ => args.perm.clone(),
    };
    if let Some(sigma) = &args.relabel {
        if sigma.dim() != args.dim {
            return Err(usage(format!(
                "--relabel has {} entries but --dim is {}",
                sigma.dim(),
                args.dim
            )));
        }
        if !matches!(args.fourier, Fourier::Standard) {
            return Err(usage("--relabel only applies to the standard transform"));
        }
    }
    if matches!(args.fourier, Fourier::Qutrit) && args.dim != 3 {
        return Err(usage("the qutrit transform needs --dim 3"));
    }

    let report = match args.mode {
        Mode::Quantum => {
            let kind = match (&args.relabel, args.fourier) {
                (Some(sigma), _) => FourierKind::relabeled(sigma.clone()),
                (None, Fourier::Standard) => FourierKind::standard(),
                (None, Fourier::Qutrit) => FourierKind::qutrit(),
            };
            run_quantum(&hidden, &kind)?
        }
        Mode::Classical => run_classical(&hidden, args.relabel.as_ref())?,
    };
    let counts = match (args.shots, &report.final_state) {
        (Some(shots), Some(state)) => Some(sample_outcomes(state, shots, args.seed)[1..].to_vec()),
        _ => None,
    };
    let output = RunOutput {
        report: &report,
        counts,
    };

    if let Some(path) = &args.out {
        export::write_json(path, &output)?;
    }
    if json {
        print_json(&output)?;
    } else {
        println!("{}", report.classification);
        println!(
            "  permutation     {} (d = {})",
            report.permutation, report.dim
        );
        println!("  oracle queries  {}", report.oracle_queries);
        if let (Some(index), Some(phase)) = (report.measured_index, report.phase) {
            println!(
                "  measured        |{index}>  amplitude {:+.6}{:+.6}i",
                phase.re, phase.im
            );
        }
        if let Some(counts) = &output.counts {
            let listed: Vec<String> = counts
                .iter()
                .enumerate()
                .map(|(k, n)| format!("|{}>:{n}", k + 1))
                .collect();
            println!("  counts          {}", listed.join(" "));
        }
    }
    Ok(match report.classification {
        Chirality::NotCyclic => EXIT_NOT_CYCLIC,
        _ => 0,
    })
}

fn cmd_verify(args: &VerifyArgs, json: bool) -> Result<u8, Exit> {
    let rows = verify_up_to(args.dmax as usize)?;
    let all = rows.iter().all(|r| r.passed());
    if json {
        #[derive(Serialize)]
        struct Summary<'a> {
            passed: bool,
            rows: &'a [qudit_core::algorithm::VerifyRow],
        }
        print_json(&Summary {
            passed: all,
            rows: &rows,
        })?;
    } else {
        let mark = |ok: bool| if ok { "pass" } else { "FAIL" };
        println!(
            "{:>3} {:>6} {:>9} {:>10} {:>7} {:>10} {:>10} {:>16} {:>7}",
            "d",
            "perms",
            "classify",
            "leakage",
            "phases",
            "one-query",
            "classical",
            "parity=chirality",
            "result"
        );
        for r in &rows {
            let one_query = match r.one_query_insufficient {
                Some(v) => mark(v),
                None => "skipped",
            };
            println!(
                "{:>3} {:>6} {:>9} {:>10.1e} {:>7} {:>10} {:>10} {:>16} {:>7}",
                r.dim,
                r.permutations,
                mark(r.classifications_ok),
                r.max_leakage,
                mark(r.phases_ok),
                one_query,
                mark(r.classical_ok),
                if r.parity_matches_chirality {
                    "yes"
                } else {
                    "no"
                },
                mark(r.passed()),
            );
        }
        println!(
            "{}",
            if all {
                "all dimensions pass"
            } else {
                "verification failed"
            }
        );
    }
    Ok(if all { 0 } else { EXIT_FAILURE })
}

fn cmd_enumerate(args: &EnumerateArgs, json: bool) -> Result<u8, Exit> {
    let table: Vec<PhaseEntry> = phase_table(args.dim as usize)?;
    if json {
        print_json(&table)?;
    } else {
        for e in &table {
            println!(
                "{:<24} {:<16} shift {:<3} {:<4}  phase {:+.6}{:+.6}i",
                e.permutation.to_string(),
                e.chirality.label(),
                e.shift,
                format!("{:?}", e.permutation.parity()),
                e.phase.re,
                e.phase.im
            );
        }
    }
    Ok(0)
}

fn resolve_stage(gate: Gate, stage: StageArg) -> Result<(OracleChoice, Stage), Exit> {
    let oracle = match gate {
        Gate::Qft | Gate::U2 | Gate::Full2 => OracleChoice::U2,
        Gate::U6 | Gate::Full6 => OracleChoice::U6,
    };
    let stage = match (gate, stage) {
        (Gate::Qft, StageArg::After | StageArg::AfterQft) => Stage::AfterQft,
        (Gate::Qft, _) => return Err(usage("gate qft only has the after-qft stage")),
        (Gate::U2 | Gate::U6, StageArg::After) => Stage::AfterOracle,
        (Gate::Full2 | Gate::Full6, StageArg::After) => Stage::Full,
        (_, StageArg::AfterQft) => Stage::AfterQft,
        (_, StageArg::AfterOracle) => Stage::AfterOracle,
        (_, StageArg::Full) => Stage::Full,
    };
    Ok((oracle, stage))
}

fn load_config(args: &NmrArgs) -> Result<OptimizerConfig, Exit> {
    let mut config = match &args.config {
        None => OptimizerConfig::default(),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let parsed = if path.extension().is_some_and(|e| e == "toml") {
                toml::from_str(&text).map_err(|e| anyhow!(e))
            } else {
                serde_json::from_str(&text).map_err(|e| anyhow!(e))
            };
            parsed
                .with_context(|| format!("parsing {}", path.display()))
                .map_err(|e| Exit {
                    code: EXIT_USAGE,
                    error: e,
                })?
        }
    };
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(v) = args.segments {
        config.segments = v;
    }
    if let Some(v) = args.restarts {
        config.restarts = v;
    }
    if let Some(v) = args.min_fidelity {
        config.min_fidelity = v;
    }
    if let Some(v) = args.max_iter {
        config.max_iter = v;
    }
    config.validate().map_err(|e| usage(e.to_string()))?;
    Ok(config)
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
struct NmrReport {
    gate: Gate,
    stage: Stage,
    source: Source,
    epsilon: f64,
    /// `|Tr(target† U)| / 4` of the applied propagator.
    gate_fidelity: f64,
    /// Fidelity of the normalized ε component against the ideal state.
    state_fidelity: f64,
    /// Same, after readout noise; absent without `--readout-noise`.
    noisy_state_fidelity: Option<f64>,
    readout_noise: Option<f64>,
    /// Largest population of the deviation matrix, 1-based.
    dominant_index: usize,
    converged: bool,
    unconverged: bool,
    optimizer: Option<OptimizerConfig>,
    files: Vec<String>,
}

fn cmd_nmr(args: &NmrArgs, json: bool) -> Result<u8, Exit> {
    let (oracle, stage) = resolve_stage(args.gate, args.stage)?;
    if !(args.epsilon > 0.0 && args.epsilon <= 1.0) {
        return Err(usage("--epsilon must lie in (0, 1]"));
    }
    let source = match args.source {
        Source::Ideal => GateSource::Ideal,
        Source::Smp => GateSource::Smp(load_config(args)?),
    };
    let spec = PseudoPureSpec {
        epsilon: args.epsilon,
        ..PseudoPureSpec::default()
    };
    let outcome = run_protocol(&SpinSystem::sodium23(), oracle, stage, &source, spec)?;

    let mut component = epsilon_component(&outcome.rho, spec.epsilon)?;
    let mut noisy_fidelity = None;
    if let Some(sigma) = args.readout_noise {
        let seed = match &source {
            GateSource::Smp(config) => config.seed,
            GateSource::Ideal => args.seed.unwrap_or(1),
        };
        component =
            inject_readout_noise(&component, sigma, seed).map_err(|e| usage(e.to_string()))?;
        noisy_fidelity = Some(component.fidelity(&outcome.target_state)?);
    }

    let dir = &args.out;
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let files = [
        "pulses.json",
        "rho.json",
        "rho_re.csv",
        "rho_im.csv",
        "report.json",
    ];
    let path = |name: &str| -> PathBuf { Path::new(dir).join(name) };
    export::write_json(&path(files[0]), &outcome.pulses.clone().unwrap_or_default())?;
    export::write_json(&path(files[1]), &outcome.rho)?;
    export::write_csv(&path(files[2]), component.matrix(), |z| z.re)?;
    export::write_csv(&path(files[3]), component.matrix(), |z| z.im)?;

    let report = NmrReport {
        gate: args.gate,
        stage,
        source: args.source,
        epsilon: spec.epsilon,
        gate_fidelity: outcome.gate_fidelity,
        state_fidelity: outcome.fidelity_to_theory,
        noisy_state_fidelity: noisy_fidelity,
        readout_noise: args.readout_noise,
        dominant_index: outcome.dominant_population(),
        converged: outcome.converged,
        unconverged: !outcome.converged,
        optimizer: match &source {
            GateSource::Smp(config) => Some(config.clone()),
            GateSource::Ideal => None,
        },
        files: files.iter().map(|f| f.to_string()).collect(),
    };
    export::write_json(&path(files[4]), &report)?;

    if json {
        print_json(&report)?;
    } else {
        println!(
            "gate {}, stage {}, source {}",
            label(&args.gate),
            label(&stage),
            label(&args.source)
        );
        println!("  gate fidelity   {:.6}", report.gate_fidelity);
        println!("  state fidelity  {:.6}", report.state_fidelity);
        if let Some(f) = report.noisy_state_fidelity {
            println!("  with noise      {f:.6}");
        }
        println!("  dominant        |{}>", report.dominant_index);
        println!("  converged       {}", report.converged);
        println!("  written to      {}", dir.display());
    }
    if !outcome.converged {
        eprintln!("warning: pulse synthesis did not reach the requested fidelity");
        return Ok(EXIT_UNCONVERGED);
    }
    Ok(0)
}
