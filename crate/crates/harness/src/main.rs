use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qpart_harness::config::parse_list;
use qpart_harness::output::{to_csv, to_json, write_atomic};
use qpart_harness::{run, ConfigError, Experiment, ExperimentConfig, Format};

#[derive(Parser)]
#[command(name = "qpart", version, about = "Gibbs-state preparation and partition-function estimation experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Wrong-weight overlap: closed form, explicit states and prepared states.
    VerifyOverlap(Common),
    /// Fixed-point search success over every marked count above the floor.
    VerifyFixedPoint(Common),
    /// Closed-form partition function against brute force on random instances.
    VerifyZ(Common),
    /// Threshold conditions for Bernoulli strings, analytic and Monte Carlo.
    VerifyChernoff(Common),
    /// Minimal majority-vote budget against 1/delta.
    SweepClassical(Common),
    /// Reflections used by the quantum estimator against 1/epsilon.
    SweepQuantum(Common),
    /// Closed-form bound values.
    BoundsReport(Common),
}

/// Lists are comma-separated; beta accepts `inf`.
#[derive(Args)]
struct Common {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    delta: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    #[arg(long)]
    epsilon: Option<String>,
    #[arg(long)]
    eta: Option<String>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    confidence: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: String,
    #[arg(long)]
    cap_constant: Option<f64>,
    #[arg(long)]
    budget_p: Option<f64>,
}

fn build_config(experiment: Experiment, c: Common) -> Result<ExperimentConfig, ConfigError> {
    let mut cfg = ExperimentConfig::defaults(experiment);
    if let Some(s) = c.seed {
        cfg.master_seed = s;
    }
    if let Some(t) = c.trials {
        cfg.trials = t;
    }
    if let Some(s) = c.delta {
        cfg.delta = parse_list("delta", &s)?;
    }
    if let Some(s) = c.beta {
        cfg.beta = parse_list("beta", &s)?;
    }
    if let Some(s) = c.epsilon {
        cfg.epsilon = parse_list("epsilon", &s)?;
    }
    if let Some(s) = c.eta {
        cfg.eta = parse_list("eta", &s)?;
    }
    if let Some(s) = c.n {
        cfg.n = parse_list("N", &s)?;
    }
    if let Some(x) = c.confidence {
        cfg.confidence = x;
    }
    if let Some(x) = c.cap_constant {
        cfg.cap_constant = x;
    }
    if let Some(x) = c.budget_p {
        cfg.budget_p = x;
    }
    cfg.format = c.format.parse::<Format>()?;
    cfg.out = c.out;
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (experiment, common) = match cli.command {
        Command::VerifyOverlap(c) => (Experiment::VerifyOverlap, c),
        Command::VerifyFixedPoint(c) => (Experiment::VerifyFixedPoint, c),
        Command::VerifyZ(c) => (Experiment::VerifyZ, c),
        Command::VerifyChernoff(c) => (Experiment::VerifyChernoff, c),
        Command::SweepClassical(c) => (Experiment::SweepClassical, c),
        Command::SweepQuantum(c) => (Experiment::SweepQuantum, c),
        Command::BoundsReport(c) => (Experiment::BoundsReport, c),
    };
    let cfg = match build_config(experiment, common) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("config error: {e}");
            return ExitCode::from(2);
        }
    };
    let outcome = run(&cfg);
    let text = match cfg.format {
        Format::Csv => to_csv(&outcome.table),
        Format::Json => to_json(&outcome.table),
    };
    match &cfg.out {
        Some(path) => {
            if let Err(e) = write_atomic(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    for f in &outcome.failures {
        eprintln!("FAIL {f}");
    }
    if outcome.passed() {
        eprintln!("{experiment}: all checks passed");
        ExitCode::SUCCESS
    } else {
        eprintln!("{experiment}: {} check(s) failed", outcome.failures.len());
        ExitCode::from(1)
    }
}
