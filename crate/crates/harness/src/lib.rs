//! Verification suites and scaling sweeps over `qpart`, with CSV and JSON
//! output.

pub mod config;
pub mod experiments;
pub mod output;

pub use config::{ConfigError, Experiment, ExperimentConfig, Format};
pub use experiments::{run, RunOutcome};
