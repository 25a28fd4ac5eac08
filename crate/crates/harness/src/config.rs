use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use qpart::Beta;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("{0} grid is empty")]
    EmptyGrid(&'static str),
    #[error("trials must be at least 1")]
    ZeroTrials,
    #[error("delta {0} outside (0, 1/2)")]
    Delta(f64),
    #[error("epsilon {0} outside (0, 1)")]
    Epsilon(f64),
    #[error("eta {0} outside (0, 1]")]
    Eta(f64),
    #[error("confidence {0} outside (1/2, 1)")]
    Confidence(f64),
    #[error("N must be at least {min}, got {n}")]
    Size { n: usize, min: usize },
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("cannot parse {what} from {text:?}")]
    Parse { what: &'static str, text: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Experiment {
    VerifyOverlap,
    VerifyFixedPoint,
    VerifyZ,
    VerifyChernoff,
    SweepClassical,
    SweepQuantum,
    BoundsReport,
}

impl Experiment {
    pub const ALL: [Experiment; 7] = [
        Experiment::VerifyOverlap,
        Experiment::VerifyFixedPoint,
        Experiment::VerifyZ,
        Experiment::VerifyChernoff,
        Experiment::SweepClassical,
        Experiment::SweepQuantum,
        Experiment::BoundsReport,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::VerifyOverlap => "verify-overlap",
            Experiment::VerifyFixedPoint => "verify-fixed-point",
            Experiment::VerifyZ => "verify-z",
            Experiment::VerifyChernoff => "verify-chernoff",
            Experiment::SweepClassical => "sweep-classical",
            Experiment::SweepQuantum => "sweep-quantum",
            Experiment::BoundsReport => "bounds-report",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| ConfigError::Parse { what: "experiment", text: s.to_string() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(ConfigError::Parse { what: "format", text: s.to_string() }),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub master_seed: u64,
    pub trials: usize,
    pub n: Vec<usize>,
    pub delta: Vec<f64>,
    pub beta: Vec<Beta<f64>>,
    pub epsilon: Vec<f64>,
    /// Precision of state preparation; a grid for `verify-fixed-point`.
    pub eta: Vec<f64>,
    pub confidence: f64,
    pub cap_constant: f64,
    pub budget_p: f64,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl ExperimentConfig {
    /// The grids the acceptance runs use.
    pub fn defaults(experiment: Experiment) -> Self {
        let all_betas = vec![Beta::zero(), Beta::Finite(0.5), Beta::Finite(1.0), Beta::Finite(2.0), Beta::Infinite];
        let mut cfg = Self {
            experiment,
            master_seed: 0,
            trials: 1,
            n: vec![],
            delta: vec![],
            beta: vec![],
            epsilon: vec![],
            eta: vec![0.1],
            confidence: 0.9,
            cap_constant: 1.0,
            budget_p: 0.2,
            out: None,
            format: Format::Csv,
        };
        match experiment {
            Experiment::VerifyOverlap => {
                cfg.n = vec![400];
                cfg.delta = vec![0.05, 0.1, 0.2];
                cfg.beta = all_betas;
            }
            Experiment::VerifyFixedPoint => {
                cfg.n = vec![16, 64, 256];
                cfg.eta = vec![0.3, 0.1, 0.0316];
            }
            Experiment::VerifyZ => {
                cfg.n = vec![4096];
                cfg.beta = all_betas;
                cfg.trials = 200;
            }
            Experiment::VerifyChernoff => {
                cfg.delta = vec![0.1];
                cfg.trials = 10_000;
            }
            Experiment::SweepClassical => {
                cfg.delta = vec![0.2, 0.1, 0.05, 0.025];
                cfg.trials = 2000;
            }
            Experiment::SweepQuantum => {
                cfg.n = vec![256];
                cfg.epsilon = vec![0.2, 0.1, 0.05, 0.025];
                cfg.trials = 200;
            }
            Experiment::BoundsReport => {
                cfg.n = vec![100, 400, 1600];
                cfg.delta = vec![0.25, 0.1, 0.05, 0.02];
            }
        }
        cfg
    }

    /// Checks the grids this experiment reads.
    pub fn validate(&self) -> Result<(), ConfigError> {
        use Experiment::*;
        let e = self.experiment;
        if self.trials == 0 {
            return Err(ConfigError::ZeroTrials);
        }
        let uses_n = matches!(e, VerifyOverlap | VerifyFixedPoint | VerifyZ | SweepQuantum | BoundsReport);
        let uses_delta = matches!(e, VerifyOverlap | VerifyChernoff | SweepClassical | BoundsReport);
        let uses_beta = matches!(e, VerifyOverlap | VerifyZ);
        let uses_eps = matches!(e, SweepQuantum);
        let uses_eta = matches!(e, VerifyOverlap | VerifyFixedPoint | BoundsReport);
        if uses_n && self.n.is_empty() {
            return Err(ConfigError::EmptyGrid("N"));
        }
        if uses_delta && self.delta.is_empty() {
            return Err(ConfigError::EmptyGrid("delta"));
        }
        if uses_beta && self.beta.is_empty() {
            return Err(ConfigError::EmptyGrid("beta"));
        }
        if uses_eps && self.epsilon.is_empty() {
            return Err(ConfigError::EmptyGrid("epsilon"));
        }
        if uses_eta && self.eta.is_empty() {
            return Err(ConfigError::EmptyGrid("eta"));
        }
        if let Some(&d) = self.delta.iter().find(|d| !(**d > 0.0 && **d < 0.5)) {
            return Err(ConfigError::Delta(d));
        }
        if let Some(&x) = self.epsilon.iter().find(|x| !(**x > 0.0 && **x < 1.0)) {
            return Err(ConfigError::Epsilon(x));
        }
        if let Some(&x) = self.eta.iter().find(|x| !(**x > 0.0 && **x <= 1.0)) {
            return Err(ConfigError::Eta(x));
        }
        if !(self.confidence > 0.5 && self.confidence < 1.0) {
            return Err(ConfigError::Confidence(self.confidence));
        }
        let min_n = if e == VerifyOverlap { 4 } else { 1 };
        if let Some(&n) = self.n.iter().find(|&&n| n < min_n || n > qpart::statevector::MAX_DIMENSION / 2) {
            return Err(ConfigError::Size { n, min: min_n });
        }
        for (name, value) in [("cap-constant", self.cap_constant), ("budget-p", self.budget_p)] {
            if !(value > 0.0) {
                return Err(ConfigError::NonPositive { name, value });
            }
        }
        Ok(())
    }
}

/// Parses a comma-separated list; an empty string gives an empty list.
pub fn parse_list<T: FromStr>(what: &'static str, text: &str) -> Result<Vec<T>, ConfigError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| ConfigError::Parse { what, text: s.to_string() }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        for e in Experiment::ALL {
            ExperimentConfig::defaults(e).validate().unwrap();
            assert_eq!(e.name().parse::<Experiment>().unwrap(), e);
        }
    }

    #[test]
    fn rejects_bad_grids() {
        let mut c = ExperimentConfig::defaults(Experiment::VerifyOverlap);
        c.delta.clear();
        assert_eq!(c.validate(), Err(ConfigError::EmptyGrid("delta")));
        let mut c = ExperimentConfig::defaults(Experiment::SweepClassical);
        c.delta = vec![0.6];
        assert_eq!(c.validate(), Err(ConfigError::Delta(0.6)));
        let mut c = ExperimentConfig::defaults(Experiment::SweepQuantum);
        c.trials = 0;
        assert_eq!(c.validate(), Err(ConfigError::ZeroTrials));
    }

    #[test]
    fn list_parsing() {
        let b: Vec<Beta<f64>> = parse_list("beta", "0, 0.5,inf").unwrap();
        assert_eq!(b, vec![Beta::zero(), Beta::Finite(0.5), Beta::Infinite]);
        assert!(parse_list::<f64>("delta", "").unwrap().is_empty());
        assert!(parse_list::<f64>("delta", "0.1,x").is_err());
    }
}
