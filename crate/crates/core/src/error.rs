use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state dimension must be positive")]
    ZeroDimension,
    #[error("state dimension {0} exceeds the supported maximum of 2^20")]
    DimensionTooLarge(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("state norm drifted to {0}")]
    NormViolation(f64),
    #[error("reflection axis has norm {0}, expected 1")]
    UnnormalizedAxis(f64),
    #[error("weight {weight} is out of range for N = {n}")]
    WeightOutOfRange { weight: usize, n: usize },
    #[error("index {index} is out of range for N = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("probability {0} is outside [0, 1]")]
    ProbabilityOutOfRange(f64),
    #[error("energy {energy} exceeds the declared maximum {max}")]
    EnergyOutOfRange { energy: u32, max: u32 },
    #[error("inverse temperature must be a non-negative number, got {0}")]
    NegativeBeta(f64),
    #[error("no zero-energy configuration: the ground space is empty")]
    EmptyGroundSpace,
    #[error("delta = {0} is outside (0, 1/2)")]
    DeltaOutOfRange(f64),
    #[error("no paired instance exists for N >= {n_min} and delta = {delta}: {reason}")]
    InfeasiblePair { n_min: usize, delta: f64, reason: &'static str },
    #[error("query count L = {0} must be odd")]
    EvenL(usize),
    #[error("eta = {0} is outside (0, 1]")]
    EtaOutOfRange(f64),
    #[error("overlap floor {0} is outside (0, 1]")]
    FloorOutOfRange(f64),
    #[error("target set is empty")]
    EmptyTarget,
    #[error("epsilon = {0} is outside (0, 1)")]
    EpsilonOutOfRange(f64),
    #[error("confidence = {0} is outside (1/2, 1)")]
    ConfidenceOutOfRange(f64),
    #[error("budget must be positive")]
    ZeroBudget,
    #[error("invalid range: {0}")]
    BadRange(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("malformed instance file: {0}")]
    Parse(String),
}
