//! Estimators for `Z(inf)` and distinguishers for paired instances.
//!
//! The estimators work in `f64`.

mod classical;
mod coin;
mod quantum;

pub use classical::{classical_estimate_z, hoeffding_samples};
pub use coin::{biased_coin_distinguish, coin_correctness, minimal_classical_budget, Verdict};
pub use quantum::{audit_class_a, hamming_distinguish_quantum, quantum_estimate_z, quantum_estimate_z_with, DistinguishOutcome, QuantumEstimatorConfig};

use crate::error::{Error, Result};

/// One estimate of `Z(inf)` together with what it cost.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateResult {
    pub estimate: f64,
    pub target_epsilon: f64,
    /// `Z(inf)` of the instance, recorded after the estimator has finished.
    pub truth: f64,
    pub oh_queries: u64,
    pub reflections: u64,
    pub classical_samples: u64,
    /// `|estimate - truth| <= target_epsilon * truth`.
    pub hit: bool,
    /// False when a reflection budget stopped the estimator before its own
    /// stopping rule.
    pub budget_sufficed: bool,
}

impl EstimateResult {
    pub(crate) fn new(estimate: f64, target_epsilon: f64, truth: f64) -> Self {
        Self {
            estimate,
            target_epsilon,
            truth,
            oh_queries: 0,
            reflections: 0,
            classical_samples: 0,
            hit: (estimate - truth).abs() <= target_epsilon * truth,
            budget_sufficed: true,
        }
    }

    pub fn relative_error(&self) -> f64 {
        (self.estimate - self.truth).abs() / self.truth
    }

    /// Whether the reflections used fit `c ln^2(N) / epsilon`.
    pub fn within_log_cap(&self, n: usize, cap_constant: f64) -> bool {
        let ln = (n as f64).ln();
        self.reflections as f64 <= cap_constant * ln * ln / self.target_epsilon
    }
}

pub(crate) fn check_accuracy(epsilon: f64, confidence: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::EpsilonOutOfRange(epsilon));
    }
    if !(confidence > 0.5 && confidence < 1.0) {
        return Err(Error::ConfidenceOutOfRange(confidence));
    }
    Ok(())
}
