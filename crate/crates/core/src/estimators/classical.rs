use rand::Rng;

use crate::error::{Error, Result};
use crate::gibbs::BitStringInstance;

use super::{check_accuracy, EstimateResult};

/// Samples for a two-sided Hoeffding bound: `|p_hat - p| <= t` with
/// probability at least `1 - alpha`.
pub fn hoeffding_samples(t: f64, alpha: f64) -> u64 {
    ((2.0 / alpha).ln() / (2.0 * t * t)).ceil() as u64
}

fn hoeffding_radius(samples: u64, alpha: f64) -> f64 {
    ((2.0 / alpha).ln() / (2.0 * samples as f64)).sqrt()
}

const PILOT_START: u64 = 16;
const PILOT_LIMIT: u64 = 1 << 40;

/// Estimates `Z(inf)` as `N` times the fraction of uniform samples `x` with
/// `H(x) = 0`.
///
/// A doubling pilot finds a lower confidence bound `p_lo` on the ground
/// fraction at least half its running estimate; the main run then draws
/// fresh samples for a Hoeffding radius of `epsilon * p_lo`. Each phase
/// gets half of the failure probability.
pub fn classical_estimate_z<R: Rng + ?Sized>(inst: &BitStringInstance, epsilon: f64, confidence: f64, rng: &mut R) -> Result<EstimateResult> {
    check_accuracy(epsilon, confidence)?;
    if inst.weight() == 0 {
        return Err(Error::EmptyTarget);
    }
    let n = inst.n();
    let alpha = 1.0 - confidence;
    let mut draw = |count: u64| -> Result<u64> {
        let mut ground = 0;
        for _ in 0..count {
            ground += (inst.hamiltonian_eval(rng.gen_range(0..n))? == 0) as u64;
        }
        Ok(ground)
    };

    let mut samples = 0u64;
    let mut pilot = PILOT_START;
    let mut stage = 0;
    let p_lo = loop {
        let ground = draw(pilot)?;
        samples += pilot;
        // Stage failure probabilities alpha / 2^(stage + 2) sum below alpha / 2.
        let stage_alpha = alpha / f64::powi(2.0, stage + 2);
        let p_hat = ground as f64 / pilot as f64;
        let lcb = p_hat - hoeffding_radius(pilot, stage_alpha);
        if lcb > 0.0 && lcb >= p_hat / 2.0 {
            break lcb;
        }
        if pilot >= PILOT_LIMIT {
            return Err(Error::DegenerateInput("pilot sample limit reached"));
        }
        pilot *= 2;
        stage += 1;
    };

    let main = hoeffding_samples(epsilon * p_lo, alpha / 2.0);
    let ground = draw(main)?;
    samples += main;
    let estimate = n as f64 * ground as f64 / main as f64;

    let mut out = EstimateResult::new(estimate, epsilon, inst.weight() as f64);
    out.classical_samples = samples;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gibbs::{build_instance, InstanceSpec};
    use crate::rng::trial_rng;

    #[test]
    fn all_ones_is_exact() {
        let inst = build_instance(50, InstanceSpec::ExactWeight { weight: 50, seed: 0 }).unwrap();
        let r = classical_estimate_z(&inst, 0.1, 0.9, &mut trial_rng(0, 0)).unwrap();
        assert_eq!(r.estimate, 50.0);
        assert!(r.hit);
    }

    #[test]
    fn hit_rate_at_n_2000() {
        let inst = build_instance(2000, InstanceSpec::ExactWeight { weight: 1100, seed: 1 }).unwrap();
        let conf = 0.9;
        let hits = (0..500).filter(|&t| classical_estimate_z(&inst, 0.05, conf, &mut trial_rng(3, t)).unwrap().hit).count();
        assert!(hits as f64 >= 500.0 * conf, "{hits}");
    }

    #[test]
    fn halving_epsilon_quadruples_samples() {
        let inst = build_instance(2000, InstanceSpec::ExactWeight { weight: 1100, seed: 1 }).unwrap();
        let mean = |eps: f64| (0..100).map(|t| classical_estimate_z(&inst, eps, 0.9, &mut trial_rng(4, t)).unwrap().classical_samples as f64).sum::<f64>() / 100.0;
        let ratio = mean(0.05) / mean(0.1);
        assert!((3.2..=5.0).contains(&ratio), "{ratio}");
    }

    #[test]
    fn rejects_empty_and_bad_parameters() {
        let inst = build_instance(10, InstanceSpec::ExactWeight { weight: 0, seed: 0 }).unwrap();
        assert_eq!(classical_estimate_z(&inst, 0.1, 0.9, &mut trial_rng(0, 0)), Err(Error::EmptyTarget));
        let inst = build_instance(10, InstanceSpec::ExactWeight { weight: 3, seed: 0 }).unwrap();
        assert!(matches!(classical_estimate_z(&inst, 1.5, 0.9, &mut trial_rng(0, 0)), Err(Error::EpsilonOutOfRange(_))));
        assert!(matches!(classical_estimate_z(&inst, 0.1, 0.4, &mut trial_rng(0, 0)), Err(Error::ConfidenceOutOfRange(_))));
    }
}
