//! Maximum-likelihood amplitude estimation of `Z(inf) / N`.
//!
//! The good state is the prepared zero-temperature state `|m> = P|s,0>`;
//! its overlap with the reference `|s,0>` is `sqrt(w / N)`. The iterate is
//! `Q = R_s R_m`, where `R_m = 2|m><m| - I` is a reflection through the
//! prepared Gibbs state and `R_s` is the reflection about `|s,0>`, which needs
//! no oracle. A shot at depth `k` applies `Q^k` to `|s,0>` and un-prepares,
//! succeeding with probability `sin^2((2k + 1) theta)`, `sin^2 theta = w / N`.
//!
//! Depths start at 0, 1 and at most double after that; each round is sized
//! from the current estimate so the accumulated Fisher information just
//! meets the target.

use rand::Rng;

use crate::error::{Error, Result};
use crate::gibbs::{Beta, BitStringInstance, Hypothesis, PairedInstance};
use crate::statevector::{QueryLedger, StateVector};
use crate::stateprep::{GibbsReflector, PrepSpec};

use super::{check_accuracy, EstimateResult};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumEstimatorConfig {
    pub epsilon: f64,
    pub confidence: f64,
    pub shots_per_round: usize,
    /// A repetition stops once `z` standard deviations of the relative error
    /// fit inside `epsilon`.
    pub z: f64,
    /// Total reflection budget, split evenly over the repetitions.
    pub max_reflections: Option<u64>,
}

impl QuantumEstimatorConfig {
    pub fn new(epsilon: f64, confidence: f64) -> Result<Self> {
        check_accuracy(epsilon, confidence)?;
        Ok(Self { epsilon, confidence, shots_per_round: 4, z: 2.5, max_reflections: None })
    }

    pub fn with_budget(mut self, max_reflections: u64) -> Result<Self> {
        if max_reflections == 0 {
            return Err(Error::ZeroBudget);
        }
        self.max_reflections = Some(max_reflections);
        Ok(self)
    }

    /// Independent repetitions combined by their median.
    pub fn repetitions(&self) -> usize {
        (12.0 * (1.0 / (1.0 - self.confidence)).ln()).ceil() as usize
    }

    /// Preparation accuracy, small enough that the prepared overlap is
    /// within `epsilon / 4` relative of `w / N`.
    pub fn prep_eta(&self, n: usize) -> f64 {
        (self.epsilon / (8.0 * (n as f64).sqrt())).min(0.1)
    }
}

/// `Q = R_s R_m` on `state`.
fn apply_iterate(reflector: &GibbsReflector<f64>, reference: &StateVector<f64>, state: &mut StateVector<f64>, ledger: &mut QueryLedger) -> Result<()> {
    reflector.reflect(state, ledger)?;
    state.apply_reflection_about(reference, std::f64::consts::PI)?;
    state.negate();
    Ok(())
}

#[derive(Debug, Clone, Copy)]
struct Round {
    k: usize,
    shots: usize,
    hits: usize,
}

fn log_likelihood(theta: f64, rounds: &[Round]) -> f64 {
    const FLOOR: f64 = 1e-300;
    rounds
        .iter()
        .map(|r| {
            let p = ((2 * r.k + 1) as f64 * theta).sin().powi(2);
            let mut ll = 0.0;
            if r.hits > 0 {
                ll += r.hits as f64 * p.max(FLOOR).ln();
            }
            if r.shots > r.hits {
                ll += (r.shots - r.hits) as f64 * (1.0 - p).max(FLOOR).ln();
            }
            ll
        })
        .sum()
}

/// Maximizes the likelihood over `theta` in `[0, pi/2]`.
fn mle_theta(rounds: &[Round]) -> f64 {
    use std::f64::consts::FRAC_PI_2;
    let k_max = rounds.iter().map(|r| r.k).max().unwrap_or(0);
    let points = 40 * (2 * k_max + 1) + 80;
    let step = FRAC_PI_2 / points as f64;
    let (mut best, mut best_ll) = (0.0, f64::NEG_INFINITY);
    for i in 0..=points {
        let t = i as f64 * step;
        let ll = log_likelihood(t, rounds);
        if ll > best_ll {
            best = t;
            best_ll = ll;
        }
    }
    // Golden-section refinement around the best grid point.
    let (mut lo, mut hi) = ((best - step).max(0.0), (best + step).min(FRAC_PI_2));
    let g = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..60 {
        let a = hi - g * (hi - lo);
        let b = lo + g * (hi - lo);
        if log_likelihood(a, rounds) >= log_likelihood(b, rounds) {
            hi = b;
        } else {
            lo = a;
        }
    }
    let mid = 0.5 * (lo + hi);
    if log_likelihood(mid, rounds) > best_ll {
        mid
    } else {
        best
    }
}

fn fisher(rounds: &[Round]) -> f64 {
    rounds.iter().map(|r| 4.0 * r.shots as f64 * ((2 * r.k + 1) as f64).powi(2)).sum()
}

struct Repetition {
    theta: f64,
    exhausted: bool,
}

fn run_repetition<R: Rng + ?Sized>(
    reflector: &GibbsReflector<f64>,
    reference: &StateVector<f64>,
    n: usize,
    cfg: &QuantumEstimatorConfig,
    budget: Option<u64>,
    ledger: &mut QueryLedger,
    rng: &mut R,
) -> Result<Repetition> {
    let shots = cfg.shots_per_round;
    let k_cap = (4.0 * (n as f64).sqrt() / cfg.epsilon).ceil() as usize;
    let mut rounds: Vec<Round> = Vec::new();
    let mut used = 0u64;
    let mut next_k = 0usize;
    let mut state = reference.clone();
    let mut depth = 0usize;
    let mut theta = 0.0;
    let mut exhausted = false;
    // Every iterate costs the same; this holds the charge of the last one simulated.
    let mut iterate_cost = QueryLedger::new();
    loop {
        let cost = (shots * next_k) as u64;
        if budget.is_some_and(|b| used + cost > b) {
            exhausted = true;
            break;
        }
        if next_k < depth {
            state = reference.clone();
            depth = 0;
        }
        // One circuit per shot; simulate the shared depth once and charge every shot.
        while depth < next_k {
            iterate_cost = QueryLedger::new();
            apply_iterate(reflector, reference, &mut state, &mut iterate_cost)?;
            depth += 1;
        }
        let mut hits = 0;
        for _ in 0..shots {
            let p = reflector.projection_probability(&state, ledger)?;
            if rng.gen::<f64>() < p {
                hits += 1;
            }
        }
        ledger.merge_repeated(&iterate_cost, (shots * next_k) as u64);
        used += cost;
        rounds.push(Round { k: next_k, shots, hits });

        theta = mle_theta(&rounds);
        let have = fisher(&rounds);
        let cot = theta.cos() / theta.sin();
        let target_sigma = cfg.epsilon / (2.0 * cfg.z * cot);
        if rounds.len() >= 2 && have.sqrt() * target_sigma >= 1.0 {
            break;
        }
        let k_max = rounds.iter().map(|r| r.k).max().unwrap_or(0);
        let doubled = (2 * k_max).max(1);
        let need = target_sigma.powi(-2) - have;
        let sized = if need.is_finite() && need > 0.0 {
            let odd = (need / (4.0 * shots as f64)).sqrt();
            (((odd - 1.0) / 2.0).ceil() as usize).max(1)
        } else {
            doubled
        };
        next_k = doubled.min(sized);
        if next_k > k_cap {
            break;
        }
    }
    Ok(Repetition { theta, exhausted })
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

/// Estimates `Z(inf)` to relative error `epsilon` with probability at least
/// `confidence`, using only reflections through, and preparations of, the
/// zero-temperature Gibbs state.
pub fn quantum_estimate_z<R: Rng + ?Sized>(
    inst: &BitStringInstance,
    epsilon: f64,
    confidence: f64,
    ledger: &mut QueryLedger,
    rng: &mut R,
) -> Result<EstimateResult> {
    quantum_estimate_z_with(inst, &QuantumEstimatorConfig::new(epsilon, confidence)?, ledger, rng)
}

pub fn quantum_estimate_z_with<R: Rng + ?Sized>(
    inst: &BitStringInstance,
    cfg: &QuantumEstimatorConfig,
    ledger: &mut QueryLedger,
    rng: &mut R,
) -> Result<EstimateResult> {
    check_accuracy(cfg.epsilon, cfg.confidence)?;
    if cfg.shots_per_round == 0 || !(cfg.z > 0.0) {
        return Err(Error::DegenerateInput("shots_per_round and z must be positive"));
    }
    let n = inst.n();
    // Assumed weight 1 puts the search floor below every nonempty ground set.
    let spec = PrepSpec::new(n, 1, Beta::Infinite, cfg.prep_eta(n))?;
    let reflector = GibbsReflector::new(inst, &spec)?;
    let reference = StateVector::uniform(n)?.with_flag_qubit()?;

    let start = *ledger;
    let reps = cfg.repetitions();
    let per_rep = cfg.max_reflections.map(|b| b / reps as u64);
    let mut thetas = Vec::with_capacity(reps);
    let mut exhausted = false;
    for _ in 0..reps {
        let rep = run_repetition(&reflector, &reference, n, cfg, per_rep, ledger, rng)?;
        exhausted |= rep.exhausted;
        thetas.push(rep.theta);
    }
    let theta = median(thetas);
    let estimate = n as f64 * theta.sin().powi(2);
    let spent = ledger.since(&start);

    let mut out = EstimateResult::new(estimate, cfg.epsilon, inst.weight() as f64);
    out.oh_queries = spent.oh_queries();
    out.reflections = spent.reflections();
    out.budget_sufficed = !exhausted;
    Ok(out)
}

/// Checks that every `O_H` query in `spent` belongs to a preparation of cost
/// `prep_cost`, that each reflection was charged two of them, and that each
/// `O_H` query used one `O_b` query.
pub fn audit_class_a(spent: &QueryLedger, prep_cost: u64) -> bool {
    spent.oh_queries() == prep_cost * spent.preparations()
        && spent.preparations() >= 2 * spent.reflections()
        && spent.ob_queries() == spent.oh_queries()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistinguishOutcome {
    pub verdict: Hypothesis,
    pub budget_sufficed: bool,
    pub result: EstimateResult,
}

/// Decides which string of the pair is hidden by estimating `Z(inf)` to
/// precision `delta` within `budget` reflections and comparing with `N/2`.
pub fn hamming_distinguish_quantum<R: Rng + ?Sized>(
    pair: &PairedInstance,
    hidden: Hypothesis,
    budget: u64,
    confidence: f64,
    ledger: &mut QueryLedger,
    rng: &mut R,
) -> Result<DistinguishOutcome> {
    let cfg = QuantumEstimatorConfig::new(pair.delta(), confidence)?.with_budget(budget)?;
    let result = quantum_estimate_z_with(pair.get(hidden), &cfg, ledger, rng)?;
    let verdict = if result.estimate >= pair.n() as f64 / 2.0 { Hypothesis::Heavy } else { Hypothesis::Light };
    Ok(DistinguishOutcome { verdict, budget_sufficed: result.budget_sufficed, result })
}
