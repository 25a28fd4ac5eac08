use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::trial_rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// The coin has bias `1/2 + delta`.
    Plus,
    Minus,
}

fn check_coin_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta <= 0.5) {
        return Err(Error::DeltaOutOfRange(delta));
    }
    Ok(())
}

/// Majority vote over `budget` draws: `Plus` iff the sample mean is at least
/// `1/2`, so ties go to `Plus`.
pub fn biased_coin_distinguish<F: FnMut() -> bool>(mut stream: F, delta: f64, budget: u64) -> Result<Verdict> {
    check_coin_delta(delta)?;
    if budget == 0 {
        return Err(Error::ZeroBudget);
    }
    let heads = (0..budget).filter(|_| stream()).count() as u64;
    Ok(if 2 * heads >= budget { Verdict::Plus } else { Verdict::Minus })
}

/// Fraction of `trials` in which the majority vote names the hidden coin.
/// Trial `t` hides `Plus` for even `t` and draws from stream `t` of `seed`.
pub fn coin_correctness(delta: f64, budget: u64, trials: u64, seed: u64) -> Result<f64> {
    check_coin_delta(delta)?;
    if trials == 0 {
        return Err(Error::DegenerateInput("trials must be positive"));
    }
    let mut correct = 0u64;
    for t in 0..trials {
        let hidden = if t % 2 == 0 { Verdict::Plus } else { Verdict::Minus };
        let p = match hidden {
            Verdict::Plus => 0.5 + delta,
            Verdict::Minus => 0.5 - delta,
        };
        let mut rng = trial_rng(seed, t);
        let verdict = biased_coin_distinguish(|| rng.gen::<f64>() < p, delta, budget)?;
        correct += (verdict == hidden) as u64;
    }
    Ok(correct as f64 / trials as f64)
}

/// Smallest odd budget whose empirical correctness over `trials` reaches
/// `target`, found by doubling and then bisecting over odd budgets.
pub fn minimal_classical_budget(delta: f64, target: f64, trials: u64, seed: u64) -> Result<u64> {
    if !(target > 0.5 && target < 1.0) {
        return Err(Error::ConfidenceOutOfRange(target));
    }
    let ok = |b: u64| coin_correctness(delta, b, trials, seed).map(|c| c >= target);
    if ok(1)? {
        return Ok(1);
    }
    // Odd budgets are 2j + 1; search over j.
    let (mut lo, mut hi) = (0u64, 1u64);
    while !ok(2 * hi + 1)? {
        lo = hi;
        hi *= 2;
        if hi > 1 << 40 {
            return Err(Error::DegenerateInput("target correctness unreachable"));
        }
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(2 * mid + 1)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(2 * hi + 1)
}
