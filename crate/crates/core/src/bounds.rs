//! Closed-form bound expressions. Asymptotic expressions are evaluated with
//! all implied constants set to 1.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Lower,
    Upper,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Lower => "lower",
            Side::Upper => "upper",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub name: &'static str,
    pub inputs: Vec<(&'static str, f64)>,
    pub value: f64,
    pub side: Side,
    /// Set for reports that check a condition.
    pub feasible: Option<bool>,
    /// Secondary quantities derived alongside `value`.
    pub details: Vec<(&'static str, f64)>,
}

impl BoundReport {
    pub fn detail(&self, key: &str) -> Option<f64> {
        self.details.iter().find(|(k, _)| *k == key).map(|&(_, v)| v)
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta < 0.5) {
        return Err(Error::DeltaOutOfRange(delta));
    }
    Ok(())
}

/// `sqrt(N / D) + sqrt(m (N - m)) / D` with `D = lp - l` and `m` the one of
/// `l`, `lp` farther from `N/2`; on a tie `m = lp`.
pub fn hamming_query_bound(n: u64, l: u64, lp: u64) -> Result<f64> {
    if n == 0 || l >= lp || lp > n {
        return Err(Error::BadRange(format!("need 0 <= l < lp <= N, got N={n} l={l} lp={lp}")));
    }
    let half = n as f64 / 2.0;
    let m = if (half - l as f64).abs() > (half - lp as f64).abs() { l } else { lp };
    let gap = (lp - l) as f64;
    Ok((n as f64 / gap).sqrt() + ((m * (n - m)) as f64).sqrt() / gap)
}

/// `(N (1/2 - delta), N (1/2 + delta))`, when both are integers and
/// `2 N delta >= 1`.
pub fn paired_weights(n: u64, delta: f64) -> Result<(u64, u64)> {
    check_delta(delta)?;
    let infeasible = |reason| Error::InfeasiblePair { n_min: n as usize, delta, reason };
    let nd = n as f64 * delta;
    if 2.0 * nd < 1.0 - 1e-12 {
        return Err(infeasible("2 N delta < 1"));
    }
    if n % 2 != 0 || (nd - nd.round()).abs() > 1e-9 {
        return Err(infeasible("N (1/2 +- delta) not integral"));
    }
    let shift = nd.round() as u64;
    Ok((n / 2 - shift, n / 2 + shift))
}

/// The Hamming bound at `l = N (1/2 - delta)`, `lp = N (1/2 + delta)`.
pub fn corollary_bound(n: u64, delta: f64) -> Result<f64> {
    let (l, lp) = paired_weights(n, delta)?;
    hamming_query_bound(n, l, lp)
}

/// Half the weight gap relative to the heavier weight: `delta / (1/2 + delta)`.
pub fn separation_margin(delta: f64) -> Result<f64> {
    check_delta(delta)?;
    Ok(delta / (0.5 + delta))
}

/// Multiplicative Chernoff tails `(e^{-t^2 mu / 2}, e^{-t^2 mu / (2 + t)})`
/// bounding `P[X <= (1 - t) mu]` and `P[X >= (1 + t) mu]`.
pub fn chernoff_tails(mu: f64, t: f64) -> Result<(f64, f64)> {
    if !(mu > 0.0 && mu.is_finite()) || !(t > 0.0 && t < 1.0) {
        return Err(Error::BadRange(format!("need mu > 0 and 0 < t < 1, got mu={mu} t={t}")));
    }
    Ok(((-t * t * mu / 2.0).exp(), (-t * t * mu / (2.0 + t)).exp()))
}

/// Instance size and thresholds separating Bernoulli strings of bias
/// `1/2 + delta` and `1/2 - delta`.
///
/// `value` is `N_min = ceil(20 / delta^2)`. `feasible` holds when both
/// threshold events have Chernoff-bounded failure at most 0.01 at `N_min`:
/// the heavy string stays above `tau1 = (1 - delta) N (1/2 + delta)` and
/// the light one below `tau2 = (1 + delta) N (1/2 - delta)`.
pub fn classical_instance_conditions(delta: f64) -> Result<BoundReport> {
    check_delta(delta)?;
    let n = (20.0 / (delta * delta)).ceil();
    let tau1 = n * (0.5 + delta / 2.0 - delta * delta);
    let tau2 = n * (0.5 - delta / 2.0 - delta * delta);
    let implied_epsilon = (tau1 - tau2) / tau1;
    let (heavy_fail, _) = chernoff_tails(n * (0.5 + delta), delta)?;
    let (_, light_fail) = chernoff_tails(n * (0.5 - delta), delta)?;
    Ok(BoundReport {
        name: "classical_instance_conditions",
        inputs: vec![("delta", delta)],
        value: n,
        side: Side::Lower,
        feasible: Some(heavy_fail <= 0.01 && light_fail <= 0.01),
        details: vec![
            ("tau1", tau1),
            ("tau2", tau2),
            ("implied_epsilon", implied_epsilon),
            ("heavy_tail", heavy_fail),
            ("light_tail", light_fail),
        ],
    })
}

/// Whether `1/(2N) <= delta <= p / (c ln^2 N)`.
pub fn budget_window(n: u64, delta: f64, p: f64, c: f64) -> bool {
    let ln = (n as f64).ln();
    delta >= 1.0 / (2.0 * n as f64) && delta * c * ln * ln <= p
}

/// Whether `m` inexact reflections, each failing with probability `delta^2`,
/// stay within the failure budget `p`.
pub fn failure_budget(delta: f64, m: f64, p: f64) -> bool {
    delta * delta * m <= p
}

/// Reflections needed per the final arithmetic, `(1/delta) sqrt(w / N)` with
/// `w = N (1/2 - delta)`.
///
/// Details carry the simplified form `1/eps - sqrt(1/eps)` at `eps = delta`,
/// the ratio `(1/delta) / measured_prep_cost`, and the budget window as
/// `feasible`.
pub fn reflection_bound_summary(n: u64, delta: f64, measured_prep_cost: f64, p: f64, c: f64) -> Result<BoundReport> {
    if n == 0 || !(delta > 0.0 && delta < 0.5) || !(measured_prep_cost > 0.0) || !(p > 0.0) || !(c > 0.0) {
        return Err(Error::BadRange(format!(
            "need N > 0, 0 < delta < 1/2 and positive cost, p, c; got N={n} delta={delta} cost={measured_prep_cost} p={p} c={c}"
        )));
    }
    let w = n as f64 * (0.5 - delta);
    let value = (w / n as f64).sqrt() / delta;
    let inv = 1.0 / delta;
    Ok(BoundReport {
        name: "reflection_bound_summary",
        inputs: vec![("N", n as f64), ("delta", delta), ("prep_cost", measured_prep_cost), ("p", p), ("c", c)],
        value,
        side: Side::Lower,
        feasible: Some(budget_window(n, delta, p, c)),
        details: vec![("simplified", inv - inv.sqrt()), ("measured_ratio", inv / measured_prep_cost)],
    })
}
