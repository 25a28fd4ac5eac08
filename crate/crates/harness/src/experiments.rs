//! The experiments behind each subcommand.
//!
//! Every experiment returns its table together with the list of embedded
//! assertions that failed. Trials draw from `(master_seed, trial_index)`
//! streams and are aggregated in index order, so results do not depend on
//! the worker count.

use qpart::bounds::{chernoff_tails, classical_instance_conditions, corollary_bound, hamming_query_bound, paired_weights, reflection_bound_summary, separation_margin, BoundReport, Side};
use qpart::estimators::{audit_class_a, coin_correctness, minimal_classical_budget, quantum_estimate_z_with, QuantumEstimatorConfig};
use qpart::gibbs::{assumed_weight_state, build_instance, overlap_wrong_weight_closed, partition_function_closed};
use qpart::rng::{derive_seed, trial_rng};
use qpart::stateprep::{prepare_gibbs, FixedPointSearch, PrepSpec};
use qpart::stats::{fit_loglog_slope, mean};
use qpart::{Beta, BitStringInstance, GibbsModel, InstanceSpec, PairedInstance, QueryLedger};
use rand::Rng;
use rayon::prelude::*;

use crate::config::{Experiment, ExperimentConfig};
use crate::output::{BoundRow, SweepResult, Table};

/// Environment variable naming the worker count.
pub const WORKERS_ENV: &str = "QPART_WORKERS";

pub const OVERLAP_TOL: f64 = 1e-12;
pub const PREP_SLACK: f64 = 1e-6;
pub const Z_REL_TOL: f64 = 1e-12;
/// Round-off allowance on the fixed-point floor `1 - eta^2`.
pub const FLOOR_ROUNDING: f64 = 1e-12;
pub const FIXED_POINT_FLOORS: [f64; 3] = [1.0 / 16.0, 0.25, 0.5];
pub const CHERNOFF_ANALYTIC_MAX: f64 = 0.01;
pub const CHERNOFF_EMPIRICAL_MAX: f64 = 0.02;
pub const TARGET_CORRECTNESS: f64 = 0.9;
pub const CLASSICAL_SLOPE: (f64, f64) = (1.7, 2.3);
pub const QUANTUM_SLOPE: (f64, f64) = (0.7, 1.3);
pub const COROLLARY_WINDOW: (f64, f64) = (0.125, 8.0);

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub table: Table,
    pub failures: Vec<String>,
}

impl RunOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn sweep_rows(&self) -> &[SweepResult] {
        match &self.table {
            Table::Sweep(rows) => rows,
            Table::Bounds(_) => &[],
        }
    }
}

/// Worker count from [`WORKERS_ENV`], if set to a positive integer.
pub fn workers_from_env() -> Option<usize> {
    std::env::var(WORKERS_ENV).ok()?.trim().parse().ok().filter(|&n| n > 0)
}

pub fn run(cfg: &ExperimentConfig) -> RunOutcome {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers_from_env() {
        builder = builder.num_threads(n);
    }
    match builder.build() {
        Ok(pool) => pool.install(|| dispatch(cfg)),
        Err(_) => dispatch(cfg),
    }
}

fn dispatch(cfg: &ExperimentConfig) -> RunOutcome {
    match cfg.experiment {
        Experiment::VerifyOverlap => verify_overlap(cfg),
        Experiment::VerifyFixedPoint => verify_fixed_point(cfg),
        Experiment::VerifyZ => verify_z(cfg),
        Experiment::VerifyChernoff => verify_chernoff(cfg),
        Experiment::SweepClassical => sweep_classical(cfg),
        Experiment::SweepQuantum => sweep_quantum(cfg),
        Experiment::BoundsReport => bounds_report(cfg),
    }
}

fn row(cfg: &ExperimentConfig, label: &str) -> SweepResult {
    SweepResult { experiment: label.to_string(), seed: cfg.master_seed, trials: cfg.trials, ..Default::default() }
}

fn flagged_truth(inst: &BitStringInstance, beta: Beta<f64>) -> qpart::Result<qpart::StateVector<f64>> {
    GibbsModel::from_instance(inst, beta)?.gibbs_state_exact()?.with_flag_qubit()
}

/// Overlap of the state prepared under `assumed` weight with the true Gibbs
/// state, and the ledger of that preparation.
pub fn prepared_overlap(inst: &BitStringInstance, assumed: usize, beta: Beta<f64>, eta: f64) -> qpart::Result<(f64, u64, QueryLedger)> {
    let spec = PrepSpec::new(inst.n(), assumed, beta, eta)?;
    let mut ledger = QueryLedger::new();
    let prepared = prepare_gibbs(inst, &spec, &mut ledger)?;
    let overlap = prepared.inner_product(&flagged_truth(inst, beta)?)?.norm();
    Ok((overlap, spec.oracle_cost()?, ledger))
}

fn ledger_exact(ledger: &QueryLedger, prep_cost: u64) -> bool {
    ledger.oh_queries() == prep_cost * ledger.preparations() && ledger.ob_queries() == ledger.oh_queries()
}

fn verify_overlap(cfg: &ExperimentConfig) -> RunOutcome {
    let mut points = Vec::new();
    for (i, &n) in cfg.n.iter().enumerate() {
        for (j, &delta) in cfg.delta.iter().enumerate() {
            for &beta in &cfg.beta {
                for &eta in &cfg.eta {
                    for swapped in [false, true] {
                        points.push((derive_seed(cfg.master_seed, (i * 1000 + j) as u64, 0), n, delta, beta, eta, swapped));
                    }
                }
            }
        }
    }
    let results: Vec<(SweepResult, Vec<String>)> = points
        .par_iter()
        .map(|&(seed, n, delta, beta, eta, swapped)| {
            let label = if swapped { "verify-overlap/swapped" } else { "verify-overlap" };
            let mut r = row(cfg, label);
            r.trials = 1;
            r.delta = Some(delta);
            r.beta = Some(beta.to_string());
            r.eta = Some(eta);
            let mut fails = Vec::new();
            let mut run = || -> qpart::Result<()> {
                let pair = PairedInstance::new(n, delta, seed)?;
                let (truth_inst, assumed) =
                    if swapped { (pair.light(), pair.heavy().weight()) } else { (pair.heavy(), pair.light().weight()) };
                r.n = Some(pair.n());
                let exact = GibbsModel::from_instance(truth_inst, beta)?.gibbs_state_exact()?;
                let explicit = assumed_weight_state(truth_inst, assumed, beta)?.inner_product(&exact)?.norm();
                let closed = overlap_wrong_weight_closed(delta, beta)?;
                let gap = (explicit - closed).abs();
                r.estimate = Some(closed);
                r.relative_error = Some(gap);
                if gap > OVERLAP_TOL {
                    fails.push(format!("{label} delta={delta} beta={beta}: explicit {explicit} vs closed {closed}"));
                }
                if beta == Beta::zero() && (closed - (1.0 - 4.0 * delta * delta).sqrt()).abs() > OVERLAP_TOL {
                    fails.push(format!("{label} delta={delta}: beta=0 value {closed}"));
                }
                if beta.is_infinite() && closed != 1.0 {
                    fails.push(format!("{label} delta={delta}: beta=inf value {closed}"));
                }
                let (prepared, cost, ledger) = prepared_overlap(truth_inst, assumed, beta, eta)?;
                r.oh_queries = ledger.oh_queries() as f64;
                let ok = (prepared - closed).abs() <= eta + PREP_SLACK;
                r.success_rate = Some(if ok { 1.0 } else { 0.0 });
                if !ok {
                    fails.push(format!("{label} delta={delta} beta={beta} eta={eta}: prepared {prepared} vs closed {closed}"));
                }
                if !ledger_exact(&ledger, cost) || ledger.oh_queries() != cost {
                    fails.push(format!("{label} delta={delta} beta={beta}: ledger {ledger:?} vs cost {cost}"));
                }
                Ok(())
            };
            if let Err(e) = run() {
                fails.push(format!("{label} delta={delta} beta={beta}: {e}"));
            }
            (r, fails)
        })
        .collect();
    collect_rows(results)
}

fn collect_rows(results: Vec<(SweepResult, Vec<String>)>) -> RunOutcome {
    let mut rows = Vec::with_capacity(results.len());
    let mut failures = Vec::new();
    for (r, f) in results {
        rows.push(r);
        failures.extend(f);
    }
    RunOutcome { table: Table::Sweep(rows), failures }
}

/// Worst success over every marked count from the floor up to `N`, and the
/// fraction of counts meeting `1 - eta^2`.
pub fn fixed_point_grid_point(n: usize, lambda_lower: f64, eta: f64) -> qpart::Result<(f64, f64, usize)> {
    let search = FixedPointSearch::new(lambda_lower, eta)?;
    let k_min = ((lambda_lower * n as f64) - 1e-9).ceil().max(1.0) as usize;
    let mut worst = f64::INFINITY;
    let mut passing = 0;
    for k in k_min..=n {
        let marked: Vec<bool> = (0..n).map(|i| i < k).collect();
        let mut ledger = QueryLedger::new();
        let out = search.run(&marked, &mut ledger)?;
        let p: f64 = out.probabilities().iter().zip(&marked).filter(|(_, &m)| m).map(|(p, _)| p).sum();
        worst = worst.min(p);
        passing += (p >= 1.0 - eta * eta - FLOOR_ROUNDING) as usize;
        debug_assert_eq!(ledger.oh_queries(), search.queries() as u64);
    }
    Ok((worst, passing as f64 / (n - k_min + 1) as f64, search.queries()))
}

fn verify_fixed_point(cfg: &ExperimentConfig) -> RunOutcome {
    let mut points = Vec::new();
    for &n in &cfg.n {
        for &eta in &cfg.eta {
            for &lambda in &FIXED_POINT_FLOORS {
                points.push((n, eta, lambda));
            }
        }
    }
    let results: Vec<(SweepResult, Vec<String>, f64)> = points
        .par_iter()
        .map(|&(n, eta, lambda)| {
            let mut r = row(cfg, "verify-fixed-point");
            r.trials = 1;
            r.n = Some(n);
            r.delta = Some(lambda);
            r.eta = Some(eta);
            match fixed_point_grid_point(n, lambda, eta) {
                Ok((worst, rate, l)) => {
                    r.oh_queries = l as f64;
                    r.estimate = Some(worst);
                    r.success_rate = Some(rate);
                    let c = l as f64 * lambda.sqrt() / (2.0 / eta).ln();
                    let fails = if rate < 1.0 {
                        vec![format!("fixed point N={n} lambda_lower={lambda} eta={eta}: worst success {worst}")]
                    } else {
                        vec![]
                    };
                    (r, fails, c)
                }
                Err(e) => (r, vec![format!("fixed point N={n} lambda_lower={lambda} eta={eta}: {e}")], f64::NAN),
            }
        })
        .collect();
    let constant = results.iter().map(|x| x.2).fold(f64::NEG_INFINITY, f64::max);
    let mut out = collect_rows(results.into_iter().map(|(r, f, _)| (r, f)).collect());
    if let Table::Sweep(rows) = &mut out.table {
        let mut summary = row(cfg, "verify-fixed-point/constant");
        summary.trials = 1;
        summary.estimate = Some(constant);
        rows.push(summary);
    }
    out
}

/// The envelope constant reported by a `verify-fixed-point` run.
pub fn fixed_point_constant(out: &RunOutcome) -> Option<f64> {
    out.sweep_rows().iter().find(|r| r.experiment == "verify-fixed-point/constant").and_then(|r| r.estimate)
}

fn verify_z(cfg: &ExperimentConfig) -> RunOutcome {
    let n_max = cfg.n.iter().copied().max().unwrap_or(1);
    let instances: Vec<qpart::Result<BitStringInstance>> = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(cfg.master_seed, t);
            let n = rng.gen_range(1..=n_max);
            let w = rng.gen_range(0..=n);
            build_instance(n, InstanceSpec::ExactWeight { weight: w, seed: rng.gen() })
        })
        .collect();
    let mut failures = Vec::new();
    let mut rows = Vec::new();
    for &beta in &cfg.beta {
        let errs: Vec<f64> = instances
            .par_iter()
            .map(|inst| match inst {
                Ok(inst) => {
                    let closed = partition_function_closed(inst, beta);
                    let brute = GibbsModel::from_instance(inst, beta).map(|m| m.partition_function_bruteforce());
                    match brute {
                        Ok(b) if closed > 0.0 => (b - closed).abs() / closed,
                        Ok(b) => (b - closed).abs(),
                        Err(_) => f64::INFINITY,
                    }
                }
                Err(_) => f64::INFINITY,
            })
            .collect();
        let worst = errs.iter().copied().fold(0.0, f64::max);
        let ok = errs.iter().filter(|&&e| e <= Z_REL_TOL).count();
        let mut r = row(cfg, "verify-z");
        r.n = Some(n_max);
        r.beta = Some(beta.to_string());
        r.relative_error = Some(worst);
        r.success_rate = Some(ok as f64 / errs.len() as f64);
        if ok < errs.len() {
            failures.push(format!("verify-z beta={beta}: worst relative error {worst}"));
        }
        rows.push(r);
    }
    RunOutcome { table: Table::Sweep(rows), failures }
}

/// Analytic tail bounds and empirical failure rates of the two threshold
/// events at `(n, delta)`: `(heavy_tail, light_tail, heavy_fail, light_fail)`.
pub fn chernoff_check(n: usize, delta: f64, trials: usize, seed: u64) -> qpart::Result<(f64, f64, f64, f64)> {
    let nf = n as f64;
    let tau1 = nf * (0.5 + delta / 2.0 - delta * delta);
    let tau2 = nf * (0.5 - delta / 2.0 - delta * delta);
    let (heavy_tail, _) = chernoff_tails(nf * (0.5 + delta), delta)?;
    let (_, light_tail) = chernoff_tails(nf * (0.5 - delta), delta)?;
    let fails: Vec<qpart::Result<(bool, bool)>> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let heavy = build_instance(n, InstanceSpec::Bernoulli { p: 0.5 + delta, seed: derive_seed(seed, t, 1) })?;
            let light = build_instance(n, InstanceSpec::Bernoulli { p: 0.5 - delta, seed: derive_seed(seed, t, 2) })?;
            Ok(((heavy.weight() as f64) < tau1, (light.weight() as f64) > tau2))
        })
        .collect();
    let (mut hf, mut lf) = (0usize, 0usize);
    for f in fails {
        let (h, l) = f?;
        hf += h as usize;
        lf += l as usize;
    }
    Ok((heavy_tail, light_tail, hf as f64 / trials as f64, lf as f64 / trials as f64))
}

fn verify_chernoff(cfg: &ExperimentConfig) -> RunOutcome {
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (i, &delta) in cfg.delta.iter().enumerate() {
        let n = cfg.n.first().copied().unwrap_or_else(|| (20.0 / (delta * delta)).ceil() as usize);
        match chernoff_check(n, delta, cfg.trials, derive_seed(cfg.master_seed, i as u64, 0)) {
            Ok((ht, lt, hf, lf)) => {
                for (side, tail, fail) in [("heavy", ht, hf), ("light", lt, lf)] {
                    let mut r = row(cfg, &format!("verify-chernoff/{side}"));
                    r.n = Some(n);
                    r.delta = Some(delta);
                    r.estimate = Some(tail);
                    r.success_rate = Some(1.0 - fail);
                    if tail > CHERNOFF_ANALYTIC_MAX {
                        failures.push(format!("verify-chernoff {side} delta={delta} N={n}: analytic tail {tail:.5} > {CHERNOFF_ANALYTIC_MAX}"));
                    }
                    if fail > CHERNOFF_EMPIRICAL_MAX {
                        failures.push(format!("verify-chernoff {side} delta={delta} N={n}: empirical failure {fail} > {CHERNOFF_EMPIRICAL_MAX}"));
                    }
                    rows.push(r);
                }
            }
            Err(e) => failures.push(format!("verify-chernoff delta={delta}: {e}")),
        }
    }
    RunOutcome { table: Table::Sweep(rows), failures }
}

fn sweep_classical(cfg: &ExperimentConfig) -> RunOutcome {
    let results: Vec<(f64, qpart::Result<(u64, f64)>)> = cfg
        .delta
        .par_iter()
        .enumerate()
        .map(|(i, &delta)| {
            let seed = derive_seed(cfg.master_seed, i as u64, 0);
            let res = minimal_classical_budget(delta, TARGET_CORRECTNESS, cfg.trials as u64, seed)
                .and_then(|b| Ok((b, coin_correctness(delta, b, cfg.trials as u64, seed)?)));
            (delta, res)
        })
        .collect();
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    let mut points = Vec::new();
    for (delta, res) in results {
        match res {
            Ok((budget, correct)) => {
                let mut r = row(cfg, "sweep-classical");
                r.delta = Some(delta);
                r.classical_samples = budget as f64;
                r.success_rate = Some(correct);
                rows.push(r);
                points.push((1.0 / delta, budget as f64));
            }
            Err(e) => failures.push(format!("sweep-classical delta={delta}: {e}")),
        }
    }
    push_slope(cfg, "sweep-classical/slope", &points, CLASSICAL_SLOPE, &mut rows, &mut failures);
    RunOutcome { table: Table::Sweep(rows), failures }
}

fn push_slope(cfg: &ExperimentConfig, label: &str, points: &[(f64, f64)], window: (f64, f64), rows: &mut Vec<SweepResult>, failures: &mut Vec<String>) {
    if points.len() < 3 {
        return;
    }
    match fit_loglog_slope(points) {
        Ok(s) => {
            let mut r = row(cfg, label);
            r.fitted_slope = Some(s);
            rows.push(r);
            if !(window.0..=window.1).contains(&s) {
                failures.push(format!("{label}: slope {s:.3} outside [{}, {}]", window.0, window.1));
            }
        }
        Err(e) => failures.push(format!("{label}: {e}")),
    }
}

struct QuantumTrial {
    oh: u64,
    reflections: u64,
    estimate: f64,
    rel_err: f64,
    hit: bool,
    audit: bool,
}

fn sweep_quantum(cfg: &ExperimentConfig) -> RunOutcome {
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (i, &n) in cfg.n.iter().enumerate() {
        let weight = (n / 2).max(1);
        let inst = match build_instance(n, InstanceSpec::ExactWeight { weight, seed: derive_seed(cfg.master_seed, i as u64, 0) }) {
            Ok(inst) => inst,
            Err(e) => {
                failures.push(format!("sweep-quantum N={n}: {e}"));
                continue;
            }
        };
        let mut points = Vec::new();
        for (j, &eps) in cfg.epsilon.iter().enumerate() {
            let stream = derive_seed(cfg.master_seed, (i * 1000 + j) as u64, 1);
            let qcfg = match QuantumEstimatorConfig::new(eps, cfg.confidence) {
                Ok(c) => c,
                Err(e) => {
                    failures.push(format!("sweep-quantum eps={eps}: {e}"));
                    continue;
                }
            };
            let prep_cost = PrepSpec::new(n, 1, Beta::Infinite, qcfg.prep_eta(n)).and_then(|s| s.oracle_cost());
            let trials: Vec<qpart::Result<QuantumTrial>> = (0..cfg.trials as u64)
                .into_par_iter()
                .map(|t| {
                    let mut ledger = QueryLedger::new();
                    let r = quantum_estimate_z_with(&inst, &qcfg, &mut ledger, &mut trial_rng(stream, t))?;
                    let audit = prep_cost.as_ref().is_ok_and(|&c| audit_class_a(&ledger, c));
                    Ok(QuantumTrial {
                        oh: r.oh_queries,
                        reflections: r.reflections,
                        estimate: r.estimate,
                        rel_err: r.relative_error(),
                        hit: r.hit,
                        audit,
                    })
                })
                .collect();
            let trials: Vec<QuantumTrial> = match trials.into_iter().collect() {
                Ok(v) => v,
                Err(e) => {
                    failures.push(format!("sweep-quantum N={n} eps={eps}: {e}"));
                    continue;
                }
            };
            let m = |f: &dyn Fn(&QuantumTrial) -> f64| mean(&trials.iter().map(f).collect::<Vec<_>>());
            let mut r = row(cfg, "sweep-quantum");
            r.n = Some(n);
            r.beta = Some(Beta::<f64>::Infinite.to_string());
            r.epsilon = Some(eps);
            r.eta = Some(qcfg.prep_eta(n));
            r.oh_queries = m(&|t| t.oh as f64);
            r.reflections = m(&|t| t.reflections as f64);
            r.estimate = Some(m(&|t| t.estimate));
            r.relative_error = Some(m(&|t| t.rel_err));
            let rate = m(&|t| t.hit as u8 as f64);
            r.success_rate = Some(rate);
            if rate < cfg.confidence {
                failures.push(format!("sweep-quantum N={n} eps={eps}: hit rate {rate} < {}", cfg.confidence));
            }
            let bad = trials.iter().filter(|t| !t.audit).count();
            if bad > 0 {
                failures.push(format!("sweep-quantum N={n} eps={eps}: {bad} trials failed the ledger audit"));
            }
            points.push((1.0 / eps, r.reflections));
            rows.push(r);
        }
        push_slope(cfg, "sweep-quantum/slope", &points, QUANTUM_SLOPE, &mut rows, &mut failures);
    }
    RunOutcome { table: Table::Sweep(rows), failures }
}

fn bounds_report(cfg: &ExperimentConfig) -> RunOutcome {
    let mut reports: Vec<BoundReport> = Vec::new();
    let mut failures = Vec::new();
    let eta = cfg.eta[0];
    for &delta in &cfg.delta {
        if let Ok(m) = separation_margin(delta) {
            reports.push(BoundReport { name: "separation_margin", inputs: vec![("delta", delta)], value: m, side: Side::Lower, feasible: None, details: vec![] });
        }
        match classical_instance_conditions(delta) {
            Ok(r) => {
                if let Ok((lo, hi)) = chernoff_tails(r.value * (0.5 + delta), delta) {
                    reports.push(BoundReport {
                        name: "chernoff_tails",
                        inputs: vec![("mu", r.value * (0.5 + delta)), ("t", delta)],
                        value: lo,
                        side: Side::Upper,
                        feasible: None,
                        details: vec![("upper_tail", hi)],
                    });
                }
                reports.push(r);
            }
            Err(e) => failures.push(format!("classical_instance_conditions delta={delta}: {e}")),
        }
        for &n in &cfg.n {
            let nn = n as u64;
            let Ok((l, lp)) = paired_weights(nn, delta) else {
                reports.push(BoundReport {
                    name: "corollary_bound",
                    inputs: vec![("N", n as f64), ("delta", delta)],
                    value: 0.0,
                    side: Side::Lower,
                    feasible: Some(false),
                    details: vec![],
                });
                continue;
            };
            match (hamming_query_bound(nn, l, lp), corollary_bound(nn, delta)) {
                (Ok(h), Ok(c)) => {
                    let ratio = c * delta;
                    if !(COROLLARY_WINDOW.0..=COROLLARY_WINDOW.1).contains(&ratio) {
                        failures.push(format!("corollary_bound N={n} delta={delta}: ratio to 1/delta {ratio}"));
                    }
                    reports.push(BoundReport {
                        name: "hamming_query_bound",
                        inputs: vec![("N", n as f64), ("l", l as f64), ("lp", lp as f64)],
                        value: h,
                        side: Side::Lower,
                        feasible: None,
                        details: vec![],
                    });
                    reports.push(BoundReport {
                        name: "corollary_bound",
                        inputs: vec![("N", n as f64), ("delta", delta)],
                        value: c,
                        side: Side::Lower,
                        feasible: Some(true),
                        details: vec![("ratio_to_inverse_delta", ratio)],
                    });
                }
                (Err(e), _) | (_, Err(e)) => failures.push(format!("hamming bound N={n} delta={delta}: {e}")),
            }
            let cost = PrepSpec::new(n, l.max(1) as usize, Beta::Infinite, eta).and_then(|s| s.oracle_cost());
            match cost.map_err(|e| e.to_string()).and_then(|c| reflection_bound_summary(nn, delta, c as f64, cfg.budget_p, cfg.cap_constant).map_err(|e| e.to_string())) {
                Ok(r) => reports.push(r),
                Err(e) => failures.push(format!("reflection_bound_summary N={n} delta={delta}: {e}")),
            }
        }
    }
    let mut rows = Vec::new();
    for r in &reports {
        if !(r.value.is_finite() && r.value >= 0.0) {
            failures.push(format!("{}: value {} is not finite and nonnegative", r.name, r.value));
        }
        rows.extend(BoundRow::from_report(r));
    }
    RunOutcome { table: Table::Bounds(rows), failures }
}
