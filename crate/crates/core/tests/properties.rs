use num_complex::Complex;
use proptest::prelude::*;
use qpart::gibbs::{assumed_weight_state, build_instance, overlap_wrong_weight_closed, partition_function_closed, InstanceSpec};
use qpart::stateprep::{fixed_point_phase_schedule, fixed_point_search, FixedPointSearch};
use qpart::{Beta, GibbsModel, QueryLedger, StateVector};

fn unit_vector(raw: &[(f64, f64)]) -> Option<StateVector<f64>> {
    let norm = raw.iter().map(|(a, b)| a * a + b * b).sum::<f64>().sqrt();
    if norm < 1e-3 {
        return None;
    }
    StateVector::from_amplitudes(raw.iter().map(|&(a, b)| Complex::new(a / norm, b / norm)).collect()).ok()
}

fn amp_pairs(d: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d)
}

fn max_diff(a: &StateVector<f64>, b: &StateVector<f64>) -> f64 {
    a.amplitudes().iter().zip(b.amplitudes()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn phase_flips_preserve_norm_and_commute(
        raw in amp_pairs(16),
        m1 in prop::collection::vec(any::<bool>(), 16),
        m2 in prop::collection::vec(any::<bool>(), 16),
        p1 in -3.0f64..3.0,
        p2 in -3.0f64..3.0,
    ) {
        let Some(v) = unit_vector(&raw) else { return Ok(()); };
        let mut ledger = QueryLedger::new();
        let (mut a, mut b) = (v.clone(), v);
        a.apply_marked_phase_flip(&m1, p1, &mut ledger).unwrap();
        a.apply_marked_phase_flip(&m2, p2, &mut ledger).unwrap();
        b.apply_marked_phase_flip(&m2, p2, &mut ledger).unwrap();
        b.apply_marked_phase_flip(&m1, p1, &mut ledger).unwrap();
        prop_assert!((a.norm() - 1.0).abs() < 1e-12);
        prop_assert!(max_diff(&a, &b) < 1e-12);
        prop_assert_eq!(ledger.oh_queries(), 4);
        prop_assert_eq!(ledger.ob_queries(), 4);
    }

    #[test]
    fn reflection_by_pi_is_an_involution(raw in amp_pairs(12), axis in amp_pairs(12), phase in -3.0f64..3.0) {
        let (Some(v), Some(ax)) = (unit_vector(&raw), unit_vector(&axis)) else { return Ok(()); };
        let mut w = v.clone();
        w.apply_reflection_about(&ax, std::f64::consts::PI).unwrap();
        w.apply_reflection_about(&ax, std::f64::consts::PI).unwrap();
        prop_assert!(max_diff(&w, &v) < 1e-12);
        w.apply_reflection_about(&ax, phase).unwrap();
        w.apply_reflection_about(&ax, -phase).unwrap();
        prop_assert!(max_diff(&w, &v) < 1e-12);
        prop_assert!((w.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn partition_function_closed_matches_bruteforce(n in 1usize..600, frac in 0.0f64..=1.0, beta in 0.0f64..20.0, seed in any::<u64>()) {
        let w = ((n as f64) * frac).floor() as usize;
        let inst = build_instance(n, InstanceSpec::ExactWeight { weight: w, seed }).unwrap();
        for b in [Beta::Finite(beta), Beta::Infinite] {
            let brute = GibbsModel::from_instance(&inst, b).unwrap().partition_function_bruteforce();
            let closed = partition_function_closed(&inst, b);
            prop_assert!((brute - closed).abs() <= 1e-12 * closed.max(1e-300), "{} vs {}", brute, closed);
        }
    }

    #[test]
    fn overlap_is_monotone_in_beta(delta in 0.001f64..0.499, b1 in 0.0f64..30.0, b2 in 0.0f64..30.0) {
        let (lo, hi) = if b1 <= b2 { (b1, b2) } else { (b2, b1) };
        let f = |b: f64| overlap_wrong_weight_closed(delta, Beta::Finite(b)).unwrap();
        prop_assert!(f(lo) <= f(hi) + 1e-15);
        prop_assert!(f(hi) <= 1.0);
        prop_assert_eq!(overlap_wrong_weight_closed(delta, Beta::<f64>::Infinite).unwrap(), 1.0);
    }

    #[test]
    fn overlap_is_symmetric_under_swap(half in 4usize..80, shift_frac in 0.01f64..0.49, beta in 0.0f64..8.0, seed in any::<u64>()) {
        let n = 2 * half;
        let shift = ((half as f64 * shift_frac).round() as usize).clamp(1, half - 1);
        let (wh, wl) = (half + shift, half - shift);
        let heavy = build_instance(n, InstanceSpec::ExactWeight { weight: wh, seed }).unwrap();
        let light = build_instance(n, InstanceSpec::ExactWeight { weight: wl, seed: seed ^ 1 }).unwrap();
        let b = Beta::Finite(beta);
        let overlap = |inst: &qpart::BitStringInstance, assumed: usize| {
            let truth = GibbsModel::from_instance(inst, b).unwrap().gibbs_state_exact().unwrap();
            assumed_weight_state(inst, assumed, b).unwrap().inner_product(&truth).unwrap().norm()
        };
        let closed = overlap_wrong_weight_closed(shift as f64 / n as f64, b).unwrap();
        prop_assert!((overlap(&heavy, wl) - overlap(&light, wh)).abs() < 1e-12);
        prop_assert!((overlap(&heavy, wl) - closed).abs() < 1e-12);
    }

    #[test]
    fn inner_product_is_conjugate_symmetric(a in amp_pairs(10), b in amp_pairs(10)) {
        let (Some(u), Some(v)) = (unit_vector(&a), unit_vector(&b)) else { return Ok(()); };
        let x = u.inner_product(&v).unwrap();
        let y = v.inner_product(&u).unwrap();
        prop_assert!((x - y.conj()).norm() < 1e-14);
    }

    #[test]
    fn fixed_point_floor_holds(n_exp in 3u32..8, frac_floor in 0.02f64..1.0, extra in 0.0f64..1.0, eta in 0.05f64..0.5) {
        let n = 1usize << n_exp;
        let floor = frac_floor.max(1.0 / n as f64);
        let k_min = (floor * n as f64).ceil() as usize;
        let k = k_min + ((n - k_min) as f64 * extra) as usize;
        let marked: Vec<bool> = (0..n).map(|i| i < k).collect();
        let mut ledger = QueryLedger::new();
        let out = fixed_point_search(&marked, floor, eta, &mut ledger).unwrap();
        let p: f64 = out.probabilities().iter().zip(&marked).filter(|(_, &m)| m).map(|(p, _)| p).sum();
        prop_assert!(p >= 1.0 - eta * eta - 1e-10, "p {} eta {}", p, eta);
        prop_assert_eq!(ledger.oh_queries(), FixedPointSearch::new(floor, eta).unwrap().queries() as u64);
    }

    #[test]
    fn schedules_have_odd_length_and_mirror(l_half in 0usize..20, eta in 0.01f64..1.0) {
        let l = 2 * l_half + 1;
        let s = fixed_point_phase_schedule(l, eta).unwrap();
        prop_assert_eq!(s.queries(), l);
        let p = s.pairs();
        for j in 0..l {
            let d = (p[j].0 + p[l - 1 - j].1).rem_euclid(std::f64::consts::TAU);
            prop_assert!(d < 1e-9 || (std::f64::consts::TAU - d) < 1e-9);
        }
    }
}

#[test]
fn sampling_matches_probabilities() {
    use qpart::rng::trial_rng;
    let amps: Vec<f64> = [1.0f64, 2.0, 3.0, 4.0, 0.0, 1.5].iter().map(|x| x.sqrt()).collect();
    let norm = amps.iter().map(|a| a * a).sum::<f64>().sqrt();
    let v = StateVector::from_real(amps.iter().map(|a| a / norm).collect()).unwrap();
    let mut rng = trial_rng(11, 0);
    let trials = 200_000;
    let mut counts = [0usize; 6];
    for _ in 0..trials {
        counts[v.measure_sample(&mut rng)] += 1;
    }
    let tv: f64 = counts.iter().zip(v.probabilities()).map(|(&c, p)| (c as f64 / trials as f64 - p).abs()).sum::<f64>() / 2.0;
    assert!(tv <= 0.01, "{tv}");
    assert_eq!(counts[4], 0);
}

#[test]
fn f32_and_f64_paths_agree() {
    let n = 64;
    let marked: Vec<bool> = (0..n).map(|i| i % 5 == 0).collect();
    let a = fixed_point_search::<f64>(&marked, 0.1, 0.1, &mut QueryLedger::new()).unwrap();
    let b = fixed_point_search::<f32>(&marked, 0.1, 0.1, &mut QueryLedger::new()).unwrap();
    for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
        assert!((x.re - y.re as f64).abs() < 1e-3 && (x.im - y.im as f64).abs() < 1e-3);
    }
}
