//! Gibbs-state preparation for `H_b` and reflections built from it.
//!
//! The preparation `P` acts on the system register extended by one flag
//! qubit and starts from `|s>|0>`:
//!
//! 1. rotate the flag to `a e^{-i phi_T}|0> + b e^{-i phi_perp}|1>`, where
//!    `(a, b)` is the ground/excited split of the Gibbs state for the assumed
//!    weight and `phi_T`, `phi_perp` are the phases the two searches below are
//!    expected to leave on their targets;
//! 2. flag-controlled fixed-point search toward the ground set `T` on the
//!    `|0>` branch and toward its complement on the `|1>` branch;
//! 3. XOR the energy bit into the flag, which clears it on both targets.
//!
//! The flag-clear part is then `~ a|T> + b|T_perp>` with `|T>` and `|T_perp>`
//! the true uniform superpositions, whatever the true weight is, as long as
//! it stays within the search floors. Search errors land on the set flag.
//! At `beta = inf` (or whenever `b = 0`) only the ground search runs.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::gibbs::{gibbs_split, Beta, BitStringInstance};
use crate::scalar::Scalar;
use crate::statevector::{flag_gate_adjoint, FlagGate, QueryLedger, StateVector};

use super::search::FixedPointSearch;

/// Fraction of the assumed overlap used as the search floor. A preparation
/// stays valid for true weights down to a quarter of the assumed one.
pub const WEIGHT_MARGIN: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrepSpec<T> {
    pub beta: Beta<T>,
    pub assumed_weight: usize,
    pub eta: T,
    pub n: usize,
}

impl<T: Scalar> PrepSpec<T> {
    pub fn new(n: usize, assumed_weight: usize, beta: Beta<T>, eta: T) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        if assumed_weight == 0 || assumed_weight > n {
            return Err(Error::WeightOutOfRange { weight: assumed_weight, n });
        }
        if !(eta > T::zero() && eta <= T::one()) {
            return Err(Error::EtaOutOfRange(eta.to_f64_lossy()));
        }
        Ok(Self { beta, assumed_weight, eta, n })
    }

    /// Plans the circuit; the plan depends on the spec only, never on the
    /// hidden string.
    pub fn plan(&self) -> Result<PrepPlan<T>> {
        PrepPlan::new(self)
    }

    /// `O_H` queries one application of `P` (or `P^-1`) makes.
    pub fn oracle_cost(&self) -> Result<u64> {
        Ok(self.plan()?.cost())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrepPlan<T> {
    spec: PrepSpec<T>,
    ground: FixedPointSearch<T>,
    excited: Option<(FixedPointSearch<T>, FlagGate<T>)>,
}

impl<T: Scalar> PrepPlan<T> {
    fn new(spec: &PrepSpec<T>) -> Result<Self> {
        let spec = PrepSpec::new(spec.n, spec.assumed_weight, spec.beta, spec.eta)?;
        let margin = T::from_f64_lossy(WEIGHT_MARGIN);
        let lambda = T::from_usize_lossy(spec.assumed_weight) / T::from_usize_lossy(spec.n);
        let ground = FixedPointSearch::new(lambda * margin, spec.eta)?;
        let (a, b) = gibbs_split(spec.n, spec.assumed_weight, spec.beta);
        let excited = if b > T::zero() {
            let excited = FixedPointSearch::new((T::one() - lambda) * margin, spec.eta)?;
            let phase_t = ground.schedule().target_amplitude(lambda).arg();
            let phase_p = excited.schedule().target_amplitude(T::one() - lambda).arg();
            let u0 = Complex::from_polar(a, -phase_t);
            let u1 = Complex::from_polar(b, -phase_p);
            let gate = [[u0, -u1.conj()], [u1, u0.conj()]];
            Some((excited, gate))
        } else {
            None
        };
        Ok(Self { spec, ground, excited })
    }

    pub fn spec(&self) -> &PrepSpec<T> {
        &self.spec
    }

    pub fn ground_search(&self) -> &FixedPointSearch<T> {
        &self.ground
    }

    pub fn excited_search(&self) -> Option<&FixedPointSearch<T>> {
        self.excited.as_ref().map(|(s, _)| s)
    }

    pub fn cost(&self) -> u64 {
        let ground = self.ground.queries() as u64;
        match &self.excited {
            Some((s, _)) => ground + s.queries() as u64 + 1,
            None => ground,
        }
    }
}

/// Masks and start axes on the flagged register of one instance.
struct FlaggedFrame<T> {
    n: usize,
    ground_on_clear: Vec<bool>,
    excited_on_set: Vec<bool>,
    excited: Vec<bool>,
    start_clear: StateVector<T>,
    start_set: StateVector<T>,
}

impl<T: Scalar> FlaggedFrame<T> {
    fn new(inst: &BitStringInstance) -> Result<Self> {
        let n = inst.n();
        let bits = inst.bits();
        let ground_on_clear = (0..2 * n).map(|i| i < n && bits[i]).collect();
        let excited_on_set = (0..2 * n).map(|i| i >= n && !bits[i - n]).collect();
        let start_clear = StateVector::uniform(n)?.with_flag_qubit()?;
        let mut set = vec![Complex::zero(); 2 * n];
        set[n..].copy_from_slice(StateVector::<T>::uniform(n)?.amplitudes());
        Ok(Self {
            n,
            ground_on_clear,
            excited_on_set,
            excited: inst.excited_mask(),
            start_clear,
            start_set: StateVector::from_amplitudes(set)?,
        })
    }
}

fn check_instance<T: Scalar>(inst: &BitStringInstance, spec: &PrepSpec<T>) -> Result<()> {
    if inst.n() != spec.n {
        return Err(Error::DimensionMismatch { expected: spec.n, found: inst.n() });
    }
    if inst.weight() == 0 {
        return Err(Error::EmptyTarget);
    }
    Ok(())
}

fn apply_forward<T: Scalar>(plan: &PrepPlan<T>, frame: &FlaggedFrame<T>, state: &mut StateVector<T>, ledger: &mut QueryLedger) -> Result<()> {
    if let Some((_, gate)) = &plan.excited {
        state.apply_flag_gate(frame.n, gate)?;
    }
    plan.ground.apply(state, &frame.start_clear, &frame.ground_on_clear, ledger)?;
    if let Some((search, _)) = &plan.excited {
        search.apply(state, &frame.start_set, &frame.excited_on_set, ledger)?;
        state.apply_flag_xor(frame.n, &frame.excited, ledger)?;
    }
    ledger.record_preparation();
    Ok(())
}

fn apply_backward<T: Scalar>(plan: &PrepPlan<T>, frame: &FlaggedFrame<T>, state: &mut StateVector<T>, ledger: &mut QueryLedger) -> Result<()> {
    if let Some((search, _)) = &plan.excited {
        state.apply_flag_xor(frame.n, &frame.excited, ledger)?;
        search.apply_inverse(state, &frame.start_set, &frame.excited_on_set, ledger)?;
    }
    plan.ground.apply_inverse(state, &frame.start_clear, &frame.ground_on_clear, ledger)?;
    if let Some((_, gate)) = &plan.excited {
        state.apply_flag_gate(frame.n, &flag_gate_adjoint(gate))?;
    }
    ledger.record_preparation();
    Ok(())
}

/// `P|s>|0>`, a `2N`-dimensional state whose flag-clear half approximates the
/// Gibbs state for the assumed weight.
pub fn prepare_gibbs<T: Scalar>(inst: &BitStringInstance, spec: &PrepSpec<T>, ledger: &mut QueryLedger) -> Result<StateVector<T>> {
    check_instance(inst, spec)?;
    let plan = spec.plan()?;
    let frame = FlaggedFrame::new(inst)?;
    let mut state = frame.start_clear.clone();
    apply_forward(&plan, &frame, &mut state, ledger)?;
    Ok(state)
}

/// Applies `2|m><m| - I` for the prepared state `|m> = P|s>|0>`, as
/// `P (2|s,0><s,0| - I) P^-1`. Costs two preparations.
pub fn reflect_through_gibbs<T: Scalar>(
    state: &mut StateVector<T>,
    inst: &BitStringInstance,
    spec: &PrepSpec<T>,
    ledger: &mut QueryLedger,
) -> Result<()> {
    check_instance(inst, spec)?;
    if state.dimension() != 2 * inst.n() {
        return Err(Error::DimensionMismatch { expected: 2 * inst.n(), found: state.dimension() });
    }
    let plan = spec.plan()?;
    let frame = FlaggedFrame::new(inst)?;
    apply_backward(&plan, &frame, state, ledger)?;
    state.apply_reflection_about(&frame.start_clear, T::PI())?;
    state.negate();
    apply_forward(&plan, &frame, state, ledger)?;
    ledger.record_reflection();
    Ok(())
}

/// A reflection through a prepared Gibbs state with the prepared vector
/// cached.
///
/// `P (2|s,0><s,0| - I) P^-1 = 2 P|s,0><s,0|P^-1 - I`, so applying the rank-one
/// form to the cached `P|s,0>` gives the same operator at `O(N)` simulation
/// cost. The ledger is charged exactly as [`reflect_through_gibbs`] would be.
#[derive(Debug, Clone)]
pub struct GibbsReflector<T> {
    prepared: StateVector<T>,
    prep_cost: u64,
}

impl<T: Scalar> GibbsReflector<T> {
    pub fn new(inst: &BitStringInstance, spec: &PrepSpec<T>) -> Result<Self> {
        let mut scratch = QueryLedger::new();
        let prepared = prepare_gibbs(inst, spec, &mut scratch)?;
        Ok(Self { prepared, prep_cost: scratch.oh_queries() })
    }

    pub fn prepared(&self) -> &StateVector<T> {
        &self.prepared
    }

    /// `O_H` queries per preparation.
    pub fn prep_cost(&self) -> u64 {
        self.prep_cost
    }

    pub fn reflect(&self, state: &mut StateVector<T>, ledger: &mut QueryLedger) -> Result<()> {
        state.apply_reflection_about(&self.prepared, T::PI())?;
        state.negate();
        ledger.charge_oracle_n(2 * self.prep_cost);
        ledger.record_preparation();
        ledger.record_preparation();
        ledger.record_reflection();
        Ok(())
    }

    /// Probability that un-preparing `state` returns the reference `|s,0>`,
    /// i.e. `|<m|state>|^2`. Costs one preparation.
    pub fn projection_probability(&self, state: &StateVector<T>, ledger: &mut QueryLedger) -> Result<T> {
        let p = self.prepared.fidelity(state)?;
        ledger.charge_oracle_n(self.prep_cost);
        ledger.record_preparation();
        Ok(p)
    }
}

/// Exact amplitude amplification toward `a|T> + b|T_perp>`, computed from the
/// assumed weight.
///
/// Runs `k` standard Grover iterates followed by one generalized iterate whose
/// phases land the `|T>` amplitude exactly on `a`. Exact only when the assumed
/// weight is the true one; used to cross-check the fixed-point route.
/// Returns an `N`-dimensional state.
pub fn prepare_gibbs_exact_rotation<T: Scalar>(
    inst: &BitStringInstance,
    spec: &PrepSpec<T>,
    ledger: &mut QueryLedger,
) -> Result<StateVector<T>> {
    check_instance(inst, spec)?;
    let spec = PrepSpec::new(spec.n, spec.assumed_weight, spec.beta, spec.eta)?;
    let n = spec.n;
    let lambda = T::from_usize_lossy(spec.assumed_weight) / T::from_usize_lossy(n);
    let (a, b) = gibbs_split(n, spec.assumed_weight, spec.beta);
    let start = StateVector::uniform(n)?;
    let mut state = start.clone();
    if spec.assumed_weight == n {
        return Ok(state);
    }
    let marked = inst.ground_mask();
    let theta = lambda.sqrt().asin();
    let target_angle = a.min(T::one()).asin();
    // Largest k with (2k + 1) theta <= target angle.
    let ratio = ((target_angle / theta - T::one()) / T::from_f64_lossy(2.0)).floor();
    let k = ratio.max(T::zero()).to_usize().unwrap_or(0);
    for _ in 0..k {
        state.apply_marked_phase_flip(&marked, T::PI(), ledger)?;
        state.apply_reflection_about(&start, T::PI())?;
        state.negate();
    }
    let psi = T::from_usize_lossy(2 * k + 1) * theta;
    if (target_angle - psi).abs() <= T::NORM_TOL {
        return Ok(state);
    }
    let (alpha, beta) = final_iterate_phases(theta, psi, a, b);
    state.apply_marked_phase_flip(&marked, beta, ledger)?;
    state.apply_reflection_about(&start, -alpha)?;
    state.negate();
    Ok(state)
}

/// Phases `(alpha, beta)` for `-S_s(alpha) S_t(beta)` carrying
/// `sin(psi)|T> + cos(psi)|T_perp>` to `a|T> + b|T_perp>` up to global phase,
/// where `|s> = sin(theta)|T> + cos(theta)|T_perp>`.
fn final_iterate_phases<T: Scalar>(theta: T, psi: T, a: T, b: T) -> (T, T) {
    let (st, ct) = (theta.sin(), theta.cos());
    let (sp, cp) = (psi.sin(), psi.cos());
    let two = T::from_f64_lossy(2.0);
    // |<s|S_t(beta) v>|^2 must equal <s|target>^2.
    let t_s = st * a + ct * b;
    let denom = two * st * ct * sp * cp;
    let cos_beta = if denom.abs() <= T::epsilon() {
        T::one()
    } else {
        ((t_s * t_s - st * st * sp * sp - ct * ct * cp * cp) / denom).max(-T::one()).min(T::one())
    };
    let mut best = (T::zero(), T::zero(), -T::one());
    for beta in [cos_beta.acos(), -cos_beta.acos()] {
        // Decompose S_t(beta) v on (s, s_perp), s_perp = cos(theta)|T> - sin(theta)|T_perp>.
        let vt = Complex::from_polar(sp, beta);
        let vp = Complex::new(cp, T::zero());
        let c_s = vt * st + vp * ct;
        let c_p = vt * ct - vp * st;
        let t_p = ct * a - st * b;
        // Want e^{-i alpha} c_s / c_p = t_s / t_p.
        let alpha = if c_s.norm() <= T::epsilon() || c_p.norm() <= T::epsilon() || t_p.abs() <= T::epsilon() {
            T::zero()
        } else {
            -((Complex::new(t_s, T::zero()) * c_p) / (Complex::new(t_p, T::zero()) * c_s)).arg()
        };
        let out_s = c_s * Complex::from_polar(T::one(), -alpha);
        let overlap = (out_s * t_s + c_p * t_p).norm();
        if overlap > best.2 {
            best = (alpha, beta, overlap);
        }
    }
    (best.0, best.1)
}
