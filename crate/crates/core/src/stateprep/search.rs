use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::statevector::{QueryLedger, StateVector};

use super::schedule::{fixed_point_phase_schedule, select_length, PhaseSchedule};

/// A fixed-point search configured for an overlap floor, non-adaptively.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointSearch<T> {
    lambda_lower: T,
    schedule: PhaseSchedule<T>,
}

impl<T: Scalar> FixedPointSearch<T> {
    pub fn new(lambda_lower: T, eta: T) -> Result<Self> {
        let l = select_length(lambda_lower, eta)?;
        Ok(Self { lambda_lower, schedule: fixed_point_phase_schedule(l, eta)? })
    }

    pub fn schedule(&self) -> &PhaseSchedule<T> {
        &self.schedule
    }

    pub fn lambda_lower(&self) -> T {
        self.lambda_lower
    }

    pub fn queries(&self) -> usize {
        self.schedule.queries()
    }

    /// `L / (ln(2/eta) / sqrt(lambda_lower))`, the constant this instance
    /// realizes in `L <= C ln(2/eta) / sqrt(lambda_lower)`.
    pub fn envelope_constant(&self) -> T {
        let two = T::from_f64_lossy(2.0);
        T::from_usize_lossy(self.queries()) * self.lambda_lower.sqrt() / (two / self.schedule.eta()).ln()
    }

    /// Runs `F` on `state`, reflecting about `start` and phasing `marked`.
    ///
    /// `state`, `start` and `marked` share one dimension; on a flagged register
    /// `start` and `marked` select one branch, which makes this the
    /// flag-controlled search.
    pub fn apply(&self, state: &mut StateVector<T>, start: &StateVector<T>, marked: &[bool], ledger: &mut QueryLedger) -> Result<()> {
        apply_schedule(&self.schedule, state, start, marked, ledger)
    }

    pub fn apply_inverse(&self, state: &mut StateVector<T>, start: &StateVector<T>, marked: &[bool], ledger: &mut QueryLedger) -> Result<()> {
        apply_schedule_inverse(&self.schedule, state, start, marked, ledger)
    }

    /// `F|s>` over `marked.len()` basis states.
    pub fn run(&self, marked: &[bool], ledger: &mut QueryLedger) -> Result<StateVector<T>> {
        if !marked.iter().any(|&m| m) {
            return Err(Error::EmptyTarget);
        }
        let start = StateVector::uniform(marked.len())?;
        let mut state = start.clone();
        self.apply(&mut state, &start, marked, ledger)?;
        Ok(state)
    }
}

pub(crate) fn apply_schedule<T: Scalar>(
    schedule: &PhaseSchedule<T>,
    state: &mut StateVector<T>,
    start: &StateVector<T>,
    marked: &[bool],
    ledger: &mut QueryLedger,
) -> Result<()> {
    for &(alpha, beta) in schedule.pairs() {
        state.apply_marked_phase_flip(marked, beta, ledger)?;
        state.apply_reflection_about(start, -alpha)?;
        state.negate();
    }
    Ok(())
}

pub(crate) fn apply_schedule_inverse<T: Scalar>(
    schedule: &PhaseSchedule<T>,
    state: &mut StateVector<T>,
    start: &StateVector<T>,
    marked: &[bool],
    ledger: &mut QueryLedger,
) -> Result<()> {
    for &(alpha, beta) in schedule.pairs().iter().rev() {
        state.negate();
        state.apply_reflection_about(start, alpha)?;
        state.apply_marked_phase_flip(marked, -beta, ledger)?;
    }
    Ok(())
}

/// Fixed-point search from the uniform state toward the marked set.
///
/// The caller guarantees that the marked fraction is at least
/// `lambda_lower`; a violated floor cannot be detected and is not reported.
pub fn fixed_point_search<T: Scalar>(marked: &[bool], lambda_lower: T, eta: T, ledger: &mut QueryLedger) -> Result<StateVector<T>> {
    FixedPointSearch::new(lambda_lower, eta)?.run(marked, ledger)
}
