//! Dense state vectors with instrumented oracle application.
//!
//! Every public mutation re-checks the norm. Nothing is renormalized: a drift
//! beyond [`Scalar::NORM_TOL`] surfaces as [`Error::NormViolation`].

use num_complex::Complex;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest supported basis size.
pub const MAX_DIMENSION: usize = 1 << 20;

/// A 2x2 unitary acting on the flag qubit, row-major.
pub type FlagGate<T> = [[Complex<T>; 2]; 2];

/// Monotone counters for oracle queries, preparations and reflections.
///
/// Counters can only grow. Every `O_H` query is simulated with exactly one
/// `O_b` query, so the two counters advance together.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct QueryLedger {
    ob_queries: u64,
    oh_queries: u64,
    preparations: u64,
    reflections: u64,
}

impl QueryLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn ob_queries(&self) -> u64 {
        self.ob_queries
    }

    pub fn oh_queries(&self) -> u64 {
        self.oh_queries
    }

    pub fn preparations(&self) -> u64 {
        self.preparations
    }

    pub fn reflections(&self) -> u64 {
        self.reflections
    }

    /// One query to `O_H`, realized by one query to `O_b`.
    pub fn charge_oracle(&mut self) {
        self.charge_oracle_n(1);
    }

    pub fn charge_oracle_n(&mut self, n: u64) {
        self.oh_queries += n;
        self.ob_queries += n;
    }

    pub fn record_preparation(&mut self) {
        self.preparations += 1;
    }

    pub fn record_reflection(&mut self) {
        self.reflections += 1;
    }

    /// Adds another ledger's counts; merging is commutative.
    pub fn merge(&mut self, other: &QueryLedger) {
        self.ob_queries += other.ob_queries;
        self.oh_queries += other.oh_queries;
        self.preparations += other.preparations;
        self.reflections += other.reflections;
    }

    /// Adds `times` copies of another ledger, as when one simulated circuit
    /// stands for `times` identical runs.
    pub fn merge_repeated(&mut self, other: &QueryLedger, times: u64) {
        self.ob_queries += other.ob_queries * times;
        self.oh_queries += other.oh_queries * times;
        self.preparations += other.preparations * times;
        self.reflections += other.reflections * times;
    }

    /// Counter-wise difference `self - earlier`, for attributing costs to a span.
    pub fn since(&self, earlier: &QueryLedger) -> QueryLedger {
        QueryLedger {
            ob_queries: self.ob_queries - earlier.ob_queries,
            oh_queries: self.oh_queries - earlier.oh_queries,
            preparations: self.preparations - earlier.preparations,
            reflections: self.reflections - earlier.reflections,
        }
    }
}

/// Normalized complex amplitudes over a finite computational basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T> {
    amps: Vec<Complex<T>>,
}

fn check_dimension(d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    if d > MAX_DIMENSION {
        return Err(Error::DimensionTooLarge(d));
    }
    Ok(())
}

impl<T: Scalar> StateVector<T> {
    /// The uniform superposition `|s>` over `d` basis states.
    pub fn uniform(d: usize) -> Result<Self> {
        check_dimension(d)?;
        let a = T::one() / T::from_usize_lossy(d).sqrt();
        Ok(Self { amps: vec![Complex::new(a, T::zero()); d] })
    }

    pub fn basis(d: usize, index: usize) -> Result<Self> {
        check_dimension(d)?;
        if index >= d {
            return Err(Error::IndexOutOfRange { index, n: d });
        }
        let mut amps = vec![Complex::zero(); d];
        amps[index] = Complex::one();
        Ok(Self { amps })
    }

    pub fn from_amplitudes(amps: Vec<Complex<T>>) -> Result<Self> {
        check_dimension(amps.len())?;
        let s = Self { amps };
        s.check_norm()?;
        Ok(s)
    }

    pub fn from_real(amps: Vec<T>) -> Result<Self> {
        Self::from_amplitudes(amps.into_iter().map(|a| Complex::new(a, T::zero())).collect())
    }

    pub fn dimension(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn norm(&self) -> T {
        self.amps.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr()).sqrt()
    }

    pub fn probabilities(&self) -> Vec<T> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    fn check_norm(&self) -> Result<()> {
        let n = self.norm();
        if (n - T::one()).abs() > T::NORM_TOL || !n.is_finite() {
            return Err(Error::NormViolation(n.to_f64_lossy()));
        }
        Ok(())
    }

    fn check_same_dimension(&self, other: &Self) -> Result<()> {
        if self.dimension() != other.dimension() {
            return Err(Error::DimensionMismatch { expected: self.dimension(), found: other.dimension() });
        }
        Ok(())
    }

    /// Multiplies the amplitude of every marked index by `e^{i phase}`.
    ///
    /// Costs one `O_H` query (phase kickback on an ancilla prepared from the
    /// energy bit).
    pub fn apply_marked_phase_flip(&mut self, marked: &[bool], phase: T, ledger: &mut QueryLedger) -> Result<()> {
        if marked.len() != self.dimension() {
            return Err(Error::DimensionMismatch { expected: self.dimension(), found: marked.len() });
        }
        let factor = Complex::from_polar(T::one(), phase);
        for (a, &m) in self.amps.iter_mut().zip(marked) {
            if m {
                *a = *a * factor;
            }
        }
        ledger.charge_oracle();
        self.check_norm()
    }

    /// Applies `I + (e^{i phase} - 1)|axis><axis|`.
    ///
    /// At `phase = pi` this is `I - 2|axis><axis|`; callers wanting
    /// `2|axis><axis| - I` negate afterwards.
    pub fn apply_reflection_about(&mut self, axis: &StateVector<T>, phase: T) -> Result<()> {
        self.check_same_dimension(axis)?;
        let axis_norm = axis.norm();
        if (axis_norm - T::one()).abs() > T::AXIS_TOL {
            return Err(Error::UnnormalizedAxis(axis_norm.to_f64_lossy()));
        }
        let overlap = axis.inner_product_unchecked(self);
        let coeff = (Complex::from_polar(T::one(), phase) - Complex::one()) * overlap;
        for (a, b) in self.amps.iter_mut().zip(&axis.amps) {
            *a = *a + coeff * *b;
        }
        self.check_norm()
    }

    fn inner_product_unchecked(&self, other: &Self) -> Complex<T> {
        self.amps
            .iter()
            .zip(&other.amps)
            .fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * *b)
    }

    /// `<self|other>`.
    pub fn inner_product(&self, other: &StateVector<T>) -> Result<Complex<T>> {
        self.check_same_dimension(other)?;
        Ok(self.inner_product_unchecked(other))
    }

    /// `|<self|other>|^2`.
    pub fn fidelity(&self, other: &StateVector<T>) -> Result<T> {
        self.inner_product(other).map(|c| c.norm_sqr())
    }

    /// Multiplies the whole state by `-1`.
    pub fn negate(&mut self) {
        for a in &mut self.amps {
            *a = -*a;
        }
    }

    /// Samples a basis index with probability `|amplitude|^2`.
    pub fn measure_sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        let mut last_nonzero = 0;
        for (i, a) in self.amps.iter().enumerate() {
            let p = a.norm_sqr().to_f64_lossy();
            if p > 0.0 {
                last_nonzero = i;
            }
            acc += p;
            if u < acc {
                return i;
            }
        }
        last_nonzero
    }

    /// Embeds the state into a register extended by one flag qubit, flag clear.
    ///
    /// Index `x` of the result is `(x, flag = 0)` and index `x + d` is
    /// `(x, flag = 1)`.
    pub fn with_flag_qubit(&self) -> Result<Self> {
        let d = self.dimension();
        check_dimension(2 * d)?;
        let mut amps = self.amps.clone();
        amps.resize(2 * d, Complex::zero());
        Ok(Self { amps })
    }

    fn check_flag_layout(&self, block: usize) -> Result<()> {
        if block == 0 || self.dimension() != 2 * block {
            return Err(Error::DimensionMismatch { expected: 2 * block, found: self.dimension() });
        }
        Ok(())
    }

    /// Applies a single-qubit gate to the flag qubit. No oracle queries.
    pub fn apply_flag_gate(&mut self, block: usize, gate: &FlagGate<T>) -> Result<()> {
        self.check_flag_layout(block)?;
        let (lo, hi) = self.amps.split_at_mut(block);
        for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
            let (x0, x1) = (*a0, *a1);
            *a0 = gate[0][0] * x0 + gate[0][1] * x1;
            *a1 = gate[1][0] * x0 + gate[1][1] * x1;
        }
        self.check_norm()
    }

    /// XORs the energy bit into the flag qubit: swaps `(x, 0)` and `(x, 1)`
    /// for every `x` with `marked[x]`. Costs one `O_H` query.
    pub fn apply_flag_xor(&mut self, block: usize, marked: &[bool], ledger: &mut QueryLedger) -> Result<()> {
        self.check_flag_layout(block)?;
        if marked.len() != block {
            return Err(Error::DimensionMismatch { expected: block, found: marked.len() });
        }
        let (lo, hi) = self.amps.split_at_mut(block);
        for ((a0, a1), &m) in lo.iter_mut().zip(hi.iter_mut()).zip(marked) {
            if m {
                std::mem::swap(a0, a1);
            }
        }
        ledger.charge_oracle();
        self.check_norm()
    }

    /// Squared norm of the flag-clear half of a flagged register.
    pub fn flag_clear_weight(&self, block: usize) -> Result<T> {
        self.check_flag_layout(block)?;
        Ok(self.amps[..block].iter().fold(T::zero(), |acc, a| acc + a.norm_sqr()))
    }
}

/// Conjugate transpose of a flag gate.
pub fn flag_gate_adjoint<T: Scalar>(g: &FlagGate<T>) -> FlagGate<T> {
    [[g[0][0].conj(), g[1][0].conj()], [g[0][1].conj(), g[1][1].conj()]]
}
