//! Hamiltonians, partition functions and Gibbs states.
//!
//! Two routes compute every partition function: a brute-force sum over the
//! configuration space and, for bit-string Hamiltonians `H_b(x) = 1 - b_x`,
//! the closed form `Z(beta) = |b| + (N - |b|) e^{-beta}`.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::statevector::StateVector;

/// Inverse temperature, with zero temperature as a distinguished value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Beta<T> {
    Finite(T),
    Infinite,
}

impl<T: Scalar> Beta<T> {
    pub fn finite(beta: T) -> Result<Self> {
        if beta.is_nan() || beta < T::zero() {
            return Err(Error::NegativeBeta(beta.to_f64_lossy()));
        }
        if beta.is_infinite() {
            return Ok(Beta::Infinite);
        }
        Ok(Beta::Finite(beta))
    }

    pub fn zero() -> Self {
        Beta::Finite(T::zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Beta::Infinite)
    }

    /// `e^{-beta}`, exactly zero at infinite beta.
    pub fn decay(&self) -> T {
        match self {
            Beta::Finite(b) => (-*b).exp(),
            Beta::Infinite => T::zero(),
        }
    }

    /// `e^{-beta E}` with the zero-temperature limit taken exactly.
    pub fn boltzmann(&self, energy: u32) -> T {
        match self {
            _ if energy == 0 => T::one(),
            Beta::Finite(b) => (-*b * T::from_u32(energy).expect("u32 fits")).exp(),
            Beta::Infinite => T::zero(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Beta::Finite(b) => b.to_f64_lossy(),
            Beta::Infinite => f64::INFINITY,
        }
    }
}

impl<T: Scalar> fmt::Display for Beta<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Beta::Finite(b) => write!(f, "{b}"),
            Beta::Infinite => f.write_str("inf"),
        }
    }
}

impl<T: Scalar> FromStr for Beta<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") {
            return Ok(Beta::Infinite);
        }
        let v: f64 = s.parse().map_err(|_| Error::Parse(format!("bad beta {s:?}")))?;
        Beta::finite(T::from_f64_lossy(v))
    }
}

/// How to populate a hidden bit string.
#[derive(Debug, Clone, PartialEq)]
pub enum InstanceSpec {
    /// Exactly `weight` ones, placed uniformly at random.
    ExactWeight { weight: usize, seed: u64 },
    Explicit(Vec<bool>),
    /// I.i.d. bits with `P[b_x = 1] = p`.
    Bernoulli { p: f64, seed: u64 },
}

/// The hidden string `b` defining `H_b(x) = 1 - b_x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitStringInstance {
    bits: Vec<bool>,
    weight: usize,
    seed: u64,
}

pub fn build_instance(n: usize, spec: InstanceSpec) -> Result<BitStringInstance> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    let (bits, seed) = match spec {
        InstanceSpec::ExactWeight { weight, seed } => {
            if weight > n {
                return Err(Error::WeightOutOfRange { weight, n });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut bits = vec![false; n];
            for i in sample(&mut rng, n, weight) {
                bits[i] = true;
            }
            (bits, seed)
        }
        InstanceSpec::Explicit(bits) => {
            if bits.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: bits.len() });
            }
            (bits, 0)
        }
        InstanceSpec::Bernoulli { p, seed } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::ProbabilityOutOfRange(p));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            ((0..n).map(|_| rng.gen_bool(p)).collect(), seed)
        }
    };
    let weight = bits.iter().filter(|&&b| b).count();
    Ok(BitStringInstance { bits, weight, seed })
}

impl BitStringInstance {
    pub fn n(&self) -> usize {
        self.bits.len()
    }

    /// Hamming weight `|b|_1`, which equals `Z(+inf)`.
    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// `H_b(x) = 1 - b_x` for a zero-based index `x`.
    pub fn hamiltonian_eval(&self, x: usize) -> Result<u32> {
        self.bits
            .get(x)
            .map(|&b| u32::from(!b))
            .ok_or(Error::IndexOutOfRange { index: x, n: self.n() })
    }

    /// Mask of zero-energy configurations (`b_x = 1`), the target set `T`.
    pub fn ground_mask(&self) -> Vec<bool> {
        self.bits.clone()
    }

    pub fn excited_mask(&self) -> Vec<bool> {
        self.bits.iter().map(|b| !b).collect()
    }

    pub fn energies(&self) -> Vec<u32> {
        self.bits.iter().map(|&b| u32::from(!b)).collect()
    }

    /// Text form: a header line `N <n> weight <w> seed <s>` and the bits.
    pub fn to_text(&self) -> String {
        let bits: String = self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
        format!("N {} weight {} seed {}\n{}\n", self.n(), self.weight, self.seed, bits)
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("missing header".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let [k_n, n, k_w, w, k_s, s] = fields.as_slice() else {
            return Err(Error::Parse(format!("bad header {header:?}")));
        };
        if (*k_n, *k_w, *k_s) != ("N", "weight", "seed") {
            return Err(Error::Parse(format!("bad header keys {header:?}")));
        }
        let num = |v: &str| v.parse::<u64>().map_err(|_| Error::Parse(format!("bad integer {v:?}")));
        let (n, w, seed) = (num(n)? as usize, num(w)? as usize, num(s)?);
        let line = lines.next().ok_or_else(|| Error::Parse("missing bit string".into()))?.trim();
        let bits = line
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("bad bit {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if bits.len() != n {
            return Err(Error::Parse(format!("header says N = {n}, found {} bits", bits.len())));
        }
        let inst = build_instance(n, InstanceSpec::Explicit(bits))?;
        if inst.weight != w {
            return Err(Error::Parse(format!("header says weight {w}, bits have {}", inst.weight)));
        }
        Ok(BitStringInstance { seed, ..inst })
    }
}

/// A Hamiltonian `H: chi -> {0, ..., n}` at a fixed inverse temperature.
#[derive(Debug, Clone, PartialEq)]
pub struct GibbsModel<T> {
    energies: Vec<u32>,
    max_energy: u32,
    beta: Beta<T>,
}

fn neumaier_sum<T: Scalar>(values: impl Iterator<Item = T>) -> T {
    let (mut sum, mut comp) = (T::zero(), T::zero());
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp = comp + ((sum - t) + v);
        } else {
            comp = comp + ((v - t) + sum);
        }
        sum = t;
    }
    sum + comp
}

impl<T: Scalar> GibbsModel<T> {
    pub fn new(energies: Vec<u32>, max_energy: u32, beta: Beta<T>) -> Result<Self> {
        if energies.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if let Some(&energy) = energies.iter().find(|&&e| e > max_energy) {
            return Err(Error::EnergyOutOfRange { energy, max: max_energy });
        }
        if let Beta::Finite(b) = beta {
            Beta::finite(b)?;
        }
        Ok(Self { energies, max_energy, beta })
    }

    pub fn from_instance(inst: &BitStringInstance, beta: Beta<T>) -> Result<Self> {
        Self::new(inst.energies(), 1, beta)
    }

    pub fn domain_size(&self) -> usize {
        self.energies.len()
    }

    pub fn energies(&self) -> &[u32] {
        &self.energies
    }

    pub fn max_energy(&self) -> u32 {
        self.max_energy
    }

    pub fn beta(&self) -> Beta<T> {
        self.beta
    }

    pub fn with_beta(&self, beta: Beta<T>) -> Self {
        Self { beta, ..self.clone() }
    }

    /// `Z(beta) = sum_x e^{-beta H(x)}` by direct (compensated) summation.
    pub fn partition_function_bruteforce(&self) -> T {
        neumaier_sum(self.energies.iter().map(|&e| self.beta.boltzmann(e)))
    }

    /// `mu_beta(x) = e^{-beta H(x)} / Z(beta)`.
    pub fn gibbs_distribution(&self) -> Result<Vec<T>> {
        let e_min = *self.energies.iter().min().expect("non-empty");
        if self.beta.is_infinite() && e_min > 0 {
            return Err(Error::EmptyGroundSpace);
        }
        // Shifting by the minimum energy keeps large finite beta from underflowing.
        let weights: Vec<T> = self.energies.iter().map(|&e| self.beta.boltzmann(e - e_min)).collect();
        let z = neumaier_sum(weights.iter().copied());
        Ok(weights.into_iter().map(|w| w / z).collect())
    }

    /// The qsample `|mu_beta> = sum_x sqrt(mu_beta(x)) |x>`.
    pub fn gibbs_state_exact(&self) -> Result<StateVector<T>> {
        StateVector::from_real(self.gibbs_distribution()?.into_iter().map(|p| p.sqrt()).collect())
    }
}

/// `Z(beta) = w + (N - w) e^{-beta}` for `H_b`.
pub fn partition_function_closed<T: Scalar>(inst: &BitStringInstance, beta: Beta<T>) -> T {
    partition_function_from_weight(inst.n(), inst.weight(), beta)
}

pub fn partition_function_from_weight<T: Scalar>(n: usize, weight: usize, beta: Beta<T>) -> T {
    let w = T::from_usize_lossy(weight);
    match beta {
        Beta::Infinite => w,
        Beta::Finite(_) => w + T::from_usize_lossy(n - weight) * beta.decay(),
    }
}

/// Closed-form overlap between the Gibbs states of weights `N(1/2 -+ delta)`
/// when each is expressed in the other's ground/excited split:
/// `sqrt(1/4 - d^2) / sqrt(1/4 - d^2 ((1 - e^{-b}) / (1 + e^{-b}))^2)`.
pub fn overlap_wrong_weight_closed<T: Scalar>(delta: T, beta: Beta<T>) -> Result<T> {
    let half = T::from_f64_lossy(0.5);
    if !(delta > T::zero() && delta < half) {
        return Err(Error::DeltaOutOfRange(delta.to_f64_lossy()));
    }
    if beta.is_infinite() {
        return Ok(T::one());
    }
    let quarter = half * half;
    let e = beta.decay();
    let x = (T::one() - e) / (T::one() + e);
    Ok((quarter - delta * delta).sqrt() / (quarter - delta * delta * x * x).sqrt())
}

/// Amplitudes `(a, b)` on `|T>` and `|T_perp>` of the Gibbs state whose
/// ground space has `weight` elements out of `n`.
pub fn gibbs_split<T: Scalar>(n: usize, weight: usize, beta: Beta<T>) -> (T, T) {
    let z = partition_function_from_weight(n, weight, beta);
    let a = (T::from_usize_lossy(weight) / z).sqrt();
    let b = (T::from_usize_lossy(n - weight) * beta.decay() / z).sqrt();
    (a, b)
}

/// The state a preparation calibrated for `assumed_weight` aims at, written in
/// the instance's true ground/excited split: `a_w |T> + b_w |T_perp>`.
///
/// With `assumed_weight == inst.weight()` this is the exact Gibbs state.
pub fn assumed_weight_state<T: Scalar>(inst: &BitStringInstance, assumed_weight: usize, beta: Beta<T>) -> Result<StateVector<T>> {
    let (n, w) = (inst.n(), inst.weight());
    if assumed_weight == 0 || assumed_weight > n {
        return Err(Error::WeightOutOfRange { weight: assumed_weight, n });
    }
    if w == 0 {
        return Err(Error::EmptyGroundSpace);
    }
    let (a, b) = gibbs_split(n, assumed_weight, beta);
    if w == n && b > T::zero() {
        return Err(Error::WeightOutOfRange { weight: assumed_weight, n });
    }
    let on_ground = a / T::from_usize_lossy(w).sqrt();
    let on_excited = if w == n { T::zero() } else { b / T::from_usize_lossy(n - w).sqrt() };
    StateVector::from_real(inst.bits().iter().map(|&bit| if bit { on_ground } else { on_excited }).collect())
}

/// Which of the two strings of a [`PairedInstance`] is hidden.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Hypothesis {
    Heavy,
    Light,
}

impl Hypothesis {
    pub fn other(self) -> Self {
        match self {
            Hypothesis::Heavy => Hypothesis::Light,
            Hypothesis::Light => Hypothesis::Heavy,
        }
    }
}

/// Two strings of weights `N(1/2 + delta)` and `N(1/2 - delta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedInstance {
    n: usize,
    delta: f64,
    heavy: BitStringInstance,
    light: BitStringInstance,
}

const PAIR_SEARCH_LIMIT: usize = 1 << 20;

impl PairedInstance {
    /// Builds the pair on the smallest `N >= n_min` for which `N/2` and
    /// `N delta` are integers and `2 N delta >= 1`. Fails instead of rounding
    /// `delta`.
    pub fn new(n_min: usize, delta: f64, seed: u64) -> Result<Self> {
        if !(delta > 0.0 && delta < 0.5) {
            return Err(Error::DeltaOutOfRange(delta));
        }
        let start = n_min.max((1.0 / (2.0 * delta)).ceil() as usize).max(2);
        let mut n = start + (start % 2);
        let shift = loop {
            if n > PAIR_SEARCH_LIMIT {
                return Err(Error::InfeasiblePair { n_min, delta, reason: "no even N makes N*delta integral" });
            }
            let nd = n as f64 * delta;
            if (nd - nd.round()).abs() <= 1e-9 && nd.round() >= 1.0 {
                break nd.round() as usize;
            }
            n += 2;
        };
        if shift >= n / 2 {
            return Err(Error::InfeasiblePair { n_min, delta, reason: "weights out of range" });
        }
        let heavy = build_instance(n, InstanceSpec::ExactWeight { weight: n / 2 + shift, seed })?;
        let light = build_instance(n, InstanceSpec::ExactWeight { weight: n / 2 - shift, seed: seed ^ 0x5eed })?;
        Ok(Self { n, delta, heavy, light })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn heavy(&self) -> &BitStringInstance {
        &self.heavy
    }

    pub fn light(&self) -> &BitStringInstance {
        &self.light
    }

    pub fn get(&self, which: Hypothesis) -> &BitStringInstance {
        match which {
            Hypothesis::Heavy => &self.heavy,
            Hypothesis::Light => &self.light,
        }
    }
}
