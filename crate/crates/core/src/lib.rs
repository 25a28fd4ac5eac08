//! Query-model simulation of Gibbs-state preparation for bit-string
//! Hamiltonians, and estimators of their zero-temperature partition function.
//!
//! State-level code is generic over [`Scalar`] (`f32` or `f64`); the
//! estimators and bound calculators work in `f64`.

pub mod bounds;
pub mod error;
pub mod estimators;
pub mod gibbs;
pub mod rng;
pub mod scalar;
pub mod stateprep;
pub mod stats;
pub mod statevector;

pub use error::{Error, Result};
pub use gibbs::{Beta, BitStringInstance, GibbsModel, Hypothesis, InstanceSpec, PairedInstance};
pub use scalar::Scalar;
pub use stateprep::{FixedPointSearch, GibbsReflector, PhaseSchedule, PrepSpec};
pub use statevector::{QueryLedger, StateVector};

pub type StateVector64 = StateVector<f64>;
pub type StateVector32 = StateVector<f32>;
pub type Beta64 = Beta<f64>;
pub type Beta32 = Beta<f32>;
pub type GibbsModel64 = GibbsModel<f64>;
pub type GibbsModel32 = GibbsModel<f32>;
pub type PhaseSchedule64 = PhaseSchedule<f64>;
pub type PhaseSchedule32 = PhaseSchedule<f32>;
pub type PrepSpec64 = PrepSpec<f64>;
pub type GibbsReflector64 = GibbsReflector<f64>;
