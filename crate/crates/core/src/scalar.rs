//! Floating-point abstraction shared by the simulation and closed-form paths.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar type the amplitudes and closed forms are computed in.
///
/// The tolerances scale with the precision of the type so that norm checks
/// stay meaningful for both `f32` and `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Allowed deviation of a state norm from one.
    const NORM_TOL: Self;
    /// Allowed deviation of a reflection axis norm from one.
    const AXIS_TOL: Self;

    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 converts to every Scalar")
    }

    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize converts to every Scalar")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const NORM_TOL: Self = 1e-10;
    const AXIS_TOL: Self = 1e-8;
}

impl Scalar for f32 {
    const NORM_TOL: Self = 1e-4;
    const AXIS_TOL: Self = 1e-4;
}
