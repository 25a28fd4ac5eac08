//! Fixed-point search and Gibbs-state preparation.

mod prepare;
mod schedule;
mod search;

pub use prepare::{prepare_gibbs, prepare_gibbs_exact_rotation, reflect_through_gibbs, GibbsReflector, PrepPlan, PrepSpec, WEIGHT_MARGIN};
pub use schedule::{fixed_point_phase_schedule, select_length, window_floor, PhaseSchedule};
pub use search::{fixed_point_search, FixedPointSearch};
