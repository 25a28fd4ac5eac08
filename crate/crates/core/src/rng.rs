//! Per-trial random streams.
//!
//! ChaCha is counter based: the master seed fixes the key and the trial index
//! selects the stream, so trial `i` draws the same numbers no matter which
//! thread runs it or in what order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type TrialRng = ChaCha8Rng;

pub fn trial_rng(master_seed: u64, trial_index: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(trial_index);
    rng
}

/// Derives a sub-seed for a labelled purpose inside one trial (instance
/// generation vs. sampling, for example).
pub fn derive_seed(master_seed: u64, trial_index: u64, purpose: u64) -> u64 {
    // splitmix64 finalizer over the packed triple
    let mut z = master_seed
        ^ trial_index.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ purpose.wrapping_mul(0xD1B5_4A32_D192_ED03);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
