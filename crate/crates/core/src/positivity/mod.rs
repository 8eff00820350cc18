//! Positivity testers for `(p,p)`-forms.
//!
//! Every search returns a [`PositivityVerdict`]. Only `violated` verdicts are
//! certificates: they carry a witness that can be re-evaluated with the
//! matching `*_witness_value` function.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

mod frames;
mod plucker;
mod quadric;
mod reduce;
mod reduced44;
mod theorem;
pub mod trusted;
mod verdict;

pub use frames::{frame_witness_value, sample_frames_test, sample_frames_test_with, unflatten_frame, Frame};
pub use plucker::{plucker_embed, quad_p3};
pub use quadric::{
    dinew_quadric, dinew_test, minors_map, minors_preimage, quadric_sample, quadric_witness_value, DESCENT_STEPS,
    RESTARTS,
};
pub use reduce::{has_reduced_zeros, reduce_basis_22, square_split, Reduction, SquareSplit, MAX_PAIR_ATTEMPTS};
pub use reduced44::{
    elementary_fact, inequality_aa2, reduced44_check, reduced_core_check, reduced_quadric, reduced_witness_value,
    war2_search, Aa2Report, Reduced44, INEQUALITY_TOL, ZETA_ANGLES, ZETA_RADII,
};
pub use theorem::verify_theorem1;
pub use trusted::{trusted_positive, trusted_positive_with, TrustedPositive, TrustedRecipe};
pub use verdict::{PositivityVerdict, Status};

pub(crate) use frames::random_covector;

/// Absolute tolerance for constraint residuals.
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-9;
/// Tolerance for the sign of a minimum value.
pub const DEFAULT_SIGN_TOL: f64 = 1e-6;

/// Samples handled by one parallel work unit.
pub(crate) const CHUNK: usize = 256;

/// Independent deterministic stream `stream` of the generator seeded by `seed`.
pub(crate) fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[cfg(test)]
mod tests;
