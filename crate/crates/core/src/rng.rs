//! Seeded randomness shared by sweeps and tests.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Identifier recorded in reports so runs can be reproduced elsewhere.
pub const RNG_ALGORITHM: &str = "chacha8:seed_from_u64+stream";

/// Generator for trial `trial` of a run seeded with `seed`.
///
/// `ChaCha8Rng::seed_from_u64(seed)` with the stream set to the trial index,
/// so trials are independent of scheduling order.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}
