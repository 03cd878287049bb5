//! Classic control tasks with positions hidden from the observation.

mod cartpole;
mod pendulum;

pub use cartpole::{CartpoleState, StatelessCartpole};
pub use pendulum::{PendulumState, StatelessPendulum};

use crate::env::Difficulty;
use crate::rng::Pcg32;

/// Observation noise standard deviation for the noisy variants.
pub fn noise_sigma(difficulty: Difficulty) -> f64 {
    difficulty.pick([0.1, 0.2, 0.3])
}

/// Adds i.i.d. Gaussian noise (when `sigma > 0`) and clamps into the
/// declared observation bound.
pub(crate) fn observe(value: f64, sigma: f64, bound: f32, noise: &mut Pcg32) -> f32 {
    let noisy = if sigma > 0.0 {
        value + sigma * noise.normal()
    } else {
        value
    };
    (noisy as f32).clamp(-bound, bound)
}
