//! Memory-duration and encode/decode probes.

mod autoencode;
mod repeat_first;
mod repeat_previous;

pub use autoencode::{Autoencode, AutoencodeOrder, Phase};
pub use repeat_first::RepeatFirst;
pub use repeat_previous::RepeatPrevious;

/// Number of distinct values shown by the diagnostic envs.
pub const NUM_VALUES: usize = 4;
