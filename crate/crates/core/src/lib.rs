//! Deterministic partially observable reinforcement-learning environments.
//!
//! Fifteen environments, each with `Easy`, `Medium` and `Hard` settings,
//! behind one [`Env`] interface. Every episode is fully determined by its
//! [`EpisodeSeed`] and the action sequence, and the cumulative reward of
//! any episode lies in `[-1, 1]`.
//!
//! ```
//! use popgym::{make, Action, EnvId, EpisodeSeed};
//!
//! let id: EnvId = "popgym-RepeatFirst-Easy".parse().unwrap();
//! let mut env = make(id);
//! let obs = env.reset(EpisodeSeed(7));
//! assert_eq!(obs.len(), env.observation_space().flat_dim());
//! let step = env.step(&Action::Discrete(0)).unwrap();
//! assert!(step.reward.abs() <= 1.0);
//! ```

pub mod agents;
pub mod env;
pub mod envs;
pub mod error;
pub mod registry;
pub mod reward;
pub mod rng;
pub mod spaces;

pub use env::{
    Action, Difficulty, Env, Episode, Info, Observation, Overcompleteness, StepResult, Task,
    TaskOutcome, Transition, GLOBAL_MAX_STEPS,
};
pub use error::EnvError;
pub use registry::{all_env_ids, make, make_by_name, EnvId, EnvKind};
pub use reward::{unit_share, ExactSum};
pub use rng::{rng_stream, EpisodeSeed, EpisodeStreams, Pcg32};
pub use spaces::SpaceDescriptor;
