use crate::env::{one_hot, Action, Difficulty, Info, Overcompleteness, Task, TaskOutcome};
use crate::registry::EnvKind;
use crate::reward::unit_share;
use crate::rng::EpisodeStreams;
use crate::spaces::SpaceDescriptor;

use super::NUM_VALUES;

/// Offset of the remember indicator in the task observation.
pub const INDICATOR: usize = NUM_VALUES;

/// Shows one of four values each step; only the first comes with the
/// remember indicator. Every action from the second step on is scored
/// against that first value.
///
/// Observation: `one_hot(value) ++ [indicator]`.
#[derive(Debug, Clone)]
pub struct RepeatFirst {
    difficulty: Difficulty,
    length: u32,
    first: usize,
    t: u32,
}

impl RepeatFirst {
    pub fn new(difficulty: Difficulty) -> Self {
        RepeatFirst {
            difficulty,
            length: difficulty.pick([64, 128, 256]),
            first: 0,
            t: 0,
        }
    }

    /// Number of actions in an episode.
    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn first_value(&self) -> usize {
        self.first
    }
}

impl Task for RepeatFirst {
    fn kind(&self) -> EnvKind {
        EnvKind::RepeatFirst
    }

    fn difficulty(&self) -> Difficulty {
        self.difficulty
    }

    fn action_space(&self) -> SpaceDescriptor {
        SpaceDescriptor::discrete(NUM_VALUES)
    }

    fn observation_bounds(&self) -> (Vec<f32>, Vec<f32>) {
        (vec![0.0; NUM_VALUES + 1], vec![1.0; NUM_VALUES + 1])
    }

    fn max_steps(&self) -> u32 {
        self.length
    }

    fn overcompleteness(&self) -> Overcompleteness {
        // latent: first value x current value x time step
        // observed: value x indicator x previous action (or none)
        Overcompleteness::Counting {
            latent_states_log2: (16.0 * self.length as f64).log2(),
            observations_log2: ((NUM_VALUES * 2 * (NUM_VALUES + 1)) as f64).log2(),
        }
    }

    fn reset(&mut self, streams: &mut EpisodeStreams, obs: &mut [f32]) {
        self.t = 0;
        self.first = streams.level.below_usize(NUM_VALUES);
        one_hot(&mut obs[..NUM_VALUES], Some(self.first));
        obs[INDICATOR] = 1.0;
    }

    fn step(
        &mut self,
        action: &Action,
        streams: &mut EpisodeStreams,
        obs: &mut [f32],
        _info: &mut Info,
    ) -> TaskOutcome {
        let share = unit_share((self.length - 1) as u64);
        let reward = if self.t == 0 {
            0.0
        } else if action.as_discrete() == Some(self.first) {
            share
        } else {
            -share
        };
        self.t += 1;
        let value = streams.level.below_usize(NUM_VALUES);
        one_hot(&mut obs[..NUM_VALUES], Some(value));
        obs[INDICATOR] = 0.0;
        TaskOutcome {
            reward,
            terminated: self.t == self.length,
        }
    }
}
