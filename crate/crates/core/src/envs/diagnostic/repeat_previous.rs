use std::collections::VecDeque;

use crate::env::{one_hot, Action, Difficulty, Info, Overcompleteness, Task, TaskOutcome};
use crate::registry::EnvKind;
use crate::reward::unit_share;
use crate::rng::EpisodeStreams;
use crate::spaces::SpaceDescriptor;

use super::NUM_VALUES;

/// Shows one of four values each step; the action at time `t` is scored
/// against the value shown at `t - k`. Actions before `t = k` pay nothing.
///
/// Observation: `one_hot(value)`.
#[derive(Debug, Clone)]
pub struct RepeatPrevious {
    difficulty: Difficulty,
    lag: usize,
    length: u32,
    current: usize,
    /// The `min(t, k)` values shown before the current one, oldest first.
    history: VecDeque<usize>,
    t: u32,
}

impl RepeatPrevious {
    pub fn new(difficulty: Difficulty) -> Self {
        Self::with_lag(
            difficulty,
            difficulty.pick([4, 32, 64]),
            difficulty.pick([64, 128, 256]),
        )
    }

    /// Custom lag `k` and episode length; `1 <= k < length <= 1024`.
    pub fn with_lag(difficulty: Difficulty, lag: usize, length: u32) -> Self {
        assert!(lag >= 1 && (lag as u32) < length);
        RepeatPrevious {
            difficulty,
            lag,
            length,
            current: 0,
            history: VecDeque::with_capacity(lag + 1),
            t: 0,
        }
    }

    pub fn lag(&self) -> usize {
        self.lag
    }

    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn history_len(&self) -> usize {
        self.history.len()
    }
}

impl Task for RepeatPrevious {
    fn kind(&self) -> EnvKind {
        EnvKind::RepeatPrevious
    }

    fn difficulty(&self) -> Difficulty {
        self.difficulty
    }

    fn action_space(&self) -> SpaceDescriptor {
        SpaceDescriptor::discrete(NUM_VALUES)
    }

    fn observation_bounds(&self) -> (Vec<f32>, Vec<f32>) {
        (vec![0.0; NUM_VALUES], vec![1.0; NUM_VALUES])
    }

    fn max_steps(&self) -> u32 {
        self.length
    }

    fn overcompleteness(&self) -> Overcompleteness {
        // latent: last k values plus the current one; observed: value x previous action
        Overcompleteness::Counting {
            latent_states_log2: 2.0 * (self.lag + 1) as f64,
            observations_log2: ((NUM_VALUES * (NUM_VALUES + 1)) as f64).log2(),
        }
    }

    fn reset(&mut self, streams: &mut EpisodeStreams, obs: &mut [f32]) {
        self.t = 0;
        self.history.clear();
        self.current = streams.level.below_usize(NUM_VALUES);
        one_hot(obs, Some(self.current));
    }

    fn step(
        &mut self,
        action: &Action,
        streams: &mut EpisodeStreams,
        obs: &mut [f32],
        _info: &mut Info,
    ) -> TaskOutcome {
        let reward = if self.history.len() == self.lag {
            let target = self.history[0];
            let share = unit_share((self.length as usize - self.lag) as u64);
            if action.as_discrete() == Some(target) {
                share
            } else {
                -share
            }
        } else {
            0.0
        };
        if self.history.len() == self.lag {
            self.history.pop_front();
        }
        self.history.push_back(self.current);
        self.t += 1;
        self.current = streams.level.below_usize(NUM_VALUES);
        one_hot(obs, Some(self.current));
        TaskOutcome {
            reward,
            terminated: self.t == self.length,
        }
    }
}
