use crate::env::{one_hot, Action, Difficulty, Info, Overcompleteness, Task, TaskOutcome};
use crate::envs::log2_binomial;
use crate::registry::EnvKind;
use crate::reward::unit_share;
use crate::rng::EpisodeStreams;
use crate::spaces::SpaceDescriptor;

pub const NUM_SYMBOLS: usize = 4;

/// Each step shows a new value and a query value; the action must be the
/// number of times the query value has been shown so far (including the
/// value on screen). Exact answers pay `+1/T`, anything else `-1/T`.
///
/// Observation: `one_hot(next value) ++ one_hot(query value)`.
#[derive(Debug, Clone)]
pub struct CountRecall {
    difficulty: Difficulty,
    length: u32,
    counts: [u32; NUM_SYMBOLS],
    query: usize,
    t: u32,
}

impl CountRecall {
    pub fn new(difficulty: Difficulty) -> Self {
        CountRecall {
            difficulty,
            length: difficulty.pick([128, 256, 512]),
            counts: [0; NUM_SYMBOLS],
            query: 0,
            t: 0,
        }
    }

    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn counts(&self) -> [u32; NUM_SYMBOLS] {
        self.counts
    }

    fn draw(&mut self, streams: &mut EpisodeStreams, obs: &mut [f32]) {
        let value = streams.level.below_usize(NUM_SYMBOLS);
        self.query = streams.level.below_usize(NUM_SYMBOLS);
        self.counts[value] += 1;
        one_hot(&mut obs[..NUM_SYMBOLS], Some(value));
        one_hot(&mut obs[NUM_SYMBOLS..], Some(self.query));
    }
}

impl Task for CountRecall {
    fn kind(&self) -> EnvKind {
        EnvKind::CountRecall
    }

    fn difficulty(&self) -> Difficulty {
        self.difficulty
    }

    fn action_space(&self) -> SpaceDescriptor {
        SpaceDescriptor::discrete(self.length as usize + 1)
    }

    fn observation_bounds(&self) -> (Vec<f32>, Vec<f32>) {
        (vec![0.0; 2 * NUM_SYMBOLS], vec![1.0; 2 * NUM_SYMBOLS])
    }

    fn max_steps(&self) -> u32 {
        self.length
    }

    fn overcompleteness(&self) -> Overcompleteness {
        let t = self.length as u64;
        Overcompleteness::Counting {
            // count vectors of four symbols summing to T
            latent_states_log2: log2_binomial(t + 3, 3),
            observations_log2: ((NUM_SYMBOLS * NUM_SYMBOLS * (self.length as usize + 2)) as f64)
                .log2(),
        }
    }

    fn reset(&mut self, streams: &mut EpisodeStreams, obs: &mut [f32]) {
        self.t = 0;
        self.counts = [0; NUM_SYMBOLS];
        self.draw(streams, obs);
    }

    fn step(
        &mut self,
        action: &Action,
        streams: &mut EpisodeStreams,
        obs: &mut [f32],
        _info: &mut Info,
    ) -> TaskOutcome {
        let magnitude = unit_share(self.length as u64);
        let answer = self.counts[self.query] as usize;
        let reward = if action.as_discrete() == Some(answer) {
            magnitude
        } else {
            -magnitude
        };
        self.t += 1;
        let terminated = self.t == self.length;
        if !terminated {
            self.draw(streams, obs);
        }
        TaskOutcome { reward, terminated }
    }
}
