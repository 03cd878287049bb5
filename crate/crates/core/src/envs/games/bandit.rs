use crate::env::{one_hot, Action, Difficulty, Info, Overcompleteness, Task, TaskOutcome};
use crate::registry::EnvKind;
use crate::reward::unit_share;
use crate::rng::{EpisodeStreams, Pcg32};
use crate::spaces::SpaceDescriptor;

/// Episodic multi-armed bandit whose payout probabilities are redrawn
/// uniformly from `(0, 1)` on every reset. A pull pays `+1/T` with the arm's
/// probability and `-1/T` otherwise.
///
/// Observation: `[paid, not_paid]` for the previous pull (zeros at reset);
/// which arm was pulled is carried by the previous-action suffix.
#[derive(Debug, Clone)]
pub struct MultiarmedBandit {
    difficulty: Difficulty,
    arms: usize,
    length: u32,
    probs: Vec<f64>,
    t: u32,
}

fn open_unit(rng: &mut Pcg32) -> f64 {
    ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}

impl MultiarmedBandit {
    pub fn new(difficulty: Difficulty) -> Self {
        let arms = difficulty.pick([10, 20, 30]);
        MultiarmedBandit {
            difficulty,
            arms,
            length: difficulty.pick([100, 150, 200]),
            probs: vec![0.5; arms],
            t: 0,
        }
    }

    pub fn arms(&self) -> usize {
        self.arms
    }

    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn payout_probs(&self) -> &[f64] {
        &self.probs
    }

    /// Replaces this episode's payout probabilities (white-box tests only).
    pub fn set_payout_probs(&mut self, probs: &[f64]) {
        assert_eq!(probs.len(), self.arms);
        self.probs.copy_from_slice(probs);
    }

    /// Expected return of uniformly random pulls: `mean_i(2 p_i - 1)`.
    pub fn random_policy_expectation(&self) -> f64 {
        self.probs.iter().map(|p| 2.0 * p - 1.0).sum::<f64>() / self.arms as f64
    }
}

impl Task for MultiarmedBandit {
    fn kind(&self) -> EnvKind {
        EnvKind::MultiarmedBandit
    }

    fn difficulty(&self) -> Difficulty {
        self.difficulty
    }

    fn action_space(&self) -> SpaceDescriptor {
        SpaceDescriptor::discrete(self.arms)
    }

    fn observation_bounds(&self) -> (Vec<f32>, Vec<f32>) {
        (vec![0.0; 2], vec![1.0; 2])
    }

    fn max_steps(&self) -> u32 {
        self.length
    }

    fn overcompleteness(&self) -> Overcompleteness {
        Overcompleteness::Counting {
            latent_states_log2: f64::INFINITY,
            observations_log2: ((3 * (self.arms + 1)) as f64).log2(),
        }
    }

    fn reset(&mut self, streams: &mut EpisodeStreams, obs: &mut [f32]) {
        self.t = 0;
        for p in &mut self.probs {
            *p = open_unit(&mut streams.level);
        }
        one_hot(obs, None);
    }

    fn step(
        &mut self,
        action: &Action,
        streams: &mut EpisodeStreams,
        obs: &mut [f32],
        _info: &mut Info,
    ) -> TaskOutcome {
        let arm = action.as_discrete().unwrap_or(0);
        let paid = streams.payout.bernoulli(self.probs[arm]);
        let magnitude = unit_share(self.length as u64);
        one_hot(obs, Some(if paid { 0 } else { 1 }));
        self.t += 1;
        TaskOutcome {
            reward: if paid { magnitude } else { -magnitude },
            terminated: self.t == self.length,
        }
    }
}
