use crate::env::{one_hot, Action, Difficulty, Info, Overcompleteness, Task, TaskOutcome};
use crate::envs::cards::{standard_shoe, Card, RANKS};
use crate::envs::log2_multinomial;
use crate::registry::EnvKind;
use crate::reward::unit_share;
use crate::rng::EpisodeStreams;
use crate::spaces::SpaceDescriptor;

pub const HIGHER: usize = 0;
pub const LOWER: usize = 1;

/// Guess whether the next card from a shuffled shoe ranks higher or lower
/// than the face-up card. Correct guesses pay `+1/N`, wrong ones `-1/N`,
/// ties nothing, with `N = 52 * decks - 1` guesses per episode.
///
/// Observation: `one_hot(rank of the face-up card)`.
#[derive(Debug, Clone)]
pub struct HigherLower {
    difficulty: Difficulty,
    decks: usize,
    shoe: Vec<Card>,
    cursor: usize,
}

impl HigherLower {
    pub fn new(difficulty: Difficulty) -> Self {
        Self::with_decks(difficulty, difficulty.pick([1, 2, 3]))
    }

    pub fn with_decks(difficulty: Difficulty, decks: usize) -> Self {
        assert!((1..=10).contains(&decks));
        HigherLower {
            difficulty,
            decks,
            shoe: Vec::with_capacity(52 * decks),
            cursor: 0,
        }
    }

    pub fn decks(&self) -> usize {
        self.decks
    }

    /// Guesses per episode.
    pub fn num_guesses(&self) -> usize {
        52 * self.decks - 1
    }

    pub fn face_up(&self) -> Card {
        self.shoe[self.cursor]
    }

    pub fn shoe(&self) -> &[Card] {
        &self.shoe
    }
}

impl Task for HigherLower {
    fn kind(&self) -> EnvKind {
        EnvKind::HigherLower
    }

    fn difficulty(&self) -> Difficulty {
        self.difficulty
    }

    fn action_space(&self) -> SpaceDescriptor {
        SpaceDescriptor::discrete(2)
    }

    fn observation_bounds(&self) -> (Vec<f32>, Vec<f32>) {
        (vec![0.0; RANKS as usize], vec![1.0; RANKS as usize])
    }

    fn max_steps(&self) -> u32 {
        self.num_guesses() as u32
    }

    fn overcompleteness(&self) -> Overcompleteness {
        Overcompleteness::Counting {
            latent_states_log2: log2_multinomial(&[4 * self.decks as u64; RANKS as usize]),
            observations_log2: ((RANKS as usize * 3) as f64).log2(),
        }
    }

    fn reset(&mut self, streams: &mut EpisodeStreams, obs: &mut [f32]) {
        self.shoe = standard_shoe(self.decks);
        streams.level.shuffle(&mut self.shoe);
        self.cursor = 0;
        one_hot(obs, Some(self.shoe[0].rank as usize));
    }

    fn step(
        &mut self,
        action: &Action,
        _streams: &mut EpisodeStreams,
        obs: &mut [f32],
        _info: &mut Info,
    ) -> TaskOutcome {
        let current = self.shoe[self.cursor].rank;
        self.cursor += 1;
        let next = self.shoe[self.cursor].rank;
        let magnitude = unit_share(self.num_guesses() as u64);
        let guess_higher = action.as_discrete() == Some(HIGHER);
        let reward = if next == current {
            0.0
        } else if (next > current) == guess_higher {
            magnitude
        } else {
            -magnitude
        };
        one_hot(obs, Some(next as usize));
        TaskOutcome {
            reward,
            terminated: self.cursor == self.shoe.len() - 1,
        }
    }
}
