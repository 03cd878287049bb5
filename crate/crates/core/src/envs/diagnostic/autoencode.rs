use crate::env::{one_hot, Action, Difficulty, Info, Overcompleteness, Task, TaskOutcome};
use crate::envs::cards::standard_shoe;
use crate::envs::log2_multinomial;
use crate::registry::EnvKind;
use crate::reward::unit_share;
use crate::rng::EpisodeStreams;
use crate::spaces::SpaceDescriptor;

use super::NUM_VALUES;

/// Offset of the watch indicator in the task observation.
pub const WATCH: usize = NUM_VALUES;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AutoencodeOrder {
    /// Replay the cards in the order they were shown.
    Forward,
    /// Replay them last card first.
    Reverse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Watch,
    Play,
}

/// A shuffled shoe is shown one card (suit) per step with the watch
/// indicator set; afterwards the agent must emit the same suits back.
///
/// Observation: `one_hot(suit) ++ [watch]`; the suit part is blank during play.
#[derive(Debug, Clone)]
pub struct Autoencode {
    difficulty: Difficulty,
    order: AutoencodeOrder,
    decks: usize,
    deck: Vec<usize>,
    cursor: usize,
    phase: Phase,
}

impl Autoencode {
    pub fn new(difficulty: Difficulty) -> Self {
        Self::with_order(difficulty, AutoencodeOrder::Forward)
    }

    pub fn with_order(difficulty: Difficulty, order: AutoencodeOrder) -> Self {
        let decks = difficulty.pick([1, 2, 3]);
        Autoencode {
            difficulty,
            order,
            decks,
            deck: Vec::with_capacity(52 * decks),
            cursor: 0,
            phase: Phase::Watch,
        }
    }

    pub fn deck_len(&self) -> usize {
        52 * self.decks
    }

    pub fn order(&self) -> AutoencodeOrder {
        self.order
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    /// Suit sequence of the current episode, in presentation order.
    pub fn deck(&self) -> &[usize] {
        &self.deck
    }

    fn target(&self, play_index: usize) -> usize {
        match self.order {
            AutoencodeOrder::Forward => self.deck[play_index],
            AutoencodeOrder::Reverse => self.deck[self.deck.len() - 1 - play_index],
        }
    }
}

impl Task for Autoencode {
    fn kind(&self) -> EnvKind {
        EnvKind::Autoencode
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
        2 * self.deck_len() as u32
    }

    fn overcompleteness(&self) -> Overcompleteness {
        let per_suit = 13 * self.decks as u64;
        Overcompleteness::Counting {
            latent_states_log2: log2_multinomial(&[per_suit; 4]),
            // (suit or blank) x watch x previous action (or none)
            observations_log2: ((5 * 2 * (NUM_VALUES + 1)) as f64).log2(),
        }
    }

    fn reset(&mut self, streams: &mut EpisodeStreams, obs: &mut [f32]) {
        let mut shoe = standard_shoe(self.decks);
        streams.level.shuffle(&mut shoe);
        self.deck.clear();
        self.deck.extend(shoe.iter().map(|c| c.suit as usize));
        self.cursor = 0;
        self.phase = Phase::Watch;
        one_hot(&mut obs[..NUM_VALUES], Some(self.deck[0]));
        obs[WATCH] = 1.0;
    }

    fn step(
        &mut self,
        action: &Action,
        _streams: &mut EpisodeStreams,
        obs: &mut [f32],
        _info: &mut Info,
    ) -> TaskOutcome {
        let len = self.deck.len();
        match self.phase {
            Phase::Watch => {
                self.cursor += 1;
                if self.cursor == len {
                    self.phase = Phase::Play;
                    self.cursor = 0;
                    one_hot(&mut obs[..NUM_VALUES], None);
                    obs[WATCH] = 0.0;
                } else {
                    one_hot(&mut obs[..NUM_VALUES], Some(self.deck[self.cursor]));
                }
                TaskOutcome::running(0.0)
            }
            Phase::Play => {
                let reward = if action.as_discrete() == Some(self.target(self.cursor)) {
                    unit_share(len as u64)
                } else {
                    -unit_share(len as u64)
                };
                self.cursor += 1;
                TaskOutcome {
                    reward,
                    terminated: self.cursor == len,
                }
            }
        }
    }
}
