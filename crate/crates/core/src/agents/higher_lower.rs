use crate::env::{Action, Difficulty};
use crate::envs::cards::RANKS;
use crate::envs::games::{HIGHER, LOWER};
use crate::rng::EpisodeSeed;

use super::{argmax, Agent};

const R: usize = RANKS as usize;

/// Best fixed guess for each visible rank, ignoring everything seen before.
///
/// For a uniformly shuffled shoe every (face-up, next) pair is a uniform
/// draw of two distinct cards, so the best memoryless guess for rank `r`
/// compares how many of the other cards rank above and below it.
pub fn memoryless_policy(decks: usize) -> [usize; R] {
    let per_rank = 4 * decks;
    let mut policy = [HIGHER; R];
    for (r, guess) in policy.iter_mut().enumerate() {
        let higher = per_rank * (R - 1 - r);
        let lower = per_rank * r;
        *guess = if higher >= lower { HIGHER } else { LOWER };
    }
    policy
}

/// Exact expected return of [`memoryless_policy`]. Each of the `N` guesses
/// has the same expected reward, so the return equals the per-guess mean
/// of `(wins - losses) / (cards - 1)`.
pub fn memoryless_expected_return(decks: usize) -> f64 {
    let per_rank = (4 * decks) as i64;
    let cards = 52 * decks as i64;
    let policy = memoryless_policy(decks);
    let mut numerator = 0i64;
    for (r, guess) in policy.iter().enumerate() {
        let higher = per_rank * (R - 1 - r) as i64;
        let lower = per_rank * r as i64;
        let margin = if *guess == HIGHER {
            higher - lower
        } else {
            lower - higher
        };
        // P(face-up has rank r) = per_rank / cards
        numerator += per_rank * margin;
    }
    numerator as f64 / (cards * (cards - 1)) as f64
}

/// Memoryless baseline: looks up [`memoryless_policy`] for the visible rank.
#[derive(Debug, Clone)]
pub struct MemorylessBaseline {
    policy: [usize; R],
}

impl MemorylessBaseline {
    pub fn for_difficulty(difficulty: Difficulty) -> Self {
        Self::for_decks(difficulty.pick([1, 2, 3]))
    }

    pub fn for_decks(decks: usize) -> Self {
        MemorylessBaseline {
            policy: memoryless_policy(decks),
        }
    }
}

impl Agent for MemorylessBaseline {
    fn name(&self) -> &'static str {
        "memoryless_dp"
    }

    fn reset(&mut self, _seed: EpisodeSeed) {}

    fn act(&mut self, obs: &[f32]) -> Action {
        Action::Discrete(self.policy[argmax(&obs[..R])])
    }
}

/// Tracks the remaining shoe and guesses toward the larger mass.
#[derive(Debug, Clone)]
pub struct CardCounter {
    decks: usize,
    remaining: [usize; R],
}

impl CardCounter {
    pub fn for_difficulty(difficulty: Difficulty) -> Self {
        Self::for_decks(difficulty.pick([1, 2, 3]))
    }

    pub fn for_decks(decks: usize) -> Self {
        CardCounter {
            decks,
            remaining: [4 * decks; R],
        }
    }

    pub fn remaining(&self) -> &[usize; R] {
        &self.remaining
    }
}

impl Agent for CardCounter {
    fn name(&self) -> &'static str {
        "card_counter"
    }

    fn reset(&mut self, _seed: EpisodeSeed) {
        self.remaining = [4 * self.decks; R];
    }

    fn act(&mut self, obs: &[f32]) -> Action {
        // every observation shows a newly turned card
        let rank = argmax(&obs[..R]);
        self.remaining[rank] = self.remaining[rank].saturating_sub(1);
        let higher: usize = self.remaining[rank + 1..].iter().sum();
        let lower: usize = self.remaining[..rank].iter().sum();
        Action::Discrete(if higher >= lower { HIGHER } else { LOWER })
    }
}
