//! Perfect-memory scripts that reach the optimal return on the
//! deterministic-solvable envs.

use std::collections::VecDeque;

use crate::env::{Action, Difficulty, Env, Episode};
use crate::envs::cards::{Card, RANKS, SUITS};
use crate::envs::diagnostic::{Autoencode, AutoencodeOrder, RepeatPrevious, NUM_VALUES};
use crate::envs::games::{
    BattleshipConfig, ConcentrationConfig, MatchRule, MineSweeper, NUM_SYMBOLS,
};
use crate::rng::EpisodeSeed;

use super::{argmax, Agent};

/// Latches the value shown with the remember indicator.
#[derive(Debug, Clone, Default)]
pub struct RepeatFirstOracle {
    first: usize,
}

impl Agent for RepeatFirstOracle {
    fn name(&self) -> &'static str {
        "oracle"
    }

    fn reset(&mut self, _seed: EpisodeSeed) {
        self.first = 0;
    }

    fn act(&mut self, obs: &[f32]) -> Action {
        if obs[NUM_VALUES] == 1.0 {
            self.first = argmax(&obs[..NUM_VALUES]);
        }
        Action::Discrete(self.first)
    }
}

/// Ring buffer of the last `k + 1` values.
#[derive(Debug, Clone)]
pub struct RepeatPreviousOracle {
    lag: usize,
    seen: VecDeque<usize>,
}

impl RepeatPreviousOracle {
    pub fn for_difficulty(difficulty: Difficulty) -> Self {
        Self::with_lag(RepeatPrevious::new(difficulty).lag())
    }

    pub fn with_lag(lag: usize) -> Self {
        RepeatPreviousOracle {
            lag,
            seen: VecDeque::with_capacity(lag + 1),
        }
    }
}

impl Agent for RepeatPreviousOracle {
    fn name(&self) -> &'static str {
        "oracle"
    }

    fn reset(&mut self, _seed: EpisodeSeed) {
        self.seen.clear();
    }

    fn act(&mut self, obs: &[f32]) -> Action {
        self.seen.push_back(argmax(&obs[..NUM_VALUES]));
        if self.seen.len() > self.lag + 1 {
            self.seen.pop_front();
        }
        let answer = if self.seen.len() == self.lag + 1 {
            self.seen[0]
        } else {
            0
        };
        Action::Discrete(answer)
    }
}

/// Records suits while the watch indicator is set and replays them.
#[derive(Debug, Clone)]
pub struct AutoencodeOracle {
    order: AutoencodeOrder,
    buffer: VecDeque<usize>,
}

impl AutoencodeOracle {
    pub fn for_difficulty(difficulty: Difficulty) -> Self {
        Self::with_order(Autoencode::new(difficulty).order())
    }

    pub fn with_order(order: AutoencodeOrder) -> Self {
        AutoencodeOracle {
            order,
            buffer: VecDeque::new(),
        }
    }
}

impl Agent for AutoencodeOracle {
    fn name(&self) -> &'static str {
        "oracle"
    }

    fn reset(&mut self, _seed: EpisodeSeed) {
        self.buffer.clear();
    }

    fn act(&mut self, obs: &[f32]) -> Action {
        if obs[NUM_VALUES] == 1.0 {
            self.buffer.push_back(argmax(&obs[..NUM_VALUES]));
            return Action::Discrete(0);
        }
        let next = match self.order {
            AutoencodeOrder::Forward => self.buffer.pop_front(),
            AutoencodeOrder::Reverse => self.buffer.pop_back(),
        };
        Action::Discrete(next.unwrap_or(0))
    }
}

/// Keeps a running count per symbol.
#[derive(Debug, Clone, Default)]
pub struct CountRecallOracle {
    counts: [usize; NUM_SYMBOLS],
}

impl Agent for CountRecallOracle {
    fn name(&self) -> &'static str {
        "oracle"
    }

    fn reset(&mut self, _seed: EpisodeSeed) {
        self.counts = [0; NUM_SYMBOLS];
    }

    fn act(&mut self, obs: &[f32]) -> Action {
        self.counts[argmax(&obs[..NUM_SYMBOLS])] += 1;
        Action::Discrete(self.counts[argmax(&obs[NUM_SYMBOLS..2 * NUM_SYMBOLS])])
    }
}

/// Fires every cell once in row-major order.
#[derive(Debug, Clone)]
pub struct BattleshipSweep {
    cells: usize,
    next: usize,
}

impl BattleshipSweep {
    pub fn for_difficulty(difficulty: Difficulty) -> Self {
        let config = BattleshipConfig::for_difficulty(difficulty);
        Self::for_cells(config.rows * config.cols)
    }

    pub fn for_cells(cells: usize) -> Self {
        BattleshipSweep { cells, next: 0 }
    }
}

impl Agent for BattleshipSweep {
    fn name(&self) -> &'static str {
        "oracle"
    }

    fn reset(&mut self, _seed: EpisodeSeed) {
        self.next = 0;
    }

    fn act(&mut self, _obs: &[f32]) -> Action {
        let cell = self.next % self.cells;
        self.next += 1;
        Action::Discrete(cell)
    }
}

/// Perfect-memory Concentration player.
///
/// Flips a known matching pair whenever one exists. Otherwise it turns an
/// unseen card; if that card matches a known one it completes the match,
/// else it turns a second unseen card.
#[derive(Debug, Clone)]
pub struct ConcentrationOracle {
    rule: MatchRule,
    known: Vec<Option<Card>>,
    matched: Vec<bool>,
    pending: Option<usize>,
    last_pick: Option<usize>,
    completed: Option<(usize, usize)>,
}

impl ConcentrationOracle {
    pub fn for_difficulty(difficulty: Difficulty) -> Self {
        Self::for_config(&ConcentrationConfig::for_difficulty(difficulty))
    }

    pub fn for_config(config: &ConcentrationConfig) -> Self {
        let n = config.deck.len();
        ConcentrationOracle {
            rule: config.rule,
            known: vec![None; n],
            matched: vec![false; n],
            pending: None,
            last_pick: None,
            completed: None,
        }
    }

    fn decode(obs: &[f32]) -> Option<Card> {
        let ranks = &obs[..RANKS as usize];
        let suits = &obs[RANKS as usize..(RANKS + SUITS) as usize];
        if ranks.iter().all(|v| *v == 0.0) {
            return None;
        }
        Some(Card::new(argmax(ranks) as u8, argmax(suits) as u8))
    }

    fn open(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.known.len()).filter(|&i| !self.matched[i])
    }

    fn known_partner(&self, of: usize) -> Option<usize> {
        let card = self.known[of]?;
        self.open()
            .find(|&j| j != of && self.known[j].is_some_and(|c| self.rule.matches(card, c)))
    }

    fn unseen(&self, except: Option<usize>) -> Option<usize> {
        self.open()
            .find(|&i| self.known[i].is_none() && Some(i) != except)
    }
}

impl Agent for ConcentrationOracle {
    fn name(&self) -> &'static str {
        "oracle"
    }

    fn reset(&mut self, _seed: EpisodeSeed) {
        self.known.fill(None);
        self.matched.fill(false);
        self.pending = None;
        self.last_pick = None;
        self.completed = None;
    }

    fn act(&mut self, obs: &[f32]) -> Action {
        if let Some(pick) = self.last_pick.take() {
            if let Some(card) = Self::decode(obs) {
                self.known[pick] = Some(card);
            }
        }
        if let Some((a, b)) = self.completed.take() {
            if let (Some(x), Some(y)) = (self.known[a], self.known[b]) {
                if self.rule.matches(x, y) {
                    self.matched[a] = true;
                    self.matched[b] = true;
                }
            }
        }
        let pick = match self.pending.take() {
            None => {
                let first = self
                    .open()
                    .find(|&i| self.known_partner(i).is_some())
                    .or_else(|| self.unseen(None))
                    .or_else(|| self.open().next())
                    .unwrap_or(0);
                self.pending = Some(first);
                first
            }
            Some(first) => {
                let second = self
                    .known_partner(first)
                    .or_else(|| self.unseen(Some(first)))
                    .or_else(|| self.open().find(|&j| j != first))
                    .unwrap_or(first);
                self.completed = Some((first, second));
                second
            }
        };
        self.last_pick = Some(pick);
        Action::Discrete(pick)
    }
}

/// White-box: reads the mine layout and clicks every safe cell once.
#[derive(Debug, Clone, Default)]
pub struct MineSweeperSafe {
    plan: Vec<usize>,
    next: usize,
}

impl Agent for MineSweeperSafe {
    fn name(&self) -> &'static str {
        "oracle"
    }

    fn reset(&mut self, _seed: EpisodeSeed) {
        self.plan.clear();
        self.next = 0;
    }

    fn inspect(&mut self, env: &dyn Env) {
        let board = env
            .as_any()
            .downcast_ref::<Episode<MineSweeper>>()
            .expect("MineSweeperSafe only plays Mine Sweeper")
            .task();
        self.plan = (0..board.num_cells())
            .filter(|&c| !board.mines()[c])
            .collect();
    }

    fn act(&mut self, _obs: &[f32]) -> Action {
        let cell = self.plan[self.next % self.plan.len()];
        self.next += 1;
        Action::Discrete(cell)
    }
}

/// White-box adversary: repeats one safe cell until the last step of the
/// cap, then clicks a mine. Collects every repeat penalty plus the mine.
#[derive(Debug, Clone, Default)]
pub struct MineSweeperSpamThenMine {
    safe: usize,
    mine: usize,
    steps_left: u32,
}

impl Agent for MineSweeperSpamThenMine {
    fn name(&self) -> &'static str {
        "adversarial"
    }

    fn reset(&mut self, _seed: EpisodeSeed) {}

    fn inspect(&mut self, env: &dyn Env) {
        let board = env
            .as_any()
            .downcast_ref::<Episode<MineSweeper>>()
            .expect("MineSweeperSpamThenMine only plays Mine Sweeper")
            .task();
        let mines = board.mines();
        self.safe = mines.iter().position(|m| !m).unwrap_or(0);
        self.mine = mines.iter().position(|m| *m).unwrap_or(0);
        self.steps_left = env.max_steps();
    }

    fn act(&mut self, _obs: &[f32]) -> Action {
        self.steps_left = self.steps_left.saturating_sub(1);
        Action::Discrete(if self.steps_left == 0 {
            self.mine
        } else {
            self.safe
        })
    }
}
