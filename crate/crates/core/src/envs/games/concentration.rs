use crate::env::{one_hot, Action, Difficulty, Info, Overcompleteness, Task, TaskOutcome};
use crate::envs::cards::{standard_shoe, Card, RANKS, SUITS};
use crate::envs::log2_factorial;
use crate::error::EnvError;
use crate::registry::EnvKind;
use crate::reward::unit_share;
use crate::rng::EpisodeStreams;
use crate::spaces::SpaceDescriptor;

/// Length of the revealed-card part of the observation: rank then suit.
pub const CARD_DIMS: usize = (RANKS + SUITS) as usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchRule {
    Color,
    Rank,
}

impl MatchRule {
    pub fn matches(self, a: Card, b: Card) -> bool {
        match self {
            MatchRule::Color => a.color() == b.color(),
            MatchRule::Rank => a.rank == b.rank,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConcentrationConfig {
    pub deck: Vec<Card>,
    pub rule: MatchRule,
    pub max_steps: u32,
}

impl ConcentrationConfig {
    pub fn for_difficulty(difficulty: Difficulty) -> Self {
        match difficulty {
            Difficulty::Easy => {
                // 14 red cards (ranks 0..7 of both red suits) and 12 black
                // (ranks 0..6 of both black suits): every color class is even.
                let deck = standard_shoe(1)
                    .into_iter()
                    .filter(|c| match c.suit {
                        1 | 2 => c.rank < 7,
                        _ => c.rank < 6,
                    })
                    .collect();
                ConcentrationConfig {
                    deck,
                    rule: MatchRule::Color,
                    max_steps: 256,
                }
            }
            Difficulty::Medium => ConcentrationConfig {
                deck: standard_shoe(1),
                rule: MatchRule::Color,
                max_steps: 512,
            },
            Difficulty::Hard => ConcentrationConfig {
                deck: standard_shoe(1),
                rule: MatchRule::Rank,
                max_steps: 1024,
            },
        }
    }

    /// Every match class must split into pairs so the board can be cleared.
    pub fn validate(&self) -> Result<(), EnvError> {
        if self.deck.len() < 2 || !self.deck.len().is_multiple_of(2) {
            return Err(EnvError::InvalidConfig(
                "deck needs an even number of cards".into(),
            ));
        }
        for card in &self.deck {
            let class = self
                .deck
                .iter()
                .filter(|c| self.rule.matches(*card, **c))
                .count();
            if class % 2 != 0 {
                return Err(EnvError::InvalidConfig(format!(
                    "match class of {card:?} has odd size {class}"
                )));
            }
        }
        if self.max_steps == 0 || self.max_steps > crate::env::GLOBAL_MAX_STEPS {
            return Err(EnvError::InvalidConfig("max_steps out of range".into()));
        }
        Ok(())
    }
}

/// Memory card game. Cards lie face down; each action selects one card and
/// every second selection completes a flip. A matching flip pays
/// `+1/num_pairs` and removes both cards. A non-matching flip, or a wasted
/// selection (an already matched card, or the card already face up) costs
/// `-1/max_steps` and turns the pending card back over.
///
/// Observation: `one_hot(rank) ++ one_hot(suit)` of the card just turned
/// over, blank after a wasted selection.
#[derive(Debug, Clone)]
pub struct Concentration {
    difficulty: Difficulty,
    config: ConcentrationConfig,
    layout: Vec<Card>,
    matched: Vec<bool>,
    pending: Option<usize>,
    pairs_found: usize,
    fixed_layout: Option<Vec<Card>>,
}

impl Concentration {
    pub fn new(difficulty: Difficulty) -> Self {
        Self::with_config(difficulty, ConcentrationConfig::for_difficulty(difficulty))
            .expect("built-in configs are valid")
    }

    pub fn with_config(
        difficulty: Difficulty,
        config: ConcentrationConfig,
    ) -> Result<Self, EnvError> {
        config.validate()?;
        let n = config.deck.len();
        Ok(Concentration {
            difficulty,
            layout: config.deck.clone(),
            matched: vec![false; n],
            pending: None,
            pairs_found: 0,
            fixed_layout: None,
            config,
        })
    }

    /// Deals `layout` on every reset instead of shuffling (white-box tests).
    pub fn with_fixed_layout(mut self, layout: Vec<Card>) -> Self {
        let mut a = layout.clone();
        let mut b = self.config.deck.clone();
        a.sort();
        b.sort();
        assert_eq!(a, b, "layout must be a permutation of the deck");
        self.fixed_layout = Some(layout);
        self
    }

    pub fn num_cards(&self) -> usize {
        self.config.deck.len()
    }

    pub fn num_pairs(&self) -> usize {
        self.config.deck.len() / 2
    }

    pub fn rule(&self) -> MatchRule {
        self.config.rule
    }

    pub fn layout(&self) -> &[Card] {
        &self.layout
    }

    pub fn matched(&self) -> &[bool] {
        &self.matched
    }

    pub fn pairs_found(&self) -> usize {
        self.pairs_found
    }

    fn show(obs: &mut [f32], card: Option<Card>) {
        one_hot(&mut obs[..RANKS as usize], card.map(|c| c.rank as usize));
        one_hot(&mut obs[RANKS as usize..], card.map(|c| c.suit as usize));
    }
}

impl Task for Concentration {
    fn kind(&self) -> EnvKind {
        EnvKind::Concentration
    }

    fn difficulty(&self) -> Difficulty {
        self.difficulty
    }

    fn action_space(&self) -> SpaceDescriptor {
        SpaceDescriptor::discrete(self.num_cards())
    }

    fn observation_bounds(&self) -> (Vec<f32>, Vec<f32>) {
        (vec![0.0; CARD_DIMS], vec![1.0; CARD_DIMS])
    }

    fn max_steps(&self) -> u32 {
        self.config.max_steps
    }

    fn overcompleteness(&self) -> Overcompleteness {
        let n = self.num_cards();
        Overcompleteness::Counting {
            latent_states_log2: log2_factorial(n as u64),
            // (one of 52 cards or blank) x previous action (or none)
            observations_log2: ((53 * (n + 1)) as f64).log2(),
        }
    }

    fn reset(&mut self, streams: &mut EpisodeStreams, obs: &mut [f32]) {
        match &self.fixed_layout {
            Some(layout) => self.layout.clone_from(layout),
            None => {
                self.layout.clone_from(&self.config.deck);
                streams.level.shuffle(&mut self.layout);
            }
        }
        self.matched.fill(false);
        self.pending = None;
        self.pairs_found = 0;
        Self::show(obs, None);
    }

    fn step(
        &mut self,
        action: &Action,
        _streams: &mut EpisodeStreams,
        obs: &mut [f32],
        info: &mut Info,
    ) -> TaskOutcome {
        let pick = action.as_discrete().unwrap_or(0);
        let penalty = -unit_share(self.config.max_steps as u64);
        let outcome = if self.matched[pick] || self.pending == Some(pick) {
            self.pending = None;
            Self::show(obs, None);
            TaskOutcome::running(penalty)
        } else {
            Self::show(obs, Some(self.layout[pick]));
            match self.pending.take() {
                None => {
                    self.pending = Some(pick);
                    TaskOutcome::running(0.0)
                }
                Some(first) => {
                    if self
                        .config
                        .rule
                        .matches(self.layout[first], self.layout[pick])
                    {
                        self.matched[first] = true;
                        self.matched[pick] = true;
                        self.pairs_found += 1;
                        TaskOutcome {
                            reward: unit_share(self.num_pairs() as u64),
                            terminated: self.pairs_found == self.num_pairs(),
                        }
                    } else {
                        TaskOutcome::running(penalty)
                    }
                }
            }
        };
        info.insert("pairs_found", self.pairs_found as f64);
        outcome
    }
}
