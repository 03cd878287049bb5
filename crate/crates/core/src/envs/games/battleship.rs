use crate::env::{one_hot, Action, Difficulty, Info, Overcompleteness, Task, TaskOutcome};
use crate::error::EnvError;
use crate::registry::EnvKind;
use crate::reward::unit_share;
use crate::rng::{EpisodeStreams, Pcg32};
use crate::spaces::SpaceDescriptor;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ship {
    pub row: usize,
    pub col: usize,
    pub len: usize,
    pub horizontal: bool,
}

impl Ship {
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len).map(move |i| {
            if self.horizontal {
                (self.row, self.col + i)
            } else {
                (self.row + i, self.col)
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BattleshipConfig {
    pub rows: usize,
    pub cols: usize,
    pub ship_lengths: Vec<usize>,
    pub max_steps: u32,
}

impl BattleshipConfig {
    pub fn for_difficulty(difficulty: Difficulty) -> Self {
        let side = difficulty.pick([8, 10, 12]);
        let ship_lengths = match difficulty {
            Difficulty::Easy => vec![2, 3, 3, 4],
            _ => vec![2, 3, 3, 4, 5],
        };
        BattleshipConfig {
            rows: side,
            cols: side,
            ship_lengths,
            max_steps: (2 * side * side) as u32,
        }
    }

    pub fn validate(&self) -> Result<(), EnvError> {
        let longest = self.ship_lengths.iter().copied().max().unwrap_or(0);
        let cells: usize = self.ship_lengths.iter().sum();
        if self.ship_lengths.is_empty()
            || self.ship_lengths.contains(&0)
            || longest > self.rows.max(self.cols)
            || 2 * cells > self.rows * self.cols
        {
            return Err(EnvError::InvalidConfig("ships do not fit the board".into()));
        }
        if self.max_steps == 0 || self.max_steps > crate::env::GLOBAL_MAX_STEPS {
            return Err(EnvError::InvalidConfig("max_steps out of range".into()));
        }
        Ok(())
    }
}

/// Battleship against hidden, randomly placed ships. A first hit on a ship
/// cell pays `+1/total_ship_cells`, first shots into water pay nothing, and
/// any repeated shot costs `-1/max_steps`.
///
/// Observation: `[hit, miss]` for the last shot; its position is carried
/// by the previous-action suffix.
#[derive(Debug, Clone)]
pub struct Battleship {
    difficulty: Difficulty,
    config: BattleshipConfig,
    ships: Vec<Ship>,
    occupied: Vec<bool>,
    fired: Vec<bool>,
    hits: usize,
    ship_cells: usize,
}

impl Battleship {
    pub fn new(difficulty: Difficulty) -> Self {
        Self::with_config(difficulty, BattleshipConfig::for_difficulty(difficulty))
            .expect("built-in configs are valid")
    }

    pub fn with_config(difficulty: Difficulty, config: BattleshipConfig) -> Result<Self, EnvError> {
        config.validate()?;
        let cells = config.rows * config.cols;
        Ok(Battleship {
            difficulty,
            ship_cells: config.ship_lengths.iter().sum(),
            ships: Vec::with_capacity(config.ship_lengths.len()),
            occupied: vec![false; cells],
            fired: vec![false; cells],
            hits: 0,
            config,
        })
    }

    pub fn config(&self) -> &BattleshipConfig {
        &self.config
    }

    pub fn ships(&self) -> &[Ship] {
        &self.ships
    }

    pub fn occupied(&self) -> &[bool] {
        &self.occupied
    }

    pub fn total_ship_cells(&self) -> usize {
        self.ship_cells
    }

    pub fn num_cells(&self) -> usize {
        self.config.rows * self.config.cols
    }

    fn place_ships(&mut self, rng: &mut Pcg32) {
        let (rows, cols) = (self.config.rows, self.config.cols);
        self.ships.clear();
        self.occupied.fill(false);
        let mut lengths = self.config.ship_lengths.clone();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        for len in lengths {
            loop {
                let horizontal = match (len <= cols, len <= rows) {
                    (true, true) => rng.below(2) == 0,
                    (fits_across, _) => fits_across,
                };
                let (max_row, max_col) = if horizontal {
                    (rows, cols - len + 1)
                } else {
                    (rows - len + 1, cols)
                };
                let ship = Ship {
                    row: rng.below_usize(max_row),
                    col: rng.below_usize(max_col),
                    len,
                    horizontal,
                };
                if ship.cells().all(|(r, c)| !self.occupied[r * cols + c]) {
                    for (r, c) in ship.cells() {
                        self.occupied[r * cols + c] = true;
                    }
                    self.ships.push(ship);
                    break;
                }
            }
        }
    }
}

impl Task for Battleship {
    fn kind(&self) -> EnvKind {
        EnvKind::Battleship
    }

    fn difficulty(&self) -> Difficulty {
        self.difficulty
    }

    fn action_space(&self) -> SpaceDescriptor {
        SpaceDescriptor::discrete(self.num_cells())
    }

    fn observation_bounds(&self) -> (Vec<f32>, Vec<f32>) {
        (vec![0.0; 2], vec![1.0; 2])
    }

    fn max_steps(&self) -> u32 {
        self.config.max_steps
    }

    fn overcompleteness(&self) -> Overcompleteness {
        let cells = self.num_cells();
        Overcompleteness::Counting {
            // every subset of water cells may have been fired upon
            latent_states_log2: (cells - self.ship_cells) as f64,
            observations_log2: ((3 * (cells + 1)) as f64).log2(),
        }
    }

    fn reset(&mut self, streams: &mut EpisodeStreams, obs: &mut [f32]) {
        self.place_ships(&mut streams.level);
        self.fired.fill(false);
        self.hits = 0;
        one_hot(obs, None);
    }

    fn step(
        &mut self,
        action: &Action,
        _streams: &mut EpisodeStreams,
        obs: &mut [f32],
        _info: &mut Info,
    ) -> TaskOutcome {
        let cell = action.as_discrete().unwrap_or(0);
        let hit = self.occupied[cell];
        one_hot(obs, Some(if hit { 0 } else { 1 }));
        if self.fired[cell] {
            return TaskOutcome::running(-unit_share(self.config.max_steps as u64));
        }
        self.fired[cell] = true;
        if hit {
            self.hits += 1;
            TaskOutcome {
                reward: unit_share(self.ship_cells as u64),
                terminated: self.hits == self.ship_cells,
            }
        } else {
            TaskOutcome::running(0.0)
        }
    }
}
