use crate::env::{one_hot, Action, Difficulty, Info, Overcompleteness, Task, TaskOutcome};
use crate::envs::log2_binomial;
use crate::error::EnvError;
use crate::registry::EnvKind;
use crate::reward::unit_share;
use crate::rng::EpisodeStreams;
use crate::spaces::SpaceDescriptor;

/// Reward for clicking a mine. Repeat clicks share the other half of the
/// negative budget, so an episode never drops below -1.
pub const MINE_PENALTY: f64 = -0.5;

#[derive(Debug, Clone, PartialEq)]
pub struct MineSweeperConfig {
    pub rows: usize,
    pub cols: usize,
    pub mines: usize,
    pub max_steps: u32,
}

impl MineSweeperConfig {
    pub fn for_difficulty(difficulty: Difficulty) -> Self {
        let side = difficulty.pick([4, 6, 8]);
        MineSweeperConfig {
            rows: side,
            cols: side,
            mines: difficulty.pick([2, 6, 12]),
            max_steps: (2 * side * side) as u32,
        }
    }

    pub fn validate(&self) -> Result<(), EnvError> {
        let cells = self.rows * self.cols;
        if cells < 2 || self.mines == 0 || self.mines >= cells {
            return Err(EnvError::InvalidConfig(
                "mine count must leave safe cells".into(),
            ));
        }
        if self.max_steps == 0 || self.max_steps > crate::env::GLOBAL_MAX_STEPS {
            return Err(EnvError::InvalidConfig("max_steps out of range".into()));
        }
        Ok(())
    }
}

/// Mine Sweeper without a visible board. A first click on a safe cell pays
/// `+1/num_safe`, a repeated click `-0.5/max_steps`, and a mine ends the
/// episode with [`MINE_PENALTY`].
///
/// Observation: `one_hot(adjacent mine count)` of the last clicked cell
/// (0..=8); the cell itself is carried by the previous-action suffix.
#[derive(Debug, Clone)]
pub struct MineSweeper {
    difficulty: Difficulty,
    config: MineSweeperConfig,
    mine: Vec<bool>,
    adjacent: Vec<u8>,
    clicked: Vec<bool>,
    revealed: usize,
}

impl MineSweeper {
    pub fn new(difficulty: Difficulty) -> Self {
        Self::with_config(difficulty, MineSweeperConfig::for_difficulty(difficulty))
            .expect("built-in configs are valid")
    }

    pub fn with_config(
        difficulty: Difficulty,
        config: MineSweeperConfig,
    ) -> Result<Self, EnvError> {
        config.validate()?;
        let cells = config.rows * config.cols;
        Ok(MineSweeper {
            difficulty,
            config,
            mine: vec![false; cells],
            adjacent: vec![0; cells],
            clicked: vec![false; cells],
            revealed: 0,
        })
    }

    pub fn config(&self) -> &MineSweeperConfig {
        &self.config
    }

    pub fn num_cells(&self) -> usize {
        self.config.rows * self.config.cols
    }

    pub fn num_safe(&self) -> usize {
        self.num_cells() - self.config.mines
    }

    pub fn mines(&self) -> &[bool] {
        &self.mine
    }

    /// Adjacent mine counts, row-major.
    pub fn adjacency(&self) -> &[u8] {
        &self.adjacent
    }

    fn compute_adjacency(&mut self) {
        let (rows, cols) = (self.config.rows as isize, self.config.cols as isize);
        for r in 0..rows {
            for c in 0..cols {
                let mut count = 0;
                for dr in -1..=1 {
                    for dc in -1..=1 {
                        let (nr, nc) = (r + dr, c + dc);
                        if (dr, dc) != (0, 0)
                            && (0..rows).contains(&nr)
                            && (0..cols).contains(&nc)
                            && self.mine[(nr * cols + nc) as usize]
                        {
                            count += 1;
                        }
                    }
                }
                self.adjacent[(r * cols + c) as usize] = count;
            }
        }
    }
}

impl Task for MineSweeper {
    fn kind(&self) -> EnvKind {
        EnvKind::MineSweeper
    }

    fn difficulty(&self) -> Difficulty {
        self.difficulty
    }

    fn action_space(&self) -> SpaceDescriptor {
        SpaceDescriptor::discrete(self.num_cells())
    }

    fn observation_bounds(&self) -> (Vec<f32>, Vec<f32>) {
        (vec![0.0; 9], vec![1.0; 9])
    }

    fn max_steps(&self) -> u32 {
        self.config.max_steps
    }

    fn overcompleteness(&self) -> Overcompleteness {
        let cells = self.num_cells() as u64;
        Overcompleteness::Counting {
            // mine layouts x subsets of clicked safe cells
            latent_states_log2: log2_binomial(cells, self.config.mines as u64)
                + self.num_safe() as f64
                - 1.0,
            observations_log2: ((10 * (cells + 1)) as f64).log2(),
        }
    }

    fn reset(&mut self, streams: &mut EpisodeStreams, obs: &mut [f32]) {
        let mut order: Vec<usize> = (0..self.num_cells()).collect();
        streams.level.shuffle(&mut order);
        self.mine.fill(false);
        for &cell in &order[..self.config.mines] {
            self.mine[cell] = true;
        }
        self.compute_adjacency();
        self.clicked.fill(false);
        self.revealed = 0;
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
        one_hot(obs, Some(self.adjacent[cell] as usize));
        if self.mine[cell] {
            return TaskOutcome::finished(MINE_PENALTY);
        }
        if self.clicked[cell] {
            return TaskOutcome::running(MINE_PENALTY * unit_share(self.config.max_steps as u64));
        }
        self.clicked[cell] = true;
        self.revealed += 1;
        TaskOutcome {
            reward: unit_share(self.num_safe() as u64),
            terminated: self.revealed == self.num_safe(),
        }
    }
}
