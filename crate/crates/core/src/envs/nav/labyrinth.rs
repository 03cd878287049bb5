use crate::env::{Action, Difficulty, Info, Overcompleteness, Task, TaskOutcome};
use crate::error::EnvError;
use crate::registry::EnvKind;
use crate::reward::unit_share;
use crate::rng::EpisodeStreams;
use crate::spaces::SpaceDescriptor;

use super::maze::{Cell, Maze};

/// Moves: 0 north, 1 east, 2 south, 3 west.
pub const MOVES: usize = 4;
/// Cells in the 3x3 view, row-major from the north-west corner; 1.0 is wall.
pub const WINDOW: usize = 9;

#[derive(Debug, Clone)]
enum MazeSource {
    Generated { side: usize },
    Fixed(Maze),
}

/// Shared maze walking state.
#[derive(Debug, Clone)]
struct Walker {
    source: MazeSource,
    maze: Maze,
    pos: Cell,
    visited: Vec<bool>,
    visited_count: usize,
    max_steps: u32,
}

impl Walker {
    fn new(source: MazeSource, max_steps: u32) -> Result<Self, EnvError> {
        if max_steps == 0 || max_steps > crate::env::GLOBAL_MAX_STEPS {
            return Err(EnvError::InvalidConfig("max_steps out of range".into()));
        }
        let maze = match &source {
            MazeSource::Generated { side } => {
                Maze::generate_with(*side, *side, &mut crate::rng::Pcg32::new(0, 0))?
            }
            MazeSource::Fixed(maze) => maze.clone(),
        };
        if maze.num_free() < 2 {
            return Err(EnvError::InvalidConfig(
                "maze needs at least two free cells".into(),
            ));
        }
        Ok(Walker {
            pos: maze.start,
            visited: vec![false; maze.width() * maze.height()],
            visited_count: 0,
            source,
            maze,
            max_steps,
        })
    }

    fn reset(&mut self, streams: &mut EpisodeStreams, obs: &mut [f32]) {
        if let MazeSource::Generated { side } = self.source {
            self.maze = Maze::generate_with(side, side, &mut streams.level)
                .expect("generated sizes are valid");
        }
        self.pos = self.maze.start;
        self.visited.fill(false);
        self.visited[self.maze.index(self.pos)] = true;
        self.visited_count = 1;
        self.write_window(obs);
    }

    /// Applies a move; blocked moves leave the walker in place. Returns
    /// whether the destination was visited for the first time.
    fn advance(&mut self, action: &Action) -> bool {
        let dir = action.as_discrete().unwrap_or(0);
        let next = self.maze.neighbor(self.pos, dir);
        if self.maze.is_wall(next) {
            return false;
        }
        self.pos = next;
        let i = self.maze.index(next);
        if self.visited[i] {
            false
        } else {
            self.visited[i] = true;
            self.visited_count += 1;
            true
        }
    }

    fn write_window(&self, obs: &mut [f32]) {
        let (r, c) = self.pos;
        for dr in 0..3 {
            for dc in 0..3 {
                let wall = self.maze.is_wall((r + dr - 1, c + dc - 1));
                obs[dr * 3 + dc] = if wall { 1.0 } else { 0.0 };
            }
        }
    }

    fn overcompleteness(&self) -> Overcompleteness {
        // position x elapsed steps against all wall patterns x previous move
        Overcompleteness::Counting {
            latent_states_log2: (self.maze.num_free() as f64 * self.max_steps as f64).log2(),
            observations_log2: ((256 * (MOVES + 1)) as f64).log2(),
        }
    }
}

fn side_for(difficulty: Difficulty) -> usize {
    difficulty.pick([9, 13, 17])
}

fn cap_for(difficulty: Difficulty) -> u32 {
    difficulty.pick([256, 512, 1024])
}

/// Visit every free cell of a maze while only seeing the 3x3 neighborhood.
/// Each newly reached cell pays `1/(num_free - 1)` (the start pays nothing)
/// and every step costs `1/max_steps`.
#[derive(Debug, Clone)]
pub struct LabyrinthExplore {
    difficulty: Difficulty,
    walker: Walker,
}

impl LabyrinthExplore {
    pub fn new(difficulty: Difficulty) -> Self {
        let walker = Walker::new(
            MazeSource::Generated {
                side: side_for(difficulty),
            },
            cap_for(difficulty),
        )
        .expect("built-in sizes are valid");
        LabyrinthExplore { difficulty, walker }
    }

    /// Plays on the same fixed maze every episode.
    pub fn with_maze(maze: Maze, max_steps: u32) -> Result<Self, EnvError> {
        Ok(LabyrinthExplore {
            difficulty: Difficulty::Easy,
            walker: Walker::new(MazeSource::Fixed(maze), max_steps)?,
        })
    }

    pub fn maze(&self) -> &Maze {
        &self.walker.maze
    }

    pub fn position(&self) -> Cell {
        self.walker.pos
    }

    pub fn visited_count(&self) -> usize {
        self.walker.visited_count
    }

    pub fn coverage(&self) -> f64 {
        self.walker.visited_count as f64 / self.walker.maze.num_free() as f64
    }
}

impl Task for LabyrinthExplore {
    fn kind(&self) -> EnvKind {
        EnvKind::LabyrinthExplore
    }

    fn difficulty(&self) -> Difficulty {
        self.difficulty
    }

    fn action_space(&self) -> SpaceDescriptor {
        SpaceDescriptor::discrete(MOVES)
    }

    fn observation_bounds(&self) -> (Vec<f32>, Vec<f32>) {
        (vec![0.0; WINDOW], vec![1.0; WINDOW])
    }

    fn max_steps(&self) -> u32 {
        self.walker.max_steps
    }

    fn overcompleteness(&self) -> Overcompleteness {
        self.walker.overcompleteness()
    }

    fn reset(&mut self, streams: &mut EpisodeStreams, obs: &mut [f32]) {
        self.walker.reset(streams, obs);
    }

    fn step(
        &mut self,
        action: &Action,
        _streams: &mut EpisodeStreams,
        obs: &mut [f32],
        info: &mut Info,
    ) -> TaskOutcome {
        let discovered = self.walker.advance(action);
        self.walker.write_window(obs);
        let num_free = self.walker.maze.num_free();
        let mut reward = -unit_share(self.walker.max_steps as u64);
        if discovered {
            reward += unit_share((num_free - 1) as u64);
        }
        info.insert("coverage", self.coverage());
        TaskOutcome {
            reward,
            terminated: self.walker.visited_count == num_free,
        }
    }
}

/// Reach the exit, placed at the free cell farthest from the start. Every
/// step costs `1/max_steps`; reaching the exit pays `+1` and ends the episode.
#[derive(Debug, Clone)]
pub struct LabyrinthEscape {
    difficulty: Difficulty,
    walker: Walker,
    exit: Cell,
}

impl LabyrinthEscape {
    pub fn new(difficulty: Difficulty) -> Self {
        let walker = Walker::new(
            MazeSource::Generated {
                side: side_for(difficulty),
            },
            cap_for(difficulty),
        )
        .expect("built-in sizes are valid");
        LabyrinthEscape {
            difficulty,
            exit: walker.maze.start,
            walker,
        }
    }

    pub fn with_maze(maze: Maze, max_steps: u32) -> Result<Self, EnvError> {
        let walker = Walker::new(MazeSource::Fixed(maze), max_steps)?;
        Ok(LabyrinthEscape {
            difficulty: Difficulty::Easy,
            exit: walker.maze.farthest_from_start(),
            walker,
        })
    }

    pub fn maze(&self) -> &Maze {
        &self.walker.maze
    }

    pub fn position(&self) -> Cell {
        self.walker.pos
    }

    pub fn exit(&self) -> Cell {
        self.exit
    }
}

impl Task for LabyrinthEscape {
    fn kind(&self) -> EnvKind {
        EnvKind::LabyrinthEscape
    }

    fn difficulty(&self) -> Difficulty {
        self.difficulty
    }

    fn action_space(&self) -> SpaceDescriptor {
        SpaceDescriptor::discrete(MOVES)
    }

    fn observation_bounds(&self) -> (Vec<f32>, Vec<f32>) {
        (vec![0.0; WINDOW], vec![1.0; WINDOW])
    }

    fn max_steps(&self) -> u32 {
        self.walker.max_steps
    }

    fn overcompleteness(&self) -> Overcompleteness {
        self.walker.overcompleteness()
    }

    fn reset(&mut self, streams: &mut EpisodeStreams, obs: &mut [f32]) {
        self.walker.reset(streams, obs);
        self.exit = self.walker.maze.farthest_from_start();
    }

    fn step(
        &mut self,
        action: &Action,
        _streams: &mut EpisodeStreams,
        obs: &mut [f32],
        info: &mut Info,
    ) -> TaskOutcome {
        self.walker.advance(action);
        self.walker.write_window(obs);
        let escaped = self.walker.pos == self.exit;
        let step_cost = -unit_share(self.walker.max_steps as u64);
        info.insert("escaped", if escaped { 1.0 } else { 0.0 });
        if escaped {
            TaskOutcome::finished(1.0 + step_cost)
        } else {
            TaskOutcome::running(step_cost)
        }
    }
}
