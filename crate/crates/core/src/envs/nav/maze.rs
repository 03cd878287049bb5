use std::collections::VecDeque;

use crate::error::EnvError;
use crate::rng::{rng_stream, EpisodeSeed, Pcg32, LEVEL_STREAM};

/// `(row, col)` grid coordinate.
pub type Cell = (usize, usize);

/// Grid maze. Walls sit on the border and on every even row and column
/// except where a passage was carved; rooms live at odd coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Maze {
    width: usize,
    height: usize,
    wall: Vec<bool>,
    free: usize,
    pub start: Cell,
}

const STEPS: [(isize, isize); 4] = [(-1, 0), (0, 1), (1, 0), (0, -1)];

impl Maze {
    /// Perfect maze by randomized depth-first carving on the seed's level
    /// stream. The start is a random room.
    pub fn generate(width: usize, height: usize, seed: EpisodeSeed) -> Result<Maze, EnvError> {
        Self::generate_with(width, height, &mut rng_stream(seed, LEVEL_STREAM))
    }

    pub fn generate_with(width: usize, height: usize, rng: &mut Pcg32) -> Result<Maze, EnvError> {
        if width < 5 || height < 5 || width.is_multiple_of(2) || height.is_multiple_of(2) {
            return Err(EnvError::InvalidDimensions { width, height });
        }
        let mut wall = vec![true; width * height];
        let rooms_wide = (width - 1) / 2;
        let rooms_high = (height - 1) / 2;
        let origin = (
            1 + 2 * rng.below_usize(rooms_high),
            1 + 2 * rng.below_usize(rooms_wide),
        );
        wall[origin.0 * width + origin.1] = false;
        let mut stack = vec![origin];
        let mut options = [(0usize, 0usize); 4];
        while let Some(&(r, c)) = stack.last() {
            let mut count = 0;
            for (dr, dc) in STEPS {
                let nr = r as isize + 2 * dr;
                let nc = c as isize + 2 * dc;
                if nr > 0 && nc > 0 && (nr as usize) < height - 1 && (nc as usize) < width - 1 {
                    let (nr, nc) = (nr as usize, nc as usize);
                    if wall[nr * width + nc] {
                        options[count] = (nr, nc);
                        count += 1;
                    }
                }
            }
            if count == 0 {
                stack.pop();
                continue;
            }
            let (nr, nc) = options[rng.below_usize(count)];
            wall[((r + nr) / 2) * width + (c + nc) / 2] = false;
            wall[nr * width + nc] = false;
            stack.push((nr, nc));
        }
        let start = (
            1 + 2 * rng.below_usize(rooms_high),
            1 + 2 * rng.below_usize(rooms_wide),
        );
        Ok(Maze {
            width,
            height,
            free: wall.iter().filter(|w| !**w).count(),
            wall,
            start,
        })
    }

    /// Builds a maze from text rows: `#` is wall, anything else free.
    /// The border must be walled; `start` must be free.
    pub fn from_rows(rows: &[&str], start: Cell) -> Result<Maze, EnvError> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.len());
        let bad = || EnvError::InvalidConfig("malformed maze rows".into());
        if height < 3 || width < 3 || rows.iter().any(|r| r.len() != width) {
            return Err(bad());
        }
        let wall: Vec<bool> = rows
            .iter()
            .flat_map(|r| r.bytes().map(|b| b == b'#'))
            .collect();
        let maze = Maze {
            width,
            height,
            free: wall.iter().filter(|w| !**w).count(),
            wall,
            start,
        };
        let border_ok = (0..height).all(|r| maze.is_wall((r, 0)) && maze.is_wall((r, width - 1)))
            && (0..width).all(|c| maze.is_wall((0, c)) && maze.is_wall((height - 1, c)));
        if !border_ok || start.0 >= height || start.1 >= width || maze.is_wall(start) {
            return Err(bad());
        }
        Ok(maze)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn index(&self, cell: Cell) -> usize {
        cell.0 * self.width + cell.1
    }

    #[inline]
    pub fn is_wall(&self, cell: Cell) -> bool {
        self.wall[self.index(cell)]
    }

    /// Neighbor of an interior cell in direction `dir` (0 N, 1 E, 2 S, 3 W).
    #[inline]
    pub fn neighbor(&self, cell: Cell, dir: usize) -> Cell {
        let (dr, dc) = STEPS[dir];
        (
            (cell.0 as isize + dr) as usize,
            (cell.1 as isize + dc) as usize,
        )
    }

    pub fn free_cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.height)
            .flat_map(move |r| (0..self.width).map(move |c| (r, c)))
            .filter(move |&cell| !self.is_wall(cell))
    }

    pub fn num_free(&self) -> usize {
        self.free
    }

    /// Breadth-first distances from `from`; `None` for walls and
    /// unreachable cells.
    pub fn distances(&self, from: Cell) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.wall.len()];
        let mut queue = VecDeque::new();
        dist[self.index(from)] = Some(0);
        queue.push_back(from);
        while let Some(cell) = queue.pop_front() {
            let d = dist[self.index(cell)].unwrap_or(0);
            for dir in 0..4 {
                let next = self.neighbor(cell, dir);
                let i = self.index(next);
                if !self.wall[i] && dist[i].is_none() {
                    dist[i] = Some(d + 1);
                    queue.push_back(next);
                }
            }
        }
        dist
    }

    /// Free cell farthest from the start (first in row-major order on ties).
    pub fn farthest_from_start(&self) -> Cell {
        let dist = self.distances(self.start);
        let mut best = (self.start, 0);
        for cell in self.free_cells() {
            if let Some(d) = dist[self.index(cell)] {
                if d > best.1 {
                    best = (cell, d);
                }
            }
        }
        best.0
    }

    pub fn is_connected(&self) -> bool {
        let dist = self.distances(self.start);
        self.free_cells().all(|c| dist[self.index(c)].is_some())
    }

    /// Number of edges between orthogonally adjacent free cells.
    pub fn corridor_edges(&self) -> usize {
        self.free_cells()
            .map(|cell| {
                [1usize, 2]
                    .into_iter()
                    .filter(|&dir| !self.is_wall(self.neighbor(cell, dir)))
                    .count()
            })
            .sum()
    }

    /// Connected with a tree-shaped corridor graph.
    pub fn is_perfect(&self) -> bool {
        self.is_connected() && self.corridor_edges() + 1 == self.num_free()
    }
}
