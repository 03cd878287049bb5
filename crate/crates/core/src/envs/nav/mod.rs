//! Procedurally generated mazes and the two Labyrinth tasks.

mod labyrinth;
mod maze;

pub use labyrinth::{LabyrinthEscape, LabyrinthExplore, MOVES, WINDOW};
pub use maze::{Cell, Maze};
