//! Card and board games played without access to the board.

mod bandit;
mod battleship;
mod concentration;
mod count_recall;
mod higher_lower;
mod minesweeper;

pub use bandit::MultiarmedBandit;
pub use battleship::{Battleship, BattleshipConfig, Ship};
pub use concentration::{Concentration, ConcentrationConfig, MatchRule};
pub use count_recall::{CountRecall, NUM_SYMBOLS};
pub use higher_lower::{HigherLower, HIGHER, LOWER};
pub use minesweeper::{MineSweeper, MineSweeperConfig, MINE_PENALTY};
