//! Playing cards shared by the card-based environments.

use serde::{Deserialize, Serialize};

pub const RANKS: u8 = 13;
pub const SUITS: u8 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    Red,
    Black,
}

/// A card with rank `0..13` (two through ace) and suit `0..4`
/// (clubs, diamonds, hearts, spades).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Card {
    pub rank: u8,
    pub suit: u8,
}

impl Card {
    pub fn new(rank: u8, suit: u8) -> Self {
        debug_assert!(rank < RANKS && suit < SUITS);
        Card { rank, suit }
    }

    pub fn color(self) -> Color {
        match self.suit {
            1 | 2 => Color::Red,
            _ => Color::Black,
        }
    }
}

/// `decks` full 52-card decks in canonical order.
pub fn standard_shoe(decks: usize) -> Vec<Card> {
    let mut cards = Vec::with_capacity(52 * decks);
    for _ in 0..decks {
        for suit in 0..SUITS {
            for rank in 0..RANKS {
                cards.push(Card::new(rank, suit));
            }
        }
    }
    cards
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shoe_composition() {
        let shoe = standard_shoe(2);
        assert_eq!(shoe.len(), 104);
        for rank in 0..RANKS {
            assert_eq!(shoe.iter().filter(|c| c.rank == rank).count(), 8);
        }
        assert_eq!(shoe.iter().filter(|c| c.color() == Color::Red).count(), 52);
    }
}
