use crate::env::Action;
use crate::envs::nav::MOVES;
use crate::rng::EpisodeSeed;

use super::Agent;

/// Window index of the neighbor in each move direction (N, E, S, W).
const NEIGHBOR: [usize; MOVES] = [1, 5, 7, 3];

/// Left-hand rule: try turning left, then straight, then right, then back.
/// The only memory is the current heading.
#[derive(Debug, Clone, Default)]
pub struct WallFollower {
    heading: usize,
}

impl WallFollower {
    pub fn heading(&self) -> usize {
        self.heading
    }
}

impl Agent for WallFollower {
    fn name(&self) -> &'static str {
        "wall_follower"
    }

    fn reset(&mut self, _seed: EpisodeSeed) {
        self.heading = 0;
    }

    fn act(&mut self, obs: &[f32]) -> Action {
        let h = self.heading;
        let preference = [(h + 3) % MOVES, h, (h + 1) % MOVES, (h + 2) % MOVES];
        let dir = preference
            .into_iter()
            .find(|&d| obs[NEIGHBOR[d]] == 0.0)
            .unwrap_or(h);
        self.heading = dir;
        Action::Discrete(dir)
    }
}
