use crate::env::Action;
use crate::rng::{rng_stream, EpisodeSeed, Pcg32};
use crate::spaces::SpaceDescriptor;

use super::Agent;

/// Uniformly random actions from the agent's own seeded stream.
#[derive(Debug, Clone)]
pub struct RandomAgent {
    space: SpaceDescriptor,
    rng: Pcg32,
}

impl RandomAgent {
    pub const STREAM: &'static str = "agent-random";

    pub fn new(space: SpaceDescriptor) -> Self {
        RandomAgent {
            space,
            rng: rng_stream(EpisodeSeed(0), Self::STREAM),
        }
    }

    pub fn sample(&mut self) -> Action {
        sample_action(&self.space, &mut self.rng)
    }
}

/// Uniform sample from a discrete or box action space.
pub fn sample_action(space: &SpaceDescriptor, rng: &mut Pcg32) -> Action {
    match space {
        SpaceDescriptor::Discrete { n } => Action::Discrete(rng.below_usize(*n)),
        SpaceDescriptor::Box { low, high } => Action::Continuous(
            low.iter()
                .zip(high)
                .map(|(l, h)| rng.uniform_range(*l as f64, *h as f64))
                .collect(),
        ),
        SpaceDescriptor::MultiDiscrete { .. } => unreachable!("no env uses MultiDiscrete actions"),
    }
}

impl Agent for RandomAgent {
    fn name(&self) -> &'static str {
        "random"
    }

    fn reset(&mut self, seed: EpisodeSeed) {
        self.rng = rng_stream(seed, Self::STREAM);
    }

    fn act(&mut self, _obs: &[f32]) -> Action {
        self.sample()
    }
}

/// Repeats one action forever: action 0 for discrete spaces, the upper
/// bound for boxes. Spams repeat penalties wherever they exist.
#[derive(Debug, Clone)]
pub struct ConstantAgent {
    action: Action,
}

impl ConstantAgent {
    pub fn new(space: &SpaceDescriptor) -> Self {
        let action = match space {
            SpaceDescriptor::Box { high, .. } => {
                Action::Continuous(high.iter().map(|h| *h as f64).collect())
            }
            _ => Action::Discrete(0),
        };
        ConstantAgent { action }
    }

    pub fn with_action(action: Action) -> Self {
        ConstantAgent { action }
    }
}

impl Agent for ConstantAgent {
    fn name(&self) -> &'static str {
        "constant"
    }

    fn reset(&mut self, _seed: EpisodeSeed) {}

    fn act(&mut self, _obs: &[f32]) -> Action {
        self.action.clone()
    }
}
