use crate::env::{Action, Difficulty, Info, Overcompleteness, Task, TaskOutcome};
use crate::registry::EnvKind;
use crate::reward::unit_share;
use crate::rng::EpisodeStreams;
use crate::spaces::SpaceDescriptor;

use super::{noise_sigma, observe};

pub const GRAVITY: f64 = 9.8;
pub const MASS_CART: f64 = 1.0;
pub const MASS_POLE: f64 = 0.1;
/// Half the pole length, as in the classical formulation.
pub const HALF_POLE_LENGTH: f64 = 0.5;
pub const FORCE_MAG: f64 = 10.0;
pub const TAU: f64 = 0.02;
pub const THETA_LIMIT: f64 = 12.0 * 2.0 * std::f64::consts::PI / 360.0;
pub const X_LIMIT: f64 = 2.4;
/// Bound declared for both velocity observations.
pub const VELOCITY_BOUND: f32 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CartpoleState {
    pub x: f64,
    pub x_dot: f64,
    pub theta: f64,
    pub theta_dot: f64,
}

impl CartpoleState {
    pub fn failed(&self) -> bool {
        self.x.abs() > X_LIMIT || self.theta.abs() > THETA_LIMIT
    }

    /// One explicit Euler step of the cart-pole equations under `force`.
    pub fn euler_step(self, force: f64) -> CartpoleState {
        let total_mass = MASS_CART + MASS_POLE;
        let pole_mass_length = MASS_POLE * HALF_POLE_LENGTH;
        let (sin, cos) = (libm::sin(self.theta), libm::cos(self.theta));
        let temp = (force + pole_mass_length * self.theta_dot * self.theta_dot * sin) / total_mass;
        let theta_acc = (GRAVITY * sin - cos * temp)
            / (HALF_POLE_LENGTH * (4.0 / 3.0 - MASS_POLE * cos * cos / total_mass));
        let x_acc = temp - pole_mass_length * theta_acc * cos / total_mass;
        CartpoleState {
            x: self.x + TAU * self.x_dot,
            x_dot: self.x_dot + TAU * x_acc,
            theta: self.theta + TAU * self.theta_dot,
            theta_dot: self.theta_dot + TAU * theta_acc,
        }
    }
}

/// Cart-pole balancing where only `(x_dot, theta_dot)` are observed.
/// Action 0 pushes left, 1 pushes right. Each surviving step pays
/// `1 / max_steps`, the failing step pays nothing.
#[derive(Debug, Clone)]
pub struct StatelessCartpole {
    difficulty: Difficulty,
    noisy: bool,
    max_steps: u32,
    state: CartpoleState,
}

impl StatelessCartpole {
    pub fn new(difficulty: Difficulty, noisy: bool) -> Self {
        StatelessCartpole {
            difficulty,
            noisy,
            max_steps: difficulty.pick([200, 400, 600]),
            state: CartpoleState::default(),
        }
    }

    pub fn state(&self) -> CartpoleState {
        self.state
    }

    pub fn sigma(&self) -> f64 {
        if self.noisy {
            noise_sigma(self.difficulty)
        } else {
            0.0
        }
    }

    fn write_obs(&self, streams: &mut EpisodeStreams, obs: &mut [f32]) {
        let sigma = self.sigma();
        obs[0] = observe(self.state.x_dot, sigma, VELOCITY_BOUND, &mut streams.noise);
        obs[1] = observe(
            self.state.theta_dot,
            sigma,
            VELOCITY_BOUND,
            &mut streams.noise,
        );
    }
}

impl Task for StatelessCartpole {
    fn kind(&self) -> EnvKind {
        if self.noisy {
            EnvKind::NoisyStatelessCartpole
        } else {
            EnvKind::StatelessCartpole
        }
    }

    fn difficulty(&self) -> Difficulty {
        self.difficulty
    }

    fn action_space(&self) -> SpaceDescriptor {
        SpaceDescriptor::discrete(2)
    }

    fn observation_bounds(&self) -> (Vec<f32>, Vec<f32>) {
        (vec![-VELOCITY_BOUND; 2], vec![VELOCITY_BOUND; 2])
    }

    fn max_steps(&self) -> u32 {
        self.max_steps
    }

    fn overcompleteness(&self) -> Overcompleteness {
        Overcompleteness::Projection {
            state_dims: 4,
            observed_dims: 2,
        }
    }

    fn reset(&mut self, streams: &mut EpisodeStreams, obs: &mut [f32]) {
        let rng = &mut streams.level;
        self.state = CartpoleState {
            x: rng.uniform_range(-0.05, 0.05),
            x_dot: rng.uniform_range(-0.05, 0.05),
            theta: rng.uniform_range(-0.05, 0.05),
            theta_dot: rng.uniform_range(-0.05, 0.05),
        };
        self.write_obs(streams, obs);
    }

    fn step(
        &mut self,
        action: &Action,
        streams: &mut EpisodeStreams,
        obs: &mut [f32],
        _info: &mut Info,
    ) -> TaskOutcome {
        let force = if action.as_discrete() == Some(1) {
            FORCE_MAG
        } else {
            -FORCE_MAG
        };
        self.state = self.state.euler_step(force);
        self.write_obs(streams, obs);
        if self.state.failed() {
            TaskOutcome::finished(0.0)
        } else {
            TaskOutcome::running(unit_share(self.max_steps as u64))
        }
    }
}
