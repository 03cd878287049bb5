use std::f64::consts::{PI, TAU};

use crate::env::{Action, Difficulty, Info, Overcompleteness, Task, TaskOutcome};
use crate::registry::EnvKind;
use crate::reward::unit_share;
use crate::rng::EpisodeStreams;
use crate::spaces::SpaceDescriptor;

use super::{noise_sigma, observe};

pub const GRAVITY: f64 = 10.0;
pub const MASS: f64 = 1.0;
pub const LENGTH: f64 = 1.0;
pub const DT: f64 = 0.05;
pub const MAX_SPEED: f64 = 8.0;
/// Torque applied for an action of magnitude 1.
pub const MAX_TORQUE: f64 = 2.0;
/// Declared bound of the angular velocity observation (noise is clamped into it).
pub const VELOCITY_BOUND: f32 = 10.0;
/// Largest possible per-step cost: angle pi, full speed, full torque.
pub const COST_MAX: f64 = PI * PI + 0.1 * MAX_SPEED * MAX_SPEED + 0.001 * MAX_TORQUE * MAX_TORQUE;

/// Wraps an angle into `(-pi, pi]`.
pub fn wrap_angle(theta: f64) -> f64 {
    let wrapped = theta - TAU * libm::floor((theta + PI) / TAU);
    if wrapped <= -PI {
        wrapped + TAU
    } else {
        wrapped
    }
}

/// Quadratic swing-up cost for a state and applied torque.
pub fn cost(theta: f64, theta_dot: f64, torque: f64) -> f64 {
    let th = wrap_angle(theta);
    th * th + 0.1 * theta_dot * theta_dot + 0.001 * torque * torque
}

/// Per-step reward: `(1 - cost / COST_MAX) / max_steps`, in `[0, 1 / max_steps]`.
pub fn step_reward(cost: f64, max_steps: u32) -> f64 {
    (1.0 - cost / COST_MAX).clamp(0.0, 1.0) * unit_share(max_steps as u64)
}

/// Angle `0` is upright.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PendulumState {
    pub theta: f64,
    pub theta_dot: f64,
}

impl PendulumState {
    pub fn advance(self, torque: f64) -> PendulumState {
        let theta_acc = 3.0 * GRAVITY / (2.0 * LENGTH) * libm::sin(self.theta)
            + 3.0 / (MASS * LENGTH * LENGTH) * torque;
        let theta_dot = (self.theta_dot + theta_acc * DT).clamp(-MAX_SPEED, MAX_SPEED);
        PendulumState {
            theta: wrap_angle(self.theta + theta_dot * DT),
            theta_dot,
        }
    }
}

/// Swing-up pendulum observing only the angular velocity. The action is a
/// normalized torque in `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct StatelessPendulum {
    difficulty: Difficulty,
    noisy: bool,
    max_steps: u32,
    state: PendulumState,
}

impl StatelessPendulum {
    pub fn new(difficulty: Difficulty, noisy: bool) -> Self {
        StatelessPendulum {
            difficulty,
            noisy,
            max_steps: difficulty.pick([100, 150, 200]),
            state: PendulumState::default(),
        }
    }

    pub fn state(&self) -> PendulumState {
        self.state
    }

    /// Overrides the latent state mid-episode (white-box tests only).
    pub fn set_state(&mut self, state: PendulumState) {
        self.state = state;
    }

    pub fn sigma(&self) -> f64 {
        if self.noisy {
            noise_sigma(self.difficulty)
        } else {
            0.0
        }
    }
}

impl Task for StatelessPendulum {
    fn kind(&self) -> EnvKind {
        if self.noisy {
            EnvKind::NoisyStatelessPendulum
        } else {
            EnvKind::StatelessPendulum
        }
    }

    fn difficulty(&self) -> Difficulty {
        self.difficulty
    }

    fn action_space(&self) -> SpaceDescriptor {
        SpaceDescriptor::boxed(vec![-1.0], vec![1.0])
    }

    fn observation_bounds(&self) -> (Vec<f32>, Vec<f32>) {
        (vec![-VELOCITY_BOUND], vec![VELOCITY_BOUND])
    }

    fn max_steps(&self) -> u32 {
        self.max_steps
    }

    fn overcompleteness(&self) -> Overcompleteness {
        Overcompleteness::Projection {
            state_dims: 2,
            observed_dims: 1,
        }
    }

    fn reset(&mut self, streams: &mut EpisodeStreams, obs: &mut [f32]) {
        self.state = PendulumState {
            theta: streams.level.uniform_range(-PI, PI),
            theta_dot: streams.level.uniform_range(-1.0, 1.0),
        };
        obs[0] = observe(
            self.state.theta_dot,
            self.sigma(),
            VELOCITY_BOUND,
            &mut streams.noise,
        );
    }

    fn step(
        &mut self,
        action: &Action,
        streams: &mut EpisodeStreams,
        obs: &mut [f32],
        _info: &mut Info,
    ) -> TaskOutcome {
        let torque = match action {
            Action::Continuous(v) => v[0] * MAX_TORQUE,
            Action::Discrete(_) => 0.0,
        };
        let c = cost(self.state.theta, self.state.theta_dot, torque);
        self.state = self.state.advance(torque);
        obs[0] = observe(
            self.state.theta_dot,
            self.sigma(),
            VELOCITY_BOUND,
            &mut streams.noise,
        );
        TaskOutcome::running(step_reward(c, self.max_steps))
    }
}
