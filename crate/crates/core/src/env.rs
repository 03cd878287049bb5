//! Environment interface and the episode lifecycle shared by every task.
//!
//! Each game is written as a [`Task`]: it owns the latent state, consumes
//! actions and writes its own slice of the observation. [`Episode`] wraps a
//! task and enforces the common contract: action validation, the step cap,
//! terminated/truncated bookkeeping, and the trailing previous-action
//! encoding that every observation carries.

use std::any::Any;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::EnvError;
use crate::registry::{EnvId, EnvKind};
use crate::rng::{EpisodeSeed, EpisodeStreams};
use crate::spaces::SpaceDescriptor;

/// Hard ceiling on episode length for every environment.
pub const GLOBAL_MAX_STEPS: u32 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Difficulty {
    Easy,
    Medium,
    Hard,
}

impl Difficulty {
    pub const ALL: [Difficulty; 3] = [Difficulty::Easy, Difficulty::Medium, Difficulty::Hard];

    /// Picks the entry for this level from a per-difficulty table.
    #[inline]
    pub fn pick<T: Copy>(self, table: [T; 3]) -> T {
        table[self as usize]
    }

    pub fn name(self) -> &'static str {
        match self {
            Difficulty::Easy => "Easy",
            Difficulty::Medium => "Medium",
            Difficulty::Hard => "Hard",
        }
    }
}

impl fmt::Display for Difficulty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Difficulty {
    type Err = EnvError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "e" | "easy" => Ok(Difficulty::Easy),
            "m" | "medium" => Ok(Difficulty::Medium),
            "h" | "hard" => Ok(Difficulty::Hard),
            _ => Err(EnvError::InvalidConfig(format!("unknown difficulty `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Action {
    Discrete(usize),
    Continuous(Vec<f64>),
}

impl Action {
    pub fn as_discrete(&self) -> Option<usize> {
        match self {
            Action::Discrete(a) => Some(*a),
            Action::Continuous(_) => None,
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::Discrete(a) => write!(f, "{a}"),
            Action::Continuous(v) => write!(f, "{v:?}"),
        }
    }
}

/// Flat observation vector. The trailing `action_space.flat_dim()` entries
/// hold the previous action (one-hot or raw), zeroed right after reset.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Observation(pub Vec<f32>);

impl Deref for Observation {
    type Target = [f32];

    fn deref(&self) -> &[f32] {
        &self.0
    }
}

/// Diagnostic key/value pairs emitted alongside a transition. Never needed
/// to act well; the reference agents do not read it.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Info(Vec<(&'static str, f64)>);

impl Info {
    pub fn insert(&mut self, key: &'static str, value: f64) {
        match self.0.iter_mut().find(|(k, _)| *k == key) {
            Some(slot) => slot.1 = value,
            None => self.0.push((key, value)),
        }
    }

    pub fn get(&self, key: &str) -> Option<f64> {
        self.0.iter().find(|(k, _)| *k == key).map(|(_, v)| *v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, f64)> + '_ {
        self.0.iter().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn clear(&mut self) {
        self.0.clear();
    }
}

/// Scalar part of a transition; the observation stays inside the env.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transition {
    pub reward: f64,
    pub terminated: bool,
    pub truncated: bool,
}

impl Transition {
    pub fn done(&self) -> bool {
        self.terminated || self.truncated
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepResult {
    pub obs: Observation,
    pub reward: f64,
    pub terminated: bool,
    pub truncated: bool,
    pub info: Info,
}

/// Witness that an environment has more latent states than observations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Overcompleteness {
    /// Discrete count: log2 of a lower bound on reachable latent states
    /// against log2 of an upper bound on distinct observations. Infinite
    /// latent counts stand for continuous latent parameters.
    Counting {
        latent_states_log2: f64,
        observations_log2: f64,
    },
    /// Continuous state projected onto fewer observed coordinates.
    Projection {
        state_dims: usize,
        observed_dims: usize,
    },
}

impl Overcompleteness {
    pub fn holds(&self) -> bool {
        match *self {
            Overcompleteness::Counting {
                latent_states_log2,
                observations_log2,
            } => latent_states_log2 > observations_log2,
            Overcompleteness::Projection {
                state_dims,
                observed_dims,
            } => state_dims > observed_dims,
        }
    }
}

/// What a task reports after consuming one action.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaskOutcome {
    pub reward: f64,
    pub terminated: bool,
}

impl TaskOutcome {
    pub fn running(reward: f64) -> Self {
        TaskOutcome {
            reward,
            terminated: false,
        }
    }

    pub fn finished(reward: f64) -> Self {
        TaskOutcome {
            reward,
            terminated: true,
        }
    }
}

/// Game rules for one environment. Implementors write only their own
/// observation slice (`obs.len() == observation_bounds().0.len()`); the
/// previous-action suffix, the cap and validation belong to [`Episode`].
pub trait Task: Send + 'static {
    fn kind(&self) -> EnvKind;
    fn difficulty(&self) -> Difficulty;
    fn action_space(&self) -> SpaceDescriptor;
    /// Per-dimension `(low, high)` bounds of the task-owned observation.
    fn observation_bounds(&self) -> (Vec<f32>, Vec<f32>);
    /// Step cap; never above [`GLOBAL_MAX_STEPS`].
    fn max_steps(&self) -> u32;
    fn overcompleteness(&self) -> Overcompleteness;
    fn reset(&mut self, streams: &mut EpisodeStreams, obs: &mut [f32]);
    fn step(
        &mut self,
        action: &Action,
        streams: &mut EpisodeStreams,
        obs: &mut [f32],
        info: &mut Info,
    ) -> TaskOutcome;
}

/// Object-safe environment interface used by agents, the registry and the
/// benchmark harness.
pub trait Env: Send {
    fn id(&self) -> EnvId;
    fn observation_space(&self) -> &SpaceDescriptor;
    fn action_space(&self) -> &SpaceDescriptor;
    fn max_steps(&self) -> u32;
    fn elapsed_steps(&self) -> u32;
    fn overcompleteness(&self) -> Overcompleteness;
    /// True once the current episode has terminated or been truncated, and
    /// before the first reset.
    fn is_done(&self) -> bool;

    /// Starts a fresh episode; the new observation is available through
    /// [`Env::observation`].
    fn reset_in_place(&mut self, seed: EpisodeSeed);
    /// Advances one transition without copying the observation out.
    fn step_in_place(&mut self, action: &Action) -> Result<Transition, EnvError>;
    fn observation(&self) -> &[f32];
    fn info(&self) -> &Info;

    fn as_any(&self) -> &dyn Any;

    fn reset(&mut self, seed: EpisodeSeed) -> Observation {
        self.reset_in_place(seed);
        Observation(self.observation().to_vec())
    }

    fn step(&mut self, action: &Action) -> Result<StepResult, EnvError> {
        let t = self.step_in_place(action)?;
        Ok(StepResult {
            obs: Observation(self.observation().to_vec()),
            reward: t.reward,
            terminated: t.terminated,
            truncated: t.truncated,
            info: self.info().clone(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Phase {
    NeedsReset,
    Running,
    Done,
}

/// Lifecycle wrapper turning a [`Task`] into an [`Env`].
#[derive(Debug, Clone)]
pub struct Episode<T: Task> {
    task: T,
    streams: EpisodeStreams,
    obs: Vec<f32>,
    task_dims: usize,
    observation_space: SpaceDescriptor,
    action_space: SpaceDescriptor,
    max_steps: u32,
    elapsed: u32,
    phase: Phase,
    info: Info,
    last_hot: Option<usize>,
}

impl<T: Task> Episode<T> {
    pub fn new(task: T) -> Self {
        let action_space = task.action_space();
        let (mut low, mut high) = task.observation_bounds();
        let task_dims = low.len();
        match &action_space {
            SpaceDescriptor::Discrete { n } => {
                low.extend(std::iter::repeat_n(0.0, *n));
                high.extend(std::iter::repeat_n(1.0, *n));
            }
            SpaceDescriptor::Box { low: al, high: ah } => {
                low.extend_from_slice(al);
                high.extend_from_slice(ah);
            }
            SpaceDescriptor::MultiDiscrete { .. } => {
                unreachable!("no task declares a MultiDiscrete action space")
            }
        }
        let max_steps = task.max_steps();
        assert!((1..=GLOBAL_MAX_STEPS).contains(&max_steps));
        let obs = vec![0.0; low.len()];
        Episode {
            task,
            streams: EpisodeStreams::new(EpisodeSeed(0)),
            obs,
            task_dims,
            observation_space: SpaceDescriptor::boxed(low, high),
            action_space,
            max_steps,
            elapsed: 0,
            phase: Phase::NeedsReset,
            info: Info::default(),
            last_hot: None,
        }
    }

    /// Read-only access to the latent task state (white-box inspection).
    pub fn task(&self) -> &T {
        &self.task
    }

    /// Mutable access to the latent task state. Only for white-box tests
    /// that need to pin a state mid-episode.
    pub fn task_mut(&mut self) -> &mut T {
        &mut self.task
    }

    fn validate(&self, action: &Action) -> Result<(), EnvError> {
        let ok = match (action, &self.action_space) {
            (Action::Discrete(a), SpaceDescriptor::Discrete { n }) => a < n,
            (Action::Continuous(v), SpaceDescriptor::Box { low, high }) => {
                v.len() == low.len()
                    && v.iter()
                        .zip(low.iter().zip(high))
                        .all(|(x, (l, h))| x.is_finite() && *x >= *l as f64 && *x <= *h as f64)
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(EnvError::ActionOutOfRange {
                action: action.to_string(),
                space: self.action_space.to_string(),
            })
        }
    }

    fn write_previous_action(&mut self, action: &Action) {
        let tail = &mut self.obs[self.task_dims..];
        match action {
            Action::Discrete(a) => {
                if let Some(old) = self.last_hot.take() {
                    tail[old] = 0.0;
                }
                tail[*a] = 1.0;
                self.last_hot = Some(*a);
            }
            Action::Continuous(v) => {
                for (slot, x) in tail.iter_mut().zip(v) {
                    *slot = *x as f32;
                }
            }
        }
    }
}

impl<T: Task> Env for Episode<T> {
    fn id(&self) -> EnvId {
        EnvId::new(self.task.kind(), self.task.difficulty())
    }

    fn observation_space(&self) -> &SpaceDescriptor {
        &self.observation_space
    }

    fn action_space(&self) -> &SpaceDescriptor {
        &self.action_space
    }

    fn max_steps(&self) -> u32 {
        self.max_steps
    }

    fn elapsed_steps(&self) -> u32 {
        self.elapsed
    }

    fn overcompleteness(&self) -> Overcompleteness {
        self.task.overcompleteness()
    }

    fn is_done(&self) -> bool {
        self.phase != Phase::Running
    }

    fn reset_in_place(&mut self, seed: EpisodeSeed) {
        self.streams = EpisodeStreams::new(seed);
        self.obs.fill(0.0);
        self.last_hot = None;
        self.info.clear();
        self.elapsed = 0;
        self.task
            .reset(&mut self.streams, &mut self.obs[..self.task_dims]);
        self.phase = Phase::Running;
    }

    fn step_in_place(&mut self, action: &Action) -> Result<Transition, EnvError> {
        if self.phase != Phase::Running {
            return Err(EnvError::EpisodeOver);
        }
        self.validate(action)?;
        self.info.clear();
        let outcome = self.task.step(
            action,
            &mut self.streams,
            &mut self.obs[..self.task_dims],
            &mut self.info,
        );
        self.write_previous_action(action);
        self.elapsed += 1;
        let truncated = !outcome.terminated && self.elapsed >= self.max_steps;
        if outcome.terminated || truncated {
            self.phase = Phase::Done;
        }
        Ok(Transition {
            reward: outcome.reward,
            terminated: outcome.terminated,
            truncated,
        })
    }

    fn observation(&self) -> &[f32] {
        &self.obs
    }

    fn info(&self) -> &Info {
        &self.info
    }

    fn as_any(&self) -> &dyn Any {
        self
    }
}

/// Writes a one-hot encoding of `index` into `out` (all zeros for `None`).
#[inline]
pub(crate) fn one_hot(out: &mut [f32], index: Option<usize>) {
    out.fill(0.0);
    if let Some(i) = index {
        out[i] = 1.0;
    }
}
