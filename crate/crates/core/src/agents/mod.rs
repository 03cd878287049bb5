//! Scripted reference agents and the evaluation loop that certifies the
//! environments with them.
//!
//! Agents see only observations. The two Mine Sweeper agents are the
//! exception: they are labeled white-box and receive the env through
//! [`Agent::inspect`] after each reset, because safe play is not guaranteed
//! from observations alone.

mod basic;
mod eval;
mod higher_lower;
mod oracles;
mod wall_follower;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::env::{Action, Env};
use crate::error::EnvError;
use crate::registry::{EnvId, EnvKind};
use crate::rng::EpisodeSeed;

pub use basic::{sample_action, ConstantAgent, RandomAgent};
pub use eval::{run_eval, run_eval_env, run_eval_parallel, EvalReport, ReturnStats};
pub use higher_lower::{
    memoryless_expected_return, memoryless_policy, CardCounter, MemorylessBaseline,
};
pub use oracles::{
    AutoencodeOracle, BattleshipSweep, ConcentrationOracle, CountRecallOracle, MineSweeperSafe,
    MineSweeperSpamThenMine, RepeatFirstOracle, RepeatPreviousOracle,
};
pub use wall_follower::WallFollower;

pub trait Agent: Send {
    fn name(&self) -> &'static str;

    /// Clears per-episode memory. Called after every env reset with that
    /// episode's seed, which stochastic agents use for their own stream.
    fn reset(&mut self, seed: EpisodeSeed);

    fn act(&mut self, obs: &[f32]) -> Action;

    /// White-box agents read the latent state here; everyone else ignores it.
    fn inspect(&mut self, _env: &dyn Env) {}
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AgentError {
    #[error("unknown agent `{0}`")]
    UnknownAgent(String),
    #[error("agent `{agent}` does not support {env}")]
    UnsupportedEnv { agent: String, env: String },
    #[error("num_episodes must be at least 1")]
    NoEpisodes,
    #[error(transparent)]
    Env(#[from] EnvError),
}

/// Agent names accepted by [`make_agent`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AgentKind {
    Random,
    /// Always repeats action 0 (maximum torque for continuous actions).
    Constant,
    /// Penalty-maximizing script for the reward-bound checks.
    Adversarial,
    Oracle,
    WallFollower,
    CardCounter,
    MemorylessDp,
}

impl AgentKind {
    pub const ALL: [AgentKind; 7] = [
        AgentKind::Random,
        AgentKind::Constant,
        AgentKind::Adversarial,
        AgentKind::Oracle,
        AgentKind::WallFollower,
        AgentKind::CardCounter,
        AgentKind::MemorylessDp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AgentKind::Random => "random",
            AgentKind::Constant => "constant",
            AgentKind::Adversarial => "adversarial",
            AgentKind::Oracle => "oracle",
            AgentKind::WallFollower => "wall_follower",
            AgentKind::CardCounter => "card_counter",
            AgentKind::MemorylessDp => "memoryless_dp",
        }
    }
}

impl fmt::Display for AgentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AgentKind {
    type Err = AgentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AgentKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| AgentError::UnknownAgent(s.to_string()))
    }
}

fn unsupported(agent: &str, id: EnvId) -> AgentError {
    AgentError::UnsupportedEnv {
        agent: agent.to_string(),
        env: id.to_string(),
    }
}

/// Hand-crafted strategy with a known return for `id`.
///
/// Supported: Repeat First, Repeat Previous, Autoencode, Count Recall,
/// Battleship (no-repeat sweep), Concentration (perfect memory) and
/// Mine Sweeper (white-box safe clicks). Envs whose optimum is stochastic
/// or has no tractable script are rejected.
pub fn oracle_for(id: EnvId) -> Result<Box<dyn Agent>, AgentError> {
    let d = id.difficulty;
    Ok(match id.kind {
        EnvKind::RepeatFirst => Box::new(RepeatFirstOracle::default()),
        EnvKind::RepeatPrevious => Box::new(RepeatPreviousOracle::for_difficulty(d)),
        EnvKind::Autoencode => Box::new(AutoencodeOracle::for_difficulty(d)),
        EnvKind::CountRecall => Box::new(CountRecallOracle::default()),
        EnvKind::Battleship => Box::new(BattleshipSweep::for_difficulty(d)),
        EnvKind::Concentration => Box::new(ConcentrationOracle::for_difficulty(d)),
        EnvKind::MineSweeper => Box::new(MineSweeperSafe::default()),
        _ => return Err(unsupported("oracle", id)),
    })
}

/// Builds the named agent for `id`, checking that the pairing makes sense.
pub fn make_agent(kind: AgentKind, id: EnvId) -> Result<Box<dyn Agent>, AgentError> {
    let env = crate::registry::make(id);
    let action_space = env.action_space().clone();
    Ok(match kind {
        AgentKind::Random => Box::new(RandomAgent::new(action_space)),
        AgentKind::Constant => Box::new(ConstantAgent::new(&action_space)),
        AgentKind::Adversarial => match id.kind {
            EnvKind::MineSweeper => Box::new(MineSweeperSpamThenMine::default()),
            _ => Box::new(ConstantAgent::new(&action_space)),
        },
        AgentKind::Oracle => oracle_for(id)?,
        AgentKind::WallFollower if id.kind.is_navigation() => Box::new(WallFollower::default()),
        AgentKind::CardCounter if id.kind == EnvKind::HigherLower => {
            Box::new(CardCounter::for_difficulty(id.difficulty))
        }
        AgentKind::MemorylessDp if id.kind == EnvKind::HigherLower => {
            Box::new(MemorylessBaseline::for_difficulty(id.difficulty))
        }
        other => return Err(unsupported(other.name(), id)),
    })
}

/// Index of the largest entry (first on ties).
pub(crate) fn argmax(values: &[f32]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = i;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::env::Difficulty;

    #[test]
    fn agent_names_round_trip() {
        for k in AgentKind::ALL {
            assert_eq!(k.name().parse::<AgentKind>().unwrap(), k);
        }
        assert!(matches!(
            "nope".parse::<AgentKind>(),
            Err(AgentError::UnknownAgent(_))
        ));
    }

    #[test]
    fn oracle_rejects_stochastic_envs() {
        for kind in [
            EnvKind::MultiarmedBandit,
            EnvKind::StatelessPendulum,
            EnvKind::StatelessCartpole,
        ] {
            let id = EnvId::new(kind, Difficulty::Easy);
            assert!(matches!(
                oracle_for(id),
                Err(AgentError::UnsupportedEnv { .. })
            ));
        }
    }

    #[test]
    fn specialised_agents_check_env() {
        let id = EnvId::new(EnvKind::RepeatFirst, Difficulty::Easy);
        assert!(make_agent(AgentKind::WallFollower, id).is_err());
        assert!(make_agent(AgentKind::CardCounter, id).is_err());
        assert!(make_agent(AgentKind::Random, id).is_ok());
    }
}
