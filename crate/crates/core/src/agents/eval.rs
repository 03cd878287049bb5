use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::env::Env;
use crate::error::EnvError;
use crate::registry::{make, EnvId};
use crate::reward::ExactSum;
use crate::rng::EpisodeSeed;

use super::{make_agent, Agent, AgentError, AgentKind};

/// Running return statistics. Merging is associative, so per-worker
/// accumulators can be combined in any grouping.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ReturnStats {
    pub episodes: u64,
    pub sum: f64,
    pub sum_sq: f64,
    pub min: f64,
    pub max: f64,
    pub terminated: u64,
    pub truncated: u64,
    /// Sum and count of each info key's value at the final step.
    pub info: BTreeMap<String, (f64, u64)>,
}

impl ReturnStats {
    pub fn record(&mut self, ret: f64, terminated: bool, final_info: &crate::env::Info) {
        if self.episodes == 0 {
            self.min = ret;
            self.max = ret;
        } else {
            self.min = self.min.min(ret);
            self.max = self.max.max(ret);
        }
        self.episodes += 1;
        self.sum += ret;
        self.sum_sq += ret * ret;
        if terminated {
            self.terminated += 1;
        } else {
            self.truncated += 1;
        }
        for (key, value) in final_info.iter() {
            let slot = self.info.entry(key.to_string()).or_insert((0.0, 0));
            slot.0 += value;
            slot.1 += 1;
        }
    }

    pub fn merge(mut self, other: ReturnStats) -> ReturnStats {
        if other.episodes == 0 {
            return self;
        }
        if self.episodes == 0 {
            return other;
        }
        self.min = self.min.min(other.min);
        self.max = self.max.max(other.max);
        self.episodes += other.episodes;
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
        self.terminated += other.terminated;
        self.truncated += other.truncated;
        for (key, (s, n)) in other.info {
            let slot = self.info.entry(key).or_insert((0.0, 0));
            slot.0 += s;
            slot.1 += n;
        }
        self
    }

    pub fn mean(&self) -> f64 {
        if self.episodes == 0 {
            0.0
        } else {
            self.sum / self.episodes as f64
        }
    }

    /// Standard error of the mean with the unbiased sample variance.
    pub fn std_error(&self) -> f64 {
        if self.episodes < 2 {
            return 0.0;
        }
        let n = self.episodes as f64;
        let var = ((self.sum_sq - self.sum * self.sum / n) / (n - 1.0)).max(0.0);
        (var / n).sqrt()
    }

    pub fn report(&self, env: EnvId, agent: &str) -> EvalReport {
        EvalReport {
            env: env.to_string(),
            agent: agent.to_string(),
            episodes: self.episodes,
            mean_return: self.mean(),
            std_error: self.std_error(),
            min_return: self.min,
            max_return: self.max,
            terminated: self.terminated,
            truncated: self.truncated,
            info: self
                .info
                .iter()
                .map(|(k, (s, n))| (k.clone(), s / *n as f64))
                .collect(),
        }
    }
}

/// Summary of one (env, agent) evaluation. Serializes to one JSON line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub env: String,
    pub agent: String,
    pub episodes: u64,
    pub mean_return: f64,
    pub std_error: f64,
    pub min_return: f64,
    pub max_return: f64,
    pub terminated: u64,
    pub truncated: u64,
    /// Mean over episodes of each diagnostic key at the final step.
    pub info: BTreeMap<String, f64>,
}

/// Plays `num_episodes` episodes seeded `base_seed, base_seed + 1, ...`.
pub fn run_eval_env(
    env: &mut dyn Env,
    agent: &mut dyn Agent,
    num_episodes: u64,
    base_seed: u64,
) -> Result<ReturnStats, EnvError> {
    let mut stats = ReturnStats::default();
    for i in 0..num_episodes {
        let seed = EpisodeSeed(base_seed.wrapping_add(i));
        env.reset_in_place(seed);
        agent.reset(seed);
        agent.inspect(env);
        let mut ret = ExactSum::new();
        loop {
            let action = agent.act(env.observation());
            let t = env.step_in_place(&action)?;
            ret.add(t.reward);
            if t.done() {
                stats.record(ret.value(), t.terminated, env.info());
                break;
            }
        }
    }
    Ok(stats)
}

pub fn run_eval(
    id: EnvId,
    agent: AgentKind,
    num_episodes: u64,
    base_seed: u64,
) -> Result<EvalReport, AgentError> {
    if num_episodes == 0 {
        return Err(AgentError::NoEpisodes);
    }
    let mut player = make_agent(agent, id)?;
    let mut env = make(id);
    let stats = run_eval_env(env.as_mut(), player.as_mut(), num_episodes, base_seed)?;
    Ok(stats.report(id, agent.name()))
}

/// Same episodes as [`run_eval`], split into contiguous seed ranges over
/// `workers` threads, each owning its env and agent.
pub fn run_eval_parallel(
    id: EnvId,
    agent: AgentKind,
    num_episodes: u64,
    base_seed: u64,
    workers: usize,
) -> Result<EvalReport, AgentError> {
    if num_episodes == 0 {
        return Err(AgentError::NoEpisodes);
    }
    make_agent(agent, id)?;
    let workers = workers.clamp(1, num_episodes as usize) as u64;
    let chunk = num_episodes.div_ceil(workers);
    let parts: Vec<Result<ReturnStats, AgentError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let start = w * chunk;
                let count = chunk.min(num_episodes.saturating_sub(start));
                scope.spawn(move || -> Result<ReturnStats, AgentError> {
                    let mut player = make_agent(agent, id)?;
                    let mut env = make(id);
                    Ok(run_eval_env(
                        env.as_mut(),
                        player.as_mut(),
                        count,
                        base_seed.wrapping_add(start),
                    )?)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("eval worker panicked"))
            .collect()
    });
    let mut total = ReturnStats::default();
    for part in parts {
        total = total.merge(part?);
    }
    Ok(total.report(id, agent.name()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::env::Info;

    fn stats_of(values: &[f64]) -> ReturnStats {
        let mut s = ReturnStats::default();
        for v in values {
            s.record(*v, true, &Info::default());
        }
        s
    }

    #[test]
    fn moments() {
        let s = stats_of(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(s.mean(), 2.5);
        // sample variance 5/3
        assert!((s.std_error() - (5.0f64 / 3.0 / 4.0).sqrt()).abs() < 1e-12);
        assert_eq!((s.min, s.max), (1.0, 4.0));
    }

    #[test]
    fn merge_is_associative() {
        let a = stats_of(&[0.5, -0.25]);
        let b = stats_of(&[1.0]);
        let c = stats_of(&[-1.0, 0.0, 0.75]);
        let left = a.clone().merge(b.clone()).merge(c.clone());
        let right = a.merge(b.merge(c));
        assert_eq!(left.episodes, right.episodes);
        assert_eq!((left.min, left.max), (right.min, right.max));
        assert!((left.sum - right.sum).abs() < 1e-12);
        assert!((left.sum_sq - right.sum_sq).abs() < 1e-12);
    }

    #[test]
    fn zero_episodes_rejected() {
        let id = "RepeatFirst-Easy".parse().unwrap();
        assert_eq!(
            run_eval(id, AgentKind::Random, 0, 0),
            Err(AgentError::NoEpisodes)
        );
    }

    #[test]
    fn parallel_matches_sequential_counts() {
        let id = "RepeatFirst-Easy".parse().unwrap();
        let seq = run_eval(id, AgentKind::Random, 37, 3).unwrap();
        let par = run_eval_parallel(id, AgentKind::Random, 37, 3, 4).unwrap();
        assert_eq!(seq.episodes, par.episodes);
        assert_eq!(
            (seq.min_return, seq.max_return),
            (par.min_return, par.max_return)
        );
        assert!((seq.mean_return - par.mean_return).abs() < 1e-12);
    }

    #[test]
    fn report_serializes_as_one_line() {
        let id = "RepeatFirst-Easy".parse().unwrap();
        let report = run_eval(id, AgentKind::Oracle, 3, 0).unwrap();
        let line = serde_json::to_string(&report).unwrap();
        assert!(!line.contains('\n'));
        let back: EvalReport = serde_json::from_str(&line).unwrap();
        assert_eq!(back, report);
    }
}
