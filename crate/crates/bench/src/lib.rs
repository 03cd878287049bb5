//! Throughput measurement and batch evaluation for the popgym engine.
//!
//! The FPS workload steps each environment with uniformly random actions
//! and resets automatically when an episode ends. A reset counts as one
//! step of work, so rates stay comparable across envs with very different
//! episode lengths. Warmup steps run before the clock starts.

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use popgym::agents::{run_eval, sample_action, AgentError, AgentKind, EvalReport};
use popgym::rng::Pcg32;
use popgym::{all_env_ids, make, Difficulty, Env, EnvError, EnvId, EnvKind, EpisodeSeed};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

/// PCG stream selector for the benchmark's action sampler.
const ACTION_STREAM: u64 = 0x0062_656e_6368;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Env(#[from] EnvError),
    #[error(transparent)]
    Agent(#[from] AgentError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl BenchError {
    /// Process exit code: 2 for bad configuration (including unknown names),
    /// 3 for failures inside an environment, 1 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::InvalidConfig(_) => 2,
            BenchError::Env(EnvError::UnknownEnvId(_)) => 2,
            BenchError::Env(_) => 3,
            BenchError::Agent(AgentError::Env(EnvError::UnknownEnvId(_))) => 2,
            BenchError::Agent(AgentError::Env(_)) => 3,
            BenchError::Agent(_) => 2,
            BenchError::Io(_) | BenchError::Csv(_) | BenchError::Json(_) => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(BenchError::InvalidConfig(format!(
                "unknown format `{other}`"
            ))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        })
    }
}

/// Expands `--envs` and `--difficulty` into concrete ids.
///
/// `envs` is `all` or a comma-separated list of env names (`RepeatFirst`)
/// or full ids (`popgym-RepeatFirst-Easy`). Bare names are crossed with
/// `difficulty`, which is `all` or one of `e|m|h` (full names work too).
pub fn parse_env_selection(envs: &str, difficulty: &str) -> Result<Vec<EnvId>, BenchError> {
    let levels: Vec<Difficulty> = if difficulty.eq_ignore_ascii_case("all") {
        Difficulty::ALL.to_vec()
    } else {
        let d = difficulty
            .parse::<Difficulty>()
            .map_err(|_| BenchError::InvalidConfig(format!("unknown difficulty `{difficulty}`")))?;
        vec![d]
    };
    if envs.trim().eq_ignore_ascii_case("all") {
        return Ok(all_env_ids()
            .into_iter()
            .filter(|id| levels.contains(&id.difficulty))
            .collect());
    }
    let mut ids = Vec::new();
    for name in envs.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Ok(id) = name.parse::<EnvId>() {
            ids.push(id);
            continue;
        }
        let kind: EnvKind = name.parse()?;
        ids.extend(levels.iter().map(|d| EnvId::new(kind, *d)));
    }
    if ids.is_empty() {
        return Err(BenchError::InvalidConfig("no environments selected".into()));
    }
    Ok(ids)
}

/// Expands `--agents`, a comma-separated list of agent names.
pub fn parse_agents(agents: &str) -> Result<Vec<AgentKind>, BenchError> {
    let kinds = agents
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<AgentKind>())
        .collect::<Result<Vec<_>, _>>()?;
    if kinds.is_empty() {
        return Err(BenchError::InvalidConfig("no agents selected".into()));
    }
    Ok(kinds)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub envs: Vec<EnvId>,
    /// Steps per worker, warmup included.
    pub num_steps: u64,
    pub warmup_steps: u64,
    pub num_workers: usize,
    pub seed: u64,
}

impl BenchConfig {
    pub fn validate(&self) -> Result<(), BenchError> {
        if self.envs.is_empty() {
            return Err(BenchError::InvalidConfig("no environments selected".into()));
        }
        if self.num_steps <= self.warmup_steps {
            return Err(BenchError::InvalidConfig(format!(
                "num_steps ({}) must exceed warmup_steps ({})",
                self.num_steps, self.warmup_steps
            )));
        }
        if self.num_workers == 0 {
            return Err(BenchError::InvalidConfig(
                "num_workers must be at least 1".into(),
            ));
        }
        Ok(())
    }

    pub fn timed_steps(&self) -> u64 {
        self.num_steps - self.warmup_steps
    }
}

/// One report row. Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FpsRow {
    pub env: String,
    pub difficulty: String,
    pub workers: usize,
    pub steps_per_sec_single: f64,
    pub steps_per_sec_total: f64,
    pub wall_time_s: f64,
}

/// Work done by one worker. Identical across runs of the same config.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WorkloadStats {
    pub steps: u64,
    pub resets: u64,
}

impl WorkloadStats {
    fn add(self, other: WorkloadStats) -> WorkloadStats {
        WorkloadStats {
            steps: self.steps + other.steps,
            resets: self.resets + other.resets,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchResult {
    pub id: EnvId,
    pub row: FpsRow,
    /// Summed over the single-worker and parallel phases.
    pub workload: WorkloadStats,
}

/// Random-action stepping loop owned by one worker.
struct Workload {
    env: Box<dyn Env>,
    actions: Pcg32,
    seed_base: u64,
    episodes: u64,
    stats: WorkloadStats,
}

impl Workload {
    fn new(id: EnvId, seed: u64, worker: usize) -> Self {
        let seed_base = seed.wrapping_add((worker as u64) << 32);
        Workload {
            env: make(id),
            actions: Pcg32::new(seed_base, ACTION_STREAM),
            seed_base,
            episodes: 0,
            stats: WorkloadStats::default(),
        }
    }

    fn run(&mut self, steps: u64) -> Result<(), EnvError> {
        for _ in 0..steps {
            if self.episodes == 0 || self.env.is_done() {
                let seed = EpisodeSeed(self.seed_base.wrapping_add(self.episodes));
                self.env.reset_in_place(seed);
                self.episodes += 1;
                self.stats.resets += 1;
            } else {
                let action = sample_action(self.env.action_space(), &mut self.actions);
                self.env.step_in_place(&action)?;
            }
            self.stats.steps += 1;
        }
        Ok(())
    }

    /// Runs warmup, then times `timed` steps. Returns elapsed seconds.
    fn measure(&mut self, warmup: u64, timed: u64) -> Result<f64, EnvError> {
        self.run(warmup)?;
        let start = Instant::now();
        self.run(timed)?;
        Ok(start.elapsed().as_secs_f64().max(f64::MIN_POSITIVE))
    }
}

/// Measures one environment: a single-worker pass, then (for more than one
/// worker) all workers concurrently, one env instance each.
pub fn bench_env(id: EnvId, config: &BenchConfig) -> Result<BenchResult, BenchError> {
    config.validate()?;
    let timed = config.timed_steps();
    let mut single = Workload::new(id, config.seed, 0);
    let single_secs = single.measure(config.warmup_steps, timed)?;
    let single_rate = timed as f64 / single_secs;
    let mut workload = single.stats;

    let (total_rate, wall) = if config.num_workers == 1 {
        (single_rate, single_secs)
    } else {
        let results: Vec<Result<(f64, WorkloadStats), EnvError>> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..config.num_workers)
                .map(|w| {
                    scope.spawn(move || {
                        let mut worker = Workload::new(id, config.seed, w);
                        let secs = worker.measure(config.warmup_steps, timed)?;
                        Ok((secs, worker.stats))
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("bench worker panicked"))
                .collect()
        });
        let mut rate = 0.0;
        let mut wall: f64 = 0.0;
        for r in results {
            let (secs, stats) = r?;
            rate += timed as f64 / secs;
            wall = wall.max(secs);
            workload = workload.add(stats);
        }
        (rate, wall)
    };

    Ok(BenchResult {
        id,
        row: FpsRow {
            env: id.kind.name().to_string(),
            difficulty: id.difficulty.name().to_string(),
            workers: config.num_workers,
            steps_per_sec_single: single_rate,
            steps_per_sec_total: total_rate,
            wall_time_s: wall,
        },
        workload,
    })
}

/// One result per requested env, in request order.
pub fn bench_fps(config: &BenchConfig) -> Result<Vec<BenchResult>, BenchError> {
    config.validate()?;
    config
        .envs
        .iter()
        .map(|id| bench_env(*id, config))
        .collect()
}

pub fn write_fps_rows(
    rows: &[FpsRow],
    path: &Path,
    format: OutputFormat,
) -> Result<(), BenchError> {
    let file = BufWriter::new(File::create(path)?);
    match format {
        OutputFormat::Csv => {
            let mut writer = csv::Writer::from_writer(file);
            for row in rows {
                writer.serialize(row)?;
            }
            writer.flush()?;
        }
        OutputFormat::Json => {
            let mut file = file;
            serde_json::to_writer_pretty(&mut file, rows)?;
            writeln!(file)?;
            file.flush()?;
        }
    }
    Ok(())
}

pub fn read_fps_rows(path: &Path, format: OutputFormat) -> Result<Vec<FpsRow>, BenchError> {
    match format {
        OutputFormat::Csv => {
            let mut reader = csv::Reader::from_path(path)?;
            Ok(reader.deserialize().collect::<Result<Vec<FpsRow>, _>>()?)
        }
        OutputFormat::Json => Ok(serde_json::from_reader(File::open(path)?)?),
    }
}

/// Evaluates every (env, agent) pair. An unsupported pairing is an error,
/// never a silently missing row.
pub fn bench_eval(
    envs: &[EnvId],
    agents: &[AgentKind],
    episodes: u64,
    seed: u64,
) -> Result<Vec<EvalReport>, BenchError> {
    let mut reports = Vec::with_capacity(envs.len() * agents.len());
    for id in envs {
        for agent in agents {
            reports.push(run_eval(*id, *agent, episodes, seed)?);
        }
    }
    Ok(reports)
}

/// Writes one JSON object per line.
pub fn write_eval_reports(reports: &[EvalReport], path: &Path) -> Result<(), BenchError> {
    let mut file = BufWriter::new(File::create(path)?);
    for report in reports {
        serde_json::to_writer(&mut file, report)?;
        writeln!(file)?;
    }
    file.flush()?;
    Ok(())
}

pub fn read_eval_reports(path: &Path) -> Result<Vec<EvalReport>, BenchError> {
    let text = std::fs::read_to_string(path)?;
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).map_err(BenchError::from))
        .collect()
}

/// SHA-256 over full random-action trajectories: every observation bit
/// pattern, reward bit pattern and end flag for `episodes` seeds per env.
/// Equal digests across processes mean bit-identical replays.
pub fn trajectory_digest(envs: &[EnvId], episodes: u64, seed: u64) -> Result<String, BenchError> {
    let mut hasher = Sha256::new();
    for id in envs {
        let mut env = make(*id);
        hasher.update(id.to_string().as_bytes());
        for e in 0..episodes {
            let episode_seed = seed.wrapping_add(e);
            let mut actions = Pcg32::new(episode_seed, ACTION_STREAM);
            env.reset_in_place(EpisodeSeed(episode_seed));
            hash_obs(&mut hasher, env.observation());
            loop {
                let action = sample_action(env.action_space(), &mut actions);
                let t = env.step_in_place(&action)?;
                hash_obs(&mut hasher, env.observation());
                hasher.update(t.reward.to_bits().to_le_bytes());
                hasher.update([t.terminated as u8, t.truncated as u8]);
                if t.done() {
                    break;
                }
            }
        }
    }
    Ok(hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect())
}

fn hash_obs(hasher: &mut Sha256, obs: &[f32]) {
    for v in obs {
        hasher.update(v.to_bits().to_le_bytes());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(num_steps: u64, warmup_steps: u64) -> BenchConfig {
        BenchConfig {
            envs: vec!["RepeatFirst-Easy".parse().unwrap()],
            num_steps,
            warmup_steps,
            num_workers: 1,
            seed: 0,
        }
    }

    #[test]
    fn zero_timed_steps_rejected() {
        assert!(matches!(
            config(10, 10).validate(),
            Err(BenchError::InvalidConfig(_))
        ));
        assert!(matches!(
            config(0, 0).validate(),
            Err(BenchError::InvalidConfig(_))
        ));
        assert!(config(11, 10).validate().is_ok());
        let mut c = config(10, 0);
        c.num_workers = 0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn selection_parsing() {
        assert_eq!(parse_env_selection("all", "all").unwrap().len(), 45);
        assert_eq!(parse_env_selection("all", "e").unwrap().len(), 15);
        let ids = parse_env_selection("RepeatFirst, popgym-Battleship-Hard", "all").unwrap();
        assert_eq!(ids.len(), 4);
        assert!(matches!(
            parse_env_selection("Nope", "all"),
            Err(BenchError::Env(EnvError::UnknownEnvId(_)))
        ));
        assert!(parse_env_selection("RepeatFirst", "x").is_err());
        assert!(parse_env_selection("", "all").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(BenchError::InvalidConfig("x".into()).exit_code(), 2);
        assert_eq!(
            BenchError::Env(EnvError::UnknownEnvId("x".into())).exit_code(),
            2
        );
        assert_eq!(BenchError::Env(EnvError::EpisodeOver).exit_code(), 3);
        assert_eq!(
            BenchError::Agent(AgentError::UnknownAgent("x".into())).exit_code(),
            2
        );
    }

    #[test]
    fn workload_counts_resets_as_steps() {
        // 64-step episodes: 1 reset + 64 steps per episode
        let mut w = Workload::new("RepeatFirst-Easy".parse().unwrap(), 0, 0);
        w.run(130).unwrap();
        assert_eq!(
            w.stats,
            WorkloadStats {
                steps: 130,
                resets: 2
            }
        );
    }
}
