use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use popgym_bench::{
    bench_eval, bench_fps, parse_agents, parse_env_selection, trajectory_digest,
    write_eval_reports, write_fps_rows, BenchConfig, BenchError, OutputFormat,
};

#[derive(Parser)]
#[command(
    name = "bench",
    about = "Throughput and evaluation harness for popgym environments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Measure random-action stepping throughput.
    Fps {
        /// `all` or comma-separated env names / full ids.
        #[arg(long, default_value = "all")]
        envs: String,
        /// `e`, `m`, `h` or `all`.
        #[arg(long, default_value = "all")]
        difficulty: String,
        /// Steps per worker, warmup included.
        #[arg(long, default_value_t = 100_000)]
        steps: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, default_value_t = 1_000)]
        warmup: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Report path; the table is printed to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "csv")]
        format: OutputFormat,
    },
    /// Evaluate scripted agents and write one JSON line per (env, agent).
    Eval {
        #[arg(long, default_value = "all")]
        envs: String,
        #[arg(long, default_value = "all")]
        difficulty: String,
        /// Comma-separated agent names.
        #[arg(long, default_value = "random")]
        agents: String,
        #[arg(long, default_value_t = 100)]
        episodes: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a SHA-256 digest of random-action trajectories.
    Digest {
        #[arg(long, default_value = "all")]
        envs: String,
        #[arg(long, default_value = "all")]
        difficulty: String,
        #[arg(long, default_value_t = 100)]
        episodes: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn run(cli: Cli) -> Result<(), BenchError> {
    match cli.command {
        Command::Fps {
            envs,
            difficulty,
            steps,
            workers,
            warmup,
            seed,
            out,
            format,
        } => {
            let config = BenchConfig {
                envs: parse_env_selection(&envs, &difficulty)?,
                num_steps: steps,
                warmup_steps: warmup,
                num_workers: workers,
                seed,
            };
            config.validate()?;
            let rows: Vec<_> = bench_fps(&config)?.into_iter().map(|r| r.row).collect();
            match out {
                Some(path) => write_fps_rows(&rows, &path, format)?,
                None => {
                    println!("env,difficulty,workers,steps_per_sec_single,steps_per_sec_total,wall_time_s");
                    for r in &rows {
                        println!(
                            "{},{},{},{:.0},{:.0},{:.4}",
                            r.env,
                            r.difficulty,
                            r.workers,
                            r.steps_per_sec_single,
                            r.steps_per_sec_total,
                            r.wall_time_s
                        );
                    }
                }
            }
        }
        Command::Eval {
            envs,
            difficulty,
            agents,
            episodes,
            seed,
            out,
        } => {
            let ids = parse_env_selection(&envs, &difficulty)?;
            let agents = parse_agents(&agents)?;
            if episodes == 0 {
                return Err(BenchError::InvalidConfig(
                    "episodes must be at least 1".into(),
                ));
            }
            let reports = bench_eval(&ids, &agents, episodes, seed)?;
            match out {
                Some(path) => write_eval_reports(&reports, &path)?,
                None => {
                    for r in &reports {
                        println!("{}", serde_json::to_string(r)?);
                    }
                }
            }
        }
        Command::Digest {
            envs,
            difficulty,
            episodes,
            seed,
        } => {
            let ids = parse_env_selection(&envs, &difficulty)?;
            println!("{}", trajectory_digest(&ids, episodes, seed)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("bench: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
