use std::path::Path;
use std::process::{Command, Output};

use popgym::agents::AgentKind;
use popgym::{EnvError, EnvId};
use popgym_bench::{
    bench_env, bench_eval, read_eval_reports, read_fps_rows, write_fps_rows, BenchConfig,
    BenchError, FpsRow, OutputFormat,
};

const CSV_HEADER: &str =
    "env,difficulty,workers,steps_per_sec_single,steps_per_sec_total,wall_time_s";

fn bench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bench"))
        .args(args)
        .output()
        .expect("bench binary runs")
}

fn id(s: &str) -> EnvId {
    s.parse().unwrap()
}

fn small_config(envs: Vec<EnvId>, workers: usize) -> BenchConfig {
    BenchConfig {
        envs,
        num_steps: 20_000,
        warmup_steps: 500,
        num_workers: workers,
        seed: 7,
    }
}

#[test]
fn csv_header_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fps.csv");
    let status = bench(&[
        "fps",
        "--envs",
        "RepeatFirst,Battleship",
        "--difficulty",
        "e",
        "--steps",
        "5000",
        "--warmup",
        "100",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(
        status.status.success(),
        "{}",
        String::from_utf8_lossy(&status.stderr)
    );
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with("RepeatFirst,Easy,1,"), "{}", rows[0]);
}

#[test]
fn csv_and_json_hold_the_same_values() {
    let results = popgym_bench::bench_fps(&small_config(
        vec![id("RepeatPrevious-Medium"), id("CountRecall-Hard")],
        1,
    ))
    .unwrap();
    let expected: Vec<FpsRow> = results.iter().map(|r| r.row.clone()).collect();
    let dir = tempfile::tempdir().unwrap();
    let mut parsed: Vec<Vec<FpsRow>> = Vec::new();
    for format in [OutputFormat::Csv, OutputFormat::Json] {
        let path = dir.path().join(format!("fps.{format}"));
        write_fps_rows(&expected, &path, format).unwrap();
        parsed.push(read_fps_rows(&path, format).unwrap());
    }
    assert_eq!(parsed[0], expected);
    assert_eq!(parsed[1], expected);
}

#[test]
fn json_output_from_the_binary_parses() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fps.json");
    let status = bench(&[
        "fps",
        "--envs",
        "Autoencode",
        "--difficulty",
        "all",
        "--steps",
        "3000",
        "--warmup",
        "10",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(status.status.success());
    let rows = read_fps_rows(&out, OutputFormat::Json).unwrap();
    let names: Vec<(&str, &str)> = rows
        .iter()
        .map(|r| (r.env.as_str(), r.difficulty.as_str()))
        .collect();
    assert_eq!(
        names,
        [
            ("Autoencode", "Easy"),
            ("Autoencode", "Medium"),
            ("Autoencode", "Hard")
        ]
    );
    assert!(rows
        .iter()
        .all(|r| r.steps_per_sec_single > 0.0 && r.workers == 1));
}

#[test]
fn workload_is_identical_across_runs() {
    let config = small_config(vec![id("LabyrinthEscape-Easy")], 3);
    let a = bench_env(config.envs[0], &config).unwrap();
    let b = bench_env(config.envs[0], &config).unwrap();
    assert_eq!(a.workload, b.workload);
    // single phase plus three concurrent workers
    assert_eq!(a.workload.steps, 4 * config.num_steps);
    assert!(a.workload.resets > 4);
}

#[test]
fn two_workers_keep_at_least_half_the_single_rate() {
    if std::thread::available_parallelism().map_or(1, |n| n.get()) < 2 {
        eprintln!("skipped: a single hardware thread cannot run two workers at once");
        return;
    }
    let config = BenchConfig {
        num_steps: 400_000,
        warmup_steps: 10_000,
        ..small_config(vec![id("RepeatFirst-Easy")], 2)
    };
    // Other tests share the machine, so allow a couple of retries.
    let mut ratios = Vec::new();
    for _ in 0..3 {
        let row = bench_env(config.envs[0], &config).unwrap().row;
        let ratio = row.steps_per_sec_total / row.steps_per_sec_single;
        if ratio >= 0.5 {
            return;
        }
        ratios.push(ratio);
    }
    panic!("aggregate / single ratios {ratios:?}");
}

fn exit_code(args: &[&str]) -> Option<i32> {
    bench(args).status.code()
}

#[test]
fn configuration_errors_exit_with_two() {
    assert_eq!(exit_code(&["fps", "--envs", "NotAnEnv"]), Some(2));
    assert_eq!(
        exit_code(&["fps", "--envs", "RepeatFirst", "--difficulty", "x"]),
        Some(2)
    );
    assert_eq!(
        exit_code(&[
            "fps",
            "--envs",
            "RepeatFirst",
            "--steps",
            "10",
            "--warmup",
            "10"
        ]),
        Some(2)
    );
    assert_eq!(
        exit_code(&["fps", "--envs", "RepeatFirst", "--workers", "0"]),
        Some(2)
    );
    assert_eq!(
        exit_code(&["eval", "--envs", "RepeatFirst", "--agents", "nobody"]),
        Some(2)
    );
    assert_eq!(
        exit_code(&[
            "eval",
            "--envs",
            "StatelessPendulum",
            "--difficulty",
            "e",
            "--agents",
            "oracle"
        ]),
        Some(2)
    );
    assert_eq!(
        exit_code(&["eval", "--envs", "RepeatFirst", "--episodes", "0"]),
        Some(2)
    );
}

#[test]
fn env_failures_exit_with_three_and_io_with_one() {
    let invalid = BenchError::Env(EnvError::ActionOutOfRange {
        action: "Discrete(9)".into(),
        space: "Discrete(4)".into(),
    });
    assert_eq!(invalid.exit_code(), 3);
    assert_eq!(BenchError::Env(EnvError::EpisodeOver).exit_code(), 3);
    assert_eq!(
        BenchError::Env(EnvError::UnknownEnvId("x".into())).exit_code(),
        2
    );

    let missing = Path::new("/nonexistent-dir/for/bench/out.csv");
    let code = exit_code(&[
        "fps",
        "--envs",
        "RepeatFirst",
        "--difficulty",
        "e",
        "--steps",
        "200",
        "--warmup",
        "10",
        "--out",
        missing.to_str().unwrap(),
    ]);
    assert_eq!(code, Some(1));
}

#[test]
fn eval_oracle_on_repeat_first_scores_one() {
    let reports = bench_eval(&[id("RepeatFirst-Easy")], &[AgentKind::Oracle], 100, 0).unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0].mean_return, 1.0);
    assert_eq!(reports[0].min_return, 1.0);
    assert_eq!(reports[0].agent, "oracle");
}

#[test]
fn eval_wall_follower_reports_full_coverage() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("eval.jsonl");
    let status = bench(&[
        "eval",
        "--envs",
        "LabyrinthExplore",
        "--difficulty",
        "e",
        "--agents",
        "wall_follower",
        "--episodes",
        "50",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(
        status.status.success(),
        "{}",
        String::from_utf8_lossy(&status.stderr)
    );
    let reports = read_eval_reports(&out).unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0].info.get("coverage"), Some(&1.0));
    assert_eq!(reports[0].episodes, 50);
}

#[test]
fn eval_random_bandit_matches_analytic_mean() {
    // Payout probabilities are uniform on (0, 1), so a random pull has
    // expected reward E[2p - 1] = 0 and the expected return is zero.
    let report = bench_eval(
        &[id("MultiarmedBandit-Easy")],
        &[AgentKind::Random],
        10_000,
        0,
    )
    .unwrap()
    .remove(0);
    assert!(report.std_error > 0.0);
    assert!(
        report.mean_return.abs() < 3.0 * report.std_error,
        "mean {} se {}",
        report.mean_return,
        report.std_error
    );
}

#[test]
fn eval_writes_one_json_line_per_pair() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("eval.jsonl");
    let status = bench(&[
        "eval",
        "--envs",
        "RepeatFirst,CountRecall",
        "--difficulty",
        "all",
        "--agents",
        "random,oracle",
        "--episodes",
        "5",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(status.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 12);
}

#[test]
fn digest_depends_on_seed_only() {
    let run = |seed: &str| {
        let out = bench(&[
            "digest",
            "--envs",
            "Concentration,MineSweeper",
            "--episodes",
            "20",
            "--seed",
            seed,
        ]);
        assert!(out.status.success());
        String::from_utf8(out.stdout).unwrap()
    };
    let a = run("3");
    assert_eq!(a, run("3"));
    assert_ne!(a, run("4"));
    assert_eq!(a.trim().len(), 64);
}
