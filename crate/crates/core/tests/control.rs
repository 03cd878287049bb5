mod common;

use common::{mean_se, play};
use popgym::agents::{Agent, ConstantAgent, RandomAgent};
use popgym::envs::control::{
    noise_sigma, CartpoleState, PendulumState, StatelessCartpole, StatelessPendulum,
};
use popgym::{
    make, Action, Difficulty, Env, EnvId, EnvKind, Episode, EpisodeSeed, SpaceDescriptor,
};

/// Cart-pole dynamics written out independently from the textbook form.
fn reference_cartpole(s: [f64; 4], action: usize) -> [f64; 4] {
    let (g, mc, mp, l, tau) = (9.8, 1.0, 0.1, 0.5, 0.02);
    let f = if action == 1 { 10.0 } else { -10.0 };
    let [x, xd, th, thd] = s;
    let m = mc + mp;
    let num = g * th.sin() + th.cos() * ((-f - mp * l * thd * thd * th.sin()) / m);
    let thdd = num / (l * (4.0 / 3.0 - mp * th.cos().powi(2) / m));
    let xdd = (f + mp * l * (thd * thd * th.sin() - thdd * th.cos())) / m;
    [
        x + tau * xd,
        xd + tau * xdd,
        th + tau * thd,
        thd + tau * thdd,
    ]
}

#[test]
fn cartpole_euler_step_matches_reference() {
    let mut env = Episode::new(StatelessCartpole::new(Difficulty::Easy, false));
    let mut agent = RandomAgent::new(SpaceDescriptor::discrete(2));
    for seed in 0..20 {
        env.reset(EpisodeSeed(seed));
        agent.reset(EpisodeSeed(seed));
        loop {
            let before = env.task().state();
            let action = agent.act(env.observation());
            let r = env.step(&action).unwrap();
            let after = env.task().state();
            let expect = reference_cartpole(
                [before.x, before.x_dot, before.theta, before.theta_dot],
                action.as_discrete().unwrap(),
            );
            let got = [after.x, after.x_dot, after.theta, after.theta_dot];
            for i in 0..4 {
                assert!((expect[i] - got[i]).abs() < 1e-12, "{expect:?} vs {got:?}");
            }
            assert!((r.obs[0] as f64 - after.x_dot).abs() < 1e-6);
            assert!((r.obs[1] as f64 - after.theta_dot).abs() < 1e-6);
            if r.terminated || r.truncated {
                assert_eq!(r.terminated, after.failed());
                break;
            }
        }
    }
}

#[test]
fn cartpole_initial_state_is_small() {
    let mut env = Episode::new(StatelessCartpole::new(Difficulty::Hard, false));
    for seed in 0..200 {
        env.reset(EpisodeSeed(seed));
        let s = env.task().state();
        for v in [s.x, s.x_dot, s.theta, s.theta_dot] {
            assert!(v.abs() <= 0.05);
        }
    }
}

#[test]
fn cartpole_balanced_by_full_state_controller_returns_one() {
    for d in Difficulty::ALL {
        let mut env = Episode::new(StatelessCartpole::new(d, false));
        for seed in 0..20 {
            env.reset(EpisodeSeed(seed));
            let mut total = 0.0;
            loop {
                let CartpoleState {
                    x,
                    x_dot,
                    theta,
                    theta_dot,
                } = env.task().state();
                let push = theta + 0.5 * theta_dot + 0.01 * x + 0.1 * x_dot > 0.0;
                let r = env.step(&Action::Discrete(push as usize)).unwrap();
                total += r.reward;
                if r.terminated || r.truncated {
                    assert!(r.truncated && !r.terminated, "{d} seed {seed} fell");
                    break;
                }
            }
            assert!((total - 1.0).abs() < 1e-9, "{total}");
        }
    }
}

#[test]
fn cartpole_constant_push_falls_quickly() {
    let mut env = make(EnvId::new(EnvKind::StatelessCartpole, Difficulty::Medium));
    let mut agent = ConstantAgent::new(env.action_space());
    for seed in 0..20 {
        let trace = play(env.as_mut(), &mut agent, seed);
        assert!(trace.terminated);
        assert!(trace.steps() < 50);
        assert_eq!(*trace.rewards.last().unwrap(), 0.0);
        let expect = (trace.steps() - 1) as f64 / 400.0;
        assert!((trace.total() - expect).abs() < 1e-9);
    }
}

#[test]
fn pendulum_upright_with_zero_torque_returns_one() {
    for d in Difficulty::ALL {
        let mut env = Episode::new(StatelessPendulum::new(d, false));
        env.reset(EpisodeSeed(1));
        env.task_mut().set_state(PendulumState::default());
        let mut total = 0.0;
        loop {
            let r = env.step(&Action::Continuous(vec![0.0])).unwrap();
            total += r.reward;
            assert_eq!(r.obs[0], 0.0);
            if r.truncated {
                break;
            }
            assert!(!r.terminated);
        }
        assert!((total - 1.0).abs() < 1e-9);
        assert_eq!(env.elapsed_steps(), d.pick([100, 150, 200]));
    }
}

#[test]
fn pendulum_rewards_stay_in_band() {
    let mut env = make(EnvId::new(EnvKind::StatelessPendulum, Difficulty::Easy));
    let mut agent = RandomAgent::new(env.action_space().clone());
    for seed in 0..100 {
        let trace = play(env.as_mut(), &mut agent, seed);
        assert!(trace.truncated);
        assert!(trace
            .rewards
            .iter()
            .all(|r| (0.0..=0.01 + 1e-12).contains(r)));
    }
}

#[test]
fn pendulum_rejects_out_of_range_torque() {
    let mut env = make(EnvId::new(EnvKind::StatelessPendulum, Difficulty::Easy));
    env.reset(EpisodeSeed(0));
    assert!(env.step(&Action::Continuous(vec![1.5])).is_err());
    assert!(env.step(&Action::Continuous(vec![0.0, 0.0])).is_err());
    assert!(env.step(&Action::Discrete(0)).is_err());
    assert!(env.step(&Action::Continuous(vec![-1.0])).is_ok());
}

/// Plays the same seed and action sequence through the clean and noisy
/// variant and collects the observation differences, which isolate noise.
fn noise_residuals(
    kind: EnvKind,
    clean_kind: EnvKind,
    d: Difficulty,
    episodes: u64,
) -> (Vec<f64>, Vec<f64>) {
    let mut clean = make(EnvId::new(clean_kind, d));
    let mut noisy = make(EnvId::new(kind, d));
    let mut agent = RandomAgent::new(clean.action_space().clone());
    let action_dims = clean.action_space().flat_dim();
    let mut all = Vec::new();
    let mut first = Vec::new();
    for seed in 0..episodes {
        let seed = EpisodeSeed(seed);
        clean.reset(seed);
        noisy.reset(seed);
        agent.reset(seed);
        for t in 0..20 {
            let action = agent.act(clean.observation());
            let a = clean.step(&action).unwrap();
            let b = noisy.step(&action).unwrap();
            assert_eq!(a.reward, b.reward);
            // the trailing previous-action slots are noise free
            let physical = a.obs.len() - action_dims;
            for i in 0..physical {
                let diff = b.obs[i] as f64 - a.obs[i] as f64;
                all.push(diff);
                if t == 0 && i == 0 {
                    first.push(diff);
                }
            }
            if a.terminated || a.truncated {
                break;
            }
        }
    }
    (all, first)
}

#[test]
fn noise_has_declared_sigma_and_zero_mean() {
    let pairs = [
        (EnvKind::NoisyStatelessCartpole, EnvKind::StatelessCartpole),
        (EnvKind::NoisyStatelessPendulum, EnvKind::StatelessPendulum),
    ];
    for (noisy, clean) in pairs {
        for d in Difficulty::ALL {
            let sigma = noise_sigma(d);
            let (all, first) = noise_residuals(noisy, clean, d, 10_000);
            let (_, se) = mean_se(&all);
            let sd = se * (all.len() as f64).sqrt();
            assert!((sd / sigma - 1.0).abs() < 0.02, "{noisy} {d}: sd {sd}");
            let (m, _) = mean_se(&first);
            assert!(
                m.abs() < 3.0 * sigma / (first.len() as f64).sqrt(),
                "{noisy} {d}: mean {m}"
            );
        }
    }
}

#[test]
fn clean_variants_have_no_noise() {
    let mut env = make(EnvId::new(EnvKind::StatelessPendulum, Difficulty::Hard));
    let a = env.reset(EpisodeSeed(4));
    let b = env.reset(EpisodeSeed(4));
    assert_eq!(a, b);
    let mut task = StatelessPendulum::new(Difficulty::Hard, false);
    assert_eq!(popgym::Task::kind(&task), EnvKind::StatelessPendulum);
    assert_eq!(task.sigma(), 0.0);
    task = StatelessPendulum::new(Difficulty::Hard, true);
    assert_eq!(task.sigma(), 0.3);
}
