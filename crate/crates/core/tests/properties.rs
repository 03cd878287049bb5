mod common;

use common::play;
use popgym::agents::{sample_action, Agent, RandomAgent};
use popgym::spaces::SpaceDescriptor;
use popgym::{all_env_ids, make, make_by_name, Action, EnvError, EpisodeSeed, ExactSum};
use proptest::prelude::*;

#[test]
fn spaces_are_well_formed_and_round_trip() {
    for id in all_env_ids() {
        let env = make(id);
        for space in [env.observation_space(), env.action_space()] {
            assert!(space.is_well_formed(), "{id}: {space}");
            let json = serde_json::to_string(space).unwrap();
            let back: SpaceDescriptor = serde_json::from_str(&json).unwrap();
            assert_eq!(&back, space);
        }
        assert!(matches!(
            env.observation_space(),
            SpaceDescriptor::Box { .. }
        ));
        assert!(env.max_steps() <= popgym::GLOBAL_MAX_STEPS);
    }
}

#[test]
fn ids_round_trip_through_make_by_name() {
    for id in all_env_ids() {
        let env = make_by_name(&id.to_string()).unwrap();
        assert_eq!(env.id(), id);
        assert_eq!(make_by_name(&id.short()).unwrap().id(), id);
    }
    assert!(matches!(
        make_by_name("popgym-Tetris-Easy"),
        Err(EnvError::UnknownEnvId(_))
    ));
}

#[test]
fn overcompleteness_holds_everywhere() {
    for id in all_env_ids() {
        let env = make(id);
        assert!(
            env.overcompleteness().holds(),
            "{id}: {:?}",
            env.overcompleteness()
        );
    }
}

#[test]
fn step_before_reset_is_rejected() {
    for id in all_env_ids() {
        let mut env = make(id);
        let action = sample_action(env.action_space(), &mut popgym::rng::Pcg32::new(0, 0));
        assert_eq!(env.step(&action).unwrap_err(), EnvError::EpisodeOver);
    }
}

#[test]
fn step_after_done_is_rejected_until_reset() {
    for id in all_env_ids() {
        let mut env = make(id);
        let mut agent = RandomAgent::new(env.action_space().clone());
        play(env.as_mut(), &mut agent, 1);
        assert!(env.is_done());
        let action = agent.act(env.observation());
        assert_eq!(env.step(&action).unwrap_err(), EnvError::EpisodeOver);
        env.reset(EpisodeSeed(2));
        assert!(env.step(&action).is_ok());
    }
}

#[test]
fn invalid_actions_do_not_advance_time() {
    for id in all_env_ids() {
        let mut env = make(id);
        env.reset(EpisodeSeed(0));
        let bad = match env.action_space() {
            SpaceDescriptor::Discrete { n } => Action::Discrete(*n),
            SpaceDescriptor::Box { high, .. } => {
                Action::Continuous(high.iter().map(|h| *h as f64 + 1.0).collect())
            }
            other => panic!("unexpected action space {other}"),
        };
        let before = env.observation().to_vec();
        assert!(matches!(
            env.step(&bad),
            Err(EnvError::ActionOutOfRange { .. })
        ));
        assert_eq!(env.elapsed_steps(), 0);
        assert_eq!(env.observation(), &before[..]);
    }
}

#[test]
fn reset_zeroes_previous_action_suffix() {
    for id in all_env_ids() {
        let mut env = make(id);
        let mut agent = RandomAgent::new(env.action_space().clone());
        play(env.as_mut(), &mut agent, 3);
        let obs = env.reset(EpisodeSeed(4));
        let k = env.action_space().flat_dim();
        assert!(obs[obs.len() - k..].iter().all(|v| *v == 0.0), "{id}");
    }
}

#[test]
fn observations_stay_in_bounds_with_constant_shape() {
    for id in all_env_ids() {
        let mut env = make(id);
        let mut agent = RandomAgent::new(env.action_space().clone());
        let space = env.observation_space().clone();
        for seed in 0..20 {
            let trace = play(env.as_mut(), &mut agent, seed);
            for obs in &trace.observations {
                assert!(space.contains(obs), "{id} seed {seed}: {obs:?}");
            }
        }
    }
}

#[test]
fn episodes_end_within_cap_and_truncation_only_at_cap() {
    for id in all_env_ids() {
        let mut env = make(id);
        let mut agent = RandomAgent::new(env.action_space().clone());
        for seed in 0..20 {
            let trace = play(env.as_mut(), &mut agent, seed);
            assert!(trace.steps() <= env.max_steps() as usize);
            assert!(!(trace.terminated && trace.truncated));
            if trace.truncated {
                assert_eq!(trace.steps(), env.max_steps() as usize, "{id}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn replay_is_bit_exact(index in 0usize..45, seed in any::<u64>()) {
        let id = all_env_ids()[index];
        let mut env = make(id);
        let mut agent = RandomAgent::new(env.action_space().clone());
        let a = play(env.as_mut(), &mut agent, seed);
        let mut fresh = make(id);
        let b = play(fresh.as_mut(), &mut agent, seed);
        prop_assert_eq!(a.rewards.iter().map(|r| r.to_bits()).collect::<Vec<_>>(),
                        b.rewards.iter().map(|r| r.to_bits()).collect::<Vec<_>>());
        let bits = |t: &common::Trace| t.observations.iter().flatten().map(|v| v.to_bits()).collect::<Vec<_>>();
        prop_assert_eq!(bits(&a), bits(&b));
        prop_assert_eq!((a.terminated, a.truncated), (b.terminated, b.truncated));
    }

    #[test]
    fn running_return_stays_in_unit_band(index in 0usize..45, seed in any::<u64>()) {
        let id = all_env_ids()[index];
        let mut env = make(id);
        let mut agent = RandomAgent::new(env.action_space().clone());
        let trace = play(env.as_mut(), &mut agent, seed);
        let mut total = ExactSum::new();
        for r in &trace.rewards {
            total.add(*r);
            let v = total.value();
            prop_assert!((-1.0..=1.0).contains(&v), "{} seed {}: {}", id, seed, v);
        }
    }

    #[test]
    fn different_seeds_usually_differ(index in 0usize..45, seed in 0u64..1_000_000) {
        let id = all_env_ids()[index];
        let mut env = make(id);
        let mut agent = RandomAgent::new(env.action_space().clone());
        let a = play(env.as_mut(), &mut agent, seed);
        let b = play(env.as_mut(), &mut agent, seed + 1);
        prop_assert!(a != b, "{} seeds {} and {} replayed identically", id, seed, seed + 1);
    }
}
