#![allow(dead_code)]

use popgym::agents::Agent;
use popgym::{Action, Env, EpisodeSeed, ExactSum};

#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub observations: Vec<Vec<f32>>,
    pub rewards: Vec<f64>,
    pub terminated: bool,
    pub truncated: bool,
}

impl Trace {
    pub fn total(&self) -> f64 {
        self.rewards.iter().copied().collect::<ExactSum>().value()
    }

    pub fn steps(&self) -> usize {
        self.rewards.len()
    }
}

pub fn play(env: &mut dyn Env, agent: &mut dyn Agent, seed: u64) -> Trace {
    let seed = EpisodeSeed(seed);
    let obs = env.reset(seed);
    agent.reset(seed);
    agent.inspect(env);
    let mut trace = Trace {
        observations: vec![obs.0],
        rewards: Vec::new(),
        terminated: false,
        truncated: false,
    };
    loop {
        let action = agent.act(env.observation());
        let r = env.step(&action).expect("valid action");
        trace.observations.push(r.obs.0);
        trace.rewards.push(r.reward);
        if r.terminated || r.truncated {
            trace.terminated = r.terminated;
            trace.truncated = r.truncated;
            return trace;
        }
    }
}

/// Plays a fixed action list (stopping early if the episode ends).
pub fn play_actions(env: &mut dyn Env, seed: u64, actions: &[Action]) -> Trace {
    let obs = env.reset(EpisodeSeed(seed));
    let mut trace = Trace {
        observations: vec![obs.0],
        rewards: Vec::new(),
        terminated: false,
        truncated: false,
    };
    for a in actions {
        let r = env.step(a).expect("valid action");
        trace.observations.push(r.obs.0);
        trace.rewards.push(r.reward);
        if r.terminated || r.truncated {
            trace.terminated = r.terminated;
            trace.truncated = r.truncated;
            break;
        }
    }
    trace
}

/// Mean and standard error of a sample.
pub fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

pub fn argmax(v: &[f32]) -> usize {
    let mut best = 0;
    for i in 0..v.len() {
        if v[i] > v[best] {
            best = i;
        }
    }
    best
}
