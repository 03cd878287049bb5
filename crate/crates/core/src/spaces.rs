use std::fmt;

use serde::{Deserialize, Serialize};

/// Declared shape and bounds of an observation or action space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SpaceDescriptor {
    Discrete { n: usize },
    MultiDiscrete { ns: Vec<usize> },
    Box { low: Vec<f32>, high: Vec<f32> },
}

impl SpaceDescriptor {
    pub fn discrete(n: usize) -> Self {
        debug_assert!(n >= 2);
        SpaceDescriptor::Discrete { n }
    }

    pub fn boxed(low: Vec<f32>, high: Vec<f32>) -> Self {
        debug_assert_eq!(low.len(), high.len());
        SpaceDescriptor::Box { low, high }
    }

    /// Length of the flattened vector encoding.
    pub fn flat_dim(&self) -> usize {
        match self {
            SpaceDescriptor::Discrete { n } => *n,
            SpaceDescriptor::MultiDiscrete { ns } => ns.iter().sum(),
            SpaceDescriptor::Box { low, .. } => low.len(),
        }
    }

    /// Checks the structural invariants: cardinalities at least two and
    /// `low < high` in every dimension.
    pub fn is_well_formed(&self) -> bool {
        match self {
            SpaceDescriptor::Discrete { n } => *n >= 2,
            SpaceDescriptor::MultiDiscrete { ns } => !ns.is_empty() && ns.iter().all(|&n| n >= 2),
            SpaceDescriptor::Box { low, high } => {
                !low.is_empty()
                    && low.len() == high.len()
                    && low.iter().zip(high).all(|(l, h)| l < h)
            }
        }
    }

    /// True when `values` has the flat dimension and sits inside the bounds.
    /// Only meaningful for `Box` spaces.
    pub fn contains(&self, values: &[f32]) -> bool {
        match self {
            SpaceDescriptor::Box { low, high } => {
                values.len() == low.len()
                    && values
                        .iter()
                        .zip(low.iter().zip(high))
                        .all(|(v, (l, h))| *v >= *l && *v <= *h)
            }
            _ => false,
        }
    }
}

impl fmt::Display for SpaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceDescriptor::Discrete { n } => write!(f, "Discrete({n})"),
            SpaceDescriptor::MultiDiscrete { ns } => write!(f, "MultiDiscrete({ns:?})"),
            SpaceDescriptor::Box { low, .. } => write!(f, "Box(dims={})", low.len()),
        }
    }
}
