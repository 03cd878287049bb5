//! Environment identifiers and construction by name.
//!
//! Ids have the form `popgym-<Name>-<Difficulty>`, e.g.
//! `popgym-RepeatPrevious-Hard`. Parsing also accepts the id without the
//! `popgym-` prefix.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::env::{Difficulty, Env, Episode};
use crate::envs::control::{StatelessCartpole, StatelessPendulum};
use crate::envs::diagnostic::{Autoencode, RepeatFirst, RepeatPrevious};
use crate::envs::games::{
    Battleship, Concentration, CountRecall, HigherLower, MineSweeper, MultiarmedBandit,
};
use crate::envs::nav::{LabyrinthEscape, LabyrinthExplore};
use crate::error::EnvError;

pub const ID_PREFIX: &str = "popgym-";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EnvKind {
    RepeatFirst,
    RepeatPrevious,
    Autoencode,
    StatelessCartpole,
    StatelessPendulum,
    NoisyStatelessCartpole,
    NoisyStatelessPendulum,
    MultiarmedBandit,
    HigherLower,
    CountRecall,
    Concentration,
    Battleship,
    MineSweeper,
    LabyrinthExplore,
    LabyrinthEscape,
}

impl EnvKind {
    pub const ALL: [EnvKind; 15] = [
        EnvKind::RepeatFirst,
        EnvKind::RepeatPrevious,
        EnvKind::Autoencode,
        EnvKind::StatelessCartpole,
        EnvKind::StatelessPendulum,
        EnvKind::NoisyStatelessCartpole,
        EnvKind::NoisyStatelessPendulum,
        EnvKind::MultiarmedBandit,
        EnvKind::HigherLower,
        EnvKind::CountRecall,
        EnvKind::Concentration,
        EnvKind::Battleship,
        EnvKind::MineSweeper,
        EnvKind::LabyrinthExplore,
        EnvKind::LabyrinthEscape,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EnvKind::RepeatFirst => "RepeatFirst",
            EnvKind::RepeatPrevious => "RepeatPrevious",
            EnvKind::Autoencode => "Autoencode",
            EnvKind::StatelessCartpole => "StatelessCartpole",
            EnvKind::StatelessPendulum => "StatelessPendulum",
            EnvKind::NoisyStatelessCartpole => "NoisyStatelessCartpole",
            EnvKind::NoisyStatelessPendulum => "NoisyStatelessPendulum",
            EnvKind::MultiarmedBandit => "MultiarmedBandit",
            EnvKind::HigherLower => "HigherLower",
            EnvKind::CountRecall => "CountRecall",
            EnvKind::Concentration => "Concentration",
            EnvKind::Battleship => "Battleship",
            EnvKind::MineSweeper => "MineSweeper",
            EnvKind::LabyrinthExplore => "LabyrinthExplore",
            EnvKind::LabyrinthEscape => "LabyrinthEscape",
        }
    }

    /// Diagnostic-tagged environments.
    pub fn is_diagnostic(self) -> bool {
        matches!(
            self,
            EnvKind::RepeatFirst | EnvKind::RepeatPrevious | EnvKind::Autoencode
        )
    }

    pub fn is_navigation(self) -> bool {
        matches!(self, EnvKind::LabyrinthExplore | EnvKind::LabyrinthEscape)
    }
}

impl fmt::Display for EnvKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EnvKind {
    type Err = EnvError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bare = s.strip_prefix(ID_PREFIX).unwrap_or(s);
        EnvKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(bare))
            .ok_or_else(|| EnvError::UnknownEnvId(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EnvId {
    pub kind: EnvKind,
    pub difficulty: Difficulty,
}

impl EnvId {
    pub fn new(kind: EnvKind, difficulty: Difficulty) -> Self {
        EnvId { kind, difficulty }
    }

    /// `<Name>-<Difficulty>` without the registry prefix.
    pub fn short(&self) -> String {
        format!("{}-{}", self.kind, self.difficulty)
    }
}

impl fmt::Display for EnvId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{ID_PREFIX}{}-{}", self.kind, self.difficulty)
    }
}

impl FromStr for EnvId {
    type Err = EnvError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || EnvError::UnknownEnvId(s.to_string());
        let bare = s.strip_prefix(ID_PREFIX).unwrap_or(s);
        let (name, level) = bare.rsplit_once('-').ok_or_else(unknown)?;
        let kind = name.parse::<EnvKind>().map_err(|_| unknown())?;
        let difficulty = level.parse::<Difficulty>().map_err(|_| unknown())?;
        Ok(EnvId::new(kind, difficulty))
    }
}

/// All 45 `(env, difficulty)` ids in registry order.
pub fn all_env_ids() -> Vec<EnvId> {
    EnvKind::ALL
        .into_iter()
        .flat_map(|k| Difficulty::ALL.into_iter().map(move |d| EnvId::new(k, d)))
        .collect()
}

/// Builds a boxed environment for `id`. The env must be reset before use.
pub fn make(id: EnvId) -> Box<dyn Env> {
    let d = id.difficulty;
    match id.kind {
        EnvKind::RepeatFirst => Box::new(Episode::new(RepeatFirst::new(d))),
        EnvKind::RepeatPrevious => Box::new(Episode::new(RepeatPrevious::new(d))),
        EnvKind::Autoencode => Box::new(Episode::new(Autoencode::new(d))),
        EnvKind::StatelessCartpole => Box::new(Episode::new(StatelessCartpole::new(d, false))),
        EnvKind::NoisyStatelessCartpole => Box::new(Episode::new(StatelessCartpole::new(d, true))),
        EnvKind::StatelessPendulum => Box::new(Episode::new(StatelessPendulum::new(d, false))),
        EnvKind::NoisyStatelessPendulum => Box::new(Episode::new(StatelessPendulum::new(d, true))),
        EnvKind::MultiarmedBandit => Box::new(Episode::new(MultiarmedBandit::new(d))),
        EnvKind::HigherLower => Box::new(Episode::new(HigherLower::new(d))),
        EnvKind::CountRecall => Box::new(Episode::new(CountRecall::new(d))),
        EnvKind::Concentration => Box::new(Episode::new(Concentration::new(d))),
        EnvKind::Battleship => Box::new(Episode::new(Battleship::new(d))),
        EnvKind::MineSweeper => Box::new(Episode::new(MineSweeper::new(d))),
        EnvKind::LabyrinthExplore => Box::new(Episode::new(LabyrinthExplore::new(d))),
        EnvKind::LabyrinthEscape => Box::new(Episode::new(LabyrinthEscape::new(d))),
    }
}

/// Parses an id string and builds the environment.
pub fn make_by_name(id: &str) -> Result<Box<dyn Env>, EnvError> {
    Ok(make(id.parse()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forty_five_ids() {
        let ids = all_env_ids();
        assert_eq!(ids.len(), 45);
        let mut names: Vec<String> = ids.iter().map(|i| i.to_string()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), 45);
    }

    #[test]
    fn id_format_and_parse() {
        let id = EnvId::new(EnvKind::RepeatPrevious, Difficulty::Hard);
        assert_eq!(id.to_string(), "popgym-RepeatPrevious-Hard");
        assert_eq!("popgym-RepeatPrevious-Hard".parse::<EnvId>().unwrap(), id);
        assert_eq!("RepeatPrevious-Hard".parse::<EnvId>().unwrap(), id);
        assert!("popgym-Nope-Easy".parse::<EnvId>().is_err());
        assert!("popgym-RepeatFirst-Extreme".parse::<EnvId>().is_err());
        assert!("RepeatFirst".parse::<EnvId>().is_err());
    }

    #[test]
    fn every_id_builds_with_matching_id() {
        for id in all_env_ids() {
            assert_eq!(make(id).id(), id);
        }
    }
}
