use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EnvError {
    #[error("action {action} is outside the action space {space}")]
    ActionOutOfRange { action: String, space: String },
    #[error("episode is over; call reset before stepping again")]
    EpisodeOver,
    #[error("unknown environment id `{0}`")]
    UnknownEnvId(String),
    #[error("invalid maze dimensions {width}x{height}: both must be odd and at least 5")]
    InvalidDimensions { width: usize, height: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
