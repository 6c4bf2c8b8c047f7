/// Harness-level failures: bad specs, bad CLI input, or anything bubbling
/// up from the core.
#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error(transparent)]
    Core(#[from] a1kit_core::Error),

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("unknown campaign {0:?}; expected thm1, thm2, sharpness, majorization, cover, or divergence")]
    UnknownCampaign(String),

    #[error("unknown generator kind {0:?}; expected uniform, power-discretized, shuffled-power, or multiplicative-walk")]
    UnknownKind(String),

    #[error("unknown format {0:?}; expected csv or json")]
    UnknownFormat(String),

    #[error("invalid campaign config: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, HarnessError>;
