use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] hodiff_core::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for malformed or out-of-domain input, 1 for anything that went
    /// wrong while running a valid request.
    pub fn exit_code(&self) -> i32 {
        use hodiff_core::Error as E;
        match self {
            CliError::Invalid(_) => 2,
            CliError::Core(
                E::InvalidType { .. }
                | E::InvalidWeight(_)
                | E::NotDominant(_)
                | E::NotSmall(_)
                | E::InvalidMultiplicities(_)
                | E::ParseRational(_)
                | E::PoleAtSpectralPoint(_),
            ) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
