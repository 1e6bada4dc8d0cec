use cellcollapse::Error;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    /// 1 for a negative answer, 2 when a budget ran out, 3 for bad input.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e {
                Error::ProvedImpossible | Error::ProvedEvasive | Error::VerificationFailed(_) => 1,
                Error::BudgetExceeded(_)
                | Error::RecursionBudgetExceeded
                | Error::RetryBudgetExceeded(_)
                | Error::GenericityFailure(_)
                | Error::RealizationSearchFailed(_) => 2,
                _ => 3,
            },
            _ => 3,
        }
    }

    /// Short machine-readable name.
    pub fn kind(&self) -> String {
        match self {
            CliError::Core(e) => {
                let s = format!("{e:?}");
                s.split('(').next().unwrap_or_default().to_string()
            }
            CliError::Input(_) => "InputError".into(),
            CliError::Io { .. } => "IoError".into(),
            CliError::Json(_) => "JsonError".into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
