use sofic_core::groupring::GroupRingError;
use sofic_core::sofic::SoficError;
use sofic_core::{DigraphError, GroupError, InstanceError, TransferError, WeissError};
use thiserror::Error;

/// Every failure the CLI reports, grouped by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Check(String),
    #[error("{0}")]
    Parse(String),
    #[error("resource limit: {0}")]
    Limit(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Check(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Limit(_) => 3,
            CliError::Internal(_) => 4,
        }
    }

    pub fn io(path: &std::path::Path, e: std::io::Error) -> Self {
        CliError::Parse(format!("{}: {e}", path.display()))
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::BallTooLarge { .. } => CliError::Limit(e.to_string()),
            _ => CliError::Parse(e.to_string()),
        }
    }
}

impl From<DigraphError> for CliError {
    fn from(e: DigraphError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<InstanceError> for CliError {
    fn from(e: InstanceError) -> Self {
        match e {
            InstanceError::Group(g) => g.into(),
            InstanceError::GroupRing(g) => g.into(),
            other => CliError::Parse(other.to_string()),
        }
    }
}

impl From<GroupRingError> for CliError {
    fn from(e: GroupRingError) -> Self {
        match e {
            GroupRingError::Group(g) => g.into(),
            GroupRingError::CodomainTooSmall { .. } => CliError::Internal(e.to_string()),
            other => CliError::Parse(other.to_string()),
        }
    }
}

impl From<SoficError> for CliError {
    fn from(e: SoficError) -> Self {
        match e {
            SoficError::Group(g) => g.into(),
            SoficError::Digraph(d) => d.into(),
            SoficError::TooManyVertices { .. } => CliError::Limit(e.to_string()),
            SoficError::TorusTooSmall { .. }
            | SoficError::WrongGroupKind(_)
            | SoficError::AlphabetMismatch { .. }
            | SoficError::EpsilonOutOfRange(_) => CliError::Parse(e.to_string()),
            SoficError::CardinalityViolation { .. } | SoficError::BallMismatch { .. } => {
                CliError::Check(e.to_string())
            }
        }
    }
}

impl From<WeissError> for CliError {
    fn from(e: WeissError) -> Self {
        match e {
            WeissError::Digraph(d) => d.into(),
            WeissError::InternalInconsistency(_) => CliError::Internal(e.to_string()),
            WeissError::WrongBallRadius { .. } => CliError::Internal(e.to_string()),
            WeissError::PreconditionDensity { .. } | WeissError::BallMismatch(_) => {
                CliError::Check(e.to_string())
            }
        }
    }
}

impl From<TransferError> for CliError {
    fn from(e: TransferError) -> Self {
        match e {
            TransferError::GroupRing(g) => g.into(),
            TransferError::Group(g) => g.into(),
            TransferError::Sofic(s) => s.into(),
            TransferError::Weiss(w) => w.into(),
            TransferError::Digraph(d) => d.into(),
            TransferError::InternalInconsistency(_) => CliError::Internal(e.to_string()),
            TransferError::GroupMismatch => CliError::Parse(e.to_string()),
            TransferError::ApproximationTooCoarse { .. }
            | TransferError::ApproximationTooSparse { .. }
            | TransferError::KernelNotFound { .. }
            | TransferError::MissingPsi
            | TransferError::PreconditionFailed(_) => CliError::Check(e.to_string()),
        }
    }
}
