use fredholm_core::exactnum::ExactError;
use fredholm_core::multiplicity::MultiplicityError;
use fredholm_core::parity::ParityError;
use fredholm_core::torsion::TorsionError;
use thiserror::Error;

/// Every failure the binary can report, one variant per exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    /// Malformed document, flag or argument.
    #[error("{0}")]
    Usage(String),
    /// Well-formed input outside the domain of the requested computation.
    #[error("{0}")]
    Precondition(String),
    /// Two computations that must agree did not.
    #[error("{0}")]
    Inconsistent(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Inconsistent(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Precondition(_) => "precondition",
            CliError::Inconsistent(_) => "inconsistent",
        }
    }
}

impl From<MultiplicityError> for CliError {
    fn from(e: MultiplicityError) -> Self {
        match e {
            MultiplicityError::RouteDisagreement { .. } => CliError::Inconsistent(e.to_string()),
            MultiplicityError::InvalidCurve(_) => CliError::Usage(e.to_string()),
            MultiplicityError::InvalidProjectionPair(_)
            | MultiplicityError::NotTransversal { .. }
            | MultiplicityError::PhiNotNormalized
            | MultiplicityError::Exact(_) => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<ExactError> for CliError {
    fn from(e: ExactError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<ParityError> for CliError {
    fn from(e: ParityError) -> Self {
        match e {
            ParityError::InvalidPath(_) => CliError::Usage(e.to_string()),
            ParityError::Multiplicity(inner) => inner.into(),
            ParityError::NotAdmissible { .. }
            | ParityError::NonTransversalCrossing { .. }
            | ParityError::InvalidLoop(_)
            | ParityError::UndeterminedAtOrder(_)
            | ParityError::InfiniteMultiplicity => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<TorsionError> for CliError {
    fn from(e: TorsionError) -> Self {
        CliError::Usage(e.to_string())
    }
}
