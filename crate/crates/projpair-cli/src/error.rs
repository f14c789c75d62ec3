//! CLI-side failures and their fixed exit-code contract:
//! 0 ok, 2 unreadable/unparsable input, 3 validation failure,
//! 4 requested object does not exist, 5 precondition violated.

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Read { path: PathBuf, message: String },

    #[error("cannot write {path}: {message}")]
    Write { path: PathBuf, message: String },

    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("infeasible pair request: {reason}")]
    Infeasible { reason: String },

    #[error(transparent)]
    Core(#[from] projpair_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use projpair_core::Error as E;
        match self {
            CliError::Read { .. } | CliError::Write { .. } | CliError::Parse { .. } => 2,
            CliError::Infeasible { .. } => 4,
            CliError::Core(e) => match e {
                E::NoSwapExists { .. } => 4,
                E::NormTooLarge { .. }
                | E::EigenvalueOnContour { .. }
                | E::RankChanged { .. }
                | E::SingularB { .. }
                | E::SingularSystem { .. }
                | E::SeriesNotConverged { .. }
                | E::QuadratureNotConverged { .. }
                | E::EigenNotConverged { .. } => 5,
                _ => 3,
            },
        }
    }

    /// Stable machine-readable name for the report's error block.
    pub fn code_name(&self) -> &'static str {
        use projpair_core::Error as E;
        match self {
            CliError::Read { .. } | CliError::Write { .. } => "Io",
            CliError::Parse { .. } => "Parse",
            CliError::Infeasible { .. } => "InfeasibleSpec",
            CliError::Core(e) => match e {
                E::NotSquare { .. } => "NotSquare",
                E::ShapeMismatch { .. } => "ShapeMismatch",
                E::NonFiniteEntry { .. } => "NonFiniteEntry",
                E::NotHermitian { .. } => "NotHermitian",
                E::NotIdempotent { .. } => "NotIdempotent",
                E::FrameNotOrthonormal { .. } => "FrameNotOrthonormal",
                E::DimensionMismatch { .. } => "DimensionMismatch",
                E::InvalidTolerance { .. } => "InvalidTolerance",
                E::AmbiguousSpectrum { .. } => "AmbiguousSpectrum",
                E::OddGenericDimension { .. } => "OddGenericDimension",
                E::SingularB { .. } => "SingularB",
                E::SingularSystem { .. } => "SingularSystem",
                E::NoSwapExists { .. } => "NoSwapExists",
                E::NormTooLarge { .. } => "NormTooLarge",
                E::SeriesNotConverged { .. } => "SeriesNotConverged",
                E::InvalidContour { .. } => "InvalidContour",
                E::EigenvalueOnContour { .. } => "EigenvalueOnContour",
                E::QuadratureNotConverged { .. } => "QuadratureNotConverged",
                E::RankChanged { .. } => "RankChanged",
                E::NonIntegerTrace { .. } => "NonIntegerTrace",
                E::EigenNotConverged { .. } => "EigenNotConverged",
            },
        }
    }
}
