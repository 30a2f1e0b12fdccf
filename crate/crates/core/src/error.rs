use thiserror::Error;

use crate::report::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("set {0} is not conflict-eliminable; intrinsic arguments are undefined")]
    NotConflictEliminable(String),

    #[error("strength of {attackers} on {target} is needed but not listed (strict variant policy)")]
    MissingVariantStrength { attackers: String, target: String },

    #[error("framework has {size} arguments, above the enumeration limit of {limit}")]
    SizeLimitExceeded { size: usize, limit: usize },

    #[error("{0} is not an argument of the framework")]
    UnknownArgument(String),

    #[error("({attackers}, {target}) is not an attack of the framework")]
    NotAnAttack { attackers: String, target: String },

    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("validation failed:\n{0}")]
    Validation(ValidationReport),

    #[error("unknown theorem identifier {0}")]
    UnknownTheorem(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
