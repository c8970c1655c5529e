use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Regular(#[from] chier_regular::Error),
    #[error(transparent)]
    Class(#[from] chier_classes::Error),
    #[error(transparent)]
    Strata(#[from] chier_strata::Error),
    #[error("level tag violation: {0}")]
    TagViolation(String),
    #[error("factor {0:?} is not a member of the basis")]
    NotInBasis(String),
    #[error("{{ε}} is not a member of the basis")]
    EpsilonNotInBasis,
    #[error("alphabet has {0} letters, at least 2 are needed")]
    AlphabetTooSmall(usize),
    #[error("expression outside the supported fragment: {0}")]
    NotInFragment(String),
    #[error("malformed expression: {0}")]
    BadExpression(String),
    #[error("internal check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
