use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Regular(#[from] chier_regular::Error),
    #[error(transparent)]
    Class(#[from] chier_classes::Error),
    #[error("level {level} reached {count} types, the budget")]
    BudgetExceeded { level: usize, count: usize },
    #[error("lattice enumeration passed {0} languages")]
    EnumerationBudget(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
