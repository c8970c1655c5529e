use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Regular(#[from] chier_regular::Error),
    #[error("class has {count} members, above the cap of {cap}")]
    BudgetExceeded { count: u128, cap: usize },
    #[error("class {0:?} is not a lattice")]
    NotLattice(String),
    #[error("class {0:?} is not closed under quotients")]
    NotQuotienting(String),
    #[error("unknown basis {0:?}")]
    UnknownBasis(String),
    #[error("invalid basis parameter: {0}")]
    BadParameter(String),
    #[error("invalid class description: {0}")]
    BadClass(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
