use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Regular(#[from] chier_regular::Error),
    #[error(transparent)]
    Class(#[from] chier_classes::Error),
    #[error(transparent)]
    Strata(#[from] chier_strata::Error),
    #[error(transparent)]
    Hierarchy(#[from] chier_hierarchy::Error),
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown language {0:?}")]
    UnknownLanguage(String),
    #[error("unknown letter {0:?}")]
    UnknownLetter(char),
    #[error("predicate {0:?} is not available for this basis")]
    UnknownPredicate(String),
    #[error("no derived signature for basis {0:?}")]
    UnknownBasis(String),
    #[error("variable {0:?} is not bound")]
    UnboundVariable(String),
    #[error("formula is not a Σ{n} sentence")]
    NotSigmaN { n: usize },
    #[error("formula outside the supported fragment: {0}")]
    NotInFragment(String),
    #[error("language is not a member of the class")]
    NotInClass,
    #[error("automaton is over the wrong alphabet")]
    AlphabetMismatch,
    #[error("determinization exceeded {limit} states")]
    BudgetExceeded { limit: usize },
    #[error("internal check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
