use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet must contain at least one letter")]
    EmptyAlphabet,
    #[error("duplicate letter {0:?} in alphabet")]
    DuplicateLetter(char),
    #[error("symbol {0:?} cannot be used as a letter")]
    BadSymbol(char),
    #[error("alphabet has {0} letters, more than supported")]
    AlphabetTooLarge(usize),
    #[error("letter {0:?} is not in the alphabet")]
    UnknownLetter(char),
    #[error("letter index {0} is out of range")]
    LetterOutOfRange(usize),
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("automata are over different alphabets")]
    AlphabetMismatch,
    #[error("malformed automaton: {0}")]
    Malformed(String),
    #[error("automaton construction exceeded {limit} states")]
    BudgetExceeded { limit: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
