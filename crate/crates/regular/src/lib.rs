//! Regular-language substrate: alphabets, words, regular expressions and
//! canonical deterministic automata.
//!
//! All automata returned by this crate are canonical, so `==` on [`Dfa`]
//! decides language equality.

mod alphabet;
mod dfa;
mod error;
mod nfa;
mod regex;

pub use alphabet::{Alphabet, Letter, Word};
pub use dfa::{minimize_colored, BoolOp, ColoredQuotient, Dfa, DfaJson, Side, DEFAULT_STATE_LIMIT};
pub use error::{Error, Result};
pub use regex::{compile_regex, Regex};
