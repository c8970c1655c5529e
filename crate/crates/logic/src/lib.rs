//! First-order logic over words with predicates drawn from a language
//! class: parsing, semantics, quantifier alternation, the relativization
//! for marked concatenation and the compiler from sentences to automata.

mod classify;
mod compile;
mod concat;
mod encoding;
mod error;
mod formula;
mod roundtrip;
mod semantics;

pub use classify::{
    block_counts, classify, normalize_sigma, prenex_pi, prenex_sigma, rename_apart, sigma_normal, AlternationClass,
    EpsilonAdjust, Prenex, SigmaNormal,
};
pub use compile::{compile, compile_open, compile_sigma, Compiled, DEFAULT_COMPILE_BUDGET};
pub use concat::{marked_concat_sentence, split_by_letter};
pub use encoding::ExtendedAlphabet;
pub use error::{Error, Result};
pub use formula::{derived_signature, parse_formula, Alias, Formula, LangRef, Var};
pub use roundtrip::{round_trip_check, RoundTrip, StratumNote};
pub use semantics::{evaluate, satisfies, Assignment};
