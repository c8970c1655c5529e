//! Polynomial strata Pol_k(C) of a finite quotienting lattice C: the
//! level-k preorders on words, type monoids, membership and separability
//! verdicts with witnesses, and brute-force oracles.

mod enumerate;
mod error;
mod monoid;
mod pumping;
mod types;
mod verdict;
mod words;

pub use enumerate::{enumerate_stratum, BoundedStratum};
pub use error::{Error, Result};
pub use monoid::{build_type_monoid, TypeMonoid, DEFAULT_TYPE_BUDGET};
pub use pumping::{verify_pumping_1, verify_pumping_2};
pub use types::{Split, StratumType, TypeId, TypeSystem};
pub use verdict::{
    bpol_member_in, bpol_stratum_member, pol_member_in, pol_separability_search, pol_separable_in,
    pol_stratum_member, pol_stratum_separable, Budget, BudgetJson, Engine, SeparabilitySearch, Status,
    StratumVerdict, VerdictJson, DEFAULT_MAX_LEN,
};
pub use words::{word_leq_k, WordOrder};
