//! Finite classes of regular languages: builtin bases, canonical preorders,
//! upper sets, class monoids and membership/separation witnesses.

mod class;
mod error;
mod monoid;
mod witness;

pub use class::{
    builtin_basis, in_algebra, refine_atoms, BasisKind, ClassJson, LanguageClass, LanguageJson, Member, Properties,
    VectorAutomaton, DEFAULT_MEMBER_CAP,
};
pub use error::{Error, Result};
pub use monoid::ClassMonoid;
pub use witness::{in_class, non_membership_witness, non_separability_witness, separator};

/// Shorthand for [`builtin_basis`] with the default member cap.
pub fn basis(kind: BasisKind, alphabet: &chier_regular::Alphabet) -> Result<LanguageClass> {
    builtin_basis(kind, alphabet, DEFAULT_MEMBER_CAP)
}
