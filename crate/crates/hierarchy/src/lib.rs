//! Symbolic hierarchy levels over a finite basis: tagged expressions, the
//! constructive closure rewritings for polynomials, the alphabet trick,
//! classic dot-depth expressions and strictness witnesses.

mod classic;
mod error;
mod expr;
mod rewrite;
mod strict;
mod trick;

pub use classic::{check_classic, classic_expressions, dd1_ab_star, dd2_a_ab_star_b_star, interleaving_check, Check};
pub use error::{Error, Result};
pub use expr::{eval_level, Evaluator, ExprJson, Level, LevelExpr, Monomial, MonomialJson, Node, PolyExpr};
pub use rewrite::{eps_chain, letter_splits, pol_concat_rewrite, pol_intersect_rewrite, pol_quotient_rewrite};
pub use strict::{strictness_witnesses, with_epsilon, BundleJson, PairJson, WitnessBundle, WitnessPair};
pub use trick::{
    alphabet_trick_check, default_trick_samples, piece, piece_complement, piece_expr, to_pol_wat, TrickEntry,
};
