//! Cross-checks of the compiler against direct evaluation.

use chier_classes::LanguageClass;
use chier_strata::{pol_stratum_member, Budget};
use serde::Serialize;

use crate::classify::{block_counts, classify};
use crate::compile::compile;
use crate::error::Result;
use crate::formula::Formula;
use crate::semantics::satisfies;

#[derive(Clone, Debug, Serialize)]
pub struct StratumNote {
    pub k: usize,
    pub status: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundTrip {
    pub formula: String,
    pub class: String,
    pub level: String,
    pub states: usize,
    pub words_checked: usize,
    /// Words on which the automaton and the formula disagree.
    pub mismatches: Vec<String>,
    /// Bounded stratum verdicts for Σ1 sentences. Reported only.
    pub strata: Vec<StratumNote>,
}

impl RoundTrip {
    pub fn pass(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compiles `f` and compares the automaton with the formula on every word
/// of length at most `maxlen`. For Σ1 sentences the strata k ≤ `strata_kmax`
/// of the polynomial closure are also queried with a small budget.
pub fn round_trip_check(f: &Formula, class: &LanguageClass, maxlen: usize, budget: usize, strata_kmax: Option<usize>) -> Result<RoundTrip> {
    let alphabet = class.alphabet();
    let compiled = compile(f, class, budget)?;
    let words = alphabet.words_up_to(maxlen);
    let mut mismatches = Vec::new();
    for w in &words {
        if satisfies(f, w)? != compiled.dfa.accepts(w) {
            mismatches.push(alphabet.render(w));
        }
    }
    let mut strata = Vec::new();
    if let Some(kmax) = strata_kmax {
        if block_counts(f).0 <= 1 {
            for k in 0..=kmax {
                let v = pol_stratum_member(&compiled.dfa, class, k, Budget { types: 2_000, max_len: 8 })?;
                strata.push(StratumNote { k, status: v.status.name().to_string() });
            }
        }
    }
    Ok(RoundTrip {
        formula: format!("{} [{}]", f.render(alphabet), classify(f)),
        class: class.name().to_string(),
        level: compiled.level.to_string(),
        states: compiled.dfa.state_count(),
        words_checked: words.len(),
        mismatches,
        strata,
    })
}
