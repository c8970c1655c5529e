use std::collections::{HashMap, VecDeque};

use chier_regular::{Dfa, Letter, Word};

use crate::class::{LanguageClass, VectorAutomaton};
use crate::error::Result;

/// For every state `v` of the vector automaton, the length-lex least word
/// reaching `v` whose membership in `d` equals `accepted`.
fn least_words(va: &VectorAutomaton, d: &Dfa, accepted: bool) -> Vec<Option<Word>> {
    let mut best: Vec<Option<Word>> = vec![None; va.states()];
    let mut parent: HashMap<(u32, u32), Option<((u32, u32), Letter)>> = HashMap::new();
    let start = (0u32, d.initial());
    parent.insert(start, None);
    let mut queue = VecDeque::from([start]);
    while let Some(node) = queue.pop_front() {
        let (v, q) = node;
        if d.is_accepting(q) == accepted && best[v as usize].is_none() {
            let mut w = Vec::new();
            let mut cur = node;
            while let Some(Some((p, a))) = parent.get(&cur) {
                w.push(*a);
                cur = *p;
            }
            w.reverse();
            best[v as usize] = Some(Word(w));
        }
        for a in d.alphabet().letters() {
            let next = (va.next(v, a), d.next(q, a));
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                e.insert(Some((node, a)));
                queue.push_back(next);
            }
        }
    }
    best
}

fn witness_key(w: &Word, w2: &Word) -> (usize, Word, Word) {
    (w.len() + w2.len(), w.clone(), w2.clone())
}

/// Shortest pair (w, w') with w ∈ `first`, w' ∈ `second` and w ≤_C w', where
/// `first`/`second` give the least words per vector state.
fn best_pair(va: &VectorAutomaton, first: &[Option<Word>], second: &[Option<Word>]) -> Option<(Word, Word)> {
    let mut best: Option<(usize, Word, Word)> = None;
    for (v1, w1) in first.iter().enumerate() {
        let Some(w1) = w1 else { continue };
        for (v2, w2) in second.iter().enumerate() {
            let Some(w2) = w2 else { continue };
            if va.implies(v1 as u32, v2 as u32) {
                let key = witness_key(w1, w2);
                if best.as_ref().is_none_or(|b| key < *b) {
                    best = Some(key);
                }
            }
        }
    }
    best.map(|(_, w, w2)| (w, w2))
}

fn check_alphabet(class: &LanguageClass, d: &Dfa) -> Result<()> {
    if d.alphabet() == class.alphabet() {
        Ok(())
    } else {
        Err(chier_regular::Error::AlphabetMismatch.into())
    }
}

/// Whether `l` is a member of the class. Explicit classes are scanned;
/// for classes kept in generator form, membership is the upper-set
/// criterion.
pub fn in_class(class: &LanguageClass, l: &Dfa) -> Result<bool> {
    check_alphabet(class, l)?;
    match class.members() {
        Ok(_) => Ok(class.index_of(l).is_some()),
        Err(_) => Ok(non_membership_witness(class, l)?.is_none()),
    }
}

/// A shortest pair w ∈ L, w' ∉ L with w ≤_C w', or `None` when L is an
/// upper set (that is, a member of the lattice).
pub fn non_membership_witness(class: &LanguageClass, l: &Dfa) -> Result<Option<(Word, Word)>> {
    check_alphabet(class, l)?;
    class.require_lattice()?;
    let va = class.vector_automaton();
    let inside = least_words(va, l, true);
    let outside = least_words(va, l, false);
    Ok(best_pair(va, &inside, &outside))
}

/// A shortest pair w ∈ L1, w' ∈ L2 with w ≤_C w', or `None` when some
/// member contains L1 and misses L2.
pub fn non_separability_witness(class: &LanguageClass, l1: &Dfa, l2: &Dfa) -> Result<Option<(Word, Word)>> {
    check_alphabet(class, l1)?;
    check_alphabet(class, l2)?;
    class.require_lattice()?;
    let va = class.vector_automaton();
    let first = least_words(va, l1, true);
    let second = least_words(va, l2, true);
    Ok(best_pair(va, &first, &second))
}

/// The smallest member containing `l1`: the union of the upper sets of its
/// words. It separates `l1` from `l2` exactly when no witness exists.
pub fn separator(class: &LanguageClass, l1: &Dfa) -> Result<Dfa> {
    check_alphabet(class, l1)?;
    let va = class.vector_automaton();
    let reached = least_words(va, l1, true);
    let mut out = Dfa::empty(class.alphabet());
    for w in reached.iter().flatten() {
        out = out.union(&class.upper_set(w))?;
    }
    Ok(out)
}
