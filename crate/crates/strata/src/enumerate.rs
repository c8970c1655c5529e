//! Brute-force strata, used as oracles.
//!
//! [`enumerate_stratum`] closes the class under marked products and the
//! lattice operations, one level at a time. [`BoundedStratum`] does the same
//! on the traces of languages over the words of length at most n. A trace
//! of K a L on those words depends only on the traces of K and L, and
//! membership implication over a generating family equals implication
//! over the lattice it generates, so the bounded version is exact for ≤_k
//! on short words while staying small.

use std::collections::HashSet;

use chier_classes::LanguageClass;
use chier_regular::{Alphabet, Dfa, Letter, Word};

use crate::error::{Error, Result};

/// All languages of Pol_k(C), as canonical automata. Fails once more than
/// `budget` languages have been produced at some level.
pub fn enumerate_stratum(class: &LanguageClass, k: usize, budget: usize) -> Result<Vec<Dfa>> {
    let alphabet = class.alphabet();
    let mut level: Vec<Dfa> = class.members()?.iter().map(|m| m.dfa.clone()).collect();
    for _ in 0..k {
        let mut gens = level.clone();
        for x in &level {
            for a in alphabet.letters() {
                for y in &level {
                    gens.push(x.marked_concat(a, y)?);
                }
            }
        }
        level = lattice_closure(gens, budget)?;
    }
    level.sort_by_key(|d| (d.state_count(), d.table().to_vec()));
    Ok(level)
}

fn lattice_closure(gens: Vec<Dfa>, budget: usize) -> Result<Vec<Dfa>> {
    let mut seen: HashSet<Dfa> = HashSet::new();
    let mut all: Vec<Dfa> = Vec::new();
    for g in gens {
        if seen.insert(g.clone()) {
            all.push(g);
        }
    }
    let mut i = 0;
    while i < all.len() {
        for j in 0..i {
            for d in [all[i].union(&all[j])?, all[i].intersect(&all[j])?] {
                if !seen.contains(&d) {
                    if all.len() >= budget {
                        return Err(Error::EnumerationBudget(budget));
                    }
                    seen.insert(d.clone());
                    all.push(d);
                }
            }
        }
        i += 1;
    }
    Ok(all)
}

type Trace = Box<[u64]>;

/// Generators of Pol_k(C) as a lattice, restricted to the words of length
/// at most `max_len`.
#[derive(Clone, Debug)]
pub struct BoundedStratum {
    alphabet: Alphabet,
    max_len: usize,
    words: Vec<Word>,
    generators: Vec<Trace>,
}

impl BoundedStratum {
    pub fn new(class: &LanguageClass, k: usize, max_len: usize, budget: usize) -> Result<BoundedStratum> {
        let alphabet = class.alphabet().clone();
        let words = alphabet.words_up_to(max_len);
        let blocks = words.len().div_ceil(64);
        let trace_of = |d: &Dfa| -> Trace {
            let mut t = vec![0u64; blocks];
            for (i, w) in words.iter().enumerate() {
                if d.accepts(w) {
                    t[i / 64] |= 1 << (i % 64);
                }
            }
            t.into()
        };
        let mut s = BoundedStratum { alphabet, max_len, words: Vec::new(), generators: Vec::new() };
        let mut level: Vec<Trace> = class.members()?.iter().map(|m| trace_of(&m.dfa)).collect();
        s.words = words;
        level = meet_closure(level, budget)?;
        for j in 1..=k {
            let mut gens = level.clone();
            for x in &level {
                for a in s.alphabet.letters() {
                    for y in &level {
                        gens.push(s.product(x, a, y));
                    }
                }
            }
            // Only factors of later products need closing under ∩.
            level = if j < k { meet_closure(gens, budget)? } else { dedup(gens) };
        }
        s.generators = level;
        Ok(s)
    }

    fn index(&self, w: &[Letter]) -> usize {
        let k = self.alphabet.len();
        let shorter: usize = (0..w.len()).map(|l| k.pow(l as u32)).sum();
        shorter + w.iter().fold(0, |acc, &a| acc * k + a as usize)
    }

    fn holds(t: &Trace, i: usize) -> bool {
        t[i / 64] >> (i % 64) & 1 == 1
    }

    fn product(&self, x: &Trace, a: Letter, y: &Trace) -> Trace {
        let mut t = vec![0u64; x.len()];
        for (i, w) in self.words.iter().enumerate() {
            let hit = (0..w.len()).any(|p| {
                w.0[p] == a
                    && Self::holds(x, self.index(&w.0[..p]))
                    && Self::holds(y, self.index(&w.0[p + 1..]))
            });
            if hit {
                t[i / 64] |= 1 << (i % 64);
            }
        }
        t.into()
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// w ≤_k w' as membership implication over the generators. Both words
    /// must have at most `max_len` letters.
    pub fn leq(&self, w: &Word, w2: &Word) -> bool {
        assert!(w.len() <= self.max_len && w2.len() <= self.max_len, "word longer than the bound");
        let (i, j) = (self.index(&w.0), self.index(&w2.0));
        self.generators.iter().all(|t| !Self::holds(t, i) || Self::holds(t, j))
    }
}

fn dedup(gens: Vec<Trace>) -> Vec<Trace> {
    let mut seen: HashSet<Trace> = HashSet::new();
    gens.into_iter().filter(|g| seen.insert(g.clone())).collect()
}

fn meet_closure(gens: Vec<Trace>, budget: usize) -> Result<Vec<Trace>> {
    let mut all = dedup(gens);
    let mut seen: HashSet<Trace> = all.iter().cloned().collect();
    let mut i = 0;
    while i < all.len() {
        for j in 0..i {
            let m: Trace = all[i].iter().zip(all[j].iter()).map(|(x, y)| x & y).collect();
            if seen.insert(m.clone()) {
                if all.len() >= budget {
                    return Err(Error::EnumerationBudget(budget));
                }
                all.push(m);
            }
        }
        i += 1;
    }
    Ok(all)
}
