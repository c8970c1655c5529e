//! Nondeterministic automata, used internally for concatenation, star,
//! regex compilation and letter-to-letter images.

use std::collections::HashMap;

use crate::alphabet::{Alphabet, Letter};
use crate::dfa::Dfa;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default)]
pub(crate) struct Nfa {
    trans: Vec<Vec<(Letter, u32)>>,
    eps: Vec<Vec<u32>>,
    accepting: Vec<bool>,
    initial: Vec<u32>,
}

impl Nfa {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_state(&mut self, accepting: bool) -> u32 {
        self.trans.push(Vec::new());
        self.eps.push(Vec::new());
        self.accepting.push(accepting);
        (self.trans.len() - 1) as u32
    }

    pub fn add(&mut self, from: u32, a: Letter, to: u32) {
        self.trans[from as usize].push((a, to));
    }

    pub fn add_eps(&mut self, from: u32, to: u32) {
        self.eps[from as usize].push(to);
    }

    pub fn set_accepting(&mut self, q: u32, acc: bool) {
        self.accepting[q as usize] = acc;
    }

    pub fn add_initial(&mut self, q: u32) {
        self.initial.push(q);
    }

    /// Copies a DFA into this automaton. Returns the offset of its states;
    /// the copy's initial state is `offset + dfa.initial()`.
    pub fn embed(&mut self, d: &Dfa, keep_accepting: bool) -> u32 {
        let offset = self.trans.len() as u32;
        for q in 0..d.state_count() as u32 {
            self.add_state(keep_accepting && d.is_accepting(q));
        }
        for q in 0..d.state_count() as u32 {
            for a in d.alphabet().letters() {
                self.add(offset + q, a, offset + d.next(q, a));
            }
        }
        offset
    }

    fn close(&self, set: &mut Vec<u32>, seen: &mut [bool]) {
        let mut stack: Vec<u32> = set.clone();
        while let Some(q) = stack.pop() {
            for &r in &self.eps[q as usize] {
                if !seen[r as usize] {
                    seen[r as usize] = true;
                    set.push(r);
                    stack.push(r);
                }
            }
        }
    }

    /// Subset construction followed by canonical minimization.
    pub fn determinize(&self, alphabet: &Alphabet, limit: usize) -> Result<Dfa> {
        let k = alphabet.len();
        let n = self.trans.len();
        let mut seen = vec![false; n];
        let mut start: Vec<u32> = Vec::new();
        for &q in &self.initial {
            if !seen[q as usize] {
                seen[q as usize] = true;
                start.push(q);
            }
        }
        self.close(&mut start, &mut seen);
        for &q in &start {
            seen[q as usize] = false;
        }
        start.sort_unstable();

        let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
        let mut subsets: Vec<Vec<u32>> = Vec::new();
        let mut delta: Vec<u32> = Vec::new();
        index.insert(start.clone(), 0);
        subsets.push(start);
        let mut i = 0;
        while i < subsets.len() {
            for a in 0..k as Letter {
                let mut next: Vec<u32> = Vec::new();
                for &q in &subsets[i] {
                    for &(b, r) in &self.trans[q as usize] {
                        if b == a && !seen[r as usize] {
                            seen[r as usize] = true;
                            next.push(r);
                        }
                    }
                }
                self.close(&mut next, &mut seen);
                for &q in &next {
                    seen[q as usize] = false;
                }
                next.sort_unstable();
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = subsets.len() as u32;
                        if subsets.len() >= limit {
                            return Err(Error::BudgetExceeded { limit });
                        }
                        index.insert(next.clone(), id);
                        subsets.push(next);
                        id
                    }
                };
                delta.push(id);
            }
            i += 1;
        }
        let accepting: Vec<bool> =
            subsets.iter().map(|s| s.iter().any(|&q| self.accepting[q as usize])).collect();
        Ok(Dfa::build(alphabet.clone(), delta, 0, accepting))
    }
}
