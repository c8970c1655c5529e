use std::collections::HashMap;

use chier_regular::{Letter, Word};

use crate::class::LanguageClass;
use crate::error::Result;

/// The quotient A*/∼ of a finite quotienting class, where ∼ is the
/// equivalence induced by the canonical preorder, ordered by that preorder.
///
/// Elements are numbered in the length-lex order of their least
/// representative; element 0 is the unit.
#[derive(Clone, Debug)]
pub struct ClassMonoid {
    k: usize,
    size: usize,
    mult: Vec<u32>,
    letters: Vec<u32>,
    reps: Vec<Word>,
    leq: Vec<bool>,
    period: usize,
}

impl ClassMonoid {
    pub fn new(class: &LanguageClass) -> Result<ClassMonoid> {
        class.require_quotienting()?;
        let va = class.vector_automaton();
        let n = va.states();
        let k = va.k;
        let identity: Vec<u32> = (0..n as u32).collect();
        let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
        let mut funcs = vec![identity.clone()];
        let mut reps = vec![Word::epsilon()];
        index.insert(identity, 0);
        let mut right: Vec<u32> = Vec::new();
        let mut i = 0;
        while i < funcs.len() {
            for a in 0..k as Letter {
                let f: Vec<u32> = funcs[i].iter().map(|&q| va.next(q, a)).collect();
                let fresh = funcs.len() as u32;
                let id = match index.get(&f) {
                    Some(&id) => id,
                    None => {
                        index.insert(f.clone(), fresh);
                        funcs.push(f);
                        reps.push(reps[i].push(a));
                        fresh
                    }
                };
                right.push(id);
            }
            i += 1;
        }
        let size = funcs.len();
        let letters: Vec<u32> = (0..k).map(|a| right[a]).collect();
        let mut mult = vec![0u32; size * size];
        for s in 0..size {
            for t in 0..size {
                let f: Vec<u32> = funcs[s].iter().map(|&q| funcs[t][q as usize]).collect();
                mult[s * size + t] = index[&f];
            }
        }
        let mut leq = vec![false; size * size];
        for s in 0..size {
            for t in 0..size {
                leq[s * size + t] = va.implies(funcs[s][0], funcs[t][0]);
            }
        }
        let mut m = ClassMonoid { k, size, mult, letters, reps, leq, period: 0 };
        m.period = m.compute_period();
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn alphabet_size(&self) -> usize {
        self.k
    }

    pub fn unit(&self) -> u32 {
        0
    }

    pub fn mult(&self, s: u32, t: u32) -> u32 {
        self.mult[s as usize * self.size + t as usize]
    }

    pub fn eval_letter(&self, a: Letter) -> u32 {
        self.letters[a as usize]
    }

    pub fn eval(&self, w: &[Letter]) -> u32 {
        w.iter().fold(0, |s, &a| self.mult(s, self.letters[a as usize]))
    }

    /// Length-lex least word evaluating to `s`.
    pub fn representative(&self, s: u32) -> &Word {
        &self.reps[s as usize]
    }

    pub fn leq(&self, s: u32, t: u32) -> bool {
        self.leq[s as usize * self.size + t as usize]
    }

    pub fn power(&self, s: u32, n: usize) -> u32 {
        (0..n).fold(self.unit(), |acc, _| self.mult(acc, s))
    }

    pub fn is_idempotent(&self, s: u32) -> bool {
        self.mult(s, s) == s
    }

    /// Least p ≥ 1 with s^p = s^{2p} for every element s.
    pub fn period(&self) -> usize {
        self.period
    }

    fn compute_period(&self) -> usize {
        // Index and cycle length of each element's power sequence bound the
        // search: p must reach every index and be a multiple of every cycle.
        let mut max_index = 1usize;
        let mut lcm = 1usize;
        for s in 0..self.size as u32 {
            let mut seen: HashMap<u32, usize> = HashMap::new();
            let mut x = s;
            let mut e = 1;
            while let std::collections::hash_map::Entry::Vacant(v) = seen.entry(x) {
                v.insert(e);
                x = self.mult(x, s);
                e += 1;
            }
            let first = seen[&x];
            let cycle = e - first;
            max_index = max_index.max(first);
            lcm = lcm / gcd(lcm, cycle) * cycle;
        }
        let bound = lcm * max_index.div_ceil(lcm);
        (1..=bound)
            .find(|&p| (0..self.size as u32).all(|s| self.power(s, p) == self.power(s, 2 * p)))
            .expect("the bound satisfies the period equation")
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
