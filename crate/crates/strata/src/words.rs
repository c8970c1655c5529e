//! The level-k preorder on words.
//!
//! Two engines compute w ≤_k w'. The direct one follows the recursion on
//! splits, memoized on pairs of infixes. The typed one computes canonical
//! types of infixes from their splits (never by multiplication) and
//! compares them; it handles words of a few hundred letters.

use std::collections::HashMap;

use chier_classes::{ClassMonoid, LanguageClass};
use chier_regular::{Letter, Word};

use crate::error::Result;
use crate::types::{Split, TypeId, TypeSystem};

/// Above this product of lengths, [`WordOrder::leq`] uses the typed engine.
const DIRECT_LIMIT: usize = 400;

const NONE: TypeId = TypeId::MAX;

/// Class monoid elements of every infix `w[i..j]`, flattened.
struct Infixes {
    n: usize,
    elems: Vec<u32>,
}

impl Infixes {
    fn new(m: &ClassMonoid, w: &[Letter]) -> Infixes {
        let n = w.len();
        let mut elems = vec![0; (n + 1) * (n + 1)];
        for i in 0..=n {
            let mut e = m.unit();
            elems[i * (n + 1) + i] = e;
            for j in i..n {
                e = m.mult(e, m.eval_letter(w[j]));
                elems[i * (n + 1) + j + 1] = e;
            }
        }
        Infixes { n, elems }
    }

    fn get(&self, i: usize, j: usize) -> u32 {
        self.elems[i * (self.n + 1) + j]
    }
}

/// Evaluates ≤_k over a fixed class. Reuse one value for many queries:
/// the type registry and its caches persist between calls.
#[derive(Clone, Debug)]
pub struct WordOrder {
    sys: TypeSystem,
}

impl WordOrder {
    pub fn new(class: &LanguageClass) -> Result<WordOrder> {
        Ok(WordOrder { sys: TypeSystem::new(ClassMonoid::new(class)?, usize::MAX) })
    }

    pub fn monoid(&self) -> &ClassMonoid {
        self.sys.monoid()
    }

    /// w ≤_k w'.
    pub fn leq(&mut self, k: usize, w: &Word, w2: &Word) -> Result<bool> {
        if (w.len() + 1) * (w2.len() + 1) <= DIRECT_LIMIT {
            Ok(self.leq_direct(k, w, w2))
        } else {
            self.leq_typed(k, w, w2)
        }
    }

    /// Mutual ≤_k.
    pub fn equivalent(&mut self, k: usize, w: &Word, w2: &Word) -> Result<bool> {
        Ok(self.leq(k, w, w2)? && self.leq(k, w2, w)?)
    }

    /// The split recursion, memoized on infix pairs.
    pub fn leq_direct(&self, k: usize, w: &Word, w2: &Word) -> bool {
        let m = self.sys.monoid();
        let mut d = Direct {
            m,
            w: &w.0,
            w2: &w2.0,
            e1: Infixes::new(m, &w.0),
            e2: Infixes::new(m, &w2.0),
            memo: HashMap::new(),
        };
        d.leq(k, 0, w.len(), 0, w2.len())
    }

    /// Compares canonical level-k types computed from splits.
    pub fn leq_typed(&mut self, k: usize, w: &Word, w2: &Word) -> Result<bool> {
        let s = self.type_of(k, w)?;
        let t = self.type_of(k, w2)?;
        Ok(self.sys.leq(k, s, t))
    }

    /// Level-k type of `w`, built from the types of its infixes.
    pub fn type_of(&mut self, k: usize, w: &Word) -> Result<TypeId> {
        let m = self.sys.monoid();
        let inf = Infixes::new(m, &w.0);
        let n = w.len();
        if k == 0 {
            return Ok(inf.get(0, n));
        }
        self.sys.ensure_level(k)?;
        let idx = |i: usize, j: usize| i * (n + 1) + j;
        let mut prev: Vec<TypeId> = inf.elems.clone();
        for level in 1..=k {
            let mut cur = vec![NONE; (n + 1) * (n + 1)];
            for i in 0..=n {
                for j in i..=n {
                    let wanted = if level == k {
                        i == 0 && j == n
                    } else if level + 1 == k {
                        i == 0 || j == n
                    } else {
                        true
                    };
                    if !wanted {
                        continue;
                    }
                    let splits: Vec<Split> = (i..j)
                        .map(|p| Split { letter: w.0[p], left: prev[idx(i, p)], right: prev[idx(p + 1, j)] })
                        .collect();
                    cur[idx(i, j)] = self.sys.intern(level, inf.get(i, j), prev[idx(i, j)], splits)?;
                }
            }
            prev = cur;
        }
        Ok(prev[idx(0, n)])
    }

    /// The underlying registry, shared by all queries on this value.
    pub fn types(&mut self) -> &mut TypeSystem {
        &mut self.sys
    }
}

struct Direct<'a> {
    m: &'a ClassMonoid,
    w: &'a [Letter],
    w2: &'a [Letter],
    e1: Infixes,
    e2: Infixes,
    memo: HashMap<(usize, usize, usize, usize, usize), bool>,
}

impl Direct<'_> {
    fn leq(&mut self, k: usize, i1: usize, j1: usize, i2: usize, j2: usize) -> bool {
        if !self.m.leq(self.e1.get(i1, j1), self.e2.get(i2, j2)) {
            return false;
        }
        if k == 0 {
            return true;
        }
        let key = (k, i1, j1, i2, j2);
        if let Some(&b) = self.memo.get(&key) {
            return b;
        }
        let mut result = true;
        for p in i1..j1 {
            let mut found = false;
            for q in i2..j2 {
                if self.w2[q] == self.w[p] && self.leq(k - 1, i1, p, i2, q) && self.leq(k - 1, p + 1, j1, q + 1, j2) {
                    found = true;
                    break;
                }
            }
            if !found {
                result = false;
                break;
            }
        }
        self.memo.insert(key, result);
        result
    }
}

/// w ≤_k w' over `class`.
pub fn word_leq_k(class: &LanguageClass, k: usize, w: &Word, w2: &Word) -> Result<bool> {
    WordOrder::new(class)?.leq(k, w, w2)
}
