use std::collections::VecDeque;

use chier_classes::{ClassMonoid, LanguageClass};
use chier_regular::{Letter, Word};

use crate::error::{Error, Result};
use crate::types::{Split, StratumType, TypeId, TypeSystem};

/// Default cap on the number of types per level.
pub const DEFAULT_TYPE_BUDGET: usize = 50_000;

/// Lower levels up to this size get a dense order table.
const DENSE_LIMIT: usize = 16_384;

#[derive(Clone, Debug)]
struct BitMatrix {
    n: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn get(&self, s: TypeId, t: TypeId) -> bool {
        let i = s as usize * self.n + t as usize;
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }
}

/// The finite monoid of level-k types of a quotienting class, with its
/// order. Immutable once built.
#[derive(Clone, Debug)]
pub struct TypeMonoid {
    k: usize,
    sys: TypeSystem,
    right: Vec<TypeId>,
    reps: Vec<Word>,
    dense: Vec<Option<BitMatrix>>,
}

impl TypeMonoid {
    /// Closes the unit under right multiplication by letters. Fails when
    /// some level passes `budget` types.
    pub fn build(class: &LanguageClass, k: usize, budget: usize) -> Result<TypeMonoid> {
        let sys = TypeSystem::new(ClassMonoid::new(class)?, budget);
        TypeMonoid::from_system(sys, k)
    }

    pub fn from_system(mut sys: TypeSystem, k: usize) -> Result<TypeMonoid> {
        sys.ensure_level(k)?;
        let letters = sys.alphabet_size();
        let mut reps: Vec<Option<Word>> = vec![None; sys.size(k)];
        let mut right: Vec<TypeId> = Vec::new();
        let unit = sys.unit(k);
        reps[unit as usize] = Some(Word::epsilon());
        let mut queue = VecDeque::from([unit]);
        while let Some(s) = queue.pop_front() {
            for a in 0..letters as Letter {
                let t = sys.mult(k, s, sys.letter(k, a))?;
                if t as usize >= reps.len() {
                    reps.resize(t as usize + 1, None);
                }
                if reps[t as usize].is_none() {
                    reps[t as usize] = Some(reps[s as usize].as_ref().unwrap().push(a));
                    queue.push_back(t);
                }
                let slot = s as usize * letters + a as usize;
                if right.len() <= slot {
                    right.resize(slot + 1, TypeId::MAX);
                }
                right[slot] = t;
            }
        }
        let n = sys.size(k);
        let reps: Vec<Word> = reps
            .into_iter()
            .enumerate()
            .map(|(t, r)| r.ok_or_else(|| Error::Inconsistent(format!("level {k} type {t} is unreachable"))))
            .collect::<Result<_>>()?;
        right.resize(n * letters, TypeId::MAX);
        let mut dense = Vec::with_capacity(k);
        for j in 1..k {
            let nj = sys.size(j);
            if nj > DENSE_LIMIT {
                dense.push(None);
                continue;
            }
            let mut bits = vec![0u64; (nj * nj).div_ceil(64)];
            for s in 0..nj as TypeId {
                for t in 0..nj as TypeId {
                    if sys.leq(j, s, t) {
                        let i = s as usize * nj + t as usize;
                        bits[i / 64] |= 1 << (i % 64);
                    }
                }
            }
            dense.push(Some(BitMatrix { n: nj, bits }));
        }
        sys.clear_caches();
        Ok(TypeMonoid { k, sys, right, reps, dense })
    }

    pub fn level(&self) -> usize {
        self.k
    }

    pub fn size(&self) -> usize {
        self.reps.len()
    }

    /// Number of types at each level 0..=k.
    pub fn level_sizes(&self) -> Vec<usize> {
        (0..=self.k).map(|j| self.sys.size(j)).collect()
    }

    pub fn class_monoid(&self) -> &ClassMonoid {
        self.sys.monoid()
    }

    pub fn unit(&self) -> TypeId {
        self.sys.unit(self.k)
    }

    pub fn eval_letter(&self, a: Letter) -> TypeId {
        self.sys.letter(self.k, a)
    }

    /// s·a
    pub fn step(&self, s: TypeId, a: Letter) -> TypeId {
        self.right[s as usize * self.sys.alphabet_size() + a as usize]
    }

    pub fn run(&self, s: TypeId, w: &[Letter]) -> TypeId {
        w.iter().fold(s, |s, &a| self.step(s, a))
    }

    pub fn eval(&self, w: &Word) -> TypeId {
        self.run(self.unit(), &w.0)
    }

    pub fn mult(&self, s: TypeId, t: TypeId) -> TypeId {
        self.run(s, &self.reps[t as usize].0)
    }

    /// Length-lex least word of type `t`.
    pub fn representative(&self, t: TypeId) -> &Word {
        &self.reps[t as usize]
    }

    /// Level-k record of `t`; `None` at level 0.
    pub fn get(&self, t: TypeId) -> Option<&StratumType> {
        (self.k > 0).then(|| self.sys.get(self.k, t))
    }

    /// Class monoid element of `t`.
    pub fn base(&self, t: TypeId) -> u32 {
        self.sys.base(self.k, t)
    }

    /// s ⊑ t
    pub fn leq(&self, s: TypeId, t: TypeId) -> bool {
        self.leq_at(self.k, s, t)
    }

    pub fn equivalent(&self, s: TypeId, t: TypeId) -> bool {
        s == t
    }

    fn leq_at(&self, j: usize, s: TypeId, t: TypeId) -> bool {
        if j == 0 {
            return self.sys.monoid().leq(s, t);
        }
        if s == t {
            return true;
        }
        if j < self.k {
            if let Some(m) = &self.dense[j - 1] {
                return m.get(s, t);
            }
        }
        let (x, y) = (self.sys.get(j, s), self.sys.get(j, t));
        self.sys.monoid().leq(x.base, y.base)
            && x.splits.iter().all(|p| y.splits.iter().any(|q| self.split_leq(j - 1, p, q)))
    }

    fn split_leq(&self, j: usize, p: &Split, q: &Split) -> bool {
        p.letter == q.letter && self.leq_at(j, p.left, q.left) && self.leq_at(j, p.right, q.right)
    }
}

/// Builds the level-k type monoid of `class` within `budget` types per level.
pub fn build_type_monoid(class: &LanguageClass, k: usize, budget: usize) -> Result<TypeMonoid> {
    TypeMonoid::build(class, k, budget)
}
