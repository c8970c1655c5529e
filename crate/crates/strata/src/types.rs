//! Canonical level-k types.
//!
//! A level-0 type is an element of the class monoid. A level-j type is a
//! base element together with the maximal triples `(left, a, right)` of
//! level-(j−1) types over the splits `w = u a v` of the words it stands
//! for. Two words get the same level-j type exactly when they are
//! equivalent for ≤_j, and ⊑ on types is the structural domination order.

use std::collections::HashMap;

use chier_classes::ClassMonoid;
use chier_regular::Letter;

use crate::error::{Error, Result};

pub type TypeId = u32;

/// One split `u a v`, recorded by the level-(j−1) types of `u` and `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Split {
    pub letter: Letter,
    pub left: TypeId,
    pub right: TypeId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumType {
    pub level: usize,
    /// Class monoid element.
    pub base: u32,
    /// Level-(j−1) type of the same words.
    pub parent: TypeId,
    /// Maximal splits, sorted.
    pub splits: Box<[Split]>,
}

#[derive(Clone, Debug, Default)]
struct Level {
    types: Vec<StratumType>,
    index: HashMap<(u32, Box<[Split]>), TypeId>,
    mult: HashMap<(TypeId, TypeId), TypeId>,
    leq: HashMap<(TypeId, TypeId), bool>,
    unit: TypeId,
    letters: Vec<TypeId>,
}

/// Registry of types for every level up to the highest one requested.
/// Types are created on demand; a cap bounds the size of every level.
#[derive(Clone, Debug)]
pub struct TypeSystem {
    monoid: ClassMonoid,
    levels: Vec<Level>,
    cap: usize,
}

impl TypeSystem {
    pub fn new(monoid: ClassMonoid, cap: usize) -> TypeSystem {
        TypeSystem { monoid, levels: Vec::new(), cap }
    }

    pub fn monoid(&self) -> &ClassMonoid {
        &self.monoid
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn set_cap(&mut self, cap: usize) {
        self.cap = cap;
    }

    pub fn alphabet_size(&self) -> usize {
        self.monoid.alphabet_size()
    }

    /// Number of registered types at level `j` (0 for levels never used).
    pub fn size(&self, j: usize) -> usize {
        if j == 0 {
            self.monoid.size()
        } else {
            self.levels.get(j - 1).map_or(0, |l| l.types.len())
        }
    }

    pub fn get(&self, j: usize, t: TypeId) -> &StratumType {
        &self.levels[j - 1].types[t as usize]
    }

    pub fn base(&self, j: usize, t: TypeId) -> u32 {
        if j == 0 {
            t
        } else {
            self.get(j, t).base
        }
    }

    /// Makes sure levels 1..=j exist, with their unit and letter types.
    pub fn ensure_level(&mut self, j: usize) -> Result<()> {
        while self.levels.len() < j {
            let below = self.levels.len();
            self.levels.push(Level::default());
            let level = below + 1;
            let unit_below = self.unit(below);
            let unit = self.intern(level, self.monoid.unit(), unit_below, Vec::new())?;
            let mut letters = Vec::new();
            for a in 0..self.alphabet_size() as Letter {
                let parent = self.letter(below, a);
                let base = self.monoid.eval_letter(a);
                let split = Split { letter: a, left: unit_below, right: unit_below };
                letters.push(self.intern(level, base, parent, vec![split])?);
            }
            let l = &mut self.levels[below];
            l.unit = unit;
            l.letters = letters;
        }
        Ok(())
    }

    /// Level-`j` type of ε. The level must exist.
    pub fn unit(&self, j: usize) -> TypeId {
        if j == 0 {
            self.monoid.unit()
        } else {
            self.levels[j - 1].unit
        }
    }

    pub fn letter(&self, j: usize, a: Letter) -> TypeId {
        if j == 0 {
            self.monoid.eval_letter(a)
        } else {
            self.levels[j - 1].letters[a as usize]
        }
    }

    /// Registers the type with the given data, reducing the splits to
    /// their maximal elements.
    pub fn intern(&mut self, j: usize, base: u32, parent: TypeId, mut splits: Vec<Split>) -> Result<TypeId> {
        debug_assert!(j >= 1);
        splits.sort_unstable();
        splits.dedup();
        let mut keep = vec![true; splits.len()];
        for i in 0..splits.len() {
            for o in 0..splits.len() {
                if i != o && keep[o] && splits[i].letter == splits[o].letter && self.split_leq(j - 1, splits[i], splits[o]) {
                    keep[i] = false;
                    break;
                }
            }
        }
        let splits: Box<[Split]> =
            splits.into_iter().zip(keep).filter_map(|(s, k)| k.then_some(s)).collect();
        let key = (base, splits);
        if let Some(&id) = self.levels[j - 1].index.get(&key) {
            let known = self.levels[j - 1].types[id as usize].parent;
            if known != parent {
                return Err(Error::Inconsistent(format!(
                    "level {j} type {id} reached with parents {known} and {parent}"
                )));
            }
            return Ok(id);
        }
        for s in key.1.iter() {
            let composed = self.monoid.mult(
                self.monoid.mult(self.base(j - 1, s.left), self.monoid.eval_letter(s.letter)),
                self.base(j - 1, s.right),
            );
            if composed != base {
                return Err(Error::Inconsistent(format!("level {j} split {s:?} composes to {composed}, base {base}")));
            }
        }
        if self.base(j - 1, parent) != base {
            return Err(Error::Inconsistent(format!("level {j} parent {parent} has another base")));
        }
        let level = &mut self.levels[j - 1];
        if level.types.len() >= self.cap {
            return Err(Error::BudgetExceeded { level: j, count: level.types.len() });
        }
        let id = level.types.len() as TypeId;
        level.types.push(StratumType { level: j, base, parent, splits: key.1.clone() });
        level.index.insert(key, id);
        Ok(id)
    }

    fn split_leq(&mut self, j: usize, s: Split, t: Split) -> bool {
        s.letter == t.letter && self.leq(j, s.left, t.left) && self.leq(j, s.right, t.right)
    }

    /// s ⊑ t at level `j`.
    pub fn leq(&mut self, j: usize, s: TypeId, t: TypeId) -> bool {
        if j == 0 {
            return self.monoid.leq(s, t);
        }
        if s == t {
            return true;
        }
        if let Some(&b) = self.levels[j - 1].leq.get(&(s, t)) {
            return b;
        }
        let (x, y) = (self.get(j, s).clone(), self.get(j, t).clone());
        let result = self.monoid.leq(x.base, y.base)
            && x.splits.iter().all(|&p| y.splits.iter().any(|&q| self.split_leq(j - 1, p, q)));
        self.levels[j - 1].leq.insert((s, t), result);
        result
    }

    /// Product of two level-`j` types.
    pub fn mult(&mut self, j: usize, s: TypeId, t: TypeId) -> Result<TypeId> {
        if j == 0 {
            return Ok(self.monoid.mult(s, t));
        }
        if let Some(&u) = self.levels[j - 1].mult.get(&(s, t)) {
            return Ok(u);
        }
        let (x, y) = (self.get(j, s).clone(), self.get(j, t).clone());
        let base = self.monoid.mult(x.base, y.base);
        let parent = self.mult(j - 1, x.parent, y.parent)?;
        let mut splits = Vec::with_capacity(x.splits.len() + y.splits.len());
        for p in x.splits.iter() {
            splits.push(Split { letter: p.letter, left: p.left, right: self.mult(j - 1, p.right, y.parent)? });
        }
        for p in y.splits.iter() {
            splits.push(Split { letter: p.letter, left: self.mult(j - 1, x.parent, p.left)?, right: p.right });
        }
        let u = self.intern(j, base, parent, splits)?;
        self.levels[j - 1].mult.insert((s, t), u);
        Ok(u)
    }

    /// Level-`j` type of a word, by multiplying letter types.
    pub fn eval(&mut self, j: usize, w: &[Letter]) -> Result<TypeId> {
        self.ensure_level(j)?;
        let mut t = self.unit(j);
        for &a in w {
            t = self.mult(j, t, self.letter(j, a))?;
        }
        Ok(t)
    }

    /// Drops the multiplication and order caches.
    pub fn clear_caches(&mut self) {
        for l in &mut self.levels {
            l.mult = HashMap::new();
            l.leq = HashMap::new();
        }
    }
}
