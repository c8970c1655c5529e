//! Quantifier alternation: classification, prenex forms and the Σ-normal
//! form with its ε-adjustment.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use chier_regular::Word;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::{Formula, Var};
use crate::semantics::satisfies;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum AlternationClass {
    Sigma(usize),
    Pi(usize),
    BSigma(usize),
}

impl fmt::Display for AlternationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlternationClass::Sigma(n) => write!(f, "Sigma{n}"),
            AlternationClass::Pi(n) => write!(f, "Pi{n}"),
            AlternationClass::BSigma(n) => write!(f, "BSigma{n}"),
        }
    }
}

/// Fewest blocks of a prenex form starting with ∃, and with ∀.
pub fn block_counts(f: &Formula) -> (usize, usize) {
    counts(&f.nnf())
}

fn counts(f: &Formula) -> (usize, usize) {
    match f {
        Formula::And(g, h) | Formula::Or(g, h) => {
            let (a, b) = (counts(g), counts(h));
            (a.0.max(b.0), a.1.max(b.1))
        }
        Formula::Exists(_, g) => {
            let s = counts(g).0.max(1);
            (s, s + 1)
        }
        Formula::Forall(_, g) => {
            let p = counts(g).1.max(1);
            (p + 1, p)
        }
        _ => (0, 0),
    }
}

pub fn classify(f: &Formula) -> AlternationClass {
    let (s, p) = block_counts(f);
    match s.cmp(&p) {
        std::cmp::Ordering::Less => AlternationClass::Sigma(s),
        std::cmp::Ordering::Greater => AlternationClass::Pi(p),
        std::cmp::Ordering::Equal if s == 0 => AlternationClass::Sigma(0),
        std::cmp::Ordering::Equal => AlternationClass::BSigma(s - 1),
    }
}

/// NNF with bound variables renamed x1, x2, … in traversal order, skipping
/// names that occur free.
pub fn rename_apart(f: &Formula) -> Formula {
    let free = f.free_vars();
    let mut next = 0;
    go(&f.nnf(), &free, &mut next, &mut HashMap::new())
}

fn go(f: &Formula, free: &BTreeSet<Var>, next: &mut usize, scope: &mut HashMap<Var, Vec<Var>>) -> Formula {
    match f {
        Formula::Exists(x, g) | Formula::Forall(x, g) => {
            let fresh = loop {
                *next += 1;
                let name = format!("x{next}");
                if !free.contains(&name) {
                    break name;
                }
            };
            scope.entry(x.clone()).or_default().push(fresh.clone());
            let body = go(g, free, next, scope);
            scope.get_mut(x).map(Vec::pop);
            if matches!(f, Formula::Exists(..)) {
                Formula::exists(&fresh, body)
            } else {
                Formula::forall(&fresh, body)
            }
        }
        Formula::And(g, h) => {
            let g = go(g, free, next, scope);
            Formula::and(g, go(h, free, next, scope))
        }
        Formula::Or(g, h) => {
            let g = go(g, free, next, scope);
            Formula::or(g, go(h, free, next, scope))
        }
        Formula::Not(g) => Formula::not(go(g, free, next, scope)),
        atom => atom.map_atom_vars(&|v: &Var| scope.get(v).and_then(|s| s.last()).unwrap_or(v).clone()),
    }
}

/// A prenex formula: alternating blocks, the first existential when
/// `starts_exists`, over a quantifier-free matrix in NNF. Blocks may be
/// empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prenex {
    pub starts_exists: bool,
    pub blocks: Vec<Vec<Var>>,
    pub matrix: Formula,
}

impl Prenex {
    pub fn to_formula(&self) -> Formula {
        let mut f = self.matrix.clone();
        for (i, block) in self.blocks.iter().enumerate().rev() {
            let exists = (i % 2 == 0) == self.starts_exists;
            for x in block.iter().rev() {
                f = if exists { Formula::exists(x, f) } else { Formula::forall(x, f) };
            }
        }
        f
    }
}

/// A prenex form with `blocks` blocks, of a formula already renamed apart.
/// It agrees with the input on every nonempty word.
fn build(f: &Formula, starts_exists: bool, blocks: usize) -> Prenex {
    match f {
        Formula::And(g, h) | Formula::Or(g, h) => {
            let (a, b) = (build(g, starts_exists, blocks), build(h, starts_exists, blocks));
            let merged = a.blocks.into_iter().zip(b.blocks).map(|(mut x, y)| {
                x.extend(y);
                x
            });
            let matrix = if matches!(f, Formula::And(..)) { Formula::and(a.matrix, b.matrix) } else { Formula::or(a.matrix, b.matrix) };
            Prenex { starts_exists, blocks: merged.collect(), matrix }
        }
        Formula::Exists(x, g) | Formula::Forall(x, g) => {
            let exists = matches!(f, Formula::Exists(..));
            if exists == starts_exists {
                let mut inner = build(g, starts_exists, blocks);
                inner.blocks[0].insert(0, x.clone());
                inner
            } else {
                let inner = build(f, !starts_exists, blocks - 1);
                let mut out = vec![Vec::new()];
                out.extend(inner.blocks);
                Prenex { starts_exists, blocks: out, matrix: inner.matrix }
            }
        }
        atom => Prenex { starts_exists, blocks: vec![Vec::new(); blocks], matrix: atom.clone() },
    }
}

/// The Σ-form prenex with the fewest blocks, after renaming apart.
pub fn prenex_sigma(f: &Formula) -> Prenex {
    let g = rename_apart(f);
    let (s, _) = counts(&g);
    build(&g, true, s)
}

/// The Π-form prenex with the fewest blocks, after renaming apart.
pub fn prenex_pi(f: &Formula) -> Prenex {
    let g = rename_apart(f);
    let (_, p) = counts(&g);
    build(&g, false, p)
}

/// How the empty word has to be patched after moving quantifiers out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EpsilonAdjust {
    None,
    /// ∨ ∀z ⊥: also accept ε.
    AcceptEmpty,
    /// ∧ ∃z ⊤: reject ε.
    RejectEmpty,
}

/// ∃B₁ core, where the core is a Π prenex with one block fewer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaNormal {
    pub n: usize,
    pub prenex: Prenex,
    pub adjust: EpsilonAdjust,
}

impl SigmaNormal {
    pub fn to_formula(&self) -> Formula {
        let f = self.prenex.to_formula();
        let names = f.var_names();
        let z = (0..).map(|i| format!("z{i}")).find(|z| !names.contains(z)).expect("fresh name");
        match self.adjust {
            EpsilonAdjust::None => f,
            EpsilonAdjust::AcceptEmpty => Formula::or(f, Formula::forall(&z, Formula::False)),
            EpsilonAdjust::RejectEmpty => Formula::and(f, Formula::exists(&z, Formula::True)),
        }
    }
}

/// Splits a Σ_n sentence (n ≥ 1) into its normal form.
pub fn sigma_normal(f: &Formula, n: usize) -> Result<SigmaNormal> {
    if n == 0 || !f.is_sentence() {
        return Err(Error::NotSigmaN { n });
    }
    let g = rename_apart(f);
    if counts(&g).0 > n {
        return Err(Error::NotSigmaN { n });
    }
    let prenex = build(&g, true, n);
    let eps = Word::epsilon();
    let (want, got) = (satisfies(f, &eps)?, satisfies(&prenex.to_formula(), &eps)?);
    let adjust = match (want, got) {
        (true, false) => EpsilonAdjust::AcceptEmpty,
        (false, true) => EpsilonAdjust::RejectEmpty,
        _ => EpsilonAdjust::None,
    };
    Ok(SigmaNormal { n, prenex, adjust })
}

/// The normal form of a Σ_n sentence as a formula.
pub fn normalize_sigma(f: &Formula, n: usize) -> Result<Formula> {
    Ok(sigma_normal(f, n)?.to_formula())
}
