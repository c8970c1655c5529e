//! Constructive closure rewritings on polynomials: quotients, intersection
//! and concatenation. Every output is checked against the direct automaton
//! computation before it is returned.

use std::collections::HashMap;

use chier_classes::{in_class, LanguageClass};
use chier_regular::{Dfa, Letter, Side, Word};

use crate::error::{Error, Result};
use crate::expr::{Level, LevelExpr, Monomial, PolyExpr};

/// Pairs (P, S) with P·c·S ⊆ X such that every factorization x·c·y of a
/// word of X has x ∈ P and y ∈ S for some pair. S ranges over the quotients
/// (uc)⁻¹X and P over the matching intersections of right quotients, so
/// both stay in any quotienting lattice containing X.
pub fn letter_splits(x: &Dfa, c: Letter) -> Vec<(Dfa, Dfa)> {
    let x = x.minimize();
    let mut targets: Vec<u32> = (0..x.state_count() as u32).map(|q| x.next(q, c)).collect();
    targets.sort_unstable();
    targets.dedup();
    let mut out = Vec::new();
    for r in targets {
        let s = x.from_state(r);
        if s.is_empty() {
            continue;
        }
        let p = x.with_accepting(|q| x.state_included(r, x.next(q, c)));
        if !p.is_empty() {
            out.push((p, s));
        }
    }
    out
}

fn check(what: &str, got: &Dfa, want: &Dfa) -> Result<()> {
    if got == want {
        Ok(())
    } else {
        Err(Error::Inconsistent(format!("{what} rewrite differs from the direct automaton")))
    }
}

/// a⁻¹M (left) or Ma⁻¹ (right) as a polynomial.
pub fn pol_quotient_rewrite(m: &Monomial, a: Letter, side: Side) -> Result<PolyExpr> {
    let mut ev = crate::expr::Evaluator::new();
    let n = m.degree();
    let alphabet = ev.eval(&m.factors[0])?.alphabet().clone();
    let aw = Word(vec![a]);
    let sym = alphabet.symbol(a);
    let (end, inner_letter) = match side {
        Side::Left => (0, m.letters.first()),
        Side::Right => (n, m.letters.last()),
    };
    let f = &m.factors[end];
    let fd = ev.eval(f)?;
    let q = fd.quotient(side, &aw);
    let name = match (&f.node, side) {
        (crate::expr::Node::Lang { name, .. }, Side::Left) => format!("{sym}^-1({name})"),
        (crate::expr::Node::Lang { name, .. }, Side::Right) => format!("({name}){sym}^-1"),
        (_, Side::Left) => format!("{sym}^-1(L{end})"),
        (_, Side::Right) => format!("(L{end}){sym}^-1"),
    };
    let mut out = PolyExpr::empty(&alphabet);
    if !q.is_empty() {
        let mut factors = m.factors.clone();
        factors[end] = LevelExpr::lang(f.tag.clone(), &name, q);
        out.monomials.push(Monomial::new(factors, m.letters.clone())?);
    }
    if n > 0 && fd.accepts_epsilon() && inner_letter == Some(&a) {
        let rest = match side {
            Side::Left => Monomial::new(m.factors[1..].to_vec(), m.letters[1..].to_vec())?,
            Side::Right => Monomial::new(m.factors[..n].to_vec(), m.letters[..n - 1].to_vec())?,
        };
        out.monomials.push(rest);
    }
    check("quotient", &ev.eval_poly(&out)?, &ev.eval_monomial(m)?.quotient(side, &aw))?;
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Raw {
    factors: Vec<Dfa>,
    letters: Vec<Letter>,
}

impl Raw {
    fn tail(&self) -> Raw {
        Raw { factors: self.factors[1..].to_vec(), letters: self.letters[1..].to_vec() }
    }

    fn prefixed(&self, head: Dfa, a: Letter) -> Raw {
        let mut factors = vec![head];
        factors.extend(self.factors.iter().cloned());
        let mut letters = vec![a];
        letters.extend(self.letters.iter().copied());
        Raw { factors, letters }
    }
}

type Memo = HashMap<(Raw, Raw), Vec<Raw>>;

fn push_unique(out: &mut Vec<Raw>, r: Raw) {
    if !out.contains(&r) {
        out.push(r);
    }
}

fn intersect_rec(k: &Raw, l: &Raw, memo: &mut Memo) -> Result<Vec<Raw>> {
    if let Some(v) = memo.get(&(k.clone(), l.clone())) {
        return Ok(v.clone());
    }
    let mut out = Vec::new();
    match (k.letters.is_empty(), l.letters.is_empty()) {
        (true, true) => {
            let d = k.factors[0].intersect(&l.factors[0])?;
            if !d.is_empty() {
                out.push(Raw { factors: vec![d], letters: Vec::new() });
            }
        }
        (true, false) => {
            let b = l.letters[0];
            for (p, s) in letter_splits(&k.factors[0], b) {
                let front = l.factors[0].intersect(&p)?;
                if front.is_empty() {
                    continue;
                }
                let single = Raw { factors: vec![s], letters: Vec::new() };
                for r in intersect_rec(&single, &l.tail(), memo)? {
                    push_unique(&mut out, r.prefixed(front.clone(), b));
                }
            }
        }
        (false, true) => out = intersect_rec(l, k, memo)?,
        (false, false) => {
            let (a, b) = (k.letters[0], l.letters[0]);
            // The first marker of K comes first.
            for (p, s) in letter_splits(&l.factors[0], a) {
                let front = k.factors[0].intersect(&p)?;
                if front.is_empty() {
                    continue;
                }
                let shifted = l.tail().prefixed(s, b);
                for r in intersect_rec(&k.tail(), &shifted, memo)? {
                    push_unique(&mut out, r.prefixed(front.clone(), a));
                }
            }
            // The first marker of L comes first.
            for (p, s) in letter_splits(&k.factors[0], b) {
                let front = l.factors[0].intersect(&p)?;
                if front.is_empty() {
                    continue;
                }
                let shifted = k.tail().prefixed(s, a);
                for r in intersect_rec(&shifted, &l.tail(), memo)? {
                    push_unique(&mut out, r.prefixed(front.clone(), b));
                }
            }
            // Both markers coincide.
            if a == b {
                let front = k.factors[0].intersect(&l.factors[0])?;
                if !front.is_empty() {
                    for r in intersect_rec(&k.tail(), &l.tail(), memo)? {
                        push_unique(&mut out, r.prefixed(front.clone(), a));
                    }
                }
            }
        }
    }
    memo.insert((k.clone(), l.clone()), out.clone());
    Ok(out)
}

fn raw_of(m: &Monomial, class: &LanguageClass) -> Result<Raw> {
    let mut ev = crate::expr::Evaluator::new();
    let mut factors = Vec::new();
    for f in &m.factors {
        let d = ev.eval(f)?;
        if !in_class(class, &d)? {
            let name = match &f.node {
                crate::expr::Node::Lang { name, .. } => name.clone(),
                _ => format!("{}", f.tag),
            };
            return Err(Error::NotInBasis(name));
        }
        factors.push(d);
    }
    Ok(Raw { factors, letters: m.letters.clone() })
}

fn leaf(class: &LanguageClass, d: Dfa) -> LevelExpr {
    let name = match class.members() {
        Ok(ms) => class.index_of(&d).map(|i| ms[i].name.clone()),
        Err(_) => None,
    };
    LevelExpr::lang(Level::full(class.name(), 0), name.as_deref().unwrap_or("L"), d)
}

/// M1 ∩ M2 as a polynomial over the class, following the case split on
/// which first marker comes first. The union over words is indexed by the
/// finitely many quotients of the factors.
pub fn pol_intersect_rewrite(m1: &Monomial, m2: &Monomial, class: &LanguageClass) -> Result<PolyExpr> {
    class.require_lattice()?;
    class.require_quotienting()?;
    let (k, l) = (raw_of(m1, class)?, raw_of(m2, class)?);
    let raws = intersect_rec(&k, &l, &mut Memo::new())?;
    let mut out = PolyExpr::empty(class.alphabet());
    for r in raws {
        let factors = r.factors.into_iter().map(|d| leaf(class, d)).collect();
        out.monomials.push(Monomial::new(factors, r.letters)?);
    }
    if out.degree() > m1.degree() + m2.degree() {
        return Err(Error::Inconsistent("intersection degree above the sum of degrees".into()));
    }
    let want = m1.eval()?.intersect(&m2.eval()?)?;
    check("intersection", &out.eval()?, &want)?;
    Ok(out)
}

fn left_quotient_poly(l: &PolyExpr, a: Letter) -> Result<PolyExpr> {
    let mut out = PolyExpr::empty(&l.alphabet);
    for m in &l.monomials {
        out = out.union(&pol_quotient_rewrite(m, a, Side::Left)?);
    }
    Ok(out)
}

/// KL = ⋃_a K·a·(a⁻¹L), plus K when ε ∈ L.
pub fn pol_concat_rewrite(k: &PolyExpr, l: &PolyExpr) -> Result<PolyExpr> {
    let mut out = PolyExpr::empty(&k.alphabet);
    for a in k.alphabet.letters() {
        out = out.union(&k.times(a, &left_quotient_poly(l, a)?));
    }
    let ld = l.eval()?;
    if ld.accepts_epsilon() {
        out = out.union(k);
    }
    check("concatenation", &out.eval()?, &k.eval()?.concat(&ld)?)?;
    Ok(out)
}

/// K·w·L written with {ε} factors between the letters of w.
pub fn eps_chain(k: &PolyExpr, w: &Word, l: &PolyExpr, class: &LanguageClass) -> Result<PolyExpr> {
    let eps = Dfa::epsilon(class.alphabet());
    if !in_class(class, &eps)? {
        return Err(Error::EpsilonNotInBasis);
    }
    if w.is_empty() {
        return pol_concat_rewrite(k, l);
    }
    let e = PolyExpr::atom(class.alphabet(), LevelExpr::lang(Level::full(class.name(), 0), "eps", eps));
    let n = w.len();
    let mut out = k.clone();
    for &a in &w.0[..n - 1] {
        out = out.times(a, &e);
    }
    out = out.times(w.0[n - 1], l);
    let want = k.eval()?.concat(&Dfa::from_word(class.alphabet(), w))?.concat(&l.eval()?)?;
    check("word concatenation", &out.eval()?, &want)?;
    Ok(out)
}
