//! Complements of piecewise monomials as polynomials over unions of B*,
//! and the rewriting of level-3/2 Straubing-Thérien expressions into that
//! form.

use chier_classes::{basis, in_class, BasisKind, LanguageClass};
use chier_regular::{Alphabet, Dfa, Letter};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{eval_level, Level, LevelExpr, Monomial, Node, PolyExpr};
use crate::rewrite::pol_intersect_rewrite;

/// A*a_1A*⋯a_nA*
pub fn piece(alphabet: &Alphabet, letters: &[Letter]) -> Result<Dfa> {
    let all = Dfa::universal(alphabet);
    let mut d = all.clone();
    for &a in letters {
        d = d.marked_concat(a, &all)?;
    }
    Ok(d)
}

/// The same piece as a monomial with A* factors over `basis_name`.
pub fn piece_expr(basis_name: &str, alphabet: &Alphabet, letters: &[Letter]) -> PolyExpr {
    let star = LevelExpr::lang(Level::full(basis_name, 0), "Astar", Dfa::universal(alphabet));
    let factors = vec![star; letters.len() + 1];
    PolyExpr::single(alphabet, Monomial { factors, letters: letters.to_vec() })
}

fn avoid_star(alphabet: &Alphabet, a: Letter) -> LevelExpr {
    let rest: Vec<Letter> = alphabet.letters().filter(|&b| b != a).collect();
    let name: String = rest.iter().map(|&b| alphabet.symbol(b)).collect();
    LevelExpr::lang(Level::full("wat", 0), &format!("{{{name}}}*"), Dfa::subset_star(alphabet, &rest))
}

/// A* \ A*a_1A*⋯a_nA* as a polynomial over WAT, by the recursion
/// H_1 = (A\{a_1})*, H_k = (A\{a_k})* ∪ H_{k−1}·a_k·(A\{a_k})*.
pub fn piece_complement(letters: &[Letter], alphabet: &Alphabet) -> Result<PolyExpr> {
    for &a in letters {
        if a as usize >= alphabet.len() {
            return Err(chier_regular::Error::LetterOutOfRange(a as usize).into());
        }
    }
    let mut h = PolyExpr::empty(alphabet);
    for (i, &a) in letters.iter().enumerate() {
        let star = PolyExpr::atom(alphabet, avoid_star(alphabet, a));
        h = if i == 0 { star } else { star.union(&h.times(a, &star)) };
    }
    let got = h.eval()?;
    if got != piece(alphabet, letters)?.complement() {
        return Err(Error::Inconsistent("piece complement differs from the direct complement".into()));
    }
    Ok(h)
}

/// The pieces whose union `e` denotes, when `e` is a polynomial over A*
/// (or A* or ∅ itself).
fn as_pieces(e: &LevelExpr) -> Result<Option<Vec<Vec<Letter>>>> {
    match &e.node {
        Node::Lang { dfa, .. } if dfa.is_universal() => Ok(Some(vec![Vec::new()])),
        Node::Lang { dfa, .. } if dfa.is_empty() => Ok(Some(Vec::new())),
        Node::Poly(p) => {
            let mut out = Vec::new();
            for m in &p.monomials {
                for f in &m.factors {
                    if !eval_level(f)?.is_universal() {
                        return Ok(None);
                    }
                }
                out.push(m.letters.clone());
            }
            Ok(Some(out))
        }
        Node::MarkedConcat(x, a, y) => {
            if eval_level(x)?.is_universal() && eval_level(y)?.is_universal() {
                Ok(Some(vec![vec![*a]]))
            } else {
                Ok(None)
            }
        }
        _ => Ok(None),
    }
}

fn intersect_polys(x: &PolyExpr, y: &PolyExpr, wat: &LanguageClass) -> Result<PolyExpr> {
    let mut out = PolyExpr::empty(&x.alphabet);
    for m in &x.monomials {
        for n in &y.monomials {
            out = out.union(&pol_intersect_rewrite(m, n, wat)?);
        }
    }
    Ok(out)
}

fn fold_polys(parts: Vec<PolyExpr>, meet: bool, wat: &LanguageClass) -> Result<PolyExpr> {
    let mut it = parts.into_iter();
    let first = it.next().ok_or_else(|| Error::BadExpression("empty union or intersection".into()))?;
    it.try_fold(first, |acc, p| if meet { intersect_polys(&acc, &p, wat) } else { Ok(acc.union(&p)) })
}

struct Converter {
    alphabet: Alphabet,
    wat: LanguageClass,
}

impl Converter {
    fn positive(&self, e: &LevelExpr) -> Result<PolyExpr> {
        match &e.node {
            Node::Lang { name, dfa } => {
                if !in_class(&self.wat, dfa)? {
                    return Err(Error::NotInBasis(name.clone()));
                }
                if dfa.is_empty() {
                    return Ok(PolyExpr::empty(&self.alphabet));
                }
                Ok(PolyExpr::atom(&self.alphabet, LevelExpr::lang(Level::full("wat", 0), name, dfa.clone())))
            }
            Node::Union(v) => {
                let parts = v.iter().map(|x| self.positive(x)).collect::<Result<Vec<_>>>()?;
                fold_polys(parts, false, &self.wat)
            }
            Node::Intersect(v) => {
                let parts = v.iter().map(|x| self.positive(x)).collect::<Result<Vec<_>>>()?;
                fold_polys(parts, true, &self.wat)
            }
            Node::Complement(x) => self.negative(x),
            Node::MarkedConcat(x, a, y) => Ok(self.positive(x)?.times(*a, &self.positive(y)?)),
            Node::Concat(..) => Err(Error::NotInFragment("unmarked concatenation".into())),
            Node::Poly(p) => {
                let mut out = PolyExpr::empty(&self.alphabet);
                for m in &p.monomials {
                    let mut acc = self.positive(&m.factors[0])?;
                    for (a, f) in m.letters.iter().zip(&m.factors[1..]) {
                        acc = acc.times(*a, &self.positive(f)?);
                    }
                    out = out.union(&acc);
                }
                Ok(out)
            }
        }
    }

    /// The complement of `e`, pushed down to complements of pieces.
    fn negative(&self, e: &LevelExpr) -> Result<PolyExpr> {
        if let Some(pieces) = as_pieces(e)? {
            let parts = pieces.iter().map(|p| piece_complement(p, &self.alphabet)).collect::<Result<Vec<_>>>()?;
            if parts.is_empty() {
                return self.positive(&LevelExpr::lang(e.tag.clone(), "Astar", Dfa::universal(&self.alphabet)));
            }
            return fold_polys(parts, true, &self.wat);
        }
        match &e.node {
            Node::Complement(x) => self.positive(x),
            Node::Union(v) => {
                let parts = v.iter().map(|x| self.negative(x)).collect::<Result<Vec<_>>>()?;
                fold_polys(parts, true, &self.wat)
            }
            Node::Intersect(v) => {
                let parts = v.iter().map(|x| self.negative(x)).collect::<Result<Vec<_>>>()?;
                fold_polys(parts, false, &self.wat)
            }
            _ => Err(Error::NotInFragment(format!("complement of a {} node that is not a union of pieces", e.tag))),
        }
    }
}

/// Rewrites a level-3/2 expression over st0, whose complements apply to
/// unions of pieces, into a polynomial over WAT. The result is checked for
/// DFA equality with the input.
pub fn to_pol_wat(e: &LevelExpr, alphabet: &Alphabet) -> Result<PolyExpr> {
    let conv = Converter { alphabet: alphabet.clone(), wat: basis(BasisKind::Wat, alphabet)? };
    let out = conv.positive(e)?;
    if out.eval()? != eval_level(e)? {
        return Err(Error::Inconsistent("alphabet trick rewrite differs from the input".into()));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct TrickEntry {
    pub sample: String,
    pub monomials: usize,
    pub degree: usize,
    /// Every factor of the output is a WAT member.
    pub wat_factors: bool,
    pub dfa_equal: bool,
    /// Agreement on all words up to the length bound.
    pub words_agree: bool,
    pub error: Option<String>,
}

impl TrickEntry {
    pub fn pass(&self) -> bool {
        self.error.is_none() && self.wat_factors && self.dfa_equal && self.words_agree
    }
}

/// Sample level-3/2 expressions over {a, b, …}: complements of pieces,
/// products of such complements, and A⁺.
pub fn default_trick_samples(alphabet: &Alphabet) -> Result<Vec<(String, LevelExpr)>> {
    if alphabet.len() < 2 {
        return Err(Error::AlphabetTooSmall(alphabet.len()));
    }
    let (a, b) = (0, 1);
    let one = Level::full("st0", 1);
    let half = Level::half("st0", 0);
    let three = Level::half("st0", 1);
    let p = |ls: &[Letter]| piece_expr("st0", alphabet, ls).into_level(half.clone());
    let co = |ls: &[Letter]| LevelExpr::complement(one.clone(), p(ls));
    let mut aplus = PolyExpr::empty(alphabet);
    for c in alphabet.letters() {
        aplus = aplus.union(&piece_expr("st0", alphabet, &[c]));
    }
    Ok(vec![
        ("co(A*aA*)".into(), co(&[a])),
        ("co(A*aA*bA*)".into(), co(&[a, b])),
        ("A+".into(), aplus.into_level(three.clone())),
        (
            "co(A*aA*) b co(A*bA*)".into(),
            LevelExpr::poly(three.clone(), PolyExpr::single(alphabet, Monomial { factors: vec![co(&[a]), co(&[b])], letters: vec![b] })),
        ),
        (
            "co(A*abA* ∪ A*baA*)".into(),
            LevelExpr::complement(
                one.clone(),
                piece_expr("st0", alphabet, &[a, b]).union(&piece_expr("st0", alphabet, &[b, a])).into_level(half.clone()),
            ),
        ),
        (
            "co(A*aA*) ∩ co(A*bbA*)".into(),
            LevelExpr::intersect(one.clone(), vec![co(&[a]), co(&[b, b])]),
        ),
        (
            "A* a co(A*abA*)".into(),
            LevelExpr::poly(
                three,
                PolyExpr::single(
                    alphabet,
                    Monomial { factors: vec![LevelExpr::lang(Level::full("st0", 0), "Astar", Dfa::universal(alphabet)), co(&[a, b])], letters: vec![a] },
                ),
            ),
        ),
    ])
}

/// Rewrites each sample into a WAT polynomial and checks it.
pub fn alphabet_trick_check(samples: &[(String, LevelExpr)], alphabet: &Alphabet, maxlen: usize) -> Result<Vec<TrickEntry>> {
    let wat = basis(BasisKind::Wat, alphabet)?;
    let words = alphabet.words_up_to(maxlen);
    let mut out = Vec::new();
    for (name, e) in samples {
        let mut entry = TrickEntry {
            sample: name.clone(),
            monomials: 0,
            degree: 0,
            wat_factors: false,
            dfa_equal: false,
            words_agree: false,
            error: None,
        };
        match to_pol_wat(e, alphabet) {
            Ok(p) => {
                let want = eval_level(e)?;
                let got = p.eval()?;
                entry.monomials = p.monomials.len();
                entry.degree = p.degree();
                entry.wat_factors = p
                    .monomials
                    .iter()
                    .flat_map(|m| &m.factors)
                    .all(|f| eval_level(f).and_then(|d| Ok(in_class(&wat, &d)?)).unwrap_or(false));
                entry.dfa_equal = got == want;
                entry.words_agree = words.iter().all(|w| got.accepts(w) == want.accepts(w));
            }
            Err(e) => entry.error = Some(e.to_string()),
        }
        out.push(entry);
    }
    Ok(out)
}
