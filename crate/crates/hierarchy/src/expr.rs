//! Symbolic level expressions and polynomials.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use chier_regular::{Alphabet, Dfa, DfaJson, Letter};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A hierarchy level over a named basis, counted in halves: `halves = 2n`
/// is level n and `halves = 2n + 1` is level n + 1/2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Level {
    pub basis: String,
    pub halves: u32,
}

impl Level {
    pub fn new(basis: &str, halves: u32) -> Level {
        Level { basis: basis.to_string(), halves }
    }

    /// Level n.
    pub fn full(basis: &str, n: u32) -> Level {
        Level::new(basis, 2 * n)
    }

    /// Level n + 1/2.
    pub fn half(basis: &str, n: u32) -> Level {
        Level::new(basis, 2 * n + 1)
    }

    pub fn is_half(&self) -> bool {
        self.halves % 2 == 1
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_half() {
            write!(f, "{}[{}/2]", self.basis, self.halves)
        } else {
            write!(f, "{}[{}]", self.basis, self.halves / 2)
        }
    }
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Level> {
        let bad = || Error::BadExpression(format!("level tag {s:?}"));
        let (basis, rest) = s.split_once('[').ok_or_else(bad)?;
        let inner = rest.strip_suffix(']').ok_or_else(bad)?;
        let halves = match inner.split_once('/') {
            Some((num, "2")) => {
                let n: u32 = num.trim().parse().map_err(|_| bad())?;
                if n.is_multiple_of(2) {
                    return Err(bad());
                }
                n
            }
            Some(_) => return Err(bad()),
            None => 2 * inner.trim().parse::<u32>().map_err(|_| bad())?,
        };
        Ok(Level::new(basis.trim(), halves))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    /// A basis member, or a language the caller vouches for at the tag.
    Lang { name: String, dfa: Dfa },
    Union(Vec<LevelExpr>),
    Intersect(Vec<LevelExpr>),
    Complement(Box<LevelExpr>),
    MarkedConcat(Box<LevelExpr>, Letter, Box<LevelExpr>),
    Concat(Box<LevelExpr>, Box<LevelExpr>),
    Poly(PolyExpr),
}

/// A node of a symbolic hierarchy expression, tagged with the level it is
/// claimed to live at.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LevelExpr {
    pub tag: Level,
    pub node: Node,
}

impl LevelExpr {
    pub fn lang(tag: Level, name: &str, dfa: Dfa) -> LevelExpr {
        LevelExpr { tag, node: Node::Lang { name: name.to_string(), dfa } }
    }

    /// A named member of a class, tagged at level 0.
    pub fn member(class: &chier_classes::LanguageClass, name: &str) -> Result<LevelExpr> {
        let m = class.member_by_name(name).ok_or_else(|| Error::NotInBasis(name.to_string()))?;
        Ok(LevelExpr::lang(Level::full(class.name(), 0), &m.name, m.dfa.clone()))
    }

    pub fn union(tag: Level, args: Vec<LevelExpr>) -> LevelExpr {
        LevelExpr { tag, node: Node::Union(args) }
    }

    pub fn intersect(tag: Level, args: Vec<LevelExpr>) -> LevelExpr {
        LevelExpr { tag, node: Node::Intersect(args) }
    }

    pub fn complement(tag: Level, e: LevelExpr) -> LevelExpr {
        LevelExpr { tag, node: Node::Complement(Box::new(e)) }
    }

    pub fn marked_concat(tag: Level, x: LevelExpr, a: Letter, y: LevelExpr) -> LevelExpr {
        LevelExpr { tag, node: Node::MarkedConcat(Box::new(x), a, Box::new(y)) }
    }

    pub fn concat(tag: Level, x: LevelExpr, y: LevelExpr) -> LevelExpr {
        LevelExpr { tag, node: Node::Concat(Box::new(x), Box::new(y)) }
    }

    pub fn poly(tag: Level, p: PolyExpr) -> LevelExpr {
        LevelExpr { tag, node: Node::Poly(p) }
    }

    fn children(&self) -> Vec<&LevelExpr> {
        match &self.node {
            Node::Lang { .. } => Vec::new(),
            Node::Union(v) | Node::Intersect(v) => v.iter().collect(),
            Node::Complement(x) => vec![x],
            Node::MarkedConcat(x, _, y) | Node::Concat(x, y) => vec![x, y],
            Node::Poly(p) => p.monomials.iter().flat_map(|m| m.factors.iter()).collect(),
        }
    }

    fn check_tags(&self) -> Result<()> {
        let violation = |msg: String| Err(Error::TagViolation(format!("{msg} at {}", self.tag)));
        match &self.node {
            Node::Complement(_) if self.tag.is_half() => return violation("complement".into()),
            Node::MarkedConcat(..) | Node::Concat(..) | Node::Poly(_) if !self.tag.is_half() => {
                return violation("concatenation".into())
            }
            _ => {}
        }
        for c in self.children() {
            if c.tag.basis != self.tag.basis {
                return violation(format!("child over basis {}", c.tag.basis));
            }
            if c.tag.halves > self.tag.halves {
                return violation(format!("child at {}", c.tag));
            }
        }
        Ok(())
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> ExprJson {
        let mut j = ExprJson::new("", &self.tag.to_string());
        match &self.node {
            Node::Lang { name, dfa } => {
                j.op = "lang".into();
                j.name = Some(name.clone());
                j.dfa = Some(DfaJson::from(dfa));
            }
            Node::Union(v) => {
                j.op = "union".into();
                j.args = v.iter().map(|e| e.to_json(alphabet)).collect();
            }
            Node::Intersect(v) => {
                j.op = "intersect".into();
                j.args = v.iter().map(|e| e.to_json(alphabet)).collect();
            }
            Node::Complement(x) => {
                j.op = "complement".into();
                j.args = vec![x.to_json(alphabet)];
            }
            Node::MarkedConcat(x, a, y) => {
                j.op = "marked-concat".into();
                j.letter = Some(alphabet.symbol(*a));
                j.args = vec![x.to_json(alphabet), y.to_json(alphabet)];
            }
            Node::Concat(x, y) => {
                j.op = "concat".into();
                j.args = vec![x.to_json(alphabet), y.to_json(alphabet)];
            }
            Node::Poly(p) => {
                j.op = "poly".into();
                j.monomials = p.monomials.iter().map(|m| m.to_json(alphabet)).collect();
            }
        }
        j
    }

    pub fn from_json(j: &ExprJson, alphabet: &Alphabet) -> Result<LevelExpr> {
        let tag: Level = j.tag.parse()?;
        let args = j.args.iter().map(|a| LevelExpr::from_json(a, alphabet)).collect::<Result<Vec<_>>>()?;
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(Error::BadExpression(format!("{} takes {n} arguments", j.op)))
            }
        };
        let node = match j.op.as_str() {
            "lang" => {
                let dfa = j.dfa.clone().ok_or_else(|| Error::BadExpression("lang without dfa".into()))?;
                let dfa = Dfa::try_from(dfa)?.minimize();
                if dfa.alphabet() != alphabet {
                    return Err(chier_regular::Error::AlphabetMismatch.into());
                }
                Node::Lang { name: j.name.clone().unwrap_or_default(), dfa }
            }
            "union" => Node::Union(args),
            "intersect" => Node::Intersect(args),
            "complement" => {
                arity(1)?;
                Node::Complement(Box::new(args.into_iter().next().unwrap()))
            }
            "marked-concat" => {
                arity(2)?;
                let c = j.letter.ok_or_else(|| Error::BadExpression("marked-concat without letter".into()))?;
                let a = alphabet.letter(c)?;
                let mut it = args.into_iter();
                Node::MarkedConcat(Box::new(it.next().unwrap()), a, Box::new(it.next().unwrap()))
            }
            "concat" => {
                arity(2)?;
                let mut it = args.into_iter();
                Node::Concat(Box::new(it.next().unwrap()), Box::new(it.next().unwrap()))
            }
            "poly" => Node::Poly(PolyExpr::from_json_monomials(&j.monomials, alphabet)?),
            other => return Err(Error::BadExpression(format!("unknown op {other:?}"))),
        };
        Ok(LevelExpr { tag, node })
    }
}

/// L_0 a_1 L_1 ⋯ a_n L_n
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub factors: Vec<LevelExpr>,
    pub letters: Vec<Letter>,
}

impl Monomial {
    pub fn new(factors: Vec<LevelExpr>, letters: Vec<Letter>) -> Result<Monomial> {
        if factors.len() != letters.len() + 1 {
            return Err(Error::BadExpression(format!(
                "monomial with {} factors and {} letters",
                factors.len(),
                letters.len()
            )));
        }
        Ok(Monomial { factors, letters })
    }

    pub fn atom(f: LevelExpr) -> Monomial {
        Monomial { factors: vec![f], letters: Vec::new() }
    }

    pub fn degree(&self) -> usize {
        self.letters.len()
    }

    /// self · a · other
    pub fn marked(&self, a: Letter, other: &Monomial) -> Monomial {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        let mut letters = self.letters.clone();
        letters.push(a);
        letters.extend(other.letters.iter().copied());
        Monomial { factors, letters }
    }

    pub fn eval(&self) -> Result<Dfa> {
        Evaluator::new().eval_monomial(self)
    }

    fn to_json(&self, alphabet: &Alphabet) -> MonomialJson {
        MonomialJson {
            factors: self.factors.iter().map(|f| f.to_json(alphabet)).collect(),
            letters: self.letters.iter().map(|&a| alphabet.symbol(a)).collect(),
        }
    }
}

/// A finite union of monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyExpr {
    pub alphabet: Alphabet,
    pub monomials: Vec<Monomial>,
}

impl PolyExpr {
    pub fn empty(alphabet: &Alphabet) -> PolyExpr {
        PolyExpr { alphabet: alphabet.clone(), monomials: Vec::new() }
    }

    pub fn new(alphabet: &Alphabet, monomials: Vec<Monomial>) -> PolyExpr {
        PolyExpr { alphabet: alphabet.clone(), monomials }
    }

    pub fn single(alphabet: &Alphabet, m: Monomial) -> PolyExpr {
        PolyExpr::new(alphabet, vec![m])
    }

    pub fn atom(alphabet: &Alphabet, f: LevelExpr) -> PolyExpr {
        PolyExpr::single(alphabet, Monomial::atom(f))
    }

    pub fn degree(&self) -> usize {
        self.monomials.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn union(&self, other: &PolyExpr) -> PolyExpr {
        let mut monomials = self.monomials.clone();
        for m in &other.monomials {
            if !monomials.contains(m) {
                monomials.push(m.clone());
            }
        }
        PolyExpr::new(&self.alphabet, monomials)
    }

    /// self · a · other, distributed over the monomials.
    pub fn times(&self, a: Letter, other: &PolyExpr) -> PolyExpr {
        let mut monomials = Vec::new();
        for m in &self.monomials {
            for n in &other.monomials {
                let p = m.marked(a, n);
                if !monomials.contains(&p) {
                    monomials.push(p);
                }
            }
        }
        PolyExpr::new(&self.alphabet, monomials)
    }

    pub fn eval(&self) -> Result<Dfa> {
        Evaluator::new().eval_poly(self)
    }

    /// Inlines factors that are themselves polynomial nodes.
    pub fn flatten(&self) -> PolyExpr {
        let mut out = PolyExpr::empty(&self.alphabet);
        for m in &self.monomials {
            let mut acc: Option<PolyExpr> = None;
            for (i, f) in m.factors.iter().enumerate() {
                let piece = match &f.node {
                    Node::Poly(p) => p.flatten(),
                    _ => PolyExpr::atom(&self.alphabet, f.clone()),
                };
                acc = Some(match acc {
                    None => piece,
                    Some(a) => a.times(m.letters[i - 1], &piece),
                });
            }
            out = out.union(&acc.expect("monomials have a factor"));
        }
        out
    }

    pub fn into_level(self, tag: Level) -> LevelExpr {
        LevelExpr::poly(tag, self)
    }

    pub fn to_json(&self) -> ExprJson {
        let mut j = ExprJson::new("poly", "");
        j.alphabet = Some(self.alphabet.to_string());
        j.monomials = self.monomials.iter().map(|m| m.to_json(&self.alphabet)).collect();
        j
    }

    fn from_json_monomials(ms: &[MonomialJson], alphabet: &Alphabet) -> Result<PolyExpr> {
        let mut monomials = Vec::new();
        for m in ms {
            let factors = m.factors.iter().map(|f| LevelExpr::from_json(f, alphabet)).collect::<Result<Vec<_>>>()?;
            let letters = m.letters.chars().map(|c| alphabet.letter(c)).collect::<chier_regular::Result<Vec<_>>>()?;
            monomials.push(Monomial::new(factors, letters)?);
        }
        Ok(PolyExpr::new(alphabet, monomials))
    }

    pub fn from_json(j: &ExprJson) -> Result<PolyExpr> {
        if j.op != "poly" {
            return Err(Error::BadExpression(format!("expected poly, found {:?}", j.op)));
        }
        let alphabet = Alphabet::parse(j.alphabet.as_deref().unwrap_or(""))?;
        PolyExpr::from_json_monomials(&j.monomials, &alphabet)
    }
}

/// Expression JSON: nested `{op, tag, args | monomials}` objects.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExprJson {
    pub op: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub tag: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub letter: Option<char>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dfa: Option<DfaJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub args: Vec<ExprJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub monomials: Vec<MonomialJson>,
}

impl ExprJson {
    fn new(op: &str, tag: &str) -> ExprJson {
        ExprJson {
            op: op.into(),
            tag: tag.into(),
            alphabet: None,
            name: None,
            letter: None,
            dfa: None,
            args: Vec::new(),
            monomials: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialJson {
    pub factors: Vec<ExprJson>,
    pub letters: String,
}

/// Evaluates expressions to canonical automata, caching by structure.
#[derive(Debug, Default)]
pub struct Evaluator {
    cache: HashMap<LevelExpr, Dfa>,
    hits: usize,
}

impl Evaluator {
    pub fn new() -> Evaluator {
        Evaluator::default()
    }

    pub fn cache_hits(&self) -> usize {
        self.hits
    }

    pub fn eval(&mut self, e: &LevelExpr) -> Result<Dfa> {
        if let Some(d) = self.cache.get(e) {
            self.hits += 1;
            return Ok(d.clone());
        }
        e.check_tags()?;
        let d = match &e.node {
            Node::Lang { dfa, .. } => dfa.minimize(),
            Node::Union(v) => self.fold(v, true)?,
            Node::Intersect(v) => self.fold(v, false)?,
            Node::Complement(x) => self.eval(x)?.complement(),
            Node::MarkedConcat(x, a, y) => self.eval(x)?.marked_concat(*a, &self.eval(y)?)?,
            Node::Concat(x, y) => self.eval(x)?.concat(&self.eval(y)?)?,
            Node::Poly(p) => self.eval_poly(p)?,
        };
        self.cache.insert(e.clone(), d.clone());
        Ok(d)
    }

    fn fold(&mut self, args: &[LevelExpr], union: bool) -> Result<Dfa> {
        let first = args.first().ok_or_else(|| Error::BadExpression("empty union or intersection".into()))?;
        let mut acc = self.eval(first)?;
        for e in &args[1..] {
            let d = self.eval(e)?;
            acc = if union { acc.union(&d)? } else { acc.intersect(&d)? };
        }
        Ok(acc)
    }

    pub fn eval_monomial(&mut self, m: &Monomial) -> Result<Dfa> {
        let mut acc = self.eval(&m.factors[0])?;
        for (a, f) in m.letters.iter().zip(&m.factors[1..]) {
            acc = acc.marked_concat(*a, &self.eval(f)?)?;
        }
        Ok(acc)
    }

    pub fn eval_poly(&mut self, p: &PolyExpr) -> Result<Dfa> {
        let mut acc = Dfa::empty(&p.alphabet);
        for m in &p.monomials {
            acc = acc.union(&self.eval_monomial(m)?)?;
        }
        Ok(acc)
    }
}

/// Canonical automaton of a tagged expression.
pub fn eval_level(e: &LevelExpr) -> Result<Dfa> {
    Evaluator::new().eval(e)
}
