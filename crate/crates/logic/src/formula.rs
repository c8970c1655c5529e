//! Formulas over words, their text syntax and basic syntactic operations.

use std::collections::BTreeSet;

use chier_classes::{BasisKind, LanguageClass};
use chier_regular::{Alphabet, Dfa, Letter};

use crate::error::{Error, Result};

pub type Var = String;

/// A class member referenced by a predicate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LangRef {
    pub name: String,
    pub dfa: Dfa,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Label(Letter, Var),
    Eq(Var, Var),
    /// x < y and the infix strictly between them is in L.
    Infix(LangRef, Var, Var),
    /// The prefix before x is in L.
    Prefix(LangRef, Var),
    /// The suffix after x is in L.
    Suffix(LangRef, Var),
    /// The whole word is in L.
    Whole(LangRef),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Exists(Var, Box<Formula>),
    Forall(Var, Box<Formula>),
}

impl Formula {
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(f: Formula, g: Formula) -> Formula {
        Formula::And(Box::new(f), Box::new(g))
    }

    pub fn or(f: Formula, g: Formula) -> Formula {
        Formula::Or(Box::new(f), Box::new(g))
    }

    pub fn exists(x: &str, f: Formula) -> Formula {
        Formula::Exists(x.to_string(), Box::new(f))
    }

    pub fn forall(x: &str, f: Formula) -> Formula {
        Formula::Forall(x.to_string(), Box::new(f))
    }

    /// Conjunction of all items, `true` when empty.
    pub fn all(items: impl IntoIterator<Item = Formula>) -> Formula {
        items.into_iter().reduce(Formula::and).unwrap_or(Formula::True)
    }

    /// Disjunction of all items, `false` when empty.
    pub fn any(items: impl IntoIterator<Item = Formula>) -> Formula {
        items.into_iter().reduce(Formula::or).unwrap_or(Formula::False)
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        let mut see = |v: &Var| {
            if !bound.contains(v) {
                out.insert(v.clone());
            }
        };
        match self {
            Formula::True | Formula::False | Formula::Whole(_) => {}
            Formula::Label(_, x) | Formula::Prefix(_, x) | Formula::Suffix(_, x) => see(x),
            Formula::Eq(x, y) | Formula::Infix(_, x, y) => {
                see(x);
                see(y);
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(f, g) | Formula::Or(f, g) => {
                f.collect_free(bound, out);
                g.collect_free(bound, out);
            }
            Formula::Exists(x, f) | Formula::Forall(x, f) => {
                bound.push(x.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// All variable names, free or bound.
    pub fn var_names(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Label(_, x) | Formula::Prefix(_, x) | Formula::Suffix(_, x) => {
                out.insert(x.clone());
            }
            Formula::Eq(x, y) | Formula::Infix(_, x, y) => {
                out.insert(x.clone());
                out.insert(y.clone());
            }
            Formula::Exists(x, _) | Formula::Forall(x, _) => {
                out.insert(x.clone());
            }
            _ => {}
        });
        out
    }

    fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            Formula::Not(g) | Formula::Exists(_, g) | Formula::Forall(_, g) => g.visit(f),
            Formula::And(g, h) | Formula::Or(g, h) => {
                g.visit(f);
                h.visit(f);
            }
            _ => {}
        }
    }

    /// Negation normal form: negations only on atoms.
    pub fn nnf(&self) -> Formula {
        self.nnf_signed(true)
    }

    fn nnf_signed(&self, positive: bool) -> Formula {
        match (self, positive) {
            (Formula::Not(f), _) => f.nnf_signed(!positive),
            (Formula::And(f, g), true) => Formula::and(f.nnf_signed(true), g.nnf_signed(true)),
            (Formula::And(f, g), false) => Formula::or(f.nnf_signed(false), g.nnf_signed(false)),
            (Formula::Or(f, g), true) => Formula::or(f.nnf_signed(true), g.nnf_signed(true)),
            (Formula::Or(f, g), false) => Formula::and(f.nnf_signed(false), g.nnf_signed(false)),
            (Formula::Exists(x, f), true) => Formula::exists(x, f.nnf_signed(true)),
            (Formula::Exists(x, f), false) => Formula::forall(x, f.nnf_signed(false)),
            (Formula::Forall(x, f), true) => Formula::forall(x, f.nnf_signed(true)),
            (Formula::Forall(x, f), false) => Formula::exists(x, f.nnf_signed(false)),
            (Formula::True, false) => Formula::False,
            (Formula::False, false) => Formula::True,
            (atom, true) => atom.clone(),
            (atom, false) => Formula::not(atom.clone()),
        }
    }

    /// Renames free occurrences of `from` to `to`.
    pub fn rename(&self, from: &str, to: &str) -> Formula {
        let r = |v: &Var| if v == from { to.to_string() } else { v.clone() };
        match self {
            Formula::True | Formula::False | Formula::Whole(_) => self.clone(),
            Formula::Label(a, x) => Formula::Label(*a, r(x)),
            Formula::Eq(x, y) => Formula::Eq(r(x), r(y)),
            Formula::Infix(l, x, y) => Formula::Infix(l.clone(), r(x), r(y)),
            Formula::Prefix(l, x) => Formula::Prefix(l.clone(), r(x)),
            Formula::Suffix(l, x) => Formula::Suffix(l.clone(), r(x)),
            Formula::Not(f) => Formula::not(f.rename(from, to)),
            Formula::And(f, g) => Formula::and(f.rename(from, to), g.rename(from, to)),
            Formula::Or(f, g) => Formula::or(f.rename(from, to), g.rename(from, to)),
            Formula::Exists(x, _) | Formula::Forall(x, _) if x == from => self.clone(),
            Formula::Exists(x, f) => Formula::exists(x, f.rename(from, to)),
            Formula::Forall(x, f) => Formula::forall(x, f.rename(from, to)),
        }
    }

    /// Applies `m` to the variables of an atom; other formulas are returned
    /// unchanged.
    pub fn map_atom_vars(&self, m: &impl Fn(&Var) -> Var) -> Formula {
        match self {
            Formula::Label(a, x) => Formula::Label(*a, m(x)),
            Formula::Eq(x, y) => Formula::Eq(m(x), m(y)),
            Formula::Infix(l, x, y) => Formula::Infix(l.clone(), m(x), m(y)),
            Formula::Prefix(l, x) => Formula::Prefix(l.clone(), m(x)),
            Formula::Suffix(l, x) => Formula::Suffix(l.clone(), m(x)),
            Formula::Not(g) => Formula::not(g.map_atom_vars(m)),
            other => other.clone(),
        }
    }

    /// Text in the input syntax.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        self.render_prec(alphabet, 0)
    }

    fn render_prec(&self, alphabet: &Alphabet, prec: u8) -> String {
        let (text, mine) = match self {
            Formula::True => ("true".to_string(), 3),
            Formula::False => ("false".to_string(), 3),
            Formula::Label(a, x) => (format!("{}({x})", alphabet.symbol(*a)), 3),
            Formula::Eq(x, y) => (format!("eq({x},{y})"), 3),
            Formula::Infix(l, x, y) => (format!("I{{{}}}({x},{y})", l.name), 3),
            Formula::Prefix(l, x) => (format!("P{{{}}}({x})", l.name), 3),
            Formula::Suffix(l, x) => (format!("S{{{}}}({x})", l.name), 3),
            Formula::Whole(l) => (format!("N{{{}}}", l.name), 3),
            Formula::Not(f) => (format!("!{}", f.render_prec(alphabet, 3)), 3),
            Formula::And(f, g) => (format!("{} & {}", f.render_prec(alphabet, 2), g.render_prec(alphabet, 3)), 2),
            Formula::Or(f, g) => (format!("{} | {}", f.render_prec(alphabet, 1), g.render_prec(alphabet, 2)), 1),
            Formula::Exists(x, f) => (format!("exists {x}. {}", f.render_prec(alphabet, 0)), 0),
            Formula::Forall(x, f) => (format!("forall {x}. {}", f.render_prec(alphabet, 0)), 0),
        };
        if mine < prec {
            format!("({text})")
        } else {
            text
        }
    }
}

/// A predicate alias of a derived signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alias {
    pub name: &'static str,
    pub arity: usize,
    /// The predicate it stands for, in the input syntax.
    pub expansion: &'static str,
}

/// Aliases available over st0 and dd0.
pub fn derived_signature(kind: BasisKind) -> Result<Vec<Alias>> {
    let lt = Alias { name: "<", arity: 2, expansion: "I{Astar}(x,y)" };
    match kind {
        BasisKind::St0 => Ok(vec![lt]),
        BasisKind::Dd0 => Ok(vec![
            lt,
            Alias { name: "+1", arity: 2, expansion: "I{eps}(x,y)" },
            Alias { name: "min", arity: 1, expansion: "P{eps}(x)" },
            Alias { name: "max", arity: 1, expansion: "S{eps}(x)" },
            Alias { name: "epsilon", arity: 0, expansion: "N{eps}" },
        ]),
        other => Err(Error::UnknownBasis(other.name())),
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    class: &'a LanguageClass,
    aliases: Vec<Alias>,
}

const KEYWORDS: &[&str] = &["exists", "forall", "true", "false", "eq", "min", "max", "epsilon"];

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { position: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected {c:?}"))
        }
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while let Some(&c) = self.chars.get(self.pos) {
            let ok = if self.pos == start { c.is_alphabetic() || c == '_' } else { c.is_alphanumeric() || c == '_' || c == '\'' };
            if !ok {
                break;
            }
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn var(&mut self) -> Result<Var> {
        let save = self.pos;
        match self.ident() {
            Some(v) if !KEYWORDS.contains(&v.as_str()) => Ok(v),
            _ => {
                self.pos = save;
                self.err("expected a variable")
            }
        }
    }

    fn keyword_ahead(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let n = kw.chars().count();
        let matches = self.chars.len() >= self.pos + n && self.chars[self.pos..self.pos + n].iter().copied().eq(kw.chars());
        let boundary = self.peek_at(n).is_none_or(|c| !(c.is_alphanumeric() || c == '_' || c == '\''));
        matches && boundary
    }

    fn formula(&mut self) -> Result<Formula> {
        let mut f = self.conjunction()?;
        while self.eat('|') {
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while self.eat('&') {
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat('!') {
            return Ok(Formula::not(self.unary()?));
        }
        if self.eat('(') {
            let f = self.formula()?;
            self.expect(')')?;
            return Ok(f);
        }
        for (kw, universal) in [("exists", false), ("forall", true)] {
            if self.keyword_ahead(kw) {
                self.pos += kw.len();
                let x = self.var()?;
                self.expect('.')?;
                let body = self.formula()?;
                return Ok(if universal { Formula::forall(&x, body) } else { Formula::exists(&x, body) });
            }
        }
        self.atom()
    }

    fn language(&mut self) -> Result<LangRef> {
        self.expect('{')?;
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos] != '}' {
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().collect::<String>().trim().to_string();
        self.expect('}')?;
        self.lookup(&name)
    }

    fn lookup(&self, name: &str) -> Result<LangRef> {
        let m = self.class.member_by_name(name).ok_or_else(|| Error::UnknownLanguage(name.to_string()))?;
        Ok(LangRef { name: m.name.clone(), dfa: m.dfa.clone() })
    }

    fn args(&mut self, n: usize) -> Result<Vec<Var>> {
        self.expect('(')?;
        let mut out = vec![self.var()?];
        for _ in 1..n {
            self.expect(',')?;
            out.push(self.var()?);
        }
        self.expect(')')?;
        Ok(out)
    }

    fn alias(&mut self, name: &str) -> Result<Formula> {
        let alias = self.aliases.iter().find(|a| a.name == name).cloned();
        let Some(alias) = alias else {
            return Err(Error::UnknownPredicate(name.to_string()));
        };
        let args = if alias.arity == 0 { Vec::new() } else { self.args(alias.arity)? };
        Ok(match name {
            "<" => Formula::Infix(self.lookup("Astar")?, args[0].clone(), args[1].clone()),
            "+1" => Formula::Infix(self.lookup("eps")?, args[0].clone(), args[1].clone()),
            "min" => Formula::Prefix(self.lookup("eps")?, args[0].clone()),
            "max" => Formula::Suffix(self.lookup("eps")?, args[0].clone()),
            _ => Formula::Whole(self.lookup("eps")?),
        })
    }

    fn atom(&mut self) -> Result<Formula> {
        let Some(c) = self.peek() else {
            return self.err("unexpected end of input");
        };
        if c == '<' {
            self.pos += 1;
            return self.alias("<");
        }
        if c == '+' {
            if self.peek_at(1) == Some('1') {
                self.pos += 2;
                return self.alias("+1");
            }
            return self.err("expected +1");
        }
        // A letter predicate a(x) takes precedence over identifiers.
        if self.peek_at(1).is_some_and(|n| n == '(' || n.is_whitespace() && self.next_non_ws(1) == Some('(')) {
            if let Some(a) = self.class.alphabet().index_of(c) {
                self.pos += 1;
                let x = self.args(1)?;
                return Ok(Formula::Label(a, x[0].clone()));
            }
        }
        if matches!(c, 'I' | 'P' | 'S' | 'N') && self.peek_at(1) == Some('{') {
            self.pos += 1;
            let l = self.language()?;
            return Ok(match c {
                'I' => {
                    let v = self.args(2)?;
                    Formula::Infix(l, v[0].clone(), v[1].clone())
                }
                'P' => Formula::Prefix(l, self.args(1)?.remove(0)),
                'S' => Formula::Suffix(l, self.args(1)?.remove(0)),
                _ => Formula::Whole(l),
            });
        }
        let save = self.pos;
        match self.ident().as_deref() {
            Some("true") => Ok(Formula::True),
            Some("false") => Ok(Formula::False),
            Some("eq") => {
                let v = self.args(2)?;
                Ok(Formula::Eq(v[0].clone(), v[1].clone()))
            }
            Some(name @ ("min" | "max" | "epsilon")) => {
                let name = name.to_string();
                self.alias(&name)
            }
            Some(other) if self.peek() == Some('(') => {
                let mut chars = other.chars();
                match (chars.next(), chars.next()) {
                    (Some(ch), None) => Err(Error::UnknownLetter(ch)),
                    _ => Err(Error::UnknownPredicate(other.to_string())),
                }
            }
            _ => {
                self.pos = save;
                if !c.is_alphanumeric() && self.peek_at(1) == Some('(') {
                    return Err(Error::UnknownLetter(c));
                }
                self.err("expected an atomic formula")
            }
        }
    }

    fn next_non_ws(&self, from: usize) -> Option<char> {
        self.chars[self.pos + from..].iter().copied().find(|c| !c.is_whitespace())
    }
}

/// Parses the formula syntax, resolving language names against the class.
/// Over st0 and dd0 the aliases of [`derived_signature`] are available.
pub fn parse_formula(text: &str, class: &LanguageClass) -> Result<Formula> {
    let aliases = class.kind().and_then(|k| derived_signature(k).ok()).unwrap_or_default();
    let mut p = Parser { chars: text.chars().collect(), pos: 0, class, aliases };
    let f = p.formula()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(f)
}
