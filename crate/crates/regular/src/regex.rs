//! Regular expressions.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! union  := concat ('|' concat)*
//! concat := star star*
//! star   := atom '*'*
//! atom   := letter | '_' | '.' | '(' union ')'
//! ```
//!
//! `_` denotes the empty word and `.` any single letter. Whitespace is
//! ignored. There is no syntax for the empty language.

use crate::alphabet::{Alphabet, Letter};
use crate::dfa::{Dfa, DEFAULT_STATE_LIMIT};
use crate::error::{Error, Result};
use crate::nfa::Nfa;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Regex {
    Empty,
    Epsilon,
    Letter(Letter),
    Any,
    Union(Box<Regex>, Box<Regex>),
    Concat(Box<Regex>, Box<Regex>),
    Star(Box<Regex>),
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    alphabet: &'a Alphabet,
    len: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(i, _)| i)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax { position: self.offset(), message: message.into() }
    }

    fn union(&mut self) -> Result<Regex> {
        let mut left = self.concat()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            let right = self.concat()?;
            left = Regex::Union(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn concat(&mut self) -> Result<Regex> {
        let mut left = self.star()?;
        while matches!(self.peek(), Some(c) if c != '|' && c != ')') {
            let right = self.star()?;
            left = Regex::Concat(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn star(&mut self) -> Result<Regex> {
        let mut r = self.atom()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            r = Regex::Star(Box::new(r));
        }
        Ok(r)
    }

    fn atom(&mut self) -> Result<Regex> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let r = self.union()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(r)
            }
            Some('_') => {
                self.pos += 1;
                Ok(Regex::Epsilon)
            }
            Some('.') => {
                self.pos += 1;
                Ok(Regex::Any)
            }
            Some(c @ ('|' | ')' | '*')) => Err(self.error(format!("unexpected {c:?}"))),
            Some(c) => {
                let a = self.alphabet.letter(c)?;
                self.pos += 1;
                Ok(Regex::Letter(a))
            }
        }
    }
}

impl Regex {
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Regex> {
        let chars: Vec<(usize, char)> =
            text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        let mut p = Parser { chars, pos: 0, alphabet, len: text.len() };
        if p.chars.is_empty() {
            return Err(p.error("empty expression"));
        }
        let r = p.union()?;
        if p.pos < p.chars.len() {
            return Err(p.error(format!("unexpected {:?}", p.peek().unwrap())));
        }
        Ok(r)
    }

    fn build(&self, nfa: &mut Nfa, k: usize) -> (u32, u32) {
        match self {
            Regex::Empty => (nfa.add_state(false), nfa.add_state(false)),
            Regex::Epsilon => {
                let s = nfa.add_state(false);
                let t = nfa.add_state(false);
                nfa.add_eps(s, t);
                (s, t)
            }
            Regex::Letter(a) => {
                let s = nfa.add_state(false);
                let t = nfa.add_state(false);
                nfa.add(s, *a, t);
                (s, t)
            }
            Regex::Any => {
                let s = nfa.add_state(false);
                let t = nfa.add_state(false);
                for a in 0..k as Letter {
                    nfa.add(s, a, t);
                }
                (s, t)
            }
            Regex::Union(x, y) => {
                let s = nfa.add_state(false);
                let (xs, xt) = x.build(nfa, k);
                let (ys, yt) = y.build(nfa, k);
                let t = nfa.add_state(false);
                nfa.add_eps(s, xs);
                nfa.add_eps(s, ys);
                nfa.add_eps(xt, t);
                nfa.add_eps(yt, t);
                (s, t)
            }
            Regex::Concat(x, y) => {
                let (xs, xt) = x.build(nfa, k);
                let (ys, yt) = y.build(nfa, k);
                nfa.add_eps(xt, ys);
                (xs, yt)
            }
            Regex::Star(x) => {
                let s = nfa.add_state(false);
                let (xs, xt) = x.build(nfa, k);
                let t = nfa.add_state(false);
                nfa.add_eps(s, xs);
                nfa.add_eps(s, t);
                nfa.add_eps(xt, xs);
                nfa.add_eps(xt, t);
                (s, t)
            }
        }
    }

    pub fn to_dfa(&self, alphabet: &Alphabet) -> Dfa {
        let mut nfa = Nfa::new();
        let (s, t) = self.build(&mut nfa, alphabet.len());
        nfa.add_initial(s);
        nfa.set_accepting(t, true);
        nfa.determinize(alphabet, DEFAULT_STATE_LIMIT)
            .expect("regex automata stay within the default state limit")
    }
}

/// Parses `text` and returns the canonical automaton of its language.
pub fn compile_regex(text: &str, alphabet: &Alphabet) -> Result<Dfa> {
    Ok(Regex::parse(text, alphabet)?.to_dfa(alphabet))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn syntax_errors_report_positions() {
        let ab = Alphabet::parse("ab").unwrap();
        assert!(matches!(compile_regex("", &ab), Err(Error::Syntax { position: 0, .. })));
        assert!(matches!(compile_regex("a|", &ab), Err(Error::Syntax { position: 2, .. })));
        assert!(matches!(compile_regex("(ab", &ab), Err(Error::Syntax { position: 3, .. })));
        assert!(matches!(compile_regex("a)b", &ab), Err(Error::Syntax { position: 1, .. })));
        assert!(matches!(compile_regex("*a", &ab), Err(Error::Syntax { position: 0, .. })));
        assert!(matches!(compile_regex("ac", &ab), Err(Error::UnknownLetter('c'))));
    }

    #[test]
    fn any_and_epsilon() {
        let ab = Alphabet::parse("ab").unwrap();
        assert_eq!(compile_regex(".*", &ab).unwrap(), Dfa::universal(&ab));
        assert_eq!(compile_regex("_", &ab).unwrap(), Dfa::epsilon(&ab));
        assert_eq!(compile_regex("_*", &ab).unwrap(), Dfa::epsilon(&ab));
        assert_eq!(compile_regex("..*", &ab).unwrap(), Dfa::nonempty(&ab));
    }
}
