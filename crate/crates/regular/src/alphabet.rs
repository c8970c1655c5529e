use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a letter inside its [`Alphabet`].
pub type Letter = u16;

/// Characters reserved by the regex and formula grammars.
const RESERVED: &[char] = &['|', '*', '(', ')', '_', '.', '{', '}', ',', '&', '!', '<', '+'];

/// A finite, ordered alphabet of printable characters.
///
/// Letters are addressed by their index; the character is only used for
/// parsing and display. Cloning is cheap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Arc<[char]>,
}

impl Alphabet {
    pub fn new(letters: impl IntoIterator<Item = char>) -> Result<Self> {
        let letters: Vec<char> = letters.into_iter().collect();
        if letters.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        for (i, &c) in letters.iter().enumerate() {
            if c.is_whitespace() || c.is_control() || RESERVED.contains(&c) {
                return Err(Error::BadSymbol(c));
            }
            if letters[..i].contains(&c) {
                return Err(Error::DuplicateLetter(c));
            }
        }
        if letters.len() > Letter::MAX as usize {
            return Err(Error::AlphabetTooLarge(letters.len()));
        }
        Ok(Alphabet { letters: letters.into() })
    }

    /// Parses an alphabet written as a plain string such as `"ab"`.
    pub fn parse(text: &str) -> Result<Self> {
        Self::new(text.chars())
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.letters
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + Clone {
        0..self.letters.len() as Letter
    }

    pub fn symbol(&self, a: Letter) -> char {
        self.letters[a as usize]
    }

    pub fn index_of(&self, c: char) -> Option<Letter> {
        self.letters.iter().position(|&x| x == c).map(|i| i as Letter)
    }

    pub fn letter(&self, c: char) -> Result<Letter> {
        self.index_of(c).ok_or(Error::UnknownLetter(c))
    }

    /// Reads a word written with this alphabet's characters.
    pub fn word(&self, text: &str) -> Result<Word> {
        text.chars().map(|c| self.letter(c)).collect::<Result<Vec<_>>>().map(Word)
    }

    pub fn render(&self, w: &Word) -> String {
        w.0.iter().map(|&a| self.symbol(a)).collect()
    }

    /// All words of length at most `maxlen`, in length-lexicographic order.
    pub fn words_up_to(&self, maxlen: usize) -> Vec<Word> {
        let mut out = vec![Word::epsilon()];
        let mut layer = vec![Word::epsilon()];
        for _ in 0..maxlen {
            let mut next = Vec::with_capacity(layer.len() * self.len());
            for w in &layer {
                for a in self.letters() {
                    next.push(w.push(a));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({:?})", self.letters.iter().collect::<String>())
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.letters.iter() {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A finite word, stored as letter indices. The empty word is ε.
///
/// Words are ordered length-lexicographically.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn epsilon() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        Word(letters.to_vec())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn push(&self, a: Letter) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(a);
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    /// Concatenation of several words.
    pub fn join<'a>(parts: impl IntoIterator<Item = &'a Word>) -> Word {
        let mut v = Vec::new();
        for p in parts {
            v.extend_from_slice(&p.0);
        }
        Word(v)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_alphabets() {
        assert!(matches!(Alphabet::parse(""), Err(Error::EmptyAlphabet)));
        assert!(matches!(Alphabet::parse("aa"), Err(Error::DuplicateLetter('a'))));
        assert!(matches!(Alphabet::parse("a*"), Err(Error::BadSymbol('*'))));
    }

    #[test]
    fn words_are_length_lex_ordered() {
        let ab = Alphabet::parse("ab").unwrap();
        let ws = ab.words_up_to(2);
        let shown: Vec<String> = ws.iter().map(|w| ab.render(w)).collect();
        assert_eq!(shown, ["", "a", "b", "aa", "ab", "ba", "bb"]);
        let mut sorted = ws.clone();
        sorted.sort();
        assert_eq!(sorted, ws);
    }

    #[test]
    fn unknown_letter() {
        let ab = Alphabet::parse("ab").unwrap();
        assert!(matches!(ab.word("abc"), Err(Error::UnknownLetter('c'))));
    }
}
