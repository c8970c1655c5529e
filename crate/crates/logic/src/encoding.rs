//! Words annotated with variable positions: the alphabets {0,1}^ℓ × A.

use chier_regular::{Alphabet, Dfa, Letter, Word};

use crate::error::{Error, Result};

/// Start of the code points used for annotated letters.
const SYMBOL_BASE: u32 = 0x3400;

/// {0,1}^ℓ × A. Letter index is bits·|A| + a, where bit h marks x_{h+1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedAlphabet {
    pub base: Alphabet,
    pub ell: usize,
    pub alphabet: Alphabet,
}

impl ExtendedAlphabet {
    pub fn new(base: &Alphabet, ell: usize) -> Result<Self> {
        let alphabet = if ell == 0 {
            base.clone()
        } else {
            let size = base.len() << ell;
            Alphabet::new((0..size as u32).map(|i| char::from_u32(SYMBOL_BASE + i).expect("valid code point")))?
        };
        Ok(ExtendedAlphabet { base: base.clone(), ell, alphabet })
    }

    pub fn len(&self) -> usize {
        self.alphabet.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letter(&self, bits: usize, a: Letter) -> Letter {
        (bits * self.base.len() + a as usize) as Letter
    }

    pub fn bits(&self, c: Letter) -> usize {
        c as usize / self.base.len()
    }

    pub fn base_letter(&self, c: Letter) -> Letter {
        (c as usize % self.base.len()) as Letter
    }

    /// Letters whose bit h is set.
    pub fn marked(&self, h: usize) -> Vec<Letter> {
        self.alphabet.letters().filter(|&c| self.bits(c) >> h & 1 == 1).collect()
    }

    /// "(01,a)": bit of x_1 first.
    pub fn describe(&self, c: Letter) -> String {
        let bits: String = (0..self.ell).map(|h| if self.bits(c) >> h & 1 == 1 { '1' } else { '0' }).collect();
        format!("({bits},{})", self.base.symbol(self.base_letter(c)))
    }

    /// Annotates `w` with x_{h+1} at the 1-based position `positions[h]`.
    pub fn encode(&self, w: &Word, positions: &[usize]) -> Result<Word> {
        if positions.len() != self.ell {
            return Err(Error::AlphabetMismatch);
        }
        let mut out = Vec::with_capacity(w.len());
        for (i, &a) in w.0.iter().enumerate() {
            let bits = positions.iter().enumerate().filter(|(_, &p)| p == i + 1).fold(0, |acc, (h, _)| acc | 1 << h);
            out.push(self.letter(bits, a));
        }
        for (h, &p) in positions.iter().enumerate() {
            if p == 0 || p > w.len() {
                return Err(Error::UnboundVariable(format!("x{}", h + 1)));
            }
        }
        Ok(Word(out))
    }

    /// The word and positions of a good encoding.
    pub fn decode(&self, u: &Word) -> Result<(Word, Vec<usize>)> {
        let mut positions = vec![0; self.ell];
        let mut w = Vec::with_capacity(u.len());
        for (i, &c) in u.0.iter().enumerate() {
            if c as usize >= self.len() {
                return Err(Error::AlphabetMismatch);
            }
            for (h, p) in positions.iter_mut().enumerate() {
                if self.bits(c) >> h & 1 == 1 {
                    if *p != 0 {
                        return Err(Error::Inconsistent(format!("bit {} is set twice", h + 1)));
                    }
                    *p = i + 1;
                }
            }
            w.push(self.base_letter(c));
        }
        if let Some(h) = positions.iter().position(|&p| p == 0) {
            return Err(Error::Inconsistent(format!("bit {} is never set", h + 1)));
        }
        Ok((Word(w), positions))
    }

    /// Words with exactly one letter having bit h set.
    pub fn exactly_one(&self, h: usize) -> Dfa {
        let mut transitions = Vec::new();
        for q in 0..3u32 {
            for c in self.alphabet.letters() {
                let hit = self.bits(c) >> h & 1 == 1;
                transitions.push((q, c, if hit { (q + 1).min(2) } else { q }));
            }
        }
        Dfa::from_parts(self.alphabet.clone(), 3, &transitions, 0, &[1]).expect("well-formed table").minimize()
    }

    /// Good encodings: each of the ℓ bits set exactly once.
    pub fn valid(&self) -> Result<Dfa> {
        let mut d = Dfa::universal(&self.alphabet);
        for h in 0..self.ell {
            d = d.intersect(&self.exactly_one(h))?;
        }
        Ok(d)
    }

    /// The alphabet with one more variable.
    pub fn extend(&self) -> Result<ExtendedAlphabet> {
        ExtendedAlphabet::new(&self.base, self.ell + 1)
    }

    fn check(&self, d: &Dfa) -> Result<()> {
        if d.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(())
    }

    /// Words over A_{ℓ+1} in which exactly one position has the last bit.
    pub fn good_filter(&self) -> Result<Dfa> {
        Ok(self.extend()?.exactly_one(self.ell))
    }

    /// Erases the last bit of a language over A_{ℓ+1}.
    pub fn project(&self, l: &Dfa, limit: usize) -> Result<Dfa> {
        let up = self.extend()?;
        up.check(l)?;
        let k = self.base.len();
        let mask = (1usize << self.ell) - 1;
        l.image(&self.alphabet, |c| ((up.bits(c) & mask) * k + up.base_letter(c) as usize) as Letter, limit).map_err(|e| match e {
            chier_regular::Error::BudgetExceeded { limit } => Error::BudgetExceeded { limit },
            e => e.into(),
        })
    }

    /// Preimage of a language over A_{ℓ+1} under the embedding that sets
    /// the last bit to 0.
    pub fn inv_alpha(&self, l: &Dfa) -> Result<Dfa> {
        self.extend()?.check(l)?;
        Ok(l.inverse_image(&self.alphabet, |c| c))
    }

    /// π_A⁻¹(K): K read through the base letters.
    pub fn lift(&self, k: &Dfa) -> Result<Dfa> {
        if k.alphabet() != &self.base {
            return Err(Error::AlphabetMismatch);
        }
        Ok(k.inverse_image(&self.alphabet, |c| self.base_letter(c)))
    }
}
