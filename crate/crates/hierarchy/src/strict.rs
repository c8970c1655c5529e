//! Strictness witnesses: a language L and pairs u_k ∉ L, v_k ∈ L with
//! u_k ≤_k v_k, so that L escapes every stratum.

use chier_classes::{in_class, ClassMonoid, LanguageClass, DEFAULT_MEMBER_CAP};
use chier_regular::{Alphabet, Dfa, Word};
use chier_strata::WordOrder;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct WitnessPair {
    pub k: usize,
    pub u: Word,
    pub v: Word,
    pub u_outside: bool,
    pub v_inside: bool,
    pub in_v_plus: bool,
    pub leq: bool,
}

impl WitnessPair {
    pub fn pass(&self) -> bool {
        self.u_outside && self.v_inside && self.in_v_plus && self.leq
    }
}

#[derive(Clone, Debug)]
pub struct WitnessBundle {
    pub basis: String,
    /// Whether {ε} had to be added to the basis.
    pub augmented: bool,
    pub period: usize,
    pub language: Dfa,
    pub v_words: Vec<Word>,
    pub pairs: Vec<WitnessPair>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairJson {
    pub k: usize,
    pub u: String,
    pub v: String,
    pub u_len: usize,
    pub v_len: usize,
    pub u_outside: bool,
    pub v_inside: bool,
    pub in_v_plus: bool,
    pub leq: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BundleJson {
    pub basis: String,
    pub augmented: bool,
    pub period: usize,
    pub language: String,
    pub v: Vec<String>,
    pub pairs: Vec<PairJson>,
}

impl WitnessBundle {
    pub fn verified(&self) -> bool {
        self.pairs.iter().all(WitnessPair::pass)
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> BundleJson {
        let (a, b) = (alphabet.symbol(0), alphabet.symbol(1));
        let bs: String = std::iter::repeat_n(b, 2 * self.period).collect();
        BundleJson {
            basis: self.basis.clone(),
            augmented: self.augmented,
            period: self.period,
            language: format!("A*{a}{bs}{a}A*"),
            v: self.v_words.iter().map(|w| alphabet.render(w)).collect(),
            pairs: self
                .pairs
                .iter()
                .map(|p| PairJson {
                    k: p.k,
                    u: alphabet.render(&p.u),
                    v: alphabet.render(&p.v),
                    u_len: p.u.len(),
                    v_len: p.v.len(),
                    u_outside: p.u_outside,
                    v_inside: p.v_inside,
                    in_v_plus: p.in_v_plus,
                    leq: p.leq,
                })
                .collect(),
        }
    }
}

/// The class with {ε} added, when it is missing.
pub fn with_epsilon(class: &LanguageClass) -> Result<(LanguageClass, bool)> {
    let eps = Dfa::epsilon(class.alphabet());
    if in_class(class, &eps)? {
        return Ok((class.clone(), false));
    }
    let name = format!("{}+eps", class.name());
    Ok((class.boolean_closure(&name, &[eps], DEFAULT_MEMBER_CAP)?, true))
}

/// L = A*ab^{2p}aA*, V = {ab^pa, ab^{2p}a}, u_k = (ab^pa)^{p·2^{k+1}} and
/// v_k = u_k·(ab^{2p}a)^p·u_k for k ≤ kmax, every invariant checked. Fails
/// with [`Error::Inconsistent`] if a check does not hold.
pub fn strictness_witnesses(class: &LanguageClass, kmax: usize) -> Result<WitnessBundle> {
    let alphabet = class.alphabet().clone();
    if alphabet.len() < 2 {
        return Err(Error::AlphabetTooSmall(alphabet.len()));
    }
    let props = class.properties();
    if !props.boolean_algebra || !props.quotienting {
        return Err(Error::NotInFragment(format!("{} is not a quotienting Boolean algebra", class.name())));
    }
    let (aug, augmented) = with_epsilon(class)?;
    let p = ClassMonoid::new(&aug)?.period();
    let (a, b) = (Word(vec![0]), Word(vec![1]));
    let short = a.concat(&b.pow(p)).concat(&a);
    let long = a.concat(&b.pow(2 * p)).concat(&a);
    let all = Dfa::universal(&alphabet);
    let language = all.concat(&Dfa::from_word(&alphabet, &long))?.concat(&all)?;
    let v_plus = Dfa::from_words(&alphabet, [&short, &long]).plus();
    let mut order = WordOrder::new(&aug)?;
    let mut pairs = Vec::new();
    for k in 0..=kmax {
        let u = short.pow(p << (k + 1));
        let v = u.concat(&long.pow(p)).concat(&u);
        let pair = WitnessPair {
            k,
            u_outside: !language.accepts(&u),
            v_inside: language.accepts(&v),
            in_v_plus: v_plus.accepts(&u) && v_plus.accepts(&v),
            leq: order.leq(k, &u, &v)?,
            u,
            v,
        };
        if !pair.pass() {
            return Err(Error::Inconsistent(format!("strictness pair for k = {k} fails its checks")));
        }
        pairs.push(pair);
    }
    Ok(WitnessBundle { basis: aug.name().to_string(), augmented, period: p, language, v_words: vec![short, long], pairs })
}
