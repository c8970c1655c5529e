//! Direct evaluation of formulas on words. Positions are 1-based.

use std::collections::BTreeMap;

use chier_regular::Word;

use crate::error::{Error, Result};
use crate::formula::Formula;

pub type Assignment = BTreeMap<String, usize>;

fn pos(v: &str, asg: &Assignment) -> Result<usize> {
    asg.get(v).copied().ok_or_else(|| Error::UnboundVariable(v.to_string()))
}

/// Truth of `f` on `w` under `asg`.
pub fn evaluate(f: &Formula, w: &Word, asg: &Assignment) -> Result<bool> {
    let letters = &w.0;
    Ok(match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Label(a, x) => letters[pos(x, asg)? - 1] == *a,
        Formula::Eq(x, y) => pos(x, asg)? == pos(y, asg)?,
        Formula::Infix(l, x, y) => {
            let (i, j) = (pos(x, asg)?, pos(y, asg)?);
            i < j && l.dfa.accepts_letters(&letters[i..j - 1])
        }
        Formula::Prefix(l, x) => l.dfa.accepts_letters(&letters[..pos(x, asg)? - 1]),
        Formula::Suffix(l, x) => l.dfa.accepts_letters(&letters[pos(x, asg)?..]),
        Formula::Whole(l) => l.dfa.accepts(w),
        Formula::Not(g) => !evaluate(g, w, asg)?,
        Formula::And(g, h) => evaluate(g, w, asg)? && evaluate(h, w, asg)?,
        Formula::Or(g, h) => evaluate(g, w, asg)? || evaluate(h, w, asg)?,
        Formula::Exists(x, g) | Formula::Forall(x, g) => {
            let universal = matches!(f, Formula::Forall(..));
            let mut inner = asg.clone();
            for i in 1..=letters.len() {
                inner.insert(x.clone(), i);
                if evaluate(g, w, &inner)? != universal {
                    return Ok(!universal);
                }
            }
            universal
        }
    })
}

/// Truth of a sentence on `w`.
pub fn satisfies(f: &Formula, w: &Word) -> Result<bool> {
    evaluate(f, w, &Assignment::new())
}
