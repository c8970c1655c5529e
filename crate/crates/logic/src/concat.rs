//! Marked concatenation of sentence-defined languages, and the letter
//! split behind it.

use chier_classes::{in_class, LanguageClass};
use chier_hierarchy::letter_splits;
use chier_regular::{Dfa, Letter};

use crate::classify::block_counts;
use crate::error::{Error, Result};
use crate::formula::{Formula, LangRef, Var};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

/// Restricts `f` to the positions strictly left (or right) of `x`.
fn relativize(f: &Formula, side: Side, x: &Var, star: &LangRef) -> Formula {
    let before = |y: &Var| Formula::Infix(star.clone(), y.clone(), x.clone());
    let after = |y: &Var| Formula::Infix(star.clone(), x.clone(), y.clone());
    let inside = |y: &Var| if side == Side::Left { before(y) } else { after(y) };
    let outside = |y: &Var| {
        let far = if side == Side::Left { after(y) } else { before(y) };
        Formula::or(Formula::Eq(y.clone(), x.clone()), far)
    };
    let rec = |g: &Formula| relativize(g, side, x, star);
    match f {
        Formula::Exists(y, g) => Formula::exists(y, Formula::and(inside(y), rec(g))),
        Formula::Forall(y, g) => Formula::forall(y, Formula::or(outside(y), rec(g))),
        Formula::Not(g) => Formula::not(rec(g)),
        Formula::And(g, h) => Formula::and(rec(g), rec(h)),
        Formula::Or(g, h) => Formula::or(rec(g), rec(h)),
        Formula::Whole(l) if side == Side::Left => Formula::Prefix(l.clone(), x.clone()),
        Formula::Whole(l) => Formula::Suffix(l.clone(), x.clone()),
        Formula::Suffix(l, y) if side == Side::Left => Formula::Infix(l.clone(), y.clone(), x.clone()),
        Formula::Prefix(l, y) if side == Side::Right => Formula::Infix(l.clone(), x.clone(), y.clone()),
        atom => atom.clone(),
    }
}

/// A Σ_n sentence for L(φ1)·a·L(φ2), where φ1 and φ2 are Σ_n sentences
/// (n ≥ 1) over a class containing A*.
pub fn marked_concat_sentence(phi1: &Formula, a: Letter, phi2: &Formula, class: &LanguageClass, n: usize) -> Result<Formula> {
    for phi in [phi1, phi2] {
        if n == 0 || !phi.is_sentence() || block_counts(phi).0 > n {
            return Err(Error::NotSigmaN { n });
        }
    }
    if a as usize >= class.alphabet().len() {
        return Err(chier_regular::Error::LetterOutOfRange(a as usize).into());
    }
    let star = class
        .index_of(&Dfa::universal(class.alphabet()))
        .map(|i| class.members().map(|m| &m[i]))
        .transpose()?
        .map(|m| LangRef { name: m.name.clone(), dfa: m.dfa.clone() })
        .ok_or_else(|| Error::NotInFragment(format!("{} does not contain A*", class.name())))?;
    let mut names = phi1.var_names();
    names.extend(phi2.var_names());
    let x = (0..).map(|i| if i == 0 { "x".to_string() } else { format!("x{i}'") }).find(|v| !names.contains(v)).expect("fresh name");
    Ok(Formula::exists(
        &x,
        Formula::all([Formula::Label(a, x.clone()), relativize(phi1, Side::Left, &x, &star), relativize(phi2, Side::Right, &x, &star)]),
    ))
}

/// Triples (P, b, S) of class-derived languages whose union P·b·S is
/// L ∩ A*bA*. The union is checked before returning.
pub fn split_by_letter(l: &Dfa, class: &LanguageClass, b: Letter) -> Result<Vec<(Dfa, Letter, Dfa)>> {
    if !in_class(class, l)? {
        return Err(Error::NotInClass);
    }
    let alphabet = class.alphabet();
    let mut out = Vec::new();
    let mut union = Dfa::empty(alphabet);
    for (p, s) in letter_splits(l, b) {
        union = union.union(&p.marked_concat(b, &s)?)?;
        out.push((p, b, s));
    }
    let all = Dfa::universal(alphabet);
    if union != l.intersect(&all.marked_concat(b, &all)?)? {
        return Err(Error::Inconsistent("letter split does not rebuild the language".into()));
    }
    Ok(out)
}
