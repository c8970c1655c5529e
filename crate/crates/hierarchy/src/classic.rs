//! Dot-depth expressions of (ab)* and (a(ab)*b)*, and the base-level facts
//! behind the interleaving of the two hierarchies.

use chier_classes::{basis, BasisKind};
use chier_regular::{compile_regex, Alphabet, Dfa, Letter};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{eval_level, Level, LevelExpr, Monomial, PolyExpr};

struct Dd0 {
    alphabet: Alphabet,
}

impl Dd0 {
    fn star(&self) -> LevelExpr {
        LevelExpr::lang(Level::full("dd0", 0), "Astar", Dfa::universal(&self.alphabet))
    }

    fn eps(&self) -> LevelExpr {
        LevelExpr::lang(Level::full("dd0", 0), "eps", Dfa::epsilon(&self.alphabet))
    }

    fn mono(&self, factors: Vec<LevelExpr>, letters: Vec<Letter>) -> Monomial {
        Monomial { factors, letters }
    }

    /// (xy)* as the complement of yA* ∪ A*x ∪ A*xxA* ∪ A*yyA*, at level 1.
    fn alternating(&self, x: Letter, y: Letter) -> LevelExpr {
        let (s, e) = (self.star(), self.eps());
        let bad = PolyExpr::new(
            &self.alphabet,
            vec![
                self.mono(vec![e.clone(), s.clone()], vec![y]),
                self.mono(vec![s.clone(), e.clone()], vec![x]),
                self.mono(vec![s.clone(), e.clone(), s.clone()], vec![x, x]),
                self.mono(vec![s.clone(), e, s], vec![y, y]),
            ],
        );
        LevelExpr::complement(Level::full("dd0", 1), bad.into_level(Level::half("dd0", 0)))
    }
}

fn two_letters(alphabet: &Alphabet) -> Result<(Letter, Letter)> {
    if alphabet.len() < 2 {
        return Err(Error::AlphabetTooSmall(alphabet.len()));
    }
    Ok((0, 1))
}

/// A level-1 dot-depth expression of (ab)*.
pub fn dd1_ab_star(alphabet: &Alphabet) -> Result<LevelExpr> {
    let (a, b) = two_letters(alphabet)?;
    Ok(Dd0 { alphabet: alphabet.clone() }.alternating(a, b))
}

/// A level-2 dot-depth expression of (a(ab)*b)*: the complement of
/// (ab)*bA* ∪ A*aa(ba)*aA* ∪ A*b(ba)*bbA* ∪ A*a(ab)*.
pub fn dd2_a_ab_star_b_star(alphabet: &Alphabet) -> Result<LevelExpr> {
    let (a, b) = two_letters(alphabet)?;
    let d = Dd0 { alphabet: alphabet.clone() };
    let (s, e) = (d.star(), d.eps());
    let ab = d.alternating(a, b);
    let ba = d.alternating(b, a);
    let bad = PolyExpr::new(
        alphabet,
        vec![
            d.mono(vec![ab.clone(), s.clone()], vec![b]),
            d.mono(vec![s.clone(), e.clone(), ba.clone(), s.clone()], vec![a, a, a]),
            d.mono(vec![s.clone(), ba, e, s.clone()], vec![b, b, b]),
            d.mono(vec![s, ab], vec![a]),
        ],
    );
    Ok(LevelExpr::complement(Level::full("dd0", 2), bad.into_level(Level::half("dd0", 1))))
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

/// The classic expressions with their target regexes.
pub fn classic_expressions(alphabet: &Alphabet) -> Result<Vec<(String, String, LevelExpr)>> {
    two_letters(alphabet)?;
    let (sa, sb) = (alphabet.symbol(0), alphabet.symbol(1));
    Ok(vec![
        ("dd1 (ab)*".into(), format!("({sa}{sb})*"), dd1_ab_star(alphabet)?),
        ("dd2 (a(ab)*b)*".into(), format!("({sa}({sa}{sb})*{sb})*"), dd2_a_ab_star_b_star(alphabet)?),
    ])
}

/// Evaluates each classic expression and compares it with its target.
pub fn check_classic(alphabet: &Alphabet) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (name, regex, e) in classic_expressions(alphabet)? {
        let pass = eval_level(&e)? == compile_regex(&regex, alphabet)?;
        out.push(Check { name, pass });
    }
    Ok(out)
}

/// Base facts of the interleaving ST[n] ⊆ DD[n] ⊆ ST[n+1]: st0 ⊆ dd0,
/// A⁺ at ST[1/2], and {ε} = A* \ A⁺ at ST[1].
pub fn interleaving_check(alphabet: &Alphabet) -> Result<Vec<Check>> {
    let st0 = basis(BasisKind::St0, alphabet)?;
    let dd0 = basis(BasisKind::Dd0, alphabet)?;
    let included = st0.members()?.iter().all(|m| dd0.index_of(&m.dfa).is_some());
    let star = LevelExpr::lang(Level::full("st0", 0), "Astar", Dfa::universal(alphabet));
    let mut aplus = PolyExpr::empty(alphabet);
    for a in alphabet.letters() {
        aplus.monomials.push(Monomial { factors: vec![star.clone(), star.clone()], letters: vec![a] });
    }
    let aplus = aplus.into_level(Level::half("st0", 0));
    let aplus_ok = eval_level(&aplus)? == Dfa::nonempty(alphabet);
    let eps = LevelExpr::complement(Level::full("st0", 1), aplus);
    let eps_ok = eval_level(&eps)? == Dfa::epsilon(alphabet);
    Ok(vec![
        Check { name: "st0 members are dd0 members".into(), pass: included },
        Check { name: "A+ = union of A*aA* at st0[1/2]".into(), pass: aplus_ok },
        Check { name: "{eps} = A* minus A+ at st0[1]".into(), pass: eps_ok },
    ])
}
