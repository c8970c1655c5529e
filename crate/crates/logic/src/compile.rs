//! Sentences to automata, by induction on the Σ-normal form over the
//! annotated alphabets A_ℓ.

use chier_classes::LanguageClass;
use chier_hierarchy::Level;
use chier_regular::{Dfa, Letter};

use crate::classify::{block_counts, sigma_normal, EpsilonAdjust, Prenex, SigmaNormal};
use crate::encoding::ExtendedAlphabet;
use crate::error::{Error, Result};
use crate::formula::{Formula, LangRef, Var};

/// Default state limit of each projection.
pub const DEFAULT_COMPILE_BUDGET: usize = 100_000;

#[derive(Clone, Debug)]
pub struct Compiled {
    pub dfa: Dfa,
    /// Σ_n: the sentence is put in this form before compiling.
    pub sigma: usize,
    /// The level the construction places the language in.
    pub level: Level,
    pub adjust: EpsilonAdjust,
}

struct Compiler<'a> {
    class: &'a LanguageClass,
    budget: usize,
    universal: Option<LangRef>,
}

fn member_ref(class: &LanguageClass, d: &Dfa) -> Option<LangRef> {
    let i = class.index_of(d)?;
    let m = &class.members().ok()?[i];
    Some(LangRef { name: m.name.clone(), dfa: m.dfa.clone() })
}

fn var_index(vars: &[Var], x: &Var) -> Result<usize> {
    vars.iter().position(|v| v == x).ok_or_else(|| Error::UnboundVariable(x.clone()))
}

impl Compiler<'_> {
    fn new(class: &LanguageClass, budget: usize) -> Compiler<'_> {
        let universal = member_ref(class, &Dfa::universal(class.alphabet()));
        Compiler { class, budget, universal }
    }

    /// The same predicate over the complement of its language, when that
    /// complement is a member.
    fn complement_ref(&self, l: &LangRef) -> Option<LangRef> {
        member_ref(self.class, &l.dfa.complement())
    }

    /// Rewrites negated atoms into positive ones where the signature allows,
    /// leaving the rest negated.
    fn eliminate_negations(&self, f: &Formula) -> Formula {
        let alphabet = self.class.alphabet();
        match f {
            Formula::And(g, h) => Formula::and(self.eliminate_negations(g), self.eliminate_negations(h)),
            Formula::Or(g, h) => Formula::or(self.eliminate_negations(g), self.eliminate_negations(h)),
            Formula::Not(g) => match g.as_ref() {
                Formula::Label(a, x) => Formula::any(alphabet.letters().filter(|c| c != a).map(|c| Formula::Label(c, x.clone()))),
                Formula::Eq(x, y) => match &self.universal {
                    Some(u) => Formula::or(Formula::Infix(u.clone(), x.clone(), y.clone()), Formula::Infix(u.clone(), y.clone(), x.clone())),
                    None => f.clone(),
                },
                Formula::Infix(l, x, y) => match (&self.universal, self.complement_ref(l)) {
                    (Some(u), Some(c)) => Formula::any([
                        Formula::Infix(u.clone(), y.clone(), x.clone()),
                        Formula::Eq(x.clone(), y.clone()),
                        Formula::Infix(c, x.clone(), y.clone()),
                    ]),
                    _ => f.clone(),
                },
                Formula::Prefix(l, x) => self.complement_ref(l).map_or_else(|| f.clone(), |c| Formula::Prefix(c, x.clone())),
                Formula::Suffix(l, x) => self.complement_ref(l).map_or_else(|| f.clone(), |c| Formula::Suffix(c, x.clone())),
                Formula::Whole(l) => self.complement_ref(l).map_or_else(|| f.clone(), Formula::Whole),
                _ => f.clone(),
            },
            _ => f.clone(),
        }
    }

    fn letters_dfa(ext: &ExtendedAlphabet, letters: &[Letter]) -> Dfa {
        let words: Vec<_> = letters.iter().map(|&c| chier_regular::Word(vec![c])).collect();
        Dfa::from_words(&ext.alphabet, &words)
    }

    /// Concatenation of the parts.
    fn chain(ext: &ExtendedAlphabet, parts: &[Dfa]) -> Result<Dfa> {
        let mut d = Dfa::epsilon(&ext.alphabet);
        for p in parts {
            d = d.concat(p)?;
        }
        Ok(d)
    }

    /// An atom over A_ℓ; only correct on good encodings.
    fn atom(&self, f: &Formula, ext: &ExtendedAlphabet, vars: &[Var]) -> Result<Dfa> {
        let all = Dfa::universal(&ext.alphabet);
        let marked = |x: &Var| -> Result<Dfa> { Ok(Self::letters_dfa(ext, &ext.marked(var_index(vars, x)?))) };
        Ok(match f {
            Formula::True => all,
            Formula::False => Dfa::empty(&ext.alphabet),
            Formula::Label(a, x) => {
                let h = var_index(vars, x)?;
                let letters: Vec<Letter> = ext.marked(h).into_iter().filter(|&c| ext.base_letter(c) == *a).collect();
                Self::chain(ext, &[all.clone(), Self::letters_dfa(ext, &letters), all])?
            }
            Formula::Eq(x, y) => {
                let (i, j) = (var_index(vars, x)?, var_index(vars, y)?);
                let letters: Vec<Letter> = ext.marked(i).into_iter().filter(|&c| ext.bits(c) >> j & 1 == 1).collect();
                Self::chain(ext, &[all.clone(), Self::letters_dfa(ext, &letters), all])?
            }
            Formula::Infix(l, x, y) => Self::chain(ext, &[all.clone(), marked(x)?, ext.lift(&l.dfa)?, marked(y)?, all])?,
            Formula::Prefix(l, x) => Self::chain(ext, &[ext.lift(&l.dfa)?, marked(x)?, all])?,
            Formula::Suffix(l, x) => Self::chain(ext, &[all, marked(x)?, ext.lift(&l.dfa)?])?,
            Formula::Whole(l) => ext.lift(&l.dfa)?,
            Formula::Not(g) => self.atom(g, ext, vars)?.complement(),
            other => return Err(Error::NotInFragment(format!("{other:?} is not quantifier-free"))),
        })
    }

    fn matrix(&self, f: &Formula, ext: &ExtendedAlphabet, vars: &[Var]) -> Result<Dfa> {
        match f {
            Formula::And(g, h) => Ok(self.matrix(g, ext, vars)?.intersect(&self.matrix(h, ext, vars)?)?),
            Formula::Or(g, h) => Ok(self.matrix(g, ext, vars)?.union(&self.matrix(h, ext, vars)?)?),
            atom => self.atom(atom, ext, vars),
        }
    }

    /// ∃x: keep good encodings of x, then erase its bit.
    fn project(&self, l: &Dfa, lower: &ExtendedAlphabet) -> Result<Dfa> {
        lower.project(&l.intersect(&lower.good_filter()?)?, self.budget)
    }

    /// Compiles `blocks[i..]` over `matrix`, with `vars` bound outside.
    /// The result is only meaningful on good encodings.
    fn blocks(&self, p: &Prenex, i: usize, vars: &mut Vec<Var>) -> Result<Dfa> {
        let base = self.class.alphabet();
        if i == p.blocks.len() {
            let ext = ExtendedAlphabet::new(base, vars.len())?;
            let m = self.eliminate_negations(&p.matrix);
            return self.matrix(&m, &ext, vars);
        }
        let exists = i.is_multiple_of(2) == p.starts_exists;
        let block = &p.blocks[i];
        let outer = vars.len();
        vars.extend(block.iter().cloned());
        let mut d = self.blocks(p, i + 1, vars)?;
        vars.truncate(outer);
        let top = ExtendedAlphabet::new(base, outer + block.len())?;
        if !exists {
            d = top.valid()?.difference(&d)?;
        }
        for h in (outer..outer + block.len()).rev() {
            let lower = ExtendedAlphabet::new(base, h)?;
            d = self.project(&d, &lower)?;
        }
        if !exists {
            let lower = ExtendedAlphabet::new(base, outer)?;
            d = lower.valid()?.difference(&d)?;
        }
        Ok(d)
    }
}

fn budget_error(e: Error) -> Error {
    match e {
        Error::Regular(chier_regular::Error::BudgetExceeded { limit }) => Error::BudgetExceeded { limit },
        e => e,
    }
}

/// Compiles a sentence. It is first put in Σ_n normal form for the least
/// n ≥ 1 possible; the result is claimed at level n − 1/2 of the hierarchy
/// over the class.
pub fn compile(f: &Formula, class: &LanguageClass, budget: usize) -> Result<Compiled> {
    if !f.is_sentence() {
        return Err(Error::NotInFragment("compile needs a sentence".into()));
    }
    let n = block_counts(f).0.max(1);
    compile_sigma(&sigma_normal(f, n)?, class, budget)
}

/// Compiles a Σ-normal form.
pub fn compile_sigma(normal: &SigmaNormal, class: &LanguageClass, budget: usize) -> Result<Compiled> {
    let c = Compiler::new(class, budget);
    let mut d = c.blocks(&normal.prenex, 0, &mut Vec::new()).map_err(budget_error)?;
    let alphabet = class.alphabet();
    d = match normal.adjust {
        EpsilonAdjust::None => d,
        EpsilonAdjust::AcceptEmpty => d.union(&Dfa::epsilon(alphabet))?,
        EpsilonAdjust::RejectEmpty => d.intersect(&Dfa::nonempty(alphabet))?,
    };
    Ok(Compiled { dfa: d, sigma: normal.n, level: Level::half(class.name(), normal.n as u32 - 1), adjust: normal.adjust })
}

/// The language over A_ℓ of good encodings [w]_μ with w, μ ⊨ f, where the
/// free variables of f are among `vars` and x_{h+1} is `vars[h]`.
pub fn compile_open(f: &Formula, vars: &[Var], class: &LanguageClass, budget: usize) -> Result<Dfa> {
    for v in f.free_vars() {
        if !vars.contains(&v) {
            return Err(Error::UnboundVariable(v));
        }
    }
    let c = Compiler::new(class, budget);
    let mut g = f.nnf();
    for v in vars.iter().rev() {
        g = Formula::exists(v, g);
    }
    let prenex = crate::classify::prenex_sigma(&g);
    // Strip the outer variables back off the first block.
    let mut p = prenex;
    let renamed: Vec<Var> = p.blocks.first().map(|b| b[..vars.len()].to_vec()).unwrap_or_default();
    p.blocks[0].drain(..vars.len());
    let mut bound = renamed;
    let ext = ExtendedAlphabet::new(class.alphabet(), vars.len())?;
    let d = c.blocks(&p, 0, &mut bound).map_err(budget_error)?;
    Ok(d.intersect(&ext.valid()?)?)
}
