//! Stratum membership and separability verdicts.
//!
//! With a type monoid within budget every answer is definite. Otherwise
//! two refutation searches run: a breadth-first search over the types of
//! words up to `max_len` letters, then a scan of pumping candidates
//! `x·u^{pm}·y` against `x·u^{pm}·v·u^{pm}·y` (and `x·u^{p(m+1)}·y`). Both can
//! only produce NotMember/NotSeparable; when they find nothing the verdict
//! is Inconclusive. Every witness is re-checked with [`WordOrder`] before
//! it is returned.

use std::collections::{HashMap, VecDeque};

use chier_classes::{ClassMonoid, LanguageClass};
use chier_regular::{Alphabet, Dfa, DfaJson, Letter, Word};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monoid::{TypeMonoid, DEFAULT_TYPE_BUDGET};
use crate::types::{TypeId, TypeSystem};
use crate::words::WordOrder;

pub const DEFAULT_MAX_LEN: usize = 12;

/// Pumping candidates: lengths of the context words x, y, the pumped word
/// u and the inserted word v.
const PUMP_CONTEXT: usize = 2;
const PUMP_BASE: usize = 3;
const PUMP_INSERT: usize = 4;
/// Candidates whose equivalence must be checked word by word.
const PUMP_CHECKS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Types per level in the type monoid.
    pub types: usize,
    /// Longest word of the bounded search.
    pub max_len: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { types: DEFAULT_TYPE_BUDGET, max_len: DEFAULT_MAX_LEN }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Member,
    NotMember { w: Word, w2: Word },
    Separable { separator: Dfa },
    NotSeparable { w: Word, w2: Word },
    Inconclusive { reason: String },
}

impl Status {
    pub fn name(&self) -> &'static str {
        match self {
            Status::Member => "Member",
            Status::NotMember { .. } => "NotMember",
            Status::Separable { .. } => "Separable",
            Status::NotSeparable { .. } => "NotSeparable",
            Status::Inconclusive { .. } => "Inconclusive",
        }
    }

    pub fn witness(&self) -> Option<(&Word, &Word)> {
        match self {
            Status::NotMember { w, w2 } | Status::NotSeparable { w, w2 } => Some((w, w2)),
            _ => None,
        }
    }

    pub fn is_definite(&self) -> bool {
        !matches!(self, Status::Inconclusive { .. })
    }
}

/// Which procedure produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    TypeMonoid,
    WordSearch,
    Pumping,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumVerdict {
    pub k: usize,
    pub status: Status,
    pub engine: Engine,
    pub budget: Budget,
    /// Level-k types built or visited.
    pub types_used: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetJson {
    pub types: usize,
    pub max_len: usize,
    pub types_used: usize,
    pub engine: Engine,
}

/// Serialized verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub status: String,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub separator: Option<DfaJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub budget: BudgetJson,
}

impl StratumVerdict {
    pub fn to_json(&self, alphabet: &Alphabet) -> VerdictJson {
        VerdictJson {
            status: self.status.name().to_string(),
            k: self.k,
            witness: self.status.witness().map(|(w, w2)| [alphabet.render(w), alphabet.render(w2)]),
            separator: match &self.status {
                Status::Separable { separator } => Some(DfaJson::from(separator)),
                _ => None,
            },
            reason: match &self.status {
                Status::Inconclusive { reason } => Some(reason.clone()),
                _ => None,
            },
            budget: BudgetJson {
                types: self.budget.types,
                max_len: self.budget.max_len,
                types_used: self.types_used,
                engine: self.engine,
            },
        }
    }
}

/// The three questions, phrased on the two languages involved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Question {
    /// w ∈ L, w' ∉ L, w ≤_k w'.
    Pol,
    /// w ∈ L, w' ∉ L, w ∼_k w'.
    BPol,
    /// w ∈ L1, w' ∈ L2, w ≤_k w'.
    Separation,
}

type Key = (usize, Word, Word);

fn key(w: &Word, w2: &Word) -> Key {
    (w.len() + w2.len(), w.clone(), w2.clone())
}

/// Least words per type, for each of the two membership conditions.
struct Reached {
    first: HashMap<TypeId, Word>,
    second: HashMap<TypeId, Word>,
}

/// Breadth-first search over (type, state of L1, state of L2). Words are
/// found in length-lex order, so each recorded word is the least one.
fn explore(
    q: Question,
    l1: &Dfa,
    l2: &Dfa,
    unit: TypeId,
    mut step: impl FnMut(TypeId, Letter) -> Result<TypeId>,
    max_len: Option<usize>,
) -> Result<Reached> {
    let k = l1.alphabet().len();
    let start = (unit, l1.initial(), l2.initial());
    let mut nodes = vec![start];
    let mut parent: Vec<(usize, Letter)> = vec![(usize::MAX, 0)];
    let mut depth = vec![0usize];
    let mut seen: HashMap<(TypeId, u32, u32), usize> = HashMap::from([(start, 0)]);
    let mut reached = Reached { first: HashMap::new(), second: HashMap::new() };
    let word_of = |parent: &[(usize, Letter)], mut i: usize| {
        let mut w = Vec::new();
        while parent[i].0 != usize::MAX {
            w.push(parent[i].1);
            i = parent[i].0;
        }
        w.reverse();
        Word(w)
    };
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let (t, p1, p2) = nodes[i];
        if l1.is_accepting(p1) && !reached.first.contains_key(&t) {
            reached.first.insert(t, word_of(&parent, i));
        }
        let second = match q {
            Question::Separation => l2.is_accepting(p2),
            Question::Pol | Question::BPol => !l1.is_accepting(p1),
        };
        if second && !reached.second.contains_key(&t) {
            reached.second.insert(t, word_of(&parent, i));
        }
        if max_len.is_some_and(|m| depth[i] >= m) {
            continue;
        }
        for a in 0..k as Letter {
            let next = (step(t, a)?, l1.next(p1, a), l2.next(p2, a));
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(next) {
                e.insert(nodes.len());
                nodes.push(next);
                parent.push((i, a));
                depth.push(depth[i] + 1);
                queue.push_back(nodes.len() - 1);
            }
        }
    }
    Ok(reached)
}

/// Least pair (by total length, then length-lex) over reached types.
fn best_pair(q: Question, reached: &Reached, mut leq: impl FnMut(TypeId, TypeId) -> bool) -> Option<(Word, Word)> {
    let mut firsts: Vec<(&Word, TypeId)> = reached.first.iter().map(|(&t, w)| (w, t)).collect();
    let mut seconds: Vec<(&Word, TypeId)> = reached.second.iter().map(|(&t, w)| (w, t)).collect();
    let order = |x: &(&Word, TypeId), y: &(&Word, TypeId)| x.0.cmp(y.0);
    firsts.sort_by(order);
    seconds.sort_by(order);
    let mut best: Option<Key> = None;
    if q == Question::BPol {
        for (w, t) in &firsts {
            if let Some(w2) = reached.second.get(t) {
                let kk = key(w, w2);
                if best.as_ref().is_none_or(|b| kk < *b) {
                    best = Some(kk);
                }
            }
        }
        return best.map(|(_, w, w2)| (w, w2));
    }
    let shortest_second = seconds.first().map_or(0, |s| s.0.len());
    for (w, s) in &firsts {
        if best.as_ref().is_some_and(|b| w.len() + shortest_second > b.0) {
            break;
        }
        for (w2, t) in &seconds {
            let kk = key(w, w2);
            if best.as_ref().is_some_and(|b| kk >= *b) {
                break;
            }
            if leq(*s, *t) {
                best = Some(kk);
                break;
            }
        }
    }
    best.map(|(_, w, w2)| (w, w2))
}

fn refuted(q: Question, w: Word, w2: Word) -> Status {
    match q {
        Question::Pol | Question::BPol => Status::NotMember { w, w2 },
        Question::Separation => Status::NotSeparable { w, w2 },
    }
}

/// Re-checks a witness with the word-level order and the languages.
fn revalidate(q: Question, class: &LanguageClass, k: usize, l1: &Dfa, l2: &Dfa, w: &Word, w2: &Word) -> Result<()> {
    let mut order = WordOrder::new(class)?;
    let pattern = match q {
        Question::Pol | Question::BPol => l1.accepts(w) && !l1.accepts(w2),
        Question::Separation => l1.accepts(w) && l2.accepts(w2),
    };
    let related = match q {
        Question::BPol => order.equivalent(k, w, w2)?,
        _ => order.leq(k, w, w2)?,
    };
    if pattern && related {
        Ok(())
    } else {
        Err(Error::Inconsistent(format!("witness failed re-validation at level {k}")))
    }
}

fn check_alphabet(class: &LanguageClass, l: &Dfa) -> Result<()> {
    if class.alphabet() == l.alphabet() {
        Ok(())
    } else {
        Err(chier_regular::Error::AlphabetMismatch.into())
    }
}

fn decide(q: Question, l1: &Dfa, l2: &Dfa, class: &LanguageClass, k: usize, budget: Budget) -> Result<StratumVerdict> {
    check_alphabet(class, l1)?;
    check_alphabet(class, l2)?;
    match TypeMonoid::build(class, k, budget.types) {
        Ok(m) => decide_in(q, l1, l2, class, &m, budget),
        Err(Error::BudgetExceeded { .. }) => fallback(q, l1, l2, class, k, budget),
        Err(e) => Err(e),
    }
}

fn decide_in(
    q: Question,
    l1: &Dfa,
    l2: &Dfa,
    class: &LanguageClass,
    m: &TypeMonoid,
    budget: Budget,
) -> Result<StratumVerdict> {
    let k = m.level();
    let reached = explore(q, l1, l2, m.unit(), |t, a| Ok(m.step(t, a)), None)?;
    let status = match best_pair(q, &reached, |s, t| m.leq(s, t)) {
        Some((w, w2)) => {
            revalidate(q, class, k, l1, l2, &w, &w2)?;
            refuted(q, w, w2)
        }
        None if q == Question::Separation => {
            let separator = type_separator(m, l1.alphabet(), reached.first.keys().copied())?;
            if !l1.is_subset(&separator)? || !separator.intersect(l2)?.is_empty() {
                return Err(Error::Inconsistent(format!("separator check failed at level {k}")));
            }
            Status::Separable { separator }
        }
        None => Status::Member,
    };
    Ok(StratumVerdict { k, status, engine: Engine::TypeMonoid, budget, types_used: m.size() })
}

/// Words whose type lies above one of `seeds`.
fn type_separator(m: &TypeMonoid, alphabet: &Alphabet, seeds: impl Iterator<Item = TypeId>) -> Result<Dfa> {
    let seeds: Vec<TypeId> = seeds.collect();
    let n = m.size();
    let mut transitions = Vec::with_capacity(n * alphabet.len());
    for t in 0..n as TypeId {
        for a in alphabet.letters() {
            transitions.push((t, a, m.step(t, a)));
        }
    }
    let accepting: Vec<u32> = (0..n as TypeId).filter(|&t| seeds.iter().any(|&s| m.leq(s, t))).collect();
    Ok(Dfa::from_parts(alphabet.clone(), n, &transitions, m.unit(), &accepting)?.minimize())
}

fn fallback(q: Question, l1: &Dfa, l2: &Dfa, class: &LanguageClass, k: usize, budget: Budget) -> Result<StratumVerdict> {
    let mut sys = TypeSystem::new(ClassMonoid::new(class)?, usize::MAX);
    sys.ensure_level(k)?;
    let unit = sys.unit(k);
    let reached = {
        let sys = &mut sys;
        explore(q, l1, l2, unit, |t, a| {
            let b = sys.letter(k, a);
            sys.mult(k, t, b)
        }, Some(budget.max_len))?
    };
    let types_used = sys.size(k);
    if let Some((w, w2)) = best_pair(q, &reached, |s, t| sys.leq(k, s, t)) {
        revalidate(q, class, k, l1, l2, &w, &w2)?;
        return Ok(StratumVerdict { k, status: refuted(q, w, w2), engine: Engine::WordSearch, budget, types_used });
    }
    if let Some((w, w2)) = pumping_witness(q, l1, l2, class, k)? {
        return Ok(StratumVerdict { k, status: refuted(q, w, w2), engine: Engine::Pumping, budget, types_used });
    }
    let reason = format!(
        "level {k} type monoid exceeds {} types; no witness among words of length at most {} or pumping candidates",
        budget.types, budget.max_len
    );
    Ok(StratumVerdict { k, status: Status::Inconclusive { reason }, engine: Engine::WordSearch, budget, types_used })
}

/// Scans the pumping shapes for a pair with the right membership pattern,
/// shortest first, and returns the first one that re-validates.
fn pumping_witness(q: Question, l1: &Dfa, l2: &Dfa, class: &LanguageClass, k: usize) -> Result<Option<(Word, Word)>> {
    let monoid = ClassMonoid::new(class)?;
    let p = monoid.period();
    let m = (1usize << (k + 1)) - 1;
    let alphabet = l1.alphabet();
    let contexts = alphabet.words_up_to(PUMP_CONTEXT);
    let bases: Vec<Word> = alphabet.words_up_to(PUMP_BASE).into_iter().filter(|u| !u.is_empty()).collect();
    let inserts = alphabet.words_up_to(PUMP_INSERT);
    let pattern = |w: &Word, w2: &Word| match q {
        Question::Pol | Question::BPol => l1.accepts(w) && !l1.accepts(w2),
        Question::Separation => l1.accepts(w) && l2.accepts(w2),
    };
    // Pairs that are related by the pumping lemmas alone, and pairs that
    // still need the reverse inequality checked.
    let mut sure: Vec<Key> = Vec::new();
    let mut unsure: Vec<Key> = Vec::new();
    for u in &bases {
        let up = u.pow(p);
        let pumped = u.pow(p * m);
        let longer = u.pow(p * (m + 1));
        let inserts_ok: Vec<&Word> =
            inserts.iter().filter(|v| monoid.leq(monoid.eval(&up.0), monoid.eval(&v.0))).collect();
        for x in &contexts {
            for y in &contexts {
                let w = x.concat(&pumped).concat(y);
                let w_long = x.concat(&longer).concat(y);
                for (a, b) in [(&w, &w_long), (&w_long, &w)] {
                    if pattern(a, b) {
                        sure.push(key(a, b));
                    }
                }
                for v in &inserts_ok {
                    let w2 = x.concat(&pumped).concat(v).concat(&pumped).concat(y);
                    if pattern(&w, &w2) {
                        if q == Question::BPol {
                            unsure.push(key(&w, &w2));
                        } else {
                            sure.push(key(&w, &w2));
                        }
                    }
                }
            }
        }
    }
    sure.sort();
    sure.dedup();
    unsure.sort();
    unsure.dedup();
    let mut order = WordOrder::new(class)?;
    let mut best: Option<Key> = None;
    if let Some(c) = sure.into_iter().next() {
        revalidate(q, class, k, l1, l2, &c.1, &c.2)?;
        best = Some(c);
    }
    for c in unsure.into_iter().take(PUMP_CHECKS) {
        if best.as_ref().is_some_and(|b| c >= *b) {
            break;
        }
        if order.equivalent(k, &c.1, &c.2)? {
            best = Some(c);
            break;
        }
    }
    Ok(best.map(|(_, w, w2)| (w, w2)))
}

/// Whether L ∈ Pol_k(C).
pub fn pol_stratum_member(l: &Dfa, class: &LanguageClass, k: usize, budget: Budget) -> Result<StratumVerdict> {
    decide(Question::Pol, l, l, class, k, budget)
}

/// Whether L ∈ BPol_k(C), the Boolean closure of Pol_k(C).
pub fn bpol_stratum_member(l: &Dfa, class: &LanguageClass, k: usize, budget: Budget) -> Result<StratumVerdict> {
    decide(Question::BPol, l, l, class, k, budget)
}

/// Whether some language of Pol_k(C) contains L1 and misses L2.
pub fn pol_stratum_separable(
    l1: &Dfa,
    l2: &Dfa,
    class: &LanguageClass,
    k: usize,
    budget: Budget,
) -> Result<StratumVerdict> {
    decide(Question::Separation, l1, l2, class, k, budget)
}

/// [`pol_stratum_member`] on a prebuilt monoid.
pub fn pol_member_in(m: &TypeMonoid, class: &LanguageClass, l: &Dfa) -> Result<StratumVerdict> {
    check_alphabet(class, l)?;
    decide_in(Question::Pol, l, l, class, m, Budget { types: m.size(), ..Budget::default() })
}

/// [`bpol_stratum_member`] on a prebuilt monoid.
pub fn bpol_member_in(m: &TypeMonoid, class: &LanguageClass, l: &Dfa) -> Result<StratumVerdict> {
    check_alphabet(class, l)?;
    decide_in(Question::BPol, l, l, class, m, Budget { types: m.size(), ..Budget::default() })
}

/// [`pol_stratum_separable`] on a prebuilt monoid.
pub fn pol_separable_in(m: &TypeMonoid, class: &LanguageClass, l1: &Dfa, l2: &Dfa) -> Result<StratumVerdict> {
    check_alphabet(class, l1)?;
    check_alphabet(class, l2)?;
    decide_in(Question::Separation, l1, l2, class, m, Budget { types: m.size(), ..Budget::default() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparabilitySearch {
    /// One verdict per level tried, in order.
    pub verdicts: Vec<StratumVerdict>,
    /// First level with a Separable verdict.
    pub separable_at: Option<usize>,
}

/// Tries k = 0, 1, …, kmax and stops at the first separable level or at
/// the first Inconclusive verdict.
pub fn pol_separability_search(
    l1: &Dfa,
    l2: &Dfa,
    class: &LanguageClass,
    kmax: usize,
    budget: Budget,
) -> Result<SeparabilitySearch> {
    let mut verdicts = Vec::new();
    for k in 0..=kmax {
        let v = pol_stratum_separable(l1, l2, class, k, budget)?;
        let stop = !matches!(v.status, Status::NotSeparable { .. });
        let separable = matches!(v.status, Status::Separable { .. });
        verdicts.push(v);
        if separable {
            return Ok(SeparabilitySearch { verdicts, separable_at: Some(k) });
        }
        if stop {
            break;
        }
    }
    Ok(SeparabilitySearch { verdicts, separable_at: None })
}
