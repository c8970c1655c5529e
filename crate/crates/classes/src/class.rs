use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use chier_regular::{compile_regex, minimize_colored, Alphabet, Dfa, DfaJson, Letter, Word};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of members materialized for a generated class.
pub const DEFAULT_MEMBER_CAP: usize = 4096;

/// The builtin bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisKind {
    /// {∅, A*}
    St0,
    /// {∅, {ε}, A⁺, A*}
    Dd0,
    /// Boolean combinations of A*aA*.
    At,
    /// Unions of B* for B ⊆ A.
    Wat,
    /// Boolean combinations of "at least d' occurrences of a", d' ≤ d.
    Att(u32),
}

impl BasisKind {
    pub fn name(&self) -> String {
        match self {
            BasisKind::St0 => "st0".into(),
            BasisKind::Dd0 => "dd0".into(),
            BasisKind::At => "at".into(),
            BasisKind::Wat => "wat".into(),
            BasisKind::Att(d) => format!("att:{d}"),
        }
    }
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for BasisKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "st0" => Ok(BasisKind::St0),
            "dd0" => Ok(BasisKind::Dd0),
            "at" => Ok(BasisKind::At),
            "wat" => Ok(BasisKind::Wat),
            _ => {
                let arg = lower
                    .strip_prefix("att:")
                    .or_else(|| lower.strip_prefix("att(").and_then(|r| r.strip_suffix(')')))
                    .ok_or_else(|| Error::UnknownBasis(s.to_string()))?;
                let d: u32 = arg.parse().map_err(|_| Error::BadParameter(format!("threshold {arg:?}")))?;
                if d == 0 {
                    return Err(Error::BadParameter("att threshold must be at least 1".into()));
                }
                Ok(BasisKind::Att(d))
            }
        }
    }
}

/// A named member language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Member {
    pub name: String,
    pub dfa: Dfa,
}

/// Closure properties of a class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Properties {
    pub lattice: bool,
    pub boolean_algebra: bool,
    pub quotienting: bool,
}

/// The minimal automaton computing the vector of test memberships.
///
/// Each state has a color; colors index `palette`, whose entries list the
/// membership bit of every test language.
#[derive(Clone, Debug)]
pub struct VectorAutomaton {
    pub k: usize,
    pub delta: Vec<u32>,
    pub colors: Vec<u32>,
    pub palette: Vec<Vec<bool>>,
}

impl VectorAutomaton {
    pub fn states(&self) -> usize {
        self.colors.len()
    }

    pub fn next(&self, q: u32, a: Letter) -> u32 {
        self.delta[q as usize * self.k + a as usize]
    }

    pub fn run_from(&self, q: u32, w: &[Letter]) -> u32 {
        w.iter().fold(q, |q, &a| self.next(q, a))
    }

    pub fn vector(&self, q: u32) -> &[bool] {
        &self.palette[self.colors[q as usize] as usize]
    }

    /// Whether every test containing a word reaching `p` also contains
    /// every word reaching `q`.
    pub fn implies(&self, p: u32, q: u32) -> bool {
        implies(self.vector(p), self.vector(q))
    }
}

pub(crate) fn implies(x: &[bool], y: &[bool]) -> bool {
    x.iter().zip(y).all(|(&a, &b)| !a || b)
}

/// A finite class of regular languages over a fixed alphabet.
///
/// Besides its members, a class carries a list of *test* languages: members
/// whose membership implications already determine the canonical preorder.
/// For Boolean algebras generated by atoms the tests are the atoms; for
/// explicit classes they are all members. Large generated classes keep only
/// their tests and report [`Error::BudgetExceeded`] when the full member list
/// is requested.
#[derive(Clone)]
pub struct LanguageClass {
    name: String,
    kind: Option<BasisKind>,
    alphabet: Alphabet,
    members: Option<Vec<Member>>,
    member_count: u128,
    tests: Vec<Dfa>,
    known: Option<Properties>,
    cap: usize,
    vectors: OnceLock<VectorAutomaton>,
    properties: OnceLock<Properties>,
}

impl fmt::Debug for LanguageClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LanguageClass")
            .field("name", &self.name)
            .field("alphabet", &self.alphabet)
            .field("members", &self.member_count)
            .finish()
    }
}

fn special_name(alphabet: &Alphabet, d: &Dfa) -> Option<&'static str> {
    if d.is_empty() {
        Some("empty")
    } else if *d == Dfa::universal(alphabet) {
        Some("Astar")
    } else if *d == Dfa::nonempty(alphabet) {
        Some("Aplus")
    } else if *d == Dfa::epsilon(alphabet) {
        Some("eps")
    } else {
        None
    }
}

impl LanguageClass {
    /// A class given by an explicit member list. Duplicate languages are
    /// dropped, keeping the first name.
    pub fn from_members(name: &str, alphabet: &Alphabet, members: Vec<(String, Dfa)>) -> Result<Self> {
        let mut out: Vec<Member> = Vec::new();
        let mut seen: HashSet<Dfa> = HashSet::new();
        for (n, d) in members {
            if d.alphabet() != alphabet {
                return Err(chier_regular::Error::AlphabetMismatch.into());
            }
            let d = d.minimize();
            if seen.insert(d.clone()) {
                out.push(Member { name: n, dfa: d });
            }
        }
        let tests = out.iter().map(|m| m.dfa.clone()).collect();
        Ok(LanguageClass {
            name: name.to_string(),
            kind: None,
            alphabet: alphabet.clone(),
            member_count: out.len() as u128,
            members: Some(out),
            tests,
            known: None,
            cap: DEFAULT_MEMBER_CAP,
            vectors: OnceLock::new(),
            properties: OnceLock::new(),
        })
    }

    /// The Boolean algebra whose atoms are the given pairwise disjoint,
    /// nonempty languages covering A*.
    pub fn from_atoms(name: &str, alphabet: &Alphabet, atoms: Vec<(String, Dfa)>, cap: usize) -> Result<Self> {
        let n = atoms.len();
        let count: u128 = if n >= 127 { u128::MAX } else { 1u128 << n };
        let members = if count <= cap as u128 {
            let mut out = Vec::with_capacity(count as usize);
            for mask in 0..count as usize {
                let mut d = Dfa::empty(alphabet);
                let mut parts = Vec::new();
                for (i, (an, ad)) in atoms.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        d = d.union(ad)?;
                        parts.push(an.as_str());
                    }
                }
                let name = special_name(alphabet, &d).map(str::to_string).unwrap_or_else(|| parts.join("|"));
                out.push(Member { name, dfa: d });
            }
            Some(out)
        } else {
            None
        };
        let known = members.is_none().then_some(Properties { lattice: true, boolean_algebra: true, quotienting: false });
        Ok(LanguageClass {
            name: name.to_string(),
            kind: None,
            alphabet: alphabet.clone(),
            members,
            member_count: count,
            tests: atoms.into_iter().map(|(_, d)| d).collect(),
            known,
            cap,
            vectors: OnceLock::new(),
            properties: OnceLock::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> Option<BasisKind> {
        self.kind
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Number of members, whether or not they are materialized.
    pub fn member_count(&self) -> u128 {
        self.member_count
    }

    /// The explicit member list.
    pub fn members(&self) -> Result<&[Member]> {
        self.members
            .as_deref()
            .ok_or(Error::BudgetExceeded { count: self.member_count, cap: self.cap })
    }

    /// Languages whose membership implications define the canonical preorder.
    pub fn tests(&self) -> &[Dfa] {
        &self.tests
    }

    /// Looks a member up by name.
    pub fn member_by_name(&self, name: &str) -> Option<&Member> {
        self.members.as_ref()?.iter().find(|m| m.name == name)
    }

    /// Position of a language in the member list.
    pub fn index_of(&self, d: &Dfa) -> Option<usize> {
        let d = d.minimize();
        self.members.as_ref()?.iter().position(|m| m.dfa == d)
    }

    pub fn vector_automaton(&self) -> &VectorAutomaton {
        self.vectors.get_or_init(|| build_vector_automaton(&self.alphabet, &self.tests))
    }

    /// One bit per member.
    pub fn membership_vector(&self, w: &Word) -> Result<Vec<bool>> {
        Ok(self.members()?.iter().map(|m| m.dfa.accepts(w)).collect())
    }

    /// w ≤_C w'
    pub fn leq(&self, w: &Word, w2: &Word) -> bool {
        let v = self.vector_automaton();
        v.implies(v.run_from(0, &w.0), v.run_from(0, &w2.0))
    }

    /// Intersection of the members containing `w`.
    pub fn upper_set(&self, w: &Word) -> Dfa {
        let mut d = Dfa::universal(&self.alphabet);
        for t in &self.tests {
            if t.accepts(w) {
                d = d.intersect(t).expect("tests share the class alphabet");
            }
        }
        d
    }

    /// Lattice, Boolean algebra and quotienting flags. Generated classes
    /// report what their construction guarantees; explicit classes are
    /// checked against their member list.
    pub fn properties(&self) -> Properties {
        *self.properties.get_or_init(|| match (self.known, &self.members) {
            (Some(p), _) => p,
            (None, Some(m)) => compute_properties(&self.alphabet, m),
            (None, None) => Properties { lattice: true, boolean_algebra: true, quotienting: false },
        })
    }

    /// The three properties recomputed from the member list.
    pub fn computed_properties(&self) -> Result<Properties> {
        Ok(compute_properties(&self.alphabet, self.members()?))
    }

    pub fn require_lattice(&self) -> Result<()> {
        if self.properties().lattice {
            Ok(())
        } else {
            Err(Error::NotLattice(self.name.clone()))
        }
    }

    pub fn require_quotienting(&self) -> Result<()> {
        if self.properties().quotienting {
            Ok(())
        } else {
            Err(Error::NotQuotienting(self.name.clone()))
        }
    }

    /// The Boolean algebra generated by this class's tests and `extra`.
    pub fn boolean_closure(&self, name: &str, extra: &[Dfa], cap: usize) -> Result<Self> {
        let mut gens: Vec<Dfa> = self.tests.clone();
        gens.extend(extra.iter().cloned());
        let atoms = refine_atoms(&self.alphabet, &gens)?;
        let quotienting = gens.iter().all(|g| {
            self.alphabet.letters().all(|a| {
                let w = Word(vec![a]);
                in_algebra(&atoms, &g.left_quotient(&w)) && in_algebra(&atoms, &g.right_quotient(&w))
            })
        });
        let named = atoms.iter().enumerate().map(|(i, d)| (format!("atom{i}"), d.clone())).collect();
        let mut c = LanguageClass::from_atoms(name, &self.alphabet, named, cap)?;
        c.known = Some(Properties { lattice: true, boolean_algebra: true, quotienting });
        Ok(c)
    }

    /// Parses the class JSON format.
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: ClassJson = serde_json::from_str(text).map_err(|e| Error::BadClass(e.to_string()))?;
        let alphabet = Alphabet::parse(&spec.alphabet)?;
        let mut members = Vec::new();
        for l in spec.languages {
            let d = match (l.regex, l.dfa) {
                (Some(r), None) => compile_regex(&r, &alphabet)?,
                (None, Some(j)) => {
                    let d = Dfa::try_from(j)?.minimize();
                    if *d.alphabet() != alphabet {
                        return Err(chier_regular::Error::AlphabetMismatch.into());
                    }
                    d
                }
                _ => return Err(Error::BadClass(format!("language {:?} needs exactly one of regex, dfa", l.name))),
            };
            members.push((l.name, d));
        }
        LanguageClass::from_members(&spec.name, &alphabet, members)
    }

    pub fn to_json(&self) -> Result<ClassJson> {
        Ok(ClassJson {
            name: self.name.clone(),
            alphabet: self.alphabet.to_string(),
            languages: self
                .members()?
                .iter()
                .map(|m| LanguageJson { name: m.name.clone(), regex: None, dfa: Some(DfaJson::from(&m.dfa)) })
                .collect(),
        })
    }
}

/// Class JSON: `{name, alphabet, languages: [{name, regex}]}`. A language
/// may carry a `dfa` in the automaton JSON format instead of a regex, which
/// is the only way to write ∅.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassJson {
    pub name: String,
    pub alphabet: String,
    pub languages: Vec<LanguageJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LanguageJson {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regex: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dfa: Option<DfaJson>,
}

fn compute_properties(alphabet: &Alphabet, members: &[Member]) -> Properties {
    let set: HashSet<&Dfa> = members.iter().map(|m| &m.dfa).collect();
    let has = |d: &Dfa| set.contains(d);
    let mut lattice = has(&Dfa::empty(alphabet)) && has(&Dfa::universal(alphabet));
    'outer: for (i, x) in members.iter().enumerate() {
        for y in &members[i + 1..] {
            if !lattice {
                break 'outer;
            }
            lattice = has(&x.dfa.union(&y.dfa).unwrap()) && has(&x.dfa.intersect(&y.dfa).unwrap());
        }
    }
    let boolean_algebra = lattice && members.iter().all(|m| has(&m.dfa.complement()));
    let quotienting = members.iter().all(|m| {
        alphabet.letters().all(|a| {
            let w = Word(vec![a]);
            has(&m.dfa.left_quotient(&w)) && has(&m.dfa.right_quotient(&w))
        })
    });
    Properties { lattice, boolean_algebra, quotienting }
}

/// Whether `l` is a union of the given atoms.
pub fn in_algebra(atoms: &[Dfa], l: &Dfa) -> bool {
    atoms.iter().all(|a| {
        let inside = a.intersect(l).expect("same alphabet");
        inside.is_empty() || inside == *a
    })
}

/// Splits A* by every generator, keeping the nonempty pieces.
pub fn refine_atoms(alphabet: &Alphabet, generators: &[Dfa]) -> Result<Vec<Dfa>> {
    let mut atoms = vec![Dfa::universal(alphabet)];
    for g in generators {
        let mut next = Vec::with_capacity(atoms.len() * 2);
        for a in &atoms {
            for part in [a.intersect(g)?, a.difference(g)?] {
                if !part.is_empty() && !next.contains(&part) {
                    next.push(part);
                }
            }
        }
        atoms = next;
    }
    Ok(atoms)
}

fn build_vector_automaton(alphabet: &Alphabet, tests: &[Dfa]) -> VectorAutomaton {
    let k = alphabet.len();
    let start: Vec<u32> = tests.iter().map(|t| t.initial()).collect();
    let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut tuples = vec![start.clone()];
    index.insert(start, 0);
    let mut delta = Vec::new();
    let mut i = 0;
    while i < tuples.len() {
        for a in alphabet.letters() {
            let next: Vec<u32> = tuples[i].iter().zip(tests).map(|(&q, t)| t.next(q, a)).collect();
            let fresh = tuples.len() as u32;
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    index.insert(next.clone(), fresh);
                    tuples.push(next);
                    fresh
                }
            };
            delta.push(id);
        }
        i += 1;
    }
    let mut palette: Vec<Vec<bool>> = Vec::new();
    let mut pindex: HashMap<Vec<bool>, u32> = HashMap::new();
    let colors: Vec<u32> = tuples
        .iter()
        .map(|t| {
            let v: Vec<bool> = t.iter().zip(tests).map(|(&q, d)| d.is_accepting(q)).collect();
            let fresh = palette.len() as u32;
            *pindex.entry(v.clone()).or_insert_with(|| {
                palette.push(v);
                fresh
            })
        })
        .collect();
    let q = minimize_colored(k, &delta, 0, &colors);
    VectorAutomaton { k, delta: q.delta, colors: q.colors, palette }
}

fn subset_letters(alphabet: &Alphabet, mask: usize) -> Vec<Letter> {
    alphabet.letters().filter(|&a| mask >> a & 1 == 1).collect()
}

fn subset_name(alphabet: &Alphabet, mask: usize) -> String {
    subset_letters(alphabet, mask).iter().map(|&a| alphabet.symbol(a)).collect()
}

/// Builds one of the builtin bases.
pub fn builtin_basis(kind: BasisKind, alphabet: &Alphabet, cap: usize) -> Result<LanguageClass> {
    let n = alphabet.len();
    let mut class = match kind {
        BasisKind::St0 => {
            LanguageClass::from_atoms("st0", alphabet, vec![("Astar".into(), Dfa::universal(alphabet))], cap)?
        }
        BasisKind::Dd0 => LanguageClass::from_atoms(
            "dd0",
            alphabet,
            vec![("eps".into(), Dfa::epsilon(alphabet)), ("Aplus".into(), Dfa::nonempty(alphabet))],
            cap,
        )?,
        BasisKind::At => {
            if n > 6 {
                return Err(Error::BudgetExceeded { count: u128::MAX, cap });
            }
            let mut atoms = Vec::new();
            for mask in 0..1usize << n {
                let letters = subset_letters(alphabet, mask);
                let mut d = Dfa::subset_star(alphabet, &letters);
                for &a in &letters {
                    d = d.intersect(&Dfa::contains_letter(alphabet, a))?;
                }
                atoms.push((format!("cont[{}]", subset_name(alphabet, mask)), d));
            }
            LanguageClass::from_atoms("at", alphabet, atoms, cap)?
        }
        BasisKind::Att(d) => {
            let per = d as u128 + 1;
            let total = per.checked_pow(n as u32).unwrap_or(u128::MAX);
            if total > cap as u128 {
                return Err(Error::BudgetExceeded { count: total, cap });
            }
            let mut atoms = Vec::new();
            let mut profile = vec![0u32; n];
            loop {
                let mut lang = Dfa::universal(alphabet);
                let mut label = String::new();
                for (a, &c) in profile.iter().enumerate() {
                    let a = a as Letter;
                    let mut part = Dfa::at_least(alphabet, a, c as usize);
                    if c < d {
                        part = part.difference(&Dfa::at_least(alphabet, a, c as usize + 1))?;
                    }
                    lang = lang.intersect(&part)?;
                    label.push(alphabet.symbol(a));
                    label.push_str(&c.to_string());
                }
                atoms.push((format!("cnt[{label}]"), lang));
                let mut i = 0;
                while i < n && profile[i] == d {
                    profile[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
                profile[i] += 1;
            }
            LanguageClass::from_atoms(&format!("att:{d}"), alphabet, atoms, cap)?
        }
        BasisKind::Wat => {
            if n > 4 {
                return Err(Error::BudgetExceeded { count: u128::MAX, cap });
            }
            let gens: Vec<(String, Dfa)> = (0..1usize << n)
                .map(|m| (format!("{{{}}}*", subset_name(alphabet, m)), Dfa::subset_star(alphabet, &subset_letters(alphabet, m))))
                .collect();
            let mut members: Vec<(String, Dfa)> = Vec::new();
            let mut seen: HashSet<Dfa> = HashSet::new();
            for mask in 0..1u64 << gens.len() {
                let mut d = Dfa::empty(alphabet);
                let mut parts = Vec::new();
                for (i, (gn, gd)) in gens.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        d = d.union(gd)?;
                        parts.push(gn.as_str());
                    }
                }
                if seen.insert(d.clone()) {
                    if members.len() >= cap {
                        return Err(Error::BudgetExceeded { count: members.len() as u128 + 1, cap });
                    }
                    let name = special_name(alphabet, &d).map(str::to_string).unwrap_or_else(|| parts.join("|"));
                    members.push((name, d));
                }
            }
            let mut c = LanguageClass::from_members("wat", alphabet, members)?;
            c.tests = gens.into_iter().map(|(_, d)| d).collect();
            c.known = Some(Properties { lattice: true, boolean_algebra: false, quotienting: true });
            c
        }
    };
    class.kind = Some(kind);
    class.cap = cap;
    if !matches!(kind, BasisKind::Wat) {
        class.known = Some(Properties { lattice: true, boolean_algebra: true, quotienting: true });
    }
    Ok(class)
}
