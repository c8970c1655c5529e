use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Letter, Word};
use crate::error::{Error, Result};
use crate::nfa::Nfa;

/// Default state cap for subset constructions.
pub const DEFAULT_STATE_LIMIT: usize = 1 << 20;

/// Which side a quotient is taken from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolOp {
    Union,
    Intersect,
    Complement,
}

/// A complete deterministic automaton.
///
/// Every public operation returns canonical automata: minimal, restricted to
/// reachable states, and numbered in the order of the length-lex least word
/// reaching each state. Two canonical automata over the same alphabet are
/// structurally equal iff they recognize the same language.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dfa {
    alphabet: Alphabet,
    delta: Vec<u32>,
    initial: u32,
    accepting: Vec<bool>,
    canonical: bool,
}

/// Result of minimizing an automaton whose states carry arbitrary colors.
#[derive(Clone, Debug)]
pub struct ColoredQuotient {
    pub states: usize,
    pub delta: Vec<u32>,
    pub colors: Vec<u32>,
    /// For each reachable input state, its class in the quotient.
    pub class_of: Vec<Option<u32>>,
}

/// Minimizes a colored complete automaton (Moore machine) and renumbers the
/// classes in BFS order from `initial`. State 0 of the result is the class of
/// `initial`.
pub fn minimize_colored(k: usize, delta: &[u32], initial: u32, colors: &[u32]) -> ColoredQuotient {
    let n = colors.len();
    // Reachable states, in BFS order.
    let mut order: Vec<u32> = vec![initial];
    let mut local: Vec<u32> = vec![u32::MAX; n];
    local[initial as usize] = 0;
    let mut i = 0;
    while i < order.len() {
        let q = order[i] as usize;
        for a in 0..k {
            let r = delta[q * k + a];
            if local[r as usize] == u32::MAX {
                local[r as usize] = order.len() as u32;
                order.push(r);
            }
        }
        i += 1;
    }
    let m = order.len();
    let mut d = vec![0u32; m * k];
    for (s, &q) in order.iter().enumerate() {
        for a in 0..k {
            d[s * k + a] = local[delta[q as usize * k + a] as usize];
        }
    }

    let mut class: Vec<u32> = Vec::with_capacity(m);
    {
        let mut ids: HashMap<u32, u32> = HashMap::new();
        for &q in &order {
            let next = ids.len() as u32;
            class.push(*ids.entry(colors[q as usize]).or_insert(next));
        }
    }
    let mut count = class.iter().copied().max().map_or(0, |c| c + 1) as usize;
    let mut key: Vec<u32> = Vec::with_capacity(k + 1);
    loop {
        let mut ids: HashMap<Vec<u32>, u32> = HashMap::with_capacity(count * 2);
        let mut next_class = Vec::with_capacity(m);
        for s in 0..m {
            key.clear();
            key.push(class[s]);
            for a in 0..k {
                key.push(class[d[s * k + a] as usize]);
            }
            let fresh = ids.len() as u32;
            let id = match ids.get(&key) {
                Some(&id) => id,
                None => {
                    ids.insert(key.clone(), fresh);
                    fresh
                }
            };
            next_class.push(id);
        }
        let refined = ids.len();
        class = next_class;
        if refined == count {
            break;
        }
        count = refined;
    }

    // Renumber classes by BFS from the initial class.
    let mut rep: Vec<u32> = vec![u32::MAX; count];
    for s in (0..m).rev() {
        rep[class[s] as usize] = s as u32;
    }
    let mut renum: Vec<u32> = vec![u32::MAX; count];
    let mut queue: Vec<u32> = vec![class[0]];
    renum[class[0] as usize] = 0;
    let mut i = 0;
    while i < queue.len() {
        let c = queue[i];
        let s = rep[c as usize] as usize;
        for a in 0..k {
            let t = class[d[s * k + a] as usize];
            if renum[t as usize] == u32::MAX {
                renum[t as usize] = queue.len() as u32;
                queue.push(t);
            }
        }
        i += 1;
    }
    let mut out_delta = vec![0u32; count * k];
    let mut out_colors = vec![0u32; count];
    for (new, &c) in queue.iter().enumerate() {
        let s = rep[c as usize] as usize;
        out_colors[new] = colors[order[s] as usize];
        for a in 0..k {
            out_delta[new * k + a] = renum[class[d[s * k + a] as usize] as usize];
        }
    }
    let mut class_of = vec![None; n];
    for (s, &q) in order.iter().enumerate() {
        class_of[q as usize] = Some(renum[class[s] as usize]);
    }
    ColoredQuotient { states: count, delta: out_delta, colors: out_colors, class_of }
}

impl Dfa {
    /// Builds and canonicalizes an automaton from a flat transition table
    /// indexed by `state * |A| + letter`.
    pub(crate) fn build(alphabet: Alphabet, delta: Vec<u32>, initial: u32, accepting: Vec<bool>) -> Dfa {
        let k = alphabet.len();
        let colors: Vec<u32> = accepting.iter().map(|&b| b as u32).collect();
        let q = minimize_colored(k, &delta, initial, &colors);
        Dfa {
            alphabet,
            delta: q.delta,
            initial: 0,
            accepting: q.colors.iter().map(|&c| c == 1).collect(),
            canonical: true,
        }
    }

    /// Builds an automaton from explicit parts without minimizing it.
    pub fn from_parts(
        alphabet: Alphabet,
        states: usize,
        transitions: &[(u32, Letter, u32)],
        initial: u32,
        accepting: &[u32],
    ) -> Result<Dfa> {
        let k = alphabet.len();
        if states == 0 {
            return Err(Error::Malformed("no states".into()));
        }
        if initial as usize >= states {
            return Err(Error::Malformed(format!("initial state {initial} out of range")));
        }
        let mut delta = vec![u32::MAX; states * k];
        for &(p, a, q) in transitions {
            if p as usize >= states || q as usize >= states {
                return Err(Error::Malformed(format!("transition ({p}, {a}, {q}) out of range")));
            }
            if a as usize >= k {
                return Err(Error::LetterOutOfRange(a as usize));
            }
            let slot = &mut delta[p as usize * k + a as usize];
            if *slot != u32::MAX && *slot != q {
                return Err(Error::Malformed(format!("state {p} has two transitions on letter {a}")));
            }
            *slot = q;
        }
        if let Some(i) = delta.iter().position(|&q| q == u32::MAX) {
            return Err(Error::Malformed(format!(
                "missing transition from state {} on letter {}",
                i / k,
                i % k
            )));
        }
        let mut acc = vec![false; states];
        for &q in accepting {
            if q as usize >= states {
                return Err(Error::Malformed(format!("accepting state {q} out of range")));
            }
            acc[q as usize] = true;
        }
        Ok(Dfa { alphabet, delta, initial, accepting: acc, canonical: false })
    }

    /// The canonical form of this automaton.
    pub fn minimize(&self) -> Dfa {
        if self.canonical {
            return self.clone();
        }
        Dfa::build(self.alphabet.clone(), self.delta.clone(), self.initial, self.accepting.clone())
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> u32 {
        self.initial
    }

    pub fn is_accepting(&self, q: u32) -> bool {
        self.accepting[q as usize]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.state_count() as u32).filter(|&q| self.accepting[q as usize])
    }

    pub fn next(&self, q: u32, a: Letter) -> u32 {
        self.delta[q as usize * self.alphabet.len() + a as usize]
    }

    pub fn run_from(&self, q: u32, w: &[Letter]) -> u32 {
        w.iter().fold(q, |q, &a| self.next(q, a))
    }

    pub fn run(&self, w: &Word) -> u32 {
        self.run_from(self.initial, &w.0)
    }

    pub fn accepts(&self, w: &Word) -> bool {
        self.is_accepting(self.run(w))
    }

    pub fn accepts_letters(&self, w: &[Letter]) -> bool {
        self.is_accepting(self.run_from(self.initial, w))
    }

    pub fn accepts_epsilon(&self) -> bool {
        self.is_accepting(self.initial)
    }

    fn check_same(&self, other: &Dfa) -> Result<()> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    pub fn empty(alphabet: &Alphabet) -> Dfa {
        Dfa::build(alphabet.clone(), vec![0; alphabet.len()], 0, vec![false])
    }

    pub fn universal(alphabet: &Alphabet) -> Dfa {
        Dfa::build(alphabet.clone(), vec![0; alphabet.len()], 0, vec![true])
    }

    pub fn epsilon(alphabet: &Alphabet) -> Dfa {
        Dfa::from_word(alphabet, &Word::epsilon())
    }

    /// A⁺
    pub fn nonempty(alphabet: &Alphabet) -> Dfa {
        Dfa::epsilon(alphabet).complement()
    }

    /// The singleton language {w}.
    pub fn from_word(alphabet: &Alphabet, w: &Word) -> Dfa {
        let k = alphabet.len();
        let n = w.len() + 2;
        let sink = (n - 1) as u32;
        let mut delta = vec![sink; n * k];
        for (i, &a) in w.0.iter().enumerate() {
            delta[i * k + a as usize] = (i + 1) as u32;
        }
        let mut acc = vec![false; n];
        acc[w.len()] = true;
        Dfa::build(alphabet.clone(), delta, 0, acc)
    }

    /// A finite language.
    pub fn from_words<'a>(alphabet: &Alphabet, words: impl IntoIterator<Item = &'a Word>) -> Dfa {
        let k = alphabet.len();
        // Trie with a trailing sink.
        let mut delta: Vec<u32> = vec![u32::MAX; k];
        let mut acc = vec![false];
        for w in words {
            let mut q = 0usize;
            for &a in &w.0 {
                let slot = q * k + a as usize;
                if delta[slot] == u32::MAX {
                    let fresh = acc.len();
                    acc.push(false);
                    delta.extend(std::iter::repeat_n(u32::MAX, k));
                    delta[slot] = fresh as u32;
                }
                q = delta[slot] as usize;
            }
            acc[q] = true;
        }
        let sink = acc.len() as u32;
        acc.push(false);
        delta.extend(std::iter::repeat_n(sink, k));
        for t in delta.iter_mut() {
            if *t == u32::MAX {
                *t = sink;
            }
        }
        Dfa::build(alphabet.clone(), delta, 0, acc)
    }

    /// B* for a subset B of the alphabet.
    pub fn subset_star(alphabet: &Alphabet, subset: &[Letter]) -> Dfa {
        let k = alphabet.len();
        let mut delta = vec![1u32; 2 * k];
        for &a in subset {
            delta[a as usize] = 0;
        }
        Dfa::build(alphabet.clone(), delta, 0, vec![true, false])
    }

    /// A*aA*
    pub fn contains_letter(alphabet: &Alphabet, a: Letter) -> Dfa {
        Dfa::at_least(alphabet, a, 1)
    }

    /// Words with at least `count` occurrences of `a`.
    pub fn at_least(alphabet: &Alphabet, a: Letter, count: usize) -> Dfa {
        let k = alphabet.len();
        let n = count + 1;
        let mut delta = Vec::with_capacity(n * k);
        for q in 0..n {
            for b in 0..k {
                let next = if b == a as usize { (q + 1).min(count) } else { q };
                delta.push(next as u32);
            }
        }
        let mut acc = vec![false; n];
        acc[count] = true;
        Dfa::build(alphabet.clone(), delta, 0, acc)
    }

    pub fn complement(&self) -> Dfa {
        let acc = self.accepting.iter().map(|&b| !b).collect();
        Dfa::build(self.alphabet.clone(), self.delta.clone(), self.initial, acc)
    }

    fn product(&self, other: &Dfa, f: impl Fn(bool, bool) -> bool) -> Result<Dfa> {
        self.check_same(other)?;
        let k = self.alphabet.len();
        let mut index: HashMap<(u32, u32), u32> = HashMap::new();
        let mut pairs = vec![(self.initial, other.initial)];
        index.insert(pairs[0], 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            for a in 0..k as Letter {
                let t = (self.next(p, a), other.next(q, a));
                let fresh = pairs.len() as u32;
                let id = *index.entry(t).or_insert_with(|| {
                    pairs.push(t);
                    fresh
                });
                delta.push(id);
            }
            i += 1;
        }
        let acc = pairs.iter().map(|&(p, q)| f(self.is_accepting(p), other.is_accepting(q))).collect();
        Ok(Dfa::build(self.alphabet.clone(), delta, 0, acc))
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |x, y| x || y)
    }

    pub fn intersect(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |x, y| x && y)
    }

    pub fn difference(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |x, y| x && !y)
    }

    /// n-ary Boolean operation. Complement takes exactly one argument; an
    /// empty union is ∅ and an empty intersection is A* (which needs at
    /// least one argument to fix the alphabet).
    pub fn bool_op(kind: BoolOp, args: &[&Dfa]) -> Result<Dfa> {
        match kind {
            BoolOp::Complement => match args {
                [d] => Ok(d.complement()),
                _ => Err(Error::Malformed(format!("complement takes one argument, got {}", args.len()))),
            },
            BoolOp::Union | BoolOp::Intersect => {
                let (first, rest) =
                    args.split_first().ok_or_else(|| Error::Malformed("no arguments".into()))?;
                let mut acc = (*first).clone();
                for d in rest {
                    acc = if kind == BoolOp::Union { acc.union(d)? } else { acc.intersect(d)? };
                }
                Ok(acc)
            }
        }
    }

    pub fn union_all<'a>(alphabet: &Alphabet, args: impl IntoIterator<Item = &'a Dfa>) -> Result<Dfa> {
        args.into_iter().try_fold(Dfa::empty(alphabet), |acc, d| acc.union(d))
    }

    pub fn intersect_all<'a>(alphabet: &Alphabet, args: impl IntoIterator<Item = &'a Dfa>) -> Result<Dfa> {
        args.into_iter().try_fold(Dfa::universal(alphabet), |acc, d| acc.intersect(d))
    }

    /// KL
    pub fn concat(&self, other: &Dfa) -> Result<Dfa> {
        self.check_same(other)?;
        let mut nfa = Nfa::new();
        let left = nfa.embed(self, false);
        let right = nfa.embed(other, true);
        nfa.add_initial(left + self.initial);
        for q in self.accepting_states() {
            nfa.add_eps(left + q, right + other.initial);
        }
        nfa.determinize(&self.alphabet, DEFAULT_STATE_LIMIT)
    }

    /// KaL
    pub fn marked_concat(&self, a: Letter, other: &Dfa) -> Result<Dfa> {
        self.check_same(other)?;
        if a as usize >= self.alphabet.len() {
            return Err(Error::LetterOutOfRange(a as usize));
        }
        let mut nfa = Nfa::new();
        let left = nfa.embed(self, false);
        let right = nfa.embed(other, true);
        nfa.add_initial(left + self.initial);
        for q in self.accepting_states() {
            nfa.add(left + q, a, right + other.initial);
        }
        nfa.determinize(&self.alphabet, DEFAULT_STATE_LIMIT)
    }

    /// L*
    pub fn star(&self) -> Dfa {
        let mut nfa = Nfa::new();
        let start = nfa.add_state(true);
        let inner = nfa.embed(self, true);
        nfa.add_initial(start);
        nfa.add_eps(start, inner + self.initial);
        for q in self.accepting_states() {
            nfa.add_eps(inner + q, inner + self.initial);
        }
        nfa.determinize(&self.alphabet, DEFAULT_STATE_LIMIT)
            .expect("star of a DFA stays within the default state limit")
    }

    /// L⁺ = LL*
    pub fn plus(&self) -> Dfa {
        self.concat(&self.star()).expect("same alphabet")
    }

    /// The language recognized from state `q`.
    pub fn from_state(&self, q: u32) -> Dfa {
        Dfa::build(self.alphabet.clone(), self.delta.clone(), q, self.accepting.clone())
    }

    /// Same transition structure, different accepting set.
    pub fn with_accepting(&self, accepting: impl Fn(u32) -> bool) -> Dfa {
        let acc = (0..self.state_count() as u32).map(accepting).collect();
        Dfa::build(self.alphabet.clone(), self.delta.clone(), self.initial, acc)
    }

    pub fn left_quotient(&self, w: &Word) -> Dfa {
        self.from_state(self.run(w))
    }

    pub fn right_quotient(&self, w: &Word) -> Dfa {
        self.with_accepting(|q| self.is_accepting(self.run_from(q, &w.0)))
    }

    /// w⁻¹L (left) or Lw⁻¹ (right).
    pub fn quotient(&self, side: Side, w: &Word) -> Dfa {
        match side {
            Side::Left => self.left_quotient(w),
            Side::Right => self.right_quotient(w),
        }
    }

    /// The distinct left (resp. right) quotients of the language.
    pub fn residuals(&self, side: Side) -> Vec<Dfa> {
        let canon = self.minimize();
        match side {
            Side::Left => (0..canon.state_count() as u32).map(|q| canon.from_state(q)).collect(),
            Side::Right => {
                let n = canon.state_count();
                let start: Vec<bool> = canon.accepting.clone();
                let mut seen: HashSet<Vec<bool>> = HashSet::new();
                let mut queue = VecDeque::new();
                seen.insert(start.clone());
                queue.push_back(start);
                let mut out: Vec<Dfa> = Vec::new();
                while let Some(set) = queue.pop_front() {
                    out.push(canon.with_accepting(|q| set[q as usize]));
                    for a in canon.alphabet.letters() {
                        let next: Vec<bool> =
                            (0..n as u32).map(|q| set[canon.next(q, a) as usize]).collect();
                        if seen.insert(next.clone()) {
                            queue.push_back(next);
                        }
                    }
                }
                let mut uniq: Vec<Dfa> = Vec::new();
                for d in out {
                    if !uniq.contains(&d) {
                        uniq.push(d);
                    }
                }
                uniq
            }
        }
    }

    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.minimize() == other.minimize())
    }

    pub fn is_empty(&self) -> bool {
        self.shortest_word().is_none()
    }

    pub fn is_universal(&self) -> bool {
        self.complement().is_empty()
    }

    /// L ⊆ K
    pub fn is_subset(&self, other: &Dfa) -> Result<bool> {
        Ok(self.difference(other)?.is_empty())
    }

    /// Whether the language of state `p` is included in that of state `q`.
    pub fn state_included(&self, p: u32, q: u32) -> bool {
        let mut seen = HashSet::new();
        let mut stack = vec![(p, q)];
        seen.insert((p, q));
        while let Some((x, y)) = stack.pop() {
            if self.is_accepting(x) && !self.is_accepting(y) {
                return false;
            }
            for a in self.alphabet.letters() {
                let t = (self.next(x, a), self.next(y, a));
                if seen.insert(t) {
                    stack.push(t);
                }
            }
        }
        true
    }

    /// States from which an accepting state is reachable.
    pub fn live_states(&self) -> Vec<bool> {
        let n = self.state_count();
        let k = self.alphabet.len();
        let mut rev: Vec<Vec<u32>> = vec![Vec::new(); n];
        for q in 0..n {
            for a in 0..k {
                rev[self.delta[q * k + a] as usize].push(q as u32);
            }
        }
        let mut live = self.accepting.clone();
        let mut stack: Vec<u32> = self.accepting_states().collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q as usize] {
                if !live[p as usize] {
                    live[p as usize] = true;
                    stack.push(p);
                }
            }
        }
        live
    }

    /// The length-lex least accepted word.
    pub fn shortest_word(&self) -> Option<Word> {
        let n = self.state_count();
        let mut parent: Vec<Option<(u32, Letter)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[self.initial as usize] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            if self.is_accepting(q) {
                let mut w = Vec::new();
                let mut cur = q;
                while let Some((p, a)) = parent[cur as usize] {
                    w.push(a);
                    cur = p;
                }
                w.reverse();
                return Some(Word(w));
            }
            for a in self.alphabet.letters() {
                let r = self.next(q, a);
                if !seen[r as usize] {
                    seen[r as usize] = true;
                    parent[r as usize] = Some((q, a));
                    queue.push_back(r);
                }
            }
        }
        None
    }

    /// Accepted words of length at most `maxlen`, in length-lex order.
    pub fn enumerate(&self, maxlen: usize) -> Vec<Word> {
        let live = self.live_states();
        let mut out = Vec::new();
        let mut layer: Vec<(Vec<Letter>, u32)> = Vec::new();
        if live[self.initial as usize] {
            layer.push((Vec::new(), self.initial));
        }
        for len in 0..=maxlen {
            for (w, q) in &layer {
                if self.is_accepting(*q) {
                    out.push(Word(w.clone()));
                }
            }
            if len == maxlen {
                break;
            }
            let mut next = Vec::new();
            for (w, q) in &layer {
                for a in self.alphabet.letters() {
                    let r = self.next(*q, a);
                    if live[r as usize] {
                        let mut v = w.clone();
                        v.push(a);
                        next.push((v, r));
                    }
                }
            }
            layer = next;
        }
        out
    }

    /// Preimage under a letter-to-letter morphism from `source` into this
    /// automaton's alphabet.
    pub fn inverse_image(&self, source: &Alphabet, map: impl Fn(Letter) -> Letter) -> Dfa {
        let ks = source.len();
        let mut delta = Vec::with_capacity(self.state_count() * ks);
        for q in 0..self.state_count() as u32 {
            for c in source.letters() {
                delta.push(self.next(q, map(c)));
            }
        }
        Dfa::build(source.clone(), delta, self.initial, self.accepting.clone())
    }

    /// Image under a letter-to-letter morphism into `target`.
    pub fn image(&self, target: &Alphabet, map: impl Fn(Letter) -> Letter, limit: usize) -> Result<Dfa> {
        let mut nfa = Nfa::new();
        for q in 0..self.state_count() as u32 {
            nfa.add_state(self.is_accepting(q));
        }
        for q in 0..self.state_count() as u32 {
            for a in self.alphabet.letters() {
                let b = map(a);
                if b as usize >= target.len() {
                    return Err(Error::LetterOutOfRange(b as usize));
                }
                nfa.add(q, b, self.next(q, a));
            }
        }
        nfa.add_initial(self.initial);
        nfa.determinize(target, limit)
    }

    /// Raw transition table, indexed by `state * |A| + letter`.
    pub fn table(&self) -> &[u32] {
        &self.delta
    }
}

impl fmt::Debug for Dfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dfa[{}; {} states; init {}; acc {:?}; ", self.alphabet, self.state_count(), self.initial,
            self.accepting_states().collect::<Vec<_>>())?;
        let k = self.alphabet.len();
        for q in 0..self.state_count() {
            write!(f, "{q}:")?;
            for a in 0..k {
                write!(f, "{}", self.delta[q * k + a])?;
                if a + 1 < k {
                    write!(f, ",")?;
                }
            }
            write!(f, " ")?;
        }
        write!(f, "]")
    }
}

/// Serialized automaton.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfaJson {
    pub alphabet: String,
    pub states: usize,
    pub transitions: Vec<(u32, String, u32)>,
    pub initial: u32,
    pub accepting: Vec<u32>,
}

impl From<&Dfa> for DfaJson {
    fn from(d: &Dfa) -> Self {
        let mut transitions = Vec::with_capacity(d.delta.len());
        for q in 0..d.state_count() as u32 {
            for a in d.alphabet.letters() {
                transitions.push((q, d.alphabet.symbol(a).to_string(), d.next(q, a)));
            }
        }
        DfaJson {
            alphabet: d.alphabet.to_string(),
            states: d.state_count(),
            transitions,
            initial: d.initial,
            accepting: d.accepting_states().collect(),
        }
    }
}

impl TryFrom<DfaJson> for Dfa {
    type Error = Error;

    fn try_from(j: DfaJson) -> Result<Dfa> {
        let alphabet = Alphabet::parse(&j.alphabet)?;
        let mut trans = Vec::with_capacity(j.transitions.len());
        for (p, s, q) in &j.transitions {
            let mut chars = s.chars();
            let c = match (chars.next(), chars.next()) {
                (Some(c), None) => c,
                _ => return Err(Error::Malformed(format!("transition label {s:?} is not a single letter"))),
            };
            trans.push((*p, alphabet.letter(c)?, *q));
        }
        Dfa::from_parts(alphabet, j.states, &trans, j.initial, &j.accepting)
    }
}

impl Serialize for Dfa {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DfaJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Dfa {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = DfaJson::deserialize(d)?;
        Dfa::try_from(j).map(|d| d.minimize()).map_err(serde::de::Error::custom)
    }
}
