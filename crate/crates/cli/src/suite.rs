//! The verification suite: one check per acceptance criterion.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use chier_classes::{basis, in_class, BasisKind, ClassMonoid, LanguageClass};
use chier_hierarchy::{check_classic, piece, piece_complement, pol_intersect_rewrite, strictness_witnesses, LevelExpr, Monomial};
use chier_logic::{
    classify, compile, marked_concat_sentence, parse_formula, satisfies, AlternationClass, Formula, DEFAULT_COMPILE_BUDGET,
};
use chier_regular::{compile_regex, Alphabet, Dfa, Letter, Word};
use chier_strata::{
    bpol_stratum_member, build_type_monoid, enumerate_stratum, pol_stratum_member, verify_pumping_1, verify_pumping_2,
    BoundedStratum, Budget, Status, WordOrder, DEFAULT_MAX_LEN,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::error::{CliError, Result};

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Type-monoid budget per level.
    pub types: usize,
    pub max_len: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: DEFAULT_SEED, types: 100_000, max_len: DEFAULT_MAX_LEN }
    }
}

impl SuiteConfig {
    fn budget(&self) -> Budget {
        Budget { types: self.types, max_len: self.max_len }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u32,
    pub name: &'static str,
    pub outcome: Outcome,
    pub detail: String,
    pub seconds: f64,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        let tag = match self.outcome {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Inconclusive => "INCONCLUSIVE",
        };
        format!("[{tag}] {:>2} {} ({:.2} s): {}", self.id, self.name, self.seconds, self.detail)
    }
}

pub const CRITERIA: &[(u32, &str)] = &[
    (1, "a*b* refutation over dd0"),
    (2, "(a(ab)*b)* outside BPol_k(dd0)"),
    (3, "classic dot-depth expressions"),
    (4, "piece complements"),
    (5, "intersection rewriting"),
    (6, "oracle gate"),
    (7, "pumping grid"),
    (8, "periods"),
    (9, "strictness bundle dd0 k=3"),
    (10, "logic round trip"),
    (11, "{eps} and A+ over st0"),
];

/// Wall-clock limits of the timed criteria.
pub const LIMIT_AB_STAR: Duration = Duration::from_secs(60);
pub const LIMIT_STRICTNESS: Duration = Duration::from_secs(120);

struct Tally {
    failures: Vec<String>,
    inconclusive: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn new() -> Tally {
        Tally { failures: Vec::new(), inconclusive: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }

    fn finish(self, summary: String) -> (Outcome, String) {
        let mut detail = summary;
        for n in &self.notes {
            let _ = write!(detail, "; {n}");
        }
        if !self.failures.is_empty() {
            let _ = write!(detail, "; failed: {}", self.failures.join(", "));
            (Outcome::Fail, detail)
        } else if !self.inconclusive.is_empty() {
            let _ = write!(detail, "; inconclusive: {}", self.inconclusive.join(", "));
            (Outcome::Inconclusive, detail)
        } else {
            (Outcome::Pass, detail)
        }
    }
}

fn ab() -> Alphabet {
    Alphabet::parse("ab").expect("valid alphabet")
}

fn class(kind: BasisKind) -> Result<LanguageClass> {
    Ok(basis(kind, &ab())?)
}

fn regex(text: &str) -> Result<Dfa> {
    Ok(compile_regex(text, &ab())?)
}

fn w(text: &str) -> Word {
    ab().word(text).expect("word over ab")
}

fn a_pow(n: usize) -> Word {
    w("a").pow(n)
}

fn ab_star(cfg: &SuiteConfig) -> Result<(Outcome, String)> {
    let start = Instant::now();
    let dd0 = class(BasisKind::Dd0)?;
    let l = regex("a*b*")?;
    let mut order = WordOrder::new(&dd0)?;
    let mut t = Tally::new();
    for k in 0..=3usize {
        let v = pol_stratum_member(&l, &dd0, k, cfg.budget())?;
        match &v.status {
            Status::NotMember { w: x, w2: y } => {
                let verified = l.accepts(x) && !l.accepts(y) && order.leq(k, x, y)?;
                t.check(verified, format!("k={k} witness does not verify"));
            }
            Status::Inconclusive { .. } => t.inconclusive.push(format!("k={k}")),
            s => t.check(false, format!("k={k} gave {}", s.name())),
        }
        let n = 1 << (k + 1);
        let u = a_pow(n).concat(&w("b"));
        let v = a_pow(n).concat(&w("b").pow(n)).concat(&a_pow(n)).concat(&w("b"));
        t.check(l.accepts(&u) && !l.accepts(&v), format!("k={k} paper words have the wrong membership"));
        t.check(order.leq(k, &u, &v)?, format!("k={k} u_k ≤_k v_k fails"));
    }
    let elapsed = start.elapsed();
    t.check(elapsed < LIMIT_AB_STAR, format!("took {:.1} s, limit {} s", elapsed.as_secs_f64(), LIMIT_AB_STAR.as_secs()));
    Ok(t.finish("NotMember for k = 0..3 with verified witnesses; u_k ≤_k v_k for the paper's pairs".into()))
}

fn bpol_k(cfg: &SuiteConfig) -> Result<(Outcome, String)> {
    let dd0 = class(BasisKind::Dd0)?;
    let k_lang = regex("(a(ab)*b)*")?;
    let mut order = WordOrder::new(&dd0)?;
    let mut t = Tally::new();
    for k in 0..=2usize {
        let v = bpol_stratum_member(&k_lang, &dd0, k, cfg.budget())?;
        match &v.status {
            Status::NotMember { w: x, w2: y } => {
                let verified = k_lang.accepts(x) != k_lang.accepts(y) && order.equivalent(k, x, y)?;
                t.check(verified, format!("k={k} witness does not verify"));
            }
            Status::Inconclusive { .. } => t.inconclusive.push(format!("k={k}")),
            s => t.check(false, format!("k={k} gave {}", s.name())),
        }
        let n = 1 << (k + 1);
        let wk = w("ab").pow(n);
        let x = w("a").concat(&wk).concat(&w("b")).concat(&wk).pow(n);
        let y = w("a").concat(&wk).concat(&w("a")).concat(&wk).concat(&w("b")).concat(&wk).pow(n);
        t.check(k_lang.accepts(&x) && !k_lang.accepts(&y), format!("k={k} x_k/y_k membership"));
        t.check(order.leq(k, &x, &y)? && order.leq(k, &y, &x)?, format!("k={k} x_k ~_k y_k fails"));
    }
    let abs = regex("(ab)*")?;
    let mut seen = Vec::new();
    for k in 0..=2 {
        seen.push(format!("k={k}:{}", bpol_stratum_member(&abs, &dd0, k, cfg.budget())?.status.name()));
    }
    t.note(format!("(ab)* verdicts {}", seen.join(" ")));
    Ok(t.finish("NotMember for k = 0..2; x_k and y_k mutually ≤_k".into()))
}

fn classic() -> Result<(Outcome, String)> {
    let mut t = Tally::new();
    let checks = check_classic(&ab())?;
    for c in &checks {
        t.check(c.pass, c.name.clone());
    }
    Ok(t.finish(format!("{} expressions DFA-equal to their targets", checks.len())))
}

fn sequences(alphabet: &Alphabet, maxlen: usize) -> Vec<Vec<Letter>> {
    alphabet.words_up_to(maxlen).into_iter().map(|w| w.0).collect()
}

fn pieces() -> Result<(Outcome, String)> {
    let alphabet = ab();
    let mut t = Tally::new();
    let seqs = sequences(&alphabet, 4);
    for s in &seqs {
        let got = piece_complement(s, &alphabet)?.eval()?;
        t.check(got == piece(&alphabet, s)?.complement(), alphabet.render(&Word(s.clone())));
    }
    Ok(t.finish(format!("{} sequences of length ≤ 4", seqs.len())))
}

fn random_monomial(class: &LanguageClass, factors: &[String], rng: &mut StdRng) -> Result<Monomial> {
    let degree = rng.random_range(0..=2usize);
    let fs = (0..=degree)
        .map(|_| LevelExpr::member(class, &factors[rng.random_range(0..factors.len())]))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let letters = (0..degree).map(|_| rng.random_range(0..class.alphabet().len()) as Letter).collect();
    Ok(Monomial::new(fs, letters)?)
}

fn intersections(cfg: &SuiteConfig) -> Result<(Outcome, String)> {
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let mut t = Tally::new();
    let mut count = 0;
    for kind in [BasisKind::St0, BasisKind::At] {
        let c = class(kind)?;
        let factors: Vec<String> = c
            .members()?
            .iter()
            .filter(|m| !m.dfa.is_empty() && m.dfa != Dfa::nonempty(c.alphabet()))
            .map(|m| m.name.clone())
            .collect();
        for i in 0..60 {
            let m1 = random_monomial(&c, &factors, &mut rng)?;
            let m2 = random_monomial(&c, &factors, &mut rng)?;
            let out = pol_intersect_rewrite(&m1, &m2, &c)?;
            let want = m1.eval()?.intersect(&m2.eval()?)?;
            let members = out.monomials.iter().flat_map(|m| &m.factors).all(|f| {
                chier_hierarchy::eval_level(f).map(|d| in_class(&c, &d).unwrap_or(false)).unwrap_or(false)
            });
            t.check(out.eval()? == want && members, format!("{kind} instance {i}"));
            count += 1;
        }
    }
    Ok(t.finish(format!("{count} seeded instances (seed {}) over st0 and at", cfg.seed)))
}

fn oracle_gate() -> Result<(Outcome, String)> {
    let words = ab().words_up_to(5);
    let mut t = Tally::new();
    let mut pairs = 0usize;
    let mut full_levels = Vec::new();
    for kind in [BasisKind::St0, BasisKind::Dd0] {
        let c = class(kind)?;
        for k in 0..=2 {
            let m = build_type_monoid(&c, k, 100_000)?;
            let bounded = BoundedStratum::new(&c, k, 5, 1 << 20)?;
            let order = WordOrder::new(&c)?;
            let full = enumerate_stratum(&c, k, 64).ok();
            if full.is_some() {
                full_levels.push(format!("{kind} k={k}"));
            }
            let types: Vec<_> = words.iter().map(|x| m.eval(x)).collect();
            let mut bad = 0;
            for (i, x) in words.iter().enumerate() {
                for (j, y) in words.iter().enumerate() {
                    let direct = order.leq_direct(k, x, y);
                    let mut ok = m.leq(types[i], types[j]) == direct && bounded.leq(x, y) == direct;
                    if let Some(full) = &full {
                        ok &= full.iter().all(|l| !l.accepts(x) || l.accepts(y)) == direct;
                    }
                    if !ok {
                        bad += 1;
                    }
                    pairs += 1;
                }
            }
            t.check(bad == 0, format!("{kind} k={k}: {bad} disagreements"));
        }
    }
    t.note(format!("full lattice enumeration at {}", full_levels.join(", ")));
    Ok(t.finish(format!("{pairs} word pairs: type monoid, word recursion and stratum lattice agree")))
}

fn pumping() -> Result<(Outcome, String)> {
    let words = [w("a"), w("b"), w("ab")];
    let mut t = Tally::new();
    let mut count = 0;
    for kind in [BasisKind::Dd0, BasisKind::St0] {
        let c = class(kind)?;
        for k in 0..=2usize {
            let lo = (1 << (k + 1)) - 1;
            for u in &words {
                for m in [lo, lo + 2] {
                    for m2 in [lo, lo + 2] {
                        t.check(verify_pumping_1(&c, k, u, m, m2)?, format!("{kind} k={k} lemma 1"));
                        count += 1;
                    }
                }
                for v in &words {
                    for (m, m1, m2) in [(lo, lo, lo), (lo + 2, lo, lo + 2), (lo, lo + 2, lo)] {
                        t.check(verify_pumping_2(&c, k, u, v, m, m1, m2)?, format!("{kind} k={k} lemma 2"));
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(t.finish(format!("{count} instances")))
}

/// Period of the monoid of letter counts capped at d, by brute force.
pub fn threshold_period(d: u32, letters: usize) -> usize {
    let mut elems: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..letters {
        elems = elems.into_iter().flat_map(|v| (0..=d).map(move |c| [v.clone(), vec![c]].concat())).collect();
    }
    let pow = |s: &[u32], n: usize| -> Vec<u32> { s.iter().map(|&c| (c as usize * n).min(d as usize) as u32).collect() };
    (1..).find(|&p| elems.iter().all(|s| pow(s, p) == pow(s, 2 * p))).expect("a period exists")
}

fn periods() -> Result<(Outcome, String)> {
    let mut t = Tally::new();
    let mut seen = Vec::new();
    for (kind, want) in [(BasisKind::Dd0, 1), (BasisKind::St0, 1)] {
        let p = ClassMonoid::new(&class(kind)?)?.period();
        t.check(p == want, format!("{kind}: {p} ≠ {want}"));
        seen.push(format!("{kind}={p}"));
    }
    for d in 1..=4 {
        let kind = BasisKind::Att(d);
        let p = ClassMonoid::new(&class(kind)?)?.period();
        let want = threshold_period(d, 2);
        t.check(p == want && want == d as usize, format!("{kind}: {p} vs oracle {want}"));
        seen.push(format!("{kind}={p}"));
    }
    Ok(t.finish(seen.join(" ")))
}

fn strictness() -> Result<(Outcome, String)> {
    let start = Instant::now();
    let dd0 = class(BasisKind::Dd0)?;
    let mut t = Tally::new();
    let detail = match strictness_witnesses(&dd0, 3) {
        Ok(bundle) => {
            t.check(bundle.verified(), "bundle does not verify");
            let lens: Vec<String> = bundle.pairs.iter().map(|p| format!("{}/{}", p.u.len(), p.v.len())).collect();
            format!("period {}, |u_k|/|v_k| = {}", bundle.period, lens.join(" "))
        }
        Err(e) => {
            t.check(false, e.to_string());
            String::new()
        }
    };
    let elapsed = start.elapsed();
    t.check(elapsed < LIMIT_STRICTNESS, format!("took {:.1} s, limit {} s", elapsed.as_secs_f64(), LIMIT_STRICTNESS.as_secs()));
    Ok(t.finish(detail))
}

/// Sentences of the round-trip catalog, with their basis.
pub const LOGIC_CATALOG: &[(&str, BasisKind)] = &[
    ("exists x. a(x)", BasisKind::St0),
    ("forall x. a(x)", BasisKind::St0),
    ("exists x. exists y. <(x,y) & b(x) & a(y)", BasisKind::St0),
    ("forall x. forall y. !(<(x,y) & b(x) & a(y))", BasisKind::St0),
    ("forall x. exists y. <(x,y) | b(x)", BasisKind::St0),
    ("exists x. forall y. eq(x,y) | <(y,x) & a(y)", BasisKind::St0),
    ("(exists x. a(x)) & !exists y. b(y)", BasisKind::St0),
    ("exists x. min(x) & a(x)", BasisKind::Dd0),
    ("exists x. max(x) & b(x)", BasisKind::Dd0),
    ("epsilon | exists x. exists y. +1(x,y) & a(x) & a(y)", BasisKind::Dd0),
    (
        "forall x. (!min(x) | a(x)) & (!max(x) | b(x)) & (!a(x) | exists y. +1(x,y) & b(y)) & (!b(x) | max(x) | exists y. +1(x,y) & a(y))",
        BasisKind::Dd0,
    ),
    ("exists x. exists y. I{Aplus}(x,y) & a(x) & a(y)", BasisKind::Dd0),
    ("forall x. exists y. exists z. +1(y,x) | +1(x,z) & b(z)", BasisKind::Dd0),
];

/// Marked-concatenation pairs (φ1, letter, φ2, basis).
pub const CONCAT_PAIRS: &[(&str, char, &str, BasisKind)] = &[
    ("N{Astar}", 'a', "N{Astar}", BasisKind::St0),
    ("N{eps}", 'a', "exists x. b(x)", BasisKind::Dd0),
    ("exists x. b(x)", 'b', "N{Aplus}", BasisKind::Dd0),
    ("exists x. exists y. +1(x,y) & a(x) & b(y)", 'a', "exists x. max(x) & a(x)", BasisKind::Dd0),
    ("exists x. a(x) & S{eps}(x)", 'b', "exists x. min(x) & b(x) | N{eps}", BasisKind::Dd0),
    ("exists x. exists y. <(x,y) & b(x) & a(y)", 'b', "exists x. a(x)", BasisKind::St0),
];

fn cut_oracle(f1: &Formula, a: Letter, f2: &Formula, w: &Word) -> Result<bool> {
    for i in 0..w.len() {
        if w.0[i] == a && satisfies(f1, &Word(w.0[..i].to_vec()))? && satisfies(f2, &Word(w.0[i + 1..].to_vec()))? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn logic() -> Result<(Outcome, String)> {
    let alphabet = ab();
    let words = alphabet.words_up_to(8);
    let st0 = class(BasisKind::St0)?;
    let dd0 = class(BasisKind::Dd0)?;
    let pick = |kind: BasisKind| if kind == BasisKind::St0 { &st0 } else { &dd0 };
    let mut t = Tally::new();
    let mut sigma2 = 0;
    for &(text, kind) in LOGIC_CATALOG {
        let f = parse_formula(text, pick(kind))?;
        if !matches!(classify(&f), AlternationClass::Sigma(0 | 1)) {
            sigma2 += 1;
        }
        let d = compile(&f, pick(kind), DEFAULT_COMPILE_BUDGET)?.dfa;
        let mut bad = 0;
        for w in &words {
            if satisfies(&f, w)? != d.accepts(w) {
                bad += 1;
            }
        }
        t.check(bad == 0, format!("{text}: {bad} mismatches"));
    }
    for &(t1, a, t2, kind) in CONCAT_PAIRS {
        let c = pick(kind);
        let (f1, f2) = (parse_formula(t1, c)?, parse_formula(t2, c)?);
        let a = alphabet.letter(a)?;
        let psi = marked_concat_sentence(&f1, a, &f2, c, 1)?;
        let d = compile(&psi, c, DEFAULT_COMPILE_BUDGET)?.dfa;
        let mut bad = 0;
        for w in &words {
            let want = cut_oracle(&f1, a, &f2, w)?;
            if satisfies(&psi, w)? != want || d.accepts(w) != want {
                bad += 1;
            }
        }
        t.check(bad == 0 && classify(&psi) == AlternationClass::Sigma(1), format!("{t1} . {t2}"));
    }
    Ok(t.finish(format!(
        "{} sentences ({sigma2} beyond Σ1) and {} marked products, all words of length ≤ 8",
        LOGIC_CATALOG.len(),
        CONCAT_PAIRS.len()
    )))
}

fn st0_examples(cfg: &SuiteConfig) -> Result<(Outcome, String)> {
    let st0 = class(BasisKind::St0)?;
    let eps = Dfa::epsilon(&ab());
    let mut order = WordOrder::new(&st0)?;
    let mut t = Tally::new();
    for k in 0..=3 {
        let v = pol_stratum_member(&eps, &st0, k, cfg.budget())?;
        match &v.status {
            Status::NotMember { w: x, w2: y } => {
                t.check(eps.accepts(x) && !eps.accepts(y) && order.leq(k, x, y)?, format!("k={k} witness"));
            }
            Status::Inconclusive { .. } => t.inconclusive.push(format!("k={k}")),
            s => t.check(false, format!("k={k} gave {}", s.name())),
        }
    }
    let v = pol_stratum_member(&Dfa::nonempty(&ab()), &st0, 1, cfg.budget())?;
    match &v.status {
        Status::Member => {}
        Status::Inconclusive { .. } => t.inconclusive.push("A+ at k=1".into()),
        s => t.check(false, format!("A+ at k=1 gave {}", s.name())),
    }
    Ok(t.finish("{eps} NotMember for k = 0..3; A+ Member at k = 1".into()))
}

/// Runs one criterion, timing it. Errors count as failures.
pub fn run_criterion(id: u32, cfg: &SuiteConfig) -> CriterionReport {
    let name = CRITERIA.iter().find(|c| c.0 == id).map_or("unknown", |c| c.1);
    let start = Instant::now();
    let result = match id {
        1 => ab_star(cfg),
        2 => bpol_k(cfg),
        3 => classic(),
        4 => pieces(),
        5 => intersections(cfg),
        6 => oracle_gate(),
        7 => pumping(),
        8 => periods(),
        9 => strictness(),
        10 => logic(),
        11 => st0_examples(cfg),
        _ => Err(CliError::Usage(format!("no criterion {id}"))),
    };
    let (outcome, detail) = result.unwrap_or_else(|e| (Outcome::Fail, format!("error: {e}")));
    CriterionReport { id, name, outcome, detail, seconds: start.elapsed().as_secs_f64() }
}

/// All criteria, in order.
pub fn run_suite(cfg: &SuiteConfig) -> Vec<CriterionReport> {
    CRITERIA.iter().map(|&(id, _)| run_criterion(id, cfg)).collect()
}
