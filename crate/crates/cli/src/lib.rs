//! The `chier` command line: class queries, stratum verdicts, strictness
//! witnesses, the logic compiler and the verification suite.

mod error;
pub mod suite;

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use chier_classes::{basis, BasisKind, ClassMonoid, LanguageClass};
use chier_hierarchy::{check_classic, interleaving_check, piece, piece_complement, strictness_witnesses};
use chier_logic::{classify, compile, parse_formula, round_trip_check, satisfies, DEFAULT_COMPILE_BUDGET};
use chier_regular::{compile_regex, Alphabet, Dfa, DfaJson, Word};
use chier_strata::{
    bpol_stratum_member, pol_separability_search, pol_stratum_member, pol_stratum_separable, Budget, Status,
    StratumVerdict, WordOrder, DEFAULT_MAX_LEN, DEFAULT_TYPE_BUDGET,
};

pub use error::{CliError, Result};
pub use suite::{
    run_criterion, run_suite, threshold_period as threshold_period_oracle, CriterionReport, Outcome, SuiteConfig, CRITERIA,
    DEFAULT_SEED,
};

pub const EXIT_DEFINITE: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "chier", version, about = "Concatenation hierarchies over finite classes of regular languages")]
pub struct Cli {
    /// st0, dd0, at, wat, att:d or a class JSON file
    #[arg(long, global = true, default_value = "st0")]
    pub basis: String,
    /// Letters of the alphabet, e.g. "ab"
    #[arg(long, global = true)]
    pub alphabet: Option<String>,
    /// Types per level in the type monoid
    #[arg(long, global = true, default_value_t = DEFAULT_TYPE_BUDGET)]
    pub budget: usize,
    /// Longest word of the bounded searches
    #[arg(long = "max-len", global = true, default_value_t = DEFAULT_MAX_LEN)]
    pub max_len: usize,
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StratumOp {
    /// L ∈ Pol_k(C)
    Member,
    /// L ∈ BPol_k(C)
    Bpol,
    /// Pol_k(C)-separability of L1 from L2
    Separate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WitnessKind {
    Strictness,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Members and closure properties of the basis
    Class,
    /// w ≤_C w', or w ≤_k w' with --k
    Leq {
        #[arg(long)]
        w: String,
        #[arg(long)]
        w2: String,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Period of the class monoid
    Period,
    /// Stratum verdicts
    Stratum {
        #[arg(value_enum)]
        op: StratumOp,
        #[arg(long)]
        regex: String,
        #[arg(long)]
        regex2: Option<String>,
        #[arg(long)]
        k: usize,
    },
    /// Least k ≤ kmax at which L1 is Pol_k(C)-separable from L2
    Separate {
        #[arg(long)]
        regex: String,
        #[arg(long)]
        regex2: String,
        #[arg(long)]
        kmax: usize,
    },
    /// Strictness witnesses for k ≤ kmax
    Witness {
        #[arg(value_enum, default_value = "strictness")]
        kind: WitnessKind,
        #[arg(long, default_value_t = 2)]
        kmax: usize,
    },
    /// Compile a first-order sentence to an automaton
    CompileFormula {
        #[arg(long)]
        formula: String,
        /// Compare with direct evaluation on all words up to this length
        #[arg(long = "check-maxlen")]
        check_maxlen: Option<usize>,
    },
    /// Evaluate a sentence on a word
    EvalFormula {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        word: String,
    },
    /// Polynomial expression for the complement of A*a1A*…anA*
    PieceComplement {
        #[arg(long)]
        word: String,
    },
    /// The classic dot-depth expressions and the interleaving check
    Classic,
    /// Run the acceptance criteria
    VerifySuite {
        /// Only these criteria
        #[arg(long)]
        only: Vec<u32>,
        /// Omit timings, for byte-identical output
        #[arg(long = "no-timings")]
        no_timings: bool,
        /// Type budget of the suite
        #[arg(long = "suite-budget", default_value_t = 100_000)]
        suite_budget: usize,
    },
}

/// Text and JSON renderings of one answer, plus whether it is definite.
struct Answer {
    text: String,
    json: Value,
    definite: bool,
}

impl Answer {
    fn definite(text: String, json: Value) -> Answer {
        Answer { text, json, definite: true }
    }
}

fn load_class(cli: &Cli) -> Result<LanguageClass> {
    if cli.basis.ends_with(".json") {
        let text = std::fs::read_to_string(&cli.basis)
            .map_err(|e| CliError::Io { path: cli.basis.clone(), message: e.to_string() })?;
        let class = LanguageClass::from_json(&text)?;
        if let Some(a) = &cli.alphabet {
            if Alphabet::parse(a)? != *class.alphabet() {
                return Err(CliError::Usage(format!(
                    "--alphabet {a} does not match the alphabet of {}",
                    cli.basis
                )));
            }
        }
        return Ok(class);
    }
    let kind: BasisKind = cli.basis.parse().map_err(|e| CliError::Usage(format!("--basis: {e}")))?;
    let alphabet = Alphabet::parse(cli.alphabet.as_deref().unwrap_or("ab"))?;
    Ok(basis(kind, &alphabet)?)
}

fn budget(cli: &Cli) -> Result<Budget> {
    if cli.budget == 0 {
        return Err(CliError::Usage("--budget must be positive".into()));
    }
    Ok(Budget { types: cli.budget, max_len: cli.max_len })
}

fn word(alphabet: &Alphabet, flag: &str, text: &str) -> Result<Word> {
    let text = if text == "_" { "" } else { text };
    alphabet.word(text).map_err(|e| CliError::Usage(format!("--{flag}: {e}")))
}

fn regex(alphabet: &Alphabet, flag: &str, text: &str) -> Result<Dfa> {
    compile_regex(text, alphabet).map_err(|e| CliError::Usage(format!("--{flag}: {e}")))
}

fn show(alphabet: &Alphabet, w: &Word) -> String {
    if w.is_empty() {
        "ε".into()
    } else {
        alphabet.render(w)
    }
}

/// Checks a verdict's witness from scratch.
fn reverify(v: &StratumVerdict, op: StratumOp, l1: &Dfa, l2: &Dfa, class: &LanguageClass) -> Result<()> {
    let mut order = WordOrder::new(class)?;
    let ok = match (&v.status, op) {
        (Status::NotMember { w, w2 }, StratumOp::Member) => l1.accepts(w) && !l1.accepts(w2) && order.leq(v.k, w, w2)?,
        (Status::NotMember { w, w2 }, StratumOp::Bpol) => {
            l1.accepts(w) != l1.accepts(w2) && order.equivalent(v.k, w, w2)?
        }
        (Status::NotSeparable { w, w2 }, _) => l1.accepts(w) && l2.accepts(w2) && order.leq(v.k, w, w2)?,
        (Status::Separable { separator }, _) => l1.is_subset(separator)? && separator.intersect(l2)?.is_empty(),
        _ => true,
    };
    if ok {
        Ok(())
    } else {
        Err(CliError::Unverified(format!("{} at k = {}", v.status.name(), v.k)))
    }
}

fn verdict_answer(v: &StratumVerdict, alphabet: &Alphabet) -> Result<Answer> {
    let mut text = format!("{} (k = {}, engine {:?}, {} types)", v.status.name(), v.k, v.engine, v.types_used);
    match &v.status {
        Status::NotMember { w, w2 } | Status::NotSeparable { w, w2 } => {
            let _ = write!(text, "\nwitness: w = {}, w' = {}", show(alphabet, w), show(alphabet, w2));
        }
        Status::Separable { separator } => {
            let _ = write!(text, "\nseparator: {} states", separator.state_count());
        }
        Status::Inconclusive { reason } => {
            let _ = write!(text, "\nreason: {reason}");
        }
        Status::Member => {}
    }
    Ok(Answer { text, json: serde_json::to_value(v.to_json(alphabet))?, definite: v.status.is_definite() })
}

fn class_answer(class: &LanguageClass) -> Result<Answer> {
    let alphabet = class.alphabet();
    let props = class.properties();
    let mut text = format!(
        "{} over {}: {} members; lattice {}, boolean algebra {}, quotienting {}",
        class.name(),
        alphabet.symbols().iter().collect::<String>(),
        class.member_count(),
        props.lattice,
        props.boolean_algebra,
        props.quotienting
    );
    let members = match class.members() {
        Ok(ms) => {
            for m in ms {
                let _ = write!(text, "\n  {}: {} states", m.name, m.dfa.state_count());
            }
            ms.iter().map(|m| json!({"name": m.name, "dfa": DfaJson::from(&m.dfa)})).collect()
        }
        Err(_) => {
            let _ = write!(text, "\n  (members not materialized; {} test languages)", class.tests().len());
            Vec::new()
        }
    };
    let json = json!({
        "name": class.name(),
        "alphabet": alphabet.symbols().iter().collect::<String>(),
        "member_count": class.member_count().to_string(),
        "properties": props,
        "members": members,
    });
    Ok(Answer::definite(text, json))
}

fn leq_answer(class: &LanguageClass, w: &Word, w2: &Word, k: Option<usize>) -> Result<Answer> {
    let alphabet = class.alphabet();
    let holds = match k {
        None => class.leq(w, w2),
        Some(k) => WordOrder::new(class)?.leq(k, w, w2)?,
    };
    let rel = k.map_or("≤_C".to_string(), |k| format!("≤_{k}"));
    Ok(Answer::definite(
        format!("{} {rel} {}: {holds}", show(alphabet, w), show(alphabet, w2)),
        json!({"w": alphabet.render(w), "w2": alphabet.render(w2), "k": k, "leq": holds}),
    ))
}

fn stratum_answer(cli: &Cli, class: &LanguageClass, op: StratumOp, r1: &str, r2: Option<&str>, k: usize) -> Result<Answer> {
    let alphabet = class.alphabet();
    let l1 = regex(alphabet, "regex", r1)?;
    let l2 = match (op, r2) {
        (StratumOp::Separate, Some(r)) => regex(alphabet, "regex2", r)?,
        (StratumOp::Separate, None) => return Err(CliError::Usage("--regex2 is required for separate".into())),
        (_, Some(_)) => return Err(CliError::Usage("--regex2 is only used by separate".into())),
        (_, None) => l1.clone(),
    };
    let b = budget(cli)?;
    let v = match op {
        StratumOp::Member => pol_stratum_member(&l1, class, k, b)?,
        StratumOp::Bpol => bpol_stratum_member(&l1, class, k, b)?,
        StratumOp::Separate => pol_stratum_separable(&l1, &l2, class, k, b)?,
    };
    reverify(&v, op, &l1, &l2, class)?;
    verdict_answer(&v, alphabet)
}

fn separate_answer(cli: &Cli, class: &LanguageClass, r1: &str, r2: &str, kmax: usize) -> Result<Answer> {
    let alphabet = class.alphabet();
    let l1 = regex(alphabet, "regex", r1)?;
    let l2 = regex(alphabet, "regex2", r2)?;
    let search = pol_separability_search(&l1, &l2, class, kmax, budget(cli)?)?;
    let mut lines = Vec::new();
    let mut verdicts = Vec::new();
    for v in &search.verdicts {
        reverify(v, StratumOp::Separate, &l1, &l2, class)?;
        lines.push(verdict_answer(v, alphabet)?.text);
        verdicts.push(serde_json::to_value(v.to_json(alphabet))?);
    }
    let definite = search.separable_at.is_some() || search.verdicts.iter().all(|v| v.status.is_definite());
    let head = match search.separable_at {
        Some(k) => format!("separable at k = {k}"),
        None if definite => format!("not separable at any k ≤ {kmax}"),
        None => "undecided within budget".into(),
    };
    Ok(Answer {
        text: format!("{head}\n{}", lines.join("\n")),
        json: json!({"separable_at": search.separable_at, "verdicts": verdicts}),
        definite,
    })
}

fn witness_answer(class: &LanguageClass, kmax: usize) -> Result<Answer> {
    let bundle = strictness_witnesses(class, kmax)?;
    if !bundle.verified() {
        return Err(CliError::Unverified("strictness bundle".into()));
    }
    let j = bundle.to_json(class.alphabet());
    let mut text = format!("basis {} (period {}, ε added: {})", j.basis, j.period, j.augmented);
    let _ = write!(text, "\nL = {}", j.language);
    for p in &j.pairs {
        let _ = write!(text, "\nk = {}: |u| = {}, |v| = {}, u ∉ L, v ∈ L, u ≤_k v", p.k, p.u_len, p.v_len);
    }
    Ok(Answer::definite(text, serde_json::to_value(&j)?))
}

#[derive(Serialize)]
struct CompileJson {
    formula: String,
    alternation: String,
    sigma: usize,
    level: String,
    states: usize,
    dfa: DfaJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    check: Option<chier_logic::RoundTrip>,
}

fn compile_answer(class: &LanguageClass, text: &str, check_maxlen: Option<usize>) -> Result<Answer> {
    let f = parse_formula(text, class).map_err(|e| CliError::Usage(format!("--formula: {e}")))?;
    let c = compile(&f, class, DEFAULT_COMPILE_BUDGET)?;
    let check = check_maxlen.map(|n| round_trip_check(&f, class, n, DEFAULT_COMPILE_BUDGET, None)).transpose()?;
    if let Some(rt) = &check {
        if !rt.pass() {
            return Err(CliError::Unverified(format!("compiled automaton disagrees on {}", rt.mismatches.join(", "))));
        }
    }
    let j = CompileJson {
        formula: f.render(class.alphabet()),
        alternation: classify(&f).to_string(),
        sigma: c.sigma,
        level: c.level.to_string(),
        states: c.dfa.state_count(),
        dfa: DfaJson::from(&c.dfa),
        check,
    };
    let mut out = format!("{} [{}]\nlevel {}, {} states", j.formula, j.alternation, j.level, j.states);
    if let Some(rt) = &j.check {
        let _ = write!(out, "\nagrees with evaluation on {} words", rt.words_checked);
    }
    Ok(Answer::definite(out, serde_json::to_value(&j)?))
}

fn eval_answer(class: &LanguageClass, text: &str, w: &Word) -> Result<Answer> {
    let f = parse_formula(text, class).map_err(|e| CliError::Usage(format!("--formula: {e}")))?;
    let holds = satisfies(&f, w)?;
    Ok(Answer::definite(
        format!("{holds}"),
        json!({"formula": f.render(class.alphabet()), "word": class.alphabet().render(w), "satisfied": holds}),
    ))
}

fn piece_answer(alphabet: &Alphabet, w: &Word) -> Result<Answer> {
    let p = piece_complement(&w.0, alphabet)?;
    let equal = p.eval()? == piece(alphabet, &w.0)?.complement();
    if !equal {
        return Err(CliError::Unverified("piece complement".into()));
    }
    Ok(Answer::definite(
        format!("{} monomials, degree {}, equal to the complement: {equal}", p.monomials.len(), p.degree()),
        json!({"word": alphabet.render(w), "expression": p.to_json(), "verified": equal}),
    ))
}

fn classic_answer(alphabet: &Alphabet) -> Result<Answer> {
    let mut checks = check_classic(alphabet)?;
    checks.extend(interleaving_check(alphabet)?);
    let text = checks.iter().map(|c| format!("{}: {}", c.name, if c.pass { "ok" } else { "FAILED" })).collect::<Vec<_>>();
    let json = checks.iter().map(|c| json!({"name": c.name, "pass": c.pass})).collect::<Vec<_>>();
    let all = checks.iter().all(|c| c.pass);
    if !all {
        return Err(CliError::Unverified(text.join("; ")));
    }
    Ok(Answer::definite(text.join("\n"), Value::Array(json)))
}

fn suite_answer(cli: &Cli, only: &[u32], no_timings: bool, types: usize) -> Result<Answer> {
    let cfg = SuiteConfig { seed: cli.seed, types, max_len: cli.max_len };
    for id in only {
        if !CRITERIA.iter().any(|c| c.0 == *id) {
            return Err(CliError::Usage(format!("--only: no criterion {id}")));
        }
    }
    let reports: Vec<CriterionReport> = if only.is_empty() {
        run_suite(&cfg)
    } else {
        only.iter().map(|&id| run_criterion(id, &cfg)).collect()
    };
    let text = reports.iter().map(CriterionReport::line).collect::<Vec<_>>().join("\n");
    let json = reports
        .iter()
        .map(|r| {
            let mut v = json!({"id": r.id, "name": r.name, "outcome": r.outcome, "detail": r.detail});
            if !no_timings {
                v["seconds"] = json!(r.seconds);
            }
            v
        })
        .collect();
    if reports.iter().any(|r| r.outcome == Outcome::Fail) {
        return Err(CliError::Unverified(format!("suite failed\n{text}")));
    }
    Ok(Answer { text, json: Value::Array(json), definite: reports.iter().all(|r| r.outcome == Outcome::Pass) })
}

fn execute(cli: &Cli) -> Result<Answer> {
    match &cli.command {
        Command::VerifySuite { only, no_timings, suite_budget } => return suite_answer(cli, only, *no_timings, *suite_budget),
        Command::PieceComplement { word: w } => {
            let alphabet = Alphabet::parse(cli.alphabet.as_deref().unwrap_or("ab"))?;
            return piece_answer(&alphabet, &word(&alphabet, "word", w)?);
        }
        Command::Classic => return classic_answer(&Alphabet::parse(cli.alphabet.as_deref().unwrap_or("ab"))?),
        _ => {}
    }
    let class = load_class(cli)?;
    let alphabet = class.alphabet().clone();
    match &cli.command {
        Command::Class => class_answer(&class),
        Command::Leq { w, w2, k } => leq_answer(&class, &word(&alphabet, "w", w)?, &word(&alphabet, "w2", w2)?, *k),
        Command::Period => {
            let p = ClassMonoid::new(&class)?.period();
            Ok(Answer::definite(format!("{p}"), json!({"class": class.name(), "period": p})))
        }
        Command::Stratum { op, regex, regex2, k } => stratum_answer(cli, &class, *op, regex, regex2.as_deref(), *k),
        Command::Separate { regex, regex2, kmax } => separate_answer(cli, &class, regex, regex2, *kmax),
        Command::Witness { kind: WitnessKind::Strictness, kmax } => witness_answer(&class, *kmax),
        Command::CompileFormula { formula, check_maxlen } => compile_answer(&class, formula, *check_maxlen),
        Command::EvalFormula { formula, word: w } => eval_answer(&class, formula, &word(&alphabet, "word", w)?),
        Command::VerifySuite { .. } | Command::PieceComplement { .. } | Command::Classic => unreachable!(),
    }
}

/// Runs the command line `args` (program name first). Returns the exit
/// code and the text to print.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_DEFINITE };
            return (code, e.to_string());
        }
    };
    match execute(&cli) {
        Ok(a) => {
            let code = if a.definite { EXIT_DEFINITE } else { EXIT_INCONCLUSIVE };
            let out = if cli.json {
                serde_json::to_string_pretty(&a.json).unwrap_or_else(|e| format!("{{\"error\": \"{e}\"}}"))
            } else {
                a.text
            };
            (code, out)
        }
        Err(e) => {
            let out = if cli.json { json!({"error": e.to_string()}).to_string() } else { format!("error: {e}") };
            (EXIT_ERROR, out)
        }
    }
}
