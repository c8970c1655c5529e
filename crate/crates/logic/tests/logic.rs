use std::collections::BTreeMap;
use std::sync::OnceLock;

use chier_classes::{basis, BasisKind, LanguageClass};
use chier_regular::{compile_regex, Alphabet, Dfa, Word};
use chier_logic::*;
use proptest::prelude::*;

fn ab() -> Alphabet {
    Alphabet::parse("ab").unwrap()
}

fn class(kind: BasisKind) -> &'static LanguageClass {
    static ST0: OnceLock<LanguageClass> = OnceLock::new();
    static DD0: OnceLock<LanguageClass> = OnceLock::new();
    static AT: OnceLock<LanguageClass> = OnceLock::new();
    let cell = match kind {
        BasisKind::St0 => &ST0,
        BasisKind::Dd0 => &DD0,
        BasisKind::At => &AT,
        _ => unreachable!(),
    };
    cell.get_or_init(|| basis(kind, &ab()).unwrap())
}

fn parse(text: &str, kind: BasisKind) -> Formula {
    parse_formula(text, class(kind)).unwrap_or_else(|e| panic!("{text}: {e}"))
}

fn regex(text: &str) -> Dfa {
    compile_regex(text, &ab()).unwrap()
}

fn word(text: &str) -> Word {
    ab().word(text).unwrap()
}

/// The words up to `maxlen` satisfying `f`, by direct evaluation.
fn models(f: &Formula, maxlen: usize) -> Vec<Word> {
    ab().words_up_to(maxlen).into_iter().filter(|w| satisfies(f, w).unwrap()).collect()
}

fn agrees(f: &Formula, d: &Dfa, maxlen: usize) -> bool {
    ab().words_up_to(maxlen).iter().all(|w| satisfies(f, w).unwrap() == d.accepts(w))
}

#[test]
fn parsing() {
    let f = parse("exists x. a(x)", BasisKind::St0);
    assert_eq!(f, Formula::exists("x", Formula::Label(0, "x".into())));
    assert!(matches!(parse("N{Astar}", BasisKind::St0), Formula::Whole(_)));
    assert_eq!(parse_formula("I{Aplus}(x,y)", class(BasisKind::St0)), Err(Error::UnknownLanguage("Aplus".into())));
    assert_eq!(parse_formula("exists x. c(x)", class(BasisKind::St0)), Err(Error::UnknownLetter('c')));
    assert!(matches!(parse_formula("exists x a(x)", class(BasisKind::St0)), Err(Error::Syntax { .. })));
    assert!(matches!(parse_formula("a(x) &", class(BasisKind::St0)), Err(Error::Syntax { .. })));

    // Precedence: ! binds tighter than &, which binds tighter than |.
    let f = parse("!a(x) & b(x) | a(y)", BasisKind::St0);
    let want = Formula::or(
        Formula::and(Formula::not(Formula::Label(0, "x".into())), Formula::Label(1, "x".into())),
        Formula::Label(0, "y".into()),
    );
    assert_eq!(f, want);

    let text = "forall x. exists y. <(x,y) & !b(y) | eq(x,y)";
    let f = parse(text, BasisKind::St0);
    assert_eq!(parse_formula(&f.render(&ab()), class(BasisKind::St0)).unwrap(), f);
}

#[test]
fn aliases() {
    let dd0 = class(BasisKind::Dd0);
    let succ = parse("+1(x,y)", BasisKind::Dd0);
    assert_eq!(succ, Formula::Infix(LangRef { name: "eps".into(), dfa: Dfa::epsilon(&ab()) }, "x".into(), "y".into()));
    assert!(matches!(parse("epsilon", BasisKind::Dd0), Formula::Whole(l) if l.name == "eps"));
    assert!(matches!(parse("min(x)", BasisKind::Dd0), Formula::Prefix(l, _) if l.name == "eps"));
    assert!(matches!(parse("max(x)", BasisKind::Dd0), Formula::Suffix(l, _) if l.name == "eps"));
    assert!(matches!(parse("<(x,y)", BasisKind::St0), Formula::Infix(l, _, _) if l.dfa.is_universal()));
    assert_eq!(parse_formula("+1(x,y)", class(BasisKind::St0)), Err(Error::UnknownPredicate("+1".into())));
    assert_eq!(parse_formula("min(x)", class(BasisKind::St0)), Err(Error::UnknownPredicate("min".into())));
    assert_eq!(derived_signature(BasisKind::St0).unwrap().len(), 1);
    assert_eq!(derived_signature(BasisKind::Dd0).unwrap().len(), 5);
    assert_eq!(derived_signature(BasisKind::At), Err(Error::UnknownBasis("at".into())));

    // +1 is the successor relation.
    let f = parse("exists x. exists y. +1(x,y) & a(x) & b(y)", BasisKind::Dd0);
    assert!(agrees(&f, &regex("(a|b)*ab(a|b)*"), 8));
    let _ = dd0;
}

#[test]
fn evaluation() {
    let dd0 = class(BasisKind::Dd0);
    let mut asg = Assignment::new();
    assert!(satisfies(&parse("exists x. a(x)", BasisKind::St0), &word("ab")).unwrap());
    asg.insert("x".into(), 1);
    asg.insert("y".into(), 3);
    assert!(evaluate(&parse("I{Aplus}(x,y)", BasisKind::Dd0), &word("aba"), &asg).unwrap());
    assert!(!evaluate(&parse("I{eps}(x,y)", BasisKind::Dd0), &word("aba"), &asg).unwrap());
    assert!(!evaluate(&parse("I{Astar}(y,x)", BasisKind::Dd0), &word("aba"), &asg).unwrap());
    assert!(satisfies(&parse("N{eps}", BasisKind::Dd0), &Word::epsilon()).unwrap());
    assert!(evaluate(&parse("P{eps}(x)", BasisKind::Dd0), &word("ba"), &asg).unwrap());
    assert!(evaluate(&parse("S{eps}(y)", BasisKind::Dd0), &word("aba"), &asg).unwrap());
    assert_eq!(
        evaluate(&parse("a(z)", BasisKind::Dd0), &word("a"), &asg),
        Err(Error::UnboundVariable("z".into()))
    );
    assert!(satisfies(&parse("forall x. false", BasisKind::St0), &Word::epsilon()).unwrap());
    assert!(!satisfies(&parse("exists x. true", BasisKind::St0), &Word::epsilon()).unwrap());
    let _ = dd0;
}

#[test]
fn classification() {
    let f = parse("exists x. exists y. forall z. exists t. <(x,y) & <(y,z) | a(t)", BasisKind::St0);
    assert_eq!(classify(&f), AlternationClass::Sigma(3));
    let f = parse("forall x. forall y. exists z. forall t. <(x,y) & <(y,z) | a(t)", BasisKind::St0);
    assert_eq!(classify(&f), AlternationClass::Pi(3));
    assert_eq!(classify(&parse("a(x) & !eq(x,y)", BasisKind::St0)), AlternationClass::Sigma(0));
    assert_eq!(classify(&parse("!exists x. a(x)", BasisKind::St0)), AlternationClass::Pi(1));
    assert_eq!(classify(&parse("(exists x. a(x)) & forall y. b(y)", BasisKind::St0)), AlternationClass::BSigma(1));
    assert_eq!(classify(&parse("exists x. (exists y. a(y)) & forall z. b(z)", BasisKind::St0)), AlternationClass::Sigma(2));

    let p = prenex_sigma(&parse("exists x. (exists y. a(y)) & forall z. b(z)", BasisKind::St0));
    assert_eq!(p.blocks, vec![vec!["x1".to_string(), "x2".into()], vec!["x3".into()]]);
    // Free variables are not reused as bound names.
    let r = rename_apart(&parse("a(x1) & exists y. b(y)", BasisKind::St0));
    assert_eq!(r.free_vars().into_iter().collect::<Vec<_>>(), vec!["x1".to_string()]);
    assert!(r.var_names().contains("x2"));
}

#[test]
fn sigma_normal_forms() {
    let cases = [
        ("forall x. a(x)", 2, EpsilonAdjust::None),
        ("(forall x. a(x)) | exists y. b(y)", 2, EpsilonAdjust::AcceptEmpty),
        ("(forall x. a(x)) & exists y. b(y)", 2, EpsilonAdjust::None),
        ("(forall x. a(x)) | N{Aplus}", 2, EpsilonAdjust::None),
        ("!N{eps} | exists x. a(x)", 1, EpsilonAdjust::None),
        ("N{eps} | exists x. a(x)", 1, EpsilonAdjust::AcceptEmpty),
        ("!(exists x. a(x)) & N{Aplus}", 2, EpsilonAdjust::RejectEmpty),
    ];
    for (text, n, adjust) in cases {
        let f = parse(text, BasisKind::Dd0);
        let normal = sigma_normal(&f, n).unwrap();
        assert_eq!(normal.adjust, adjust, "{text}");
        let g = normalize_sigma(&f, n).unwrap();
        assert!(g.is_sentence());
        assert_eq!(models(&g, 6), models(&f, 6), "{text}");
        // The ε-adjustment is not counted.
        assert!(block_counts(&normal.prenex.to_formula()).0 <= n, "{text}");
    }
    let f = parse("forall x. exists y. a(y)", BasisKind::Dd0);
    assert_eq!(sigma_normal(&f, 1), Err(Error::NotSigmaN { n: 1 }));
    assert_eq!(sigma_normal(&parse("a(x)", BasisKind::Dd0), 1), Err(Error::NotSigmaN { n: 1 }));
}

#[test]
fn encodings() {
    let e0 = ExtendedAlphabet::new(&ab(), 0).unwrap();
    assert_eq!(e0.alphabet, ab());
    assert_eq!(e0.encode(&word("abba"), &[]).unwrap(), word("abba"));

    let e1 = ExtendedAlphabet::new(&ab(), 1).unwrap();
    let u = e1.encode(&word("ab"), &[2]).unwrap();
    assert_eq!(u.0.iter().map(|&c| e1.describe(c)).collect::<Vec<_>>(), vec!["(0,a)", "(1,b)"]);
    assert_eq!(e1.decode(&u).unwrap(), (word("ab"), vec![2]));

    let e2 = ExtendedAlphabet::new(&ab(), 2).unwrap();
    for w in ab().words_up_to(4).into_iter().filter(|w| !w.is_empty()) {
        for i in 1..=w.len() {
            for j in 1..=w.len() {
                let u = e2.encode(&w, &[i, j]).unwrap();
                assert_eq!(e2.decode(&u).unwrap(), (w.clone(), vec![i, j]));
                assert!(e2.valid().unwrap().accepts(&u));
            }
        }
    }

    let good = e0.good_filter().unwrap();
    let (a0, b1, a1) = (e1.letter(0, 0), e1.letter(1, 1), e1.letter(1, 0));
    assert!(good.accepts(&Word(vec![a0, b1])));
    assert!(!good.accepts(&Word(vec![a1, b1])));
    assert!(!good.accepts(&Word(vec![e1.letter(0, 0)])));

    // Projecting the good encodings of (w, x ↦ i) over all i gives back w.
    let w = word("aab");
    let encodings: Vec<Word> = (1..=w.len()).map(|i| e1.encode(&w, &[i]).unwrap()).collect();
    let d = Dfa::from_words(&e1.alphabet, &encodings);
    assert_eq!(e0.project(&d, 1000).unwrap(), Dfa::from_word(&ab(), &w));

    // α⁻¹(π_A⁻¹ K) = π_A⁻¹ K one level down.
    for k in [regex("(ab)*"), regex("a*b"), regex("(a|b)*aa(a|b)*")] {
        let up = e2.lift(&k).unwrap();
        assert_eq!(e1.inv_alpha(&up).unwrap(), e1.lift(&k).unwrap());
        assert_eq!(e0.inv_alpha(&e1.lift(&k).unwrap()).unwrap(), k);
    }
    assert_eq!(e1.project(&Dfa::universal(&ab()), 10), Err(Error::AlphabetMismatch));
}

#[test]
fn letter_splits() {
    let at = class(BasisKind::At);
    let a_star = regex("a*");
    assert!(split_by_letter(&a_star, at, 1).unwrap().is_empty());
    let all = Dfa::universal(&ab());
    let t = split_by_letter(&all, at, 1).unwrap();
    assert_eq!(t.len(), 1);
    assert!(t[0].0.is_universal() && t[0].2.is_universal());

    let has_a = regex("(a|b)*a(a|b)*");
    let t = split_by_letter(&has_a, at, 1).unwrap();
    let mut union = Dfa::empty(&ab());
    for (p, b, s) in &t {
        union = union.union(&p.marked_concat(*b, s).unwrap()).unwrap();
    }
    assert_eq!(union, has_a.intersect(&regex("(a|b)*b(a|b)*")).unwrap());
    assert_eq!(split_by_letter(&regex("(ab)*"), at, 0), Err(Error::NotInClass));
}

#[test]
fn compile_examples() {
    let st0 = class(BasisKind::St0);
    let c = compile(&parse("exists x. a(x)", BasisKind::St0), st0, DEFAULT_COMPILE_BUDGET).unwrap();
    assert_eq!(c.dfa, regex("(a|b)*a(a|b)*"));
    assert_eq!(c.level.to_string(), "st0[1/2]");
    assert_eq!(compile(&parse("N{Astar}", BasisKind::St0), st0, DEFAULT_COMPILE_BUDGET).unwrap().dfa, Dfa::universal(&ab()));
    let f = parse("exists x. exists y. I{Astar}(x,y) & a(x) & b(y)", BasisKind::St0);
    assert_eq!(compile(&f, st0, DEFAULT_COMPILE_BUDGET).unwrap().dfa, regex("(a|b)*a(a|b)*b(a|b)*"));

    let f = parse("exists x. a(x)", BasisKind::St0);
    let tautology = Formula::or(f.clone(), Formula::not(f));
    assert!(compile(&tautology, st0, DEFAULT_COMPILE_BUDGET).unwrap().dfa.is_universal());

    let c = compile(&parse("forall x. a(x)", BasisKind::St0), st0, DEFAULT_COMPILE_BUDGET).unwrap();
    assert_eq!(c.dfa, regex("a*"));
    assert_eq!(c.level.to_string(), "st0[3/2]");
    assert!(matches!(compile(&parse("a(x)", BasisKind::St0), st0, 100), Err(Error::NotInFragment(_))));
}

/// (formula, basis, target regex or "" when only checked against evaluation)
const CATALOG: &[(&str, BasisKind, &str)] = &[
    ("exists x. a(x)", BasisKind::St0, "(a|b)*a(a|b)*"),
    ("forall x. a(x)", BasisKind::St0, "a*"),
    ("exists x. exists y. <(x,y) & b(x) & a(y)", BasisKind::St0, "(a|b)*b(a|b)*a(a|b)*"),
    ("forall x. forall y. !(<(x,y) & a(x)) | b(y)", BasisKind::St0, ""),
    ("forall x. forall y. !(<(x,y) & b(x) & a(y))", BasisKind::St0, "a*b*"),
    ("forall x. exists y. <(x,y) | b(x)", BasisKind::St0, ""),
    ("exists x. forall y. eq(x,y) | <(y,x) & a(y)", BasisKind::St0, ""),
    ("(exists x. a(x)) & !exists y. b(y)", BasisKind::St0, "aa*"),
    ("exists x. min(x) & a(x)", BasisKind::Dd0, "a(a|b)*"),
    ("exists x. max(x) & b(x)", BasisKind::Dd0, "(a|b)*b"),
    ("epsilon | exists x. exists y. +1(x,y) & a(x) & a(y)", BasisKind::Dd0, "_|(a|b)*aa(a|b)*"),
    ("forall x. forall y. !+1(x,y) | !eq(x,y)", BasisKind::Dd0, ""),
    ("forall x. (!min(x) | a(x)) & (!max(x) | b(x)) & (!a(x) | exists y. +1(x,y) & b(y)) & (!b(x) | max(x) | exists y. +1(x,y) & a(y))", BasisKind::Dd0, "(ab)*"),
    ("exists x. exists y. I{Aplus}(x,y) & a(x) & a(y)", BasisKind::Dd0, "(a|b)*a(a|b)(a|b)*a(a|b)*"),
    ("exists x. P{Aplus}(x) & S{eps}(x)", BasisKind::Dd0, "(a|b)(a|b)(a|b)*"),
    ("forall x. exists y. exists z. +1(y,x) | +1(x,z) & b(z)", BasisKind::Dd0, ""),
];

#[test]
fn catalog_round_trip() {
    let mut marked = 0;
    for &(text, kind, target) in CATALOG {
        let f = parse(text, kind);
        assert!(f.is_sentence(), "{text}");
        let report = round_trip_check(&f, class(kind), 8, DEFAULT_COMPILE_BUDGET, None).unwrap();
        assert!(report.pass(), "{text}: {:?}", report.mismatches);
        if !target.is_empty() {
            let d = compile(&f, class(kind), DEFAULT_COMPILE_BUDGET).unwrap().dfa;
            assert_eq!(d, regex(target), "{text}");
            marked += 1;
        }
    }
    assert!(CATALOG.len() >= 10 && marked >= 8);
}

#[test]
fn strata_notes_for_sigma_one() {
    let f = parse("exists x. a(x)", BasisKind::St0);
    let r = round_trip_check(&f, class(BasisKind::St0), 6, DEFAULT_COMPILE_BUDGET, Some(1)).unwrap();
    assert!(r.pass());
    assert_eq!(r.strata.len(), 2);
    assert_eq!(r.strata[1].status, "Member");
}

/// L1·a·L2 by cutting every word at each a.
fn concat_oracle(f1: &Formula, a: u16, f2: &Formula, w: &Word) -> bool {
    (0..w.len()).any(|i| {
        w.0[i] == a && satisfies(f1, &Word(w.0[..i].to_vec())).unwrap() && satisfies(f2, &Word(w.0[i + 1..].to_vec())).unwrap()
    })
}

#[test]
fn marked_concatenation() {
    let dd0 = class(BasisKind::Dd0);
    let pairs = [
        ("N{Astar}", 0, "N{Astar}", BasisKind::St0),
        ("N{eps}", 0, "exists x. b(x)", BasisKind::Dd0),
        ("exists x. b(x)", 1, "N{Aplus}", BasisKind::Dd0),
        ("exists x. exists y. +1(x,y) & a(x) & b(y)", 0, "exists x. max(x) & a(x)", BasisKind::Dd0),
        ("exists x. a(x) & S{eps}(x)", 1, "exists x. min(x) & b(x) | N{eps}", BasisKind::Dd0),
        ("exists x. exists y. I{Aplus}(x,y) & b(x) & b(y)", 0, "exists x. P{eps}(x) & a(x)", BasisKind::Dd0),
    ];
    for (t1, a, t2, kind) in pairs {
        let (f1, f2) = (parse(t1, kind), parse(t2, kind));
        let psi = marked_concat_sentence(&f1, a, &f2, class(kind), 1).unwrap();
        assert_eq!(classify(&psi), AlternationClass::Sigma(1), "{t1} . {t2}");
        for w in ab().words_up_to(8) {
            assert_eq!(satisfies(&psi, &w).unwrap(), concat_oracle(&f1, a, &f2, &w), "{t1} . {t2} on {w:?}");
        }
        let c1 = compile(&f1, class(kind), DEFAULT_COMPILE_BUDGET).unwrap().dfa;
        let c2 = compile(&f2, class(kind), DEFAULT_COMPILE_BUDGET).unwrap().dfa;
        let got = compile(&psi, class(kind), DEFAULT_COMPILE_BUDGET).unwrap().dfa;
        assert_eq!(got, c1.marked_concat(a, &c2).unwrap(), "{t1} . {t2}");
    }
    let all = parse("N{Astar}", BasisKind::St0);
    let psi = marked_concat_sentence(&all, 0, &all, class(BasisKind::St0), 1).unwrap();
    assert_eq!(compile(&psi, class(BasisKind::St0), DEFAULT_COMPILE_BUDGET).unwrap().dfa, regex("(a|b)*a(a|b)*"));
    let eps = parse("N{eps}", BasisKind::Dd0);
    let l2 = parse("exists x. b(x)", BasisKind::Dd0);
    let psi = marked_concat_sentence(&eps, 0, &l2, dd0, 1).unwrap();
    assert_eq!(compile(&psi, dd0, DEFAULT_COMPILE_BUDGET).unwrap().dfa, regex("a(a|b)*b(a|b)*"));

    let pi = parse("forall x. a(x)", BasisKind::Dd0);
    assert_eq!(marked_concat_sentence(&pi, 0, &eps, dd0, 1), Err(Error::NotSigmaN { n: 1 }));
    // A Π1 sentence is Σ2, and relativization keeps it there.
    let psi = marked_concat_sentence(&pi, 1, &pi, dd0, 2).unwrap();
    assert_eq!(classify(&psi), AlternationClass::Sigma(2));
    assert_eq!(compile(&psi, dd0, DEFAULT_COMPILE_BUDGET).unwrap().dfa, regex("a*ba*"));
}

#[test]
fn alternating_words_from_level_one() {
    // The complement of (ab)* is bA* ∪ A*a ∪ A*aaA* ∪ A*bbA*, a union of
    // marked products of dd0 languages.
    let dd0 = class(BasisKind::Dd0);
    let p = |t: &str| parse(t, BasisKind::Dd0);
    let mc = |f1: &Formula, a, f2: &Formula| marked_concat_sentence(f1, a, f2, dd0, 1).unwrap();
    let (eps, all) = (p("N{eps}"), p("N{Astar}"));
    let bad = Formula::any([
        mc(&eps, 1, &all),
        mc(&all, 0, &eps),
        mc(&all, 0, &mc(&eps, 0, &all)),
        mc(&all, 1, &mc(&eps, 1, &all)),
    ]);
    assert_eq!(classify(&bad), AlternationClass::Sigma(1));
    let c = compile(&bad, dd0, DEFAULT_COMPILE_BUDGET).unwrap();
    assert_eq!(c.dfa, regex("(ab)*").complement());
    let good = Formula::not(bad);
    assert_eq!(classify(&good), AlternationClass::Pi(1));
    let c = compile(&good, dd0, DEFAULT_COMPILE_BUDGET).unwrap();
    assert_eq!(c.dfa, regex("(ab)*"));
    assert!(agrees(&good, &c.dfa, 8));
}

#[test]
fn open_formulas_match_encodings() {
    let dd0 = class(BasisKind::Dd0);
    let cases: &[(&str, &[&str])] = &[
        ("a(x)", &["x"]),
        ("<(x,y) & b(y)", &["x", "y"]),
        ("+1(x,y) | eq(x,y)", &["x", "y"]),
        ("exists z. <(x,z) & <(z,y) & a(z)", &["x", "y"]),
        ("forall z. !<(z,x) | b(z)", &["x"]),
        ("!I{Aplus}(x,y) & min(x)", &["x", "y"]),
    ];
    for &(text, vars) in cases {
        let f = parse(text, BasisKind::Dd0);
        let vars: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        let d = compile_open(&f, &vars, dd0, DEFAULT_COMPILE_BUDGET).unwrap();
        let ext = ExtendedAlphabet::new(&ab(), vars.len()).unwrap();
        for w in ab().words_up_to(5).into_iter().filter(|w| !w.is_empty()) {
            let n = w.len();
            let mut positions = vec![1; vars.len()];
            loop {
                let asg: BTreeMap<String, usize> = vars.iter().cloned().zip(positions.iter().copied()).collect();
                let u = ext.encode(&w, &positions).unwrap();
                assert_eq!(d.accepts(&u), evaluate(&f, &w, &asg).unwrap(), "{text} on {w:?} at {positions:?}");
                let Some(h) = positions.iter().position(|&p| p < n) else { break };
                positions[h] += 1;
                positions[..h].iter_mut().for_each(|p| *p = 1);
            }
        }
    }
}

#[test]
fn budget_is_enforced() {
    let f = parse("exists x. exists y. <(x,y) & a(x) & b(y)", BasisKind::St0);
    assert_eq!(compile(&f, class(BasisKind::St0), 2).map(|c| c.dfa), Err(Error::BudgetExceeded { limit: 2 }));
}

fn arb_formula(depth: u32) -> BoxedStrategy<Formula> {
    let dd0 = class(BasisKind::Dd0);
    let langs: Vec<LangRef> =
        dd0.members().unwrap().iter().map(|m| LangRef { name: m.name.clone(), dfa: m.dfa.clone() }).collect();
    let var = prop::sample::select(vec!["x".to_string(), "y".to_string()]);
    let lang = prop::sample::select(langs);
    let leaf = prop_oneof![
        (0u16..2, var.clone()).prop_map(|(a, x)| Formula::Label(a, x)),
        (var.clone(), var.clone()).prop_map(|(x, y)| Formula::Eq(x, y)),
        (lang.clone(), var.clone(), var.clone()).prop_map(|(l, x, y)| Formula::Infix(l, x, y)),
        (lang.clone(), var.clone()).prop_map(|(l, x)| Formula::Prefix(l, x)),
        (lang.clone(), var.clone()).prop_map(|(l, x)| Formula::Suffix(l, x)),
        lang.prop_map(Formula::Whole),
    ];
    leaf.prop_recursive(depth, 24, 2, move |inner| {
        let var = prop::sample::select(vec!["x".to_string(), "y".to_string()]);
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(f, g)| Formula::and(f, g)),
            (inner.clone(), inner.clone()).prop_map(|(f, g)| Formula::or(f, g)),
            (var.clone(), inner.clone()).prop_map(|(x, f)| Formula::exists(&x, f)),
            (var, inner).prop_map(|(x, f)| Formula::forall(&x, f)),
        ]
    })
    .boxed()
}

/// Closes a formula by quantifying its free variables.
fn close(f: Formula, universal: bool) -> Formula {
    f.free_vars().into_iter().fold(f, |g, x| if universal { Formula::forall(&x, g) } else { Formula::exists(&x, g) })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn compiled_sentences_agree_with_semantics(f in arb_formula(4), universal in any::<bool>()) {
        let f = close(f, universal);
        let dd0 = class(BasisKind::Dd0);
        let c = compile(&f, dd0, DEFAULT_COMPILE_BUDGET).unwrap();
        for w in ab().words_up_to(6) {
            prop_assert_eq!(c.dfa.accepts(&w), satisfies(&f, &w).unwrap());
        }
    }

    #[test]
    fn normal_forms_are_equivalent(f in arb_formula(4), universal in any::<bool>()) {
        let f = close(f, universal);
        let n = block_counts(&f).0.max(1);
        let g = normalize_sigma(&f, n).unwrap();
        prop_assert!(block_counts(&sigma_normal(&f, n).unwrap().prenex.to_formula()).0 <= n);
        for w in ab().words_up_to(5) {
            prop_assert_eq!(satisfies(&g, &w).unwrap(), satisfies(&f, &w).unwrap());
        }
    }

    #[test]
    fn rendering_round_trips(f in arb_formula(3)) {
        let text = f.render(&ab());
        let back = parse_formula(&text, class(BasisKind::Dd0)).unwrap();
        prop_assert_eq!(back, f);
    }
}
