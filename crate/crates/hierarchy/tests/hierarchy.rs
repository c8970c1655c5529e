use chier_classes::{basis, BasisKind, LanguageClass};
use chier_hierarchy::*;
use chier_regular::{compile_regex, Alphabet, Dfa, Letter, Side, Word};
use proptest::prelude::*;

fn ab() -> Alphabet {
    Alphabet::parse("ab").unwrap()
}

fn re(r: &str) -> Dfa {
    compile_regex(r, &ab()).unwrap()
}

/// Brute-force membership in L_0 a_1 L_1 ⋯ a_n L_n by trying every
/// placement of the markers.
fn mono_accepts(factors: &[Dfa], letters: &[Letter], w: &[Letter]) -> bool {
    if letters.is_empty() {
        return factors[0].accepts_letters(w);
    }
    (0..w.len()).any(|i| {
        w[i] == letters[0] && factors[0].accepts_letters(&w[..i]) && mono_accepts(&factors[1..], &letters[1..], &w[i + 1..])
    })
}

fn leaves(m: &Monomial) -> Vec<Dfa> {
    m.factors.iter().map(|f| eval_level(f).unwrap()).collect()
}

fn monomial(class: &LanguageClass, names: &[&str], letters: &[Letter]) -> Monomial {
    let factors = names.iter().map(|n| LevelExpr::member(class, n).unwrap()).collect();
    Monomial::new(factors, letters.to_vec()).unwrap()
}

fn subsequence(needle: &[Letter], w: &[Letter]) -> bool {
    let mut it = w.iter();
    needle.iter().all(|c| it.any(|x| x == c))
}

#[test]
fn evaluation_and_tags() {
    let st0 = basis(BasisKind::St0, &ab()).unwrap();
    let star = LevelExpr::member(&st0, "Astar").unwrap();
    assert_eq!(eval_level(&star).unwrap(), Dfa::universal(&ab()));

    let bad = LevelExpr::complement(Level::half("st0", 0), star.clone());
    assert!(matches!(eval_level(&bad), Err(Error::TagViolation(_))));
    let bad = LevelExpr::marked_concat(Level::full("st0", 1), star.clone(), 0, star.clone());
    assert!(matches!(eval_level(&bad), Err(Error::TagViolation(_))));
    let high = LevelExpr::lang(Level::full("st0", 2), "x", Dfa::universal(&ab()));
    let bad = LevelExpr::union(Level::full("st0", 1), vec![high]);
    assert!(matches!(eval_level(&bad), Err(Error::TagViolation(_))));
    let other = LevelExpr::lang(Level::full("dd0", 0), "eps", Dfa::epsilon(&ab()));
    let bad = LevelExpr::union(Level::full("st0", 1), vec![other]);
    assert!(matches!(eval_level(&bad), Err(Error::TagViolation(_))));

    let ok = LevelExpr::marked_concat(Level::half("st0", 0), star.clone(), 0, star.clone());
    assert_eq!(eval_level(&ok).unwrap(), re("(a|b)*a(a|b)*"));

    let mut ev = Evaluator::new();
    let e = LevelExpr::union(Level::half("st0", 0), vec![ok.clone(), ok.clone()]);
    ev.eval(&e).unwrap();
    assert!(ev.cache_hits() >= 1);

    assert_eq!("dd0[3/2]".parse::<Level>().unwrap(), Level::half("dd0", 1));
    assert_eq!("st0[2]".parse::<Level>().unwrap(), Level::full("st0", 2));
    assert_eq!(Level::half("dd0", 0).to_string(), "dd0[1/2]");
    assert!("dd0[2/2]".parse::<Level>().is_err());
}

#[test]
fn classic_dot_depth_expressions() {
    let a = ab();
    assert_eq!(eval_level(&dd1_ab_star(&a).unwrap()).unwrap(), re("(ab)*"));
    assert_eq!(eval_level(&dd2_a_ab_star_b_star(&a).unwrap()).unwrap(), re("(a(ab)*b)*"));
    assert!(check_classic(&a).unwrap().iter().all(|c| c.pass));
    assert!(matches!(dd1_ab_star(&Alphabet::parse("a").unwrap()), Err(Error::AlphabetTooSmall(1))));
}

#[test]
fn expression_json_round_trip() {
    let a = ab();
    let e = dd2_a_ab_star_b_star(&a).unwrap();
    let j = e.to_json(&a);
    let text = serde_json::to_string(&j).unwrap();
    let back: ExprJson = serde_json::from_str(&text).unwrap();
    let e2 = LevelExpr::from_json(&back, &a).unwrap();
    assert_eq!(e, e2);
    assert_eq!(j.op, "complement");
    assert_eq!(j.tag, "dd0[2]");

    let p = piece_complement(&[0, 1], &a).unwrap();
    let back = PolyExpr::from_json(&serde_json::from_str(&serde_json::to_string(&p.to_json()).unwrap()).unwrap()).unwrap();
    assert_eq!(p, back);
    assert!(LevelExpr::from_json(&ExprJson { op: "nope".into(), ..j.clone() }, &a).is_err());
}

#[test]
fn quotient_examples() {
    let st0 = basis(BasisKind::St0, &ab()).unwrap();
    let m = monomial(&st0, &["Astar", "Astar"], &[0]);
    let p = pol_quotient_rewrite(&m, 0, Side::Left).unwrap();
    assert_eq!(p.monomials.len(), 2);
    assert_eq!(p.eval().unwrap(), Dfa::universal(&ab()));
    let p = pol_quotient_rewrite(&m, 1, Side::Left).unwrap();
    assert_eq!(p.eval().unwrap(), re("(a|b)*a(a|b)*"));
    let p = pol_quotient_rewrite(&m, 0, Side::Right).unwrap();
    assert_eq!(p.eval().unwrap(), m.eval().unwrap().right_quotient(&Word(vec![0])));
    assert_eq!(p.eval().unwrap(), Dfa::universal(&ab()));
}

#[test]
fn intersection_examples() {
    let st0 = basis(BasisKind::St0, &ab()).unwrap();
    let ma = monomial(&st0, &["Astar", "Astar"], &[0]);
    let mb = monomial(&st0, &["Astar", "Astar"], &[1]);
    let p = pol_intersect_rewrite(&ma, &mb, &st0).unwrap();
    assert_eq!(p.eval().unwrap(), re("(a|b)*a(a|b)*b(a|b)*|(a|b)*b(a|b)*a(a|b)*"));
    assert!(p.degree() <= 2);
    let p = pol_intersect_rewrite(&ma, &ma, &st0).unwrap();
    assert_eq!(p.eval().unwrap(), ma.eval().unwrap());

    let at = basis(BasisKind::At, &ab()).unwrap();
    let names: Vec<String> = at.members().unwrap().iter().map(|m| m.name.clone()).collect();
    let x = monomial(&at, &[&names[3]], &[]);
    let y = monomial(&at, &[&names[5]], &[]);
    let p = pol_intersect_rewrite(&x, &y, &at).unwrap();
    assert!(p.monomials.len() <= 1 && p.degree() == 0);
    assert_eq!(p.eval().unwrap(), x.eval().unwrap().intersect(&y.eval().unwrap()).unwrap());

    let astar = LevelExpr::lang(Level::full("st0", 0), "a*", re("a*"));
    let bad = Monomial::new(vec![astar], vec![]).unwrap();
    assert!(matches!(pol_intersect_rewrite(&bad, &ma, &st0), Err(Error::NotInBasis(_))));
}

#[test]
fn concatenation_examples() {
    let a = ab();
    let st0 = basis(BasisKind::St0, &a).unwrap();
    let dd0 = basis(BasisKind::Dd0, &a).unwrap();
    let k = PolyExpr::single(&a, monomial(&st0, &["Astar", "Astar"], &[0]));
    let all = PolyExpr::single(&a, monomial(&st0, &["Astar"], &[]));
    assert_eq!(pol_concat_rewrite(&k, &all).unwrap().eval().unwrap(), k.eval().unwrap());
    let eps = PolyExpr::single(&a, monomial(&dd0, &["eps"], &[]));
    assert_eq!(pol_concat_rewrite(&k, &eps).unwrap().eval().unwrap(), k.eval().unwrap());

    let star = PolyExpr::single(&a, monomial(&dd0, &["Astar"], &[]));
    let p = eps_chain(&star, &a.word("ab").unwrap(), &star, &dd0).unwrap();
    assert_eq!(p.eval().unwrap(), re("(a|b)*ab(a|b)*"));
    assert_eq!(p.monomials[0].factors.len(), 3);
    assert!(matches!(eps_chain(&all, &a.word("ab").unwrap(), &all, &st0), Err(Error::EpsilonNotInBasis)));
    assert_eq!(eps_chain(&star, &Word::epsilon(), &star, &dd0).unwrap().eval().unwrap(), Dfa::universal(&a));
}

#[test]
fn piece_complements() {
    let a = ab();
    assert!(piece_complement(&[], &a).unwrap().eval().unwrap().is_empty());
    assert_eq!(piece_complement(&[0], &a).unwrap().eval().unwrap(), re("b*"));
    let p = piece_complement(&[0, 1], &a).unwrap();
    assert_eq!(p.eval().unwrap(), re("b*a*"));
    assert_eq!(p.monomials.len(), 2);

    let words = a.words_up_to(7);
    for n in 0..=4 {
        for seq in a.words_up_to(n).into_iter().filter(|w| w.len() == n) {
            let d = piece_complement(&seq.0, &a).unwrap().eval().unwrap();
            for w in &words {
                assert_eq!(d.accepts(w), !subsequence(&seq.0, &w.0), "{seq:?} on {w:?}");
            }
        }
    }
}

#[test]
fn alphabet_trick() {
    let a = ab();
    let samples = default_trick_samples(&a).unwrap();
    let report = alphabet_trick_check(&samples, &a, 6).unwrap();
    assert_eq!(report.len(), samples.len());
    for e in &report {
        assert!(e.pass(), "{e:?}");
    }
    let p = to_pol_wat(&samples[0].1, &a).unwrap();
    assert_eq!(p.eval().unwrap(), re("b*"));
    let unsupported = LevelExpr::complement(Level::full("st0", 1), dd1_ab_star(&a).unwrap());
    let report = alphabet_trick_check(&[("bad".into(), unsupported)], &a, 4).unwrap();
    assert!(report[0].error.is_some() && !report[0].pass());
}

#[test]
fn strictness_bundles() {
    let a = ab();
    let dd0 = basis(BasisKind::Dd0, &a).unwrap();
    let b = strictness_witnesses(&dd0, 2).unwrap();
    assert!(!b.augmented);
    assert_eq!(b.period, 1);
    assert_eq!(b.language, re("(a|b)*abba(a|b)*"));
    assert_eq!(b.pairs[0].u, a.word("abaaba").unwrap());
    assert_eq!(b.pairs[1].u, a.word("abaabaabaaba").unwrap());
    assert!(b.verified());
    for (k, p) in b.pairs.iter().enumerate() {
        assert_eq!(p.u.len(), 3 << (k + 1));
        assert_eq!(p.v.len(), 2 * p.u.len() + 4);
    }

    let st0 = basis(BasisKind::St0, &a).unwrap();
    let b = strictness_witnesses(&st0, 1).unwrap();
    assert!(b.augmented);
    assert_eq!(b.period, 1);
    assert!(b.verified());
    let j = serde_json::to_value(b.to_json(&a)).unwrap();
    assert_eq!(j["pairs"][1]["u"], "abaabaabaaba");

    let one = Alphabet::parse("a").unwrap();
    assert!(matches!(
        strictness_witnesses(&basis(BasisKind::Dd0, &one).unwrap(), 1),
        Err(Error::AlphabetTooSmall(1))
    ));
    let wat = basis(BasisKind::Wat, &a).unwrap();
    assert!(strictness_witnesses(&wat, 1).is_err());
}

#[test]
fn interleaving_facts() {
    for c in interleaving_check(&ab()).unwrap() {
        assert!(c.pass, "{}", c.name);
    }
}

#[test]
fn letter_splits_reconstruct() {
    let a = ab();
    for r in ["a*", "(a|b)*a(a|b)*", "(ab)*", "b*ab*", "(a|b)*", "(a|b)*aa(a|b)*b"] {
        let l = re(r);
        for c in a.letters() {
            let mut u = Dfa::empty(&a);
            for (p, s) in letter_splits(&l, c) {
                u = u.union(&p.marked_concat(c, &s).unwrap()).unwrap();
            }
            let with_c = Dfa::universal(&a).marked_concat(c, &Dfa::universal(&a)).unwrap();
            assert_eq!(u, l.intersect(&with_c).unwrap(), "{r} at {c}");
        }
    }
    assert!(letter_splits(&re("a*"), 1).is_empty());
}

fn at_class() -> LanguageClass {
    basis(BasisKind::At, &ab()).unwrap()
}

fn at_monomial() -> impl Strategy<Value = (Vec<usize>, Vec<Letter>)> {
    (0usize..=2).prop_flat_map(|n| (prop::collection::vec(0usize..16, n + 1), prop::collection::vec(0 as Letter..2, n)))
}

fn build(class: &LanguageClass, (idx, letters): &(Vec<usize>, Vec<Letter>)) -> Monomial {
    let ms = class.members().unwrap();
    let factors = idx.iter().map(|&i| LevelExpr::lang(Level::full(class.name(), 0), &ms[i].name, ms[i].dfa.clone())).collect();
    Monomial::new(factors, letters.clone()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn intersection_matches_brute_force(x in at_monomial(), y in at_monomial()) {
        let at = at_class();
        let (m1, m2) = (build(&at, &x), build(&at, &y));
        let p = pol_intersect_rewrite(&m1, &m2, &at).unwrap();
        prop_assert!(p.degree() <= m1.degree() + m2.degree());
        let d = p.eval().unwrap();
        let (f1, f2) = (leaves(&m1), leaves(&m2));
        for w in ab().words_up_to(6) {
            let want = mono_accepts(&f1, &m1.letters, &w.0) && mono_accepts(&f2, &m2.letters, &w.0);
            prop_assert_eq!(d.accepts(&w), want);
        }
        for m in &p.monomials {
            for f in leaves(m) {
                prop_assert!(at.index_of(&f).is_some());
            }
        }
    }

    #[test]
    fn quotients_match_brute_force(x in at_monomial(), a in 0 as Letter..2, left in any::<bool>()) {
        let at = at_class();
        let m = build(&at, &x);
        let side = if left { Side::Left } else { Side::Right };
        let d = pol_quotient_rewrite(&m, a, side).unwrap().eval().unwrap();
        let f = leaves(&m);
        for w in ab().words_up_to(6) {
            let full = if left { Word(vec![a]).concat(&w) } else { w.push(a) };
            prop_assert_eq!(d.accepts(&w), mono_accepts(&f, &m.letters, &full.0));
        }
    }

    #[test]
    fn concatenation_matches_brute_force(x in at_monomial(), y in at_monomial()) {
        let at = at_class();
        let (m1, m2) = (build(&at, &x), build(&at, &y));
        let k = PolyExpr::single(&ab(), m1.clone());
        let l = PolyExpr::single(&ab(), m2.clone());
        let d = pol_concat_rewrite(&k, &l).unwrap().eval().unwrap();
        let (f1, f2) = (leaves(&m1), leaves(&m2));
        for w in ab().words_up_to(5) {
            let want = (0..=w.len()).any(|i| mono_accepts(&f1, &m1.letters, &w.0[..i]) && mono_accepts(&f2, &m2.letters, &w.0[i..]));
            prop_assert_eq!(d.accepts(&w), want);
        }
    }

    #[test]
    fn nested_polynomials_flatten(x in at_monomial(), y in at_monomial(), a in 0 as Letter..2) {
        let at = at_class();
        let inner = PolyExpr::single(&ab(), build(&at, &x)).into_level(Level::half("at", 0));
        let outer_factor = LevelExpr::member(&at, "Astar").unwrap();
        let mut m = build(&at, &y);
        m.factors.push(inner);
        m.letters.push(a);
        let outer = PolyExpr::new(&ab(), vec![m, Monomial::atom(outer_factor)]);
        let flat = outer.flatten();
        let inlined = flat.monomials.iter().all(|m| m.factors.iter().all(|f| matches!(f.node, Node::Lang { .. })));
        prop_assert!(inlined);
        prop_assert_eq!(flat.eval().unwrap(), outer.eval().unwrap());
    }
}
