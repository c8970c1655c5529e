//! Automaton operations checked against a set-based regex semantics that
//! never builds an automaton.

use std::collections::BTreeSet;

use chier_regular::{compile_regex, Alphabet, BoolOp, Dfa, Regex, Side, Word};
use proptest::prelude::*;

const MAXLEN: usize = 6;

type Lang = BTreeSet<Vec<u16>>;

/// Words of length ≤ MAXLEN denoted by `r`.
fn denote(r: &Regex, k: u16) -> Lang {
    match r {
        Regex::Empty => Lang::new(),
        Regex::Epsilon => [vec![]].into_iter().collect(),
        Regex::Letter(a) => [vec![*a]].into_iter().collect(),
        Regex::Any => (0..k).map(|a| vec![a]).collect(),
        Regex::Union(x, y) => denote(x, k).union(&denote(y, k)).cloned().collect(),
        Regex::Concat(x, y) => concat(&denote(x, k), &denote(y, k)),
        Regex::Star(x) => {
            let base = denote(x, k);
            let mut acc: Lang = [vec![]].into_iter().collect();
            loop {
                let next: Lang = acc.union(&concat(&acc, &base)).cloned().collect();
                if next == acc {
                    return acc;
                }
                acc = next;
            }
        }
    }
}

fn concat(x: &Lang, y: &Lang) -> Lang {
    let mut out = Lang::new();
    for u in x {
        for v in y {
            if u.len() + v.len() <= MAXLEN {
                let mut w = u.clone();
                w.extend(v);
                out.insert(w);
            }
        }
    }
    out
}

fn all_words(k: u16) -> Vec<Vec<u16>> {
    let ab = Alphabet::new((0..k).map(|i| (b'a' + i as u8) as char)).unwrap();
    ab.words_up_to(MAXLEN).into_iter().map(|w| w.0).collect()
}

fn language_of(d: &Dfa) -> Lang {
    all_words(d.alphabet().len() as u16).into_iter().filter(|w| d.accepts_letters(w)).collect()
}

fn regex_strategy() -> impl Strategy<Value = Regex> {
    let leaf = prop_oneof![
        Just(Regex::Epsilon),
        Just(Regex::Letter(0)),
        Just(Regex::Letter(1)),
        Just(Regex::Any),
        Just(Regex::Empty),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Regex::Union(Box::new(x), Box::new(y))),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Regex::Concat(Box::new(x), Box::new(y))),
            inner.prop_map(|x| Regex::Star(Box::new(x))),
        ]
    })
}

fn ab() -> Alphabet {
    Alphabet::parse("ab").unwrap()
}

fn re(s: &str) -> Dfa {
    compile_regex(s, &ab()).unwrap()
}

fn word_strategy(max: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(0u16..2, 0..=max).prop_map(Word)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn regex_automaton_matches_semantics(r in regex_strategy()) {
        let d = r.to_dfa(&ab());
        prop_assert_eq!(language_of(&d), denote(&r, 2));
    }

    #[test]
    fn boolean_operations_match_sets(r in regex_strategy(), s in regex_strategy()) {
        let (x, y) = (r.to_dfa(&ab()), s.to_dfa(&ab()));
        let (lx, ly) = (denote(&r, 2), denote(&s, 2));
        prop_assert_eq!(language_of(&x.union(&y).unwrap()), lx.union(&ly).cloned().collect::<Lang>());
        prop_assert_eq!(language_of(&x.intersect(&y).unwrap()), lx.intersection(&ly).cloned().collect::<Lang>());
        let all: Lang = all_words(2).into_iter().collect();
        prop_assert_eq!(language_of(&x.complement()), all.difference(&lx).cloned().collect::<Lang>());
        prop_assert_eq!(language_of(&x.concat(&y).unwrap()), concat(&lx, &ly));
        let marked = concat(&concat(&lx, &[vec![1]].into_iter().collect()), &ly);
        prop_assert_eq!(language_of(&x.marked_concat(1, &y).unwrap()), marked);
    }

    #[test]
    fn canonical_form_is_idempotent(r in regex_strategy()) {
        let d = r.to_dfa(&ab());
        prop_assert!(d.is_canonical());
        prop_assert_eq!(d.minimize(), d.clone());
        prop_assert_eq!(d.complement().complement(), d);
    }

    #[test]
    fn quotients_commute_with_booleans(r in regex_strategy(), s in regex_strategy(), w in word_strategy(3)) {
        let (x, y) = (r.to_dfa(&ab()), s.to_dfa(&ab()));
        for side in [Side::Left, Side::Right] {
            prop_assert_eq!(
                x.union(&y).unwrap().quotient(side, &w),
                x.quotient(side, &w).union(&y.quotient(side, &w)).unwrap()
            );
            prop_assert_eq!(x.complement().quotient(side, &w), x.quotient(side, &w).complement());
        }
    }

    #[test]
    fn quotients_compose(r in regex_strategy(), u in word_strategy(3), v in word_strategy(3)) {
        let x = r.to_dfa(&ab());
        let uv = u.concat(&v);
        prop_assert_eq!(x.left_quotient(&uv), x.left_quotient(&u).left_quotient(&v));
        prop_assert_eq!(x.right_quotient(&uv), x.right_quotient(&v).right_quotient(&u));
    }

    #[test]
    fn quotient_semantics(r in regex_strategy(), u in word_strategy(2)) {
        let x = r.to_dfa(&ab());
        let left = x.left_quotient(&u);
        let right = x.right_quotient(&u);
        for w in all_words(2).into_iter().filter(|w| w.len() + u.len() <= MAXLEN) {
            let w = Word(w);
            prop_assert_eq!(left.accepts(&w), x.accepts(&u.concat(&w)));
            prop_assert_eq!(right.accepts(&w), x.accepts(&w.concat(&u)));
        }
    }

    #[test]
    fn residual_count_is_state_count(r in regex_strategy()) {
        let x = r.to_dfa(&ab());
        prop_assert_eq!(x.residuals(Side::Left).len(), x.state_count());
        // Every left quotient by a short word is among the residuals.
        let res = x.residuals(Side::Left);
        for w in ab().words_up_to(3) {
            prop_assert!(res.contains(&x.left_quotient(&w)));
        }
        let rres = x.residuals(Side::Right);
        for w in ab().words_up_to(3) {
            prop_assert!(rres.contains(&x.right_quotient(&w)));
        }
    }

    #[test]
    fn json_round_trip(r in regex_strategy()) {
        let x = r.to_dfa(&ab());
        let text = serde_json::to_string(&x).unwrap();
        let back: Dfa = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, x);
    }
}

#[test]
fn regex_examples() {
    let a = ab();
    assert_eq!(re("(a|b)*"), Dfa::universal(&a));
    assert!(compile_regex("", &a).is_err());
    assert_eq!(re("a*b*").state_count(), 3);
}

#[test]
fn boolean_examples() {
    let a = ab();
    assert_eq!(Dfa::bool_op(BoolOp::Complement, &[&Dfa::universal(&a)]).unwrap(), Dfa::empty(&a));
    let u = Dfa::bool_op(BoolOp::Union, &[&re("(a|b)*a(a|b)*"), &re("(a|b)*b(a|b)*")]).unwrap();
    assert_eq!(u, Dfa::nonempty(&a));
    let abc = Alphabet::parse("abc").unwrap();
    let b_star = Dfa::subset_star(&abc, &[0, 1]);
    let c_star = Dfa::subset_star(&abc, &[1, 2]);
    assert_eq!(b_star.intersect(&c_star).unwrap(), Dfa::subset_star(&abc, &[1]));
    let other = Dfa::universal(&abc);
    assert!(b_star.union(&Dfa::universal(&a)).is_err());
    assert!(other.union(&b_star).is_ok());
}

#[test]
fn concatenation_examples() {
    let a = ab();
    let star = Dfa::universal(&a);
    assert_eq!(star.marked_concat(0, &star).unwrap(), re(".*a.*"));
    let k = re("a*b|ba");
    assert_eq!(k.concat(&Dfa::epsilon(&a)).unwrap(), k);
    let m = re("a*").marked_concat(1, &re("a*")).unwrap();
    assert_eq!(m, re("a*ba*"));
    let expected: Vec<Word> = a.words_up_to(6).into_iter().filter(|w| w.0.iter().filter(|&&c| c == 1).count() == 1).collect();
    assert_eq!(m.enumerate(6), expected);
}

#[test]
fn quotient_examples() {
    let a = ab();
    let l = re(".*a.*");
    assert_eq!(l.left_quotient(&a.word("a").unwrap()), Dfa::universal(&a));
    assert_eq!(Dfa::universal(&a).residuals(Side::Left), vec![Dfa::universal(&a)]);
    assert_eq!(Dfa::empty(&a).residuals(Side::Left), vec![Dfa::empty(&a)]);
    assert_eq!(re("a*b*").residuals(Side::Left).len(), 3);
}

#[test]
fn membership_and_enumeration() {
    let a = ab();
    assert!(re("(ab)*").accepts(&a.word("ab").unwrap()));
    let shown: Vec<String> = re("a*b*").enumerate(2).iter().map(|w| a.render(w)).collect();
    assert_eq!(shown, ["", "a", "b", "aa", "ab", "bb"]);
    let raw = chier_regular::Dfa::from_parts(a.clone(), 3, &[(0, 0, 1), (0, 1, 2), (1, 0, 1), (1, 1, 2), (2, 0, 2), (2, 1, 2)], 0, &[1, 2]).unwrap();
    assert!(!raw.is_canonical());
    assert!(raw.minimize().equivalent(&raw).unwrap());
    assert_eq!(raw.minimize(), Dfa::nonempty(&a));
}

#[test]
fn json_schema_shape() {
    let j = serde_json::to_value(re("a*")).unwrap();
    assert_eq!(j["alphabet"], "ab");
    assert_eq!(j["states"], 2);
    assert_eq!(j["initial"], 0);
    assert_eq!(j["accepting"], serde_json::json!([0]));
    assert_eq!(j["transitions"][0], serde_json::json!([0, "a", 0]));
}
