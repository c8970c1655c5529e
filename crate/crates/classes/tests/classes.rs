use chier_classes::*;
use chier_regular::{compile_regex, Alphabet, Dfa, Regex, Word};
use std::sync::OnceLock;

use proptest::prelude::*;

fn ab() -> Alphabet {
    Alphabet::parse("ab").unwrap()
}

fn re(s: &str) -> Dfa {
    compile_regex(s, &ab()).unwrap()
}

fn w(s: &str) -> Word {
    ab().word(s).unwrap()
}

fn materialized_bases() -> &'static [LanguageClass] {
    static BASES: OnceLock<Vec<LanguageClass>> = OnceLock::new();
    BASES.get_or_init(|| {
        [BasisKind::St0, BasisKind::Dd0, BasisKind::At, BasisKind::Wat, BasisKind::Att(1), BasisKind::Att(2)]
            .into_iter()
            .map(|k| basis(k, &ab()).unwrap())
            .collect()
    })
}

/// Brute-force ≤_C: membership implication over every member.
fn leq_by_members(c: &LanguageClass, x: &Word, y: &Word) -> bool {
    c.members().unwrap().iter().all(|m| !m.dfa.accepts(x) || m.dfa.accepts(y))
}

#[test]
fn builtin_sizes() {
    let a = Alphabet::parse("a").unwrap();
    assert_eq!(basis(BasisKind::St0, &ab()).unwrap().members().unwrap().len(), 2);
    let dd0 = basis(BasisKind::Dd0, &ab()).unwrap();
    let names: Vec<&str> = dd0.members().unwrap().iter().map(|m| m.name.as_str()).collect();
    assert_eq!(names, ["empty", "eps", "Aplus", "Astar"]);
    let at_a = basis(BasisKind::At, &a).unwrap();
    let mut got: Vec<Dfa> = at_a.members().unwrap().iter().map(|m| m.dfa.clone()).collect();
    let mut want = vec![
        Dfa::empty(&a),
        Dfa::universal(&a),
        Dfa::contains_letter(&a, 0),
        Dfa::epsilon(&a),
    ];
    got.sort_by_key(|d| format!("{d:?}"));
    want.sort_by_key(|d| format!("{d:?}"));
    assert_eq!(got, want);
    assert_eq!(basis(BasisKind::At, &ab()).unwrap().members().unwrap().len(), 16);
}

#[test]
fn wat_members_are_distinct_unions_of_subset_stars() {
    let c = basis(BasisKind::Wat, &ab()).unwrap();
    // Oracle: all unions of {ε}, a*, b*, A* compared on words up to length 4.
    let gens = [re("_"), re("a*"), re("b*"), re("(a|b)*")];
    let words = ab().words_up_to(4);
    let mut profiles = std::collections::BTreeSet::new();
    for mask in 0..16 {
        let p: Vec<bool> = words
            .iter()
            .map(|x| (0..4).any(|i| mask >> i & 1 == 1 && gens[i].accepts(x)))
            .collect();
        profiles.insert(p);
    }
    assert_eq!(c.members().unwrap().len(), profiles.len());
    assert_eq!(profiles.len(), 6);
}

#[test]
fn properties_examples() {
    for c in materialized_bases() {
        let p = c.properties();
        assert!(p.lattice && p.quotienting, "{}", c.name());
        assert_eq!(p.boolean_algebra, c.kind() != Some(BasisKind::Wat), "{}", c.name());
        assert_eq!(c.computed_properties().unwrap(), p, "{}", c.name());
    }
    let bad = LanguageClass::from_members("bad", &ab(), vec![("e".into(), Dfa::empty(&ab())), ("a".into(), re("a*"))]).unwrap();
    assert!(!bad.properties().lattice);
    assert!(matches!(non_membership_witness(&bad, &re("a")), Err(Error::NotLattice(_))));
    assert!(bad.properties().quotienting);
    let finite = LanguageClass::from_members(
        "finite",
        &ab(),
        vec![("e".into(), Dfa::empty(&ab())), ("u".into(), Dfa::universal(&ab())), ("ab".into(), re("ab"))],
    )
    .unwrap();
    assert!(finite.properties().lattice && !finite.properties().quotienting);
    assert!(matches!(ClassMonoid::new(&finite), Err(Error::NotQuotienting(_))));
}

#[test]
fn leq_examples() {
    let dd0 = basis(BasisKind::Dd0, &ab()).unwrap();
    assert!(dd0.leq(&w("ab"), &w("a")) && dd0.leq(&w("a"), &w("ab")));
    assert!(!dd0.leq(&w(""), &w("a")));
    let at = basis(BasisKind::At, &ab()).unwrap();
    assert!(at.leq(&w("ab"), &w("ba")));
    for c in materialized_bases() {
        for x in ab().words_up_to(3) {
            assert!(c.leq(&x, &x));
        }
    }
}

#[test]
fn upper_set_examples() {
    let st0 = basis(BasisKind::St0, &ab()).unwrap();
    assert_eq!(st0.upper_set(&w("abba")), Dfa::universal(&ab()));
    let dd0 = basis(BasisKind::Dd0, &ab()).unwrap();
    assert_eq!(dd0.upper_set(&w("")), Dfa::epsilon(&ab()));
    let at = basis(BasisKind::At, &ab()).unwrap();
    assert_eq!(at.upper_set(&w("ab")), re(".*a.*").intersect(&re(".*b.*")).unwrap());
    // The upper set computed from tests equals the intersection over members.
    for c in materialized_bases() {
        for x in ab().words_up_to(3) {
            let direct = Dfa::intersect_all(&ab(), c.members().unwrap().iter().filter(|m| m.dfa.accepts(&x)).map(|m| &m.dfa)).unwrap();
            assert_eq!(c.upper_set(&x), direct);
            assert!(in_class(c, &direct).unwrap());
        }
    }
}

#[test]
fn monoid_sizes() {
    assert_eq!(ClassMonoid::new(&basis(BasisKind::St0, &ab()).unwrap()).unwrap().size(), 1);
    assert_eq!(ClassMonoid::new(&basis(BasisKind::Dd0, &ab()).unwrap()).unwrap().size(), 2);
    let a = Alphabet::parse("a").unwrap();
    let m = ClassMonoid::new(&basis(BasisKind::Att(2), &a).unwrap()).unwrap();
    assert_eq!(m.size(), 3);
    let reps: Vec<String> = (0..3).map(|s| a.render(m.representative(s))).collect();
    assert_eq!(reps, ["", "a", "aa"]);
    // Brute force: vector classes of a^n, n ≤ 4.
    let c = basis(BasisKind::Att(2), &a).unwrap();
    let mut classes: Vec<Vec<bool>> = (0..=4).map(|n| c.membership_vector(&Word(vec![0; n])).unwrap()).collect();
    classes.dedup();
    assert_eq!(classes.len(), 3);
}

/// Threshold-count monoid: vectors of counts capped at d, added with cap.
fn count_monoid_period(d: u32, letters: usize) -> usize {
    let mut elems: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..letters {
        elems = elems.into_iter().flat_map(|e| (0..=d).map(move |c| { let mut e = e.clone(); e.push(c); e })).collect();
    }
    let pow = |e: &Vec<u32>, p: u32| -> Vec<u32> { e.iter().map(|&c| (c * p).min(d)).collect() };
    (1..).find(|&p| elems.iter().all(|e| pow(e, p) == pow(e, 2 * p))).unwrap() as usize
}

#[test]
fn periods() {
    assert_eq!(ClassMonoid::new(&basis(BasisKind::Dd0, &ab()).unwrap()).unwrap().period(), 1);
    assert_eq!(ClassMonoid::new(&basis(BasisKind::St0, &ab()).unwrap()).unwrap().period(), 1);
    for d in 1..=4 {
        let c = basis(BasisKind::Att(d), &ab()).unwrap();
        let m = ClassMonoid::new(&c).unwrap();
        assert_eq!(m.size(), ((d + 1) * (d + 1)) as usize);
        assert_eq!(m.period(), count_monoid_period(d, 2));
        assert_eq!(m.period(), d as usize);
    }
}

#[test]
fn unmaterialized_class_reports_budget() {
    let c = basis(BasisKind::Att(4), &ab()).unwrap();
    assert!(matches!(c.members(), Err(Error::BudgetExceeded { .. })));
    assert_eq!(c.member_count(), 1 << 25);
    assert!(in_class(&c, &Dfa::at_least(&ab(), 0, 3)).unwrap());
    assert!(!in_class(&c, &Dfa::at_least(&ab(), 0, 5)).unwrap());
}

#[test]
fn monoid_laws_and_preorder() {
    for c in materialized_bases() {
        let m = ClassMonoid::new(c).unwrap();
        let n = m.size() as u32;
        for s in 0..n {
            assert_eq!(m.mult(m.unit(), s), s);
            assert_eq!(m.mult(s, m.unit()), s);
            assert!(m.leq(s, s));
            for t in 0..n {
                for u in 0..n {
                    assert_eq!(m.mult(m.mult(s, t), u), m.mult(s, m.mult(t, u)));
                    if m.leq(s, t) && m.leq(t, u) {
                        assert!(m.leq(s, u));
                    }
                }
                if c.properties().boolean_algebra && m.leq(s, t) {
                    assert!(m.leq(t, s));
                }
            }
        }
        for s in 0..n {
            for s2 in (0..n).filter(|&s2| m.leq(s, s2)) {
                for t in 0..n {
                    for t2 in (0..n).filter(|&t2| m.leq(t, t2)) {
                        assert!(m.leq(m.mult(s, t), m.mult(s2, t2)), "{}", c.name());
                    }
                }
            }
        }
        // Monoid preorder agrees with membership vectors.
        let words = ab().words_up_to(6);
        for x in words.iter().step_by(3) {
            for y in &words {
                let by_monoid = m.leq(m.eval(&x.0), m.eval(&y.0));
                assert_eq!(by_monoid, leq_by_members(c, x, y));
                assert_eq!(by_monoid, c.leq(x, y));
            }
        }
        // Period soundness.
        let p = m.period();
        for u in ab().words_up_to(2) {
            for a in 1..=3 {
                for b in 1..=3 {
                    assert!(c.leq(&u.pow(p * a), &u.pow(p * b)));
                }
            }
        }
    }
}

#[test]
fn witness_examples() {
    let at = basis(BasisKind::At, &ab()).unwrap();
    assert_eq!(non_membership_witness(&at, &re("a*b*")).unwrap(), Some((w("ab"), w("ba"))));
    assert!(!in_class(&at, &re("a*b*")).unwrap());
    for c in materialized_bases() {
        assert!(in_class(c, &Dfa::universal(&ab())).unwrap());
        assert_eq!(non_membership_witness(c, &Dfa::universal(&ab())).unwrap(), None);
        for m in c.members().unwrap() {
            assert_eq!(non_membership_witness(c, &m.dfa).unwrap(), None);
        }
    }
    let (x, y) = non_separability_witness(&at, &re("aa*bb*"), &re("bb*aa*")).unwrap().unwrap();
    assert_eq!((x.clone(), y.clone()), (w("ab"), w("ba")));
    assert!(at.leq(&x, &y) && at.leq(&y, &x));
    let sep = separator(&at, &re("a*")).unwrap();
    assert_eq!(non_separability_witness(&at, &re("a*"), &re("b(a|b)*")).unwrap(), None);
    assert!(in_class(&at, &sep).unwrap());
    assert!(sep.intersect(&re("b(a|b)*")).unwrap().is_empty());
}

#[test]
fn class_json_round_trip() {
    let text = r#"{"name":"mine","alphabet":"ab","languages":[
        {"name":"all","regex":"(a|b)*"},
        {"name":"none","dfa":{"alphabet":"ab","states":1,"transitions":[[0,"a",0],[0,"b",0]],"initial":0,"accepting":[]}}]}"#;
    let c = LanguageClass::from_json(text).unwrap();
    assert_eq!(c.members().unwrap().len(), 2);
    assert!(c.properties().lattice && c.properties().boolean_algebra);
    let back = serde_json::to_string(&c.to_json().unwrap()).unwrap();
    let c2 = LanguageClass::from_json(&back).unwrap();
    assert_eq!(c2.members().unwrap(), c.members().unwrap());
    assert!(LanguageClass::from_json(r#"{"name":"x","alphabet":"ab","languages":[{"name":"l","regex":"c"}]}"#).is_err());
}

#[test]
fn basis_kind_parsing() {
    assert_eq!("att:3".parse::<BasisKind>().unwrap(), BasisKind::Att(3));
    assert_eq!("att(2)".parse::<BasisKind>().unwrap(), BasisKind::Att(2));
    assert!("att:0".parse::<BasisKind>().is_err());
    assert!(matches!("xyz".parse::<BasisKind>(), Err(Error::UnknownBasis(_))));
}

fn regex_strategy() -> impl Strategy<Value = Regex> {
    let leaf = prop_oneof![Just(Regex::Epsilon), Just(Regex::Letter(0)), Just(Regex::Letter(1)), Just(Regex::Any)];
    leaf.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Regex::Union(Box::new(x), Box::new(y))),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Regex::Concat(Box::new(x), Box::new(y))),
            inner.prop_map(|x| Regex::Star(Box::new(x))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The upper-set criterion agrees with the member scan, and every
    /// witness re-validates and is no longer than any brute-force pair.
    #[test]
    fn witnesses_revalidate(r in regex_strategy(), s in regex_strategy()) {
        for c in materialized_bases() {
            let l = r.to_dfa(&ab());
            let wit = non_membership_witness(c, &l).unwrap();
            prop_assert_eq!(wit.is_none(), c.index_of(&l).is_some());
            if let Some((x, y)) = wit {
                prop_assert!(l.accepts(&x) && !l.accepts(&y) && leq_by_members(c, &x, &y));
                let words = ab().words_up_to((x.len() + y.len()).min(7));
                for u in words.iter().filter(|u| l.accepts(u)) {
                    for v in words.iter().filter(|v| u.len() + v.len() < x.len() + y.len() && !l.accepts(v)) {
                        prop_assert!(!c.leq(u, v));
                    }
                }
            }
            let l2 = s.to_dfa(&ab());
            match non_separability_witness(c, &l, &l2).unwrap() {
                Some((x, y)) => prop_assert!(l.accepts(&x) && l2.accepts(&y) && leq_by_members(c, &x, &y)),
                None => {
                    let sep = separator(c, &l).unwrap();
                    prop_assert!(c.index_of(&sep).is_some());
                    prop_assert!(l.is_subset(&sep).unwrap());
                    prop_assert!(sep.intersect(&l2).unwrap().is_empty());
                }
            }
        }
    }
}
