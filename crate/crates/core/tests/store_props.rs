use std::collections::BTreeSet;

use firedss::rdf::{ntriples, PatternTerm};
use firedss::{Graph, Term, Triple, TriplePattern};
use proptest::prelude::*;

fn iri(i: u8) -> Term {
    Term::iri(format!("urn:t:{i}")).unwrap()
}

fn object() -> impl Strategy<Value = Term> {
    prop_oneof![
        (0u8..6).prop_map(iri),
        (-3i64..4).prop_map(Term::integer),
        (0u8..8).prop_map(|n| Term::decimal(f64::from(n) / 4.0)),
        "[a-c]{0,2}".prop_map(Term::string),
    ]
}

fn triple() -> impl Strategy<Value = Triple> {
    (0u8..6, 0u8..3, object()).prop_map(|(s, p, o)| Triple::new(iri(s), iri(10 + p), o).unwrap())
}

fn position(term: impl Strategy<Value = Term>, var: &'static str) -> impl Strategy<Value = PatternTerm> {
    prop_oneof![Just(PatternTerm::var(var)), term.prop_map(PatternTerm::Term)]
}

fn pattern() -> impl Strategy<Value = TriplePattern> {
    (
        position((0u8..6).prop_map(iri), "s"),
        position((10u8..13).prop_map(iri), "p"),
        prop_oneof![Just(PatternTerm::var("s")), position(object(), "o")],
    )
        .prop_map(|(s, p, o)| TriplePattern::new(s, p, o))
}

#[derive(Debug, Clone)]
enum Op {
    Insert(Triple),
    Remove(Triple),
}

fn op() -> impl Strategy<Value = Op> {
    prop_oneof![2 => triple().prop_map(Op::Insert), 1 => triple().prop_map(Op::Remove)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn match_equals_naive_filter(triples in prop::collection::vec(triple(), 0..40), p in pattern()) {
        let g: Graph = triples.iter().cloned().collect();
        let mut got = g.match_pattern(&p);
        got.sort();
        let mut want: Vec<_> = g
            .iter()
            .filter_map(|t| p.unify(t, &Default::default()))
            .collect();
        want.sort();
        prop_assert_eq!(got, want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn indexes_stay_coherent(ops in prop::collection::vec(op(), 1000)) {
        let mut g = Graph::new();
        let mut model = BTreeSet::new();
        for o in ops {
            match o {
                Op::Insert(t) => {
                    let n = g.insert(t.clone());
                    model.insert(t);
                    prop_assert_eq!(n, model.len());
                }
                Op::Remove(t) => {
                    prop_assert_eq!(g.remove(&t), model.remove(&t));
                }
            }
        }
        prop_assert!(g.is_coherent());
        prop_assert_eq!(g.len(), model.len());
        prop_assert!(g.iter().eq(model.iter()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn insert_then_remove_restores_size(triples in prop::collection::vec(triple(), 0..30), t in triple()) {
        let mut g: Graph = triples.into_iter().collect();
        let before = g.len();
        let had = g.contains(&t);
        g.insert(t.clone());
        prop_assert_eq!(g.len(), before + usize::from(!had));
        g.insert(t.clone());
        prop_assert_eq!(g.len(), before + usize::from(!had));
        prop_assert!(g.remove(&t));
        prop_assert_eq!(g.len(), before - usize::from(had));
    }

    #[test]
    fn ntriples_round_trip(triples in prop::collection::vec(triple(), 0..30)) {
        let g: Graph = triples.into_iter().collect();
        let text = ntriples::export(&g);
        let back = ntriples::import(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(ntriples::export(&back), text);
    }
}

#[test]
fn removal_from_empty_store() {
    let mut g = Graph::new();
    assert!(!g.remove(&Triple::new(iri(1), iri(2), iri(3)).unwrap()));
    assert!(g.is_empty());
}

#[test]
fn all_variable_pattern_returns_everything() {
    let g: Graph = (0..5).map(|i| Triple::new(iri(i), iri(10), Term::integer(i64::from(i))).unwrap()).collect();
    let p = TriplePattern::new(PatternTerm::var("a"), PatternTerm::var("b"), PatternTerm::var("c"));
    assert_eq!(g.match_pattern(&p).len(), 5);
}
