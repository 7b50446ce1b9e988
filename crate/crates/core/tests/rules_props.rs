mod common;

use firedss::dss::indicator_facts;
use firedss::fwi::{FwiRecord, WeatherInputs};
use firedss::rules::{commit, forward_chain, fwi_rules, parse_rules, Indicator, RuleAtom, RuleSet};
use firedss::{vocab, Graph, Term, Triple};
use proptest::prelude::*;

fn body_properties(rules: &RuleSet) -> Vec<String> {
    let mut out: Vec<String> = rules
        .iter()
        .flat_map(|r| r.body().iter())
        .filter_map(|a| match a {
            RuleAtom::DataProperty { property, .. } => Some(property.clone()),
            _ => None,
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

fn sensor(i: u8) -> Term {
    Term::iri(format!("urn:ssn:sensor:{i}")).unwrap()
}

fn value() -> impl Strategy<Value = Term> {
    prop_oneof![
        4 => (0i64..120).prop_map(Term::integer),
        4 => (0u32..2000).prop_map(|n| Term::decimal(f64::from(n) / 16.0)),
        1 => "[0-9]{1,2}".prop_map(Term::string),
        1 => Just(vocab::term("easy")),
    ]
}

fn fwi_store() -> impl Strategy<Value = Graph> {
    let props = body_properties(&fwi_rules());
    let typed = (0u8..4).prop_map(|s| Triple::new(sensor(s), vocab::rdf_type(), vocab::sensor_class()).unwrap());
    let fact = (0u8..4, prop::sample::select(props), value())
        .prop_map(|(s, p, v)| Triple::new(sensor(s), vocab::term(&p), v).unwrap());
    let head = (0u8..4, prop::sample::select(Indicator::ALL.to_vec()), prop::sample::select(vec!["low", "easy", "FireStop"]))
        .prop_map(|(s, i, l)| Triple::new(sensor(s), vocab::term(i.head_property()), vocab::term(l)).unwrap());
    prop::collection::vec(prop_oneof![3 => typed, 6 => fact, 1 => head], 0..=30).prop_map(|v| v.into_iter().collect())
}

fn closure(g: &Graph, rules: &RuleSet) -> Graph {
    let mut out = g.clone();
    commit(&mut out, &forward_chain(g, rules));
    out
}

const RECURSIVE: &str = "\
a(?x) -> p(?x, one)
p(?x, one) ^ link(?x, ?y) -> p(?y, one)
p(?x, one) ^ w(?x, ?v) ^ greaterThan(?v, 2) -> hot(?x, yes)
hot(?x, yes) ^ link(?y, ?x) -> near(?y, yes)
";

fn recursive_store() -> impl Strategy<Value = Graph> {
    let node = |i: u8| Term::iri(format!("urn:n:{i}")).unwrap();
    prop::collection::vec(
        prop_oneof![
            (0u8..5).prop_map(move |i| Triple::new(node(i), vocab::rdf_type(), vocab::term("a")).unwrap()),
            (0u8..5, 0u8..5).prop_map(move |(i, j)| Triple::new(node(i), vocab::term("link"), node(j)).unwrap()),
            (0u8..5, 0i64..5).prop_map(move |(i, v)| Triple::new(node(i), vocab::term("w"), Term::integer(v)).unwrap()),
        ],
        0..=20,
    )
    .prop_map(|v| v.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn fixpoint_matches_naive(g in fwi_store()) {
        let rules = fwi_rules();
        let facts = forward_chain(&g, &rules);
        let fin = closure(&g, &rules);
        prop_assert_eq!(&fin, &common::naive_fixpoint(&g, &rules));
        for f in &facts {
            prop_assert!(!g.contains(&f.triple));
            prop_assert!(f.verify(&rules, &fin));
        }
        // A second pass derives nothing.
        prop_assert!(forward_chain(&fin, &rules).is_empty());
    }

    #[test]
    fn recursive_fixpoint_matches_naive(g in recursive_store()) {
        let rules = parse_rules(RECURSIVE).unwrap();
        let fin = closure(&g, &rules);
        prop_assert_eq!(&fin, &common::naive_fixpoint(&g, &rules));
        for f in forward_chain(&g, &rules) {
            prop_assert!(f.verify(&rules, &fin));
        }
    }

    #[test]
    fn inference_is_monotone(g1 in fwi_store(), extra in fwi_store()) {
        let rules = fwi_rules();
        let mut g2 = g1.clone();
        g2.extend(extra.iter().cloned());
        let (c1, c2) = (closure(&g1, &rules), closure(&g2, &rules));
        prop_assert!(c1.iter().all(|t| c2.contains(t)));
    }

    #[test]
    fn band_is_highest_rule_fired(
        ffmc in 0.0..=101.0f64, dmc in 0.0..100.0f64, bui in 0.0..100.0f64,
        isi in 0.0..40.0f64, fwi in 0.0..60.0f64,
    ) {
        let rules = fwi_rules();
        let rec = FwiRecord { ffmc, dmc, dc: 0.0, isi, bui, fwi };
        let w = WeatherInputs { temp: 20.0, rh: 30.0, wind: 0.0, rain_24h: 0.0 };
        let s = sensor(1);
        let g: Graph = indicator_facts(&s, &rec, &w, &rules).into_iter().collect();
        let facts = forward_chain(&g, &rules);
        let values = [
            (Indicator::Ffmc, ffmc),
            (Indicator::Dmc, dmc),
            (Indicator::Bui, bui),
            (Indicator::Isi, isi),
            (Indicator::Fwi, fwi),
        ];
        for (ind, v) in values {
            let table = ind.bands().unwrap();
            let fired: Vec<&str> = facts
                .iter()
                .filter(|f| f.property() == &vocab::term(ind.head_property()))
                .filter_map(|f| vocab::local_name(f.label()))
                .collect();
            let band = table.classify(v).unwrap();
            match fired.iter().filter_map(|l| table.by_label(l)).max() {
                Some(top) => prop_assert_eq!(top, band),
                // nothing fired: at or below the lowest threshold
                None => prop_assert!(v <= table.bands[0].0 && band.rank == 0),
            }
        }
    }

    #[test]
    fn classification_is_total_and_counts_thresholds(v in 0.0..500.0f64) {
        for ind in Indicator::ALL {
            let Some(table) = ind.bands() else { continue };
            if v > table.max {
                prop_assert!(table.classify(v).is_err());
                continue;
            }
            let exceeded = table.bands.iter().filter(|(t, _)| v > *t).count();
            prop_assert_eq!(table.classify(v).unwrap().rank, exceeded.saturating_sub(1));
        }
    }
}
