//! Semi-naive forward chaining of rule sets over a graph.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::rdf::{Binding, Graph, PatternTerm, Term, Triple, TriplePattern};
use crate::vocab;

use super::{Rule, RuleAtom, RuleSet};

/// A rule body compiled to triple patterns plus numeric filters.
#[derive(Debug, Clone)]
struct CompiledRule {
    patterns: Vec<TriplePattern>,
    filters: Vec<(String, f64)>,
    head_property: Term,
    head_subject: String,
    head_object: Term,
}

fn compile(rule: &Rule) -> CompiledRule {
    let mut patterns = Vec::new();
    let mut filters = Vec::new();
    for atom in rule.body() {
        match atom {
            RuleAtom::Class { class, var } => patterns.push(TriplePattern::new(
                PatternTerm::var(var.clone()),
                vocab::rdf_type(),
                vocab::term(class),
            )),
            RuleAtom::DataProperty {
                property,
                subject,
                object,
            } => {
                let object = match object.as_var() {
                    Some(v) => PatternTerm::var(v),
                    None => PatternTerm::Term(object.to_term().expect("constant argument")),
                };
                patterns.push(TriplePattern::new(
                    PatternTerm::var(subject.clone()),
                    vocab::term(property),
                    object,
                ));
            }
            RuleAtom::GreaterThan { var, threshold } => filters.push((var.clone(), *threshold)),
        }
    }
    let head = rule.head();
    CompiledRule {
        patterns,
        filters,
        head_property: vocab::term(&head.property),
        head_subject: head.subject.clone(),
        head_object: head.object.to_term().expect("head object is a constant"),
    }
}

/// `greaterThan` holds only for numeric literals strictly above the threshold.
pub fn greater_than(t: &Term, threshold: f64) -> bool {
    t.as_number().is_some_and(|v| v > threshold)
}

impl CompiledRule {
    fn passes(&self, b: &Binding) -> bool {
        self.filters
            .iter()
            .all(|(v, t)| b.get(v).is_some_and(|term| greater_than(term, *t)))
    }

    fn head(&self, b: &Binding) -> Option<Triple> {
        let subject = b.get(&self.head_subject)?.clone();
        Triple::new(subject, self.head_property.clone(), self.head_object.clone()).ok()
    }

    /// Body matches with pattern `seed` evaluated against `delta` and all
    /// other patterns against `full`. Without a seed, everything uses `full`.
    fn matches(&self, full: &Graph, seed: Option<(usize, &Graph)>) -> Vec<Binding> {
        let mut order: Vec<usize> = (0..self.patterns.len()).collect();
        let mut partial = vec![Binding::new()];
        if let Some((i, delta)) = seed {
            order.retain(|&j| j != i);
            partial = delta.match_pattern(&self.patterns[i]);
        }
        for j in order {
            let mut next = Vec::new();
            for b in &partial {
                next.extend(full.match_with(&self.patterns[j], b));
            }
            partial = next;
            if partial.is_empty() {
                break;
            }
        }
        partial.retain(|b| self.passes(b));
        partial
    }
}

/// A derived triple with the rule and bindings that produced it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InferredFact {
    #[serde(serialize_with = "ser_triple")]
    pub triple: Triple,
    /// Index of the rule in its rule set.
    pub rule: usize,
    #[serde(serialize_with = "ser_binding")]
    pub bindings: Binding,
}

fn ser_triple<S: serde::Serializer>(t: &Triple, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(t.terms().iter().map(|t| t.lexical()))
}

fn ser_binding<S: serde::Serializer>(b: &Binding, s: S) -> Result<S::Ok, S::Error> {
    s.collect_map(b.iter().map(|(k, v)| (k, v.lexical())))
}

impl InferredFact {
    pub fn subject(&self) -> &Term {
        self.triple.subject()
    }

    pub fn property(&self) -> &Term {
        self.triple.predicate()
    }

    pub fn label(&self) -> &Term {
        self.triple.object()
    }

    /// Re-checks the provenance: every body atom holds in `g` under the
    /// recorded bindings and the head instantiates to this fact.
    pub fn verify(&self, rules: &RuleSet, g: &Graph) -> bool {
        let Some(rule) = rules.rules.get(self.rule) else {
            return false;
        };
        let c = compile(rule);
        let body_ok = c.patterns.iter().all(|p| {
            let bound = p.bind(&self.bindings);
            match bound.positions().map(|pt| match pt {
                PatternTerm::Term(t) => Some(t.clone()),
                PatternTerm::Var(_) => None,
            }) {
                [Some(s), Some(p), Some(o)] => Triple::new(s, p, o).is_ok_and(|t| g.contains(&t)),
                _ => false,
            }
        });
        body_ok && c.passes(&self.bindings) && c.head(&self.bindings).as_ref() == Some(&self.triple)
    }
}

/// Applies `rules` to `g` until nothing new is derived. Returns the derived
/// triples that were not already in `g`, in triple order, each with the
/// first derivation found.
pub fn forward_chain(g: &Graph, rules: &RuleSet) -> Vec<InferredFact> {
    let compiled: Vec<CompiledRule> = rules.iter().map(compile).collect();
    let mut working = g.clone();
    let mut derived: BTreeMap<Triple, InferredFact> = BTreeMap::new();
    let mut delta: Option<Graph> = None;
    let mut round = 0;

    loop {
        let mut fresh: BTreeMap<Triple, InferredFact> = BTreeMap::new();
        for (ri, rule) in compiled.iter().enumerate() {
            let bindings = match &delta {
                None => rule.matches(&working, None),
                Some(d) => (0..rule.patterns.len())
                    .flat_map(|i| rule.matches(&working, Some((i, d))))
                    .collect(),
            };
            for b in bindings {
                let Some(t) = rule.head(&b) else { continue };
                if working.contains(&t) || fresh.contains_key(&t) {
                    continue;
                }
                fresh.insert(
                    t.clone(),
                    InferredFact {
                        triple: t,
                        rule: ri,
                        bindings: b,
                    },
                );
            }
        }
        round += 1;
        log::debug!("forward chaining round {round}: {} new facts", fresh.len());
        if fresh.is_empty() {
            break;
        }
        let mut next = Graph::new();
        for (t, fact) in fresh {
            working.insert(t.clone());
            next.insert(t.clone());
            derived.insert(t, fact);
        }
        delta = Some(next);
    }
    derived.into_values().collect()
}

/// Inserts inferred facts into `g`, returning the new size.
pub fn commit(g: &mut Graph, facts: &[InferredFact]) -> usize {
    for f in facts {
        g.insert(f.triple.clone());
    }
    g.len()
}
