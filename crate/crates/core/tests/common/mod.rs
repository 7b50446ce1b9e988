//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use firedss::rdf::{Binding, PatternTerm};
use firedss::rules::{Arg, RuleAtom, RuleSet};
use firedss::sparql::Query;
use firedss::{vocab, Graph, Term, Triple};

/// Every assignment of `vars` to terms drawn from `domain`.
pub fn assignments(vars: &[String], domain: &[Term]) -> Vec<Binding> {
    let mut out = vec![Binding::new()];
    for v in vars {
        out = out
            .into_iter()
            .flat_map(|b| {
                domain.iter().map(move |t| {
                    let mut b = b.clone();
                    b.insert(v.clone(), t.clone());
                    b
                })
            })
            .collect();
    }
    out
}

fn ground(p: &PatternTerm, b: &Binding) -> Term {
    match p {
        PatternTerm::Term(t) => t.clone(),
        PatternTerm::Var(v) => b[v].clone(),
    }
}

fn holds(g: &Graph, s: Term, p: Term, o: Term) -> bool {
    Triple::new(s, p, o).is_ok_and(|t| g.contains(&t))
}

/// Enumerates all variable assignments over the graph's terms, keeps those
/// satisfying every pattern and filter, and projects.
pub fn naive_sparql(q: &Query, g: &Graph) -> Vec<Vec<Term>> {
    let domain: Vec<Term> = g.terms().into_iter().cloned().collect();
    let vars: Vec<String> = q
        .patterns
        .iter()
        .flat_map(|p| p.variables().map(str::to_string))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut rows: Vec<Vec<Term>> = assignments(&vars, &domain)
        .into_iter()
        .filter(|b| {
            q.patterns.iter().all(|p| {
                holds(
                    g,
                    ground(&p.subject, b),
                    ground(&p.predicate, b),
                    ground(&p.object, b),
                )
            })
        })
        .filter(|b| {
            q.filters.iter().all(|f| {
                let Some(v) = b.get(&f.variable) else { return false };
                filter_oracle(v, f.comparator.symbol(), &f.operand)
            })
        })
        .map(|b| q.select_vars.iter().map(|v| b[v].clone()).collect())
        .collect();
    rows.sort();
    rows
}

/// Filter semantics written out directly: numbers compare as f64, strings
/// compare as strings, anything else fails.
pub fn filter_oracle(v: &Term, op: &str, operand: &Term) -> bool {
    use std::cmp::Ordering;
    let ord: Option<Ordering> = match (v.as_number(), operand.as_number()) {
        (Some(a), Some(b)) => a.partial_cmp(&b),
        _ => match (v.as_str_literal(), operand.as_str_literal()) {
            (Some(a), Some(b)) => Some(a.cmp(b)),
            _ => None,
        },
    };
    match (ord, op) {
        (Some(o), ">") => o.is_gt(),
        (Some(o), "<") => o.is_lt(),
        (Some(o), ">=") => o.is_ge(),
        (Some(o), "<=") => o.is_le(),
        (Some(o), "=") => o.is_eq(),
        (Some(o), "!=") => o.is_ne(),
        _ => false,
    }
}

fn rule_vars(atoms: &[RuleAtom]) -> Vec<String> {
    let mut vars = BTreeSet::new();
    for a in atoms {
        match a {
            RuleAtom::Class { var, .. } => {
                vars.insert(var.clone());
            }
            RuleAtom::DataProperty { subject, object, .. } => {
                vars.insert(subject.clone());
                if let Arg::Var(v) = object {
                    vars.insert(v.clone());
                }
            }
            RuleAtom::GreaterThan { var, .. } => {
                vars.insert(var.clone());
            }
        }
    }
    vars.into_iter().collect()
}

fn atom_holds(a: &RuleAtom, b: &Binding, g: &Graph) -> bool {
    match a {
        RuleAtom::Class { class, var } => holds(g, b[var].clone(), vocab::rdf_type(), vocab::term(class)),
        RuleAtom::DataProperty {
            property,
            subject,
            object,
        } => {
            let o = match object {
                Arg::Var(v) => b[v].clone(),
                other => other.to_term().expect("constant"),
            };
            holds(g, b[subject].clone(), vocab::term(property), o)
        }
        RuleAtom::GreaterThan { var, threshold } => b[var].as_number().is_some_and(|x| x > *threshold),
    }
}

fn atom_vars(a: &RuleAtom) -> Vec<&str> {
    match a {
        RuleAtom::Class { var, .. } | RuleAtom::GreaterThan { var, .. } => vec![var],
        RuleAtom::DataProperty { subject, object, .. } => match object {
            Arg::Var(v) => vec![subject, v],
            _ => vec![subject],
        },
    }
}

/// Assignments over `domain` satisfying every atom. Exhaustive backtracking:
/// an atom is checked as soon as all of its variables are bound.
fn satisfying(atoms: &[RuleAtom], domain: &[Term], g: &Graph) -> Vec<Binding> {
    fn go(
        vars: &[String],
        atoms: &[RuleAtom],
        domain: &[Term],
        g: &Graph,
        b: &mut Binding,
        out: &mut Vec<Binding>,
    ) {
        let Some((v, rest)) = vars.split_first() else {
            out.push(b.clone());
            return;
        };
        for t in domain {
            b.insert(v.clone(), t.clone());
            let ok = atoms
                .iter()
                .filter(|a| {
                    let av = atom_vars(a);
                    av.contains(&v.as_str()) && av.iter().all(|x| b.contains_key(*x))
                })
                .all(|a| atom_holds(a, b, g));
            if ok {
                go(rest, atoms, domain, g, b, out);
            }
            b.remove(v);
        }
    }
    let mut out = Vec::new();
    go(&rule_vars(atoms), atoms, domain, g, &mut Binding::new(), &mut out);
    out
}

/// Applies every rule under every satisfying assignment until nothing changes.
pub fn naive_fixpoint(g: &Graph, rules: &RuleSet) -> Graph {
    let mut cur = g.clone();
    loop {
        let domain: Vec<Term> = cur.terms().into_iter().cloned().collect();
        let mut added = Vec::new();
        for r in rules.iter() {
            for b in satisfying(r.body(), &domain, &cur) {
                let h = r.head();
                if let Ok(t) = Triple::new(
                    b[&h.subject].clone(),
                    vocab::term(&h.property),
                    h.object.to_term().expect("constant head"),
                ) {
                    if !cur.contains(&t) {
                        added.push(t);
                    }
                }
            }
        }
        if added.is_empty() {
            return cur;
        }
        cur.extend(added);
    }
}

/// Dataset used by the dataset-level tests: `$MONTESINHO_CSV`, else
/// `data/forestfires.csv`, else the bundled synthetic fixture.
pub fn dataset_path() -> PathBuf {
    if let Ok(p) = std::env::var("MONTESINHO_CSV") {
        return PathBuf::from(p);
    }
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data");
    let real = data.join("forestfires.csv");
    if real.exists() {
        real
    } else {
        data.join("montesinho_synthetic.csv")
    }
}

/// Raw CSV records (header excluded) keyed by column name.
pub fn raw_rows(path: &std::path::Path) -> Vec<BTreeMap<String, String>> {
    let mut rdr = csv::Reader::from_path(path).expect("dataset readable");
    let header: Vec<String> = rdr.headers().unwrap().iter().map(str::to_string).collect();
    rdr.records()
        .map(|r| {
            let r = r.unwrap();
            header.iter().cloned().zip(r.iter().map(|s| s.trim().to_string())).collect()
        })
        .collect()
}
