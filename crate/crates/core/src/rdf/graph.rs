use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{Term, Triple};

/// One position of a triple pattern.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PatternTerm {
    Var(String),
    Term(Term),
}

impl PatternTerm {
    pub fn var(name: impl Into<String>) -> Self {
        PatternTerm::Var(name.into())
    }

    pub fn as_var(&self) -> Option<&str> {
        match self {
            PatternTerm::Var(v) => Some(v),
            PatternTerm::Term(_) => None,
        }
    }
}

impl From<Term> for PatternTerm {
    fn from(t: Term) -> Self {
        PatternTerm::Term(t)
    }
}

impl fmt::Display for PatternTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternTerm::Var(v) => write!(f, "?{v}"),
            PatternTerm::Term(t) => write!(f, "{t}"),
        }
    }
}

/// Variable name (without the `?`) to bound term.
pub type Binding = BTreeMap<String, Term>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriplePattern {
    pub subject: PatternTerm,
    pub predicate: PatternTerm,
    pub object: PatternTerm,
}

impl TriplePattern {
    pub fn new(
        subject: impl Into<PatternTerm>,
        predicate: impl Into<PatternTerm>,
        object: impl Into<PatternTerm>,
    ) -> Self {
        TriplePattern {
            subject: subject.into(),
            predicate: predicate.into(),
            object: object.into(),
        }
    }

    pub fn positions(&self) -> [&PatternTerm; 3] {
        [&self.subject, &self.predicate, &self.object]
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.positions().into_iter().filter_map(PatternTerm::as_var)
    }

    /// Substitutes variables already bound in `binding`.
    pub fn bind(&self, binding: &Binding) -> TriplePattern {
        let sub = |p: &PatternTerm| match p {
            PatternTerm::Var(v) => match binding.get(v) {
                Some(t) => PatternTerm::Term(t.clone()),
                None => p.clone(),
            },
            PatternTerm::Term(_) => p.clone(),
        };
        TriplePattern {
            subject: sub(&self.subject),
            predicate: sub(&self.predicate),
            object: sub(&self.object),
        }
    }

    /// Unifies the pattern with a triple, extending a copy of `base`.
    pub fn unify(&self, triple: &Triple, base: &Binding) -> Option<Binding> {
        let mut out = base.clone();
        for (pat, term) in self.positions().into_iter().zip(triple.terms()) {
            match pat {
                PatternTerm::Term(t) => {
                    if t != term {
                        return None;
                    }
                }
                PatternTerm::Var(v) => match out.get(v) {
                    Some(bound) if bound != term => return None,
                    Some(_) => {}
                    None => {
                        out.insert(v.clone(), term.clone());
                    }
                },
            }
        }
        Some(out)
    }
}

impl fmt::Display for TriplePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.subject, self.predicate, self.object)
    }
}

type Index = BTreeMap<Term, BTreeSet<Triple>>;

/// In-memory triple set with subject, predicate and object indexes.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    triples: BTreeSet<Triple>,
    by_subject: Index,
    by_predicate: Index,
    by_object: Index,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.triples == other.triples
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.triples.contains(t)
    }

    /// Inserts a triple and returns the graph size afterwards.
    pub fn insert(&mut self, t: Triple) -> usize {
        if !self.triples.contains(&t) {
            index_add(&mut self.by_subject, t.subject().clone(), &t);
            index_add(&mut self.by_predicate, t.predicate().clone(), &t);
            index_add(&mut self.by_object, t.object().clone(), &t);
            self.triples.insert(t);
        }
        self.triples.len()
    }

    /// Removes a triple; returns whether it was present.
    pub fn remove(&mut self, t: &Triple) -> bool {
        if !self.triples.remove(t) {
            return false;
        }
        index_remove(&mut self.by_subject, t.subject(), t);
        index_remove(&mut self.by_predicate, t.predicate(), t);
        index_remove(&mut self.by_object, t.object(), t);
        true
    }

    /// Triples in canonical (subject, predicate, object) order.
    pub fn iter(&self) -> impl Iterator<Item = &Triple> {
        self.triples.iter()
    }

    /// Distinct terms occurring anywhere in the graph.
    pub fn terms(&self) -> BTreeSet<&Term> {
        self.triples.iter().flat_map(|t| t.terms()).collect()
    }

    /// Triples compatible with the constant positions of `p`, using the
    /// smallest applicable index. Variables are not checked here.
    pub fn candidates<'a>(&'a self, p: &TriplePattern) -> Box<dyn Iterator<Item = &'a Triple> + 'a> {
        let lookups = [
            (&p.subject, &self.by_subject),
            (&p.predicate, &self.by_predicate),
            (&p.object, &self.by_object),
        ];
        let mut best: Option<&BTreeSet<Triple>> = None;
        for (pos, index) in lookups {
            if let PatternTerm::Term(t) = pos {
                match index.get(t) {
                    None => return Box::new(std::iter::empty()),
                    Some(set) => {
                        if best.map_or(true, |b| set.len() < b.len()) {
                            best = Some(set);
                        }
                    }
                }
            }
        }
        match best {
            Some(set) => Box::new(set.iter()),
            None => Box::new(self.triples.iter()),
        }
    }

    /// Upper bound on the number of matches for `p`.
    pub fn estimate(&self, p: &TriplePattern) -> usize {
        let mut n = self.triples.len();
        let lookups = [
            (&p.subject, &self.by_subject),
            (&p.predicate, &self.by_predicate),
            (&p.object, &self.by_object),
        ];
        for (pos, index) in lookups {
            if let PatternTerm::Term(t) = pos {
                n = n.min(index.get(t).map_or(0, BTreeSet::len));
            }
        }
        n
    }

    /// All bindings of the pattern's variables such that the instantiated
    /// pattern is in the graph, in canonical triple order.
    pub fn match_pattern(&self, p: &TriplePattern) -> Vec<Binding> {
        self.match_with(p, &Binding::new())
    }

    /// Like [`Graph::match_pattern`] but extending an existing binding.
    pub fn match_with(&self, p: &TriplePattern, base: &Binding) -> Vec<Binding> {
        let bound = p.bind(base);
        self.candidates(&bound)
            .filter_map(|t| bound.unify(t, base))
            .collect()
    }

    /// Checks that the three indexes and the master set agree.
    pub fn is_coherent(&self) -> bool {
        let check = |index: &Index, key: fn(&Triple) -> &Term| {
            let mut count = 0;
            for (k, set) in index {
                if set.is_empty() {
                    return false;
                }
                for t in set {
                    if key(t) != k || !self.triples.contains(t) {
                        return false;
                    }
                    count += 1;
                }
            }
            count == self.triples.len()
        };
        check(&self.by_subject, Triple::subject)
            && check(&self.by_predicate, Triple::predicate)
            && check(&self.by_object, Triple::object)
            && self.triples.iter().all(|t| {
                self.by_subject.get(t.subject()).is_some_and(|s| s.contains(t))
                    && self.by_predicate.get(t.predicate()).is_some_and(|s| s.contains(t))
                    && self.by_object.get(t.object()).is_some_and(|s| s.contains(t))
            })
    }
}

impl Extend<Triple> for Graph {
    fn extend<I: IntoIterator<Item = Triple>>(&mut self, iter: I) {
        for t in iter {
            self.insert(t);
        }
    }
}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        let mut g = Graph::new();
        g.extend(iter);
        g
    }
}

fn index_add(index: &mut Index, key: Term, t: &Triple) {
    index.entry(key).or_default().insert(t.clone());
}

fn index_remove(index: &mut Index, key: &Term, t: &Triple) {
    if let Some(set) = index.get_mut(key) {
        set.remove(t);
        if set.is_empty() {
            index.remove(key);
        }
    }
}
