use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::rdf::{Binding, Graph, Term, TriplePattern};

use super::{FilterExpr, Query};

/// Projected solutions. Duplicates are kept; rows are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResultTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Term>>,
}

impl ResultTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Column values as displayed: IRIs and literal lexical forms.
    pub fn display_rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|t| t.lexical().to_string()).collect())
            .collect()
    }

    /// Left-aligned text table with a dashed rule under the header.
    pub fn render_table(&self) -> String {
        let rows = self.display_rows();
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for r in &rows {
            for (w, v) in widths.iter_mut().zip(r) {
                *w = (*w).max(v.chars().count());
            }
        }
        let mut out = String::new();
        let line = |cells: &[String], out: &mut String| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            let _ = writeln!(out, "{}", padded.join("  ").trim_end());
        };
        line(&self.header, &mut out);
        line(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>(), &mut out);
        for r in &rows {
            line(r, &mut out);
        }
        out
    }

    pub fn render_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in self.display_rows() {
            w.write_record(&r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }
}

/// Whether a binding passes a filter. Unbound or incomparable values fail.
pub(super) fn passes(f: &FilterExpr, b: &Binding) -> bool {
    b.get(&f.variable).and_then(|v| f.test(v)).unwrap_or(false)
}

/// Greedy join order: cheapest pattern first, then preferring patterns
/// connected to what is already bound.
fn join_order(q: &Query, g: &Graph) -> Vec<usize> {
    let mut remaining: Vec<usize> = (0..q.patterns.len()).collect();
    let mut bound: BTreeSet<&str> = BTreeSet::new();
    let mut order = Vec::new();
    while !remaining.is_empty() {
        let key = |&i: &usize| {
            let p: &TriplePattern = &q.patterns[i];
            let connected = bound.is_empty() || p.variables().any(|v| bound.contains(v)) || p.variables().next().is_none();
            (!connected, g.estimate(p), i)
        };
        let at = (0..remaining.len()).min_by_key(|&k| key(&remaining[k])).expect("non-empty");
        let i = remaining.remove(at);
        bound.extend(q.patterns[i].variables());
        order.push(i);
    }
    order
}

pub fn evaluate(q: &Query, g: &Graph) -> ResultTable {
    let mut partial = vec![Binding::new()];
    for i in join_order(q, g) {
        let p = &q.patterns[i];
        partial = partial.iter().flat_map(|b| g.match_with(p, b)).collect();
        // Apply filters as soon as their variable is bound.
        partial.retain(|b| {
            q.filters
                .iter()
                .filter(|f| b.contains_key(&f.variable))
                .all(|f| passes(f, b))
        });
        if partial.is_empty() {
            break;
        }
    }
    partial.retain(|b| q.filters.iter().all(|f| passes(f, b)));

    let mut rows: Vec<Vec<Term>> = partial
        .into_iter()
        .map(|b| q.select_vars.iter().map(|v| b[v].clone()).collect())
        .collect();
    rows.sort();
    ResultTable {
        header: q.select_vars.clone(),
        rows,
    }
}
