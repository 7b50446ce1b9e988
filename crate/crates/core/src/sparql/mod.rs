//! A SPARQL subset: `PREFIX` declarations, `SELECT` over a basic graph
//! pattern, and `FILTER (?var op literal)` comparisons.
//!
//! Filters compare numerically when the operand is a number and
//! lexicographically when it is a string. A bound value of the wrong kind
//! drops the row instead of raising an error.

mod eval;
mod parser;

use std::collections::BTreeMap;
use std::fmt;

use crate::rdf::{Term, TriplePattern};

pub use eval::{evaluate, ResultTable};
pub use parser::parse_query;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SparqlError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: unknown prefix `{prefix}:`")]
    UnknownPrefix {
        prefix: String,
        line: usize,
        column: usize,
    },
    #[error("selected variable ?{0} does not occur in any triple pattern")]
    UnboundVariable(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparator {
    Gt,
    Lt,
    Ge,
    Le,
    Eq,
    Ne,
}

impl Comparator {
    pub const ALL: [Comparator; 6] = [
        Comparator::Gt,
        Comparator::Lt,
        Comparator::Ge,
        Comparator::Le,
        Comparator::Eq,
        Comparator::Ne,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Comparator::Gt => ">",
            Comparator::Lt => "<",
            Comparator::Ge => ">=",
            Comparator::Le => "<=",
            Comparator::Eq => "=",
            Comparator::Ne => "!=",
        }
    }

    pub fn holds(self, ord: std::cmp::Ordering) -> bool {
        use std::cmp::Ordering::*;
        match self {
            Comparator::Gt => ord == Greater,
            Comparator::Lt => ord == Less,
            Comparator::Ge => ord != Less,
            Comparator::Le => ord != Greater,
            Comparator::Eq => ord == Equal,
            Comparator::Ne => ord != Equal,
        }
    }
}

impl fmt::Display for Comparator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FilterExpr {
    pub variable: String,
    pub comparator: Comparator,
    /// A numeric or string literal.
    pub operand: Term,
}

impl FilterExpr {
    /// `None` when the value cannot be compared with the operand.
    pub fn test(&self, value: &Term) -> Option<bool> {
        value.compare_value(&self.operand).map(|o| self.comparator.holds(o))
    }
}

impl fmt::Display for FilterExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FILTER (?{} {} {})", self.variable, self.comparator, self.operand)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Query {
    pub prefixes: BTreeMap<String, String>,
    pub select_vars: Vec<String>,
    pub patterns: Vec<TriplePattern>,
    pub filters: Vec<FilterExpr>,
}

impl Query {
    /// Checks that every selected variable occurs in some pattern.
    pub fn validate(&self) -> Result<(), SparqlError> {
        for v in &self.select_vars {
            if !self.patterns.iter().any(|p| p.variables().any(|pv| pv == v)) {
                return Err(SparqlError::UnboundVariable(v.clone()));
            }
        }
        Ok(())
    }
}

/// Queries written against the ingested store, one pattern each with a
/// variable predicate and a numeric filter on the object.
pub const WIND_QUERY: &str = "PREFIX rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#>
PREFIX owl: <http://www.w3.org/2002/07/owl#>
PREFIX rdfs: <http://www.w3.org/2000/01/rdf-schema#>
PREFIX xsd: <http://www.w3.org/2001/XMLSchema#>
SELECT ?Sensor_id ?WindSpeed
WHERE { ?Sensor_id ?observedBy ?WindSpeed
FILTER (?WindSpeed >40.00) }
";

pub const RAIN_QUERY: &str = "PREFIX rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#>
PREFIX owl: <http://www.w3.org/2002/07/owl#>
PREFIX rdfs: <http://www.w3.org/2000/01/rdf-schema#>
PREFIX xsd: <http://www.w3.org/2001/XMLSchema#>
SELECT ?Sensor_id ?startRAIN
WHERE { ?Sensor_id ?observedBy ?startRAIN
FILTER (?startRAIN >1.00) }
";
