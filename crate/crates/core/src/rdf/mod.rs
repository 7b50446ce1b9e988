//! In-memory RDF triple store.

mod graph;
pub mod ntriples;
mod term;

pub use graph::{Binding, Graph, PatternTerm, TriplePattern};
pub use term::{canonical_decimal, Datatype, Term, Triple, RDF_TYPE, XSD};

#[derive(Debug, thiserror::Error)]
pub enum RdfError {
    #[error("invalid IRI {0:?}")]
    InvalidIri(String),
    #[error("lexical form {lexical:?} is not a valid {datatype:?} literal")]
    InvalidLiteral { lexical: String, datatype: Datatype },
    #[error("subject must be an IRI, got {0}")]
    NonIriSubject(String),
    #[error("predicate must be an IRI, got {0}")]
    NonIriPredicate(String),
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
}
