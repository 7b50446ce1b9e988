//! Semantic decision support for forest-fire danger rating.
//!
//! Weather observations are loaded into an in-memory RDF store using an
//! SSN-style sensor/observation schema. Canadian Fire Weather Index values
//! are computed from the fuel moisture codes, classified into danger bands,
//! and combined into per-sensor assessments and alerts. A small Horn-rule
//! engine and a SPARQL subset operate over the same store.

pub mod dss;
pub mod fwi;
pub mod ingest;
pub mod rdf;
pub mod rules;
pub mod sparql;
pub mod vocab;

pub use rdf::{Graph, Term, Triple, TriplePattern};
