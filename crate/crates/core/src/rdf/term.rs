use std::cmp::Ordering;
use std::fmt;

use super::RdfError;

pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

/// Literal datatypes understood by the store.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Datatype {
    String,
    Integer,
    Decimal,
}

impl Datatype {
    pub fn iri(self) -> &'static str {
        match self {
            Datatype::String => "http://www.w3.org/2001/XMLSchema#string",
            Datatype::Integer => "http://www.w3.org/2001/XMLSchema#integer",
            Datatype::Decimal => "http://www.w3.org/2001/XMLSchema#decimal",
        }
    }

    /// Resolves a datatype IRI. `xsd:int` is accepted as an alias of integer.
    pub fn from_iri(iri: &str) -> Option<Self> {
        let local = iri.strip_prefix(XSD)?;
        match local {
            "string" => Some(Datatype::String),
            "integer" | "int" | "long" => Some(Datatype::Integer),
            "decimal" | "double" | "float" => Some(Datatype::Decimal),
            _ => None,
        }
    }

    pub fn is_numeric(self) -> bool {
        !matches!(self, Datatype::String)
    }
}

/// An RDF term. Blank nodes are not supported.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(String),
    Literal { lexical: String, datatype: Datatype },
}

impl Term {
    pub fn iri(iri: impl Into<String>) -> Result<Self, RdfError> {
        let iri = iri.into();
        if iri.is_empty() {
            return Err(RdfError::InvalidIri(iri));
        }
        if iri
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '\\' | '^' | '`'))
        {
            return Err(RdfError::InvalidIri(iri));
        }
        Ok(Term::Iri(iri))
    }

    pub fn literal(lexical: impl Into<String>, datatype: Datatype) -> Result<Self, RdfError> {
        let lexical = lexical.into();
        let ok = match datatype {
            Datatype::String => true,
            Datatype::Integer => is_integer_lexical(&lexical),
            Datatype::Decimal => is_decimal_lexical(&lexical),
        };
        if !ok {
            return Err(RdfError::InvalidLiteral { lexical, datatype });
        }
        Ok(Term::Literal { lexical, datatype })
    }

    pub fn string(s: impl Into<String>) -> Self {
        Term::Literal {
            lexical: s.into(),
            datatype: Datatype::String,
        }
    }

    pub fn integer(v: i64) -> Self {
        Term::Literal {
            lexical: v.to_string(),
            datatype: Datatype::Integer,
        }
    }

    /// Decimal literal in canonical form (shortest round-trip, always with a
    /// fractional part). Panics on non-finite input.
    pub fn decimal(v: f64) -> Self {
        Term::Literal {
            lexical: canonical_decimal(v),
            datatype: Datatype::Decimal,
        }
    }

    pub fn is_iri(&self) -> bool {
        matches!(self, Term::Iri(_))
    }

    pub fn as_iri(&self) -> Option<&str> {
        match self {
            Term::Iri(s) => Some(s),
            Term::Literal { .. } => None,
        }
    }

    /// Numeric value of an integer/decimal literal.
    pub fn as_number(&self) -> Option<f64> {
        match self {
            Term::Literal { lexical, datatype } if datatype.is_numeric() => lexical.parse().ok(),
            _ => None,
        }
    }

    pub fn as_str_literal(&self) -> Option<&str> {
        match self {
            Term::Literal {
                lexical,
                datatype: Datatype::String,
            } => Some(lexical),
            _ => None,
        }
    }

    /// Lexical form for literals, the IRI itself otherwise.
    pub fn lexical(&self) -> &str {
        match self {
            Term::Iri(s) => s,
            Term::Literal { lexical, .. } => lexical,
        }
    }

    /// Value comparison: numbers by numeric value across integer/decimal,
    /// strings lexicographically. Anything else is incomparable.
    pub fn compare_value(&self, other: &Term) -> Option<Ordering> {
        if let (Some(a), Some(b)) = (self.as_number(), other.as_number()) {
            return a.partial_cmp(&b);
        }
        match (self.as_str_literal(), other.as_str_literal()) {
            (Some(a), Some(b)) => Some(a.cmp(b)),
            _ => None,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => write!(f, "<{iri}>"),
            Term::Literal { lexical, datatype } => {
                f.write_str("\"")?;
                for c in lexical.chars() {
                    match c {
                        '"' => f.write_str("\\\"")?,
                        '\\' => f.write_str("\\\\")?,
                        '\n' => f.write_str("\\n")?,
                        '\r' => f.write_str("\\r")?,
                        '\t' => f.write_str("\\t")?,
                        c => write!(f, "{c}")?,
                    }
                }
                write!(f, "\"^^<{}>", datatype.iri())
            }
        }
    }
}

/// Shortest round-trippable decimal rendering, with a mandatory fractional
/// part: `45.0`, `6.4`, `-0.5`.
pub fn canonical_decimal(v: f64) -> String {
    assert!(v.is_finite(), "decimal literal must be finite");
    let v = if v == 0.0 { 0.0 } else { v };
    let s = format!("{v:?}");
    if s.contains('e') || s.contains('E') {
        // Debug switches to exponent form outside ~[1e-5, 1e16).
        let plain = format!("{v}");
        if plain.contains('.') {
            plain
        } else {
            format!("{plain}.0")
        }
    } else {
        s
    }
}

fn is_integer_lexical(s: &str) -> bool {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

fn is_decimal_lexical(s: &str) -> bool {
    let body = s.strip_prefix(['+', '-']).unwrap_or(s);
    let (int, frac) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    (!int.is_empty() || !frac.is_empty())
        && int.bytes().all(|b| b.is_ascii_digit())
        && frac.bytes().all(|b| b.is_ascii_digit())
}

/// A subject-predicate-object statement. Subject and predicate are IRIs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    subject: Term,
    predicate: Term,
    object: Term,
}

impl Triple {
    pub fn new(subject: Term, predicate: Term, object: Term) -> Result<Self, RdfError> {
        if !subject.is_iri() {
            return Err(RdfError::NonIriSubject(subject.to_string()));
        }
        if !predicate.is_iri() {
            return Err(RdfError::NonIriPredicate(predicate.to_string()));
        }
        Ok(Triple {
            subject,
            predicate,
            object,
        })
    }

    pub fn subject(&self) -> &Term {
        &self.subject
    }

    pub fn predicate(&self) -> &Term {
        &self.predicate
    }

    pub fn object(&self) -> &Term {
        &self.object
    }

    pub fn terms(&self) -> [&Term; 3] {
        [&self.subject, &self.predicate, &self.object]
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}
