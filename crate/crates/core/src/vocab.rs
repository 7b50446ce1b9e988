//! IRIs of the sensor/observation vocabulary shared by ingest, rules and
//! queries. Rule files refer to classes and properties by local name; a
//! name `n` resolves to `urn:ssn:vocab:n`.

use crate::rdf::{Term, RDF_TYPE};

pub const NS: &str = "urn:ssn:vocab:";
pub const SENSOR_NS: &str = "urn:ssn:sensor:";
pub const OBS_NS: &str = "urn:ssn:obs:";
pub const UNIT_NS: &str = "urn:ssn:unit:";
pub const QUANTITY_NS: &str = "urn:ssn:quantity:";

/// Vocabulary term for a local name. Panics if the name is not a valid IRI
/// fragment; callers pass identifiers.
pub fn term(local: &str) -> Term {
    Term::iri(format!("{NS}{local}")).expect("vocabulary local names are IRI-safe")
}

/// Local name of a vocabulary IRI, if it is one.
pub fn local_name(t: &Term) -> Option<&str> {
    t.as_iri()?.strip_prefix(NS)
}

pub fn rdf_type() -> Term {
    Term::Iri(RDF_TYPE.to_string())
}

pub fn sensor_class() -> Term {
    term("sensor_id")
}

pub fn output_class() -> Term {
    term("SensorOutput")
}

pub fn has_value() -> Term {
    term("hasvalue")
}

pub fn observed_by() -> Term {
    term("observedBy")
}

pub fn observes() -> Term {
    term("observes")
}

pub fn has_unit() -> Term {
    term("hasUnit")
}

pub fn deployment_x() -> Term {
    term("hasDeploymentX")
}

pub fn deployment_y() -> Term {
    term("hasDeploymentY")
}

pub fn observation_time() -> Term {
    term("observationTime")
}

pub fn observation_day() -> Term {
    term("observationDay")
}
