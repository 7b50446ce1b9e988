//! Montesinho forest-fires CSV ingestion and mapping onto the SSN-style
//! sensor schema.
//!
//! Each data row becomes one sensor node carrying its grid location and
//! observation date, plus one observation node per measured quantity:
//!
//! ```text
//! sensor  rdf:type         sensor_id
//! sensor  hasDeploymentX   X            sensor  hasDeploymentY   Y
//! sensor  observationTime  "2000-08-15" sensor  observationDay   "fri"
//! obs     rdf:type         SensorOutput
//! obs     hasvalue         value        obs     hasUnit          unit
//! obs     observedBy       sensor       obs     observes         quantity
//! ```

use std::fmt;
use std::io::Read;

use serde::Serialize;

use crate::fwi::Month;
use crate::rdf::{Graph, Term, Triple};
use crate::vocab;

pub const HEADER: [&str; 13] = [
    "X", "Y", "month", "day", "FFMC", "DMC", "DC", "ISI", "temp", "RH", "wind", "rain", "area",
];

pub const MONTHS: [&str; 12] = [
    "jan", "feb", "mar", "apr", "may", "jun", "jul", "aug", "sep", "oct", "nov", "dec",
];

pub const DAYS: [&str; 7] = ["mon", "tue", "wed", "thu", "fri", "sat", "sun"];

/// Triples emitted per row: five sensor-level triples plus five per quantity.
pub const TRIPLES_PER_ROW: usize = 5 + 5 * Quantity::ALL.len();

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("reading input: {0}")]
    Io(#[from] std::io::Error),
    #[error("row {row}: {reason}")]
    Malformed { row: usize, reason: String },
    #[error("row {row}: {field} = {value} is out of range ({expected})")]
    Invalid {
        row: usize,
        field: &'static str,
        value: String,
        expected: &'static str,
    },
    #[error("bad header: expected {expected}, found {found}")]
    Header { expected: String, found: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    Ffmc,
    Dmc,
    Dc,
    Isi,
    Temp,
    Rh,
    Wind,
    Rain,
    Area,
}

impl Quantity {
    pub const ALL: [Quantity; 9] = [
        Quantity::Ffmc,
        Quantity::Dmc,
        Quantity::Dc,
        Quantity::Isi,
        Quantity::Temp,
        Quantity::Rh,
        Quantity::Wind,
        Quantity::Rain,
        Quantity::Area,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::Ffmc => "ffmc",
            Quantity::Dmc => "dmc",
            Quantity::Dc => "dc",
            Quantity::Isi => "isi",
            Quantity::Temp => "temp",
            Quantity::Rh => "rh",
            Quantity::Wind => "wind",
            Quantity::Rain => "rain",
            Quantity::Area => "area",
        }
    }

    pub fn unit(self) -> &'static str {
        match self {
            Quantity::Ffmc | Quantity::Dmc | Quantity::Dc | Quantity::Isi => "unitless",
            Quantity::Temp => "degC",
            Quantity::Rh => "percent",
            Quantity::Wind => "km_per_h",
            Quantity::Rain => "mm",
            Quantity::Area => "ha",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Quantity::ALL.into_iter().find(|q| q.name().eq_ignore_ascii_case(s))
    }

    pub fn iri(self) -> Term {
        Term::Iri(format!("{}{}", vocab::QUANTITY_NS, self.name()))
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One row of the forest-fires dataset.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeatherObservation {
    pub x: i64,
    pub y: i64,
    pub month: String,
    pub day: String,
    pub ffmc: f64,
    pub dmc: f64,
    pub dc: f64,
    pub isi: f64,
    pub temp: f64,
    pub rh: f64,
    pub wind: f64,
    pub rain: f64,
    pub area: f64,
}

impl WeatherObservation {
    pub fn value(&self, q: Quantity) -> f64 {
        match q {
            Quantity::Ffmc => self.ffmc,
            Quantity::Dmc => self.dmc,
            Quantity::Dc => self.dc,
            Quantity::Isi => self.isi,
            Quantity::Temp => self.temp,
            Quantity::Rh => self.rh,
            Quantity::Wind => self.wind,
            Quantity::Rain => self.rain,
            Quantity::Area => self.area,
        }
    }

    pub fn month_number(&self) -> Month {
        let i = MONTHS.iter().position(|m| *m == self.month).expect("validated month");
        Month::new(i as u8 + 1).expect("1..=12")
    }

    fn validate(&self, row: usize) -> Result<(), IngestError> {
        let invalid = |field, value: String, expected| IngestError::Invalid {
            row,
            field,
            value,
            expected,
        };
        if !MONTHS.contains(&self.month.as_str()) {
            return Err(invalid("month", self.month.clone(), "jan..dec"));
        }
        if !DAYS.contains(&self.day.as_str()) {
            return Err(invalid("day", self.day.clone(), "mon..sun"));
        }
        let ranges: [(&'static str, f64, f64, f64, &'static str); 9] = [
            ("FFMC", self.ffmc, 0.0, 101.0, "0..=101"),
            ("DMC", self.dmc, 0.0, f64::INFINITY, ">= 0"),
            ("DC", self.dc, 0.0, f64::INFINITY, ">= 0"),
            ("ISI", self.isi, 0.0, f64::INFINITY, ">= 0"),
            ("temp", self.temp, f64::MIN, f64::MAX, "finite"),
            ("RH", self.rh, 0.0, 100.0, "0..=100"),
            ("wind", self.wind, 0.0, f64::INFINITY, ">= 0"),
            ("rain", self.rain, 0.0, f64::INFINITY, ">= 0"),
            ("area", self.area, 0.0, f64::INFINITY, ">= 0"),
        ];
        for (field, v, lo, hi, expected) in ranges {
            if !(v >= lo && v <= hi) || !v.is_finite() {
                return Err(invalid(field, v.to_string(), expected));
            }
        }
        Ok(())
    }

    /// Synthetic observation date. Rows carry month only, so the year cycles
    /// through 2000..=2003 by sensor ordinal and the day is fixed to the 15th.
    pub fn synthetic_date(&self, id: SensorId) -> String {
        let year = 2000 + (id.ordinal() - 1) % 4;
        format!("{year}-{:02}-15", self.month_number().number())
    }
}

/// Ordinal of a dataset row (1-based) and its minted sensor IRI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SensorId(u64);

impl SensorId {
    pub fn new(ordinal: u64) -> Option<Self> {
        (ordinal > 0).then_some(SensorId(ordinal))
    }

    pub fn ordinal(self) -> u64 {
        self.0
    }

    pub fn iri(self) -> Term {
        Term::Iri(format!("{}{}", vocab::SENSOR_NS, self.0))
    }

    pub fn observation_iri(self, q: Quantity) -> Term {
        Term::Iri(format!("{}{}:{}", vocab::OBS_NS, self.0, q.name()))
    }

    /// Inverse of [`SensorId::iri`].
    pub fn from_iri(t: &Term) -> Option<Self> {
        t.as_iri()?.strip_prefix(vocab::SENSOR_NS)?.parse().ok().and_then(Self::new)
    }
}

impl fmt::Display for SensorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", vocab::SENSOR_NS, self.0)
    }
}

/// Parses the dataset CSV. Row numbers in errors count the header as row 1.
pub fn parse_csv(text: &str) -> Result<Vec<WeatherObservation>, IngestError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut records = rdr.records();

    let header = match records.next() {
        None => {
            return Err(IngestError::Header {
                expected: HEADER.join(","),
                found: String::new(),
            })
        }
        Some(r) => r.map_err(|e| IngestError::Malformed { row: 1, reason: e.to_string() })?,
    };
    if header.iter().ne(HEADER.iter().copied()) {
        return Err(IngestError::Header {
            expected: HEADER.join(","),
            found: header.iter().collect::<Vec<_>>().join(","),
        });
    }

    let mut out = Vec::new();
    for (i, rec) in records.enumerate() {
        let row = i + 2;
        let rec = rec.map_err(|e| IngestError::Malformed { row, reason: e.to_string() })?;
        if rec.len() == 1 && rec[0].is_empty() {
            continue;
        }
        if rec.len() != HEADER.len() {
            return Err(IngestError::Malformed {
                row,
                reason: format!("expected {} columns, found {}", HEADER.len(), rec.len()),
            });
        }
        let num = |col: usize| -> Result<f64, IngestError> {
            rec[col].parse::<f64>().map_err(|_| IngestError::Malformed {
                row,
                reason: format!("{}: cannot parse {:?} as a number", HEADER[col], &rec[col]),
            })
        };
        let int = |col: usize| -> Result<i64, IngestError> {
            rec[col].parse::<i64>().map_err(|_| IngestError::Malformed {
                row,
                reason: format!("{}: cannot parse {:?} as an integer", HEADER[col], &rec[col]),
            })
        };
        let obs = WeatherObservation {
            x: int(0)?,
            y: int(1)?,
            month: rec[2].to_ascii_lowercase(),
            day: rec[3].to_ascii_lowercase(),
            ffmc: num(4)?,
            dmc: num(5)?,
            dc: num(6)?,
            isi: num(7)?,
            temp: num(8)?,
            rh: num(9)?,
            wind: num(10)?,
            rain: num(11)?,
            area: num(12)?,
        };
        obs.validate(row)?;
        out.push(obs);
    }
    Ok(out)
}

/// Reads and parses a CSV from a path, or from stdin when the path is `-`.
pub fn read_csv(path: &str) -> Result<Vec<WeatherObservation>, IngestError> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path)?;
    }
    parse_csv(&text)
}

fn triple(s: Term, p: Term, o: Term) -> Triple {
    Triple::new(s, p, o).expect("subjects and predicates minted as IRIs")
}

/// Maps one observation onto the sensor schema; see the module docs.
pub fn to_triples(obs: &WeatherObservation, id: SensorId) -> Vec<Triple> {
    let sensor = id.iri();
    let mut out = Vec::with_capacity(TRIPLES_PER_ROW);
    out.push(triple(sensor.clone(), vocab::rdf_type(), vocab::sensor_class()));
    out.push(triple(sensor.clone(), vocab::deployment_x(), Term::integer(obs.x)));
    out.push(triple(sensor.clone(), vocab::deployment_y(), Term::integer(obs.y)));
    out.push(triple(sensor.clone(), vocab::observation_time(), Term::string(obs.synthetic_date(id))));
    out.push(triple(sensor.clone(), vocab::observation_day(), Term::string(obs.day.clone())));
    for q in Quantity::ALL {
        let node = id.observation_iri(q);
        let unit = Term::Iri(format!("{}{}", vocab::UNIT_NS, q.unit()));
        out.push(triple(node.clone(), vocab::rdf_type(), vocab::output_class()));
        out.push(triple(node.clone(), vocab::has_value(), Term::decimal(obs.value(q))));
        out.push(triple(node.clone(), vocab::has_unit(), unit));
        out.push(triple(node.clone(), vocab::observed_by(), sensor.clone()));
        out.push(triple(node, vocab::observes(), q.iri()));
    }
    out
}

/// Ingests rows in order, numbering sensors from 1.
pub fn ingest(rows: &[WeatherObservation]) -> Graph {
    rows.iter()
        .enumerate()
        .flat_map(|(i, obs)| to_triples(obs, SensorId(i as u64 + 1)))
        .collect()
}

/// Sensor-level view of one quantity: `(sensor, <vocab:quantity>, value)`
/// for every observation of `q`. This is the shape the per-quantity queries
/// (`?Sensor_id ?observedBy ?WindSpeed`) expect.
pub fn quantity_view(g: &Graph, q: Quantity) -> Graph {
    use crate::rdf::{PatternTerm, TriplePattern};

    let of_quantity = TriplePattern::new(PatternTerm::var("obs"), vocab::observes(), q.iri());
    let value = TriplePattern::new(PatternTerm::var("obs"), vocab::has_value(), PatternTerm::var("v"));
    let by = TriplePattern::new(PatternTerm::var("obs"), vocab::observed_by(), PatternTerm::var("s"));
    let predicate = vocab::term(q.name());

    let mut view = Graph::new();
    for b0 in g.match_pattern(&of_quantity) {
        for b1 in g.match_with(&value, &b0) {
            for b2 in g.match_with(&by, &b1) {
                if b2["s"].is_iri() {
                    view.insert(triple(b2["s"].clone(), predicate.clone(), b2["v"].clone()));
                }
            }
        }
    }
    view
}

/// Indices of the `n` rows with the largest absolute FFMC change from the
/// previous row (the first row counts as no change), returned in row order.
/// Ties go to the earlier row. `None` when `n` exceeds the row count.
pub fn largest_ffmc_changes(rows: &[WeatherObservation], n: usize) -> Option<Vec<usize>> {
    if n > rows.len() {
        return None;
    }
    let delta = |i: usize| if i == 0 { 0.0 } else { (rows[i].ffmc - rows[i - 1].ffmc).abs() };
    let mut idx: Vec<usize> = (0..rows.len()).collect();
    idx.sort_by(|&a, &b| delta(b).total_cmp(&delta(a)).then(a.cmp(&b)));
    idx.truncate(n);
    idx.sort_unstable();
    Some(idx)
}
