//! Precautionary-measure model checker.
//!
//! An assessment walks the index bands in a fixed order: ignition potential
//! and rain first, then either the spread/intensity branch (fine fuels at
//! least easy to ignite) or the mop-up/control branch, and finally the
//! independent wind check. Every check performed is recorded in the trace.
//!
//! Verdicts come from the fire-intensity band: low is no risk, moderate is
//! monitor, high is act, very high and extreme are extreme unless both
//! difficulty of control (≤ not difficult) and mop-up (≤ moderate) are mild,
//! which demotes to act. Rain above the override threshold always wins.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::fwi::{self, FwiError, FwiRecord, WeatherInputs};
use crate::ingest::{SensorId, WeatherObservation};
use crate::rdf::{Term, Triple};
use crate::rules::{
    classify_difficulty_of_control, classify_fire_intensity, classify_ignition_potential,
    classify_mopup_needs, classify_rate_of_spread, rain_override, wind_risk, Band, FireStop, Indicator,
    RuleAtom, RuleError, RuleSet, FIRE_INTENSITY, WIND_THRESHOLD,
};
use crate::vocab;

// Band ranks the flow branches on.
const IGNITION_EASY: usize = 2;
const INTENSITY_HIGH: usize = 2;
const INTENSITY_VERY_HIGH: usize = 3;
const CONTROL_NOT_DIFFICULT: usize = 1;
const MOPUP_MODERATE: usize = 1;

#[derive(Debug, thiserror::Error)]
pub enum DssError {
    #[error(transparent)]
    Fwi(#[from] FwiError),
    #[error(transparent)]
    Band(#[from] RuleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Verdict {
    NoFireRisk,
    Monitor,
    Act,
    Extreme,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::NoFireRisk => "NoFireRisk",
            Verdict::Monitor => "Monitor",
            Verdict::Act => "Act",
            Verdict::Extreme => "Extreme",
        };
        f.write_str(s)
    }
}

/// One step of the model checker.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum Check {
    IgnitionPotential { ffmc: f64, label: &'static str },
    Rain { rain: f64, label: Option<&'static str> },
    RateOfSpread { isi: f64, label: &'static str },
    FireIntensity { fwi: f64, label: &'static str },
    DifficultyOfControl { bui: f64, label: &'static str },
    MopupNeeds { dmc: f64, label: &'static str },
    WindSpeed { wind: f64, label: Option<&'static str> },
}

impl Check {
    pub fn label(&self) -> Option<&'static str> {
        match self {
            Check::IgnitionPotential { label, .. }
            | Check::RateOfSpread { label, .. }
            | Check::FireIntensity { label, .. }
            | Check::DifficultyOfControl { label, .. }
            | Check::MopupNeeds { label, .. } => Some(label),
            Check::Rain { label, .. } | Check::WindSpeed { label, .. } => *label,
        }
    }
}

/// Where an assessment came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SensorRef {
    pub id: String,
    pub timestamp: Option<String>,
}

impl SensorRef {
    pub fn new(id: impl Into<String>) -> Self {
        SensorRef {
            id: id.into(),
            timestamp: None,
        }
    }

    pub fn at(mut self, timestamp: impl Into<String>) -> Self {
        self.timestamp = Some(timestamp.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Assessment {
    pub sensor: String,
    pub timestamp: Option<String>,
    #[serde(flatten)]
    pub record: FwiRecord,
    pub rain: f64,
    pub wind: f64,
    pub ignition_potential: &'static str,
    pub mopup_needs: &'static str,
    pub difficulty_of_control: &'static str,
    pub rate_of_spread: &'static str,
    pub fire_intensity: &'static str,
    pub rain_override: bool,
    pub wind_risk: bool,
    pub verdict: Verdict,
    /// Labels the verdict rests on.
    pub justification: Vec<&'static str>,
    pub trace: Vec<Check>,
    #[serde(skip)]
    bands: [Band; 5],
}

impl Assessment {
    pub fn ignition(&self) -> Band {
        self.bands[0]
    }

    pub fn mopup(&self) -> Band {
        self.bands[1]
    }

    pub fn difficulty(&self) -> Band {
        self.bands[2]
    }

    pub fn spread(&self) -> Band {
        self.bands[3]
    }

    pub fn intensity(&self) -> Band {
        self.bands[4]
    }
}

pub fn assess(rec: &FwiRecord, w: &WeatherInputs, sensor: &SensorRef) -> Result<Assessment, DssError> {
    rec.validate()?;
    w.validate()?;

    let ignition = classify_ignition_potential(rec.ffmc)?;
    let mopup = classify_mopup_needs(rec.dmc)?;
    let difficulty = classify_difficulty_of_control(rec.bui)?;
    let spread = classify_rate_of_spread(rec.isi)?;
    let intensity = classify_fire_intensity(rec.fwi)?;
    let fire_stop = rain_override(w.rain_24h);
    let windy = wind_risk(w.wind);

    let ignition_check = Check::IgnitionPotential {
        ffmc: rec.ffmc,
        label: ignition.label,
    };
    let spread_check = Check::RateOfSpread {
        isi: rec.isi,
        label: spread.label,
    };
    let intensity_check = Check::FireIntensity {
        fwi: rec.fwi,
        label: intensity.label,
    };
    let control_check = Check::DifficultyOfControl {
        bui: rec.bui,
        label: difficulty.label,
    };
    let mopup_check = Check::MopupNeeds {
        dmc: rec.dmc,
        label: mopup.label,
    };

    let mut trace = vec![
        ignition_check,
        Check::Rain {
            rain: w.rain_24h,
            label: fire_stop.map(|_| FireStop::LABEL),
        },
    ];
    let mut justification = Vec::new();

    let verdict = if fire_stop.is_some() {
        justification.push(FireStop::LABEL);
        Verdict::NoFireRisk
    } else {
        if ignition.rank >= IGNITION_EASY {
            trace.push(spread_check);
            trace.push(intensity_check);
            if intensity.rank >= INTENSITY_VERY_HIGH {
                trace.push(control_check);
                trace.push(mopup_check);
            }
        } else {
            trace.push(mopup_check);
            trace.push(control_check);
            trace.push(intensity_check);
        }
        justification.push(intensity.label);
        match intensity.rank {
            0 => Verdict::NoFireRisk,
            1 => Verdict::Monitor,
            INTENSITY_HIGH => Verdict::Act,
            _ => {
                justification.push(difficulty.label);
                justification.push(mopup.label);
                if difficulty.rank <= CONTROL_NOT_DIFFICULT && mopup.rank <= MOPUP_MODERATE {
                    Verdict::Act
                } else {
                    Verdict::Extreme
                }
            }
        }
    };

    trace.push(Check::WindSpeed {
        wind: w.wind,
        label: windy.map(|_| crate::rules::WindRisk::LABEL),
    });

    Ok(Assessment {
        sensor: sensor.id.clone(),
        timestamp: sensor.timestamp.clone(),
        record: *rec,
        rain: w.rain_24h,
        wind: w.wind,
        ignition_potential: ignition.label,
        mopup_needs: mopup.label,
        difficulty_of_control: difficulty.label,
        rate_of_spread: spread.label,
        fire_intensity: intensity.label,
        rain_override: fire_stop.is_some(),
        wind_risk: windy.is_some(),
        verdict,
        justification,
        trace,
        bands: [ignition, mopup, difficulty, spread, intensity],
    })
}

/// Weather inputs carried by a dataset row.
pub fn weather_of(obs: &WeatherObservation) -> WeatherInputs {
    WeatherInputs {
        temp: obs.temp,
        rh: obs.rh,
        wind: obs.wind,
        rain_24h: obs.rain,
    }
}

/// FWI record of a dataset row: the row's moisture codes with ISI, BUI and
/// FWI recomputed by the index chain.
pub fn record_of(obs: &WeatherObservation) -> Result<FwiRecord, FwiError> {
    fwi::compute_chain(obs.ffmc, obs.dmc, obs.dc, obs.wind)
}

pub fn assess_row(obs: &WeatherObservation, id: SensorId) -> Result<Assessment, DssError> {
    let sensor = SensorRef::new(id.to_string()).at(obs.synthetic_date(id));
    assess(&record_of(obs)?, &weather_of(obs), &sensor)
}

/// Assesses dataset rows in order; sensors are numbered from 1.
pub fn assess_rows(rows: &[WeatherObservation]) -> Result<Vec<Assessment>, (usize, DssError)> {
    rows.iter()
        .enumerate()
        .map(|(i, obs)| {
            let id = SensorId::new(i as u64 + 1).expect("positive");
            assess_row(obs, id).map_err(|e| (i + 1, e))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Alert {
    pub sensor: String,
    pub timestamp: String,
    pub index: String,
    pub value: f64,
    pub threshold: f64,
    pub verdict: Verdict,
    pub message: String,
}

impl Alert {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("alerts serialize")
    }
}

/// One alert per Act/Extreme verdict and one per wind-risk flag, ordered by
/// sensor id (numeric runs compared by value).
pub fn alerts_for(assessments: &[Assessment]) -> Vec<Alert> {
    let mut ordered: Vec<&Assessment> = assessments.iter().collect();
    ordered.sort_by(|a, b| natural_cmp(&a.sensor, &b.sensor));

    let mut out = Vec::new();
    for a in ordered {
        let timestamp = a
            .timestamp
            .clone()
            .unwrap_or_else(|| chrono::Utc::now().format("%Y-%m-%dT%H:%M:%SZ").to_string());
        if matches!(a.verdict, Verdict::Act | Verdict::Extreme) {
            let entry = if a.verdict == Verdict::Extreme {
                INTENSITY_VERY_HIGH
            } else {
                INTENSITY_HIGH
            };
            let threshold = FIRE_INTENSITY.bands[entry].0;
            out.push(Alert {
                sensor: a.sensor.clone(),
                timestamp: timestamp.clone(),
                index: Indicator::Fwi.to_string(),
                value: a.record.fwi,
                threshold,
                verdict: a.verdict,
                message: format!(
                    "{}: fire intensity {} (FWI {:.1} > {}); ignition {}, spread {}, control {}, mop-up {}",
                    a.verdict,
                    a.fire_intensity,
                    a.record.fwi,
                    threshold,
                    a.ignition_potential,
                    a.rate_of_spread,
                    a.difficulty_of_control,
                    a.mopup_needs
                ),
            });
        }
        if a.wind_risk {
            out.push(Alert {
                sensor: a.sensor.clone(),
                timestamp,
                index: Indicator::Wind.to_string(),
                value: a.wind,
                threshold: WIND_THRESHOLD,
                verdict: a.verdict,
                message: format!(
                    "wind {} km/h exceeds {WIND_THRESHOLD} km/h: very high spread risk",
                    a.wind
                ),
            });
        }
    }
    out
}

/// Compares strings chunk-wise, treating digit runs as numbers.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i].is_ascii_digit() != bytes[start].is_ascii_digit() {
                out.push((bytes[start].is_ascii_digit(), &s[start..i]));
                start = i;
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for (x, y) in ca.iter().zip(&cb) {
        let ord = match (x, y) {
            ((true, n), (true, m)) => {
                let (n, m) = (n.trim_start_matches('0'), m.trim_start_matches('0'));
                n.len().cmp(&m.len()).then_with(|| n.cmp(m))
            }
            ((_, s), (_, t)) => s.cmp(t),
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ca.len().cmp(&cb.len()).then_with(|| a.cmp(b))
}

/// Per-sensor facts the shipped rules read: the sensor typed `sensor_id`
/// and, for every rule, its body value property set to the indicator the
/// rule's head is about.
pub fn indicator_facts(sensor: &Term, rec: &FwiRecord, w: &WeatherInputs, rules: &RuleSet) -> Vec<Triple> {
    let mut out = vec![Triple::new(sensor.clone(), vocab::rdf_type(), vocab::sensor_class()).expect("IRI subject")];
    for rule in rules.iter() {
        let Some(ind) = Indicator::from_head_property(&rule.head().property) else {
            continue;
        };
        let value = match ind {
            Indicator::Ffmc => rec.ffmc,
            Indicator::Dmc => rec.dmc,
            Indicator::Bui => rec.bui,
            Indicator::Isi => rec.isi,
            Indicator::Fwi => rec.fwi,
            Indicator::Rain => w.rain_24h,
            Indicator::Wind => w.wind,
        };
        for atom in rule.body() {
            if let RuleAtom::DataProperty {
                property,
                object: crate::rules::Arg::Var(_),
                ..
            } = atom
            {
                let t = Triple::new(sensor.clone(), vocab::term(property), Term::decimal(value)).expect("IRI subject");
                if !out.contains(&t) {
                    out.push(t);
                }
            }
        }
    }
    out
}
