//! Danger-band tables for the five FWI System values and the rain/wind
//! override signals.
//!
//! A value falls in the band of the highest threshold it strictly exceeds;
//! values at or below the lowest threshold take the lowest band.

use std::fmt;

use serde::Serialize;

use super::RuleError;

/// Which value a rule group or band table is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Indicator {
    Ffmc,
    Dmc,
    Bui,
    Isi,
    Fwi,
    Rain,
    Wind,
}

impl Indicator {
    pub const ALL: [Indicator; 7] = [
        Indicator::Ffmc,
        Indicator::Dmc,
        Indicator::Bui,
        Indicator::Isi,
        Indicator::Fwi,
        Indicator::Rain,
        Indicator::Wind,
    ];

    /// Property asserted by the rules about this indicator.
    pub fn head_property(self) -> &'static str {
        match self {
            Indicator::Ffmc => "IgnitionPotential",
            Indicator::Dmc => "MopupNeeds",
            Indicator::Bui => "DifficultyofControle",
            Indicator::Isi => "RateofSpread",
            Indicator::Fwi => "FireIntensity",
            Indicator::Rain => "startRaining",
            Indicator::Wind => "WindSpeed",
        }
    }

    pub fn from_head_property(p: &str) -> Option<Self> {
        Indicator::ALL.into_iter().find(|i| i.head_property() == p)
    }

    pub fn name(self) -> &'static str {
        match self {
            Indicator::Ffmc => "ffmc",
            Indicator::Dmc => "dmc",
            Indicator::Bui => "bui",
            Indicator::Isi => "isi",
            Indicator::Fwi => "fwi",
            Indicator::Rain => "rain",
            Indicator::Wind => "wind",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Indicator::ALL.into_iter().find(|i| i.name().eq_ignore_ascii_case(s))
    }

    /// Band table, for the five banded indicators.
    pub fn bands(self) -> Option<&'static BandTable> {
        match self {
            Indicator::Ffmc => Some(&IGNITION_POTENTIAL),
            Indicator::Dmc => Some(&MOPUP_NEEDS),
            Indicator::Bui => Some(&DIFFICULTY_OF_CONTROL),
            Indicator::Isi => Some(&RATE_OF_SPREAD),
            Indicator::Fwi => Some(&FIRE_INTENSITY),
            Indicator::Rain | Indicator::Wind => None,
        }
    }
}

impl fmt::Display for Indicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name().to_ascii_uppercase())
    }
}

/// Ordered `(threshold, label)` pairs with strictly increasing thresholds.
#[derive(Debug, PartialEq)]
pub struct BandTable {
    pub indicator: Indicator,
    pub max: f64,
    pub bands: &'static [(f64, &'static str)],
}

/// A classified value: the band's label and its rank within its table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Band {
    #[serde(skip)]
    pub indicator: Indicator,
    #[serde(skip)]
    pub rank: usize,
    pub label: &'static str,
}

impl fmt::Display for Band {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label)
    }
}

impl BandTable {
    pub fn classify(&self, value: f64) -> Result<Band, RuleError> {
        if value.is_nan() || value < 0.0 || value > self.max {
            return Err(RuleError::Domain {
                indicator: self.indicator,
                value,
            });
        }
        let rank = self.bands.iter().rposition(|(t, _)| value > *t).unwrap_or(0);
        Ok(self.band(rank))
    }

    pub fn band(&self, rank: usize) -> Band {
        Band {
            indicator: self.indicator,
            rank,
            label: self.bands[rank].1,
        }
    }

    /// Band with the given label, if the table has one.
    pub fn by_label(&self, label: &str) -> Option<Band> {
        self.bands.iter().position(|(_, l)| *l == label).map(|r| self.band(r))
    }

    pub fn thresholds(&self) -> impl Iterator<Item = f64> + '_ {
        self.bands.iter().map(|(t, _)| *t)
    }
}

pub static IGNITION_POTENTIAL: BandTable = BandTable {
    indicator: Indicator::Ffmc,
    max: 101.0,
    bands: &[
        (1.0, "difficult"),
        (75.0, "moderatelyeasy"),
        (85.0, "easy"),
        (89.0, "veryeasy"),
        (92.0, "extremelyeasy"),
    ],
};

pub static MOPUP_NEEDS: BandTable = BandTable {
    indicator: Indicator::Dmc,
    max: f64::INFINITY,
    bands: &[
        (2.0, "little"),
        (10.0, "moderate"),
        (20.0, "difficult"),
        (30.0, "difficultandExtended"),
        (40.0, "difficultandextensive"),
    ],
};

pub static DIFFICULTY_OF_CONTROL: BandTable = BandTable {
    indicator: Indicator::Bui,
    max: f64::INFINITY,
    bands: &[
        (1.0, "easy"),
        (16.0, "notDifficult"),
        (31.0, "difficult"),
        (46.0, "veryDifficult"),
        (60.0, "extremelyDifficult"),
    ],
};

pub static RATE_OF_SPREAD: BandTable = BandTable {
    indicator: Indicator::Isi,
    max: f64::INFINITY,
    bands: &[
        (1.0, "slow"),
        (4.0, "moderatelyFast"),
        (8.0, "fast"),
        (13.0, "very_fast"),
        (16.0, "extremelyDifficult"),
    ],
};

pub static FIRE_INTENSITY: BandTable = BandTable {
    indicator: Indicator::Fwi,
    max: f64::INFINITY,
    bands: &[
        (1.0, "low"),
        (6.0, "moderate"),
        (13.0, "high"),
        (21.0, "veryhigh"),
        (30.0, "extreme"),
    ],
};

pub fn classify_ignition_potential(ffmc: f64) -> Result<Band, RuleError> {
    IGNITION_POTENTIAL.classify(ffmc)
}

pub fn classify_mopup_needs(dmc: f64) -> Result<Band, RuleError> {
    MOPUP_NEEDS.classify(dmc)
}

pub fn classify_difficulty_of_control(bui: f64) -> Result<Band, RuleError> {
    DIFFICULTY_OF_CONTROL.classify(bui)
}

pub fn classify_rate_of_spread(isi: f64) -> Result<Band, RuleError> {
    RATE_OF_SPREAD.classify(isi)
}

pub fn classify_fire_intensity(fwi: f64) -> Result<Band, RuleError> {
    FIRE_INTENSITY.classify(fwi)
}

pub const RAIN_THRESHOLD: f64 = 1.0;
pub const WIND_THRESHOLD: f64 = 50.0;

/// Rain strong enough to stop fire spread.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FireStop;

/// Wind fast enough to be a very high risk on its own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WindRisk;

impl WindRisk {
    pub const LABEL: &'static str = "veryhigh";
}

impl FireStop {
    pub const LABEL: &'static str = "FireStop";
}

pub fn rain_override(rain_mm: f64) -> Option<FireStop> {
    (rain_mm > RAIN_THRESHOLD).then_some(FireStop)
}

pub fn wind_risk(wind_kmh: f64) -> Option<WindRisk> {
    (wind_kmh > WIND_THRESHOLD).then_some(WindRisk)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(r: Result<Band, RuleError>) -> &'static str {
        r.unwrap().label
    }

    #[test]
    fn ignition_potential() {
        assert_eq!(label(classify_ignition_potential(70.0)), "difficult");
        assert_eq!(label(classify_ignition_potential(95.0)), "extremelyeasy");
        assert_eq!(label(classify_ignition_potential(0.0)), "difficult");
        assert_eq!(label(classify_ignition_potential(92.0)), "veryeasy");
        assert_eq!(label(classify_ignition_potential(92.000001)), "extremelyeasy");
        assert!(classify_ignition_potential(101.5).is_err());
        assert!(classify_ignition_potential(-1.0).is_err());
    }

    #[test]
    fn mopup_needs() {
        assert_eq!(label(classify_mopup_needs(47.0)), "difficultandextensive");
        assert_eq!(label(classify_mopup_needs(27.0)), "difficult");
        assert_eq!(label(classify_mopup_needs(0.0)), "little");
        assert!(classify_mopup_needs(-0.5).is_err());
    }

    #[test]
    fn difficulty_of_control() {
        assert_eq!(label(classify_difficulty_of_control(17.0)), "notDifficult");
        assert_eq!(label(classify_difficulty_of_control(115.0)), "extremelyDifficult");
        assert_eq!(label(classify_difficulty_of_control(45.0)), "difficult");
        assert!(classify_difficulty_of_control(-2.0).is_err());
    }

    #[test]
    fn rate_of_spread() {
        assert_eq!(label(classify_rate_of_spread(6.0)), "moderatelyFast");
        assert_eq!(label(classify_rate_of_spread(1.5)), "slow");
        assert_eq!(label(classify_rate_of_spread(20.0)), "extremelyDifficult");
        assert!(classify_rate_of_spread(f64::NAN).is_err());
    }

    #[test]
    fn fire_intensity() {
        assert_eq!(label(classify_fire_intensity(8.0)), "moderate");
        assert_eq!(label(classify_fire_intensity(23.0)), "veryhigh");
        assert_eq!(label(classify_fire_intensity(31.0)), "extreme");
        assert!(classify_fire_intensity(-1.0).is_err());
    }

    #[test]
    fn overrides_are_strict() {
        assert_eq!(rain_override(2.0), Some(FireStop));
        assert_eq!(rain_override(1.0), None);
        assert_eq!(rain_override(0.0), None);
        assert_eq!(wind_risk(55.0), Some(WindRisk));
        assert_eq!(wind_risk(50.0), None);
        assert_eq!(wind_risk(0.0), None);
    }

    #[test]
    fn tables_are_well_formed() {
        for ind in Indicator::ALL {
            let Some(t) = ind.bands() else { continue };
            assert_eq!(t.indicator, ind);
            assert!(t.bands.windows(2).all(|w| w[0].0 < w[1].0));
            let mut labels: Vec<_> = t.bands.iter().map(|b| b.1).collect();
            labels.sort();
            labels.dedup();
            assert_eq!(labels.len(), t.bands.len());
        }
    }
}
