//! Canadian Fire Weather Index System.
//!
//! Fuel moisture content from sample masses and from FFMC, the fire
//! behaviour chain (ISI, BUI, FWI) and the daily FFMC/DMC/DC updates from
//! noon weather. Equations follow the Van Wagner & Pickett listing of the
//! FWI System; all arithmetic is `f64`.

use serde::{Deserialize, Serialize};

/// FFMC upper bound; moisture content from FFMC vanishes here.
pub const FFMC_MAX: f64 = 101.0;

/// Largest fuel moisture content reachable from an FFMC in `[0, 101]`.
pub const FMC_MAX: f64 = 147.2 * FFMC_MAX / 59.5;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FwiError {
    #[error("dry mass must be positive, got {0}")]
    ZeroDryMass(f64),
    #[error("{name} = {value} outside [{min}, {max}]")]
    Domain {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },
}

fn check(name: &'static str, value: f64, min: f64, max: f64) -> Result<f64, FwiError> {
    if value.is_nan() || value < min || value > max {
        return Err(FwiError::Domain { name, value, min, max });
    }
    Ok(value)
}

/// Oven-dry weighing of a fuel sample, grams.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FuelSample {
    pub water_mass: f64,
    pub dry_mass: f64,
}

/// Noon weather driving the daily code updates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeatherInputs {
    /// Air temperature, degrees C.
    pub temp: f64,
    /// Relative humidity, percent.
    pub rh: f64,
    /// Wind speed, km/h.
    pub wind: f64,
    /// 24-hour rainfall, mm.
    pub rain_24h: f64,
}

impl WeatherInputs {
    pub fn validate(&self) -> Result<(), FwiError> {
        check("temp", self.temp, f64::MIN, f64::MAX)?;
        check("rh", self.rh, 0.0, 100.0)?;
        check("wind", self.wind, 0.0, f64::INFINITY)?;
        check("rain", self.rain_24h, 0.0, f64::INFINITY)?;
        Ok(())
    }
}

/// The three fuel moisture codes carried from day to day.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MoistureCodes {
    pub ffmc: f64,
    pub dmc: f64,
    pub dc: f64,
}

impl MoistureCodes {
    pub fn validate(&self) -> Result<(), FwiError> {
        check("ffmc", self.ffmc, 0.0, FFMC_MAX)?;
        check("dmc", self.dmc, 0.0, f64::INFINITY)?;
        check("dc", self.dc, 0.0, f64::INFINITY)?;
        Ok(())
    }
}

/// The six FWI System values for one station-day.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FwiRecord {
    pub ffmc: f64,
    pub dmc: f64,
    pub dc: f64,
    pub isi: f64,
    pub bui: f64,
    pub fwi: f64,
}

impl FwiRecord {
    pub fn codes(&self) -> MoistureCodes {
        MoistureCodes {
            ffmc: self.ffmc,
            dmc: self.dmc,
            dc: self.dc,
        }
    }

    pub fn validate(&self) -> Result<(), FwiError> {
        self.codes().validate()?;
        check("isi", self.isi, 0.0, f64::INFINITY)?;
        check("bui", self.bui, 0.0, f64::INFINITY)?;
        check("fwi", self.fwi, 0.0, f64::INFINITY)?;
        Ok(())
    }
}

/// Moisture content in percent of dry weight. Negative when the sample
/// holds less than its oven-dry mass.
pub fn fmc_from_masses(s: FuelSample) -> Result<f64, FwiError> {
    if s.dry_mass == 0.0 {
        return Err(FwiError::ZeroDryMass(s.dry_mass));
    }
    check("dry_mass", s.dry_mass, f64::MIN_POSITIVE, f64::INFINITY)?;
    check("water_mass", s.water_mass, 0.0, f64::INFINITY)?;
    Ok((s.water_mass - s.dry_mass) / s.dry_mass * 100.0)
}

/// Fine fuel moisture content (percent) implied by an FFMC value.
pub fn fmc_from_ffmc(ffmc: f64) -> Result<f64, FwiError> {
    check("ffmc", ffmc, 0.0, FFMC_MAX)?;
    Ok(147.2 * (FFMC_MAX - ffmc) / (59.5 + ffmc))
}

/// Exact algebraic inverse of [`fmc_from_ffmc`].
pub fn ffmc_from_fmc(fmc: f64) -> Result<f64, FwiError> {
    check("fmc", fmc, 0.0, FMC_MAX)?;
    Ok(((147.2 * FFMC_MAX - 59.5 * fmc) / (fmc + 147.2)).clamp(0.0, FFMC_MAX))
}

pub fn isi_from(ffmc: f64, wind: f64) -> Result<f64, FwiError> {
    let m = fmc_from_ffmc(ffmc)?;
    check("wind", wind, 0.0, f64::INFINITY)?;
    let wind_factor = (0.05039 * wind).exp();
    let fuel_factor = 91.9 * (-0.1386 * m).exp() * (1.0 + m.powf(5.31) / 4.93e7);
    Ok(0.208 * wind_factor * fuel_factor)
}

pub fn bui_from(dmc: f64, dc: f64) -> Result<f64, FwiError> {
    check("dmc", dmc, 0.0, f64::INFINITY)?;
    check("dc", dc, 0.0, f64::INFINITY)?;
    if dmc == 0.0 {
        return Ok(0.0);
    }
    let bui = if dmc <= 0.4 * dc {
        0.8 * dmc * dc / (dmc + 0.4 * dc)
    } else {
        dmc - (1.0 - 0.8 * dc / (dmc + 0.4 * dc)) * (0.92 + (0.0114 * dmc).powf(1.7))
    };
    Ok(bui.max(0.0))
}

pub fn fwi_from(isi: f64, bui: f64) -> Result<f64, FwiError> {
    check("isi", isi, 0.0, f64::INFINITY)?;
    check("bui", bui, 0.0, f64::INFINITY)?;
    let duff_factor = if bui <= 80.0 {
        0.626 * bui.powf(0.809) + 2.0
    } else {
        1000.0 / (25.0 + 108.64 * (-0.023 * bui).exp())
    };
    let b = 0.1 * isi * duff_factor;
    Ok(if b <= 1.0 {
        b
    } else {
        (2.72 * (0.434 * b.ln()).powf(0.647)).exp()
    })
}

pub fn compute_chain(ffmc: f64, dmc: f64, dc: f64, wind: f64) -> Result<FwiRecord, FwiError> {
    let isi = isi_from(ffmc, wind)?;
    let bui = bui_from(dmc, dc)?;
    let fwi = fwi_from(isi, bui)?;
    Ok(FwiRecord {
        ffmc,
        dmc,
        dc,
        isi,
        bui,
        fwi,
    })
}

/// Calendar month, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Month(u8);

impl Month {
    pub fn new(number: u8) -> Option<Self> {
        (1..=12).contains(&number).then_some(Month(number))
    }

    pub fn number(self) -> u8 {
        self.0
    }

    fn index(self) -> usize {
        usize::from(self.0 - 1)
    }
}

/// DMC effective day-length factors, January..December.
const DMC_DAY_LENGTH: [f64; 12] = [6.5, 7.5, 9.0, 12.8, 13.9, 13.9, 12.4, 10.9, 9.4, 8.0, 7.0, 6.0];

/// DC day-length adjustments, January..December.
const DC_DAY_LENGTH: [f64; 12] = [-1.6, -1.6, -1.6, 0.9, 3.8, 5.8, 6.4, 5.0, 2.4, 0.4, -1.6, -1.6];

/// Temperature below which DMC drying stops.
pub const DMC_TEMP_FLOOR: f64 = -1.1;

/// Temperature below which DC drying stops.
pub const DC_TEMP_FLOOR: f64 = -2.8;

/// Yesterday's codes plus today's noon weather give today's codes.
pub fn daily_update(prev: MoistureCodes, w: WeatherInputs, month: Month) -> Result<MoistureCodes, FwiError> {
    prev.validate()?;
    w.validate()?;
    Ok(MoistureCodes {
        ffmc: next_ffmc(prev.ffmc, w),
        dmc: next_dmc(prev.dmc, w, month),
        dc: next_dc(prev.dc, w, month),
    })
}

fn next_ffmc(ffmc: f64, w: WeatherInputs) -> f64 {
    let (temp, rh, wind, rain) = (w.temp, w.rh, w.wind, w.rain_24h);
    let mut mo = 147.2 * (FFMC_MAX - ffmc) / (59.5 + ffmc);

    if rain > 0.5 {
        let rf = rain - 0.5;
        let mut wetting = 42.5 * rf * (-100.0 / (251.0 - mo)).exp() * (1.0 - (-6.93 / rf).exp());
        if mo > 150.0 {
            wetting += 0.0015 * (mo - 150.0).powi(2) * rf.sqrt();
        }
        mo = (mo + wetting).min(250.0);
    }

    let ed = 0.942 * rh.powf(0.679)
        + 11.0 * ((rh - 100.0) / 10.0).exp()
        + 0.18 * (21.1 - temp) * (1.0 - (-0.115 * rh).exp());

    let m = if mo > ed {
        let ko = 0.424 * (1.0 - (rh / 100.0).powf(1.7)) + 0.0694 * wind.sqrt() * (1.0 - (rh / 100.0).powi(8));
        let kd = ko * 0.581 * (0.0365 * temp).exp();
        ed + (mo - ed) * 10f64.powf(-kd)
    } else {
        let ew = 0.618 * rh.powf(0.753)
            + 10.0 * ((rh - 100.0) / 10.0).exp()
            + 0.18 * (21.1 - temp) * (1.0 - (-0.115 * rh).exp());
        if mo < ew {
            let dry = (100.0 - rh) / 100.0;
            let k1 = 0.424 * (1.0 - dry.powf(1.7)) + 0.0694 * wind.sqrt() * (1.0 - dry.powi(8));
            let kw = k1 * 0.581 * (0.0365 * temp).exp();
            ew - (ew - mo) * 10f64.powf(-kw)
        } else {
            mo
        }
    };

    (59.5 * (250.0 - m) / (147.2 + m)).clamp(0.0, FFMC_MAX)
}

fn next_dmc(dmc: f64, w: WeatherInputs, month: Month) -> f64 {
    let temp = w.temp.max(DMC_TEMP_FLOOR);
    let drying = 1.894 * (temp + 1.1) * (100.0 - w.rh) * DMC_DAY_LENGTH[month.index()] * 1e-4;

    let base = if w.rain_24h > 1.5 {
        let effective = 0.92 * w.rain_24h - 1.27;
        let moisture = 20.0 + 280.0 / (0.023 * dmc).exp();
        let slope = if dmc <= 33.0 {
            100.0 / (0.5 + 0.3 * dmc)
        } else if dmc <= 65.0 {
            14.0 - 1.3 * dmc.ln()
        } else {
            6.2 * dmc.ln() - 17.2
        };
        let wetted = moisture + 1000.0 * effective / (48.77 + slope * effective);
        (43.43 * (5.6348 - (wetted - 20.0).ln())).max(0.0)
    } else {
        dmc
    };

    (base + drying).max(0.0)
}

fn next_dc(dc: f64, w: WeatherInputs, month: Month) -> f64 {
    let temp = w.temp.max(DC_TEMP_FLOOR);
    let drying = ((0.36 * (temp + 2.8) + DC_DAY_LENGTH[month.index()]) / 2.0).max(0.0);

    let base = if w.rain_24h > 2.8 {
        let effective = 0.83 * w.rain_24h - 1.27;
        let moisture_eq = 800.0 * (-dc / 400.0).exp();
        (dc - 400.0 * (1.0 + 3.937 * effective / moisture_eq).ln()).max(0.0)
    } else {
        dc
    };

    base + drying
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn fmc_from_masses_examples() {
        let f = |w, d| fmc_from_masses(FuelSample { water_mass: w, dry_mass: d }).unwrap();
        assert_eq!(f(1.0, 1.0), 0.0);
        assert_eq!(f(2.0, 1.0), 100.0);
        assert_eq!(f(1.5, 1.0), 50.0);
        assert!(f(0.5, 1.0) < 0.0);
        assert_eq!(
            fmc_from_masses(FuelSample { water_mass: 1.0, dry_mass: 0.0 }),
            Err(FwiError::ZeroDryMass(0.0))
        );
    }

    #[test]
    fn fmc_from_ffmc_examples() {
        assert_eq!(fmc_from_ffmc(101.0).unwrap(), 0.0);
        // 147.2 * 16 / 144.5
        assert!(close(fmc_from_ffmc(85.0).unwrap(), 16.298_961_937_716_26, 1e-12));
        assert!(close(fmc_from_ffmc(0.0).unwrap(), 249.868_907_563_025_2, 1e-9));
        assert!(fmc_from_ffmc(101.5).is_err());
        assert!(fmc_from_ffmc(-0.1).is_err());
        assert!(fmc_from_ffmc(f64::NAN).is_err());
    }

    #[test]
    fn ffmc_from_fmc_examples() {
        assert_eq!(ffmc_from_fmc(0.0).unwrap(), 101.0);
        let m = fmc_from_ffmc(85.0).unwrap();
        assert!(close(ffmc_from_fmc(m).unwrap(), 85.0, 1e-9));
        assert!(close(ffmc_from_fmc(249.868_907_563_025_2).unwrap(), 0.0, 1e-6));
        assert!(ffmc_from_fmc(FMC_MAX + 0.1).is_err());
        assert!(ffmc_from_fmc(-1.0).is_err());
    }

    #[test]
    fn isi_examples() {
        assert!(close(isi_from(101.0, 0.0).unwrap(), 19.1152, 1e-9));
        assert!(isi_from(85.0, 10.0).unwrap() > isi_from(85.0, 0.0).unwrap());
        assert!(close(isi_from(96.0, 20.0).unwrap(), 27.176_470_779, 1e-6));
        assert!(isi_from(85.0, -1.0).is_err());
    }

    #[test]
    fn bui_examples() {
        assert_eq!(bui_from(0.0, 50.0).unwrap(), 0.0);
        assert_eq!(bui_from(0.0, 0.0).unwrap(), 0.0);
        assert!(close(bui_from(27.0, 122.0).unwrap(), 34.77, 0.05));
        assert!(close(bui_from(47.0, 321.0).unwrap(), 68.81, 0.05));
        assert!(bui_from(-1.0, 3.0).is_err());
    }

    #[test]
    fn fwi_examples() {
        assert_eq!(fwi_from(0.0, 42.0).unwrap(), 0.0);
        let v = fwi_from(6.0, 115.0).unwrap();
        assert!(close(v, 23.637_955_589, 1e-6), "{v}");
        assert!(close(v, 23.0, 1.0));
        let below = fwi_from(6.0, 80.0).unwrap();
        let above = fwi_from(6.0, 80.0 + 1e-6).unwrap();
        assert!(close(below, above, 0.5));
    }

    #[test]
    fn chain_examples() {
        let r = compute_chain(88.0, 27.0, 122.0, 10.0).unwrap();
        assert!(close(r.bui, 34.8, 0.05));
        assert_eq!(r.isi, isi_from(88.0, 10.0).unwrap());
        assert!(close(r.fwi, 11.387_804_879, 1e-6));

        let z = compute_chain(0.0, 0.0, 0.0, 0.0).unwrap();
        assert!(z.isi < 1e-3);
        assert_eq!(z.bui, 0.0);
        assert!(z.fwi < 1e-6);
    }

    const APRIL: Month = Month(4);

    #[test]
    fn daily_update_standard_test_days() {
        // First two days of the standard FWI System verification table.
        let day1 = daily_update(
            MoistureCodes { ffmc: 85.0, dmc: 6.0, dc: 15.0 },
            WeatherInputs { temp: 17.0, rh: 42.0, wind: 25.0, rain_24h: 0.0 },
            APRIL,
        )
        .unwrap();
        assert!(close(day1.ffmc, 87.692_980_092_774_45, 1e-9), "{day1:?}");
        assert!(close(day1.dmc, 8.545_051_136, 1e-9));
        assert!(close(day1.dc, 19.014, 1e-9));

        let day2 = daily_update(day1, WeatherInputs { temp: 20.0, rh: 21.0, wind: 25.0, rain_24h: 2.4 }, APRIL).unwrap();
        assert!(close(day2.ffmc, 86.247_642_195_938_41, 1e-9), "{day2:?}");
        assert!(close(day2.dmc, 10.401_859_979_351_91, 1e-9));
        assert!(close(day2.dc, 23.568, 1e-9));
    }

    #[test]
    fn daily_update_heavy_rain() {
        let july = Month::new(7).unwrap();
        let next = daily_update(
            MoistureCodes { ffmc: 90.0, dmc: 40.0, dc: 300.0 },
            WeatherInputs { temp: 12.0, rh: 80.0, wind: 5.0, rain_24h: 10.0 },
            july,
        )
        .unwrap();
        assert!(close(next.ffmc, 37.965_989_478_548_33, 1e-9), "{next:?}");
        assert!(close(next.dmc, 20.605_046_575_666_51, 1e-9));
        assert!(close(next.dc, 277.590_949_693_671_2, 1e-9));

        let aug = Month::new(8).unwrap();
        let deep = daily_update(
            MoistureCodes { ffmc: 90.0, dmc: 80.0, dc: 500.0 },
            WeatherInputs { temp: 25.0, rh: 30.0, wind: 5.0, rain_24h: 20.0 },
            aug,
        )
        .unwrap();
        assert!(close(deep.dmc, 39.675_339_679_225_2, 1e-9));
        assert!(close(deep.dc, 414.006_376_518_400_5, 1e-9));

        let mid = next_dmc(50.0, WeatherInputs { temp: 25.0, rh: 30.0, wind: 5.0, rain_24h: 5.0 }, aug);
        assert!(close(mid, 36.727_149_421_027_24, 1e-9));

        let wet = daily_update(
            MoistureCodes { ffmc: 90.0, dmc: 10.0, dc: 10.0 },
            WeatherInputs { temp: 17.0, rh: 42.0, wind: 25.0, rain_24h: 50.0 },
            APRIL,
        )
        .unwrap();
        assert!(wet.ffmc < 90.0);
        assert!(close(
            next_ffmc(90.0, WeatherInputs { temp: 17.0, rh: 42.0, wind: 25.0, rain_24h: 50.0 }),
            62.669_453_203_404_52,
            1e-9
        ));
    }

    #[test]
    fn dc_unchanged_at_temperature_floor() {
        let jan = Month::new(1).unwrap();
        let prev = MoistureCodes { ffmc: 80.0, dmc: 10.0, dc: 120.0 };
        let w = WeatherInputs { temp: DC_TEMP_FLOOR, rh: 50.0, wind: 5.0, rain_24h: 0.0 };
        let next = daily_update(prev, w, jan).unwrap();
        assert_eq!(next.dc, 120.0);
    }

    #[test]
    fn month_bounds() {
        assert!(Month::new(0).is_none());
        assert!(Month::new(13).is_none());
        assert_eq!(Month::new(12).unwrap().number(), 12);
    }
}
