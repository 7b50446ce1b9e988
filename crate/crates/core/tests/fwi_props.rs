use firedss::fwi::{
    bui_from, daily_update, ffmc_from_fmc, fmc_from_ffmc, fwi_from, isi_from, MoistureCodes, Month,
    WeatherInputs, FFMC_MAX,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn isi_monotone_in_wind(ffmc in 0.0..=FFMC_MAX, w1 in 0.0..120.0f64, w2 in 0.0..120.0f64) {
        let (lo, hi) = if w1 <= w2 { (w1, w2) } else { (w2, w1) };
        prop_assert!(isi_from(ffmc, lo).unwrap() <= isi_from(ffmc, hi).unwrap());
    }

    #[test]
    fn isi_monotone_in_ffmc(f1 in 0.0..=FFMC_MAX, f2 in 0.0..=FFMC_MAX, wind in 0.0..80.0f64) {
        let (lo, hi) = if f1 <= f2 { (f1, f2) } else { (f2, f1) };
        prop_assert!(isi_from(lo, wind).unwrap() <= isi_from(hi, wind).unwrap() + 1e-12);
    }

    #[test]
    fn fwi_monotone_in_both(i1 in 0.0..80.0f64, i2 in 0.0..80.0f64, b1 in 0.0..400.0f64, b2 in 0.0..400.0f64) {
        let (ilo, ihi) = if i1 <= i2 { (i1, i2) } else { (i2, i1) };
        let (blo, bhi) = if b1 <= b2 { (b1, b2) } else { (b2, b1) };
        let base = fwi_from(ilo, blo).unwrap();
        prop_assert!(base <= fwi_from(ihi, blo).unwrap() + 1e-9);
        prop_assert!(base <= fwi_from(ilo, bhi).unwrap() + 1e-9);
        prop_assert!(fwi_from(ihi, blo).unwrap() <= fwi_from(ihi, bhi).unwrap() + 1e-9);
    }

    #[test]
    fn bui_continuous_at_branch_seam(dc in 0.1..1000.0f64) {
        let seam = 0.4 * dc;
        let eps = seam * 1e-12;
        let below = bui_from(seam - eps, dc).unwrap();
        let at = bui_from(seam, dc).unwrap();
        let above = bui_from(seam + eps, dc).unwrap();
        prop_assert!((below - at).abs() <= 1e-6, "{} vs {}", below, at);
        prop_assert!((above - at).abs() <= 1e-6, "{} vs {}", above, at);
    }

    #[test]
    fn bui_nonnegative_and_finite(dmc in 0.0..400.0f64, dc in 0.0..1000.0f64) {
        let b = bui_from(dmc, dc).unwrap();
        prop_assert!(b >= 0.0);
        prop_assert!(b.is_finite());
    }

    #[test]
    fn fmc_decreases_with_ffmc(f1 in 0.0..=FFMC_MAX, f2 in 0.0..=FFMC_MAX) {
        let (lo, hi) = if f1 <= f2 { (f1, f2) } else { (f2, f1) };
        prop_assert!(fmc_from_ffmc(lo).unwrap() >= fmc_from_ffmc(hi).unwrap());
    }

    #[test]
    fn ffmc_fmc_inverse(f in 0.0..=FFMC_MAX) {
        let back = ffmc_from_fmc(fmc_from_ffmc(f).unwrap()).unwrap();
        prop_assert!((back - f).abs() < 1e-9);
    }
}

fn codes() -> impl Strategy<Value = MoistureCodes> {
    (0.0..=FFMC_MAX, 0.0..500.0f64, 0.0..1500.0f64).prop_map(|(ffmc, dmc, dc)| MoistureCodes { ffmc, dmc, dc })
}

fn weather() -> impl Strategy<Value = WeatherInputs> {
    (
        -40.0..50.0f64,
        0.0..=100.0f64,
        0.0..120.0f64,
        prop_oneof![Just(0.0), 0.0..2.0f64, 0.0..300.0f64],
    )
        .prop_map(|(temp, rh, wind, rain_24h)| WeatherInputs {
            temp,
            rh,
            wind,
            rain_24h,
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn daily_update_stays_in_range(prev in codes(), w in weather(), month in 1u8..=12) {
        let next = daily_update(prev, w, Month::new(month).unwrap()).unwrap();
        prop_assert!(next.ffmc.is_finite() && (0.0..=FFMC_MAX).contains(&next.ffmc), "{:?}", next);
        prop_assert!(next.dmc.is_finite() && next.dmc >= 0.0, "{:?}", next);
        prop_assert!(next.dc.is_finite() && next.dc >= 0.0, "{:?}", next);
    }
}

#[test]
fn inverse_on_half_step_grid() {
    for k in 0..=202 {
        let f = f64::from(k) * 0.5;
        let back = ffmc_from_fmc(fmc_from_ffmc(f).unwrap()).unwrap();
        assert!((back - f).abs() < 1e-9, "{f} -> {back}");
    }
}

#[test]
fn out_of_domain_inputs_rejected() {
    assert!(isi_from(102.0, 5.0).is_err());
    assert!(isi_from(80.0, -1.0).is_err());
    assert!(bui_from(-1.0, 5.0).is_err());
    assert!(fwi_from(f64::NAN, 5.0).is_err());
    let w = WeatherInputs {
        temp: 20.0,
        rh: 120.0,
        wind: 5.0,
        rain_24h: 0.0,
    };
    let prev = MoistureCodes {
        ffmc: 85.0,
        dmc: 6.0,
        dc: 15.0,
    };
    assert!(daily_update(prev, w, Month::new(4).unwrap()).is_err());
}
