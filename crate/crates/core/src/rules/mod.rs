//! Horn rules over the triple store and the danger-band classifiers.

mod bands;
mod engine;
mod syntax;

pub use bands::{
    classify_difficulty_of_control, classify_fire_intensity, classify_ignition_potential,
    classify_mopup_needs, classify_rate_of_spread, rain_override, wind_risk, Band, BandTable,
    FireStop, Indicator, WindRisk, DIFFICULTY_OF_CONTROL, FIRE_INTENSITY, IGNITION_POTENTIAL,
    MOPUP_NEEDS, RAIN_THRESHOLD, RATE_OF_SPREAD, WIND_THRESHOLD,
};
pub use engine::{commit, forward_chain, greater_than, InferredFact};
pub use syntax::{parse_rules, Arg, Rule, RuleAtom, RuleHead, RuleSet};

/// The shipped `rules/fwi.rules`.
pub const FWI_RULES: &str = include_str!("../../../../rules/fwi.rules");

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RuleError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsafe rule: {0}")]
    Unsafe(String),
    #[error("invalid rule: {0}")]
    Invalid(String),
    #[error("{indicator} value {value} is out of range")]
    Domain { indicator: Indicator, value: f64 },
}

/// The shipped rule set.
pub fn fwi_rules() -> RuleSet {
    parse_rules(FWI_RULES).expect("shipped rule file parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_rules_load() {
        let rs = fwi_rules();
        assert_eq!(rs.len(), 27);
        assert_eq!(parse_rules(&rs.to_string()).unwrap(), rs);
    }

    #[test]
    fn shipped_thresholds_match_band_tables() {
        let rs = fwi_rules();
        for ind in Indicator::ALL {
            let rules: Vec<_> = rs.iter().filter(|r| r.head().property == ind.head_property()).collect();
            match ind.bands() {
                Some(table) => {
                    assert_eq!(rules.len(), 5, "{ind}");
                    for (rule, (t, label)) in rules.iter().zip(table.bands) {
                        assert_eq!(rule.threshold(), Some(*t));
                        assert_eq!(rule.head().object, Arg::Name(label.to_string()));
                    }
                }
                None => assert_eq!(rules.len(), 1, "{ind}"),
            }
        }
    }
}
