use serde::{Deserialize, Serialize};

use super::{ComponentRecord, LifeUnit, UsageProfile};
use crate::error::{ensure_nonnegative, Error, Result};
use crate::fatigue::DAYS_PER_YEAR;

/// Which life figure to measure consumption against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LifeSelector {
    #[default]
    Service,
    /// The manufacturer rating, falling back to the service life.
    Rated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RulReport {
    pub component_id: String,
    pub life: f64,
    pub remaining: f64,
    pub unit: LifeUnit,
    pub fraction_consumed: f64,
    pub overconsumed: bool,
}

pub fn remaining_service_life(
    component: &ComponentRecord,
    usage: &UsageProfile,
    elapsed_years: f64,
    selector: LifeSelector,
) -> Result<RulReport> {
    ensure_nonnegative("elapsed years", elapsed_years)?;
    let life = match selector {
        LifeSelector::Rated => component.rated_life.as_ref().or(component.service_life.as_ref()),
        LifeSelector::Service => component.service_life.as_ref(),
    }
    .ok_or_else(|| Error::NotLifed(component.id.clone()))?;

    let consumed = match life.unit {
        LifeUnit::Years => elapsed_years,
        LifeUnit::Cycles => {
            let counter = life.counter.as_deref().unwrap_or_default();
            let rate = usage
                .rate(counter)
                .ok_or_else(|| Error::UnknownCounter(counter.to_string()))?;
            elapsed_years * DAYS_PER_YEAR * rate
        }
    };
    let fraction = consumed / life.value;
    Ok(RulReport {
        component_id: component.id.clone(),
        life: life.value,
        remaining: (life.value - consumed).max(0.0),
        unit: life.unit,
        fraction_consumed: fraction.min(1.0),
        overconsumed: fraction > 1.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schedule::Registry;

    #[test]
    fn generator_quarter_consumed() {
        let reg = Registry::default_dwt();
        let g = reg.component("Generator").unwrap();
        let r = remaining_service_life(g, &UsageProfile::default(), 5.0, LifeSelector::Service).unwrap();
        assert_eq!(r.remaining, 15.0);
        assert_eq!(r.fraction_consumed, 0.25);
        assert_eq!(r.unit, LifeUnit::Years);
        let r = remaining_service_life(g, &UsageProfile::default(), 0.0, LifeSelector::Service).unwrap();
        assert_eq!((r.remaining, r.fraction_consumed), (20.0, 0.0));
    }

    #[test]
    fn overconsumption_clamped_and_flagged() {
        let reg = Registry::default_dwt();
        let g = reg.component("Generator").unwrap();
        let r = remaining_service_life(g, &UsageProfile::default(), 30.0, LifeSelector::Service).unwrap();
        assert_eq!(r.fraction_consumed, 1.0);
        assert_eq!(r.remaining, 0.0);
        assert!(r.overconsumed);
    }

    #[test]
    fn unlifed_component_errors() {
        let reg = Registry::default_dwt();
        let c = reg.component("Voltsys Controller").unwrap();
        let err = remaining_service_life(c, &UsageProfile::default(), 1.0, LifeSelector::Service).unwrap_err();
        assert!(matches!(err, Error::NotLifed(_)));
    }

    #[test]
    fn slip_ring_against_rating() {
        let reg = Registry::default_dwt();
        let c = reg.component("Slip Ring").unwrap();
        let r = remaining_service_life(c, &UsageProfile::default(), 36.5, LifeSelector::Rated).unwrap();
        assert_eq!(r.unit, LifeUnit::Cycles);
        assert!((r.fraction_consumed - 0.4996).abs() < 1e-4, "{}", r.fraction_consumed);
        let mut usage = UsageProfile::default();
        usage.counters.remove("yaw_oscillations");
        let err = remaining_service_life(c, &usage, 1.0, LifeSelector::Rated).unwrap_err();
        assert!(matches!(err, Error::UnknownCounter(_)));
    }
}
