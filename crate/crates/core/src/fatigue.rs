//! Stress-life fatigue: Marin-modified endurance limit and the
//! three-parameter S-N curve σ = a·N^b anchored at 10³ and 10⁶ cycles.

use serde::{Deserialize, Serialize};

use crate::error::{ensure, ensure_nonnegative, ensure_positive, Result};
use crate::model::Material;

pub const DAYS_PER_YEAR: f64 = 365.0;

/// Surface, size, load, temperature, reliability and miscellaneous factors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarinFactors {
    pub ka: f64,
    pub kb: f64,
    pub kc: f64,
    pub kd: f64,
    pub ke: f64,
    pub kf: f64,
}

impl MarinFactors {
    pub fn new(ka: f64, kb: f64, kc: f64, kd: f64, ke: f64, kf: f64) -> Result<Self> {
        let k = MarinFactors {
            ka,
            kb,
            kc,
            kd,
            ke,
            kf,
        };
        k.validate()?;
        Ok(k)
    }

    pub fn unity() -> Self {
        MarinFactors {
            ka: 1.0,
            kb: 1.0,
            kc: 1.0,
            kd: 1.0,
            ke: 1.0,
            kf: 1.0,
        }
    }

    /// Machined A36 tower in axial loading, 95 % reliability.
    pub fn tower_axial() -> Self {
        MarinFactors {
            ka: 0.92,
            kb: 1.00,
            kc: 0.85,
            kd: 1.00,
            ke: 0.87,
            kf: 1.00,
        }
    }

    /// Pressed 6061-T6 blade in bending, 95 % reliability.
    pub fn blade_bending() -> Self {
        MarinFactors {
            ka: 1.01,
            kb: 0.89,
            kc: 1.00,
            kd: 1.00,
            ke: 0.87,
            kf: 1.00,
        }
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "tower" => Some(Self::tower_axial()),
            "blade" => Some(Self::blade_bending()),
            "unity" | "none" => Some(Self::unity()),
            _ => None,
        }
    }

    pub fn as_array(&self) -> [f64; 6] {
        [self.ka, self.kb, self.kc, self.kd, self.ke, self.kf]
    }

    pub fn product(&self) -> f64 {
        self.as_array().iter().product()
    }

    pub fn validate(&self) -> Result<()> {
        for (name, k) in ["ka", "kb", "kc", "kd", "ke", "kf"]
            .iter()
            .zip(self.as_array())
        {
            ensure(k.is_finite() && k > 0.0 && k <= 1.5, || {
                format!("Marin factor {name} = {k} outside (0, 1.5]")
            })?;
        }
        Ok(())
    }
}

/// Constants of the finite-life curve σ' = a·N^b.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SnConstants {
    /// Pa.
    pub a: f64,
    pub b: f64,
    /// Fatigue strength fraction at 10³ cycles.
    pub f: f64,
}

impl SnConstants {
    pub fn new(a: f64, b: f64, f: f64) -> Result<Self> {
        ensure_positive("S-N coefficient a", a)?;
        ensure(b.is_finite() && b < 0.0, || {
            format!("S-N exponent b must be negative, got {b}")
        })?;
        ensure(f.is_finite() && f > 0.0 && f <= 1.0, || {
            format!("fatigue strength fraction must be in (0, 1], got {f}")
        })?;
        Ok(SnConstants { a, b, f })
    }

    /// Curve stress at `cycles`.
    pub fn stress_at(&self, cycles: f64) -> f64 {
        self.a * cycles.powf(self.b)
    }

    /// Curve value at 10⁶ cycles, i.e. the modified endurance limit.
    pub fn endurance_limit(&self) -> f64 {
        self.stress_at(1e6)
    }

    /// Curve value at 10³ cycles, i.e. f·S_ut.
    pub fn low_cycle_strength(&self) -> f64 {
        self.stress_at(1e3)
    }
}

/// Cycle count plus the advisories attached to where on the curve it fell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LifeEstimate {
    pub cycles: f64,
    /// Stress below S_e: the power law is extrapolated past the knee.
    pub below_endurance_extrapolation: bool,
    /// Stress above f·S_ut: outside the high-cycle regime.
    pub low_cycle: bool,
}

/// S_e' = 0.5·S_ut.
pub fn endurance_limit_unmodified(material: &Material) -> f64 {
    0.5 * material.ultimate_tensile_strength()
}

/// S_e = ka·kb·kc·kd·ke·kf·S_e'.
pub fn marin_modified_endurance(se_prime: f64, k: &MarinFactors) -> Result<f64> {
    ensure_positive("unmodified endurance limit", se_prime)?;
    k.validate()?;
    Ok(k.as_array().iter().fold(se_prime, |acc, &ki| acc * ki))
}

/// a = (f·S_ut)²/S_e, b = −⅓·log₁₀(f·S_ut/S_e).
pub fn sn_constants(s_ut: f64, s_e: f64, f: f64) -> Result<SnConstants> {
    ensure_positive("ultimate tensile strength", s_ut)?;
    ensure_positive("endurance limit", s_e)?;
    ensure(f.is_finite() && f > 0.0 && f <= 1.0, || {
        format!("fatigue strength fraction must be in (0, 1], got {f}")
    })?;
    let fs = f * s_ut;
    ensure(fs > s_e, || {
        format!("f·S_ut = {fs} Pa must exceed S_e = {s_e} Pa")
    })?;
    let a = fs * fs / s_e;
    let b = -(fs / s_e).log10() / 3.0;
    SnConstants::new(a, b, f)
}

/// N = (σ'/a)^(1/b) for a fully reversed stress amplitude σ'.
pub fn cycles_to_failure(sigma_rev: f64, c: &SnConstants) -> Result<LifeEstimate> {
    ensure_positive("reversed stress", sigma_rev)?;
    let cycles = (sigma_rev / c.a).powf(1.0 / c.b);
    let tol = 1e-12 * sigma_rev;
    Ok(LifeEstimate {
        cycles,
        below_endurance_extrapolation: sigma_rev < c.endurance_limit() - tol,
        low_cycle: sigma_rev > c.low_cycle_strength() + tol,
    })
}

/// Calendar years for `cycles` at a steady daily rate (365-day year).
pub fn cycles_to_calendar(cycles: f64, cycles_per_day: f64) -> Result<f64> {
    ensure_nonnegative("cycle count", cycles)?;
    ensure_positive("cycles per day", cycles_per_day)?;
    Ok(cycles / (cycles_per_day * DAYS_PER_YEAR))
}

/// Endurance limit, S-N constants and life for one stress amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FatigueReport {
    pub endurance_unmodified: f64,
    pub endurance_modified: f64,
    pub constants: SnConstants,
    pub life: LifeEstimate,
    pub years: Option<f64>,
}

pub fn fatigue_pipeline(
    material: &Material,
    marin: &MarinFactors,
    f: f64,
    sigma_rev: f64,
    cycles_per_day: Option<f64>,
) -> Result<FatigueReport> {
    let se_prime = endurance_limit_unmodified(material);
    let se = marin_modified_endurance(se_prime, marin)?;
    let constants = sn_constants(material.ultimate_tensile_strength(), se, f)?;
    let life = cycles_to_failure(sigma_rev, &constants)?;
    let years = cycles_per_day
        .map(|rate| cycles_to_calendar(life.cycles, rate))
        .transpose()?;
    Ok(FatigueReport {
        endurance_unmodified: se_prime,
        endurance_modified: se,
        constants,
        life,
        years,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::PA_PER_KSI;
    use proptest::prelude::*;

    const KSI: f64 = PA_PER_KSI;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn unmodified_endurance_is_half_ultimate() {
        let m = Material::from_ultimate("A36", 58.0 * KSI).unwrap();
        assert!(rel(endurance_limit_unmodified(&m), 29.0 * KSI) < 1e-15);
        let m = Material::from_ultimate("6061-T6", 45.0 * KSI).unwrap();
        assert!(rel(endurance_limit_unmodified(&m), 22.5 * KSI) < 1e-15);
    }

    #[test]
    fn marin_chain_presets() {
        let tower = marin_modified_endurance(29.0 * KSI, &MarinFactors::tower_axial()).unwrap();
        assert!(rel(tower, 19.68 * KSI) < 0.005, "{}", tower / KSI);
        assert!(rel(tower, 19.72986 * KSI) < 1e-6);
        let blade = marin_modified_endurance(22.5 * KSI, &MarinFactors::blade_bending()).unwrap();
        assert!(rel(blade, 17.6 * KSI) < 0.005, "{}", blade / KSI);
        let same = marin_modified_endurance(29.0 * KSI, &MarinFactors::unity()).unwrap();
        assert_eq!(same, 29.0 * KSI);
    }

    #[test]
    fn marin_factor_out_of_range() {
        assert!(MarinFactors::new(1.6, 1.0, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(MarinFactors::new(0.0, 1.0, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(marin_modified_endurance(-1.0, &MarinFactors::unity()).is_err());
    }

    #[test]
    fn blade_sn_constants() {
        let c = sn_constants(45.0 * KSI, 17.6 * KSI, 0.9).unwrap();
        assert!(rel(c.a / KSI, 93.196) < 1e-4, "{}", c.a / KSI);
        assert!(rel(c.b, -0.1206) < 1e-3, "{}", c.b);
    }

    #[test]
    fn tower_sn_constants() {
        // Hand evaluation: (52.2)^2 / 19.72986 = 138.108; log10(52.2/19.72986)/3 = 0.14085.
        let c = sn_constants(58.0 * KSI, 19.72986 * KSI, 0.9).unwrap();
        assert!(rel(c.a / KSI, 138.108) < 1e-4, "{}", c.a / KSI);
        assert!(rel(c.b, -0.140853) < 1e-4, "{}", c.b);
    }

    #[test]
    fn degenerate_sn_boundary_rejected() {
        assert!(sn_constants(20.0 * KSI, 18.0 * KSI, 0.9).is_err());
        assert!(sn_constants(20.0 * KSI, 19.0 * KSI, 0.9).is_err());
    }

    #[test]
    fn sn_curve_hits_its_anchors() {
        let c = sn_constants(45.0 * KSI, 17.6 * KSI, 0.9).unwrap();
        assert!(rel(c.endurance_limit(), 17.6 * KSI) < 1e-12);
        assert!(rel(c.low_cycle_strength(), 0.9 * 45.0 * KSI) < 1e-12);
    }

    #[test]
    fn stress_equal_to_a_is_one_cycle() {
        let c = SnConstants::new(93.196 * KSI, -0.1206, 0.9).unwrap();
        let n = cycles_to_failure(c.a, &c).unwrap();
        assert!((n.cycles - 1.0).abs() < 1e-12);
        assert!(n.low_cycle);
    }

    #[test]
    fn tower_and_blade_lives() {
        let tower = fatigue_pipeline(
            &Material::from_ultimate("A36", 58.0 * KSI).unwrap(),
            &MarinFactors::tower_axial(),
            0.9,
            13.56 * KSI,
            Some(1000.0),
        )
        .unwrap();
        assert!(rel(tower.life.cycles, 1.4e7) < 0.05, "{}", tower.life.cycles);
        assert!(tower.years.unwrap() > 38.0);
        assert!(tower.life.below_endurance_extrapolation);

        let blade = fatigue_pipeline(
            &Material::from_ultimate("6061-T6", 45.0 * KSI).unwrap(),
            &MarinFactors::blade_bending(),
            0.9,
            6.48 * KSI,
            Some(144_000.0),
        )
        .unwrap();
        assert!(rel(blade.life.cycles, 4.0e9) < 0.05, "{}", blade.life.cycles);
        assert!(rel(blade.years.unwrap(), 75.0) < 0.01, "{:?}", blade.years);
    }

    #[test]
    fn calendar_conversion() {
        assert!((cycles_to_calendar(1.4e7, 1000.0).unwrap() - 38.356).abs() < 1e-3);
        assert!((cycles_to_calendar(4.0e9, 144_000.0).unwrap() - 76.104).abs() < 1e-3);
        assert_eq!(cycles_to_calendar(0.0, 10.0).unwrap(), 0.0);
        assert!(cycles_to_calendar(1.0, 0.0).is_err());
        assert!(cycles_to_failure(0.0, &SnConstants::new(1.0, -0.1, 0.9).unwrap()).is_err());
    }

    proptest! {
        #[test]
        fn life_decreases_with_stress(
            s1 in 1.0e6f64..5.0e8,
            ds in 1.0e3f64..1.0e8,
            a in 1.0e8f64..2.0e9,
            b in -0.3f64..-0.02,
        ) {
            let c = SnConstants::new(a, b, 0.9).unwrap();
            let n1 = cycles_to_failure(s1, &c).unwrap().cycles;
            let n2 = cycles_to_failure(s1 + ds, &c).unwrap().cycles;
            prop_assert!(n1 > n2 || (n1.is_infinite() && n2.is_infinite()));
        }

        #[test]
        fn curve_round_trip(
            s in 1.0e7f64..5.0e8,
            a in 5.0e8f64..2.0e9,
            b in -0.2f64..-0.05,
        ) {
            let c = SnConstants::new(a, b, 0.9).unwrap();
            let n = cycles_to_failure(s, &c).unwrap().cycles;
            prop_assert!(rel(c.stress_at(n), s) < 1e-9);
        }

        #[test]
        fn marin_is_multiplicative(idx in 0usize..6, scale in 0.2f64..1.4, se in 1.0e7f64..1.0e9) {
            let base = MarinFactors::new(0.9, 0.95, 0.85, 1.0, 0.87, 1.0).unwrap();
            let mut arr = base.as_array();
            arr[idx] *= scale;
            prop_assume!(arr[idx] <= 1.5);
            let scaled = MarinFactors::new(arr[0], arr[1], arr[2], arr[3], arr[4], arr[5]).unwrap();
            let r0 = marin_modified_endurance(se, &base).unwrap();
            let r1 = marin_modified_endurance(se, &scaled).unwrap();
            prop_assert!(rel(r1, r0 * scale) < 1e-14);
        }
    }
}
