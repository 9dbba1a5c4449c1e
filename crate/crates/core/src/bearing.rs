//! Slewing-bearing life: axial rating, oscillation correction, equivalent
//! load, L10, ANSI/ABMA modified life, raceway stress cycles.
//!
//! Ball diameter enters the rating in millimetres, as rating tables do;
//! the rating itself is treated as newtons. Moments and the raceway
//! diameter are SI (N·m, m) in [`equivalent_axial_load`].

use serde::{Deserialize, Serialize};

use crate::error::{ensure, ensure_nonnegative, ensure_positive, Result};
use crate::fatigue::DAYS_PER_YEAR;

/// Load-life exponent for ball bearings.
pub const BALL_EXPONENT: f64 = 3.0;
/// Load-life exponent for roller bearings.
pub const ROLLER_EXPONENT: f64 = 10.0 / 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlewingBearingGeometry {
    pub groove_factor_fcm: f64,
    pub rows_i: u32,
    pub ball_count_z: u32,
    /// mm.
    pub ball_diameter_dr: f64,
    /// Degrees.
    pub contact_angle_alpha: f64,
    /// mm.
    pub raceway_center_diameter_dm: f64,
}

impl SlewingBearingGeometry {
    pub fn validate(&self) -> Result<()> {
        ensure_positive("groove factor", self.groove_factor_fcm)?;
        ensure(self.rows_i >= 1, || "bearing needs at least one row".into())?;
        ensure(self.ball_count_z >= 1, || "bearing needs at least one ball".into())?;
        ensure_positive("ball diameter", self.ball_diameter_dr)?;
        ensure(
            self.contact_angle_alpha > 0.0 && self.contact_angle_alpha < 90.0,
            || format!("contact angle must be in (0, 90) degrees, got {}", self.contact_angle_alpha),
        )?;
        ensure(self.ball_diameter_dr < self.raceway_center_diameter_dm, || {
            format!(
                "ball diameter {} mm must be below raceway diameter {} mm",
                self.ball_diameter_dr, self.raceway_center_diameter_dm
            )
        })
    }

    pub fn raceway_diameter_m(&self) -> f64 {
        self.raceway_center_diameter_dm * 1e-3
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct BearingLoads {
    /// N.
    pub radial_fr: f64,
    /// N.
    pub axial_fa: f64,
    /// Overturning moment, N·m.
    pub moment_m: f64,
}

impl BearingLoads {
    pub fn validate(&self) -> Result<()> {
        ensure_nonnegative("radial load", self.radial_fr)?;
        ensure_nonnegative("axial load", self.axial_fa)?;
        ensure_nonnegative("overturning moment", self.moment_m)
    }

    pub fn scaled(&self, s: f64) -> Self {
        BearingLoads {
            radial_fr: self.radial_fr * s,
            axial_fa: self.axial_fa * s,
            moment_m: self.moment_m * s,
        }
    }
}

/// Reliability, material, lubrication and support-structure life factors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LifeModFactors {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
}

impl LifeModFactors {
    /// 90 % reliability, HRC 58 steel, recommended lubrication factor,
    /// tubular tower.
    pub fn tubular_tower() -> Self {
        LifeModFactors {
            a1: 1.00,
            a2: 1.00,
            a3: 0.10,
            a4: 0.85,
        }
    }

    pub fn unity() -> Self {
        LifeModFactors {
            a1: 1.0,
            a2: 1.0,
            a3: 1.0,
            a4: 1.0,
        }
    }

    pub fn product(&self) -> f64 {
        self.a1 * self.a2 * self.a3 * self.a4
    }

    pub fn validate(&self) -> Result<()> {
        for (name, a) in [("a1", self.a1), ("a2", self.a2), ("a3", self.a3), ("a4", self.a4)] {
            ensure(a.is_finite() && a > 0.0 && a <= 2.0, || {
                format!("life factor {name} = {a} outside (0, 2]")
            })?;
        }
        Ok(())
    }
}

/// Which count a calendar life is measured in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LifeBasis {
    Oscillations,
    RacewayCycles,
}

/// C_a = f_cm·(i·cos α)^0.7·Z^(2/3)·D_r^1.8·tan α.
pub fn basic_dynamic_axial_rating(g: &SlewingBearingGeometry) -> Result<f64> {
    g.validate()?;
    let alpha = g.contact_angle_alpha.to_radians();
    Ok(g.groove_factor_fcm
        * (g.rows_i as f64 * alpha.cos()).powf(0.7)
        * (g.ball_count_z as f64).powf(2.0 / 3.0)
        * g.ball_diameter_dr.powf(1.8)
        * alpha.tan())
}

/// C_a,osc = C_a·(180°/θ)^(1/p), θ being half the oscillation arc.
pub fn oscillating_rating(ca: f64, theta_deg: f64, p: f64) -> Result<f64> {
    ensure_nonnegative("axial rating", ca)?;
    ensure(theta_deg > 0.0 && theta_deg <= 180.0, || {
        format!("oscillation half-arc must be in (0, 180] degrees, got {theta_deg}")
    })?;
    ensure(
        (p - BALL_EXPONENT).abs() < 1e-12 || (p - ROLLER_EXPONENT).abs() < 1e-12,
        || format!("life exponent must be 3 (ball) or 10/3 (roller), got {p}"),
    )?;
    Ok(ca * (180.0 / theta_deg).powf(1.0 / p))
}

/// P_ea = 0.75·F_r + F_a + 2M/d_m, with `dm` in metres.
pub fn equivalent_axial_load(loads: &BearingLoads, dm: f64) -> Result<f64> {
    loads.validate()?;
    ensure_positive("raceway diameter", dm)?;
    Ok(0.75 * loads.radial_fr + loads.axial_fa + 2.0 * loads.moment_m / dm)
}

/// L10 = (C_a,osc/P_ea)³, counted in the rating's oscillation basis.
pub fn l10_life(ca_osc: f64, pea: f64) -> Result<f64> {
    ensure_nonnegative("oscillating rating", ca_osc)?;
    ensure_positive("equivalent load", pea)?;
    Ok((ca_osc / pea).powi(3))
}

/// L_nm = a1·a2·a3·a4·L10.
pub fn modified_life(l10: f64, f: &LifeModFactors) -> Result<f64> {
    ensure_nonnegative("L10 life", l10)?;
    f.validate()?;
    Ok(f.product() * l10)
}

/// Each oscillation loads the raceway once per ball: L_nm·Z.
pub fn raceway_stress_cycles(lnm: f64, z: u32) -> Result<f64> {
    ensure_nonnegative("modified life", lnm)?;
    ensure(z >= 1, || "ball count must be at least 1".into())?;
    Ok(lnm * z as f64)
}

/// Years to consume `cycles` at `oscillations_per_day`.
///
/// The basis only labels what `cycles` counts; the divisor is always the
/// daily oscillation rate.
pub fn bearing_calendar_life(cycles: f64, oscillations_per_day: f64, _basis: LifeBasis) -> Result<f64> {
    ensure_nonnegative("cycle count", cycles)?;
    ensure_positive("oscillations per day", oscillations_per_day)?;
    Ok(cycles / (oscillations_per_day * DAYS_PER_YEAR))
}

/// Inputs of the full pipeline, also the `bearing life` JSON document.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BearingCase {
    pub geometry: SlewingBearingGeometry,
    pub loads: BearingLoads,
    #[serde(default = "default_theta")]
    pub oscillation_half_arc_deg: f64,
    #[serde(default = "default_exponent")]
    pub life_exponent_p: f64,
    #[serde(default = "LifeModFactors::tubular_tower")]
    pub factors: LifeModFactors,
    #[serde(default = "default_rate")]
    pub oscillations_per_day: f64,
}

fn default_theta() -> f64 {
    30.0
}

fn default_exponent() -> f64 {
    BALL_EXPONENT
}

fn default_rate() -> f64 {
    1500.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BearingLifeReport {
    pub rating_ca: f64,
    pub rating_oscillating: f64,
    pub equivalent_load: f64,
    pub l10: f64,
    pub modified_life: f64,
    pub raceway_cycles: f64,
    pub years_oscillation_basis: f64,
    pub years_raceway_basis: f64,
}

pub fn bearing_life(case: &BearingCase) -> Result<BearingLifeReport> {
    let ca = basic_dynamic_axial_rating(&case.geometry)?;
    let ca_osc = oscillating_rating(ca, case.oscillation_half_arc_deg, case.life_exponent_p)?;
    let pea = equivalent_axial_load(&case.loads, case.geometry.raceway_diameter_m())?;
    let l10 = l10_life(ca_osc, pea)?;
    let lnm = modified_life(l10, &case.factors)?;
    let raceway = raceway_stress_cycles(lnm, case.geometry.ball_count_z)?;
    Ok(BearingLifeReport {
        rating_ca: ca,
        rating_oscillating: ca_osc,
        equivalent_load: pea,
        l10,
        modified_life: lnm,
        raceway_cycles: raceway,
        years_oscillation_basis: bearing_calendar_life(lnm, case.oscillations_per_day, LifeBasis::Oscillations)?,
        years_raceway_basis: bearing_calendar_life(raceway, case.oscillations_per_day, LifeBasis::RacewayCycles)?,
    })
}
