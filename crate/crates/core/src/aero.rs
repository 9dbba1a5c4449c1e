//! Rotor power/torque coefficients and the ducted Betz limit.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{ensure, ensure_nonnegative, ensure_positive, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotorState {
    /// m.
    pub radius: f64,
    /// rad/s.
    pub omega: f64,
    /// Free-stream wind speed, m/s.
    pub wind_speed: f64,
    /// kg/m³.
    pub air_density: f64,
    pub power_coefficient: f64,
}

impl RotorState {
    pub fn validate(&self) -> Result<()> {
        ensure_positive("rotor radius", self.radius)?;
        ensure_nonnegative("rotor speed", self.omega)?;
        ensure_positive("wind speed", self.wind_speed)?;
        ensure_positive("air density", self.air_density)?;
        ensure(
            self.power_coefficient > 0.0 && self.power_coefficient < 1.0,
            || format!("power coefficient must be in (0, 1), got {}", self.power_coefficient),
        )
    }

    pub fn swept_area(&self) -> f64 {
        PI * self.radius * self.radius
    }
}

/// λ = R·ω/V, which also equals C_p/C_q.
pub fn tip_speed_ratio(state: &RotorState) -> Result<f64> {
    ensure_positive("wind speed", state.wind_speed)?;
    Ok(state.radius * state.omega / state.wind_speed)
}

/// C_q = C_p/λ.
pub fn torque_coefficient(cp: f64, lambda: f64) -> Result<f64> {
    if lambda == 0.0 {
        return Err(Error::validation("torque coefficient undefined at zero tip-speed ratio"));
    }
    ensure_positive("tip-speed ratio", lambda)?;
    Ok(cp / lambda)
}

/// T = ½·C_q·ρ·A·V²·R.
pub fn rotor_torque(state: &RotorState) -> Result<f64> {
    state.validate()?;
    let cq = torque_coefficient(state.power_coefficient, tip_speed_ratio(state)?)?;
    Ok(torque_from_coefficient(cq, state))
}

pub(crate) fn torque_from_coefficient(cq: f64, state: &RotorState) -> f64 {
    0.5 * cq * state.air_density * state.swept_area() * state.wind_speed.powi(2) * state.radius
}

/// P = T·ω.
pub fn rotor_power(torque: f64, omega: f64) -> f64 {
    torque * omega
}

/// C_p = 2P/(ρ·A·V³), the inverse of the power definition.
pub fn power_coefficient_from_power(power: f64, state: &RotorState) -> f64 {
    2.0 * power / (state.air_density * state.swept_area() * state.wind_speed.powi(3))
}

/// C_p,max = (16/27)·(1 − a₀).
pub fn ducted_betz_limit(a0: f64) -> Result<f64> {
    ensure((0.0..=1.0).contains(&a0), || {
        format!("axial induction factor must be in [0, 1], got {a0}")
    })?;
    Ok(16.0 / 27.0 * (1.0 - a0))
}

/// One row of a torque sweep over (C_p, rpm).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TorqueRow {
    pub power_coefficient: f64,
    pub rpm: f64,
    pub tip_speed_ratio: f64,
    pub torque_coefficient: f64,
    /// N·m.
    pub torque: f64,
    /// W.
    pub power: f64,
}

pub fn torque_row(base: &RotorState, cp: f64, rpm: f64) -> Result<TorqueRow> {
    let state = RotorState {
        omega: rpm * std::f64::consts::TAU / 60.0,
        power_coefficient: cp,
        ..*base
    };
    state.validate()?;
    let lambda = tip_speed_ratio(&state)?;
    let cq = torque_coefficient(cp, lambda)?;
    let torque = torque_from_coefficient(cq, &state);
    Ok(TorqueRow {
        power_coefficient: cp,
        rpm,
        tip_speed_ratio: lambda,
        torque_coefficient: cq,
        torque,
        power: rotor_power(torque, state.omega),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn gust_tip_speed_ratio() {
        let s = presets::gust_rotor_state();
        assert!((tip_speed_ratio(&s).unwrap() - 1.934).abs() < 5e-4);
        let still = RotorState { omega: 0.0, ..s };
        assert_eq!(tip_speed_ratio(&still).unwrap(), 0.0);
        let fast = RotorState { omega: 2.0 * s.omega, ..s };
        assert!(rel(tip_speed_ratio(&fast).unwrap(), 2.0 * tip_speed_ratio(&s).unwrap()) < 1e-15);
    }

    #[test]
    fn torque_coefficients() {
        assert!(rel(torque_coefficient(0.40, 1.934).unwrap(), 0.207) < 0.005);
        assert_eq!(torque_coefficient(1.3, 1.3).unwrap(), 1.0);
        assert!((torque_coefficient(0.5, 1.934).unwrap() - 0.2585).abs() < 5e-5);
        assert!(torque_coefficient(0.4, 0.0).is_err());
    }

    #[test]
    fn gust_torque_and_sweep() {
        let s = presets::gust_rotor_state();
        assert!(rel(rotor_torque(&s).unwrap(), 3231.0) < 0.005);
        for (cp, rpm, expected) in [(0.5, 600.0, 4027.0), (0.6, 600.0, 4838.0), (0.4, 900.0, 2154.0)] {
            let row = torque_row(&s, cp, rpm).unwrap();
            assert!(rel(row.torque, expected) < 0.005, "{cp} {rpm}: {}", row.torque);
        }
    }

    #[test]
    fn zero_wind_rejected() {
        let s = RotorState { wind_speed: 0.0, ..presets::gust_rotor_state() };
        assert!(rotor_torque(&s).is_err());
    }

    #[test]
    fn power_product() {
        assert_eq!(rotor_power(0.0, 62.8), 0.0);
        assert!(rel(rotor_power(3227.0, 62.832), 202_758.9) < 1e-6);
    }

    #[test]
    fn betz() {
        assert!((ducted_betz_limit(0.0).unwrap() - 0.592_592_592_6).abs() < 1e-9);
        assert_eq!(ducted_betz_limit(1.0).unwrap(), 0.0);
        assert!((ducted_betz_limit(0.1).unwrap() - 0.533_333_333_3).abs() < 1e-9);
        assert!(ducted_betz_limit(1.1).is_err());
        assert!(ducted_betz_limit(-0.1).is_err());
    }

    #[test]
    fn torque_quadratic_in_wind_at_fixed_cq() {
        let s = presets::gust_rotor_state();
        let doubled = RotorState { wind_speed: 2.0 * s.wind_speed, ..s };
        let t1 = torque_from_coefficient(0.2, &s);
        let t2 = torque_from_coefficient(0.2, &doubled);
        assert!(rel(t2, 4.0 * t1) < 1e-14);
    }

    proptest! {
        #[test]
        fn power_coefficient_closure(
            radius in 0.2f64..5.0,
            rpm in 10.0f64..1500.0,
            v in 1.0f64..60.0,
            rho in 0.9f64..1.4,
            cp in 0.01f64..0.59,
        ) {
            let s = RotorState {
                radius,
                omega: rpm * std::f64::consts::TAU / 60.0,
                wind_speed: v,
                air_density: rho,
                power_coefficient: cp,
            };
            let t = rotor_torque(&s).unwrap();
            let p = rotor_power(t, s.omega);
            prop_assert!(rel(power_coefficient_from_power(p, &s), cp) < 1e-9);
        }

        #[test]
        fn betz_is_affine(a in 0.0f64..1.0) {
            let mid = ducted_betz_limit(a).unwrap();
            let lin = ducted_betz_limit(0.0).unwrap() * (1.0 - a);
            prop_assert!((mid - lin).abs() < 1e-15);
        }
    }
}
