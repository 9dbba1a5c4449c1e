//! Reference dataset for the D3 ducted turbine: materials, load cases,
//! factor tables and the component lives used in the system summary.

use std::collections::BTreeMap;

use crate::aero::RotorState;
use crate::bearing::{
    basic_dynamic_axial_rating, oscillating_rating, BearingCase, BearingLoads, LifeModFactors,
    SlewingBearingGeometry, BALL_EXPONENT,
};
use crate::fatigue::MarinFactors;
use crate::model::{Material, RectSection};
use crate::structural::BladeSpec;
use crate::units::PA_PER_KSI;

pub const FATIGUE_STRENGTH_FRACTION: f64 = 0.9;

/// Von Mises stress from the extreme-gust tower FEA, Pa.
pub const TOWER_STRESS: f64 = 13.56 * PA_PER_KSI;
pub const TOWER_CYCLES_PER_DAY: f64 = 1000.0;
/// Extreme-gust turbine thrust, N.
pub const TOWER_THRUST: f64 = 6035.0;

/// Worst-case flat blade bending stress, Pa.
pub const BLADE_STRESS: f64 = 6.48 * PA_PER_KSI;
pub const ROTOR_CYCLES_PER_DAY: f64 = 144_000.0;
pub const BLADE_MASS: f64 = 3.0;

pub const YAW_OSCILLATIONS_PER_DAY: f64 = 1500.0;
pub const BEARING_HALF_ARC_DEG: f64 = 30.0;
/// Ball count of the STO-145T, back-solved from the raceway-cycle figure.
pub const BEARING_BALL_COUNT_INFERRED: u32 = 30;
pub const BEARING_MODIFIED_LIFE: f64 = 1.49e6;
pub const BEARING_RACEWAY_CYCLES: f64 = 44.89e6;

/// Controller life: service estimate and the CMOS design MTTF it is
/// derived from, both in years. Not part of [`system_lives`].
pub const CONTROLLER_SERVICE_LIFE: f64 = 10.0;
pub const CONTROLLER_DESIGN_MTTF: f64 = 20.0;

/// (C_p, rpm) pairs of the blade torque sweep.
pub const TORQUE_SWEEP: [(f64, f64); 3] = [(0.5, 600.0), (0.6, 600.0), (0.4, 900.0)];

pub fn tower_material() -> Material {
    Material::from_ultimate("ASTM A36", 58.0 * PA_PER_KSI).expect("valid preset")
}

pub fn blade_material() -> Material {
    Material::new("Al 6061-T6", 45.0 * PA_PER_KSI, None, None, Some(2700.0)).expect("valid preset")
}

pub fn tower_marin() -> MarinFactors {
    MarinFactors::tower_axial()
}

pub fn blade_marin() -> MarinFactors {
    MarinFactors::blade_bending()
}

pub fn blade_section() -> RectSection {
    RectSection::new(0.185, 0.004, 1.4988).expect("valid preset")
}

pub fn blade_spec() -> BladeSpec {
    BladeSpec {
        section: blade_section(),
        material: blade_material(),
        mount_angle_phi: 0.0,
        mass: BLADE_MASS,
    }
}

/// 50-year, 3-second extreme gust on the 3 m rotor at the assumed
/// C_p = 0.40 and 600 rpm.
pub fn gust_rotor_state() -> RotorState {
    RotorState {
        radius: 1.5,
        omega: 600.0 * std::f64::consts::TAU / 60.0,
        wind_speed: 48.72,
        air_density: 1.24,
        power_coefficient: 0.40,
    }
}

pub fn bearing_life_factors() -> LifeModFactors {
    LifeModFactors::tubular_tower()
}

/// L10 implied by the quoted modified life under the tubular-tower factors.
pub const BEARING_L10: f64 = 1.7529e7;

/// Reference yaw bearing. The loads are not published, so the case carries
/// a pure axial load back-solved to reproduce [`BEARING_L10`].
pub fn bearing_case() -> BearingCase {
    let geometry = SlewingBearingGeometry {
        groove_factor_fcm: 38.0,
        rows_i: 1,
        ball_count_z: BEARING_BALL_COUNT_INFERRED,
        ball_diameter_dr: 12.7,
        contact_angle_alpha: 45.0,
        raceway_center_diameter_dm: 368.3,
    };
    let ca = basic_dynamic_axial_rating(&geometry).expect("valid preset");
    let ca_osc = oscillating_rating(ca, BEARING_HALF_ARC_DEG, BALL_EXPONENT).expect("valid preset");
    BearingCase {
        geometry,
        loads: BearingLoads {
            radial_fr: 0.0,
            axial_fa: ca_osc / BEARING_L10.cbrt(),
            moment_m: 0.0,
        },
        oscillation_half_arc_deg: BEARING_HALF_ARC_DEG,
        life_exponent_p: BALL_EXPONENT,
        factors: bearing_life_factors(),
        oscillations_per_day: YAW_OSCILLATIONS_PER_DAY,
    }
}

/// Estimated lives (years) of the lifed subsystems.
pub fn system_lives() -> BTreeMap<String, f64> {
    [
        ("tower", 38.0),
        ("bearing", 80.0),
        ("blades", 75.0),
        ("generator", 20.0),
        ("slip_ring", 80.0),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect()
}

/// Default daily counter rates.
pub fn usage_rates() -> BTreeMap<String, f64> {
    [
        ("rotor_cycles", ROTOR_CYCLES_PER_DAY),
        ("yaw_oscillations", YAW_OSCILLATIONS_PER_DAY),
        ("tower_stress_cycles", TOWER_CYCLES_PER_DAY),
        ("jack_cycles", 0.0),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect()
}
