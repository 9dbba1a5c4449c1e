//! Foundation ballast, eccentric column (secant formula) and blade
//! section stresses.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{ensure, ensure_nonnegative, ensure_positive, Error, Result};
use crate::model::{ColumnSpec, Material, RectSection};
use crate::units::STANDARD_GRAVITY;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BallastSpec {
    /// N.
    pub turbine_thrust: f64,
    /// Largest nacelle diameter, m.
    pub nacelle_diameter: f64,
    pub safety_factor: f64,
    /// m.
    pub base_diameter: f64,
    /// m².
    pub base_area: f64,
    /// kg/m³.
    pub ballast_mass_density: f64,
}

impl BallastSpec {
    pub fn validate(&self) -> Result<()> {
        ensure_positive("turbine thrust", self.turbine_thrust)?;
        ensure_positive("nacelle diameter", self.nacelle_diameter)?;
        ensure(self.safety_factor.is_finite() && self.safety_factor >= 1.0, || {
            format!("safety factor must be at least 1, got {}", self.safety_factor)
        })?;
        ensure_positive("base diameter", self.base_diameter)?;
        ensure_positive("base area", self.base_area)?;
        ensure_positive("ballast density", self.ballast_mass_density)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BladeSpec {
    pub section: RectSection,
    pub material: Material,
    /// Degrees from the flat (horizontal) position.
    pub mount_angle_phi: f64,
    /// kg.
    pub mass: f64,
}

impl BladeSpec {
    pub fn validate(&self) -> Result<()> {
        ensure_nonnegative("blade mass", self.mass)?;
        ensure((0.0..=90.0).contains(&self.mount_angle_phi), || {
            format!("mount angle must be in [0, 90] degrees, got {}", self.mount_angle_phi)
        })
    }
}

/// Which principal axis the bending moment acts about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// Wide face horizontal; bending about the strong-in-width axis, I = b·t³/12.
    Flat,
    /// Wide face vertical, I = t·b³/12.
    Upright,
}

/// Ballast weight that balances the thrust moment about the base edge.
pub fn ballast_required_weight(spec: &BallastSpec) -> Result<f64> {
    spec.validate()?;
    Ok(spec.turbine_thrust * spec.nacelle_diameter * spec.safety_factor / spec.base_diameter)
}

/// Ballast fill height carrying weight `weight` over the base area.
pub fn ballast_height_for_weight(weight: f64, spec: &BallastSpec) -> Result<f64> {
    ensure_nonnegative("ballast weight", weight)?;
    spec.validate()?;
    Ok(weight / (spec.ballast_mass_density * STANDARD_GRAVITY * spec.base_area))
}

/// Argument of the secant, √(P/EI)·l/2.
fn secant_argument(col: &ColumnSpec, e_mod: f64) -> f64 {
    (col.load_p / (e_mod * col.moment_i)).sqrt() * col.height_l / 2.0
}

/// Midspan deflection δ = e·[sec(√(P/EI)·l/2) − 1] of a pinned column.
pub fn secant_deflection(col: &ColumnSpec, e_mod: f64) -> Result<f64> {
    col.validate()?;
    ensure_positive("elastic modulus", e_mod)?;
    let arg = secant_argument(col, e_mod);
    if arg >= FRAC_PI_2 {
        return Err(Error::Buckling { argument: arg });
    }
    // sec x - 1 without cancellation at small x.
    let h = (0.5 * arg).sin();
    Ok(col.eccentricity_e * 2.0 * h * h / arg.cos())
}

/// Euler stress π²E(k/l)², the upper end of the secant formula's domain.
pub fn euler_stress(col: &ColumnSpec, e_mod: f64) -> f64 {
    let slender = col.gyration_k / col.height_l;
    std::f64::consts::PI.powi(2) * e_mod * slender * slender
}

/// Largest load P whose peak fibre stress reaches S_yc, i.e. the root of
///
/// ```text
/// P/A = S_yc / (1 + (ec/k²)·sec((l/2k)·√(P/AE)))
/// ```
///
/// found by bisection on (0, P_euler).
pub fn secant_allowable_load(col: &ColumnSpec, material: &Material) -> Result<f64> {
    col.validate()?;
    let s_yc = material.yield_strength_compressive().ok_or_else(|| {
        Error::validation(format!("material `{}` has no compressive yield strength", material.name()))
    })?;
    let e_mod = material.elastic_modulus().ok_or_else(|| {
        Error::validation(format!("material `{}` has no elastic modulus", material.name()))
    })?;
    let ratio = col.eccentricity_ratio();
    let half_slenderness = col.height_l / (2.0 * col.gyration_k);
    let sigma_euler = euler_stress(col, e_mod);

    if ratio == 0.0 {
        if s_yc >= sigma_euler {
            return Err(Error::ColumnUnstable(format!(
                "yield stress {s_yc} Pa is not reached before the Euler stress {sigma_euler} Pa"
            )));
        }
        return Ok(s_yc * col.area_a);
    }

    // Increasing in sigma on (0, sigma_euler): -S_yc at 0, +inf at the pole.
    let residual = |sigma: f64| {
        let arg = half_slenderness * (sigma / e_mod).sqrt();
        sigma * (1.0 + ratio / arg.cos()) - s_yc
    };

    let mut lo = 0.0_f64;
    let mut hi = sigma_euler;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if residual(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    let sigma = 0.5 * (lo + hi);
    if !(sigma > 0.0 && sigma < sigma_euler) || residual(sigma).abs() > 1e-8 * s_yc {
        return Err(Error::ColumnUnstable(format!(
            "no root of the secant formula below the Euler stress {sigma_euler} Pa"
        )));
    }
    Ok(sigma * col.area_a)
}

/// Root moment of a cantilevered blade under its own weight, m·g·L/2.
pub fn blade_root_bending_moment(blade: &BladeSpec) -> Result<f64> {
    blade.validate()?;
    Ok(blade.mass * STANDARD_GRAVITY * blade.section.span() / 2.0)
}

/// σ = y·M/I for the rectangular section in the given orientation.
pub fn rect_bending_stress(moment: f64, s: &RectSection, orientation: Orientation) -> Result<f64> {
    ensure_nonnegative("bending moment", moment)?;
    let (b, t) = (s.width(), s.thickness());
    let (y, i) = match orientation {
        Orientation::Flat => (t / 2.0, b * t.powi(3) / 12.0),
        Orientation::Upright => (b / 2.0, t * b.powi(3) / 12.0),
    };
    Ok(y * moment / i)
}

/// Peak torsional shear of a solid rectangle, τ = T·(3 + 1.8·t/b)/(b·t²).
pub fn rect_torsion_max_shear(torque: f64, s: &RectSection) -> Result<f64> {
    ensure_nonnegative("torque", torque)?;
    let (b, t) = (s.width(), s.thickness());
    Ok(torque * (3.0 + 1.8 * t / b) / (b * t * t))
}
