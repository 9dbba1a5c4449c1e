//! Shared value types: materials and the section/column geometry used by
//! the fatigue and structural routines. All fields are SI.

use serde::{Deserialize, Serialize};

use crate::error::{ensure, ensure_positive, Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMaterial")]
pub struct Material {
    name: String,
    ultimate_tensile_strength: f64,
    yield_strength_compressive: Option<f64>,
    elastic_modulus: Option<f64>,
    mass_density: Option<f64>,
}

#[derive(Deserialize)]
struct RawMaterial {
    name: String,
    ultimate_tensile_strength: f64,
    #[serde(default)]
    yield_strength_compressive: Option<f64>,
    #[serde(default)]
    elastic_modulus: Option<f64>,
    #[serde(default)]
    mass_density: Option<f64>,
}

impl TryFrom<RawMaterial> for Material {
    type Error = Error;

    fn try_from(raw: RawMaterial) -> Result<Self> {
        Material::new(
            raw.name,
            raw.ultimate_tensile_strength,
            raw.yield_strength_compressive,
            raw.elastic_modulus,
            raw.mass_density,
        )
    }
}

impl Material {
    /// Stresses in Pa, density in kg/m³.
    pub fn new(
        name: impl Into<String>,
        ultimate_tensile_strength: f64,
        yield_strength_compressive: Option<f64>,
        elastic_modulus: Option<f64>,
        mass_density: Option<f64>,
    ) -> Result<Self> {
        ensure_positive("ultimate tensile strength", ultimate_tensile_strength)?;
        if let Some(v) = yield_strength_compressive {
            ensure_positive("compressive yield strength", v)?;
            ensure(v <= ultimate_tensile_strength, || {
                format!(
                    "compressive yield strength {v} Pa exceeds ultimate tensile strength {ultimate_tensile_strength} Pa"
                )
            })?;
        }
        if let Some(v) = elastic_modulus {
            ensure_positive("elastic modulus", v)?;
        }
        if let Some(v) = mass_density {
            ensure_positive("mass density", v)?;
        }
        Ok(Material {
            name: name.into(),
            ultimate_tensile_strength,
            yield_strength_compressive,
            elastic_modulus,
            mass_density,
        })
    }

    /// Material known only by its ultimate strength.
    pub fn from_ultimate(name: impl Into<String>, ultimate_tensile_strength: f64) -> Result<Self> {
        Material::new(name, ultimate_tensile_strength, None, None, None)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ultimate_tensile_strength(&self) -> f64 {
        self.ultimate_tensile_strength
    }

    pub fn yield_strength_compressive(&self) -> Option<f64> {
        self.yield_strength_compressive
    }

    pub fn elastic_modulus(&self) -> Option<f64> {
        self.elastic_modulus
    }

    pub fn mass_density(&self) -> Option<f64> {
        self.mass_density
    }
}

/// Solid rectangular section of a cantilevered plate (the blade model).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawRect")]
pub struct RectSection {
    width_b: f64,
    thickness_t: f64,
    span_l: f64,
}

#[derive(Deserialize)]
struct RawRect {
    width_b: f64,
    thickness_t: f64,
    span_l: f64,
}

impl TryFrom<RawRect> for RectSection {
    type Error = Error;

    fn try_from(r: RawRect) -> Result<Self> {
        RectSection::new(r.width_b, r.thickness_t, r.span_l)
    }
}

impl RectSection {
    pub fn new(width_b: f64, thickness_t: f64, span_l: f64) -> Result<Self> {
        ensure_positive("section thickness", thickness_t)?;
        ensure_positive("section span", span_l)?;
        ensure(width_b.is_finite() && width_b >= thickness_t, || {
            format!("section width {width_b} m must be at least its thickness {thickness_t} m")
        })?;
        Ok(RectSection {
            width_b,
            thickness_t,
            span_l,
        })
    }

    pub fn width(&self) -> f64 {
        self.width_b
    }

    pub fn thickness(&self) -> f64 {
        self.thickness_t
    }

    pub fn span(&self) -> f64 {
        self.span_l
    }
}

/// Eccentrically loaded pinned column.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawColumn")]
pub struct ColumnSpec {
    pub load_p: f64,
    pub eccentricity_e: f64,
    pub centroid_c: f64,
    pub gyration_k: f64,
    pub height_l: f64,
    pub area_a: f64,
    pub moment_i: f64,
}

#[derive(Deserialize)]
struct RawColumn {
    load_p: f64,
    eccentricity_e: f64,
    centroid_c: f64,
    gyration_k: f64,
    height_l: f64,
    area_a: f64,
    moment_i: f64,
}

impl TryFrom<RawColumn> for ColumnSpec {
    type Error = Error;

    fn try_from(r: RawColumn) -> Result<Self> {
        let col = ColumnSpec {
            load_p: r.load_p,
            eccentricity_e: r.eccentricity_e,
            centroid_c: r.centroid_c,
            gyration_k: r.gyration_k,
            height_l: r.height_l,
            area_a: r.area_a,
            moment_i: r.moment_i,
        };
        col.validate()?;
        Ok(col)
    }
}

impl ColumnSpec {
    pub fn validate(&self) -> Result<()> {
        ensure_positive("column load", self.load_p)?;
        ensure(
            self.eccentricity_e.is_finite() && self.eccentricity_e >= 0.0,
            || format!("eccentricity must be non-negative, got {}", self.eccentricity_e),
        )?;
        ensure_positive("centroidal distance", self.centroid_c)?;
        ensure_positive("radius of gyration", self.gyration_k)?;
        ensure_positive("column height", self.height_l)?;
        ensure_positive("cross-section area", self.area_a)?;
        ensure_positive("second moment of area", self.moment_i)?;
        Ok(())
    }

    /// e·c/k².
    pub fn eccentricity_ratio(&self) -> f64 {
        self.eccentricity_e * self.centroid_c / (self.gyration_k * self.gyration_k)
    }
}
