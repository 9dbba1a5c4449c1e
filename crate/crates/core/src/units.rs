//! Unit tags and exact-factor conversion between them.
//!
//! Everything inside the crate works in SI (Pa, N, N·m, m, kg/m³, rad/s,
//! m/s). Imperial and scaled units only show up where values enter or
//! leave, through [`Quantity`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Standard gravity, used wherever a weight is derived from a mass.
pub const STANDARD_GRAVITY: f64 = 9.80665;

pub const PA_PER_KSI: f64 = 6.894757e6;
pub const N_PER_LBF: f64 = 4.4482216;
pub const NM_PER_FT_LB: f64 = 1.3558179;
pub const M_PER_IN: f64 = 0.0254;
pub const MS_PER_MPH: f64 = 0.44704;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dimension {
    Stress,
    Force,
    Moment,
    Length,
    Density,
    AngularSpeed,
    Speed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Unit {
    #[serde(rename = "Pa")]
    Pascal,
    #[serde(rename = "MPa")]
    Megapascal,
    #[serde(rename = "GPa")]
    Gigapascal,
    #[serde(rename = "ksi")]
    Ksi,
    #[serde(rename = "N")]
    Newton,
    #[serde(rename = "lbf")]
    PoundForce,
    #[serde(rename = "N·m")]
    NewtonMetre,
    #[serde(rename = "ft·lb")]
    FootPound,
    #[serde(rename = "m")]
    Metre,
    #[serde(rename = "mm")]
    Millimetre,
    #[serde(rename = "in")]
    Inch,
    #[serde(rename = "kg/m³")]
    KgPerCubicMetre,
    #[serde(rename = "g/cc")]
    GramPerCc,
    #[serde(rename = "rpm")]
    Rpm,
    #[serde(rename = "rad/s")]
    RadPerSecond,
    #[serde(rename = "m/s")]
    MetrePerSecond,
    #[serde(rename = "mph")]
    Mph,
}

impl Unit {
    pub const ALL: [Unit; 17] = [
        Unit::Pascal,
        Unit::Megapascal,
        Unit::Gigapascal,
        Unit::Ksi,
        Unit::Newton,
        Unit::PoundForce,
        Unit::NewtonMetre,
        Unit::FootPound,
        Unit::Metre,
        Unit::Millimetre,
        Unit::Inch,
        Unit::KgPerCubicMetre,
        Unit::GramPerCc,
        Unit::Rpm,
        Unit::RadPerSecond,
        Unit::MetrePerSecond,
        Unit::Mph,
    ];

    pub fn dimension(self) -> Dimension {
        use Unit::*;
        match self {
            Pascal | Megapascal | Gigapascal | Ksi => Dimension::Stress,
            Newton | PoundForce => Dimension::Force,
            NewtonMetre | FootPound => Dimension::Moment,
            Metre | Millimetre | Inch => Dimension::Length,
            KgPerCubicMetre | GramPerCc => Dimension::Density,
            Rpm | RadPerSecond => Dimension::AngularSpeed,
            MetrePerSecond | Mph => Dimension::Speed,
        }
    }

    /// Multiplier taking a value in this unit to the SI unit of its dimension.
    pub fn si_factor(self) -> f64 {
        use Unit::*;
        match self {
            Pascal | Newton | NewtonMetre | Metre | KgPerCubicMetre | RadPerSecond
            | MetrePerSecond => 1.0,
            Megapascal => 1e6,
            Gigapascal => 1e9,
            Ksi => PA_PER_KSI,
            PoundForce => N_PER_LBF,
            FootPound => NM_PER_FT_LB,
            Millimetre => 1e-3,
            Inch => M_PER_IN,
            GramPerCc => 1e3,
            Rpm => std::f64::consts::TAU / 60.0,
            Mph => MS_PER_MPH,
        }
    }

    pub fn symbol(self) -> &'static str {
        use Unit::*;
        match self {
            Pascal => "Pa",
            Megapascal => "MPa",
            Gigapascal => "GPa",
            Ksi => "ksi",
            Newton => "N",
            PoundForce => "lbf",
            NewtonMetre => "N·m",
            FootPound => "ft·lb",
            Metre => "m",
            Millimetre => "mm",
            Inch => "in",
            KgPerCubicMetre => "kg/m³",
            GramPerCc => "g/cc",
            Rpm => "rpm",
            RadPerSecond => "rad/s",
            MetrePerSecond => "m/s",
            Mph => "mph",
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Unit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .trim()
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect::<String>()
            .to_ascii_lowercase()
            .replace(['·', '*', '-', '.'], "");
        let unit = match key.as_str() {
            "pa" => Unit::Pascal,
            "mpa" => Unit::Megapascal,
            "gpa" => Unit::Gigapascal,
            "ksi" => Unit::Ksi,
            "n" => Unit::Newton,
            "lbf" => Unit::PoundForce,
            "nm" => Unit::NewtonMetre,
            "ftlb" | "ftlbs" | "lbft" => Unit::FootPound,
            "m" => Unit::Metre,
            "mm" => Unit::Millimetre,
            "in" => Unit::Inch,
            "kg/m³" | "kg/m3" => Unit::KgPerCubicMetre,
            "g/cc" | "g/cm3" | "g/cm³" => Unit::GramPerCc,
            "rpm" => Unit::Rpm,
            "rad/s" => Unit::RadPerSecond,
            "m/s" => Unit::MetrePerSecond,
            "mph" => Unit::Mph,
            _ => return Err(Error::validation(format!("unknown unit `{s}`"))),
        };
        Ok(unit)
    }
}

/// A value tagged with its unit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub value: f64,
    pub unit: Unit,
}

impl Quantity {
    pub const fn new(value: f64, unit: Unit) -> Self {
        Quantity { value, unit }
    }

    pub fn si(self) -> f64 {
        self.value * self.unit.si_factor()
    }

    pub fn dimension(self) -> Dimension {
        self.unit.dimension()
    }

    pub fn to(self, target: Unit) -> Result<Quantity> {
        convert(self, target)
    }
}

/// Converts `q` into `target`, rejecting conversions across dimensions.
pub fn convert(q: Quantity, target: Unit) -> Result<Quantity> {
    if q.unit.dimension() != target.dimension() {
        return Err(Error::DimensionMismatch {
            from: q.unit.symbol().to_string(),
            to: target.symbol().to_string(),
        });
    }
    if q.unit == target {
        return Ok(q);
    }
    Ok(Quantity::new(q.si() / target.si_factor(), target))
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.value, self.unit)
    }
}

impl FromStr for Quantity {
    type Err = Error;

    /// Parses strings such as `45ksi`, `185 mm` or `3231 N·m`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let split = s
            .char_indices()
            .find(|&(i, c)| {
                !(c.is_ascii_digit()
                    || c == '.'
                    || c == '+'
                    || c == '-'
                    || ((c == 'e' || c == 'E') && exponent_follows(&s[i + 1..])))
            })
            .map(|(i, _)| i)
            .unwrap_or(s.len());
        let (num, unit) = s.split_at(split);
        let value: f64 = num
            .parse()
            .map_err(|_| Error::validation(format!("cannot parse quantity `{s}`")))?;
        if unit.trim().is_empty() {
            return Err(Error::validation(format!("quantity `{s}` has no unit")));
        }
        Ok(Quantity::new(value, unit.parse()?))
    }
}

fn exponent_follows(rest: &str) -> bool {
    let rest = rest.strip_prefix(['+', '-']).unwrap_or(rest);
    rest.starts_with(|c: char| c.is_ascii_digit())
}
