use dwt_core::units::{Dimension, Unit};
use serde_json::{Map, Value};

use crate::UnitSystem;

/// `%g`-style rendering with six significant digits.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        return format!("{}e{exp}", trim_zeros(mantissa));
    }
    let decimals = (5 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn display_unit(system: UnitSystem, dim: Dimension) -> Unit {
    use Dimension::*;
    match (system, dim) {
        (UnitSystem::Si, Stress) => Unit::Megapascal,
        (UnitSystem::Imperial, Stress) => Unit::Ksi,
        (UnitSystem::Si, Force) => Unit::Newton,
        (UnitSystem::Imperial, Force) => Unit::PoundForce,
        (UnitSystem::Si, Moment) => Unit::NewtonMetre,
        (UnitSystem::Imperial, Moment) => Unit::FootPound,
        (UnitSystem::Si, Length) => Unit::Metre,
        (UnitSystem::Imperial, Length) => Unit::Inch,
        (_, Density) => Unit::KgPerCubicMetre,
        (_, AngularSpeed) => Unit::Rpm,
        (UnitSystem::Si, Speed) => Unit::MetrePerSecond,
        (UnitSystem::Imperial, Speed) => Unit::Mph,
    }
}

#[derive(Debug, Clone)]
pub enum Val {
    /// SI value of a dimensioned quantity.
    Q(f64, Dimension),
    /// Plain number with an optional fixed unit label.
    N(f64, &'static str),
    I(i64),
    S(String),
    B(bool),
}

/// Ordered key/value result, printable as text or JSON.
#[derive(Debug, Default)]
pub struct Fields(Vec<(String, Val)>);

impl Fields {
    pub fn new() -> Self {
        Fields(Vec::new())
    }

    pub fn q(mut self, key: &str, si: f64, dim: Dimension) -> Self {
        self.0.push((key.into(), Val::Q(si, dim)));
        self
    }

    pub fn n(mut self, key: &str, v: f64) -> Self {
        self.0.push((key.into(), Val::N(v, "")));
        self
    }

    pub fn nu(mut self, key: &str, v: f64, unit: &'static str) -> Self {
        self.0.push((key.into(), Val::N(v, unit)));
        self
    }

    pub fn i(mut self, key: &str, v: i64) -> Self {
        self.0.push((key.into(), Val::I(v)));
        self
    }

    pub fn s(mut self, key: &str, v: impl Into<String>) -> Self {
        self.0.push((key.into(), Val::S(v.into())));
        self
    }

    pub fn b(mut self, key: &str, v: bool) -> Self {
        self.0.push((key.into(), Val::B(v)));
        self
    }

    pub fn extend(mut self, other: Fields) -> Self {
        self.0.extend(other.0);
        self
    }

    pub fn text(&self, system: UnitSystem) -> String {
        let mut out = String::new();
        for (k, v) in &self.0 {
            let rendered = match v {
                Val::Q(si, dim) => {
                    let u = display_unit(system, *dim);
                    format!("{} {}", sig6(si / u.si_factor()), u.symbol())
                }
                Val::N(x, "") => sig6(*x),
                Val::N(x, unit) => format!("{} {unit}", sig6(*x)),
                Val::I(x) => x.to_string(),
                Val::S(s) => s.clone(),
                Val::B(b) => b.to_string(),
            };
            out.push_str(&format!("{k}: {rendered}\n"));
        }
        out
    }

    pub fn json(&self) -> Value {
        let mut m = Map::new();
        for (k, v) in &self.0 {
            let j = match v {
                Val::Q(x, _) | Val::N(x, _) => Value::from(*x),
                Val::I(x) => Value::from(*x),
                Val::S(s) => Value::from(s.clone()),
                Val::B(b) => Value::from(*b),
            };
            m.insert(k.clone(), j);
        }
        Value::Object(m)
    }
}
