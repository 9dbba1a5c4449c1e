//! Python bindings for `dwt_core`.
//!
//! Inputs and outputs are SI. Structured results come back as plain
//! dicts and lists; the three stateful types (`WeibullParams`,
//! `Topology`, `Registry`) are wrapped as classes.

use std::collections::BTreeMap;

use chrono::NaiveDate;
use pyo3::create_exception;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde::Serialize;
use serde_json::Value;

use dwt_core::aero::{self, RotorState};
use dwt_core::bearing::{self, BearingCase};
use dwt_core::fatigue::{self, MarinFactors, SnConstants};
use dwt_core::schedule::{self, Deployment, InstallationRecord, LifeSelector, ReportFormat, UsageProfile};
use dwt_core::structural::{self, BallastSpec};
use dwt_core::system::{self, SystemTopology};
use dwt_core::units::{Quantity, Unit};
use dwt_core::weibull::{self, QuantilePoint};
use dwt_core::{presets, ColumnSpec, Error, Material};

create_exception!(dwt_reliability, ValidationError, PyValueError);
create_exception!(dwt_reliability, NumericError, PyArithmeticError);

fn py_err(e: Error) -> PyErr {
    if e.is_numeric() {
        NumericError::new_err(e.to_string())
    } else {
        ValidationError::new_err(e.to_string())
    }
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for dwt_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

fn json_err(e: serde_json::Error) -> PyErr {
    ValidationError::new_err(e.to_string())
}

fn value_to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_pyobject(py)?.into_any(),
            None => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for x in items {
                list.append(value_to_py(py, x)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let d = PyDict::new(py);
            for (k, x) in map {
                d.set_item(k, value_to_py(py, x)?)?;
            }
            d.into_any()
        }
    })
}

fn to_py<'py, T: Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    value_to_py(py, &serde_json::to_value(v).map_err(json_err)?)
}

fn parse_date(s: &str) -> PyResult<NaiveDate> {
    s.parse()
        .map_err(|e| ValidationError::new_err(format!("bad date `{s}`: {e}")))
}

fn marin_from(name: Option<&str>) -> PyResult<MarinFactors> {
    let name = name.unwrap_or("unity");
    MarinFactors::preset(name).ok_or_else(|| ValidationError::new_err(format!("unknown Marin preset `{name}`")))
}

/// Convert `value` between unit symbols, e.g. `convert(45, "ksi", "MPa")`.
#[pyfunction]
fn convert(value: f64, from_unit: &str, to_unit: &str) -> PyResult<f64> {
    let from: Unit = from_unit.parse().py()?;
    let to: Unit = to_unit.parse().py()?;
    Ok(Quantity::new(value, from).to(to).py()?.value)
}

/// Modified endurance limit (Pa) for an ultimate strength (Pa).
#[pyfunction]
#[pyo3(signature = (sut, marin = None))]
fn endurance_limit(sut: f64, marin: Option<&str>) -> PyResult<f64> {
    let m = Material::from_ultimate("custom", sut).py()?;
    fatigue::marin_modified_endurance(fatigue::endurance_limit_unmodified(&m), &marin_from(marin)?).py()
}

/// S-N constants as a dict with `a` (Pa), `b` and `f`.
#[pyfunction]
#[pyo3(signature = (sut, se, f = presets::FATIGUE_STRENGTH_FRACTION))]
fn sn_constants<'py>(py: Python<'py>, sut: f64, se: f64, f: f64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &fatigue::sn_constants(sut, se, f).py()?)
}

#[pyfunction]
#[pyo3(signature = (sigma, a, b, f = presets::FATIGUE_STRENGTH_FRACTION))]
fn cycles_to_failure(sigma: f64, a: f64, b: f64, f: f64) -> PyResult<f64> {
    let c = SnConstants::new(a, b, f).py()?;
    Ok(fatigue::cycles_to_failure(sigma, &c).py()?.cycles)
}

#[pyfunction]
fn cycles_to_calendar(cycles: f64, cycles_per_day: f64) -> PyResult<f64> {
    fatigue::cycles_to_calendar(cycles, cycles_per_day).py()
}

/// Full fatigue chain for the `tower` or `blade` reference case.
#[pyfunction]
#[pyo3(signature = (preset, sigma = None, cycles_per_day = None))]
fn fatigue_life<'py>(
    py: Python<'py>,
    preset: &str,
    sigma: Option<f64>,
    cycles_per_day: Option<f64>,
) -> PyResult<Bound<'py, PyAny>> {
    let (material, marin, s, rate) = match preset {
        "tower" => (
            presets::tower_material(),
            presets::tower_marin(),
            presets::TOWER_STRESS,
            presets::TOWER_CYCLES_PER_DAY,
        ),
        "blade" => (
            presets::blade_material(),
            presets::blade_marin(),
            presets::BLADE_STRESS,
            presets::ROTOR_CYCLES_PER_DAY,
        ),
        other => return Err(ValidationError::new_err(format!("unknown preset `{other}`"))),
    };
    let r = fatigue::fatigue_pipeline(
        &material,
        &marin,
        presets::FATIGUE_STRENGTH_FRACTION,
        sigma.unwrap_or(s),
        Some(cycles_per_day.unwrap_or(rate)),
    )
    .py()?;
    to_py(py, &r)
}

/// Midspan deflection (m) of an eccentrically loaded pinned column.
#[pyfunction]
#[allow(clippy::too_many_arguments)]
fn secant_deflection(
    load: f64,
    eccentricity: f64,
    centroid: f64,
    gyration: f64,
    height: f64,
    area: f64,
    inertia: f64,
    modulus: f64,
) -> PyResult<f64> {
    let col = ColumnSpec {
        load_p: load,
        eccentricity_e: eccentricity,
        centroid_c: centroid,
        gyration_k: gyration,
        height_l: height,
        area_a: area,
        moment_i: inertia,
    };
    structural::secant_deflection(&col, modulus).py()
}

/// Required ballast weight (N).
#[pyfunction]
#[pyo3(signature = (thrust, nacelle_diameter, base_diameter, safety_factor = 1.5))]
fn ballast_weight(thrust: f64, nacelle_diameter: f64, base_diameter: f64, safety_factor: f64) -> PyResult<f64> {
    let spec = BallastSpec {
        turbine_thrust: thrust,
        nacelle_diameter,
        safety_factor,
        base_diameter,
        base_area: std::f64::consts::PI * (base_diameter / 2.0).powi(2),
        ballast_mass_density: 1600.0,
    };
    structural::ballast_required_weight(&spec).py()
}

/// Rotor torque (N·m); defaults are the extreme-gust case.
#[pyfunction]
#[pyo3(signature = (radius = 1.5, rpm = 600.0, wind_speed = 48.72, air_density = 1.24, cp = 0.40))]
fn rotor_torque(radius: f64, rpm: f64, wind_speed: f64, air_density: f64, cp: f64) -> PyResult<f64> {
    aero::rotor_torque(&RotorState {
        radius,
        omega: rpm * std::f64::consts::TAU / 60.0,
        wind_speed,
        air_density,
        power_coefficient: cp,
    })
    .py()
}

/// Torque rows over `(cp, rpm)` points at the gust state.
#[pyfunction]
#[pyo3(signature = (points = None))]
fn torque_sweep<'py>(py: Python<'py>, points: Option<Vec<(f64, f64)>>) -> PyResult<Bound<'py, PyAny>> {
    let base = presets::gust_rotor_state();
    let rows = points
        .unwrap_or_else(|| presets::TORQUE_SWEEP.to_vec())
        .into_iter()
        .map(|(cp, rpm)| aero::torque_row(&base, cp, rpm))
        .collect::<dwt_core::Result<Vec<_>>>()
        .py()?;
    to_py(py, &rows)
}

#[pyfunction]
fn ducted_betz_limit(a0: f64) -> PyResult<f64> {
    aero::ducted_betz_limit(a0).py()
}

/// Bearing life report for a JSON case document (reference yaw bearing by default).
#[pyfunction]
#[pyo3(signature = (case_json = None))]
fn bearing_life<'py>(py: Python<'py>, case_json: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
    let case: BearingCase = match case_json {
        Some(s) => serde_json::from_str(s).map_err(json_err)?,
        None => presets::bearing_case(),
    };
    to_py(py, &bearing::bearing_life(&case).py()?)
}

#[pyclass(name = "WeibullParams", frozen, module = "dwt_reliability")]
struct PyWeibull(weibull::WeibullParams);

#[pymethods]
impl PyWeibull {
    #[new]
    fn new(beta: f64, eta: f64) -> PyResult<Self> {
        Ok(PyWeibull(weibull::WeibullParams::new(beta, eta).py()?))
    }

    /// Fit through two (percent failed, life) points.
    #[staticmethod]
    fn fit(p1: f64, t1: f64, p2: f64, t2: f64) -> PyResult<Self> {
        let q1 = QuantilePoint::new(p1, t1).py()?;
        let q2 = QuantilePoint::new(p2, t2).py()?;
        Ok(PyWeibull(weibull::fit_two_quantiles(&q1, &q2).py()?))
    }

    #[getter]
    fn beta(&self) -> f64 {
        self.0.shape()
    }

    #[getter]
    fn eta(&self) -> f64 {
        self.0.scale()
    }

    #[getter]
    fn mean(&self) -> f64 {
        self.0.mean()
    }

    fn cdf(&self, t: f64) -> PyResult<f64> {
        weibull::cdf(t, &self.0).py()
    }

    fn survival(&self, t: f64) -> PyResult<f64> {
        weibull::survival(t, &self.0).py()
    }

    fn pdf(&self, t: f64) -> PyResult<f64> {
        weibull::pdf(t, &self.0).py()
    }

    fn hazard(&self, t: f64) -> PyResult<f64> {
        weibull::hazard(t, &self.0).py()
    }

    fn cumulative_hazard(&self, t: f64) -> PyResult<f64> {
        weibull::cumulative_hazard(t, &self.0).py()
    }

    fn average_failure_rate(&self, t1: f64, t2: f64) -> PyResult<f64> {
        weibull::average_failure_rate(t1, t2, &self.0).py()
    }

    /// Life by which `p` percent have failed.
    fn quantile(&self, p: f64) -> PyResult<f64> {
        weibull::quantile_bp(p, &self.0).py()
    }

    #[pyo3(signature = (count, seed = 0))]
    fn sample(&self, count: usize, seed: u64) -> PyResult<Vec<f64>> {
        weibull::sample(&self.0, seed, count).py()
    }

    fn regime(&self) -> PyResult<String> {
        let r = weibull::failure_regime(self.0.shape()).py()?;
        Ok(serde_json::to_value(r)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .unwrap_or_default())
    }

    fn __repr__(&self) -> String {
        format!("WeibullParams(beta={}, eta={})", self.0.shape(), self.0.scale())
    }
}

/// Reliability block diagram, built from the same JSON tree the CLI reads.
#[pyclass(name = "Topology", frozen, module = "dwt_reliability")]
struct PyTopology(SystemTopology);

#[pymethods]
impl PyTopology {
    #[staticmethod]
    fn from_json(document: &str) -> PyResult<Self> {
        let t: SystemTopology = serde_json::from_str(document).map_err(json_err)?;
        t.validate().py()?;
        Ok(PyTopology(t))
    }

    fn leaf_count(&self) -> usize {
        self.0.leaf_count()
    }

    fn reliability_at(&self, t: f64) -> PyResult<f64> {
        system::system_reliability_at(t, &self.0).py()
    }

    /// Monte Carlo MTTF as `(estimate, standard_error)`.
    #[pyo3(signature = (samples = 10_000, seed = 0))]
    fn mttf(&self, py: Python<'_>, samples: usize, seed: u64) -> PyResult<(f64, f64)> {
        let mc = py.detach(|| system::monte_carlo_mttf(&self.0, samples, seed)).py()?;
        Ok((mc.estimate, mc.standard_error))
    }
}

#[pyfunction]
fn series_reliability(r: Vec<f64>) -> PyResult<f64> {
    system::series_reliability(&r).py()
}

#[pyfunction]
fn parallel_reliability(r: Vec<f64>) -> PyResult<f64> {
    system::parallel_reliability(&r).py()
}

#[pyfunction]
fn expected_repairs(rate: f64, horizon: f64) -> PyResult<f64> {
    system::expected_repairs(rate, horizon).py()
}

#[pyfunction]
fn poisson_pmf(k: i64, mean: f64) -> PyResult<f64> {
    system::poisson_pmf(k, mean).py()
}

/// `(life, limiting_component)` over `{id: years}`; defaults to the turbine's subsystems.
#[pyfunction]
#[pyo3(signature = (lives = None))]
fn system_service_life(lives: Option<BTreeMap<String, f64>>) -> PyResult<(f64, String)> {
    system::system_service_life(&lives.unwrap_or_else(presets::system_lives)).py()
}

#[pyclass(name = "Registry", frozen, module = "dwt_reliability")]
struct PyRegistry(schedule::Registry);

#[pymethods]
impl PyRegistry {
    /// The built-in turbine registry.
    #[new]
    fn new() -> Self {
        PyRegistry(schedule::Registry::default_dwt())
    }

    #[staticmethod]
    fn from_json(document: &str) -> PyResult<Self> {
        Ok(PyRegistry(schedule::load_registry(document).py()?))
    }

    fn component_ids(&self) -> Vec<String> {
        self.0.components.iter().map(|c| c.id.clone()).collect()
    }

    /// Registry table as `csv` or `markdown`.
    #[pyo3(signature = (format = "csv"))]
    fn report(&self, format: &str) -> PyResult<String> {
        let f: ReportFormat = format.parse().py()?;
        schedule::emit_registry_report(&self.0, f).py()
    }

    /// Dated schedule entries as dicts. `deployment_json` carries event and
    /// cycle logs plus usage rates; its install date wins over `install_date`.
    #[pyo3(signature = (install_date, horizon_years, deployment_json = None))]
    fn schedule<'py>(
        &self,
        py: Python<'py>,
        install_date: &str,
        horizon_years: f64,
        deployment_json: Option<&str>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let dep = self.deployment(install_date, deployment_json)?;
        let entries = schedule::generate_schedule(&self.0, &dep.installation, &dep.usage, horizon_years).py()?;
        to_py(py, &entries)
    }

    #[pyo3(signature = (install_date, horizon_years, format = "csv", deployment_json = None))]
    fn schedule_report(
        &self,
        install_date: &str,
        horizon_years: f64,
        format: &str,
        deployment_json: Option<&str>,
    ) -> PyResult<String> {
        let f: ReportFormat = format.parse().py()?;
        let dep = self.deployment(install_date, deployment_json)?;
        let entries = schedule::generate_schedule(&self.0, &dep.installation, &dep.usage, horizon_years).py()?;
        schedule::emit_schedule_report(&entries, f).py()
    }

    /// Remaining life of one component after `elapsed_years` at default usage.
    #[pyo3(signature = (component, elapsed_years, life = "service"))]
    fn remaining_life<'py>(
        &self,
        py: Python<'py>,
        component: &str,
        elapsed_years: f64,
        life: &str,
    ) -> PyResult<Bound<'py, PyAny>> {
        let c = self
            .0
            .component(component)
            .ok_or_else(|| ValidationError::new_err(format!("no component `{component}`")))?;
        let selector = match life {
            "service" => LifeSelector::Service,
            "rated" => LifeSelector::Rated,
            other => return Err(ValidationError::new_err(format!("life must be service or rated, got `{other}`"))),
        };
        let r = schedule::remaining_service_life(c, &UsageProfile::default(), elapsed_years, selector).py()?;
        to_py(py, &r)
    }

    fn __len__(&self) -> usize {
        self.0.components.len()
    }
}

impl PyRegistry {
    fn deployment(&self, install_date: &str, document: Option<&str>) -> PyResult<Deployment> {
        match document {
            Some(s) => serde_json::from_str(s).map_err(json_err),
            None => Ok(Deployment {
                installation: InstallationRecord::new(parse_date(install_date)?),
                usage: UsageProfile::default(),
            }),
        }
    }
}

#[pymodule]
fn dwt_reliability(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("ValidationError", py.get_type::<ValidationError>())?;
    m.add("NumericError", py.get_type::<NumericError>())?;
    m.add_class::<PyWeibull>()?;
    m.add_class::<PyTopology>()?;
    m.add_class::<PyRegistry>()?;
    m.add_function(wrap_pyfunction!(convert, m)?)?;
    m.add_function(wrap_pyfunction!(endurance_limit, m)?)?;
    m.add_function(wrap_pyfunction!(sn_constants, m)?)?;
    m.add_function(wrap_pyfunction!(cycles_to_failure, m)?)?;
    m.add_function(wrap_pyfunction!(cycles_to_calendar, m)?)?;
    m.add_function(wrap_pyfunction!(fatigue_life, m)?)?;
    m.add_function(wrap_pyfunction!(secant_deflection, m)?)?;
    m.add_function(wrap_pyfunction!(ballast_weight, m)?)?;
    m.add_function(wrap_pyfunction!(rotor_torque, m)?)?;
    m.add_function(wrap_pyfunction!(torque_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(ducted_betz_limit, m)?)?;
    m.add_function(wrap_pyfunction!(bearing_life, m)?)?;
    m.add_function(wrap_pyfunction!(series_reliability, m)?)?;
    m.add_function(wrap_pyfunction!(parallel_reliability, m)?)?;
    m.add_function(wrap_pyfunction!(expected_repairs, m)?)?;
    m.add_function(wrap_pyfunction!(poisson_pmf, m)?)?;
    m.add_function(wrap_pyfunction!(system_service_life, m)?)?;
    Ok(())
}
