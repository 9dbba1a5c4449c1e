//! Reliability block diagrams: series/parallel composition, Monte Carlo
//! MTTF, Poisson repair counts and the min-life service-life summary.
//!
//! Components are independent and non-repairable; a parallel block is hot
//! standby and fails when its last child fails.

use std::collections::{BTreeMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{ensure, ensure_nonnegative, ensure_positive, Error, Result};
use crate::weibull::{self, WeibullParams};

/// Life distribution of a single block.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LifeModel {
    Exponential { rate: f64 },
    Weibull(WeibullParams),
    FixedLife { life: f64 },
}

impl LifeModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            LifeModel::Exponential { rate } => ensure_positive("failure rate", rate),
            LifeModel::Weibull(_) => Ok(()),
            LifeModel::FixedLife { life } => ensure_positive("fixed life", life),
        }
    }

    /// R(t) = 1 − F(t).
    pub fn survival(&self, t: f64) -> f64 {
        match *self {
            LifeModel::Exponential { rate } => (-rate * t).exp(),
            LifeModel::Weibull(w) => (-(t / w.scale()).powf(w.shape())).exp(),
            LifeModel::FixedLife { life } => {
                if t < life {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    pub fn mean(&self) -> f64 {
        match *self {
            LifeModel::Exponential { rate } => 1.0 / rate,
            LifeModel::Weibull(w) => w.mean(),
            LifeModel::FixedLife { life } => life,
        }
    }

    /// Failure time for a uniform variate u ∈ [0, 1).
    fn draw(&self, u: f64) -> f64 {
        match *self {
            LifeModel::Exponential { rate } => -(-u).ln_1p() / rate,
            LifeModel::Weibull(w) => weibull::inverse_transform(u, &w),
            LifeModel::FixedLife { life } => life,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SystemTopology {
    Leaf { id: String, model: LifeModel },
    Series(Vec<SystemTopology>),
    Parallel(Vec<SystemTopology>),
}

impl SystemTopology {
    pub fn leaf(id: impl Into<String>, model: LifeModel) -> Self {
        SystemTopology::Leaf {
            id: id.into(),
            model,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = HashSet::new();
        self.validate_into(&mut seen)
    }

    fn validate_into<'a>(&'a self, seen: &mut HashSet<&'a str>) -> Result<()> {
        match self {
            SystemTopology::Leaf { id, model } => {
                ensure(seen.insert(id.as_str()), || format!("duplicate component id `{id}`"))?;
                model.validate()
            }
            SystemTopology::Series(children) | SystemTopology::Parallel(children) => {
                ensure(!children.is_empty(), || "series/parallel block has no children".into())?;
                children.iter().try_for_each(|c| c.validate_into(seen))
            }
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            SystemTopology::Leaf { .. } => 1,
            SystemTopology::Series(c) | SystemTopology::Parallel(c) => {
                c.iter().map(SystemTopology::leaf_count).sum()
            }
        }
    }

    fn reliability(&self, t: f64) -> f64 {
        match self {
            SystemTopology::Leaf { model, .. } => model.survival(t),
            SystemTopology::Series(c) => c.iter().map(|n| n.reliability(t)).product(),
            SystemTopology::Parallel(c) => 1.0 - c.iter().map(|n| 1.0 - n.reliability(t)).product::<f64>(),
        }
    }

    /// Leaves are drawn in depth-first order from `rng`.
    fn failure_time<R: Rng>(&self, rng: &mut R) -> f64 {
        match self {
            SystemTopology::Leaf { model, .. } => model.draw(rng.random::<f64>()),
            SystemTopology::Series(c) => c
                .iter()
                .map(|n| n.failure_time(rng))
                .fold(f64::INFINITY, f64::min),
            SystemTopology::Parallel(c) => c
                .iter()
                .map(|n| n.failure_time(rng))
                .fold(f64::NEG_INFINITY, f64::max),
        }
    }
}

fn check_probabilities(r: &[f64]) -> Result<()> {
    for &p in r {
        ensure((0.0..=1.0).contains(&p), || format!("reliability {p} outside [0, 1]"))?;
    }
    Ok(())
}

/// Π rᵢ; the empty chain is perfectly reliable.
pub fn series_reliability(r: &[f64]) -> Result<f64> {
    check_probabilities(r)?;
    Ok(r.iter().product())
}

/// 1 − Π(1 − rᵢ).
pub fn parallel_reliability(r: &[f64]) -> Result<f64> {
    check_probabilities(r)?;
    Ok(1.0 - r.iter().map(|p| 1.0 - p).product::<f64>())
}

/// Probability that the system still works at `t`.
pub fn system_reliability_at(t: f64, topo: &SystemTopology) -> Result<f64> {
    ensure_nonnegative("time", t)?;
    topo.validate()?;
    Ok(topo.reliability(t))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MttfEstimate {
    pub estimate: f64,
    pub standard_error: f64,
    pub samples: usize,
}

pub const MIN_MC_SAMPLES: usize = 100;

/// Sample-mean system failure time.
///
/// Sample `i` draws from its own ChaCha stream `i` under `seed`, and the
/// reduction runs in index order, so the result does not depend on how
/// rayon splits the work.
pub fn monte_carlo_mttf(topo: &SystemTopology, samples: usize, seed: u64) -> Result<MttfEstimate> {
    ensure(samples >= MIN_MC_SAMPLES, || {
        format!("Monte Carlo needs at least {MIN_MC_SAMPLES} samples, got {samples}")
    })?;
    topo.validate()?;
    let times: Vec<f64> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            topo.failure_time(&mut rng)
        })
        .collect();
    let n = samples as f64;
    let mean = times.iter().sum::<f64>() / n;
    let var = times.iter().map(|t| (t - mean).powi(2)).sum::<f64>() / (n - 1.0);
    Ok(MttfEstimate {
        estimate: mean,
        standard_error: (var / n).sqrt(),
        samples,
    })
}

/// Mean number of Poisson repair events, λ·t.
pub fn expected_repairs(rate: f64, horizon: f64) -> Result<f64> {
    ensure_nonnegative("repair rate", rate)?;
    ensure_nonnegative("horizon", horizon)?;
    Ok(rate * horizon)
}

/// P(K = k) for a Poisson count with the given mean, evaluated in log space.
pub fn poisson_pmf(k: i64, mean: f64) -> Result<f64> {
    ensure(k >= 0, || format!("event count must be non-negative, got {k}"))?;
    ensure_nonnegative("Poisson mean", mean)?;
    if mean == 0.0 {
        return Ok(if k == 0 { 1.0 } else { 0.0 });
    }
    let k = k as f64;
    Ok((-mean + k * mean.ln() - ln_gamma(k + 1.0)).exp())
}

/// Shortest component life and the component that sets it. Ties go to
/// the lexicographically first id.
pub fn system_service_life(lives: &BTreeMap<String, f64>) -> Result<(f64, String)> {
    let mut best: Option<(f64, &String)> = None;
    for (id, &life) in lives {
        ensure_positive(&format!("life of `{id}`"), life)?;
        if best.is_none_or(|(b, _)| life < b) {
            best = Some((life, id));
        }
    }
    best.map(|(life, id)| (life, id.clone()))
        .ok_or_else(|| Error::validation("service-life summary needs at least one component"))
}
