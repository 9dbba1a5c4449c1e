//! Two-parameter Weibull life distribution.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use crate::error::{ensure, ensure_positive, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct WeibullParams {
    shape_beta: f64,
    scale_eta: f64,
}

#[derive(Deserialize)]
struct RawParams {
    shape_beta: f64,
    scale_eta: f64,
}

impl TryFrom<RawParams> for WeibullParams {
    type Error = Error;

    fn try_from(r: RawParams) -> Result<Self> {
        WeibullParams::new(r.shape_beta, r.scale_eta)
    }
}

impl WeibullParams {
    pub fn new(shape_beta: f64, scale_eta: f64) -> Result<Self> {
        ensure_positive("Weibull shape", shape_beta)?;
        ensure_positive("Weibull scale", scale_eta)?;
        Ok(WeibullParams {
            shape_beta,
            scale_eta,
        })
    }

    pub fn shape(&self) -> f64 {
        self.shape_beta
    }

    pub fn scale(&self) -> f64 {
        self.scale_eta
    }

    /// η·Γ(1 + 1/β).
    pub fn mean(&self) -> f64 {
        self.scale_eta * gamma(1.0 + 1.0 / self.shape_beta)
    }
}

/// A percentile life: `percent_p` % of units have failed by `life_bp`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantilePoint {
    pub percent_p: f64,
    pub life_bp: f64,
}

impl QuantilePoint {
    pub fn new(percent_p: f64, life_bp: f64) -> Result<Self> {
        let q = QuantilePoint { percent_p, life_bp };
        q.validate()?;
        Ok(q)
    }

    fn validate(&self) -> Result<()> {
        check_percent(self.percent_p)?;
        ensure_positive("quantile life", self.life_bp)
    }
}

fn check_percent(p: f64) -> Result<()> {
    ensure(p > 0.0 && p < 100.0, || format!("percentile must be in (0, 100), got {p}"))
}

fn check_time(t: f64) -> Result<()> {
    ensure(t.is_finite() && t >= 0.0, || format!("time must be non-negative, got {t}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureRegime {
    EarlyLife,
    Random,
    WearOut,
}

/// F(t) = 1 − exp(−(t/η)^β).
pub fn cdf(t: f64, w: &WeibullParams) -> Result<f64> {
    check_time(t)?;
    Ok(-(-cumulative_hazard_unchecked(t, w)).exp_m1())
}

/// 1 − F(t).
pub fn survival(t: f64, w: &WeibullParams) -> Result<f64> {
    check_time(t)?;
    Ok((-cumulative_hazard_unchecked(t, w)).exp())
}

/// f(t) = (β/η)(t/η)^(β−1)·exp(−(t/η)^β).
pub fn pdf(t: f64, w: &WeibullParams) -> Result<f64> {
    let h = hazard(t, w)?;
    Ok(h * (-cumulative_hazard_unchecked(t, w)).exp())
}

fn cumulative_hazard_unchecked(t: f64, w: &WeibullParams) -> f64 {
    (t / w.scale_eta).powf(w.shape_beta)
}

/// H(t) = (t/η)^β.
pub fn cumulative_hazard(t: f64, w: &WeibullParams) -> Result<f64> {
    check_time(t)?;
    Ok(cumulative_hazard_unchecked(t, w))
}

/// B_p = η·(−ln(1 − p/100))^(1/β).
pub fn quantile_bp(p: f64, w: &WeibullParams) -> Result<f64> {
    check_percent(p)?;
    Ok(w.scale_eta * (-(-p / 100.0).ln_1p()).powf(1.0 / w.shape_beta))
}

/// Shape and scale through two percentile lives.
pub fn fit_two_quantiles(q1: &QuantilePoint, q2: &QuantilePoint) -> Result<WeibullParams> {
    q1.validate()?;
    q2.validate()?;
    ensure(q1.percent_p != q2.percent_p, || {
        format!("quantile percents must differ, both are {}", q1.percent_p)
    })?;
    ensure(q1.life_bp != q2.life_bp, || {
        format!("quantile lives must differ, both are {}", q1.life_bp)
    })?;
    ensure(
        (q1.percent_p < q2.percent_p) == (q1.life_bp < q2.life_bp),
        || "quantile lives must increase with their percents".to_string(),
    )?;
    let loglog = |p: f64| (-(-p / 100.0).ln_1p()).ln();
    let beta = (loglog(q1.percent_p) - loglog(q2.percent_p)) / (q1.life_bp.ln() - q2.life_bp.ln());
    let eta = q1.life_bp / (-(-q1.percent_p / 100.0).ln_1p()).powf(1.0 / beta);
    WeibullParams::new(beta, eta)
}

/// h(t) = (β/η)(t/η)^(β−1).
pub fn hazard(t: f64, w: &WeibullParams) -> Result<f64> {
    check_time(t)?;
    let (beta, eta) = (w.shape_beta, w.scale_eta);
    if t == 0.0 {
        return if beta < 1.0 {
            Err(Error::Singularity(format!("hazard is unbounded at t = 0 for shape {beta} < 1")))
        } else if beta == 1.0 {
            Ok(1.0 / eta)
        } else {
            Ok(0.0)
        };
    }
    Ok(beta / eta * (t / eta).powf(beta - 1.0))
}

/// [H(t₂) − H(t₁)]/(t₂ − t₁).
pub fn average_failure_rate(t1: f64, t2: f64, w: &WeibullParams) -> Result<f64> {
    check_time(t1)?;
    check_time(t2)?;
    ensure(t1 < t2, || format!("interval start {t1} must precede its end {t2}"))?;
    Ok((cumulative_hazard_unchecked(t2, w) - cumulative_hazard_unchecked(t1, w)) / (t2 - t1))
}

/// Inverse-transform draw from a uniform variate u ∈ [0, 1).
pub fn inverse_transform(u: f64, w: &WeibullParams) -> f64 {
    w.scale_eta * (-(-u).ln_1p()).powf(1.0 / w.shape_beta)
}

/// `count` lifetimes, reproducible for a given seed.
pub fn sample(w: &WeibullParams, seed: u64, count: usize) -> Result<Vec<f64>> {
    ensure(count >= 1, || "sample count must be at least 1".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| inverse_transform(rng.random::<f64>(), w))
        .collect())
}

/// Bathtub-curve regime implied by the shape parameter.
pub fn failure_regime(beta: f64) -> Result<FailureRegime> {
    ensure_positive("Weibull shape", beta)?;
    Ok(if (beta - 1.0).abs() <= 1e-9 {
        FailureRegime::Random
    } else if beta < 1.0 {
        FailureRegime::EarlyLife
    } else {
        FailureRegime::WearOut
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn w(beta: f64, eta: f64) -> WeibullParams {
        WeibullParams::new(beta, eta).unwrap()
    }

    #[test]
    fn cdf_values() {
        assert!((cdf(7.0, &w(2.3, 7.0)).unwrap() - 0.632_120_558_8).abs() < 1e-10);
        assert_eq!(cdf(0.0, &w(2.0, 5.0)).unwrap(), 0.0);
        assert!((cdf(10.0 * 2f64.ln(), &w(1.0, 10.0)).unwrap() - 0.5).abs() < 1e-15);
        assert!(cdf(-1.0, &w(1.0, 1.0)).is_err());
    }

    #[test]
    fn quantiles() {
        assert!(rel(quantile_bp(63.212_055_882_855_77, &w(1.7, 4.0)).unwrap(), 4.0) < 1e-12);
        assert!((quantile_bp(10.0, &w(1.0, 1.0)).unwrap() - 0.105_360_515_66).abs() < 1e-10);
        assert!(quantile_bp(0.0, &w(1.0, 1.0)).is_err());
        assert!(quantile_bp(100.0, &w(1.0, 1.0)).is_err());
    }

    #[test]
    fn two_quantile_fit_b10_b50() {
        let fit = fit_two_quantiles(&QuantilePoint::new(10.0, 10.0).unwrap(), &QuantilePoint::new(50.0, 20.0).unwrap()).unwrap();
        assert!((fit.shape() - 2.7179).abs() < 1e-4, "{}", fit.shape());
        assert!((fit.scale() - 22.89).abs() < 5e-3, "{}", fit.scale());
        assert!((cdf(10.0, &fit).unwrap() - 0.10).abs() < 1e-12);
        assert!((cdf(20.0, &fit).unwrap() - 0.50).abs() < 1e-12);
    }

    #[test]
    fn fit_rejects_degenerate_inputs() {
        let a = QuantilePoint::new(10.0, 10.0).unwrap();
        assert!(fit_two_quantiles(&a, &QuantilePoint::new(10.0, 20.0).unwrap()).is_err());
        assert!(fit_two_quantiles(&a, &QuantilePoint::new(50.0, 10.0).unwrap()).is_err());
        assert!(fit_two_quantiles(&a, &QuantilePoint::new(50.0, 5.0).unwrap()).is_err());
        assert!(QuantilePoint::new(120.0, 5.0).is_err());
    }

    #[test]
    fn fit_recovers_known_distribution() {
        let truth = w(2.0, 5.0);
        let q1 = QuantilePoint::new(10.0, quantile_bp(10.0, &truth).unwrap()).unwrap();
        let q2 = QuantilePoint::new(90.0, quantile_bp(90.0, &truth).unwrap()).unwrap();
        let fit = fit_two_quantiles(&q1, &q2).unwrap();
        assert!(rel(fit.shape(), 2.0) < 1e-10);
        assert!(rel(fit.scale(), 5.0) < 1e-10);
    }

    #[test]
    fn hazard_values() {
        for t in [0.0, 0.5, 3.0, 100.0] {
            assert!(rel(hazard(t, &w(1.0, 4.0)).unwrap(), 0.25) < 1e-15);
        }
        assert!(rel(hazard(1.0, &w(2.0, 1.0)).unwrap(), 2.0) < 1e-15);
        let wear = w(3.0, 2.0);
        assert!(hazard(1.0, &wear).unwrap() < hazard(2.0, &wear).unwrap());
        assert!(matches!(hazard(0.0, &w(0.5, 1.0)), Err(Error::Singularity(_))));
    }

    #[test]
    fn average_rate() {
        assert!(rel(average_failure_rate(2.0, 9.0, &w(1.0, 4.0)).unwrap(), 0.25) < 1e-14);
        assert!(rel(average_failure_rate(0.0, 1.0, &w(2.0, 1.0)).unwrap(), 1.0) < 1e-15);
        assert!(average_failure_rate(1.0, 1.0, &w(2.0, 1.0)).is_err());
        let p = w(2.5, 3.0);
        let t = 1.7;
        let dt = 1e-7;
        let avg = average_failure_rate(t - dt, t + dt, &p).unwrap();
        assert!((avg - hazard(t, &p).unwrap()).abs() < 1e-6);
    }

    #[test]
    fn sampling_is_deterministic() {
        let p = w(1.5, 3.0);
        assert_eq!(sample(&p, 42, 100).unwrap(), sample(&p, 42, 100).unwrap());
        assert_ne!(sample(&p, 42, 100).unwrap(), sample(&p, 43, 100).unwrap());
        assert!(sample(&p, 1, 0).is_err());
        let u = 1.0 - (-1.0f64).exp();
        assert!(rel(inverse_transform(u, &p), 3.0) < 1e-12);
    }

    #[test]
    fn regimes() {
        assert_eq!(failure_regime(0.5).unwrap(), FailureRegime::EarlyLife);
        assert_eq!(failure_regime(1.0).unwrap(), FailureRegime::Random);
        assert_eq!(failure_regime(3.0).unwrap(), FailureRegime::WearOut);
        assert!(failure_regime(0.0).is_err());
    }

    proptest! {
        #[test]
        fn quantile_cdf_inverse(p in 0.01f64..99.99, beta in 0.3f64..6.0, eta in 0.1f64..1e6) {
            let params = w(beta, eta);
            let t = quantile_bp(p, &params).unwrap();
            prop_assert!((cdf(t, &params).unwrap() - p / 100.0).abs() < 1e-12);
        }

        #[test]
        fn cdf_nondecreasing(t in 0.0f64..100.0, dt in 0.0f64..10.0, beta in 0.3f64..6.0, eta in 0.1f64..50.0) {
            let params = w(beta, eta);
            prop_assert!(cdf(t + dt, &params).unwrap() >= cdf(t, &params).unwrap());
        }

        #[test]
        fn hazard_is_pdf_over_survival(t in 0.01f64..20.0, beta in 0.3f64..6.0, eta in 0.5f64..20.0) {
            let params = w(beta, eta);
            let s = survival(t, &params).unwrap();
            prop_assume!(s > 1e-200);
            let ratio = pdf(t, &params).unwrap() / s;
            prop_assert!(rel(ratio, hazard(t, &params).unwrap()) < 1e-9);
        }
    }
}
