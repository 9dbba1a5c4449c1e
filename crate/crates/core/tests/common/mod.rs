#![allow(dead_code)]

use chrono::NaiveDate;

pub fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

pub fn date(s: &str) -> NaiveDate {
    NaiveDate::parse_from_str(s, "%Y-%m-%d").unwrap()
}

/// RK4 integration of y'' = -kappa²(e + y) from y(0) = 0 with slope `s`,
/// returning (y(l/2), y(l)).
fn integrate(e: f64, kappa2: f64, l: f64, s: f64, steps: usize) -> (f64, f64) {
    let h = l / steps as f64;
    let f = |y: f64, v: f64| (v, -kappa2 * (e + y));
    let (mut y, mut v) = (0.0, s);
    let mut mid = f64::NAN;
    for i in 0..steps {
        if i == steps / 2 {
            mid = y;
        }
        let (k1y, k1v) = f(y, v);
        let (k2y, k2v) = f(y + 0.5 * h * k1y, v + 0.5 * h * k1v);
        let (k3y, k3v) = f(y + 0.5 * h * k2y, v + 0.5 * h * k2v);
        let (k4y, k4v) = f(y + h * k3y, v + h * k3v);
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }
    (mid, y)
}

/// Midspan deflection of a pinned column under eccentric load, by
/// shooting on the bending ODE EI·y'' = -P(e + y) with y(0) = y(l) = 0.
pub fn ode_midspan_deflection(e: f64, p: f64, ei: f64, l: f64) -> f64 {
    let kappa2 = p / ei;
    let steps = 4000;
    // Linear in the initial slope: two shots fix it.
    let (m0, end0) = integrate(e, kappa2, l, 0.0, steps);
    let (m1, end1) = integrate(e, kappa2, l, 1.0, steps);
    let s = -end0 / (end1 - end0);
    m0 + s * (m1 - m0)
}

/// Damped fixed-point solve of σ = S_yc / (1 + r·sec((l/2k)·√(σ/E))).
pub fn secant_fixed_point(s_yc: f64, e_mod: f64, ratio: f64, l: f64, k: f64) -> f64 {
    let g = |sigma: f64| {
        let arg = l / (2.0 * k) * (sigma / e_mod).sqrt();
        s_yc / (1.0 + ratio / arg.cos())
    };
    let mut sigma = 0.0;
    for _ in 0..100_000 {
        let next = 0.7 * sigma + 0.3 * g(sigma);
        if (next - sigma).abs() <= 1e-15 * s_yc {
            return next;
        }
        sigma = next;
    }
    sigma
}
