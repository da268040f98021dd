//! Momentum-space amplitudes under the unitary transform
//! `beta(k) = (2 pi)^{-1/2} int e^{-ikx} beta(x) dx`, with `omega = k v_g`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cmath::{phi1, phi1_slope, I};
use crate::error::{check_time, Result};
use crate::params::SystemParams;

/// Relative size of the denominator of `beta_k` below which the limit
/// value is used.
pub const BETA_K_LIMIT_TOL: f64 = 1e-10;

/// Below this `|D t|` the divided difference in `gamma_k` is replaced by the
/// derivative.
const DIVIDED_DIFFERENCE_SWITCH: f64 = 1e-7;

/// Evaluation time for momentum amplitudes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum TimeArg {
    Finite(f64),
    /// The asymptotic amplitude, without its global phase `e^{-i(w1+w2)t}`.
    Infinite,
}

impl From<f64> for TimeArg {
    fn from(t: f64) -> Self {
        TimeArg::Finite(t)
    }
}

/// Single-photon momentum amplitude of the spontaneous cascade.
pub fn beta_k(k: f64, t: f64, p: &SystemParams) -> Result<Complex64> {
    check_time(t)?;
    let v = p.v_g();
    let omega = k * v;
    let scale = (p.gamma2() * v / TAU).sqrt();
    let upper = (-(I * p.delta_omega() + 0.5 * p.gamma2()) * t).exp();
    let d = I * (omega - p.delta_omega()) - 0.5 * (p.gamma2() - p.gamma1());
    if d.norm() < BETA_K_LIMIT_TOL * p.gamma2() {
        return Ok(-I * scale * t * upper);
    }
    if d.norm() * t > 1.0 {
        let lower = (-(I * omega + 0.5 * p.gamma1()) * t).exp();
        return Ok(I * scale * (lower - upper) / d);
    }
    // (e^{-(i w + G1/2) t} - e^{-(i D + G2/2) t}) / d = -t e^{-(i D + G2/2) t} phi1(-d t)
    Ok(-I * scale * t * upper * phi1(-d * t))
}

/// `(e^{a t} - 1) / a`.
fn bracket(a: Complex64, t: f64) -> Complex64 {
    t * phi1(a * t)
}

/// `(g(a) - g(a + d)) / d` for `g = bracket`.
fn difference(a: Complex64, d: Complex64, t: f64) -> Complex64 {
    if d.norm() * t < DIVIDED_DIFFERENCE_SWITCH {
        -phi1_slope(a, t)
    } else {
        (bracket(a, t) - bracket(a + d, t)) / d
    }
}

/// Two-photon momentum amplitude; symmetric in its arguments.
pub fn gamma_k(k1: f64, k2: f64, t: impl Into<TimeArg>, p: &SystemParams) -> Result<Complex64> {
    let v = p.v_g();
    let (w1, w2) = (k1 * v, k2 * v);
    let prefactor = v / TAU * (0.5 * p.gamma1() * p.gamma2()).sqrt();
    let a1 = I * (w1 - p.omega1()) - 0.5 * p.gamma1();
    let a2 = I * (w2 - p.omega1()) - 0.5 * p.gamma1();
    let b = I * (w1 + w2 - p.omega2()) - 0.5 * p.gamma2();
    match t.into() {
        TimeArg::Infinite => Ok(-prefactor / b * (1.0 / a1 + 1.0 / a2)),
        TimeArg::Finite(t) => {
            check_time(t)?;
            let d1 = I * (w1 - p.delta_omega()) - 0.5 * (p.gamma2() - p.gamma1());
            let d2 = I * (w2 - p.delta_omega()) - 0.5 * (p.gamma2() - p.gamma1());
            // b = a2 + d1 = a1 + d2
            let phase = (-I * (w1 + w2) * t).exp();
            let sum = difference(a2, d1, t) + difference(a1, d2, t);
            Ok(prefactor * phase * sum)
        }
    }
}
