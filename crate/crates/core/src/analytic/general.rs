//! Amplitudes for an arbitrary two-excitation initial state: the emitter in
//! `|f>` with amplitude `alpha0`, or in `|e>` with one incident photon.

use num_complex::Complex64;

use super::{heaviside_reg, Amplitudes, PulseSpec};
use crate::cmath::{c, I};
use crate::error::{check_time, Error, Result};
use crate::params::SystemParams;
use crate::quad::{integrate, panels_per_period, Tolerance};

/// Slack allowed on `|alpha0|^2 + weight <= 1`.
const NORM_SLACK: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct GeneralSolution {
    params: SystemParams,
    alpha0: Complex64,
    pulse: PulseSpec,
    tol: Tolerance,
}

impl GeneralSolution {
    pub fn new(params: SystemParams, alpha0: Complex64, pulse: PulseSpec) -> Result<Self> {
        let total = alpha0.norm_sqr() + pulse.weight();
        if !(total <= 1.0 + NORM_SLACK) {
            return Err(Error::Normalization { total });
        }
        Ok(Self {
            params,
            alpha0,
            pulse,
            tol: Tolerance::default(),
        })
    }

    pub fn with_tolerance(mut self, tol: Tolerance) -> Self {
        self.tol = tol;
        self
    }

    pub fn alpha0(&self) -> Complex64 {
        self.alpha0
    }

    pub fn pulse(&self) -> &PulseSpec {
        &self.pulse
    }

    /// Integrates `f(s)` over the part of `[lower, upper]` on which the pulse
    /// argument `arg(s) = slope * s + offset` lies inside the pulse support.
    fn pulse_integral<F>(&self, f: F, lower: f64, upper: f64, slope: f64, offset: f64, rate: f64) -> Result<Complex64>
    where
        F: Fn(f64) -> Complex64,
    {
        let Some((lo, hi)) = self.pulse.support() else {
            return Ok(c(0.0, 0.0));
        };
        let (s_lo, s_hi) = {
            let (a, b) = ((lo - offset) / slope, (hi - offset) / slope);
            (a.min(b), a.max(b))
        };
        let (a, b) = (lower.max(s_lo), upper.min(s_hi));
        if !(b > a) {
            return Ok(c(0.0, 0.0));
        }
        let breaks: Vec<f64> = self
            .pulse
            .breakpoints()
            .iter()
            .map(|x| (x - offset) / slope)
            .collect();
        let panels = panels_per_period(rate, b - a).max(4);
        Ok(integrate(f, a, b, &breaks, panels, self.tol)?.value)
    }
}

impl Amplitudes for GeneralSolution {
    fn params(&self) -> &SystemParams {
        &self.params
    }

    /// `alpha0 e^{-G2 t/2} - i V2 int_0^t e^{-G2 (t-s)/2} e^{-G1 s/2} e^{i D s} beta0(-v s) ds`.
    fn alpha(&self, t: f64) -> Result<Complex64> {
        check_time(t)?;
        let p = &self.params;
        let free = self.alpha0 * (-0.5 * p.gamma2() * t).exp();
        if self.pulse.is_none() {
            return Ok(free);
        }
        let v = p.v_g();
        let (g1, g2, d) = (p.gamma1(), p.gamma2(), p.delta_omega());
        let kernel = |s: f64| {
            let env = (-0.5 * g2 * (t - s) - 0.5 * g1 * s).exp();
            env * (I * d * s).exp() * self.pulse.eval(-v * s)
        };
        let rate = d - self.pulse.carrier() * v;
        let driven = self.pulse_integral(kernel, 0.0, t, -v, 0.0, rate)?;
        Ok(free - I * p.coupling2() * driven)
    }

    /// Free pulse, re-emission from `|f>`, and the memory of the pulse history.
    fn beta(&self, x: f64, t: f64) -> Result<Complex64> {
        check_time(t)?;
        let p = &self.params;
        let v = p.v_g();
        let g1 = p.gamma1();
        let mut out = (-0.5 * g1 * t).exp() * self.pulse.eval(x - v * t);
        let gate = heaviside_reg(x) * heaviside_reg(t - x / v);
        if gate == 0.0 {
            return Ok(out);
        }
        let retarded = t - x / v;

        if self.alpha0 != c(0.0, 0.0) || !self.pulse.is_none() {
            let phase = (-I * p.delta_omega() * retarded - 0.5 * g1 * x / v).exp();
            out += -I * (p.coupling2() / v) * phase * self.alpha(retarded)? * gate;
        }

        if !self.pulse.is_none() {
            let w1 = p.omega1();
            let kernel = |s: f64| {
                (-0.5 * g1 * s - I * w1 * (s - x / v)).exp() * self.pulse.eval(v * (s - t))
            };
            let rate = self.pulse.carrier() * v - w1;
            let memory = self.pulse_integral(kernel, 0.0, x / v, v, -v * t, rate)?;
            out += -g1 * gate * (-0.5 * g1 * retarded).exp() * memory;
        }
        Ok(out)
    }

    /// Two-photon amplitude composed from the single-photon amplitude at the
    /// retarded time of the photon emitted last.
    fn gamma(&self, x1: f64, x2: f64, t: f64) -> Result<Complex64> {
        check_time(t)?;
        let p = &self.params;
        let v = p.v_g();
        let prefactor = -I * p.coupling1() / (2f64.sqrt() * v);
        let ordered = |near: f64, far: f64| -> Result<Complex64> {
            let gate = heaviside_reg(near) * heaviside_reg(t - near / v);
            if gate == 0.0 {
                return Ok(c(0.0, 0.0));
            }
            let retarded = t - near / v;
            let phase = (-I * p.omega1() * retarded).exp();
            Ok(phase * self.beta(far - near, retarded)? * gate)
        };
        Ok(prefactor * (ordered(x1, x2)? + ordered(x2, x1)?))
    }
}
