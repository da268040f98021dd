use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::packed_len;
use crate::params::SystemParams;

/// Smallest accepted mode count.
pub const MIN_MODES: usize = 101;

/// Largest accepted `dt * (largest frame energy)`.
pub const MAX_PHASE_PER_STEP: f64 = 0.1;

/// Default mode window in units of the larger decay rate, added to the
/// anharmonic splitting.
pub const DEFAULT_WINDOW_RATES: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Frame {
    /// Bare energies; needs `dt` small against the carrier frequencies.
    Lab,
    /// Energies measured from `2 omega1`, so only detunings remain.
    Rotating,
}

/// Mode discretization and integration settings. `None` fields are derived
/// from the emitter parameters by [`OracleConfig::resolve`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub n_modes: usize,
    pub window_center: Option<f64>,
    pub half_width: Option<f64>,
    pub dt: Option<f64>,
    pub t_max: f64,
    pub frame: Frame,
    /// Steps between stored records of `alpha`, `beta` and the populations.
    pub record_every: usize,
    /// Records between full two-photon snapshots; `None` keeps only the last.
    pub gamma_every: Option<usize>,
    /// Memory ceiling in bytes, checked before allocation.
    pub memory_budget: u64,
    /// Largest tolerated change of the total norm.
    pub norm_limit: f64,
}

impl OracleConfig {
    /// 801 modes up to `t = 6 / gamma2` in the rotating frame.
    pub fn for_params(p: &SystemParams) -> Self {
        Self {
            n_modes: 801,
            window_center: None,
            half_width: None,
            dt: None,
            t_max: 6.0 / p.gamma2(),
            frame: Frame::Rotating,
            record_every: 10,
            gamma_every: None,
            memory_budget: 2 << 30,
            norm_limit: 1e-6,
        }
    }

    pub fn with_modes(mut self, n_modes: usize) -> Self {
        self.n_modes = n_modes;
        self
    }

    pub fn with_center(mut self, center: f64) -> Self {
        self.window_center = Some(center);
        self
    }

    pub fn with_half_width(mut self, half_width: f64) -> Self {
        self.half_width = Some(half_width);
        self
    }

    pub fn with_t_max(mut self, t_max: f64) -> Self {
        self.t_max = t_max;
        self
    }

    pub fn with_dt(mut self, dt: f64) -> Self {
        self.dt = Some(dt);
        self
    }

    pub fn with_frame(mut self, frame: Frame) -> Self {
        self.frame = frame;
        self
    }

    /// Fills in defaults and validates the result.
    pub fn resolve(&self, p: &SystemParams) -> Result<Resolved> {
        let reject = |msg: String| Err(Error::OracleConfig(msg));
        if self.n_modes < MIN_MODES || self.n_modes.is_multiple_of(2) {
            return reject(format!("n_modes must be odd and >= {MIN_MODES}, got {}", self.n_modes));
        }
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return reject(format!("t_max must be positive, got {}", self.t_max));
        }
        if self.record_every == 0 || self.gamma_every == Some(0) {
            return reject("record strides must be positive".into());
        }
        let split = p.alpha_r().abs() * p.omega1();
        let center = self
            .window_center
            .unwrap_or(p.omega1() + 0.5 * p.alpha_r() * p.omega1());
        let half_width = self
            .half_width
            .unwrap_or(DEFAULT_WINDOW_RATES * p.gamma1().max(p.gamma2()) + split);
        if !(half_width > 0.0 && half_width.is_finite() && center.is_finite()) {
            return reject(format!("window [{center} +- {half_width}] is not usable"));
        }
        for (name, level) in [("omega1", p.omega1()), ("delta_omega", p.delta_omega())] {
            if (level - center).abs() >= half_width {
                return reject(format!(
                    "window [{}, {}] does not contain {name} = {level}",
                    center - half_width,
                    center + half_width
                ));
            }
        }
        let offset = match self.frame {
            Frame::Rotating => 2.0 * p.omega1(),
            Frame::Lab => 0.0,
        };
        // largest single-mode frame energy
        let scale = match self.frame {
            Frame::Rotating => half_width,
            Frame::Lab => center + half_width,
        };
        let dt_target = self.dt.unwrap_or(MAX_PHASE_PER_STEP / scale);
        if !(dt_target > 0.0) || dt_target * scale > MAX_PHASE_PER_STEP * (1.0 + 1e-12) {
            return reject(format!(
                "dt = {dt_target} exceeds {MAX_PHASE_PER_STEP} / {scale} for this frame"
            ));
        }
        let n_steps = (self.t_max / dt_target).ceil() as usize;
        let dt = self.t_max / n_steps as f64;
        let d_omega = 2.0 * half_width / (self.n_modes - 1) as f64;
        let omegas = (0..self.n_modes)
            .map(|n| center - half_width + n as f64 * d_omega)
            .collect();

        let state_len = 1 + self.n_modes + packed_len(self.n_modes);
        let n_records = n_steps / self.record_every + 2;
        let n_snapshots = match self.gamma_every {
            Some(every) => n_records / every + 2,
            None => 1,
        };
        let complex = 16u64;
        let required = complex
            * (4 * state_len as u64
                + n_records as u64 * (self.n_modes as u64 + 1)
                + n_snapshots as u64 * packed_len(self.n_modes) as u64);
        if required > self.memory_budget {
            return Err(Error::MemoryBudget {
                required,
                budget: self.memory_budget,
            });
        }

        Ok(Resolved {
            n_modes: self.n_modes,
            center,
            half_width,
            d_omega,
            d_k: d_omega / p.v_g(),
            dt,
            n_steps,
            t_max: self.t_max,
            frame: self.frame,
            offset,
            omegas,
            record_every: self.record_every,
            gamma_every: self.gamma_every,
            norm_limit: self.norm_limit,
            memory_bytes: required,
        })
    }
}

/// Fully determined discretization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Resolved {
    pub n_modes: usize,
    pub center: f64,
    pub half_width: f64,
    pub d_omega: f64,
    pub d_k: f64,
    pub dt: f64,
    pub n_steps: usize,
    pub t_max: f64,
    pub frame: Frame,
    /// Energy subtracted from every basis state.
    pub offset: f64,
    pub omegas: Vec<f64>,
    pub record_every: usize,
    pub gamma_every: Option<usize>,
    pub norm_limit: f64,
    pub memory_bytes: u64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::make_params;

    fn p() -> SystemParams {
        make_params(1.0, -0.03, 0.02, 1.5, 1.0).unwrap()
    }

    #[test]
    fn defaults() {
        let cfg = OracleConfig::for_params(&p());
        let r = cfg.resolve(&p()).unwrap();
        assert_eq!(r.n_modes, 801);
        assert!((r.center - 0.985).abs() < 1e-15);
        assert!((r.half_width - 0.83).abs() < 1e-15);
        assert!(r.dt * r.half_width <= 0.1 + 1e-12);
        assert!((r.n_steps as f64 * r.dt - 300.0).abs() < 1e-9);
        assert!((r.omegas[800] - (0.985 + 0.83)).abs() < 1e-12);
        assert!((r.d_omega - 1.66 / 800.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_configs() {
        let base = OracleConfig::for_params(&p());
        assert!(base.clone().with_modes(800).resolve(&p()).is_err());
        assert!(base.clone().with_modes(99).resolve(&p()).is_err());
        assert!(base.clone().with_half_width(0.01).resolve(&p()).is_err());
        assert!(base.clone().with_dt(1.0).resolve(&p()).is_err());
        assert!(base.clone().with_t_max(-1.0).resolve(&p()).is_err());
        let mut tight = base.clone();
        tight.memory_budget = 1 << 20;
        assert!(matches!(tight.resolve(&p()), Err(Error::MemoryBudget { .. })));
    }

    #[test]
    fn lab_frame_needs_finer_steps() {
        let cfg = OracleConfig::for_params(&p()).with_frame(Frame::Lab);
        let lab = cfg.resolve(&p()).unwrap();
        let rot = OracleConfig::for_params(&p()).resolve(&p()).unwrap();
        assert!(lab.dt < rot.dt / 2.0);
        assert_eq!(lab.offset, 0.0);
        assert_eq!(rot.offset, 2.0);
    }
}
