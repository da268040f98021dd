//! Real-space wavefunction amplitudes.
//!
//! `alpha` is the amplitude of `|f>` with an empty waveguide, `beta(x)` of `|e>`
//! with one photon at `x`, and `gamma(x1, x2)` of `|g>` with two photons.

mod field;
mod general;
mod pulse;
mod spontaneous;

use num_complex::Complex64;

use crate::error::Result;
use crate::params::SystemParams;

pub use field::{AmplitudeField, DEFAULT_FIELD_POINTS};
pub use general::GeneralSolution;
pub use pulse::{PulseShape, PulseSpec, NORM_CHECK_TOL};
pub use spontaneous::{alpha_spontaneous, beta_spontaneous, gamma_spontaneous};

/// Step function with `theta(0) = 1/2`.
pub fn heaviside_reg(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        0.0
    } else {
        0.5
    }
}

/// Anything that can evaluate the three amplitudes at a space-time point.
pub trait Amplitudes {
    fn params(&self) -> &SystemParams;
    fn alpha(&self, t: f64) -> Result<Complex64>;
    fn beta(&self, x: f64, t: f64) -> Result<Complex64>;
    fn gamma(&self, x1: f64, x2: f64, t: f64) -> Result<Complex64>;
}

/// The fully excited emitter with an empty waveguide.
#[derive(Debug, Clone, Copy)]
pub struct Spontaneous {
    params: SystemParams,
}

impl Spontaneous {
    pub fn new(params: SystemParams) -> Self {
        Self { params }
    }
}

impl Amplitudes for Spontaneous {
    fn params(&self) -> &SystemParams {
        &self.params
    }

    fn alpha(&self, t: f64) -> Result<Complex64> {
        alpha_spontaneous(t, &self.params)
    }

    fn beta(&self, x: f64, t: f64) -> Result<Complex64> {
        beta_spontaneous(x, t, &self.params)
    }

    fn gamma(&self, x1: f64, x2: f64, t: f64) -> Result<Complex64> {
        gamma_spontaneous(x1, x2, t, &self.params)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heaviside_branches() {
        assert_eq!(heaviside_reg(-3.2), 0.0);
        assert_eq!(heaviside_reg(0.0), 0.5);
        assert_eq!(heaviside_reg(-0.0), 0.5);
        assert_eq!(heaviside_reg(1e-300), 1.0);
        assert_eq!(heaviside_reg(f64::INFINITY), 1.0);
    }
}
