//! Incident single-photon envelopes.
//!
//! The initial state pairs one photon with the emitter in `|e>`. Envelopes are
//! normalized so that `integral |beta0(x)|^2 dx` equals the declared weight.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cmath::{c, I};
use crate::error::{Error, Result};
use crate::quad::{integrate, integrate_real, panels_per_period, Tolerance};

/// Gaussian envelopes are treated as zero beyond this many widths.
const GAUSSIAN_REACH: f64 = 12.0;

/// Relative agreement required between the declared weight and the
/// quadrature of `|beta0|^2`.
pub const NORM_CHECK_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PulseShape {
    None,
    Gaussian {
        center: f64,
        width: f64,
        carrier: f64,
    },
    Rectangular {
        left: f64,
        right: f64,
        carrier: f64,
    },
    /// Linear interpolation of complex samples, zero outside the grid.
    Sampled { x: Vec<f64>, values: Vec<Complex64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PulseSpec {
    shape: PulseShape,
    weight: f64,
}

fn check_weight(weight: f64) -> Result<()> {
    if weight > 0.0 && weight <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "weight",
            value: weight,
            reason: "a pulse must carry a weight in (0, 1]",
        })
    }
}

impl PulseSpec {
    pub fn none() -> Self {
        Self {
            shape: PulseShape::None,
            weight: 0.0,
        }
    }

    /// `beta0(x) = sqrt(w) (2 pi sigma^2)^{-1/4} e^{-(x - x0)^2 / (4 sigma^2)} e^{i k0 x}`.
    pub fn gaussian(center: f64, width: f64, carrier: f64, weight: f64) -> Result<Self> {
        check_weight(weight)?;
        if !(width > 0.0 && width.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "width",
                value: width,
                reason: "must be positive and finite",
            });
        }
        if !(center.is_finite() && carrier.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "center",
                value: center,
                reason: "center and carrier must be finite",
            });
        }
        let pulse = Self {
            shape: PulseShape::Gaussian {
                center,
                width,
                carrier,
            },
            weight,
        };
        pulse.check_norm()?;
        Ok(pulse)
    }

    /// Flat envelope on `[left, right]` with carrier `e^{i k0 x}`.
    pub fn rectangular(left: f64, right: f64, carrier: f64, weight: f64) -> Result<Self> {
        check_weight(weight)?;
        if !(left.is_finite() && right.is_finite() && left < right) {
            return Err(Error::InvalidParameter {
                name: "right",
                value: right,
                reason: "rectangle needs finite left < right",
            });
        }
        let pulse = Self {
            shape: PulseShape::Rectangular {
                left,
                right,
                carrier,
            },
            weight,
        };
        pulse.check_norm()?;
        Ok(pulse)
    }

    /// Samples are used as given; their norm must match `weight`.
    pub fn sampled(x: Vec<f64>, values: Vec<Complex64>, weight: f64) -> Result<Self> {
        check_weight(weight)?;
        if x.len() < 2 || x.len() != values.len() {
            return Err(Error::InvalidGrid(format!(
                "sampled pulse needs matching grids of length >= 2, got {} and {}",
                x.len(),
                values.len()
            )));
        }
        if !x.windows(2).all(|w| w[1] > w[0]) || !x.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidGrid(
                "sampled pulse grid must be finite and strictly increasing".into(),
            ));
        }
        let pulse = Self {
            shape: PulseShape::Sampled { x, values },
            weight,
        };
        pulse.check_norm()?;
        Ok(pulse)
    }

    pub fn shape(&self) -> &PulseShape {
        &self.shape
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn is_none(&self) -> bool {
        matches!(self.shape, PulseShape::None)
    }

    /// Carrier wavenumber, zero when the carrier lives inside the samples.
    pub fn carrier(&self) -> f64 {
        match self.shape {
            PulseShape::Gaussian { carrier, .. } | PulseShape::Rectangular { carrier, .. } => carrier,
            _ => 0.0,
        }
    }

    /// Interval outside which the envelope is zero (or negligible).
    pub fn support(&self) -> Option<(f64, f64)> {
        match &self.shape {
            PulseShape::None => None,
            PulseShape::Gaussian { center, width, .. } => Some((
                center - GAUSSIAN_REACH * width,
                center + GAUSSIAN_REACH * width,
            )),
            PulseShape::Rectangular { left, right, .. } => Some((*left, *right)),
            PulseShape::Sampled { x, .. } => Some((x[0], x[x.len() - 1])),
        }
    }

    /// Points where the envelope has kinks, jumps or its peak.
    pub fn breakpoints(&self) -> Vec<f64> {
        match &self.shape {
            PulseShape::None => Vec::new(),
            PulseShape::Gaussian { center, width, .. } => {
                (-4..=4).map(|k| center + k as f64 * width).collect()
            }
            PulseShape::Rectangular { left, right, .. } => vec![*left, *right],
            PulseShape::Sampled { x, .. } => x.clone(),
        }
    }

    /// `beta0(x)`.
    pub fn eval(&self, x: f64) -> Complex64 {
        match &self.shape {
            PulseShape::None => c(0.0, 0.0),
            PulseShape::Gaussian {
                center,
                width,
                carrier,
            } => {
                let amp = self.weight.sqrt() * (TAU * width * width).powf(-0.25);
                let u = (x - center) / width;
                amp * (-0.25 * u * u).exp() * (I * carrier * x).exp()
            }
            PulseShape::Rectangular {
                left,
                right,
                carrier,
            } => {
                if x < *left || x > *right {
                    c(0.0, 0.0)
                } else {
                    (self.weight / (right - left)).sqrt() * (I * carrier * x).exp()
                }
            }
            PulseShape::Sampled { x: grid, values } => {
                let n = grid.len();
                if x < grid[0] || x > grid[n - 1] {
                    return c(0.0, 0.0);
                }
                let j = grid.partition_point(|g| *g <= x).clamp(1, n - 1);
                let (x0, x1) = (grid[j - 1], grid[j]);
                let s = (x - x0) / (x1 - x0);
                values[j - 1] * (1.0 - s) + values[j] * s
            }
        }
    }

    /// Momentum amplitude `(2 pi)^{-1/2} integral e^{-i k x} beta0(x) dx`.
    pub fn spectrum(&self, k: f64) -> Result<Complex64> {
        Ok(match &self.shape {
            PulseShape::None => c(0.0, 0.0),
            PulseShape::Gaussian {
                center,
                width,
                carrier,
            } => {
                let amp = self.weight.sqrt() * (TAU * width * width).powf(-0.25);
                let q = k - carrier;
                amp * 2f64.sqrt() * width * (-width * width * q * q).exp() * (-I * q * center).exp()
            }
            PulseShape::Rectangular {
                left,
                right,
                carrier,
            } => {
                let amp = (self.weight / (right - left)).sqrt() / TAU.sqrt();
                let q = k - carrier;
                let len = right - left;
                // integral over [left, right] of e^{-i q x}
                let phase = (-I * q * left).exp();
                let z = -I * q * len;
                amp * phase * len * crate::cmath::phi1(z)
            }
            PulseShape::Sampled { x, .. } => {
                let (a, b) = (x[0], x[x.len() - 1]);
                let est = integrate(
                    |s| (-I * k * s).exp() * self.eval(s),
                    a,
                    b,
                    x,
                    panels_per_period(k, b - a),
                    Tolerance::new(1e-12, 1e-10),
                )?;
                est.value / TAU.sqrt()
            }
        })
    }

    /// Verifies by quadrature that the envelope norm equals the weight.
    pub fn check_norm(&self) -> Result<f64> {
        let Some((a, b)) = self.support() else {
            return Ok(0.0);
        };
        let est = integrate_real(
            |x| self.eval(x).norm_sqr(),
            a,
            b,
            &self.breakpoints(),
            8,
            Tolerance::new(1e-13, 1e-11),
        )?;
        if (est.value - self.weight).abs() > NORM_CHECK_TOL * self.weight.max(1e-300) {
            return Err(Error::PulseNorm {
                measured: est.value,
                declared: self.weight,
            });
        }
        Ok(est.value)
    }
}

impl Default for PulseSpec {
    fn default() -> Self {
        Self::none()
    }
}
