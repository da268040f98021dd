use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::grid::linspace;
use crate::params::SystemParams;

/// Joint density of the two emitted photon frequencies at late times.
pub fn spectral_density(omega1: f64, omega2: f64, p: &SystemParams) -> f64 {
    let (g1, g2) = (p.gamma1(), p.gamma2());
    let w0 = p.omega1();
    let pair = omega1 + omega2 - p.omega2();
    let cascade = g1 * g2 / (8.0 * PI * PI) / (pair * pair + 0.25 * g2 * g2);
    let sum = omega1 + omega2 - 2.0 * w0;
    let (d1, d2) = (omega1 - w0, omega2 - w0);
    let lower = (d1 * d1 + 0.25 * g1 * g1) * (d2 * d2 + 0.25 * g1 * g1);
    cascade * (sum * sum + g1 * g1) / lower
}

/// Density on the diagonal `omega1 = omega2 = omega1_level + detuning`.
pub fn identical_spectrum(detuning: f64, p: &SystemParams) -> f64 {
    let (g1, g2) = (p.gamma1(), p.gamma2());
    let shift = 2.0 * detuning - p.alpha_r() * p.omega1();
    let lower = g1 / (detuning * detuning + 0.25 * g1 * g1);
    let upper = g2 / (shift * shift + 0.25 * g2 * g2);
    lower * upper / (2.0 * PI * PI)
}

/// Dense `S(w1, w2)` on a rectangular grid, row `i` at `axis1[i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumGrid {
    pub axis1: Vec<f64>,
    pub axis2: Vec<f64>,
    pub values: Vec<f64>,
    pub params: SystemParams,
}

impl SpectrumGrid {
    pub fn shape(&self) -> (usize, usize) {
        (self.axis1.len(), self.axis2.len())
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.axis2.len() + j]
    }

    /// Location and value of the largest entry.
    pub fn argmax(&self) -> (usize, usize, f64) {
        let n2 = self.axis2.len();
        let (k, v) = self
            .values
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (k, v)| if v > best.1 { (k, v) } else { best });
        (k / n2, k % n2, v)
    }
}

pub fn spectrum_grid(
    w1_range: (f64, f64),
    w2_range: (f64, f64),
    n1: usize,
    n2: usize,
    p: &SystemParams,
) -> Result<SpectrumGrid> {
    let axis1 = linspace(w1_range.0, w1_range.1, n1)?;
    let axis2 = linspace(w2_range.0, w2_range.1, n2)?;
    let values = (0..n1 * n2)
        .into_par_iter()
        .map(|k| spectral_density(axis1[k / n2], axis2[k % n2], p))
        .collect();
    Ok(SpectrumGrid {
        axis1,
        axis2,
        values,
        params: *p,
    })
}
