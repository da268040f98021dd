//! Total weight of the two-photon spectrum over a finite window.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::spectral_density;
use crate::error::{Error, Result};
use crate::params::SystemParams;
use crate::quad::{integrate_real, Tolerance};

/// Minimum window half-width in units of the larger decay rate, on top of the
/// anharmonic splitting.
pub const MIN_WINDOW_RATES: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumNorm {
    /// Integral of `S` over the square window.
    pub value: f64,
    /// Estimated weight lying outside the window.
    pub truncation_bound: f64,
    /// Accumulated quadrature error estimate.
    pub quadrature_error: f64,
    pub half_width: f64,
}

/// Weight of a Lorentzian with centre `c` and full width `w` outside `[lo, hi]`.
fn lorentzian_tail(c: f64, w: f64, lo: f64, hi: f64) -> f64 {
    let below = 0.5 + ((lo - c) * 2.0 / w).atan() / PI;
    let above = 0.5 - ((hi - c) * 2.0 / w).atan() / PI;
    below.max(0.0) + above.max(0.0)
}

/// Iterated adaptive integral of the spectrum over
/// `[omega1 - half_width, omega1 + half_width]^2`.
///
/// `n` sets the minimum number of initial panels per axis.
pub fn spectrum_norm(p: &SystemParams, half_width: f64, n: usize) -> Result<SpectrumNorm> {
    let (g1, g2) = (p.gamma1(), p.gamma2());
    let min_width = MIN_WINDOW_RATES * g1.max(g2) + p.alpha_r().abs() * p.omega1();
    if !(half_width >= min_width && half_width.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "half_width",
            value: half_width,
            reason: "window must cover both transitions plus 50 decay widths",
        });
    }
    let (w0, d) = (p.omega1(), p.delta_omega());
    let (lo, hi) = (w0 - half_width, w0 + half_width);
    let panels = n.max(1);
    let inner_tol = Tolerance::new(1e-12, 1e-11).with_budget(20_000);
    let outer_tol = Tolerance::new(1e-10, 1e-10).with_budget(20_000);

    let around = |c: f64, w: f64| -> Vec<f64> {
        [-8.0, -2.0, -0.5, 0.0, 0.5, 2.0, 8.0].iter().map(|k| c + k * w).collect()
    };

    let inner_error = std::cell::Cell::new(0.0f64);
    let failure = std::cell::RefCell::new(None);
    let marginal = |x: f64| -> f64 {
        let mut breaks = around(w0, g1);
        breaks.extend(around(p.omega2() - x, g2));
        match integrate_real(|y| spectral_density(x, y, p), lo, hi, &breaks, panels, inner_tol) {
            Ok(est) => {
                inner_error.set(inner_error.get().max(est.error));
                est.value
            }
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        }
    };
    let mut breaks = around(w0, g1);
    breaks.extend(around(d, g1 + g2));
    let outer = integrate_real(marginal, lo, hi, &breaks, panels, outer_tol)?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }

    let truncation_bound =
        2.0 * (lorentzian_tail(d, g1 + g2, lo, hi) + lorentzian_tail(w0, g1, lo, hi));
    Ok(SpectrumNorm {
        value: outer.value,
        truncation_bound,
        quadrature_error: outer.error + 2.0 * half_width * inner_error.get(),
        half_width,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::make_params;

    #[test]
    fn rejects_small_window() {
        let p = make_params(1.0, -0.03, 0.02, 1.5, 1.0).unwrap();
        assert!(spectrum_norm(&p, 1.0, 16).is_err());
        assert!(spectrum_norm(&p, 1.03, 16).is_ok());
    }

    #[test]
    fn tail_of_full_line_is_zero() {
        assert!(lorentzian_tail(0.0, 1.0, -1e12, 1e12) < 1e-12);
        assert!((lorentzian_tail(0.0, 2.0, -1.0, 1.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn unit_weight_and_window_convergence() {
        let p = make_params(1.0, -0.03, 0.02, 1.5, 1.0).unwrap();
        let hw = 300.0 * p.gamma1();
        let small = spectrum_norm(&p, hw, 32).unwrap();
        assert!((small.value - 1.0).abs() < 0.02, "{small:?}");
        assert!(small.value <= 1.0 + 1e-8);
        let large = spectrum_norm(&p, 2.0 * hw, 32).unwrap();
        let slack = small.truncation_bound + small.quadrature_error + large.quadrature_error;
        assert!((large.value - small.value).abs() < slack, "{small:?} {large:?}");
        assert!(1.0 - small.value <= small.truncation_bound);
    }

    #[test]
    fn invariant_under_rescaling() {
        let p = make_params(1.0, -0.03, 0.02, 1.5, 1.0).unwrap();
        let q = p.rescaled(10.0).unwrap();
        let hw = 300.0 * p.gamma1();
        let a = spectrum_norm(&p, hw, 32).unwrap();
        let b = spectrum_norm(&q, 10.0 * hw, 32).unwrap();
        assert!((a.value - b.value).abs() < 1e-7, "{a:?} {b:?}");
    }
}
