//! Closed-form amplitudes for the fully excited emitter with an empty
//! waveguide.

use num_complex::Complex64;

use super::heaviside_reg;
use crate::cmath::{c, I};
use crate::error::{check_time, Result};
use crate::params::SystemParams;

/// Amplitude of `|f, 0>`: `e^{-gamma2 t / 2}`.
pub fn alpha_spontaneous(t: f64, p: &SystemParams) -> Result<Complex64> {
    check_time(t)?;
    Ok(c((-0.5 * p.gamma2() * t).exp(), 0.0))
}

/// Amplitude of `|e>` with one photon at `x`.
///
/// The photon left the emitter at the retarded time `t - x / v_g` and has
/// since travelled with the lower level decaying underneath it.
pub fn beta_spontaneous(x: f64, t: f64, p: &SystemParams) -> Result<Complex64> {
    check_time(t)?;
    let v = p.v_g();
    let retarded = t - x / v;
    let gate = heaviside_reg(x) * heaviside_reg(retarded);
    if gate == 0.0 {
        return Ok(c(0.0, 0.0));
    }
    let phase = -(I * p.delta_omega() + 0.5 * p.gamma2()) * retarded;
    let damping = -0.5 * p.gamma1() * x / v;
    Ok(-I * (p.gamma2() / v).sqrt() * (phase + damping).exp() * gate)
}

/// Composite gate `theta(x1) theta(x2 - x1) theta(t - x1/v) theta(t - x2/v)`.
fn wedge(x1: f64, x2: f64, t: f64, v: f64) -> f64 {
    heaviside_reg(x1) * heaviside_reg(x2 - x1) * heaviside_reg(t - x1 / v) * heaviside_reg(t - x2 / v)
}

/// Two-photon amplitude with the emitter back in `|g>`; exchange symmetric.
pub fn gamma_spontaneous(x1: f64, x2: f64, t: f64, p: &SystemParams) -> Result<Complex64> {
    check_time(t)?;
    let v = p.v_g();
    let prefactor = -(p.gamma1() * p.gamma2() / (2.0 * v * v)).sqrt();
    let upper = I * p.delta_omega() + 0.5 * p.gamma2();
    // `near` is the photon emitted last (smaller coordinate).
    let ordered = |near: f64, far: f64| -> Complex64 {
        let gate = wedge(near, far, t, v);
        if gate == 0.0 {
            return c(0.0, 0.0);
        }
        let exponent = -I * p.omega1() * (t - near / v)
            - upper * (t - far / v)
            - 0.5 * p.gamma1() * (far - near) / v;
        exponent.exp() * gate
    };
    Ok(prefactor * (ordered(x1, x2) + ordered(x2, x1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::make_params;
    use crate::quad::{integrate_real, Tolerance};
    use approx::assert_relative_eq;

    fn fig3b() -> SystemParams {
        make_params(1.0, -0.03, 0.02, 1.5, 1.0).unwrap()
    }

    #[test]
    fn alpha_values() {
        let p = fig3b();
        assert_eq!(alpha_spontaneous(0.0, &p).unwrap(), c(1.0, 0.0));
        let a = alpha_spontaneous(2.0 / p.gamma2(), &p).unwrap();
        assert_relative_eq!(a.re, 0.367_879_441_171_442_3, max_relative = 1e-14);
        assert_eq!(a.im, 0.0);
        assert!(alpha_spontaneous(-1e-9, &p).is_err());
    }

    #[test]
    fn beta_causal_support() {
        let p = fig3b();
        assert_eq!(beta_spontaneous(-1.0, 5.0, &p).unwrap(), c(0.0, 0.0));
        assert_eq!(beta_spontaneous(10.0, 5.0, &p).unwrap(), c(0.0, 0.0));
        assert!(beta_spontaneous(1.0, -5.0, &p).is_err());
        // half weight on the wavefront and at the emitter
        let inside = beta_spontaneous(5.0 * (1.0 - 1e-12), 5.0, &p).unwrap();
        let front = beta_spontaneous(5.0, 5.0, &p).unwrap();
        assert_relative_eq!(front.norm(), 0.5 * inside.norm(), max_relative = 1e-9);
    }

    #[test]
    fn beta_equal_rates_midpoint() {
        let g = 0.05;
        let p = SystemParams::new(1.0, 0.97, g, g, 1.0).unwrap();
        let t = 1.0 / g;
        let b = beta_spontaneous(0.5 * t, t, &p).unwrap();
        assert_relative_eq!(b.norm(), g.sqrt() * (-0.5f64).exp(), max_relative = 1e-14);
        assert_relative_eq!(b.norm() / g.sqrt(), 0.606_530_659_712_633_4, max_relative = 1e-14);
    }

    #[test]
    fn gamma_gate_and_symmetry() {
        let p = fig3b();
        assert_eq!(gamma_spontaneous(-0.1, 0.5, 1.0, &p).unwrap(), c(0.0, 0.0));
        assert_eq!(gamma_spontaneous(0.2, 1.5, 1.0, &p).unwrap(), c(0.0, 0.0));
        let a = gamma_spontaneous(3.0, 17.0, 40.0, &p).unwrap();
        let b = gamma_spontaneous(17.0, 3.0, 40.0, &p).unwrap();
        assert_eq!(a, b);
        assert!(a.norm() > 0.0);
    }

    #[test]
    fn middle_term_prefactor_identity() {
        // -i V2 / v_g  ==  -i sqrt(gamma2 / v_g)
        for v in [0.3, 1.0, 7.0] {
            let p = make_params(1.0, -0.03, 0.02, 1.5, v).unwrap();
            assert_relative_eq!(p.coupling2() / v, (p.gamma2() / v).sqrt(), max_relative = 1e-15);
        }
    }

    #[test]
    fn single_photon_norm_matches_closed_form() {
        let p = make_params(1.0, -0.03, 0.02, 2.0, 1.0).unwrap();
        let t = 1.0 / p.gamma2();
        let est = integrate_real(
            |x| beta_spontaneous(x, t, &p).unwrap().norm_sqr(),
            0.0,
            t,
            &[],
            4,
            Tolerance::new(1e-13, 1e-12),
        )
        .unwrap();
        // 2 (e^{-1/2} - e^{-1})
        assert_relative_eq!(est.value, 0.477_302_437_082_382_2, max_relative = 1e-10);
    }
}
