//! Emitter and waveguide parameters.
//!
//! Frequencies are angular frequencies in a dimensionless unit system where
//! the group velocity and the lower transition frequency default to one.
//! The ladder is `|g> -> |e>` at `omega1` and `|e> -> |f>` at `delta_omega`,
//! so the upper level sits at `omega2 = omega1 + delta_omega`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Decay rate above which the rotating-wave picture starts to degrade.
pub const RWA_RATE_LIMIT: f64 = 0.1;

/// Typical transmon anharmonicity window.
pub const TYPICAL_ANHARMONICITY: (f64, f64) = (-0.10, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    omega1: f64,
    delta_omega: f64,
    gamma1: f64,
    gamma2: f64,
    v_g: f64,
    // Kept alongside `delta_omega` so that the anharmonicity reads back
    // exactly what the caller supplied, even when it is tiny.
    alpha_r: f64,
}

/// Non-fatal conditions under which the closed forms remain evaluable but
/// lose their usual physical interpretation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RegimeWarning {
    /// `gamma2 / omega1` exceeds [`RWA_RATE_LIMIT`].
    StrongCoupling { gamma2_over_omega1: f64 },
    /// Anharmonicity outside [`TYPICAL_ANHARMONICITY`].
    AtypicalAnharmonicity { alpha_r: f64 },
}

impl std::fmt::Display for RegimeWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RegimeWarning::StrongCoupling { gamma2_over_omega1 } => write!(
                f,
                "gamma2/omega1 = {gamma2_over_omega1} exceeds {RWA_RATE_LIMIT}; rotating-wave treatment is questionable"
            ),
            RegimeWarning::AtypicalAnharmonicity { alpha_r } => write!(
                f,
                "alpha_r = {alpha_r} lies outside the transmon range [{}, {}]",
                TYPICAL_ANHARMONICITY.0, TYPICAL_ANHARMONICITY.1
            ),
        }
    }
}

fn positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be positive and finite",
        })
    }
}

impl SystemParams {
    /// Builds parameters from the two transition frequencies directly.
    pub fn new(omega1: f64, delta_omega: f64, gamma1: f64, gamma2: f64, v_g: f64) -> Result<Self> {
        positive("omega1", omega1)?;
        positive("delta_omega", delta_omega)?;
        positive("gamma1", gamma1)?;
        positive("gamma2", gamma2)?;
        positive("v_g", v_g)?;
        Ok(Self {
            omega1,
            delta_omega,
            gamma1,
            gamma2,
            v_g,
            alpha_r: (delta_omega - omega1) / omega1,
        })
    }

    /// Builds parameters from the anharmonicity and the decay-rate ratio
    /// `gamma2 / gamma1`. Regime warnings are logged, not returned as errors.
    pub fn from_anharmonicity(
        omega1: f64,
        alpha_r: f64,
        gamma2: f64,
        ratio_g2_g1: f64,
        v_g: f64,
    ) -> Result<Self> {
        positive("omega1", omega1)?;
        positive("gamma2", gamma2)?;
        positive("ratio_g2_g1", ratio_g2_g1)?;
        positive("v_g", v_g)?;
        if !(alpha_r.is_finite() && 1.0 + alpha_r > 0.0) {
            return Err(Error::InvalidParameter {
                name: "alpha_r",
                value: alpha_r,
                reason: "must exceed -1, otherwise the ladder is inverted",
            });
        }
        let params = Self {
            omega1,
            delta_omega: omega1 * (1.0 + alpha_r),
            gamma1: gamma2 / ratio_g2_g1,
            gamma2,
            v_g,
            alpha_r,
        };
        for warning in params.warnings() {
            log::warn!("{warning}");
        }
        Ok(params)
    }

    pub fn omega1(&self) -> f64 {
        self.omega1
    }

    /// Frequency of the `|e> -> |f>` transition.
    pub fn delta_omega(&self) -> f64 {
        self.delta_omega
    }

    /// Energy of the doubly excited level `|f>`.
    pub fn omega2(&self) -> f64 {
        self.omega1 + self.delta_omega
    }

    /// Relative anharmonicity `(delta_omega - omega1) / omega1`.
    pub fn alpha_r(&self) -> f64 {
        self.alpha_r
    }

    pub fn gamma1(&self) -> f64 {
        self.gamma1
    }

    pub fn gamma2(&self) -> f64 {
        self.gamma2
    }

    pub fn v_g(&self) -> f64 {
        self.v_g
    }

    /// `gamma2 / gamma1`.
    pub fn decay_ratio(&self) -> f64 {
        self.gamma2 / self.gamma1
    }

    /// Coupling of the lower transition, `sqrt(gamma1 * v_g)`.
    pub fn coupling1(&self) -> f64 {
        (self.gamma1 * self.v_g).sqrt()
    }

    /// Coupling of the upper transition, `sqrt(gamma2 * v_g)`.
    pub fn coupling2(&self) -> f64 {
        (self.gamma2 * self.v_g).sqrt()
    }

    pub fn warnings(&self) -> Vec<RegimeWarning> {
        let mut out = Vec::new();
        let ratio = self.gamma2 / self.omega1;
        if ratio > RWA_RATE_LIMIT {
            out.push(RegimeWarning::StrongCoupling {
                gamma2_over_omega1: ratio,
            });
        }
        let (lo, hi) = TYPICAL_ANHARMONICITY;
        if self.alpha_r < lo || self.alpha_r > hi {
            out.push(RegimeWarning::AtypicalAnharmonicity {
                alpha_r: self.alpha_r,
            });
        }
        out
    }

    /// Copy with every frequency and rate multiplied by `factor`.
    pub fn rescaled(&self, factor: f64) -> Result<Self> {
        positive("factor", factor)?;
        let mut out = Self::new(
            self.omega1 * factor,
            self.delta_omega * factor,
            self.gamma1 * factor,
            self.gamma2 * factor,
            self.v_g,
        )?;
        out.alpha_r = self.alpha_r;
        Ok(out)
    }
}

/// Convenience wrapper for [`SystemParams::from_anharmonicity`].
pub fn make_params(
    omega1: f64,
    alpha_r: f64,
    gamma2: f64,
    ratio_g2_g1: f64,
    v_g: f64,
) -> Result<SystemParams> {
    SystemParams::from_anharmonicity(omega1, alpha_r, gamma2, ratio_g2_g1, v_g)
}

/// Transmon anharmonicity from the Josephson-to-charging energy ratio,
/// `-(8 E_J / E_C)^(-1/2)`.
pub fn alpha_r_from_circuit(ej_over_ec: f64) -> Result<f64> {
    positive("ej_over_ec", ej_over_ec)?;
    Ok(-1.0 / (8.0 * ej_over_ec).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn figure_3b_parameters() {
        let p = make_params(1.0, -0.03, 0.02, 1.5, 1.0).unwrap();
        assert_relative_eq!(p.omega2(), 1.97, max_relative = 1e-15);
        assert_relative_eq!(p.gamma1(), 0.02 / 1.5, max_relative = 1e-15);
        assert_relative_eq!(p.delta_omega(), 0.97, max_relative = 1e-15);
        assert!(p.warnings().is_empty());
    }

    #[test]
    fn equidistant_ladder() {
        let p = make_params(1.0, 0.0, 0.02, 1.0, 1.0).unwrap();
        assert_eq!(p.delta_omega(), 1.0);
        assert_eq!(p.alpha_r(), 0.0);
        assert_eq!(p.gamma1(), p.gamma2());
    }

    #[test]
    fn weak_coupling_set() {
        let p = make_params(1.0, -0.03, 0.001, 1.5, 1.0).unwrap();
        assert_relative_eq!(p.gamma2() / p.omega1(), 0.001);
        assert_relative_eq!(p.gamma1(), 0.001 / 1.5, max_relative = 1e-15);
    }

    #[test]
    fn couplings_square_to_rates() {
        let p = make_params(1.0, -0.03, 0.02, 3.0, 2.5).unwrap();
        assert_relative_eq!(p.coupling1().powi(2) / p.v_g(), p.gamma1(), max_relative = 1e-14);
        assert_relative_eq!(p.coupling2().powi(2) / p.v_g(), p.gamma2(), max_relative = 1e-14);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(make_params(0.0, -0.03, 0.02, 1.5, 1.0).is_err());
        assert!(make_params(1.0, -0.03, -0.02, 1.5, 1.0).is_err());
        assert!(make_params(1.0, -0.03, 0.02, 0.0, 1.0).is_err());
        assert!(make_params(1.0, -1.0, 0.02, 1.5, 1.0).is_err());
        assert!(make_params(1.0, -1.5, 0.02, 1.5, 1.0).is_err());
        assert!(make_params(1.0, -0.03, 0.02, 1.5, 0.0).is_err());
        assert!(SystemParams::new(1.0, -0.5, 0.01, 0.01, 1.0).is_err());
    }

    #[test]
    fn regime_warnings() {
        let strong = make_params(1.0, -0.03, 0.2, 1.5, 1.0).unwrap();
        assert!(matches!(
            strong.warnings()[..],
            [RegimeWarning::StrongCoupling { .. }]
        ));
        let positive = make_params(1.0, 0.02, 0.02, 1.5, 1.0).unwrap();
        assert!(matches!(
            positive.warnings()[..],
            [RegimeWarning::AtypicalAnharmonicity { .. }]
        ));
        let deep = make_params(1.0, -0.2, 0.02, 1.5, 1.0).unwrap();
        assert_eq!(deep.warnings().len(), 1);
    }

    #[test]
    fn circuit_anharmonicity() {
        assert_eq!(alpha_r_from_circuit(1.0 / 8.0).unwrap(), -1.0);
        assert_relative_eq!(alpha_r_from_circuit(50.0).unwrap(), -0.05, max_relative = 1e-15);
        assert_relative_eq!(alpha_r_from_circuit(312.5).unwrap(), -0.02, max_relative = 1e-15);
        assert!(alpha_r_from_circuit(0.0).is_err());
        assert!(alpha_r_from_circuit(-4.0).is_err());
    }

    proptest! {
        #[test]
        fn make_params_round_trips(
            omega1 in 1e-3f64..1e3,
            alpha_r in -0.99f64..1.0,
            gamma2 in 1e-6f64..1e2,
            ratio in 1e-2f64..1e2,
        ) {
            let p = make_params(omega1, alpha_r, gamma2, ratio, 1.0).unwrap();
            prop_assert!(((p.alpha_r() - alpha_r) / alpha_r.abs().max(f64::MIN_POSITIVE)).abs() <= 1e-12
                || p.alpha_r() == alpha_r);
            prop_assert!(((p.decay_ratio() - ratio) / ratio).abs() <= 1e-12);
            let from_levels = (p.delta_omega() - p.omega1()) / p.omega1();
            prop_assert!((from_levels - alpha_r).abs() <= 1e-12 * (1.0 + alpha_r.abs()));
        }

        #[test]
        fn circuit_map_is_negative_and_increasing(a in 1e-3f64..1e4, b in 1e-3f64..1e4) {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            prop_assume!(hi > lo * (1.0 + 1e-9));
            let alo = alpha_r_from_circuit(lo).unwrap();
            let ahi = alpha_r_from_circuit(hi).unwrap();
            prop_assert!(alo < 0.0 && ahi < 0.0);
            prop_assert!(alo < ahi);
        }
    }
}
