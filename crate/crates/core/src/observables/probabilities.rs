use serde::{Deserialize, Serialize};

use crate::error::{check_time, Result};
use crate::params::SystemParams;

/// Below this relative rate gap the limit forms for equal rates are used.
pub const DEGENERATE_RATE_TOL: f64 = 1e-8;

/// Below this relative rate gap the two-photon probability is taken as the
/// complement, since the divided difference of the closed form cancels.
const CANCELLATION_GAP: f64 = 1e-3;

/// Populations of `|f,0>`, `|e,1>` and `|g,2>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateProbabilities {
    pub p_f0: f64,
    pub p_e1: f64,
    pub p_g2: f64,
}

impl StateProbabilities {
    pub fn total(&self) -> f64 {
        self.p_f0 + self.p_e1 + self.p_g2
    }
}

/// `(e^z - 1) / z` for real `z`.
fn phi1(z: f64) -> f64 {
    if z.abs() < 1e-5 {
        1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0))
    } else {
        z.exp_m1() / z
    }
}

pub fn state_probabilities(t: f64, p: &SystemParams) -> Result<StateProbabilities> {
    check_time(t)?;
    let (g1, g2) = (p.gamma1(), p.gamma2());
    let gap = g2 - g1;
    let p_f0 = (-g2 * t).exp();
    let scale = g1.max(g2);

    if gap.abs() < DEGENERATE_RATE_TOL * g2 {
        // second-order expansion in the rate gap
        let z = gap * t;
        let p_e1 = g2 * t * p_f0 * (1.0 + z * (0.5 + z / 6.0));
        return Ok(StateProbabilities {
            p_f0,
            p_e1,
            p_g2: 1.0 - p_f0 - p_e1,
        });
    }

    // G2/(G2-G1) (e^{-G1 t} - e^{-G2 t}) = G2 t e^{-G2 t} phi1((G2-G1) t)
    let p_e1 = g2 * t * p_f0 * phi1(gap * t);
    let p_g2 = if gap.abs() < CANCELLATION_GAP * scale {
        1.0 - p_f0 - p_e1
    } else {
        let lost1 = -(-g1 * t).exp_m1();
        let lost2 = -(-g2 * t).exp_m1();
        (g2 * lost1 - g1 * lost2) / gap
    };
    Ok(StateProbabilities { p_f0, p_e1, p_g2 })
}
