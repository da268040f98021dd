use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::Amplitudes;
use crate::error::{check_time, Error, Result};
use crate::grid::{linspace, packed_index, packed_len};

/// Points per axis when no grid is declared.
pub const DEFAULT_FIELD_POINTS: usize = 401;

/// Snapshot of all three amplitudes at one instant.
///
/// `gamma` is stored once per unordered coordinate pair, so the exchange
/// symmetry holds by construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeField {
    t: f64,
    alpha: Complex64,
    x: Vec<f64>,
    beta: Vec<Complex64>,
    gamma: Vec<Complex64>,
}

impl AmplitudeField {
    /// Samples `model` at time `t`. Without a grid, 401 points span `[0, v_g t]`.
    pub fn sample<A>(model: &A, t: f64, grid: Option<&[f64]>) -> Result<Self>
    where
        A: Amplitudes + Sync,
    {
        check_time(t)?;
        let x = match grid {
            Some(g) => {
                if g.len() < 2 || !g.windows(2).all(|w| w[1] > w[0]) {
                    return Err(Error::InvalidGrid(
                        "field grid needs at least 2 strictly increasing points".into(),
                    ));
                }
                g.to_vec()
            }
            None => {
                if t == 0.0 {
                    return Err(Error::InvalidGrid(
                        "default grid [0, v_g t] is empty at t = 0; declare a grid".into(),
                    ));
                }
                linspace(0.0, model.params().v_g() * t, DEFAULT_FIELD_POINTS)?
            }
        };
        let n = x.len();
        let alpha = model.alpha(t)?;
        let beta = x
            .par_iter()
            .map(|&xi| model.beta(xi, t))
            .collect::<Result<Vec<_>>>()?;
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let gamma = pairs
            .par_iter()
            .map(|&(i, j)| model.gamma(x[i], x[j], t))
            .collect::<Result<Vec<_>>>()?;
        debug_assert_eq!(gamma.len(), packed_len(n));
        Ok(Self {
            t,
            alpha,
            x,
            beta,
            gamma,
        })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn beta(&self) -> &[Complex64] {
        &self.beta
    }

    /// `gamma(x[i], x[j])`, identical for `(i, j)` and `(j, i)`.
    pub fn gamma(&self, i: usize, j: usize) -> Complex64 {
        self.gamma[packed_index(i, j, self.x.len())]
    }

    /// Row-major `n x n` copy of the two-photon amplitude.
    pub fn gamma_dense(&self) -> Vec<Complex64> {
        let n = self.x.len();
        (0..n * n).map(|k| self.gamma(k / n, k % n)).collect()
    }
}
