//! Direct integration of the two-excitation Schrodinger equation over a
//! uniform grid of waveguide modes.
//!
//! State layout: `[c_f, c_e(0..N), c_g(packed n <= m)]`. Pair states are the
//! normalized symmetric Fock states, so the `|e, n> <-> |g, nn>` element
//! carries an extra `sqrt(2)`.

use std::f64::consts::{SQRT_2, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{OracleConfig, Resolved};
use crate::analytic::PulseSpec;
use crate::cmath::{c, I};
use crate::error::{Error, Result};
use crate::grid::{packed_index, packed_len};
use crate::observables::StateProbabilities;
use crate::params::SystemParams;

/// Initial condition of an oracle run.
#[derive(Debug, Clone, PartialEq)]
pub enum Init {
    /// Emitter in `|f>`, empty waveguide.
    FullyExcited,
    /// Emitter in `|f>` with amplitude `alpha0`, or in `|e>` with the photon
    /// described by `pulse`.
    Pulse { pulse: PulseSpec, alpha0: Complex64 },
}

/// Two-photon amplitudes at one instant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaSnapshot {
    pub time: f64,
    /// Packed `n <= m` frame amplitudes.
    pub amplitudes: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleTrajectory {
    pub params: SystemParams,
    pub grid: Resolved,
    pub times: Vec<f64>,
    /// Frame amplitude of `|f, 0>` at each stored time.
    pub alpha: Vec<Complex64>,
    /// Frame amplitudes of `|e, n>`, one row per stored time.
    pub beta: Vec<Vec<Complex64>>,
    pub p_e1: Vec<f64>,
    pub p_g2: Vec<f64>,
    pub norm: Vec<f64>,
    pub gamma: Vec<GammaSnapshot>,
    /// Factor applied to the sampled pulse so that it carries its weight on
    /// the discrete grid; 1 without a pulse.
    pub renormalization: f64,
}

struct Model {
    n: usize,
    g1: f64,
    g2: f64,
    e_f: f64,
    e_e: f64,
    // single-photon energy of mode n in the frame, minus offset / 2
    u: Vec<f64>,
}

impl Model {
    fn new(p: &SystemParams, r: &Resolved) -> Self {
        let half = 0.5 * r.offset;
        Self {
            n: r.n_modes,
            g1: p.coupling1() * (r.d_k / TAU).sqrt(),
            g2: p.coupling2() * (r.d_k / TAU).sqrt(),
            e_f: p.omega2() - r.offset,
            e_e: p.omega1() - half,
            u: r.omegas.iter().map(|w| w - half).collect(),
        }
    }

    /// `out = -i H y`.
    fn derivative(&self, y: &[Complex64], out: &mut [Complex64]) {
        let n = self.n;
        let (alpha, rest) = (y[0], &y[1..]);
        let (beta, gamma) = rest.split_at(n);
        let (out_alpha, out_rest) = out.split_first_mut().expect("state is non-empty");
        let (out_beta, out_gamma) = out_rest.split_at_mut(n);

        let beta_sum: Complex64 = beta.iter().sum();
        *out_alpha = -I * (self.e_f * alpha + self.g2 * beta_sum);

        out_beta.par_iter_mut().enumerate().for_each(|(p, slot)| {
            let row = &gamma[packed_index(p, p, n)..packed_index(p, p, n) + (n - p)];
            let mut s = SQRT_2 * row[0];
            for v in &row[1..] {
                s += v;
            }
            for m in 0..p {
                s += gamma[packed_index(m, p, n)];
            }
            *slot = -I * ((self.e_e + self.u[p]) * beta[p] + self.g2 * alpha + self.g1 * s);
        });

        let mut rows: Vec<&mut [Complex64]> = Vec::with_capacity(n);
        let mut tail = out_gamma;
        for i in 0..n {
            let (head, next) = tail.split_at_mut(n - i);
            rows.push(head);
            tail = next;
        }
        rows.into_par_iter().enumerate().for_each(|(i, row)| {
            let src = &gamma[packed_index(i, i, n)..packed_index(i, i, n) + (n - i)];
            let ui = self.u[i];
            row[0] = -I * (2.0 * ui * src[0] + SQRT_2 * self.g1 * beta[i]);
            for k in 1..row.len() {
                let m = i + k;
                row[k] = -I * ((ui + self.u[m]) * src[k] + self.g1 * (beta[i] + beta[m]));
            }
        });
    }
}

fn axpy(out: &mut [Complex64], base: &[Complex64], scale: f64, dir: &[Complex64]) {
    out.par_iter_mut()
        .zip(base.par_iter().zip(dir.par_iter()))
        .for_each(|(o, (b, d))| *o = b + scale * d);
}

fn accumulate(acc: &mut [Complex64], scale: f64, dir: &[Complex64]) {
    acc.par_iter_mut().zip(dir.par_iter()).for_each(|(a, d)| *a += scale * d);
}

fn norm_sqr(v: &[Complex64]) -> f64 {
    // fixed chunking keeps the reduction order independent of scheduling
    v.par_chunks(4096)
        .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>())
        .collect::<Vec<_>>()
        .iter()
        .sum()
}

fn initial_state(p: &SystemParams, r: &Resolved, init: &Init) -> Result<(Vec<Complex64>, f64)> {
    let n = r.n_modes;
    let mut y = vec![c(0.0, 0.0); 1 + n + packed_len(n)];
    match init {
        Init::FullyExcited => {
            y[0] = c(1.0, 0.0);
            Ok((y, 1.0))
        }
        Init::Pulse { pulse, alpha0 } => {
            let total = alpha0.norm_sqr() + pulse.weight();
            if total > 1.0 + 1e-9 {
                return Err(Error::Normalization { total });
            }
            y[0] = *alpha0;
            if pulse.is_none() {
                return Ok((y, 1.0));
            }
            let root = r.d_k.sqrt();
            for (slot, w) in y[1..=n].iter_mut().zip(&r.omegas) {
                *slot = pulse.spectrum(w / p.v_g())? * root;
            }
            let carried: f64 = y[1..=n].iter().map(|z| z.norm_sqr()).sum();
            if !(carried > 0.0) {
                return Err(Error::OracleConfig(
                    "pulse has no weight inside the mode window".into(),
                ));
            }
            let factor = (pulse.weight() / carried).sqrt();
            y[1..=n].iter_mut().for_each(|z| *z *= factor);
            Ok((y, factor))
        }
    }
}

/// Integrates the discretized dynamics with classic fourth-order
/// Runge-Kutta steps.
pub fn run_oracle(p: &SystemParams, cfg: &OracleConfig, init: &Init) -> Result<OracleTrajectory> {
    let r = cfg.resolve(p)?;
    let model = Model::new(p, &r);
    let n = r.n_modes;
    let (mut y, renormalization) = initial_state(p, &r, init)?;
    let len = y.len();
    let mut tmp = vec![c(0.0, 0.0); len];
    let mut k = vec![c(0.0, 0.0); len];
    let mut acc = vec![c(0.0, 0.0); len];

    let norm0 = norm_sqr(&y);
    let mut traj = OracleTrajectory {
        params: *p,
        grid: r.clone(),
        times: Vec::new(),
        alpha: Vec::new(),
        beta: Vec::new(),
        p_e1: Vec::new(),
        p_g2: Vec::new(),
        norm: Vec::new(),
        gamma: Vec::new(),
        renormalization,
    };
    let record = |traj: &mut OracleTrajectory, y: &[Complex64], step: usize| -> Result<()> {
        let time = step as f64 * r.dt;
        let p_e1: f64 = y[1..=n].iter().map(|z| z.norm_sqr()).sum();
        let p_g2 = norm_sqr(&y[1 + n..]);
        let norm = y[0].norm_sqr() + p_e1 + p_g2;
        let drift = (norm - norm0).abs();
        if drift > r.norm_limit {
            return Err(Error::NormDrift {
                time,
                norm,
                drift,
                limit: r.norm_limit,
            });
        }
        let index = traj.times.len();
        traj.times.push(time);
        traj.alpha.push(y[0]);
        traj.beta.push(y[1..=n].to_vec());
        traj.p_e1.push(p_e1);
        traj.p_g2.push(p_g2);
        traj.norm.push(norm);
        let last = step == r.n_steps;
        let snap = match r.gamma_every {
            Some(every) => index.is_multiple_of(every) || last,
            None => last,
        };
        if snap {
            traj.gamma.push(GammaSnapshot {
                time,
                amplitudes: y[1 + n..].to_vec(),
            });
        }
        Ok(())
    };

    record(&mut traj, &y, 0)?;
    let h = r.dt;
    for step in 1..=r.n_steps {
        acc.copy_from_slice(&y);
        model.derivative(&y, &mut k);
        accumulate(&mut acc, h / 6.0, &k);
        axpy(&mut tmp, &y, 0.5 * h, &k);
        model.derivative(&tmp, &mut k);
        accumulate(&mut acc, h / 3.0, &k);
        axpy(&mut tmp, &y, 0.5 * h, &k);
        model.derivative(&tmp, &mut k);
        accumulate(&mut acc, h / 3.0, &k);
        axpy(&mut tmp, &y, h, &k);
        model.derivative(&tmp, &mut k);
        accumulate(&mut acc, h / 6.0, &k);
        std::mem::swap(&mut y, &mut acc);
        if step % r.record_every == 0 || step == r.n_steps {
            record(&mut traj, &y, step)?;
        }
    }
    log::debug!(
        "oracle: {} modes, {} steps of {:.4e}, final norm drift {:.3e}",
        n,
        r.n_steps,
        r.dt,
        (traj.norm.last().copied().unwrap_or(norm0) - norm0).abs()
    );
    Ok(traj)
}

impl OracleTrajectory {
    /// `exp(i phase t)` that maps a frame amplitude to the closed-form
    /// convention, where `phase` is the bare energy minus the frame offset.
    fn unrotate(&self, energy: f64, t: f64) -> Complex64 {
        (I * (energy - self.grid.offset) * t).exp()
    }

    /// Upper-level amplitude in the closed-form convention at record `i`.
    pub fn alpha_at(&self, i: usize) -> Complex64 {
        self.alpha[i] * self.unrotate(self.params.omega2(), self.times[i])
    }

    /// Single-photon momentum amplitude of mode `n` at record `i`.
    pub fn beta_k_at(&self, i: usize, n: usize) -> Complex64 {
        self.beta[i][n] * self.unrotate(self.params.omega1(), self.times[i]) / self.grid.d_k.sqrt()
    }

    /// Two-photon momentum amplitude of modes `(n, m)` from snapshot `s`.
    pub fn gamma_k_at(&self, s: usize, n: usize, m: usize) -> Complex64 {
        let snap = &self.gamma[s];
        let raw = snap.amplitudes[packed_index(n, m, self.grid.n_modes)];
        let weight = if n == m { 1.0 } else { SQRT_2 };
        raw * self.unrotate(0.0, snap.time) / (weight * self.grid.d_k)
    }

    /// Spectral density `|gamma(k_n, k_m)|^2 / v_g^2` from snapshot `s`.
    pub fn spectrum_at(&self, s: usize, n: usize, m: usize) -> f64 {
        let v = self.params.v_g();
        self.gamma_k_at(s, n, m).norm_sqr() / (v * v)
    }
}

/// Populations at every stored time.
pub fn oracle_probabilities(traj: &OracleTrajectory) -> Vec<(f64, StateProbabilities)> {
    traj.times
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            (
                t,
                StateProbabilities {
                    p_f0: traj.alpha[i].norm_sqr(),
                    p_e1: traj.p_e1[i],
                    p_g2: traj.p_g2[i],
                },
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::make_params;

    /// Dense Hamiltonian action, written independently of the packed kernel.
    fn dense_derivative(m: &Model, y: &[Complex64]) -> Vec<Complex64> {
        let n = m.n;
        let mut out = vec![c(0.0, 0.0); y.len()];
        let g = |i: usize, j: usize| 1 + n + packed_index(i, j, n);
        out[0] += m.e_f * y[0];
        for p in 0..n {
            out[0] += m.g2 * y[1 + p];
            out[1 + p] += m.g2 * y[0] + (m.e_e + m.u[p]) * y[1 + p];
        }
        for i in 0..n {
            for j in i..n {
                let w = if i == j { SQRT_2 } else { 1.0 };
                out[g(i, j)] += (m.u[i] + m.u[j]) * y[g(i, j)];
                // <g,ij| H |e,p> for p in {i, j}
                out[g(i, j)] += m.g1 * w * y[1 + i];
                if i != j {
                    out[g(i, j)] += m.g1 * y[1 + j];
                }
                out[1 + i] += m.g1 * w * y[g(i, j)];
                if i != j {
                    out[1 + j] += m.g1 * y[g(i, j)];
                }
            }
        }
        out.iter().map(|z| -I * z).collect()
    }

    #[test]
    fn packed_kernel_matches_dense_hamiltonian() {
        let p = make_params(1.0, -0.03, 0.02, 1.5, 1.0).unwrap();
        let cfg = OracleConfig::for_params(&p).with_modes(101);
        let r = cfg.resolve(&p).unwrap();
        let model = Model::new(&p, &r);
        let len = 1 + 101 + packed_len(101);
        let y: Vec<Complex64> = (0..len)
            .map(|k| c(((k * 37) % 101) as f64 / 101.0 - 0.5, ((k * 53) % 97) as f64 / 97.0 - 0.5))
            .collect();
        let mut out = vec![c(0.0, 0.0); len];
        model.derivative(&y, &mut out);
        let dense = dense_derivative(&model, &y);
        for (a, b) in out.iter().zip(&dense) {
            assert!((a - b).norm() < 1e-13, "{a} {b}");
        }
        // Hermitian generator: Re <y, -iHy> = 0
        let flow: f64 = y.iter().zip(&out).map(|(a, b)| (a.conj() * b).re).sum();
        assert!(flow.abs() < 1e-12);
    }

    #[test]
    fn deterministic_rerun() {
        let p = make_params(1.0, -0.03, 0.02, 1.5, 1.0).unwrap();
        let cfg = OracleConfig::for_params(&p).with_modes(101).with_t_max(20.0);
        let a = run_oracle(&p, &cfg, &Init::FullyExcited).unwrap();
        let b = run_oracle(&p, &cfg, &Init::FullyExcited).unwrap();
        assert_eq!(a, b);
        let probs = oracle_probabilities(&a);
        assert_eq!(probs[0].1, StateProbabilities { p_f0: 1.0, p_e1: 0.0, p_g2: 0.0 });
        for (_, s) in probs {
            assert!((s.total() - 1.0).abs() < 1e-6);
        }
    }
}
