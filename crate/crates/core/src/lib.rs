//! Spontaneous two-photon emission of a three-level ladder emitter
//! (`|g> -> |e> -> |f>`) coupled to a chiral one-dimensional waveguide.
//!
//! The crate provides closed-form real-space and momentum-space amplitudes,
//! state probabilities and two-photon spectra, plus an independent
//! brute-force integrator over a discretized mode continuum that is used to
//! cross-check every closed form.
//!
//! Internally `v_g = 1` and `omega1 = 1` unless the caller chooses otherwise.

pub(crate) mod cmath;

pub mod analytic;
pub mod error;
pub mod grid;
pub mod observables;
pub mod oracle;
pub mod params;
pub mod quad;

pub use num_complex::Complex64;

pub use analytic::{
    alpha_spontaneous, beta_spontaneous, gamma_spontaneous, heaviside_reg, AmplitudeField, Amplitudes,
    GeneralSolution, PulseShape, PulseSpec, Spontaneous,
};
pub use error::{Error, Result};
pub use params::{alpha_r_from_circuit, make_params, RegimeWarning, SystemParams};
