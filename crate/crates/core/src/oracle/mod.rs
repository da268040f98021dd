//! Brute-force reference: the waveguide continuum is replaced by a uniform
//! grid of modes, the two-excitation Schrodinger equation is integrated
//! directly, and the result is compared with the closed forms.
//!
//! Each mode couples with `g_i = V_i sqrt(dk / 2 pi)`, which reproduces the
//! decay rate `gamma_i = V_i^2 / v_g` in the continuum limit.

mod compare;
mod config;
mod integrator;

pub use compare::{
    compare_trajectory, compare_with_analytic, shape_correlation, ComparisonReport, ObservableError,
    Tolerances, Window,
};
pub use config::{Frame, OracleConfig, Resolved, DEFAULT_WINDOW_RATES, MAX_PHASE_PER_STEP, MIN_MODES};
pub use integrator::{oracle_probabilities, run_oracle, GammaSnapshot, Init, OracleTrajectory};
