//! Detection probabilities, momentum-space amplitudes and spectra.

mod kspace;
mod norm;
mod peaks;
mod probabilities;
mod spectrum;

pub use kspace::{beta_k, gamma_k, TimeArg, BETA_K_LIMIT_TOL};
pub use norm::{spectrum_norm, SpectrumNorm, MIN_WINDOW_RATES};
pub use peaks::{find_peaks, Peak, PeakList, DEFAULT_MIN_PROMINENCE};
pub use probabilities::{state_probabilities, StateProbabilities, DEGENERATE_RATE_TOL};
pub use spectrum::{identical_spectrum, spectral_density, spectrum_grid, SpectrumGrid};
