use thiserror::Error;

/// Failures surfaced by the evaluators, the quadrature and the oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("time must be non-negative, got {0}")]
    NegativeTime(f64),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("initial state not normalizable: |alpha0|^2 + pulse weight = {total} > 1")]
    Normalization { total: f64 },

    #[error("pulse envelope norm {measured} does not match declared weight {declared}")]
    PulseNorm { measured: f64, declared: f64 },

    #[error(
        "quadrature did not converge on [{lower}, {upper}]: error estimate {estimate:e} \
         exceeds tolerance {tolerance:e} after {intervals} subintervals"
    )]
    Quadrature {
        lower: f64,
        upper: f64,
        estimate: f64,
        tolerance: f64,
        intervals: usize,
    },

    #[error("oracle configuration rejected: {0}")]
    OracleConfig(String),

    #[error("oracle needs {required} bytes but the budget is {budget} bytes")]
    MemoryBudget { required: u64, budget: u64 },

    #[error("norm drift {drift:e} at t = {time} exceeds {limit:e} (norm {norm})")]
    NormDrift {
        time: f64,
        norm: f64,
        drift: f64,
        limit: f64,
    },
}

impl Error {
    /// True for failures of a numerical procedure, as opposed to rejected input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Quadrature { .. } | Error::NormDrift { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::NegativeTime(t))
    }
}
