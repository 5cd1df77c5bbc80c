use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("reversed interval: t1 = {t1} < t0 = {t0}")]
    ReversedInterval { t0: f64, t1: f64 },

    #[error("degenerate crossing: g = 0 with |nu| <= delta leaves the latch mixing angle undefined")]
    DegenerateCrossing,

    #[error("undamped steady state is undefined (gamma1 = 0)")]
    Undamped,

    #[error("unsupported Hilbert-space dimension {0} (expected 2 or 5)")]
    UnsupportedDimension(usize),

    #[error("unsupported waveform: {0}")]
    UnsupportedWaveform(String),

    #[error("time stepping did not converge: defect {defect:e} after {steps} steps")]
    NonConvergent { defect: f64, steps: usize },

    #[error("period map has no unique fixed point (pivot {pivot:e})")]
    DegenerateFixedPoint { pivot: f64 },

    #[error("resonance collision: readout denominator {denominator:e} rad/s at level {level}")]
    ResonanceCollision { level: usize, denominator: f64 },

    #[error("flux bias {flux} is outside the half-range where cos(pi flux) > 0")]
    FluxOutOfRange { flux: f64 },

    #[error("charge-basis cutoff {cutoff} is not converged (relative change {change:e})")]
    CutoffTooSmall { cutoff: usize, change: f64 },

    #[error("grid: {0}")]
    Grid(String),
}

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter { name, reason: reason.into() }
}
