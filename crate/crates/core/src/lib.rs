//! Stückelberg interference of a driven qubit under periodic frequency
//! modulation.
//!
//! Three independent descriptions of the same physics live here and are
//! used to check each other:
//!
//! * [`latch`]: exact adiabatic-impulse algebra for ideal square-wave
//!   (latching) modulation, including the analytic resonance families.
//! * [`rwa`]: rotating-wave sideband theory with closed-form sideband
//!   amplitudes and the multi-sideband steady-state population.
//! * [`dynamics`]: a dissipative Lindblad solver whose periodic steady state
//!   is found as the fixed point of the one-period (Floquet) map, for two
//!   levels or a five-level transmon with dispersive readout.
//!
//! Supporting modules map transmon circuit parameters to the effective
//! model ([`transmon`]), bound the error of the sudden-switch idealisation
//! ([`sudden`]) and hold the sweep result container ([`grid`]).
//!
//! All frequencies are angular (rad/s) and all times are in seconds.

pub mod bessel;
pub mod dynamics;
pub mod error;
pub mod grid;
pub mod latch;
pub mod linalg;
pub mod optimize;
pub mod quadrature;
pub mod roots;
pub mod rwa;
pub mod sudden;
pub mod transmon;
pub mod units;
pub mod waveform;

pub use error::{Error, Result};
pub use grid::{Layer, Observable, SpectrumGrid, SweepAxis};
pub use latch::{LatchFrame, PeriodUnitary, QubitParams, ResonanceFamily, StartLatch};
pub use waveform::{ModulationWaveform, WaveformKind};
