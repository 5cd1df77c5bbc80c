//! Periodic longitudinal modulation signals f(t) and their phase integrals.
//!
//! Every waveform is written in terms of the reduced phase u = Ωt + phase,
//! so that a single period is u ∈ [0, 2π). The switching instants of the
//! square kinds sit where cos u = 0, i.e. u = π/2 and u = 3π/2.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::units::TAU;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WaveformKind {
    /// δ·sgn[cos(Ωt + phase)], 50% duty cycle.
    Square,
    /// δ·cos(Ωt + phase).
    Sine,
    /// Square wave with linear ramps of duration `ramp` centred on the
    /// ideal switching instants.
    RampedSquare,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModulationWaveform {
    pub kind: WaveformKind,
    /// Amplitude δ, rad/s.
    pub delta: f64,
    /// Modulation angular frequency Ω, rad/s.
    pub omega: f64,
    /// Phase offset Ωt₀, radians.
    #[serde(default)]
    pub phase: f64,
    /// Ramp duration in seconds (ramped square only).
    #[serde(default)]
    pub ramp: f64,
}

impl ModulationWaveform {
    pub fn square(delta: f64, omega: f64) -> Self {
        Self { kind: WaveformKind::Square, delta, omega, phase: 0.0, ramp: 0.0 }
    }

    pub fn sine(delta: f64, omega: f64) -> Self {
        Self { kind: WaveformKind::Sine, delta, omega, phase: 0.0, ramp: 0.0 }
    }

    pub fn ramped_square(delta: f64, omega: f64, ramp: f64) -> Self {
        Self { kind: WaveformKind::RampedSquare, delta, omega, phase: 0.0, ramp }
    }

    pub fn with_phase(mut self, phase: f64) -> Self {
        self.phase = phase;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega > 0.0 && self.omega.is_finite()) {
            return Err(invalid("omega", format!("must be positive and finite, got {}", self.omega)));
        }
        if !(self.delta >= 0.0 && self.delta.is_finite()) {
            return Err(invalid("delta", format!("must be non-negative, got {}", self.delta)));
        }
        if !self.phase.is_finite() {
            return Err(invalid("phase", "must be finite"));
        }
        if !(self.ramp >= 0.0) {
            return Err(invalid("ramp", format!("must be non-negative, got {}", self.ramp)));
        }
        if self.kind == WaveformKind::RampedSquare && self.ramp >= PI / self.omega {
            return Err(invalid("ramp", "must be shorter than half a modulation period"));
        }
        Ok(())
    }

    /// Modulation period 2π/Ω.
    pub fn period(&self) -> f64 {
        TAU / self.omega
    }

    /// Half-width of a ramp window in reduced-phase units.
    fn ramp_half_width(&self) -> f64 {
        match self.kind {
            WaveformKind::RampedSquare => 0.5 * self.omega * self.ramp,
            _ => 0.0,
        }
    }

    fn reduced_phase(&self, t: f64) -> f64 {
        (self.omega * t + self.phase).rem_euclid(TAU)
    }

    /// Unit-amplitude shape s(u) with f = δ·s.
    fn shape(&self, u: f64) -> f64 {
        match self.kind {
            WaveformKind::Sine => u.cos(),
            WaveformKind::Square => square_sign(u),
            WaveformKind::RampedSquare => {
                let h = self.ramp_half_width();
                if h > 0.0 && (u - FRAC_PI_2).abs() <= h {
                    -(u - FRAC_PI_2) / h
                } else if h > 0.0 && (u - 3.0 * FRAC_PI_2).abs() <= h {
                    (u - 3.0 * FRAC_PI_2) / h
                } else {
                    square_sign(u)
                }
            }
        }
    }

    /// Antiderivative of the unit shape in reduced phase, G(u) with
    /// G(0) = 0, for u ∈ [0, 2π). G is 2π-periodic because every shape
    /// has zero mean.
    fn shape_antiderivative(&self, u: f64) -> f64 {
        match self.kind {
            WaveformKind::Sine => u.sin(),
            WaveformKind::Square => square_antiderivative(u),
            WaveformKind::RampedSquare => {
                let h = self.ramp_half_width();
                let d1 = u - FRAC_PI_2;
                let d2 = u - 3.0 * FRAC_PI_2;
                if h > 0.0 && d1.abs() <= h {
                    FRAC_PI_2 - h - (d1 * d1 - h * h) / (2.0 * h)
                } else if h > 0.0 && d2.abs() <= h {
                    -FRAC_PI_2 + h + (d2 * d2 - h * h) / (2.0 * h)
                } else {
                    square_antiderivative(u)
                }
            }
        }
    }

    /// Instantaneous frequency offset f(t), rad/s.
    pub fn evaluate(&self, t: f64) -> f64 {
        self.delta * self.shape(self.reduced_phase(t))
    }

    /// ∫_{t0}^{t1} f(τ) dτ in closed form.
    pub fn phase_integral(&self, t0: f64, t1: f64) -> Result<f64> {
        if t1 < t0 {
            return Err(Error::ReversedInterval { t0, t1 });
        }
        Ok(self.phase_integral_unchecked(t0, t1))
    }

    pub(crate) fn phase_integral_unchecked(&self, t0: f64, t1: f64) -> f64 {
        let g1 = self.shape_antiderivative(self.reduced_phase(t1));
        let g0 = self.shape_antiderivative(self.reduced_phase(t0));
        self.delta / self.omega * (g1 - g0)
    }

    /// Switching instants (cos(Ωt + phase) = 0) inside the open interval
    /// (t0, t1), in increasing order.
    pub fn switching_times(&self, t0: f64, t1: f64) -> Vec<f64> {
        // u_k = π/2 + kπ
        let u0 = self.omega * t0 + self.phase;
        let u1 = self.omega * t1 + self.phase;
        let k0 = ((u0 - FRAC_PI_2) / PI).floor() as i64 + 1;
        let mut out = Vec::new();
        let mut k = k0;
        loop {
            let u = FRAC_PI_2 + k as f64 * PI;
            if u >= u1 {
                break;
            }
            if u > u0 {
                out.push((u - self.phase) / self.omega);
            }
            k += 1;
        }
        out
    }
}

/// sgn(cos u) with sgn(0) = +1, for u ∈ [0, 2π).
fn square_sign(u: f64) -> f64 {
    if u <= FRAC_PI_2 || u >= 3.0 * FRAC_PI_2 {
        1.0
    } else {
        -1.0
    }
}

fn square_antiderivative(u: f64) -> f64 {
    if u <= FRAC_PI_2 {
        u
    } else if u <= 3.0 * FRAC_PI_2 {
        PI - u
    } else {
        u - TAU
    }
}
