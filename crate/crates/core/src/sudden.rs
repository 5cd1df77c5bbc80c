//! Error of the sudden-switch idealisation for a latch change that takes a
//! finite ramp time T.
//!
//! To second order in the ramp the probability of leaving the right-latch
//! eigenstate is the Lorentzian
//! w⁽ʳ⁾ = (T²δ²/4)·g²/(g² + (ν + δ)²), peaked at ν = −δ with half-width g.

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::latch::{LatchFrame, QubitParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RampSide {
    RightStart,
    LeftStart,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RampSpec {
    /// Ramp duration, s.
    pub t_ramp: f64,
    pub side: RampSide,
}

pub fn sudden_error(q: &QubitParams, delta: f64, ramp: RampSpec) -> Result<f64> {
    if !(ramp.t_ramp >= 0.0) {
        return Err(invalid("t_ramp", format!("must be non-negative, got {}", ramp.t_ramp)));
    }
    let x = match ramp.side {
        RampSide::RightStart => q.detuning() + delta,
        RampSide::LeftStart => q.detuning() - delta,
    };
    let g2 = q.g * q.g;
    if g2 == 0.0 {
        return Ok(0.0);
    }
    Ok(sudden_error_max(delta, ramp.t_ramp) * g2 / (g2 + x * x))
}

/// (Tδ)²/4.
pub fn sudden_error_max(delta: f64, t_ramp: f64) -> f64 {
    0.25 * (t_ramp * delta).powi(2)
}

fn rhs(h: &Matrix2<Complex64>, psi: &Vector2<Complex64>) -> Vector2<Complex64> {
    h * psi * Complex64::new(0.0, -1.0)
}

fn rk4_final(q: &QubitParams, delta: f64, t_ramp: f64, start: Vector2<Complex64>, steps: usize) -> Vector2<Complex64> {
    let nu = q.detuning();
    let half_g = Complex64::new(0.5 * q.g, 0.0);
    let ham = |t: f64| {
        let f = (2.0 * t / t_ramp - 1.0) * delta;
        let z = Complex64::new(0.5 * (nu + f), 0.0);
        Matrix2::new(z, half_g, half_g, -z)
    };
    let h = t_ramp / steps as f64;
    let mut psi = start;
    for k in 0..steps {
        let t = k as f64 * h;
        let (h0, hm, h1) = (ham(t), ham(t + 0.5 * h), ham(t + h));
        let c = Complex64::new(h, 0.0);
        let k1 = rhs(&h0, &psi);
        let k2 = rhs(&hm, &(psi + k1 * (c * 0.5)));
        let k3 = rhs(&hm, &(psi + k2 * (c * 0.5)));
        let k4 = rhs(&h1, &(psi + k3 * c));
        psi += (k1 + k2 * Complex64::new(2.0, 0.0) + k3 * Complex64::new(2.0, 0.0) + k4) * (c / 6.0);
    }
    psi
}

const ORACLE_TOL: f64 = 1e-10;
const ORACLE_MAX_STEPS: usize = 1 << 22;

/// Integrates the Schrödinger equation across the linear ramp
/// f(t) = (2t/T − 1)δ starting in the right-latch ground state |ψ₋⁽ʳ⁾⟩ and
/// returns |⟨ψ₊⁽ʳ⁾|ψ(T)⟩|². RK4 with step doubling until the result moves
/// by less than 1e−10.
pub fn ramp_transition_oracle(q: &QubitParams, delta: f64, t_ramp: f64) -> Result<f64> {
    if !(t_ramp > 0.0) {
        return Err(invalid("t_ramp", format!("must be positive, got {t_ramp}")));
    }
    let lf = LatchFrame::new(q.detuning(), q.g, delta, 1.0)?;
    let (plus, minus) = lf.right_eigenvectors();
    let c = |v: [f64; 2]| Vector2::new(Complex64::new(v[0], 0.0), Complex64::new(v[1], 0.0));
    let (plus, minus) = (c(plus), c(minus));
    let prob = |steps| {
        let psi = rk4_final(q, delta, t_ramp, minus, steps);
        plus.dotc(&psi).norm_sqr()
    };
    // enough steps to resolve the largest phase rate
    let rate = (q.detuning().abs() + delta + q.g) * t_ramp;
    let mut steps = ((4.0 * rate).ceil() as usize).max(16);
    let mut last = prob(steps);
    loop {
        steps *= 2;
        let next = prob(steps);
        let defect = (next - last).abs();
        if defect <= ORACLE_TOL {
            return Ok(next);
        }
        if steps >= ORACLE_MAX_STEPS {
            return Err(Error::NonConvergent { defect, steps });
        }
        last = next;
    }
}
