//! Physical constants and unit helpers.

use std::f64::consts::PI;

pub const TAU: f64 = 2.0 * PI;

/// Reduced Planck constant, J s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Boltzmann constant, J/K.
pub const K_B: f64 = 1.380_649e-23;

/// Ordinary frequency (Hz) to angular frequency (rad/s).
#[inline]
pub fn hz(f: f64) -> f64 {
    TAU * f
}

/// Angular frequency (rad/s) to ordinary frequency (Hz).
#[inline]
pub fn to_hz(w: f64) -> f64 {
    w / TAU
}

#[inline]
pub fn mhz(f: f64) -> f64 {
    hz(f * 1e6)
}

#[inline]
pub fn ghz(f: f64) -> f64 {
    hz(f * 1e9)
}

/// Bose–Einstein occupation of a mode at angular frequency `omega` (rad/s)
/// in a bath at `t_bath` kelvin. Zero at zero temperature.
pub fn bose_occupation(omega: f64, t_bath: f64) -> f64 {
    if t_bath <= 0.0 || omega <= 0.0 {
        return 0.0;
    }
    let x = HBAR * omega / (K_B * t_bath);
    1.0 / x.exp_m1()
}
