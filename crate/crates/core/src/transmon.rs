//! Transmon circuit parameters and their map onto the effective model.
//!
//! Energies are stored as angular frequencies (E/ħ, rad/s) and fluxes in
//! units of the flux quantum. Near the working point the split transmon is
//! a weakly anharmonic oscillator with plasma frequency
//! ω_p = √(8 E_C E_JΣ cos πΦ_dc), qubit frequency ω₀ = ω_p − E_C and ladder
//! ω_i = i[ω₀ + (1 − i)E_C/2].

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::optimize::{nelder_mead, NelderMeadOptions};
use crate::roots::bisect;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransmonParams {
    /// Charging energy E_C/ħ, rad/s.
    pub e_c: f64,
    /// Total Josephson energy E_JΣ/ħ, rad/s.
    pub e_j_sum: f64,
    /// Junction asymmetry d.
    pub asym: f64,
    /// Static flux bias Φ_dc/Φ₀.
    pub flux_dc: f64,
    /// Square-pulse flux amplitude Φ_sq/Φ₀.
    pub flux_sq: f64,
    /// Readout resonator frequency, rad/s.
    pub omega_r: f64,
    /// Vacuum qubit-resonator coupling, rad/s.
    pub g0: f64,
    /// Mean coherent photon number of the drive.
    pub n_r: f64,
    /// Charge offset (charge-basis diagonalisation only).
    pub n_g: f64,
    pub n_levels: usize,
}

impl TransmonParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.e_c > 0.0) {
            return Err(invalid("e_c", format!("must be positive, got {}", self.e_c)));
        }
        if !(self.e_j_sum > 0.0) {
            return Err(invalid("e_j_sum", format!("must be positive, got {}", self.e_j_sum)));
        }
        if !(0.0..1.0).contains(&self.asym) {
            return Err(invalid("asym", format!("must lie in [0, 1), got {}", self.asym)));
        }
        if !(self.n_r >= 0.0) {
            return Err(invalid("n_r", format!("must be non-negative, got {}", self.n_r)));
        }
        if self.n_levels < 2 {
            return Err(invalid("n_levels", "need at least two levels"));
        }
        Ok(())
    }

    fn cos_dc(&self) -> Result<f64> {
        self.validate()?;
        let c = (std::f64::consts::PI * self.flux_dc).cos();
        if !(c > 0.0) || self.flux_dc.abs() >= 0.5 {
            return Err(Error::FluxOutOfRange { flux: self.flux_dc });
        }
        Ok(c)
    }
}

pub fn plasma_frequency(tp: &TransmonParams) -> Result<f64> {
    let c = tp.cos_dc()?;
    Ok((8.0 * tp.e_c * tp.e_j_sum * c).sqrt())
}

pub fn qubit_frequency(tp: &TransmonParams) -> Result<f64> {
    Ok(plasma_frequency(tp)? - tp.e_c)
}

/// The flux bias in [0, ½) at which the perturbative qubit frequency equals
/// `omega0`: cos πΦ = (ω₀ + E_C)²/(8 E_C E_JΣ).
pub fn flux_for_qubit_frequency(e_c: f64, e_j_sum: f64, omega0: f64) -> Result<f64> {
    if !(e_c > 0.0 && e_j_sum > 0.0) {
        return Err(invalid("e_c", "charging and Josephson energies must be positive"));
    }
    let c = (omega0 + e_c).powi(2) / (8.0 * e_c * e_j_sum);
    if !(omega0 > -e_c) || !(c > 0.0 && c <= 1.0) {
        return Err(invalid("omega0", format!("unreachable qubit frequency (cos = {c})")));
    }
    Ok(c.acos() / std::f64::consts::PI)
}

/// Zero-point phase fluctuation φ_zpf = [2E_C/(E_JΣ cos πΦ_dc)]^{1/4}.
pub fn phi_zpf(tp: &TransmonParams) -> Result<f64> {
    let c = tp.cos_dc()?;
    let phi = (2.0 * tp.e_c / (tp.e_j_sum * c)).powf(0.25);
    if !(phi < 1.0) {
        return Err(invalid("flux_dc", format!("phi_zpf = {phi} is not below 1 at this working point")));
    }
    Ok(phi)
}

/// Prefactor of the longitudinal amplitude. The full expansion gives
/// E_JΣ/2; `FullEj` keeps the common shorthand with E_JΣ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaPrefactor {
    #[default]
    HalfEj,
    FullEj,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatchingAmplitude {
    /// |δ|, rad/s.
    pub magnitude: f64,
    /// Sign of the unsimplified product; negative for positive fluxes
    /// because φ_zpf⁴ − 2φ_zpf² < 0.
    pub sign: i8,
}

/// δ = (E_JΣ/2)·sin(πΦ_dc)(φ_zpf⁴ − 2φ_zpf²)·sin(πΦ_sq), as magnitude and
/// sign.
pub fn latching_amplitude(tp: &TransmonParams, prefactor: DeltaPrefactor) -> Result<LatchingAmplitude> {
    let phi = phi_zpf(tp)?;
    let pi = std::f64::consts::PI;
    let k = match prefactor {
        DeltaPrefactor::HalfEj => 0.5,
        DeltaPrefactor::FullEj => 1.0,
    };
    let raw = k * tp.e_j_sum * (pi * tp.flux_dc).sin() * (phi.powi(4) - 2.0 * phi * phi) * (pi * tp.flux_sq).sin();
    let sign = if raw > 0.0 {
        1
    } else if raw < 0.0 {
        -1
    } else {
        0
    };
    Ok(LatchingAmplitude { magnitude: raw.abs(), sign })
}

/// The square-pulse flux in (0, ¼) giving latching amplitude `delta`.
pub fn flux_sq_for_amplitude(tp: &TransmonParams, delta: f64, prefactor: DeltaPrefactor) -> Result<f64> {
    let at = |fsq: f64| -> f64 {
        let p = TransmonParams { flux_sq: fsq, ..*tp };
        latching_amplitude(&p, prefactor).map(|a| a.magnitude - delta).unwrap_or(f64::NAN)
    };
    let top = at(0.25);
    if top.is_nan() || top < 0.0 || !(delta >= 0.0) {
        return Err(invalid("delta", "amplitude not reachable with flux_sq below a quarter flux quantum"));
    }
    bisect(at, 0.0, 0.25, 1e-15).ok_or_else(|| invalid("delta", "no bracketing flux"))
}

/// g = 2g₀√n_r.
pub fn drive_coupling(tp: &TransmonParams) -> Result<f64> {
    if !(tp.n_r >= 0.0) {
        return Err(invalid("n_r", format!("must be non-negative, got {}", tp.n_r)));
    }
    Ok(2.0 * tp.g0 * tp.n_r.sqrt())
}

/// n_r = (g/2g₀)².
pub fn photon_number_for_coupling(g0: f64, g: f64) -> Result<f64> {
    if !(g0 > 0.0) {
        return Err(invalid("g0", "must be positive"));
    }
    Ok((g / (2.0 * g0)).powi(2))
}

/// Perturbative ladder ω_i = i[ω₀ + (1 − i)E_C/2] for i = 0..count.
pub fn ladder_from(omega0: f64, e_c: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| {
            let i = i as f64;
            i * (omega0 + (1.0 - i) * 0.5 * e_c)
        })
        .collect()
}

pub fn ladder_frequencies(tp: &TransmonParams, count: usize) -> Result<Vec<f64>> {
    Ok(ladder_from(qubit_frequency(tp)?, tp.e_c, count))
}

/// Asymmetric-SQUID Josephson energy E_JΣ√(cos²πΦ + d² sin²πΦ).
pub fn effective_josephson(e_j_sum: f64, asym: f64, flux: f64) -> f64 {
    let (s, c) = (std::f64::consts::PI * flux).sin_cos();
    e_j_sum * (c * c + asym * asym * s * s).sqrt()
}

fn charge_levels_raw(tp: &TransmonParams, flux: f64, cutoff: usize) -> Vec<f64> {
    let size = 2 * cutoff + 1;
    let ej = effective_josephson(tp.e_j_sum, tp.asym, flux);
    let mut h = DMatrix::<f64>::zeros(size, size);
    for k in 0..size {
        let n = k as f64 - cutoff as f64;
        h[(k, k)] = 4.0 * tp.e_c * (n - tp.n_g).powi(2);
        if k + 1 < size {
            h[(k, k + 1)] = -0.5 * ej;
            h[(k + 1, k)] = -0.5 * ej;
        }
    }
    let mut e: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
    e.sort_by(f64::total_cmp);
    let e0 = e[0];
    e.iter().take(tp.n_levels).map(|x| x - e0).collect()
}

pub const MIN_CHARGE_CUTOFF: usize = 10;

/// Lowest `tp.n_levels` eigenfrequencies of 4E_C(n̂ − n_g)² − E_J(Φ)cos φ̂
/// relative to the ground state, from a charge basis truncated at
/// ±`cutoff`. Errors if doubling the cutoff moves any level by more than
/// 1e−9 relative.
pub fn charge_basis_levels(tp: &TransmonParams, flux: f64, cutoff: usize) -> Result<Vec<f64>> {
    tp.validate()?;
    if cutoff < MIN_CHARGE_CUTOFF {
        return Err(invalid("cutoff", format!("must be at least {MIN_CHARGE_CUTOFF}, got {cutoff}")));
    }
    let coarse = charge_levels_raw(tp, flux, cutoff);
    let fine = charge_levels_raw(tp, flux, 2 * cutoff);
    let change = coarse
        .iter()
        .zip(&fine)
        .skip(1)
        .map(|(a, b)| ((a - b) / b).abs())
        .fold(0.0, f64::max);
    if change > 1e-9 {
        return Err(Error::CutoffTooSmall { cutoff, change });
    }
    Ok(coarse)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransmonFit {
    pub e_c: f64,
    pub e_j_sum: f64,
    pub asym: f64,
    /// Root-mean-square frequency residual, rad/s.
    pub rms_residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Least-squares fit of (E_C, E_JΣ, d) to measured (flux, ω₁₀) pairs using
/// the charge-basis spectrum, started from `initial`.
pub fn fit_transmon(data: &[(f64, f64)], initial: &TransmonParams, cutoff: usize) -> Result<TransmonFit> {
    initial.validate()?;
    if data.len() < 3 {
        return Err(invalid("data", "need at least three flux points"));
    }
    if cutoff < MIN_CHARGE_CUTOFF {
        return Err(invalid("cutoff", format!("must be at least {MIN_CHARGE_CUTOFF}")));
    }
    let scale = [initial.e_c, initial.e_j_sum];
    let norm = data.iter().map(|(_, w)| w * w).sum::<f64>();
    let model = |x: &[f64]| -> Option<TransmonParams> {
        let p = TransmonParams {
            e_c: x[0] * scale[0],
            e_j_sum: x[1] * scale[1],
            asym: x[2].abs(),
            n_levels: 2,
            ..*initial
        };
        p.validate().ok().map(|_| p)
    };
    let cost = |x: &[f64]| -> f64 {
        let Some(p) = model(x) else { return f64::INFINITY };
        data.iter()
            .map(|&(flux, w)| {
                let lv = charge_levels_raw(&p, flux, cutoff);
                (lv[1] - w).powi(2)
            })
            .sum::<f64>()
            / norm
    };
    // the cost is a sum of squares whose minimum can be tiny, so the
    // relative stopping rule is applied to the parameters only
    let opts = NelderMeadOptions { rel_tol: 0.0, x_tol: 1e-9, max_iter: 20_000, initial_step: 0.05 };
    let start = [1.0, 1.0, if initial.asym > 0.0 { initial.asym } else { 0.05 }];
    let m = nelder_mead(cost, &start, opts);
    let p = model(&m.x).ok_or_else(|| invalid("fit", "optimiser left the valid parameter region"))?;
    Ok(TransmonFit {
        e_c: p.e_c,
        e_j_sum: p.e_j_sum,
        asym: p.asym,
        rms_residual: (m.value * norm / data.len() as f64).sqrt(),
        iterations: m.iterations,
        converged: m.converged,
    })
}
