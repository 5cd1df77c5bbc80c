//! Adiabatic-impulse description of a qubit under ideal square-wave
//! (latching) modulation.
//!
//! Within each latch the Hamiltonian ½(ν ± δ)σ_z + ½gσ_x is constant, so
//! the evolution is pure adiabatic phase in that latch's eigenbasis. At the
//! switches the state is frozen and re-expressed in the other latch's
//! eigenbasis. One period starting in the right latch is
//!
//! ```text
//! U = U_{φ/2}^(r) · Uᵀ_{r→ℓ} · U_φ^(ℓ) · U_{r→ℓ} · U_{φ/2}^(r)
//! ```
//!
//! which collapses to the two complex numbers α and γ of [`PeriodUnitary`].
//!
//! Eigenvectors use the basis where σ_z = diag(1, −1), ordered
//! (excited, ground): |ψ₊⟩ = (cos θ/2, sin θ/2), |ψ₋⟩ = (−sin θ/2, cos θ/2).

use std::f64::consts::PI;

use nalgebra::Matrix2;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::grid::{Layer, Observable, SpectrumGrid, SweepAxis};
use crate::roots::bisect_expanding;

/// Effective two-level parameters in the frame rotating at the drive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QubitParams {
    /// Bare qubit frequency ω₀, rad/s.
    pub omega0: f64,
    /// Transverse drive frequency ω, rad/s.
    pub omega: f64,
    /// Drive coupling g, rad/s.
    pub g: f64,
    /// Relaxation rate Γ₁, 1/s.
    pub gamma1: f64,
    /// Pure dephasing rate Γ_φ, 1/s.
    pub gamma_phi: f64,
    /// Bath temperature, K.
    pub t_bath: f64,
}

impl QubitParams {
    /// Detuning ν = ω₀ − ω.
    pub fn detuning(&self) -> f64 {
        self.omega0 - self.omega
    }

    /// Decoherence rate Γ₂ = Γ₁/2 + Γ_φ.
    pub fn gamma2(&self) -> f64 {
        0.5 * self.gamma1 + self.gamma_phi
    }

    /// Same qubit, drive frequency moved so that ω₀ − ω = `nu`.
    pub fn with_detuning(mut self, nu: f64) -> Self {
        self.omega = self.omega0 - nu;
        self
    }

    /// Sets Γ_φ from a target Γ₂.
    pub fn with_gamma2(mut self, gamma2: f64) -> Self {
        self.gamma_phi = gamma2 - 0.5 * self.gamma1;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let checks: [(&'static str, f64); 4] =
            [("g", self.g), ("gamma1", self.gamma1), ("gamma_phi", self.gamma_phi), ("t_bath", self.t_bath)];
        for (name, v) in checks {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(invalid(name, format!("must be non-negative and finite, got {v}")));
            }
        }
        if !self.omega0.is_finite() || !self.omega.is_finite() {
            return Err(invalid("omega0", "qubit and drive frequencies must be finite"));
        }
        Ok(())
    }
}

/// Per-latch quantities derived from (ν, δ, g, Ω).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatchFrame {
    pub theta_r: f64,
    pub theta_l: f64,
    /// Level splitting √((ν+δ)² + g²) in the right latch, rad/s.
    pub eps_r: f64,
    /// Level splitting √((ν−δ)² + g²) in the left latch, rad/s.
    pub eps_l: f64,
    /// Adiabatic phase gathered in half a period in the right latch.
    pub phi_r: f64,
    pub phi_l: f64,
    /// Sudden-switch probability sin²[(θℓ − θr)/2].
    pub p_s: f64,
}

impl LatchFrame {
    /// Frame for detuning `nu`, coupling `g`, amplitude `delta` and
    /// modulation frequency `omega_mod`.
    pub fn new(nu: f64, g: f64, delta: f64, omega_mod: f64) -> Result<Self> {
        if !(omega_mod > 0.0) {
            return Err(invalid("omega_mod", format!("must be positive, got {omega_mod}")));
        }
        if !(g >= 0.0) {
            return Err(invalid("g", format!("must be non-negative, got {g}")));
        }
        if !(delta >= 0.0) {
            return Err(invalid("delta", format!("must be non-negative, got {delta}")));
        }
        if g == 0.0 && nu.abs() <= delta {
            return Err(Error::DegenerateCrossing);
        }
        let (xr, xl) = (nu + delta, nu - delta);
        let theta_r = g.atan2(xr);
        let theta_l = g.atan2(xl);
        let eps_r = xr.hypot(g);
        let eps_l = xl.hypot(g);
        let half_period = PI / omega_mod;
        let p_s = (0.5 * (theta_l - theta_r)).sin().powi(2);
        Ok(Self {
            theta_r,
            theta_l,
            eps_r,
            eps_l,
            phi_r: 0.5 * eps_r * half_period,
            phi_l: 0.5 * eps_l * half_period,
            p_s,
        })
    }

    /// The frame seen by a period that starts in the left latch.
    pub fn swapped(&self) -> Self {
        Self {
            theta_r: self.theta_l,
            theta_l: self.theta_r,
            eps_r: self.eps_l,
            eps_l: self.eps_r,
            phi_r: self.phi_l,
            phi_l: self.phi_r,
            p_s: self.p_s,
        }
    }

    /// (|ψ₊⁽ʳ⁾⟩, |ψ₋⁽ʳ⁾⟩) in the σ_z basis.
    pub fn right_eigenvectors(&self) -> ([f64; 2], [f64; 2]) {
        let (s, c) = (0.5 * self.theta_r).sin_cos();
        ([c, s], [-s, c])
    }
}

/// [`LatchFrame::new`] from qubit parameters.
pub fn latch_frame(q: &QubitParams, delta: f64, omega_mod: f64) -> Result<LatchFrame> {
    LatchFrame::new(q.detuning(), q.g, delta, omega_mod)
}

/// One-period propagator [[α, −γ*], [γ, α*]] in the right-latch eigenbasis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodUnitary {
    pub alpha: Complex64,
    pub gamma: Complex64,
    /// Floquet phase φ ∈ [0, π], cos φ = Re α.
    pub phi: f64,
    /// sin φ, evaluated as √(|γ|² + (Im α)²) so it keeps full relative
    /// precision near φ = 0 and φ = π.
    pub sin_phi: f64,
}

pub fn period_unitary(lf: &LatchFrame) -> PeriodUnitary {
    let p = lf.p_s;
    let alpha = Complex64::from_polar(1.0 - p, -(lf.phi_r + lf.phi_l))
        + Complex64::from_polar(p, -(lf.phi_r - lf.phi_l));
    let gamma = Complex64::new(0.0, -2.0 * (p * (1.0 - p)).sqrt() * lf.phi_l.sin());
    let sin_phi = (gamma.norm_sqr() + alpha.im * alpha.im).sqrt();
    let phi = sin_phi.atan2(alpha.re);
    PeriodUnitary { alpha, gamma, phi, sin_phi }
}

impl PeriodUnitary {
    pub fn matrix(&self) -> Matrix2<Complex64> {
        Matrix2::new(self.alpha, -self.gamma.conj(), self.gamma, self.alpha.conj())
    }

    /// Long-time average of the excited population starting from the
    /// ground state of the starting latch.
    pub fn time_averaged_population(&self) -> f64 {
        let g2 = self.gamma.norm_sqr();
        let denom = g2 + self.alpha.im * self.alpha.im;
        if denom == 0.0 {
            0.0
        } else {
            0.5 * g2 / denom
        }
    }
}

/// Excited population after one period, 4 p_s (1 − p_s) sin² φℓ.
pub fn single_period_population(lf: &LatchFrame) -> f64 {
    4.0 * lf.p_s * (1.0 - lf.p_s) * lf.phi_l.sin().powi(2)
}

/// Floquet phases below this |sin φ| use the removable-singularity limit.
pub const DEGENERATE_SIN_PHI: f64 = 1e-9;

/// Excited population after `n` periods, |γ|² sin²(nφ)/sin²φ.
pub fn n_period_population(pu: &PeriodUnitary, n: u64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let g2 = pu.gamma.norm_sqr();
    let nf = n as f64;
    if pu.sin_phi < DEGENERATE_SIN_PHI {
        return g2 * nf * nf;
    }
    let ratio = (nf * pu.phi).sin() / pu.sin_phi;
    g2 * ratio * ratio
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StartLatch {
    RightStart,
    LeftStart,
    /// Mean of the right- and left-start averages.
    PhaseAveraged,
}

/// Time-averaged excited population.
pub fn averaged_population(lf: &LatchFrame, start: StartLatch) -> f64 {
    let right = || period_unitary(lf).time_averaged_population();
    let left = || period_unitary(&lf.swapped()).time_averaged_population();
    match start {
        StartLatch::RightStart => right(),
        StartLatch::LeftStart => left(),
        StartLatch::PhaseAveraged => 0.5 * (right() + left()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResonanceFamily {
    /// φℓ − φr = m₋π, the p_s ≈ 1 limit of Im α = 0.
    DiffRes,
    /// φℓ + φr = m₊π, the p_s ≈ 0 limit of Im α = 0.
    SumRes,
    /// φℓ = (2n + 1)π/2, maximum of the single-period population.
    SinglePeriodRes,
    /// φℓ = n′π, coherent destruction of tunnelling.
    AntiRes,
}

impl ResonanceFamily {
    pub const ALL: [ResonanceFamily; 4] =
        [Self::DiffRes, Self::SumRes, Self::SinglePeriodRes, Self::AntiRes];

    pub fn name(&self) -> &'static str {
        match self {
            Self::DiffRes => "diff_res",
            Self::SumRes => "sum_res",
            Self::SinglePeriodRes => "single_period_res",
            Self::AntiRes => "anti_res",
        }
    }
}

/// Points (Ω, ν) on one resonance curve for the given modulation
/// frequencies. Ω values with no real solution are skipped. Curves with
/// two branches (±ν for the even sum condition, δ ± √… for the
/// single-period conditions) list the upper branch first.
pub fn resonance_curves(
    g: f64,
    delta: f64,
    family: ResonanceFamily,
    index: i64,
    omegas: &[f64],
) -> Result<Vec<(f64, f64)>> {
    match family {
        ResonanceFamily::DiffRes if index == 0 => {
            return Err(invalid("index", "difference resonances need a nonzero index"))
        }
        ResonanceFamily::SumRes | ResonanceFamily::AntiRes if index < 1 => {
            return Err(invalid("index", "sum and anti-resonance indices start at 1"))
        }
        ResonanceFamily::SinglePeriodRes if index < 0 => {
            return Err(invalid("index", "single-period resonance index must be non-negative"))
        }
        _ => {}
    }
    if omegas.iter().any(|w| !(*w > 0.0)) {
        return Err(invalid("omega_mod", "modulation frequencies must be positive"));
    }
    let eps_l = move |nu: f64| (nu - delta).hypot(g);
    let eps_r = move |nu: f64| (nu + delta).hypot(g);
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for &om in omegas {
        let tol = 1e-6 * om;
        match family {
            ResonanceFamily::DiffRes => {
                let target = 2.0 * index as f64 * om;
                if target.abs() >= 2.0 * delta {
                    continue;
                }
                // eps_l − eps_r is odd and decreasing in ν; solve on ν ≥ 0
                // for −|target| and mirror when target > 0.
                let t = -target.abs();
                let h = |nu: f64| eps_l(nu) - eps_r(nu) - t;
                if let Some(nu) = bisect_expanding(h, 0.0, delta.max(g).max(om), tol, 200) {
                    upper.push((om, if target > 0.0 { -nu } else { nu }));
                }
            }
            ResonanceFamily::SumRes => {
                let target = 2.0 * index as f64 * om;
                let h = |nu: f64| eps_l(nu) + eps_r(nu) - target;
                if h(0.0) > 0.0 {
                    continue;
                }
                if let Some(nu) = bisect_expanding(h, 0.0, delta.max(g).max(om), tol, 200) {
                    upper.push((om, nu));
                    if nu > 0.0 {
                        lower.push((om, -nu));
                    }
                }
            }
            ResonanceFamily::SinglePeriodRes | ResonanceFamily::AntiRes => {
                let eps = if family == ResonanceFamily::AntiRes {
                    2.0 * index as f64 * om
                } else {
                    (2 * index + 1) as f64 * om
                };
                let rad = eps * eps - g * g;
                if rad < 0.0 {
                    continue;
                }
                let s = rad.sqrt();
                upper.push((om, delta + s));
                if s > 0.0 {
                    lower.push((om, delta - s));
                }
            }
        }
    }
    upper.extend(lower);
    Ok(upper)
}

/// Smallest Ω for which the sum resonance of order `index` exists.
pub fn sum_resonance_threshold(g: f64, delta: f64, index: i64) -> f64 {
    delta.hypot(g) / index as f64
}

/// Phase-averaged population over a (ν, Ω) or (ν, δ) grid. Cells where the
/// latch frame is undefined are NaN and counted in the metadata.
pub fn latch_spectrum(q: &QubitParams, axis: SweepAxis, nus: &[f64], ys: &[f64]) -> Result<SpectrumGrid> {
    q.validate()?;
    let nx = nus.len();
    let values: Vec<f64> = (0..ys.len() * nx)
        .into_par_iter()
        .map(|idx| {
            let (iy, ix) = (idx / nx, idx % nx);
            let (delta, omega_mod) = axis.delta_omega(ys[iy]);
            LatchFrame::new(nus[ix], q.g, delta, omega_mod)
                .map(|lf| averaged_population(&lf, StartLatch::PhaseAveraged))
                .unwrap_or(f64::NAN)
        })
        .collect();
    let mut grid = SpectrumGrid::from_angular(nus, ys, axis, values, Observable::Population, Layer::AdiabaticImpulse)?;
    grid.meta.insert_param("g_hz", crate::units::to_hz(q.g));
    Ok(grid)
}
