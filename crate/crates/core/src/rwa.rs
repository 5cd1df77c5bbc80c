//! Rotating-wave sideband theory.
//!
//! In the frame co-rotating with the modulation the transverse drive
//! becomes g·A(t) with A(t) = exp[i∫₀ᵗ f]. Its Fourier coefficients Δ_m
//! set the strength of the m-th sideband at ν = −mΩ:
//!
//! * sine modulation: Δ_m = J_m(δ/Ω) (Jacobi–Anger);
//! * square modulation:
//!   Δ_m = (2/π) Ωδ/(Ω²m² − δ²) · sin(πm/2 − πδ/2Ω).
//!
//! The square-wave form is evaluated as r/(|m| + r) · sinc(π(|m| − r)/2)
//! with r = δ/Ω, an exact rewrite in which the apparent pole at r = |m| is
//! gone (value ½ there), followed by the parity Δ_{−m} = (−1)^m Δ_m.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bessel::bessel_j;
use crate::error::{invalid, Error, Result};
use crate::grid::{Layer, Observable, SpectrumGrid, SweepAxis};
use crate::latch::QubitParams;
use crate::quadrature::integrate_complex;
use crate::units::to_hz;
use crate::waveform::{ModulationWaveform, WaveformKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SidebandKind {
    Square,
    Sine,
}

impl TryFrom<WaveformKind> for SidebandKind {
    type Error = Error;
    fn try_from(k: WaveformKind) -> Result<Self> {
        match k {
            WaveformKind::Square => Ok(SidebandKind::Square),
            WaveformKind::Sine => Ok(SidebandKind::Sine),
            WaveformKind::RampedSquare => {
                Err(Error::UnsupportedWaveform("ramped square has no closed-form sideband amplitudes".into()))
            }
        }
    }
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

fn parity_sign(m: i64) -> f64 {
    if m % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Square-wave sideband amplitude for m ≥ 0.
fn square_amplitude_nonneg(m: u64, ratio: f64) -> f64 {
    let mf = m as f64;
    if m == 0 {
        return sinc(0.5 * std::f64::consts::PI * ratio);
    }
    ratio / (mf + ratio) * sinc(0.5 * std::f64::consts::PI * (mf - ratio))
}

/// Δ_m for the given modulation kind and ratio δ/Ω ≥ 0.
pub fn sideband_amplitude(kind: SidebandKind, m: i64, ratio: f64) -> f64 {
    debug_assert!(ratio >= 0.0);
    match kind {
        SidebandKind::Sine => bessel_j(m, ratio),
        SidebandKind::Square => {
            let a = square_amplitude_nonneg(m.unsigned_abs(), ratio);
            if m < 0 {
                parity_sign(m) * a
            } else {
                a
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SidebandSet {
    pub kind: SidebandKind,
    pub ratio: f64,
    pub m_max: i64,
    /// Δ_m for m = −m_max..=m_max.
    pub amps: BTreeMap<i64, f64>,
    /// 1 − Σ Δ_m² over the retained orders.
    pub parseval_defect: f64,
}

impl SidebandSet {
    pub fn get(&self, m: i64) -> f64 {
        self.amps.get(&m).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.amps.iter().map(|(m, a)| (*m, *a))
    }
}

fn defect(amps: &BTreeMap<i64, f64>) -> f64 {
    // summing smallest terms first keeps the defect meaningful at 1e-12
    let mut sq: Vec<f64> = amps.values().map(|a| a * a).collect();
    sq.sort_by(f64::total_cmp);
    1.0 - sq.iter().sum::<f64>()
}

pub fn sideband_set(kind: SidebandKind, ratio: f64, m_max: i64) -> Result<SidebandSet> {
    if m_max < 1 {
        return Err(invalid("m_max", "must be at least 1"));
    }
    if !(ratio >= 0.0 && ratio.is_finite()) {
        return Err(invalid("ratio", format!("must be non-negative, got {ratio}")));
    }
    let amps: BTreeMap<i64, f64> = (-m_max..=m_max).map(|m| (m, sideband_amplitude(kind, m, ratio))).collect();
    let parseval_defect = defect(&amps);
    Ok(SidebandSet { kind, ratio, m_max, amps, parseval_defect })
}

/// Parseval target for the adaptive truncation.
pub const DEFAULT_PARSEVAL_TARGET: f64 = 1e-6;
/// Upper bound on the adaptive truncation order.
pub const MAX_ADAPTIVE_ORDER: i64 = 4096;

/// Smallest truncation whose Parseval defect is below `target`, capped at
/// [`MAX_ADAPTIVE_ORDER`]. The square-wave coefficients fall off as 1/m²,
/// so the defect only decays as 1/M³ and large ratios need M in the
/// hundreds.
pub fn adaptive_sideband_set(kind: SidebandKind, ratio: f64, target: f64) -> Result<SidebandSet> {
    if !(ratio >= 0.0 && ratio.is_finite()) {
        return Err(invalid("ratio", format!("must be non-negative, got {ratio}")));
    }
    let mut sum_sq = sideband_amplitude(kind, 0, ratio).powi(2);
    let mut m = 0;
    while m < MAX_ADAPTIVE_ORDER {
        m += 1;
        sum_sq += 2.0 * sideband_amplitude(kind, m, ratio).powi(2);
        if m >= 1 && 1.0 - sum_sq < target {
            break;
        }
    }
    sideband_set(kind, ratio, m)
}

/// Δ_m by direct quadrature of (Ω/2π)∫ e^{−imΩt} A(t) dt over one period,
/// with A(t) = exp[i·phase_integral(0, t)].
pub fn fft_sidebands(w: &ModulationWaveform, m_max: i64) -> Result<SidebandSet> {
    w.validate()?;
    let kind = SidebandKind::try_from(w.kind)?;
    if w.phase != 0.0 {
        return Err(Error::UnsupportedWaveform("sideband amplitudes are real only for zero phase offset".into()));
    }
    if m_max < 1 {
        return Err(invalid("m_max", "must be at least 1"));
    }
    let period = w.period();
    let ratio = w.delta / w.omega;
    // smooth pieces between switches; Gauss-Legendre on each
    let mut edges = vec![0.0];
    if kind == SidebandKind::Square {
        edges.extend(w.switching_times(0.0, period));
    }
    edges.push(period);
    let order = 16;
    let mut amps = BTreeMap::new();
    for m in -m_max..=m_max {
        let cycles = (m.unsigned_abs() as f64 + ratio).max(1.0);
        let panels = (cycles * 2.0).ceil() as usize + 2;
        let mut re = 0.0;
        for piece in edges.windows(2) {
            let (r, _im) = integrate_complex(
                |t| {
                    let theta = w.phase_integral_unchecked(0.0, t) - m as f64 * w.omega * t;
                    (theta.cos(), theta.sin())
                },
                piece[0],
                piece[1],
                panels,
                order,
            );
            re += r;
        }
        amps.insert(m, re / period);
    }
    let parseval_defect = defect(&amps);
    Ok(SidebandSet { kind, ratio, m_max, amps, parseval_defect })
}

/// Which sideband terms enter the RWA population.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SidebandSum {
    /// Every sideband in the set.
    #[default]
    All,
    /// Only the sideband whose resonance ν = −mΩ lies closest to ν. Off the
    /// resolved regime the tails of the other Lorentzians overcount.
    Nearest,
}

/// Multi-sideband steady-state excited population
/// Σ_m (Γ₂/2Γ₁)(gΔ_m)² / [Γ₂² + (ν + mΩ)² + (Γ₂/Γ₁)(gΔ_m)²].
pub fn rwa_population(q: &QubitParams, sb: &SidebandSet, omega_mod: f64, nu: f64) -> Result<f64> {
    rwa_population_with(q, sb, omega_mod, nu, SidebandSum::All)
}

pub fn rwa_population_with(
    q: &QubitParams,
    sb: &SidebandSet,
    omega_mod: f64,
    nu: f64,
    sum: SidebandSum,
) -> Result<f64> {
    if !(q.gamma1 > 0.0) {
        return Err(Error::Undamped);
    }
    let g2 = q.gamma2();
    if !(g2 > 0.0) {
        return Err(invalid("gamma2", "must be positive"));
    }
    let r = g2 / q.gamma1;
    let term = |m: i64, amp: f64| {
        let drive = (q.g * amp).powi(2);
        let det = nu + m as f64 * omega_mod;
        0.5 * r * drive / (g2 * g2 + det * det + r * drive)
    };
    Ok(match sum {
        SidebandSum::All => sb.iter().map(|(m, amp)| term(m, amp)).sum(),
        SidebandSum::Nearest => {
            let m = nearest_sideband(nu, omega_mod).clamp(-sb.m_max, sb.m_max);
            term(m, sb.get(m))
        }
    })
}

/// The m for which ν + mΩ is smallest; ties go to the smaller |m|.
pub fn nearest_sideband(nu: f64, omega_mod: f64) -> i64 {
    let x = -nu / omega_mod;
    let lo = x.floor();
    let hi = lo + 1.0;
    let pick = if (x - lo) < (hi - x) || ((x - lo) == (hi - x) && lo.abs() <= hi.abs()) { lo } else { hi };
    pick as i64
}

/// Power-broadened half-width √(Γ₂² + (gΔ_m)² Γ₂/Γ₁).
pub fn rwa_linewidth(q: &QubitParams, delta_m: f64) -> Result<f64> {
    if !(q.gamma1 > 0.0) {
        return Err(Error::Undamped);
    }
    let g2 = q.gamma2();
    Ok((g2 * g2 + (q.g * delta_m).powi(2) * g2 / q.gamma1).sqrt())
}

/// RWA results are extrapolations below Ω ≈ g.
pub fn rwa_is_extrapolated(q: &QubitParams, omega_mod: f64) -> bool {
    omega_mod < q.g
}

/// RWA population over a (ν, y) grid with adaptively truncated sideband
/// sets. Rows below Ω = g are still filled; the metadata records where
/// they become extrapolations.
pub fn rwa_spectrum(
    q: &QubitParams,
    kind: SidebandKind,
    axis: SweepAxis,
    nus: &[f64],
    ys: &[f64],
    sum: SidebandSum,
) -> Result<SpectrumGrid> {
    q.validate()?;
    let mut values = Vec::with_capacity(nus.len() * ys.len());
    for &y in ys {
        let (delta, omega_mod) = axis.delta_omega(y);
        let sb = if omega_mod > 0.0 {
            adaptive_sideband_set(kind, delta.abs() / omega_mod, DEFAULT_PARSEVAL_TARGET).ok()
        } else {
            None
        };
        for &nu in nus {
            let v = sb.as_ref().and_then(|sb| rwa_population_with(q, sb, omega_mod, nu, sum).ok());
            values.push(v.unwrap_or(f64::NAN));
        }
    }
    let mut grid = SpectrumGrid::from_angular(nus, ys, axis, values, Observable::Population, Layer::Rwa)?;
    grid.meta.insert_param("g_hz", to_hz(q.g));
    grid.meta.insert_param("rwa_sum", serde_json::to_value(sum).unwrap_or_default());
    grid.meta.insert_param("extrapolated_below_omega_hz", to_hz(q.g));
    Ok(grid)
}
