//! Lindblad dynamics of the modulated, driven qubit or transmon ladder and
//! its periodic steady state.
//!
//! Levels are indexed by excitation number, |0⟩ ground. In the frame
//! rotating at the drive frequency ω the Hamiltonian is
//!
//! ```text
//! H(t) = Σ_i [ω_i − iω + i·f(t)] |i⟩⟨i| + (g/2)(|0⟩⟨1| + |1⟩⟨0|)
//! ```
//!
//! which for two levels is ½[ν + f(t)]σ_z + (g/2)σ_x up to a constant.
//! Because H(t) = H₀ + f(t)·n̂, the generator splits as L(t) = L₀ + f(t)·K
//! and the period map M is built either from exact exponentials (square
//! wave) or from fourth-order Magnus steps. The steady state is the fixed
//! point of M, and time averages come from the accumulated integral
//! A = ∫₀ᵀ P(t) dt of the propagator.

use nalgebra::{DVector, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::grid::{Layer, Observable, SpectrumGrid, SweepAxis};
use crate::latch::QubitParams;
use crate::linalg::{
    c, dissipator_super, expm, expm_with_integral, hamiltonian_super, identity, max_abs, real_diag, unvectorize,
    vectorize, CMatrix,
};
use crate::transmon::{ladder_frequencies, ladder_from, TransmonParams};
use crate::units::{bose_occupation, to_hz};
use crate::waveform::{ModulationWaveform, WaveformKind};

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    pub elements: CMatrix,
}

impl DensityMatrix {
    pub fn dim(&self) -> usize {
        self.elements.nrows()
    }

    /// |k⟩⟨k|.
    pub fn basis_state(dim: usize, k: usize) -> Self {
        let mut e = CMatrix::zeros(dim, dim);
        e[(k, k)] = c(1.0);
        Self { elements: e }
    }

    /// |ψ⟩⟨ψ| for a normalised `psi`.
    pub fn pure(psi: &[Complex64]) -> Self {
        let v = DVector::from_column_slice(psi);
        Self { elements: &v * v.adjoint() }
    }

    pub fn populations(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.elements[(i, i)].re).collect()
    }

    pub fn trace(&self) -> Complex64 {
        self.elements.trace()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let herm = (&self.elements + self.elements.adjoint()) * c(0.5);
        SymmetricEigen::new(herm).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Hermitian, unit trace and positive semidefinite, each to `tol`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let herm = max_abs(&(&self.elements - self.elements.adjoint()));
        if herm > tol {
            return Err(invalid("rho", format!("not Hermitian (defect {herm:e})")));
        }
        let tr = (self.trace() - c(1.0)).norm();
        if tr > tol {
            return Err(invalid("rho", format!("trace defect {tr:e}")));
        }
        let lam = self.min_eigenvalue();
        if lam < -1e-8 {
            return Err(invalid("rho", format!("negative eigenvalue {lam:e}")));
        }
        Ok(())
    }

    fn hermitised(m: CMatrix) -> Self {
        Self { elements: (&m + m.adjoint()) * c(0.5) }
    }
}

/// Level structure, drive and environment of the driven ladder.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultilevelModel {
    /// Lab-frame level frequencies ω_i with ω_0 = 0, rad/s.
    pub level_freqs: Vec<f64>,
    /// Transverse coupling g on the 0↔1 transition, rad/s.
    pub drive_coupling: f64,
    /// Relaxation rate Γ₁ of the 1→0 transition; transition i−1↔i relaxes
    /// at i·Γ₁(n̄_i + 1) and is excited at i·Γ₁n̄_i.
    pub gamma1: f64,
    /// Thermal occupation n̄_i of transition i−1↔i, index i−1.
    pub nbar: Vec<f64>,
    /// Pure dephasing rate Γ_φ.
    pub gamma_phi: f64,
}

impl MultilevelModel {
    fn with_levels(q: &QubitParams, level_freqs: Vec<f64>) -> Self {
        let nbar = level_freqs.windows(2).map(|w| bose_occupation(w[1] - w[0], q.t_bath)).collect();
        Self { level_freqs, drive_coupling: q.g, gamma1: q.gamma1, nbar, gamma_phi: q.gamma_phi }
    }

    pub fn two_level(q: &QubitParams) -> Self {
        Self::with_levels(q, vec![0.0, q.omega0])
    }

    /// Perturbative transmon ladder with ω₁ = q.omega0 and anharmonicity
    /// −`e_c`.
    pub fn ladder(q: &QubitParams, e_c: f64, n_levels: usize) -> Self {
        Self::with_levels(q, ladder_from(q.omega0, e_c, n_levels))
    }

    /// Ladder from circuit parameters; the qubit frequency of `tp` replaces
    /// `q.omega0`.
    pub fn from_transmon(tp: &TransmonParams, q: &QubitParams) -> Result<Self> {
        let freqs = ladder_frequencies(tp, tp.n_levels)?;
        let q = QubitParams { omega0: freqs[1], ..*q };
        Ok(Self::with_levels(&q, freqs))
    }

    pub fn n_levels(&self) -> usize {
        self.level_freqs.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n_levels();
        if n != 2 && n != 5 {
            return Err(Error::UnsupportedDimension(n));
        }
        if self.nbar.len() != n - 1 {
            return Err(invalid("nbar", "need one thermal occupation per transition"));
        }
        for (name, v) in [("gamma1", self.gamma1), ("gamma_phi", self.gamma_phi), ("g", self.drive_coupling)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(invalid(name, format!("must be non-negative, got {v}")));
            }
        }
        if self.nbar.iter().any(|n| !(*n >= 0.0)) {
            return Err(invalid("nbar", "thermal occupations must be non-negative"));
        }
        Ok(())
    }

    fn number_operator(&self) -> CMatrix {
        real_diag(&(0..self.n_levels()).map(|i| i as f64).collect::<Vec<_>>())
    }

    /// Static part H₀ of the rotating-frame Hamiltonian at drive frequency
    /// `omega`.
    fn static_hamiltonian(&self, omega: f64) -> CMatrix {
        let diag: Vec<f64> = self.level_freqs.iter().enumerate().map(|(i, w)| w - i as f64 * omega).collect();
        let mut h = real_diag(&diag);
        h[(0, 1)] = c(0.5 * self.drive_coupling);
        h[(1, 0)] = c(0.5 * self.drive_coupling);
        h
    }

    /// Sum of all dissipators as a superoperator.
    fn dissipator(&self) -> CMatrix {
        let n = self.n_levels();
        let mut d = CMatrix::zeros(n * n, n * n);
        for i in 1..n {
            let rate = i as f64 * self.gamma1;
            let nb = self.nbar[i - 1];
            let mut lower = CMatrix::zeros(n, n);
            lower[(i - 1, i)] = c((rate * (nb + 1.0)).sqrt());
            d += dissipator_super(&lower);
            if nb > 0.0 {
                let mut raise = CMatrix::zeros(n, n);
                raise[(i, i - 1)] = c((rate * nb).sqrt());
                d += dissipator_super(&raise);
            }
        }
        if self.gamma_phi > 0.0 {
            // D[√(2Γ_φ) n̂] = −Γ_φ[n̂, [n̂, ·]]
            d += dissipator_super(&(self.number_operator() * c((2.0 * self.gamma_phi).sqrt())));
        }
        d
    }
}

/// Rotating-frame Hamiltonian at time `t`, rad/s.
pub fn hamiltonian_at(model: &MultilevelModel, q: &QubitParams, w: &ModulationWaveform, t: f64) -> Result<CMatrix> {
    model.validate()?;
    Ok(model.static_hamiltonian(q.omega) + model.number_operator() * c(w.evaluate(t)))
}

/// Superoperator L with dρ/dt = L vec(ρ) for the Hamiltonian `h`.
pub fn lindblad_generator(model: &MultilevelModel, h: &CMatrix) -> Result<CMatrix> {
    model.validate()?;
    if h.nrows() != model.n_levels() || h.ncols() != model.n_levels() {
        return Err(Error::UnsupportedDimension(h.nrows()));
    }
    Ok(hamiltonian_super(h) + model.dissipator())
}

/// One-period propagator together with its time average.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodMap {
    /// ρ(t₀ + T) = M ρ(t₀) in vectorised form.
    pub map: CMatrix,
    /// (1/T)∫₀ᵀ P(t) dt, so that the time-averaged state is `average`·ρ(t₀).
    pub average: CMatrix,
    pub period: f64,
    /// Time steps used (1 per piece for the exact square-wave product).
    pub steps: usize,
}

/// Maximum change of the stepped map under step doubling.
pub const PERIOD_MAP_TOL: f64 = 1e-8;
const MAX_TOTAL_STEPS: usize = 1 << 20;

struct SplitGenerator {
    l0: CMatrix,
    k: CMatrix,
    /// [K, L₀].
    comm: CMatrix,
}

impl SplitGenerator {
    fn new(model: &MultilevelModel, q: &QubitParams) -> Self {
        let l0 = hamiltonian_super(&model.static_hamiltonian(q.omega)) + model.dissipator();
        let k = hamiltonian_super(&model.number_operator());
        let comm = &k * &l0 - &l0 * &k;
        Self { l0, k, comm }
    }

    fn at(&self, f: f64) -> CMatrix {
        &self.l0 + &self.k * c(f)
    }
}

/// Intervals on which the waveform is smooth, covering [0, T].
fn smooth_pieces(w: &ModulationWaveform) -> Vec<(f64, f64)> {
    let period = w.period();
    let mut cuts = vec![0.0, period];
    for s in w.switching_times(0.0, period) {
        match w.kind {
            WaveformKind::Square => cuts.push(s),
            WaveformKind::RampedSquare => {
                cuts.push(s - 0.5 * w.ramp);
                cuts.push(s + 0.5 * w.ramp);
            }
            WaveformKind::Sine => {}
        }
    }
    if w.kind == WaveformKind::RampedSquare {
        // a ramp window straddling t = 0 also straddles t = T
        for s in w.switching_times(-period, 0.0).into_iter().chain(w.switching_times(period, 2.0 * period)) {
            cuts.push(s - 0.5 * w.ramp);
            cuts.push(s + 0.5 * w.ramp);
        }
    }
    cuts.retain(|t| (0.0..=period).contains(t));
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|a, b| (*a - *b).abs() <= 1e-15 * period);
    cuts.windows(2).map(|p| (p[0], p[1])).filter(|(a, b)| b > a).collect()
}

fn exact_square_map(gen: &SplitGenerator, w: &ModulationWaveform) -> PeriodMap {
    let n = gen.l0.nrows();
    let mut m = identity(n);
    let mut a = CMatrix::zeros(n, n);
    let pieces = smooth_pieces(w);
    for &(t0, t1) in &pieces {
        let (e, int) = expm_with_integral(&gen.at(w.evaluate(0.5 * (t0 + t1))), t1 - t0);
        a += &int * &m;
        m = &e * &m;
    }
    let period = w.period();
    PeriodMap { map: m, average: a * c(1.0 / period), period, steps: pieces.len() }
}

const C1: f64 = 0.5 - 0.288_675_134_594_812_9; // ½ − √3/6
const C2: f64 = 0.5 + 0.288_675_134_594_812_9;
const MAGNUS_COMM: f64 = 0.144_337_567_297_406_44; // √3/12

/// Magnus-4 propagation with `counts[k]` (even) uniform steps on piece k;
/// the average uses Simpson's rule on the step nodes.
fn stepped_map(gen: &SplitGenerator, w: &ModulationWaveform, pieces: &[(f64, f64)], counts: &[usize]) -> PeriodMap {
    let n = gen.l0.nrows();
    let mut m = identity(n);
    let mut a = CMatrix::zeros(n, n);
    for (&(t0, t1), &steps) in pieces.iter().zip(counts) {
        if steps == 0 {
            // constant f on this piece
            let (e, int) = expm_with_integral(&gen.at(w.evaluate(0.5 * (t0 + t1))), t1 - t0);
            a += &int * &m;
            m = &e * &m;
            continue;
        }
        let h = (t1 - t0) / steps as f64;
        a += &m * c(h / 3.0);
        for k in 0..steps {
            let t = t0 + k as f64 * h;
            let (f1, f2) = (w.evaluate(t + C1 * h), w.evaluate(t + C2 * h));
            let omega = (&gen.l0 * c(2.0) + &gen.k * c(f1 + f2)) * c(0.5 * h)
                + &gen.comm * c(MAGNUS_COMM * h * h * (f2 - f1));
            m = expm(&omega) * &m;
            let weight = if k + 1 == steps {
                1.0
            } else if (k + 1) % 2 == 1 {
                4.0
            } else {
                2.0
            };
            a += &m * c(weight * h / 3.0);
        }
    }
    let period = w.period();
    PeriodMap { map: m, average: a * c(1.0 / period), period, steps: counts.iter().map(|&s| s.max(1)).sum() }
}

/// The map ρ(0) ↦ ρ(T) over one modulation period, with T = 2π/Ω.
pub fn period_map(model: &MultilevelModel, q: &QubitParams, w: &ModulationWaveform) -> Result<PeriodMap> {
    model.validate()?;
    w.validate()?;
    let gen = SplitGenerator::new(model, q);
    if w.kind == WaveformKind::Square || w.delta == 0.0 {
        // a zero-amplitude waveform of any kind is the constant zero square wave
        return Ok(exact_square_map(&gen, &ModulationWaveform { kind: WaveformKind::Square, ..*w }));
    }
    let pieces = smooth_pieces(w);
    // L₀ is exponentiated exactly, so the starting resolution only has to
    // follow f(t) and its coupling through [K, L₀]; doubling does the rest.
    let scale = w.delta * max_abs(&gen.k) + w.omega + max_abs(&gen.comm).sqrt();
    let mut counts: Vec<usize> = pieces
        .iter()
        .map(|&(a, b)| {
            let probe = [a, 0.5 * (a + b), b].map(|t| w.evaluate(t.clamp(a + 1e-9 * (b - a), b - 1e-9 * (b - a))));
            if probe[0] == probe[1] && probe[1] == probe[2] {
                return 0;
            }
            let s = ((b - a) * scale / 0.5).ceil() as usize;
            (s.max(4) + 1) & !1
        })
        .collect();
    let mut last = stepped_map(&gen, w, &pieces, &counts);
    loop {
        counts.iter_mut().for_each(|s| *s *= 2);
        let next = stepped_map(&gen, w, &pieces, &counts);
        let defect = max_abs(&(&next.map - &last.map)).max(max_abs(&(&next.average - &last.average)));
        if defect <= PERIOD_MAP_TOL {
            return Ok(next);
        }
        if next.steps >= MAX_TOTAL_STEPS {
            return Err(Error::NonConvergent { defect, steps: next.steps });
        }
        last = next;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SteadyState {
    /// Fixed point of the period map at t = 0.
    pub rho: DensityMatrix,
    /// Time average of ρ(t) over one period.
    pub averaged: DensityMatrix,
    /// Diagonal of `averaged`.
    pub populations: Vec<f64>,
}

/// Relative size below which the last LU pivot signals a degenerate fixed
/// point.
const PIVOT_TOL: f64 = 1e-13;

pub fn steady_state(model: &MultilevelModel, q: &QubitParams, w: &ModulationWaveform) -> Result<SteadyState> {
    model.validate()?;
    if !(model.gamma1 > 0.0) {
        return Err(Error::Undamped);
    }
    let pm = period_map(model, q, w)?;
    fixed_point(&pm, model.n_levels())
}

fn fixed_point(pm: &PeriodMap, dim: usize) -> Result<SteadyState> {
    let size = dim * dim;
    // (M − I)x = 0 with the first row replaced by Tr ρ = 1
    let mut b = &pm.map - identity(size);
    for j in 0..size {
        b[(0, j)] = c(0.0);
    }
    for i in 0..dim {
        b[(0, i + dim * i)] = c(1.0);
    }
    let mut rhs = DVector::zeros(size);
    rhs[0] = c(1.0);
    let lu = b.lu();
    let u = lu.u();
    let diag: Vec<f64> = (0..size).map(|i| u[(i, i)].norm()).collect();
    let biggest = diag.iter().copied().fold(0.0, f64::max);
    let smallest = diag.iter().copied().fold(f64::INFINITY, f64::min);
    if !(smallest > PIVOT_TOL * biggest) {
        return Err(Error::DegenerateFixedPoint { pivot: smallest / biggest.max(f64::MIN_POSITIVE) });
    }
    let x = lu.solve(&rhs).ok_or(Error::DegenerateFixedPoint { pivot: 0.0 })?;
    let rho = DensityMatrix::hermitised(unvectorize(&x, dim));
    let averaged = DensityMatrix::hermitised(unvectorize(&(&pm.average * &x), dim));
    let populations = averaged.populations();
    Ok(SteadyState { rho, averaged, populations })
}

/// Applies a vectorised map to a density matrix.
pub fn apply_map(map: &CMatrix, rho: &DensityMatrix) -> DensityMatrix {
    DensityMatrix { elements: unvectorize(&(map * vectorize(&rho.elements)), rho.dim()) }
}

/// Steady-state populations of the undriven ladder: detailed balance gives
/// P_i/P_{i−1} = n̄_i/(n̄_i + 1).
pub fn background_populations(model: &MultilevelModel) -> Vec<f64> {
    let mut p = vec![1.0];
    for nb in &model.nbar {
        let last = *p.last().unwrap_or(&1.0);
        p.push(last * nb / (nb + 1.0));
    }
    let total: f64 = p.iter().sum();
    p.iter().map(|x| x / total).collect()
}

/// Resonator pull Δω_r = Σ_i P_i χ_i with
/// χ_i = g₀²[i/(ω_i − ω_{i−1} − ω_r) − (i+1)/(ω_{i+1} − ω_i − ω_r)].
pub fn dispersive_shift(tp: &TransmonParams, populations: &[f64]) -> Result<f64> {
    let total: f64 = populations.iter().sum();
    if (total - 1.0).abs() > 1e-8 {
        return Err(invalid("populations", format!("must sum to 1, got {total}")));
    }
    let w = ladder_frequencies(tp, populations.len() + 1)?;
    let denom = |i: usize| -> Result<f64> {
        // transition i−1 ↔ i
        let d = w[i] - w[i - 1] - tp.omega_r;
        if d.abs() < 1e-6 * tp.omega_r.abs() {
            return Err(Error::ResonanceCollision { level: i, denominator: d });
        }
        Ok(d)
    };
    let g2 = tp.g0 * tp.g0;
    let mut shift = 0.0;
    for (i, p) in populations.iter().enumerate() {
        let mut chi = -((i + 1) as f64) / denom(i + 1)?;
        if i > 0 {
            chi += i as f64 / denom(i)?;
        }
        shift += p * g2 * chi;
    }
    Ok(shift)
}

/// Dispersive shift relative to the undriven ladder in the same bath.
pub fn relative_dispersive_shift(tp: &TransmonParams, model: &MultilevelModel, populations: &[f64]) -> Result<f64> {
    Ok(dispersive_shift(tp, populations)? - dispersive_shift(tp, &background_populations(model))?)
}

/// Steady-state sweep over (ν, y). Emits P̄₁ when `readout` is `None`,
/// otherwise the background-subtracted dispersive shift in Hz. Failed cells
/// become NaN.
pub fn dissipative_spectrum(
    model: &MultilevelModel,
    q: &QubitParams,
    w: &ModulationWaveform,
    axis: SweepAxis,
    nus: &[f64],
    ys: &[f64],
    readout: Option<&TransmonParams>,
) -> Result<SpectrumGrid> {
    model.validate()?;
    let background = match readout {
        Some(tp) => Some(dispersive_shift(tp, &background_populations(model))?),
        None => None,
    };
    let values: Vec<f64> = ys
        .par_iter()
        .flat_map_iter(|&y| {
            let (delta, omega) = axis.delta_omega(y);
            let wy = ModulationWaveform { delta, omega, ..*w };
            nus.iter().map(move |&nu| (wy, nu)).collect::<Vec<_>>()
        })
        .map(|(wy, nu)| {
            let qn = q.with_detuning(nu);
            let cell = steady_state(model, &qn, &wy).and_then(|ss| match (readout, background) {
                (Some(tp), Some(bg)) => Ok(to_hz(dispersive_shift(tp, &ss.populations)? - bg)),
                _ => Ok(ss.populations[1]),
            });
            cell.unwrap_or(f64::NAN)
        })
        .collect();
    let (observable, layer) = match (readout, model.n_levels()) {
        (Some(_), _) => (Observable::DispersiveShiftHz, Layer::Lindblad5),
        (None, 2) => (Observable::Population, Layer::Lindblad2),
        (None, _) => (Observable::Population, Layer::Lindblad5),
    };
    let mut grid = SpectrumGrid::from_angular(nus, ys, axis, values, observable, layer)?;
    grid.meta.insert_param("waveform", serde_json::to_value(w.kind).unwrap_or_default());
    grid.meta.insert_param("g_hz", to_hz(model.drive_coupling));
    grid.meta.insert_param("gamma1_hz", to_hz(model.gamma1));
    grid.meta.insert_param("gamma_phi_hz", to_hz(model.gamma_phi));
    grid.meta.insert_param("n_levels", model.n_levels());
    Ok(grid)
}
