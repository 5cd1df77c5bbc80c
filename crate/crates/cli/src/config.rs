//! TOML run configuration. Frequencies and rates are ordinary frequencies
//! in Hz (f = ω/2π), times in seconds, temperatures in kelvin; conversion to
//! angular units happens in the `*_params` helpers.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use latchsim::latch::{QubitParams, ResonanceFamily};
use latchsim::rwa::SidebandSum;
use latchsim::sudden::RampSide;
use latchsim::transmon::{drive_coupling, flux_for_qubit_frequency, TransmonParams};
use latchsim::units::hz;
use latchsim::{Layer, ModulationWaveform, SweepAxis, WaveformKind};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub waveform: WaveformSection,
    pub qubit: QubitSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transmon: Option<TransmonSection>,
    #[serde(default)]
    pub sweep: SweepSection,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaveformSection {
    #[serde(default = "default_kind")]
    pub kind: WaveformKind,
    pub delta_hz: f64,
    /// Fixed modulation frequency; required when the sweep y-axis is δ.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_hz: Option<f64>,
    #[serde(default)]
    pub phase_rad: f64,
    #[serde(default)]
    pub ramp_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QubitSection {
    pub omega0_hz: f64,
    /// Falls back to 2g₀√n_r from `[transmon]` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_hz: Option<f64>,
    pub gamma1_hz: f64,
    /// Give either Γ₂ or Γ_φ (Γ₂ = Γ₁/2 + Γ_φ); neither means Γ_φ = 0.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma2_hz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_phi_hz: Option<f64>,
    #[serde(default)]
    pub t_bath_k: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransmonSection {
    pub e_c_hz: f64,
    pub e_j_sum_hz: f64,
    #[serde(default)]
    pub asym: f64,
    /// Inverted from `qubit.omega0_hz` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flux_dc: Option<f64>,
    #[serde(default)]
    pub flux_sq: f64,
    #[serde(default)]
    pub omega_r_hz: f64,
    #[serde(default)]
    pub g0_hz: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_r: Option<f64>,
    #[serde(default)]
    pub n_g: f64,
    #[serde(default = "default_levels")]
    pub n_levels: usize,
    /// Two-column CSV (flux in Φ₀, f₁₀ in Hz) for `fit-transmon`, relative
    /// to the config file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fit_data: Option<PathBuf>,
    #[serde(default = "default_cutoff")]
    pub cutoff: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum YAxis {
    Omega,
    Delta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObservableChoice {
    Population,
    DispersiveShift,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    #[serde(default = "default_y")]
    pub y: YAxis,
    #[serde(default = "default_nu_min")]
    pub nu_min_hz: f64,
    #[serde(default = "default_nu_max")]
    pub nu_max_hz: f64,
    #[serde(default = "default_points")]
    pub nu_points: usize,
    #[serde(default = "default_y_min")]
    pub y_min_hz: f64,
    #[serde(default = "default_y_max")]
    pub y_max_hz: f64,
    #[serde(default = "default_points")]
    pub y_points: usize,
    #[serde(default = "default_layer")]
    pub layer: Layer,
    #[serde(default = "default_observable")]
    pub observable: ObservableChoice,
    #[serde(default)]
    pub rwa_sum: SidebandSum,
    #[serde(default = "default_families")]
    pub families: Vec<ResonanceFamily>,
    #[serde(default = "default_indices")]
    pub indices: Vec<i64>,
    #[serde(default = "default_sideband")]
    pub sideband: i64,
    #[serde(default = "default_true")]
    pub average_pm: bool,
    #[serde(default = "default_layers")]
    pub layers: Vec<Layer>,
    #[serde(default = "default_ramps")]
    pub t_ramp_s: Vec<f64>,
    #[serde(default = "default_side")]
    pub ramp_side: RampSide,
    #[serde(default = "default_true")]
    pub oracle: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default = "default_dir")]
    pub dir: PathBuf,
    /// Base file name; each subcommand has its own default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

fn default_kind() -> WaveformKind {
    WaveformKind::Square
}
fn default_levels() -> usize {
    5
}
fn default_cutoff() -> usize {
    30
}
fn default_y() -> YAxis {
    YAxis::Omega
}
fn default_nu_min() -> f64 {
    -300e6
}
fn default_nu_max() -> f64 {
    300e6
}
fn default_points() -> usize {
    41
}
fn default_y_min() -> f64 {
    10e6
}
fn default_y_max() -> f64 {
    120e6
}
fn default_layer() -> Layer {
    Layer::Lindblad2
}
fn default_observable() -> ObservableChoice {
    ObservableChoice::Population
}
fn default_families() -> Vec<ResonanceFamily> {
    ResonanceFamily::ALL.to_vec()
}
fn default_indices() -> Vec<i64> {
    vec![1, 2, 3, 4]
}
fn default_sideband() -> i64 {
    2
}
fn default_true() -> bool {
    true
}
fn default_layers() -> Vec<Layer> {
    vec![Layer::Lindblad2, Layer::Rwa]
}
fn default_ramps() -> Vec<f64> {
    vec![1e-9, 2e-9]
}
fn default_side() -> RampSide {
    RampSide::RightStart
}
fn default_dir() -> PathBuf {
    PathBuf::from("out")
}

impl Default for SweepSection {
    fn default() -> Self {
        toml::from_str("").expect("all sweep keys have defaults")
    }
}

impl Default for OutputSection {
    fn default() -> Self {
        Self { dir: default_dir(), name: None }
    }
}

/// `n` evenly spaced points from `lo` to `hi` inclusive; one point is `lo`.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
    }
}

fn check(cond: bool, field: &str, msg: impl std::fmt::Display) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(anyhow!("{field}: {msg}"))
    }
}

fn finite(v: f64, field: &str) -> Result<()> {
    check(v.is_finite(), field, format!("must be finite, got {v}"))
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Config = toml::from_str(text).map_err(|e| anyhow!("{e}"))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads and validates a config file; a relative `transmon.fit_data`
    /// is resolved against the file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let mut cfg = Self::from_toml(&text).with_context(|| format!("invalid config {}", path.display()))?;
        if let Some(tm) = cfg.transmon.as_mut() {
            if let Some(p) = tm.fit_data.as_mut() {
                if p.is_relative() {
                    *p = path.parent().unwrap_or(Path::new(".")).join(&*p);
                }
            }
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let w = &self.waveform;
        finite(w.delta_hz, "waveform.delta_hz")?;
        check(w.delta_hz >= 0.0, "waveform.delta_hz", "must be non-negative")?;
        if let Some(om) = w.omega_hz {
            check(om > 0.0 && om.is_finite(), "waveform.omega_hz", format!("must be positive, got {om}"))?;
        }
        finite(w.phase_rad, "waveform.phase_rad")?;
        check(w.ramp_s >= 0.0 && w.ramp_s.is_finite(), "waveform.ramp_s", "must be non-negative")?;
        if w.kind == WaveformKind::RampedSquare {
            check(w.ramp_s > 0.0, "waveform.ramp_s", "ramped_square needs a positive ramp")?;
        }

        let q = &self.qubit;
        finite(q.omega0_hz, "qubit.omega0_hz")?;
        check(q.gamma1_hz >= 0.0 && q.gamma1_hz.is_finite(), "qubit.gamma1_hz", "must be non-negative")?;
        if let Some(g) = q.g_hz {
            check(g >= 0.0 && g.is_finite(), "qubit.g_hz", "must be non-negative")?;
        }
        check(
            !(q.gamma2_hz.is_some() && q.gamma_phi_hz.is_some()),
            "qubit.gamma2_hz",
            "give gamma2_hz or gamma_phi_hz, not both",
        )?;
        if let Some(g2) = q.gamma2_hz {
            check(g2 >= 0.5 * q.gamma1_hz, "qubit.gamma2_hz", "must be at least gamma1_hz / 2")?;
        }
        if let Some(gp) = q.gamma_phi_hz {
            check(gp >= 0.0 && gp.is_finite(), "qubit.gamma_phi_hz", "must be non-negative")?;
        }
        check(q.t_bath_k >= 0.0 && q.t_bath_k.is_finite(), "qubit.t_bath_k", "must be non-negative")?;
        check(
            q.g_hz.is_some() || self.transmon.as_ref().is_some_and(|t| t.n_r.is_some()),
            "qubit.g_hz",
            "required unless transmon.n_r is given",
        )?;

        if let Some(t) = &self.transmon {
            check(t.e_c_hz > 0.0, "transmon.e_c_hz", "must be positive")?;
            check(t.e_j_sum_hz > 0.0, "transmon.e_j_sum_hz", "must be positive")?;
            check((0.0..1.0).contains(&t.asym), "transmon.asym", "must lie in [0, 1)")?;
            if let Some(f) = t.flux_dc {
                check(f.abs() < 0.5, "transmon.flux_dc", "must lie in (-1/2, 1/2)")?;
            }
            if let Some(n) = t.n_r {
                check(n >= 0.0, "transmon.n_r", "must be non-negative")?;
            }
            check(t.n_levels >= 2, "transmon.n_levels", "need at least two levels")?;
            check(t.cutoff >= 10, "transmon.cutoff", "must be at least 10")?;
        }

        let s = &self.sweep;
        for (v, f) in [(s.nu_min_hz, "sweep.nu_min_hz"), (s.nu_max_hz, "sweep.nu_max_hz")] {
            finite(v, f)?;
        }
        for (v, f) in [(s.y_min_hz, "sweep.y_min_hz"), (s.y_max_hz, "sweep.y_max_hz")] {
            finite(v, f)?;
        }
        check(s.nu_points < 2 || s.nu_max_hz != s.nu_min_hz, "sweep.nu_max_hz", "equals nu_min_hz")?;
        check(s.y_points < 2 || s.y_max_hz != s.y_min_hz, "sweep.y_max_hz", "equals y_min_hz")?;
        if s.y_points > 0 {
            check(s.y_min_hz > 0.0 && s.y_max_hz > 0.0, "sweep.y_min_hz", "y-axis values must be positive")?;
        }
        if s.y == YAxis::Delta {
            check(w.omega_hz.is_some(), "waveform.omega_hz", "required when sweep.y = \"delta\"")?;
        }
        for &t in &s.t_ramp_s {
            check(t >= 0.0 && t.is_finite(), "sweep.t_ramp_s", format!("ramp times must be non-negative, got {t}"))?;
        }
        check(!s.layers.is_empty(), "sweep.layers", "must name at least one layer")?;
        Ok(())
    }

    /// Qubit in angular units with the drive on resonance (ν = 0).
    pub fn qubit_params(&self) -> Result<QubitParams> {
        let q = &self.qubit;
        let g = match q.g_hz {
            Some(g) => hz(g),
            None => drive_coupling(&self.transmon_params()?).context("transmon.n_r")?,
        };
        let base = QubitParams {
            omega0: hz(q.omega0_hz),
            omega: hz(q.omega0_hz),
            g,
            gamma1: hz(q.gamma1_hz),
            gamma_phi: hz(q.gamma_phi_hz.unwrap_or(0.0)),
            t_bath: q.t_bath_k,
        };
        Ok(match q.gamma2_hz {
            Some(g2) => base.with_gamma2(hz(g2)),
            None => base,
        })
    }

    pub fn transmon_params(&self) -> Result<TransmonParams> {
        let t = self.transmon.as_ref().ok_or_else(|| anyhow!("transmon: section required for this run"))?;
        let (e_c, e_j_sum) = (hz(t.e_c_hz), hz(t.e_j_sum_hz));
        let flux_dc = match t.flux_dc {
            Some(f) => f,
            None => flux_for_qubit_frequency(e_c, e_j_sum, hz(self.qubit.omega0_hz))
                .context("transmon.flux_dc: cannot invert qubit.omega0_hz")?,
        };
        Ok(TransmonParams {
            e_c,
            e_j_sum,
            asym: t.asym,
            flux_dc,
            flux_sq: t.flux_sq,
            omega_r: hz(t.omega_r_hz),
            g0: hz(t.g0_hz),
            n_r: t.n_r.unwrap_or(0.0),
            n_g: t.n_g,
            n_levels: t.n_levels,
        })
    }

    /// Waveform at the fixed amplitude and frequency; Ω defaults to 1 Hz as
    /// a placeholder when the sweep supplies it.
    pub fn waveform_params(&self) -> ModulationWaveform {
        let w = &self.waveform;
        ModulationWaveform {
            kind: w.kind,
            delta: hz(w.delta_hz),
            omega: hz(w.omega_hz.unwrap_or(1.0)),
            phase: w.phase_rad,
            ramp: w.ramp_s,
        }
    }

    pub fn axis(&self) -> Result<SweepAxis> {
        Ok(match self.sweep.y {
            YAxis::Omega => SweepAxis::ModulationFrequency { delta: hz(self.waveform.delta_hz) },
            YAxis::Delta => SweepAxis::ModulationAmplitude {
                omega: hz(self.waveform.omega_hz.ok_or_else(|| anyhow!("waveform.omega_hz: required"))?),
            },
        })
    }

    /// Detuning axis, rad/s.
    pub fn nus(&self) -> Vec<f64> {
        let s = &self.sweep;
        linspace(s.nu_min_hz, s.nu_max_hz, s.nu_points).into_iter().map(hz).collect()
    }

    /// y-axis, rad/s.
    pub fn ys(&self) -> Vec<f64> {
        let s = &self.sweep;
        linspace(s.y_min_hz, s.y_max_hz, s.y_points).into_iter().map(hz).collect()
    }

    /// Ω axis for the subcommands that only make sense against Ω.
    pub fn omega_axis(&self, what: &str) -> Result<Vec<f64>> {
        if self.sweep.y != YAxis::Omega {
            bail!("sweep.y: {what} needs y = \"omega\"");
        }
        Ok(self.ys())
    }
}
