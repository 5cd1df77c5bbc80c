//! Config-driven sweeps behind the `latchsim` binary. Every run computes
//! in parallel first and writes its files afterwards from one thread.

pub mod config;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use latchsim::dynamics::{dissipative_spectrum, relative_dispersive_shift, steady_state, MultilevelModel};
use latchsim::grid::fmt_sig;
use latchsim::latch::{averaged_population, latch_spectrum, resonance_curves, LatchFrame, QubitParams};
use latchsim::rwa::{adaptive_sideband_set, rwa_is_extrapolated, rwa_population_with, rwa_spectrum};
use latchsim::rwa::{SidebandKind, DEFAULT_PARSEVAL_TARGET};
use latchsim::sudden::{ramp_transition_oracle, sudden_error, RampSide, RampSpec};
use latchsim::transmon::{fit_transmon, TransmonFit, TransmonParams};
use latchsim::units::{hz, to_hz};
use latchsim::{Layer, ModulationWaveform, ResonanceFamily, SpectrumGrid, StartLatch, WaveformKind};
use rayon::prelude::*;
use serde::Serialize;

pub use config::Config;
use config::ObservableChoice;

/// Command-line overrides applied on top of the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub layer: Option<Layer>,
    /// (ν points, y points).
    pub grid: Option<(usize, usize)>,
}

impl Overrides {
    pub fn apply(&self, cfg: &mut Config) -> Result<()> {
        if let Some(out) = &self.out {
            cfg.output.dir = out.clone();
        }
        if let Some(layer) = self.layer {
            cfg.sweep.layer = layer;
            cfg.sweep.layers = vec![layer];
        }
        if let Some((nx, ny)) = self.grid {
            cfg.sweep.nu_points = nx;
            cfg.sweep.y_points = ny;
        }
        cfg.validate()
    }
}

/// Parses `NxM` into (N, M).
pub fn parse_grid(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s.split_once(['x', 'X']).context("expected NxM, e.g. 41x41")?;
    Ok((a.trim().parse().context("grid N")?, b.trim().parse().context("grid M")?))
}

/// Stamp for the `generated` metadata line: `SOURCE_DATE_EPOCH` when set,
/// otherwise the current Unix time.
pub fn generated_stamp() -> String {
    let secs = std::env::var("SOURCE_DATE_EPOCH").ok().and_then(|s| s.parse::<u64>().ok()).unwrap_or_else(|| {
        std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
    });
    format!("unix:{secs}")
}

/// Parameter record for the metadata. Output placement is left out so that
/// the same run written to two directories gives identical files.
fn config_json(cfg: &Config) -> serde_json::Value {
    let mut v = serde_json::to_value(cfg).unwrap_or_default();
    if let Some(map) = v.as_object_mut() {
        map.remove("output");
    }
    v
}

fn out_path(cfg: &Config, default_name: &str, ext: &str) -> PathBuf {
    let name = cfg.output.name.as_deref().unwrap_or(default_name);
    cfg.output.dir.join(format!("{name}.{ext}"))
}

fn write_file(path: &Path, contents: &str) -> Result<PathBuf> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))?;
    Ok(path.to_path_buf())
}

/// `#` metadata lines shared by the table outputs.
fn table_header(cfg: &Config, command: &str, extra: &[(&str, String)], nan_count: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# command: {command}");
    for (k, v) in extra {
        let _ = writeln!(out, "# {k}: {v}");
    }
    let _ = writeln!(out, "# config: {}", config_json(cfg));
    let _ = writeln!(out, "# nan_count: {nan_count}");
    let _ = writeln!(out, "# code_version: {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(out, "# generated: {}", generated_stamp());
    out
}

fn sideband_kind(kind: WaveformKind) -> Result<SidebandKind> {
    SidebandKind::try_from(kind).context("waveform.kind: the rwa layer needs square or sine modulation")
}

fn require_square(cfg: &Config) -> Result<()> {
    if cfg.waveform.kind != WaveformKind::Square {
        bail!("waveform.kind: the adiabatic_impulse layer needs square modulation");
    }
    Ok(())
}

/// Five-level model and the qubit whose ω₀ matches its 0↔1 transition.
fn transmon_model(cfg: &Config, q: &QubitParams) -> Result<(TransmonParams, MultilevelModel, QubitParams)> {
    let tp = cfg.transmon_params()?;
    let model = MultilevelModel::from_transmon(&tp, q).context("transmon")?;
    let q5 = QubitParams { omega0: model.level_freqs[1], omega: model.level_freqs[1], ..*q };
    Ok((tp, model, q5))
}

/// Spectrum grid for the configured layer.
pub fn compute_spectrum(cfg: &Config) -> Result<SpectrumGrid> {
    let q = cfg.qubit_params()?;
    let axis = cfg.axis()?;
    let (nus, ys) = (cfg.nus(), cfg.ys());
    if nus.is_empty() || ys.is_empty() {
        bail!("sweep: spectrum needs at least one point on each axis");
    }
    let w = cfg.waveform_params();
    let mut grid = match cfg.sweep.layer {
        Layer::AdiabaticImpulse => {
            require_square(cfg)?;
            latch_spectrum(&q, axis, &nus, &ys)?
        }
        Layer::Rwa => rwa_spectrum(&q, sideband_kind(w.kind)?, axis, &nus, &ys, cfg.sweep.rwa_sum)?,
        Layer::Lindblad2 => {
            if cfg.sweep.observable != ObservableChoice::Population {
                bail!("sweep.observable: dispersive_shift needs layer lindblad5");
            }
            dissipative_spectrum(&MultilevelModel::two_level(&q), &q, &w, axis, &nus, &ys, None)?
        }
        Layer::Lindblad5 => {
            let (tp, model, q5) = transmon_model(cfg, &q)?;
            let readout = (cfg.sweep.observable == ObservableChoice::DispersiveShift).then_some(&tp);
            dissipative_spectrum(&model, &q5, &w, axis, &nus, &ys, readout)?
        }
    };
    grid.meta.insert_param("config", config_json(cfg));
    Ok(grid)
}

/// Computes the spectrum and writes `<name>.csv` and `<name>.json`.
pub fn run_spectrum(cfg: &Config) -> Result<(SpectrumGrid, Vec<PathBuf>)> {
    let mut grid = compute_spectrum(cfg)?;
    grid.meta.generated = Some(generated_stamp());
    let csv = write_file(&out_path(cfg, "spectrum", "csv"), &grid.to_csv())?;
    let json = write_file(&out_path(cfg, "spectrum", "json"), &grid.to_json()?)?;
    Ok((grid, vec![csv, json]))
}

/// (family, index) pairs to export. Difference resonances come in ± pairs;
/// indices a family does not accept are skipped.
pub fn overlay_indices(cfg: &Config) -> Vec<(ResonanceFamily, i64)> {
    let mut out = Vec::new();
    for &family in &cfg.sweep.families {
        let set: BTreeSet<i64> = match family {
            ResonanceFamily::DiffRes => {
                cfg.sweep.indices.iter().filter(|&&k| k != 0).flat_map(|&k| [k, -k]).collect()
            }
            ResonanceFamily::SinglePeriodRes => cfg.sweep.indices.iter().copied().filter(|&k| k >= 0).collect(),
            ResonanceFamily::SumRes | ResonanceFamily::AntiRes => {
                cfg.sweep.indices.iter().copied().filter(|&k| k >= 1).collect()
            }
        };
        out.extend(set.into_iter().map(|k| (family, k)));
    }
    out
}

/// One `Omega_Hz,nu_Hz` CSV per (family, index) over the Ω axis.
pub fn run_resonance_overlay(cfg: &Config) -> Result<Vec<PathBuf>> {
    let q = cfg.qubit_params()?;
    let omegas = cfg.omega_axis("resonances")?;
    let delta = hz(cfg.waveform.delta_hz);
    let curves = overlay_indices(cfg)
        .into_iter()
        .map(|(family, index)| Ok((family, index, resonance_curves(q.g, delta, family, index, &omegas)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut files = Vec::new();
    for (family, index, points) in curves {
        let extra = [("family", family.name().to_string()), ("index", index.to_string())];
        let mut text = table_header(cfg, "resonances", &extra, 0);
        text.push_str("Omega_Hz,nu_Hz\n");
        for (om, nu) in points {
            let _ = writeln!(text, "{},{}", fmt_sig(to_hz(om)), fmt_sig(to_hz(nu)));
        }
        let stem = match &cfg.output.name {
            Some(n) => format!("{n}_{}_{index}", family.name()),
            None => format!("{}_{index}", family.name()),
        };
        files.push(write_file(&cfg.output.dir.join(format!("{stem}.csv")), &text)?);
    }
    Ok(files)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SidebandTrace {
    pub sideband: i64,
    pub layers: Vec<Layer>,
    pub omegas_hz: Vec<f64>,
    /// One row per Ω, one column per layer.
    pub values: Vec<Vec<f64>>,
    /// Ω below g, where the RWA column is an extrapolation.
    pub extrapolated: Vec<bool>,
}

struct TraceContext {
    q: QubitParams,
    w: ModulationWaveform,
    sum: latchsim::rwa::SidebandSum,
    two: MultilevelModel,
    five: Option<(TransmonParams, MultilevelModel, QubitParams)>,
    dispersive: bool,
}

impl TraceContext {
    fn value(&self, layer: Layer, nu: f64, om: f64) -> latchsim::Result<f64> {
        let w = ModulationWaveform { omega: om, ..self.w };
        match layer {
            Layer::AdiabaticImpulse => {
                let lf = LatchFrame::new(nu, self.q.g, w.delta, om)?;
                Ok(averaged_population(&lf, StartLatch::PhaseAveraged))
            }
            Layer::Rwa => {
                let kind = SidebandKind::try_from(w.kind)?;
                let sb = adaptive_sideband_set(kind, w.delta / om, DEFAULT_PARSEVAL_TARGET)?;
                rwa_population_with(&self.q, &sb, om, nu, self.sum)
            }
            Layer::Lindblad2 => Ok(steady_state(&self.two, &self.q.with_detuning(nu), &w)?.populations[1]),
            Layer::Lindblad5 => {
                let (tp, model, q5) = self.five.as_ref().expect("five-level model prepared");
                let ss = steady_state(model, &q5.with_detuning(nu), &w)?;
                if self.dispersive {
                    Ok(to_hz(relative_dispersive_shift(tp, model, &ss.populations)?))
                } else {
                    Ok(ss.populations[1])
                }
            }
        }
    }
}

/// Observables along ν = −mΩ for each configured layer, averaged with
/// ν = +mΩ when `sweep.average_pm` is set and m ≠ 0.
pub fn compute_sideband_trace(cfg: &Config) -> Result<SidebandTrace> {
    let q = cfg.qubit_params()?;
    let omegas = cfg.omega_axis("sidebands")?;
    let layers = cfg.sweep.layers.clone();
    let dispersive = cfg.sweep.observable == ObservableChoice::DispersiveShift;
    for layer in &layers {
        match layer {
            Layer::AdiabaticImpulse => require_square(cfg)?,
            Layer::Rwa => {
                sideband_kind(cfg.waveform.kind)?;
            }
            Layer::Lindblad2 if dispersive => bail!("sweep.observable: dispersive_shift needs layer lindblad5"),
            _ => {}
        }
    }
    let five = if layers.contains(&Layer::Lindblad5) { Some(transmon_model(cfg, &q)?) } else { None };
    let ctx = TraceContext {
        q,
        w: cfg.waveform_params(),
        sum: cfg.sweep.rwa_sum,
        two: MultilevelModel::two_level(&q),
        five,
        dispersive,
    };
    let m = cfg.sweep.sideband as f64;
    let signs: &[f64] = if cfg.sweep.average_pm && cfg.sweep.sideband != 0 { &[-1.0, 1.0] } else { &[-1.0] };
    let values: Vec<Vec<f64>> = omegas
        .par_iter()
        .map(|&om| {
            layers
                .iter()
                .map(|&layer| {
                    let vals: Option<Vec<f64>> =
                        signs.iter().map(|s| ctx.value(layer, s * m * om, om).ok()).collect();
                    vals.map(|v| v.iter().sum::<f64>() / v.len() as f64).unwrap_or(f64::NAN)
                })
                .collect()
        })
        .collect();
    Ok(SidebandTrace {
        sideband: cfg.sweep.sideband,
        layers,
        omegas_hz: omegas.iter().map(|&w| to_hz(w)).collect(),
        values,
        extrapolated: omegas.iter().map(|&om| rwa_is_extrapolated(&q, om)).collect(),
    })
}

impl SidebandTrace {
    pub fn nan_count(&self) -> usize {
        self.values.iter().flatten().filter(|v| v.is_nan()).count()
    }

    fn to_csv(&self, cfg: &Config) -> String {
        let extra = [("sideband", self.sideband.to_string()), ("average_pm", cfg.sweep.average_pm.to_string())];
        let mut text = table_header(cfg, "sidebands", &extra, self.nan_count());
        let has_rwa = self.layers.contains(&Layer::Rwa);
        text.push_str("Omega_Hz");
        for layer in &self.layers {
            let _ = write!(text, ",{}", layer.name());
        }
        if has_rwa {
            text.push_str(",rwa_note");
        }
        text.push('\n');
        for ((om, row), extrapolated) in self.omegas_hz.iter().zip(&self.values).zip(&self.extrapolated) {
            text.push_str(&fmt_sig(*om));
            for v in row {
                let _ = write!(text, ",{}", fmt_sig(*v));
            }
            if has_rwa {
                text.push_str(if *extrapolated { ",extrapolated" } else { "," });
            }
            text.push('\n');
        }
        text
    }
}

pub fn run_sideband_trace(cfg: &Config) -> Result<(SidebandTrace, PathBuf)> {
    let trace = compute_sideband_trace(cfg)?;
    let default = format!("sidebands_m{}", cfg.sweep.sideband);
    let path = write_file(&out_path(cfg, &default, "csv"), &trace.to_csv(cfg))?;
    Ok((trace, path))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuddenRow {
    pub t_ramp_s: f64,
    pub nu_hz: f64,
    pub w_formula: f64,
    /// `None` when the oracle is switched off.
    pub w_oracle: Option<f64>,
}

/// Second-order ramp error and, optionally, the integrated transition
/// probability for every (T, ν). T = 0 is the ideal switch: both are 0.
pub fn compute_sudden_table(cfg: &Config) -> Result<Vec<SuddenRow>> {
    let q = cfg.qubit_params()?;
    let delta = hz(cfg.waveform.delta_hz);
    let side = cfg.sweep.ramp_side;
    let nus = cfg.nus();
    let cells: Vec<(f64, f64)> = cfg.sweep.t_ramp_s.iter().flat_map(|&t| nus.iter().map(move |&nu| (t, nu))).collect();
    cells
        .par_iter()
        .map(|&(t, nu)| {
            let qn = q.with_detuning(nu);
            let w_formula = sudden_error(&qn, delta, RampSpec { t_ramp: t, side })?;
            let w_oracle = if !cfg.sweep.oracle {
                None
            } else if t == 0.0 {
                Some(0.0)
            } else {
                // the left-start ramp is the right-start one mirrored in ν
                let qo = match side {
                    RampSide::RightStart => qn,
                    RampSide::LeftStart => q.with_detuning(-nu),
                };
                Some(ramp_transition_oracle(&qo, delta, t).unwrap_or(f64::NAN))
            };
            Ok(SuddenRow { t_ramp_s: t, nu_hz: to_hz(nu), w_formula, w_oracle })
        })
        .collect::<latchsim::Result<Vec<_>>>()
        .context("sudden")
}

pub fn run_sudden_check(cfg: &Config) -> Result<(Vec<SuddenRow>, PathBuf)> {
    let rows = compute_sudden_table(cfg)?;
    let nan_count = rows.iter().filter(|r| r.w_formula.is_nan() || r.w_oracle.is_some_and(f64::is_nan)).count();
    let mut text = table_header(cfg, "sudden", &[], nan_count);
    text.push_str(if cfg.sweep.oracle { "t_ramp_s,nu_Hz,w_formula,w_oracle\n" } else { "t_ramp_s,nu_Hz,w_formula\n" });
    for r in &rows {
        let _ = write!(text, "{},{},{}", fmt_sig(r.t_ramp_s), fmt_sig(r.nu_hz), fmt_sig(r.w_formula));
        if let Some(o) = r.w_oracle {
            let _ = write!(text, ",{}", fmt_sig(o));
        }
        text.push('\n');
    }
    let path = write_file(&out_path(cfg, "sudden", "csv"), &text)?;
    Ok((rows, path))
}

/// Reads `flux,f10_Hz` pairs; `#` lines and a non-numeric header are
/// skipped.
pub fn read_flux_data(path: &Path) -> Result<Vec<(f64, f64)>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut data = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut cols = line.split(',').map(str::trim);
        let (Some(a), Some(b)) = (cols.next(), cols.next()) else {
            bail!("{}:{}: expected two columns", path.display(), i + 1);
        };
        match (a.parse::<f64>(), b.parse::<f64>()) {
            (Ok(flux), Ok(f)) => data.push((flux, hz(f))),
            _ if data.is_empty() => continue,
            _ => bail!("{}:{}: not a number pair", path.display(), i + 1),
        }
    }
    Ok(data)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitReport {
    pub e_c_hz: f64,
    pub e_j_sum_hz: f64,
    pub asym: f64,
    pub rms_residual_hz: f64,
    pub iterations: usize,
    pub converged: bool,
    pub points: usize,
}

impl FitReport {
    fn new(fit: &TransmonFit, points: usize) -> Self {
        Self {
            e_c_hz: to_hz(fit.e_c),
            e_j_sum_hz: to_hz(fit.e_j_sum),
            asym: fit.asym,
            rms_residual_hz: to_hz(fit.rms_residual),
            iterations: fit.iterations,
            converged: fit.converged,
            points,
        }
    }
}

/// Fits (E_C, E_JΣ, d) to `transmon.fit_data`, starting from the
/// `[transmon]` values, and writes the result as JSON.
pub fn run_fit_transmon(cfg: &Config) -> Result<(FitReport, PathBuf)> {
    let section = cfg.transmon.as_ref().context("transmon: section required for fit-transmon")?;
    let data_path = section.fit_data.as_ref().context("transmon.fit_data: required for fit-transmon")?;
    let data = read_flux_data(data_path)?;
    // the fit sweeps flux itself, so the working point is irrelevant here
    let initial = TransmonParams {
        e_c: hz(section.e_c_hz),
        e_j_sum: hz(section.e_j_sum_hz),
        asym: section.asym,
        flux_dc: 0.0,
        flux_sq: section.flux_sq,
        omega_r: hz(section.omega_r_hz),
        g0: hz(section.g0_hz),
        n_r: section.n_r.unwrap_or(0.0),
        n_g: section.n_g,
        n_levels: 2,
    };
    let fit = fit_transmon(&data, &initial, section.cutoff).context("fit-transmon")?;
    let report = FitReport::new(&fit, data.len());
    let json = serde_json::to_string_pretty(&report)?;
    let path = write_file(&out_path(cfg, "transmon_fit", "json"), &json)?;
    Ok((report, path))
}

/// Sizes the global rayon pool; `None` keeps rayon's default.
pub fn configure_threads(threads: Option<usize>) -> Result<()> {
    if let Some(n) = threads {
        if n == 0 {
            bail!("--threads: must be at least 1");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("--threads")?;
    }
    Ok(())
}
