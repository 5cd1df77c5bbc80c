use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use latchsim::Layer;
use latchsim_cli::{
    configure_threads, parse_grid, run_fit_transmon, run_resonance_overlay, run_sideband_trace, run_spectrum,
    run_sudden_check, Config, Overrides,
};

#[derive(Parser)]
#[command(name = "latchsim", version, about = "Spectra of a qubit under square-wave (latching) frequency modulation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads for the cell sweep.
    #[arg(long, global = true, env = "LATCHSIM_THREADS")]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Steady-state spectrum over (ν, Ω) or (ν, δ).
    Spectrum(Common),
    /// Analytic resonance curves, one CSV per family and index.
    Resonances(Common),
    /// Observables along the m-th sideband ν = −mΩ.
    Sidebands(Common),
    /// Sudden-switch error formula against the integrated ramp.
    Sudden(Common),
    /// Fit E_C, E_JΣ and the junction asymmetry to a flux spectrum.
    FitTransmon(Common),
}

#[derive(Args)]
struct Common {
    /// TOML run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output directory (overrides output.dir).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Solver layer: adiabatic_impulse (ai), rwa, lindblad2, lindblad5.
    #[arg(long)]
    layer: Option<Layer>,
    /// Grid size as NxM (ν points × y points).
    #[arg(long, value_parser = grid_arg)]
    grid: Option<(usize, usize)>,
}

fn grid_arg(s: &str) -> Result<(usize, usize), String> {
    parse_grid(s).map_err(|e| format!("{e:#}"))
}

fn load(c: &Common) -> Result<Config> {
    let mut cfg = Config::load(&c.config)?;
    Overrides { out: c.out.clone(), layer: c.layer, grid: c.grid }.apply(&mut cfg)?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<Vec<PathBuf>> {
    configure_threads(cli.threads)?;
    Ok(match cli.command {
        Command::Spectrum(c) => {
            let (grid, files) = run_spectrum(&load(&c)?)?;
            if grid.meta.nan_count > 0 {
                eprintln!("warning: {} cells failed and were written as nan", grid.meta.nan_count);
            }
            files
        }
        Command::Resonances(c) => run_resonance_overlay(&load(&c)?)?,
        Command::Sidebands(c) => vec![run_sideband_trace(&load(&c)?)?.1],
        Command::Sudden(c) => vec![run_sudden_check(&load(&c)?)?.1],
        Command::FitTransmon(c) => {
            let (report, path) = run_fit_transmon(&load(&c)?)?;
            println!(
                "E_C = {:.6e} Hz, E_JΣ = {:.6e} Hz, d = {:.6}, rms residual = {:.3e} Hz{}",
                report.e_c_hz,
                report.e_j_sum_hz,
                report.asym,
                report.rms_residual_hz,
                if report.converged { "" } else { " (not converged)" }
            );
            vec![path]
        }
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(files) => {
            for f in files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
