//! `hybridsim` command-line front end.

mod commands;
mod config;
mod error;
mod output;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::error::CliError;
use crate::output::Format;

#[derive(Parser, Debug)]
#[command(name = "hybridsim", version, about = "Transmon and NV-spin hybrid circuit simulations")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// TOML run configuration.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output file; stdout when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Overrides the config seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads for sweeps.
    #[arg(long, global = true, env = "HYBRIDSIM_THREADS", value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,

    /// Defaults to csv for coupling-map and ensemble, json otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Transmon spectrum, zero-point phase and qubit-subspace substitution error.
    Transmon,
    /// |g_ts| over a planar grid of single-spin positions.
    CouplingMap,
    /// Collective coupling of spin-ensemble cubes over edge and density.
    Ensemble,
    /// Exact and dispersive spectra, Schrieffer-Wolff residual and commutator checks.
    Spectrum,
    /// SWAP, QND readout, virtual exchange or protection simulation.
    Protocol,
}

fn read_config(path: Option<&Path>) -> Result<config::RunConfig, CliError> {
    let path = path.ok_or_else(|| CliError::Config("--config is required".into()))?;
    let text = fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })?;
    config::parse(&text)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Write { path: path.to_path_buf(), source })
}

/// `run.json` → `run.trace.csv`.
fn trace_path(out: &Path) -> PathBuf {
    out.with_extension("trace.csv")
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()
            .map_err(|e| CliError::Config(format!("cannot start {n} threads: {e}")))?;
    }
    let cfg = read_config(cli.config.as_deref())?;
    let seed = cli.seed.or(cfg.seed).unwrap_or(0);
    let output = match cli.command {
        Command::Transmon => commands::transmon(&cfg)?,
        Command::CouplingMap => commands::coupling_map_cmd(&cfg)?,
        Command::Ensemble => commands::ensemble(&cfg, seed)?,
        Command::Spectrum => commands::spectrum_cmd(&cfg)?,
        Command::Protocol => commands::protocol(&cfg)?,
    };
    let format = cli.format.unwrap_or(output.default_format);
    let text = output.render(format);
    match cli.out.as_ref().or(cfg.out.as_ref()) {
        Some(path) => {
            write_file(path, &text)?;
            if let (Format::Json, Some(trace)) = (format, &output.trace) {
                write_file(&trace_path(path), &trace.to_csv())?;
            }
        }
        None => std::io::stdout().lock().write_all(text.as_bytes()).map_err(CliError::Stdout)?,
    }
    for line in &output.summary {
        eprintln!("{line}");
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
