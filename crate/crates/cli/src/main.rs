//! `rydberg`: batch front end for radial integrals, blockade shifts, the
//! negligibility check and gate simulations.

mod commands;
mod config;
mod error;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use rydberg_core::gatesim::{PhaseConvention, Protocol};
use rydberg_core::hydrogenics::RadialMethod;

use commands::GateOptions;
use config::{Format, LoadedConfig};
use error::{CliError, EXIT_OK};

#[derive(Debug, Parser)]
#[command(
    name = "rydberg",
    version,
    about = "Three-atom Rydberg blockade calculations"
)]
struct Cli {
    /// Write results here instead of stdout (or the config's output path).
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Closed,
    Quadrature,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ProtocolArg {
    Toffoli,
    Ccphase,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ConventionArg {
    Compensated,
    Literal,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Hydrogenic radial integral <n l| r |n' l'> in Bohr radii.
    Radial {
        n: u32,
        l: u32,
        n_prime: u32,
        l_prime: u32,
        #[arg(long, value_enum, default_value = "closed")]
        method: MethodArg,
        #[arg(long, default_value_t = 1.0)]
        z: f64,
    },
    /// First-order shifts of the configured subspaces.
    Shifts {
        #[arg(long)]
        config: PathBuf,
        /// Also write each interaction matrix to DIR/<subspace>.txt.
        #[arg(long, value_name = "DIR")]
        dump_matrix: Option<PathBuf>,
    },
    /// Unwanted-coupling negligibility check; exits 3 if it fails.
    Blockade {
        #[arg(long)]
        config: PathBuf,
    },
    /// Pulse-level gate simulation.
    Gatesim {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum)]
        protocol: Option<ProtocolArg>,
        /// Uniform shift Δ = RATIO × Ω for every manifold; repeatable.
        #[arg(long = "ratio", value_name = "RATIO")]
        ratios: Vec<f64>,
        #[arg(long, value_enum)]
        phase_convention: Option<ConventionArg>,
        /// Write the projected gate of the first run to this file.
        #[arg(long, value_name = "FILE")]
        dump_matrix: Option<PathBuf>,
        /// Exit 3 if any frame-adjusted fidelity is below this.
        #[arg(long)]
        min_fidelity: Option<f64>,
    },
}

fn format_of(arg: Option<FormatArg>, cfg: Option<&LoadedConfig>) -> Format {
    match arg {
        Some(FormatArg::Json) => Format::Json,
        Some(FormatArg::Csv) => Format::Csv,
        None => cfg.map_or(Format::Json, |c| c.config.output.format),
    }
}

fn emit(bytes: &[u8], output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            fs::write(path, bytes)?;
        }
        None => std::io::stdout().write_all(bytes)?,
    }
    Ok(())
}

fn output_path(cli: &Option<PathBuf>, cfg: &LoadedConfig) -> Option<PathBuf> {
    cli.clone()
        .or_else(|| cfg.config.output.path.as_ref().map(|p| cfg.resolve(p)))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Radial {
            n,
            l,
            n_prime,
            l_prime,
            method,
            z,
        } => {
            let method = match method {
                MethodArg::Closed => RadialMethod::Closed,
                MethodArg::Quadrature => RadialMethod::Quadrature,
            };
            let bytes = commands::radial(
                n,
                l,
                n_prime,
                l_prime,
                method,
                z,
                format_of(cli.format, None),
            )?;
            emit(&bytes, cli.output.as_deref())
        }
        Command::Shifts {
            config,
            dump_matrix,
        } => {
            let cfg = LoadedConfig::load(&config)?;
            let bytes = commands::shifts(
                &cfg,
                format_of(cli.format, Some(&cfg)),
                dump_matrix.as_deref(),
            )?;
            emit(&bytes, output_path(&cli.output, &cfg).as_deref())
        }
        Command::Blockade { config } => {
            let cfg = LoadedConfig::load(&config)?;
            let (bytes, report) = commands::blockade(&cfg, format_of(cli.format, Some(&cfg)))?;
            emit(&bytes, output_path(&cli.output, &cfg).as_deref())?;
            if report.passed {
                Ok(())
            } else {
                Err(CliError::CheckFailed(format!(
                    "negligibility condition violated by {} channel(s)",
                    report.flagged.len().max(1)
                )))
            }
        }
        Command::Gatesim {
            config,
            protocol,
            ratios,
            phase_convention,
            dump_matrix,
            min_fidelity,
        } => {
            let cfg = LoadedConfig::load(&config)?;
            let opts = GateOptions {
                protocol: protocol.map(|p| match p {
                    ProtocolArg::Toffoli => Protocol::Toffoli,
                    ProtocolArg::Ccphase => Protocol::Ccphase,
                }),
                ratios,
                convention: phase_convention.map(|c| match c {
                    ConventionArg::Compensated => PhaseConvention::Compensated,
                    ConventionArg::Literal => PhaseConvention::Literal,
                }),
            };
            let (bytes, runs) = commands::gatesim(&cfg, &opts, format_of(cli.format, Some(&cfg)))?;
            emit(&bytes, output_path(&cli.output, &cfg).as_deref())?;
            if let (Some(path), Some(first)) = (dump_matrix, runs.first()) {
                let mut buf = Vec::new();
                commands::write_gate_dump(first, &mut buf)?;
                emit(&buf, Some(&path))?;
            }
            if let Some(min) = min_fidelity {
                if let Some(bad) = runs.iter().find(|r| r.report.frame_fidelity < min) {
                    return Err(CliError::CheckFailed(format!(
                        "frame-adjusted fidelity {} below {min}",
                        bad.report.frame_fidelity
                    )));
                }
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::from(EXIT_OK as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
