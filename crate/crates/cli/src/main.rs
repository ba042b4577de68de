//! `hsf`: command-line driver for the graphene hypersurface toolkit.

mod commands;
mod config;
mod output;

use std::path::PathBuf;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "hsf",
    version,
    about = "Graphene THz hypersurface absorber toolkit"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Common {
    /// JSON run configuration (defaults are used when omitted).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file (standard output when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(clap::Args, Debug, Clone, Copy)]
pub struct Band {
    /// Sweep start (Hz); defaults to the config sweep section.
    #[arg(long)]
    f_lo: Option<f64>,
    /// Sweep stop (Hz).
    #[arg(long)]
    f_hi: Option<f64>,
    /// Number of points, endpoints included.
    #[arg(long)]
    points: Option<usize>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pol {
    Te,
    Tm,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sheet conductivity versus frequency.
    Conductivity {
        #[command(flatten)]
        band: Band,
        /// Add full Kubo (intraband + interband) columns.
        #[arg(long)]
        full_kubo: bool,
    },
    /// Reflection, absorption and input impedance of the absorber.
    Spectrum {
        #[command(flatten)]
        band: Band,
        /// Incidence angle in degrees.
        #[arg(long, default_value_t = 0.0)]
        angle: f64,
        #[arg(long, value_enum, default_value_t = Pol::Te)]
        pol: Pol,
    },
    /// Calibrate the homogenization model and write the config back.
    Calibrate {
        /// Target resonance (Hz); defaults to model.target_f_Hz.
        #[arg(long)]
        target: Option<f64>,
    },
    /// Size a phase-gradient supercell for a target reflection angle.
    Design {
        #[arg(long)]
        theta_i: f64,
        #[arg(long)]
        theta_r: f64,
    },
    /// Evaluate the anomalous-reflection table.
    Table2,
    /// Track the resonance across chemical potential.
    Reconfigure {
        #[arg(long)]
        mu_lo: Option<f64>,
        #[arg(long)]
        mu_hi: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        band_lo: Option<f64>,
        #[arg(long)]
        band_hi: Option<f64>,
    },
    /// Two-port S-parameters of the absorber with its ground plane removed.
    Sparams {
        #[command(flatten)]
        band: Band,
    },
    /// Effective parameters from an S-parameter CSV
    /// (f_Hz, reS11, imS11, reS21, imS21, L_m).
    Retrieve {
        #[arg(long)]
        input: PathBuf,
    },
    /// Run every driver with the configured parameters into a directory.
    Reproduce {
        #[arg(long)]
        out_dir: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::dispatch(&cli.common, cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
