//! `graphene-hf`: tables and verification suites for the Hartree-Fock
//! model of graphene.

mod commands;
mod config;
mod table;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{FileConfig, RunConfig};
use table::Format;

const ABOUT: &str = "Hartree-Fock theory of graphene: exchange kernel, effective velocity, \
ground state, dielectric response and screening.";

const UNITS: &str = "Units: momenta are measured in units of the ultraviolet cutoff \
(Λ = 1 by default); velocities and energies are in atomic units. The physical cutoff \
of graphene is Λ ≃ 0.1 Å⁻¹, so a momentum k printed here corresponds to 0.1·k Å⁻¹. \
Set GRAPHENE_HF_THREADS to cap the number of worker threads.";

#[derive(Debug, Parser)]
#[command(name = "graphene-hf", version, about = ABOUT, after_help = UNITS)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Bare Fermi velocity [default: 2.2]
    #[arg(long, global = true)]
    vf: Option<f64>,
    /// Ultraviolet cutoff Λ [default: 1]
    #[arg(long = "lambda-uv", global = true)]
    lambda_uv: Option<f64>,
    /// Relative quadrature tolerance [default: 1e-9]
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Radial nodes for the ground-state problem [default: 64]
    #[arg(long = "grid-n", global = true)]
    grid_n: Option<usize>,
    /// Output format [default: csv]
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Write the table here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Flat `key = value` file with any of: vf, lambda_uv, tol, grid_n, format, out
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exchange kernel g(R): columns R, g, g - log(R)/4
    G {
        /// Comma-separated R values (R >= 0)
        #[arg(long = "R", value_delimiter = ',', required = true, allow_negative_numbers = true)]
        r: Vec<f64>,
    },
    /// Effective velocity v_F + g(Λ/|p|) on a momentum list
    Veff {
        /// Comma-separated momenta in (0, Λ]
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        p: Vec<f64>,
    },
    /// Quasi-particle energy |p| v_eff(p)
    Dispersion {
        /// Comma-separated momenta in [0, Λ]
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        p: Vec<f64>,
    },
    /// Polarization kernels B, B0, B1, B2
    Response {
        /// Comma-separated |k| values
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        k: Vec<f64>,
        /// Only the kernel without exchange, B0
        #[arg(long)]
        no_exchange: bool,
    },
    /// Polarization charge inside a ball of radius R around a defect
    Screening {
        /// Defect: gaussian:CHARGE:WIDTH or disk:CHARGE:RADIUS
        #[arg(long, default_value = "gaussian:1:1")]
        nu: String,
        /// Coupling constant λ
        #[arg(long, default_value_t = 0.1)]
        lambda: f64,
        /// Comma-separated radii
        #[arg(long = "R", value_delimiter = ',', required = true, allow_negative_numbers = true)]
        r: Vec<f64>,
    },
    /// Projected-gradient minimization of the translation-invariant energy
    MinimizeTi {
        /// Initial occupation: zero, minus-one, const:VALUE or random:SEED
        #[arg(long, default_value = "zero")]
        init: String,
        /// Iteration cap
        #[arg(long, default_value_t = 5000)]
        max_iters: usize,
        /// Write the convergence log (iteration, energy) here
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Run a verification suite; exit status 3 if any check fails
    Check {
        /// theorem1, gkernel, response, operator, screening, pauli or all
        suite: String,
    },
    /// Plot-ready data on a logarithmic grid
    Tabulate {
        /// g, veff, response or screening
        what: String,
        /// Number of grid points
        #[arg(long, default_value_t = 41)]
        points: usize,
    },
}

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or configuration (exit 1).
    Usage(String),
    /// A numerical routine failed (exit 2).
    Numerical(String),
    /// A verification suite reported failures (exit 3).
    SuiteFailed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numerical(_) => 2,
            CliError::SuiteFailed(_) => 3,
        }
    }
}

impl From<graphene_hf::Error> for CliError {
    fn from(e: graphene_hf::Error) -> Self {
        use graphene_hf::Error as E;
        match e {
            E::NonConvergence { .. } | E::NonFinite(_) | E::MaxItersExceeded { .. } => CliError::Numerical(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("i/o error: {e}"))
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("GRAPHENE_HF_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("GRAPHENE_HF_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot configure threads: {e}")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    let g = cli.global;
    let file = match &g.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let flags = FileConfig {
        vf: g.vf,
        lambda_uv: g.lambda_uv,
        tol: g.tol,
        grid_n: g.grid_n,
        format: g.format,
        out: g.out,
    };
    let cfg = RunConfig::resolve(&flags, &file)?;
    let output = match cli.command {
        Command::G { r } => commands::g(&cfg, &r)?,
        Command::Veff { p } => commands::veff(&cfg, &p)?,
        Command::Dispersion { p } => commands::dispersion(&cfg, &p)?,
        Command::Response { k, no_exchange } => commands::response(&cfg, &k, no_exchange)?,
        Command::Screening { nu, lambda, r } => commands::screening(&cfg, &nu, lambda, &r)?,
        Command::MinimizeTi { init, max_iters, log } => commands::minimize_ti(&cfg, &init, max_iters, log.as_deref())?,
        Command::Check { suite } => commands::check(&cfg, &suite)?,
        Command::Tabulate { what, points } => commands::tabulate(&cfg, &what, points)?,
    };
    let mut sink: Box<dyn Write> = match &cfg.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(std::io::stdout().lock()),
    };
    output.table.write(cfg.format, &mut sink)?;
    sink.flush()?;
    for line in &output.notes {
        eprintln!("{line}");
    }
    match output.failure {
        Some(msg) => Err(CliError::SuiteFailed(msg)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Usage(m) => eprintln!("error: {m}"),
                CliError::Numerical(m) => eprintln!("numerical failure: {m}"),
                CliError::SuiteFailed(m) => eprintln!("suite failed: {m}"),
            }
            ExitCode::from(e.code())
        }
    }
}
