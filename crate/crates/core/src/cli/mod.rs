//! Command-line front end.

mod commands;
pub mod config;
pub mod csv;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use config::RunConfig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Compute(#[from] crate::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io { .. } | CliError::Compute(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "lindirac",
    version,
    about = "Radial Dirac equation in a linear potential: bound states, profiles, tunneling lifetimes",
    allow_negative_numbers = true
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// key=value config file; flags override its values
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Particle mass (GeV)
    #[arg(long = "m", global = true)]
    pub m: Option<f64>,
    /// Potential slope (GeV^2)
    #[arg(long, global = true)]
    pub lambda: Option<f64>,
    /// Scalar fraction of the potential, in [0, 1]
    #[arg(long = "s", global = true)]
    pub s: Option<f64>,
    /// Dirac quantum number (nonzero)
    #[arg(long = "k", global = true)]
    pub k: Option<i32>,
    /// Radial excitation: 1 is the ground state
    #[arg(long, global = true)]
    pub zero_index: Option<i64>,
    /// Outer radius of the grid (GeV^-1)
    #[arg(long, global = true)]
    pub rmax: Option<f64>,
    /// Number of grid steps
    #[arg(long = "n", global = true)]
    pub n: Option<usize>,
    /// Output file for CSV
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Energy used by `lifetime` instead of the quasi-bound estimate (GeV)
    #[arg(long, global = true)]
    pub energy: Option<f64>,
    /// Print the effective configuration as key=value lines and exit
    #[arg(long, global = true)]
    pub dump_config: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy of the configured state
    Solve,
    /// Wavefunction on the grid as CSV
    Profile,
    /// Barrier integral and lifetime ratio for a quasi-bound state
    Lifetime,
    /// Energy, barrier integral and turning points across a parameter range
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepParam {
    S,
    Lambda,
    M,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::S => "s",
            SweepParam::Lambda => "lambda",
            SweepParam::M => "m",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub param: SweepParam,
    #[arg(long)]
    pub from: f64,
    #[arg(long)]
    pub to: f64,
    /// Number of intervals; steps + 1 rows are written
    #[arg(long)]
    pub steps: usize,
}

impl GlobalArgs {
    /// Defaults, then the config file, then explicit flags.
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &self.config {
            cfg.apply_file(path)?;
        }
        if let Some(v) = self.m {
            cfg.m = v;
        }
        if let Some(v) = self.lambda {
            cfg.lambda = v;
        }
        if let Some(v) = self.s {
            cfg.s = v;
        }
        if let Some(v) = self.k {
            cfg.k = v;
        }
        if let Some(v) = self.zero_index {
            cfg.zero_index = v;
        }
        if let Some(v) = self.rmax {
            cfg.r_max = v;
        }
        if let Some(v) = self.n {
            cfg.n = v;
        }
        if let Some(v) = &self.out {
            cfg.out = Some(v.clone());
        }
        if let Some(v) = self.energy {
            cfg.energy = Some(v);
        }
        Ok(cfg)
    }
}

/// Parses `args` and runs the command, writing reports to `stdout`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                write!(stdout, "{err}").map_err(stdout_error)?;
                return Ok(());
            }
            let text = err.to_string();
            let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
            return Err(CliError::Usage(first.trim_start_matches("error: ").to_string()));
        }
    };
    let cfg = cli.global.resolve()?;
    if cli.global.dump_config {
        stdout.write_all(cfg.dump().as_bytes()).map_err(stdout_error)?;
        return Ok(());
    }
    cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    match cli.command {
        Some(Command::Solve) => commands::solve(&cfg, stdout),
        Some(Command::Profile) => commands::profile(&cfg, stdout),
        Some(Command::Lifetime) => commands::lifetime(&cfg, stdout),
        Some(Command::Sweep(args)) => commands::sweep(&cfg, &args, stdout),
        None => Err(CliError::Usage(
            "no command given; expected one of solve, profile, lifetime, sweep".into(),
        )),
    }
}

pub(crate) fn stdout_error(source: std::io::Error) -> CliError {
    CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    }
}

/// Entry point for the binary: runs, prints a one-line diagnostic on error,
/// and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(args, &mut lock) {
        Ok(()) => 0,
        Err(err) => {
            let _ = lock.flush();
            let line = err.to_string().replace('\n', " ");
            eprintln!("error: {line}");
            err.exit_code()
        }
    }
}
