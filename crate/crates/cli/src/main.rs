mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lightsum_core::{Decimal, Error, OracleChoice};
use num_rational::BigRational;

/// Exit code when the simulated device and the classical solver disagree.
pub const EXIT_DISAGREEMENT: u8 = 2;
pub const EXIT_INPUT: u8 = 3;
pub const EXIT_RESOURCE: u8 = 4;
pub const EXIT_IO: u8 = 5;

#[derive(Debug, Parser)]
#[command(name = "lightsum", version, about = "Optical delay-line subset-sum simulator")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Offset k added to every arc, in delay quanta [default: 1].
    #[arg(long = "k", global = true, value_name = "QUANTA")]
    pub k: Option<u64>,
    /// Delay quantum in seconds [default: 1e-12].
    #[arg(long, global = true, value_name = "SECONDS", value_parser = parse_rational)]
    pub quantum_s: Option<BigRational>,
    /// Fiber velocity factor in (0, 1] [default: 1].
    #[arg(long, global = true, value_name = "F", value_parser = parse_rational)]
    pub velocity_factor: Option<BigRational>,
    /// Additional slow-light factor in (0, 1], applied on top of the velocity factor.
    #[arg(long, global = true, value_name = "F", value_parser = parse_rational)]
    pub slow_light: Option<BigRational>,
    /// Classical solver used for verification: dp, brute, mitm or auto.
    #[arg(long, global = true, default_value = "auto", value_parser = parse_oracle)]
    pub oracle: OracleChoice,
    /// Write the destination arrival profile (`<time> <count>` lines) to this file.
    #[arg(long, global = true, value_name = "PATH")]
    pub dump_profile: Option<PathBuf>,
    /// Seed for randomized experiments.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Print human-readable tables on stderr.
    #[arg(long, global = true)]
    pub verbose: bool,
    /// Include wall-clock phase timings in the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate the device and verify its answer against a classical solver.
    Solve {
        instance: PathBuf,
        /// Also report feasibility for cables of this length, metres.
        #[arg(long, value_name = "METRES", value_parser = parse_rational)]
        max_cable_m: Option<BigRational>,
    },
    /// Print the stage table with cable lengths.
    Compile { instance: PathBuf },
    /// Feasibility bounds for a maximum cable length.
    Analyze {
        instance: PathBuf,
        #[arg(long, value_name = "METRES", default_value = "3000", value_parser = parse_rational)]
        max_cable_m: BigRational,
    },
    /// Compare the epsilon device, the offset device and a classical solver.
    DemoEpsilon {
        instance: PathBuf,
        #[arg(long, default_value_t = 1)]
        epsilon: u64,
    },
    /// Cut every cable with random length errors and count misclassifications.
    Perturb {
        instance: PathBuf,
        /// Uniform per-cable error bound, metres.
        #[arg(long, value_name = "METRES", default_value = "0", value_parser = parse_rational)]
        max_error_m: BigRational,
        /// Fixed error added to every cable, metres.
        #[arg(long, value_name = "METRES", default_value = "0", value_parser = parse_rational)]
        offset_m: BigRational,
        #[arg(long, default_value_t = 1000)]
        trials: u32,
    },
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    Decimal::parse(s)
        .map(|d| d.to_rational())
        .map_err(|e| e.to_string())
}

fn parse_oracle(s: &str) -> Result<OracleChoice, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure of a command, mapped onto a process exit code.
#[derive(Debug)]
pub enum Failure {
    Core(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(Error::ResourceLimit(_)) => EXIT_RESOURCE,
            Failure::Core(_) => EXIT_INPUT,
            Failure::Io(_) => EXIT_IO,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(e) => f.write_str(e),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("lightsum: error: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}
