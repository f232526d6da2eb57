mod commands;

use std::io::Read;
use std::process::ExitCode;

use anick_core::{make_bn, parse_presentation, AlgebraError, Presentation};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "anick",
    version,
    about = "Groebner bases, Anick chains and resolutions over Q"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced Groebner basis.
    Gb(Common),
    /// Normal form of a polynomial and an ideal-membership verdict.
    Nf {
        #[command(flatten)]
        common: Common,
        /// Polynomial in the presentation's generators.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Anick chains by level, with counts by degree.
    Chains(Common),
    /// Hilbert series from normal words and from chains.
    Hilbert(Common),
    /// Differentials of the Anick resolution and their verification.
    Anick(Common),
    /// Tor dimensions and minimality of the resolution.
    Tor(Common),
}

#[derive(Args, Clone)]
pub struct Common {
    /// Presentation file, or `-` for standard input.
    input: Option<String>,
    /// Use the built-in algebra B_N instead of an input file.
    #[arg(long, value_name = "N")]
    bn: Option<usize>,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_degree: u32,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_level: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for parallel stages.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// A failure with its process exit code.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        use AlgebraError::*;
        let code = match e {
            DegreeBoundTooSmall { .. } | BeyondCertification { .. } | InsufficientChains { .. } => 3,
            StaleObstruction | NotInKernel { .. } | NoChainFactorization { .. } | ResolutionInvariant(_) => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<anick_core::ParseError> for Failure {
    fn from(e: anick_core::ParseError) -> Self {
        Failure::input(e.to_string())
    }
}

fn load(common: &Common) -> Result<Presentation, Failure> {
    match (common.bn, common.input.as_deref()) {
        (Some(n), None) => Ok(make_bn(n)?),
        (Some(_), Some(_)) => Err(Failure::input("give either an input file or --bn, not both")),
        (None, None) => Err(Failure::input(
            "missing input: give a presentation file, `-`, or --bn N",
        )),
        (None, Some("-")) => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::input(format!("stdin: {e}")))?;
            Ok(parse_presentation(&text)?)
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{path}: {e}")))?;
            parse_presentation(&text).map_err(|e| Failure::input(format!("{path}:{e}")))
        }
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    let common = match &cli.command {
        Command::Gb(c) | Command::Chains(c) | Command::Hilbert(c) | Command::Anick(c) | Command::Tor(c) => c,
        Command::Nf { common, .. } => common,
    };
    if let Some(n) = common.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .map_err(|e| Failure::internal(e.to_string()))?;
    }
    let p = load(common)?;
    match &cli.command {
        Command::Gb(c) => commands::gb(&p, c),
        Command::Nf { common, poly } => commands::nf(&p, common, poly),
        Command::Chains(c) => commands::chains(&p, c),
        Command::Hilbert(c) => commands::hilbert(&p, c),
        Command::Anick(c) => commands::anick(&p, c),
        Command::Tor(c) => commands::tor(&p, c),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
