//! `ppforms`: build, combine and test (p,p)-forms from the command line.
//!
//! JSON goes to stdout, logs and effective seeds to stderr. Exit codes:
//! 0 success or no violation, 1 violation or failed check, 2 invalid input.

mod commands;
mod io;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ppforms::exterior::{Complex64, GaussianRational, Scalar};
use ppforms::positivity::DEFAULT_SIGN_TOL;
use serde_json::{json, Value};

use commands::GalleryFormat;
use io::CliResult;
use verify::Suite;

#[derive(Parser)]
#[command(name = "ppforms", version, about = "Positivity tools for (p,p)-forms")]
struct Cli {
    /// Use double precision instead of exact Gaussian rationals
    #[arg(long, global = true)]
    float: bool,

    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Volume coefficient of the square of a form or matrix file
    Square { file: PathBuf },
    /// Wedge product of two files; top-degree results print the coefficient
    Wedge { a: PathBuf, b: PathBuf },
    /// Search for a negative pairing
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Frames)]
        method: Method,
        #[arg(long, default_value_t = 20_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_SIGN_TOL)]
        tol: f64,
    },
    /// Basis with a_26 = a_36 = a_46 = a_56 = 0 for a (2,2)-form on C^4
    Reduce { file: PathBuf },
    /// Run verification suites
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instances per seeded suite (suite default when omitted)
        #[arg(long)]
        instances: Option<usize>,
    },
    /// Named example forms
    Gallery {
        #[command(subcommand)]
        command: GalleryCommand,
    },
}

#[derive(Subcommand)]
enum GalleryCommand {
    /// List entries with their default parameters
    List,
    /// Write an entry as a form or matrix file
    Build {
        name: String,
        /// Parameter override, repeatable
        #[arg(long = "param", value_parser = commands::parse_param)]
        params: Vec<(String, String)>,
        #[arg(long, value_enum, default_value_t = GalleryFormat::Form)]
        format: GalleryFormat,
        /// View the form on C^N (form output only)
        #[arg(long)]
        dim: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Frames,
    Dinew,
    Reduced,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Frames => "frames",
            Method::Dinew => "dinew",
            Method::Reduced => "reduced",
        }
    }
}

pub struct Outcome {
    code: u8,
    payload: Value,
}

impl Outcome {
    pub fn success(payload: Value) -> Self {
        Self { code: 0, payload }
    }

    pub fn violation(payload: Value) -> Self {
        Self { code: 1, payload }
    }
}

fn dispatch<S: Scalar>(command: Commands) -> CliResult<Outcome> {
    match command {
        Commands::Square { file } => commands::square::<S>(&file),
        Commands::Wedge { a, b } => commands::wedge::<S>(&a, &b),
        Commands::Check { file, method, samples, seed, tol } => commands::check::<S>(&file, method, samples, seed, tol),
        Commands::Reduce { file } => commands::reduce::<S>(&file),
        Commands::Verify { suite, seed, instances } => {
            if !S::EXACT {
                eprintln!("verify: suites run in exact mode; --float ignored");
            }
            let (report, passed) = verify::run(suite, seed, instances);
            Ok(if passed { Outcome::success(report) } else { Outcome::violation(report) })
        }
        Commands::Gallery { command: GalleryCommand::List } => Ok(commands::gallery_list()),
        Commands::Gallery { command: GalleryCommand::Build { name, params, format, dim } } => {
            commands::gallery_build::<S>(&name, &params, format, dim)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = if cli.float {
        dispatch::<Complex64>(cli.command)
    } else {
        dispatch::<GaussianRational>(cli.command)
    };
    let outcome = result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        Outcome { code: 2, payload: json!({ "error": e.to_string() }) }
    });
    println!("{}", serde_json::to_string_pretty(&outcome.payload).expect("JSON values serialize"));
    ExitCode::from(outcome.code)
}
