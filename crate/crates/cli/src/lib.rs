//! `llab`: command-line front end of the Lane–Emden laboratory.

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use llab_core::LabError;

mod commands;
pub mod sweep;
pub mod verify;

#[derive(Debug, Parser)]
#[command(
    name = "llab",
    version,
    about = "Numerical checks for the weighted biharmonic Lane–Emden system"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, Args)]
struct Exps {
    #[arg(long, allow_hyphen_values = true)]
    p: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long, default_value_t = 0.0)]
    beta: f64,
}

#[derive(Debug, Clone, Copy, Args)]
struct Sys {
    #[arg(long = "N")]
    n: f64,
    #[command(flatten)]
    exps: Exps,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FieldKind {
    Singular,
    Bump,
    Shoot,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Critical dimension and literature bounds as one CSV row.
    Critdim {
        #[command(flatten)]
        exps: Exps,
        #[arg(long, default_value_t = llab_core::critdim::DEFAULT_REL_TOL)]
        tol: f64,
    },
    /// Regime of N and the derived constants.
    Classify {
        #[command(flatten)]
        sys: Sys,
    },
    /// Monotonicity functional along a field.
    Monotone {
        #[command(flatten)]
        sys: Sys,
        #[arg(long, value_enum)]
        field: FieldKind,
        /// Shooting data u(0).
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        a: f64,
        /// Shooting data v(0).
        #[arg(long, default_value_t = 0.1, allow_hyphen_values = true)]
        b: f64,
        /// Bump modes `k:amplitude:center:width`, comma separated.
        #[arg(long, value_delimiter = ',', value_parser = commands::parse_bump, default_value = "0:1:1:0.5")]
        modes: Vec<llab_core::fields::BumpMode>,
        #[arg(long, default_value_t = 0.5)]
        r_min: f64,
        #[arg(long, default_value_t = 2.0)]
        r_max: f64,
        #[arg(long, default_value_t = 2000)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Radial shooting from u(0) = a, v(0) = b.
    Shoot {
        #[command(flatten)]
        sys: Sys,
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        #[arg(long, default_value_t = 1e-3)]
        r_min: f64,
        #[arg(long)]
        r_max: f64,
        #[arg(long, default_value_t = 2049)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance suite.
    Verify {
        /// Fewer random draws.
        #[arg(long)]
        quick: bool,
    },
    /// Critical dimensions for every row of a `p,alpha,beta` file.
    Sweep {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        n_values: Vec<f64>,
        #[arg(long, env = "LLAB_JOBS", value_parser = clap::value_parser!(u16).range(1..))]
        jobs: Option<u16>,
    },
}

/// Bad input from the user; maps to exit code 2.
#[derive(Debug)]
struct Usage(String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn exit_code(err: &anyhow::Error) -> i32 {
    if err.is::<Usage>() {
        return 2;
    }
    match err.downcast_ref::<LabError>() {
        Some(
            LabError::Parse { .. }
            | LabError::InvalidParams(_)
            | LabError::InvalidArgument(_)
            | LabError::Grid(_)
            | LabError::Parameter(_),
        ) => 2,
        _ => 1,
    }
}

/// Output sink: a file when given, stdout otherwise.
fn sink(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(
            fs::File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

/// Parse `argv` (program name first), run the subcommand and return the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            exit_code(&err)
        }
    }
}

fn dispatch(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Critdim { exps, tol } => commands::critdim(exps, tol),
        Command::Classify { sys } => commands::classify(sys),
        Command::Monotone {
            sys,
            field,
            a,
            b,
            modes,
            r_min,
            r_max,
            points,
            out,
        } => commands::monotone(
            sys,
            field,
            (a, b),
            &modes,
            (r_min, r_max, points),
            out.as_ref(),
        ),
        Command::Shoot {
            sys,
            a,
            b,
            r_min,
            r_max,
            points,
            out,
        } => commands::shoot(sys, (a, b), (r_min, r_max, points), out.as_ref()),
        Command::Verify { quick } => {
            let outcomes = verify::run_all(quick);
            for o in &outcomes {
                println!("{o}");
            }
            Ok(if outcomes.iter().all(|o| o.passed) {
                0
            } else {
                1
            })
        }
        Command::Sweep {
            input,
            output,
            n_values,
            jobs,
        } => {
            let text = fs::read_to_string(&input)
                .map_err(|e| Usage(format!("reading {}: {e}", input.display())))?;
            let rows = sweep::parse_sweep(&text)?;
            let (csv, failed) = sweep::sweep_csv(&rows, &n_values, jobs.map(usize::from))?;
            fs::write(&output, csv).with_context(|| format!("writing {}", output.display()))?;
            Ok(if failed { 1 } else { 0 })
        }
    }
}
