//! `envelope`: solve envelope-theory systems and reproduce the reference
//! tables from the command line.
//!
//! Exit status: 0 on success, 1 on solver failure (or a failing reproduced
//! row), 2 on bad input. Failures print one error record on stderr.

mod commands;
mod definition;
mod record;

use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use record::{Format, Record};

#[derive(Debug, Parser)]
#[command(
    name = "envelope",
    version,
    about = "Envelope-theory solver for quantum N-body systems"
)]
struct Cli {
    /// Record format on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    output: Format,

    /// Largest accepted equation-of-motion residual for solver records.
    #[arg(long, global = true, default_value_t = envelope::identical::RESIDUAL_ACCEPT)]
    tol: f64,

    /// Suppress warnings and summaries on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct DefinitionArg {
    /// System definition file (`-` reads stdin).
    file: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AtomMethod {
    Et,
    Iet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Statistics {
    Boson,
    Fermion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Shape {
    Gaussian,
    Exponential,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
    #[value(name = "4")]
    Four,
    All,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Identical particles with the method given in the definition (default et).
    SolveIdentical(DefinitionArg),
    /// Identical particles, improved method.
    IetIdentical(DefinitionArg),
    /// N_a identical particles plus one, with the method given in the definition.
    SolveNp1(DefinitionArg),
    /// N_a identical particles plus one, improved method.
    IetNp1(DefinitionArg),
    /// Atom or ion ground-state binding energy in eV.
    Atom {
        /// Nuclear charge.
        #[arg(long = "Z", alias = "z")]
        z: f64,
        #[arg(long)]
        electrons: usize,
        #[arg(long, value_enum, default_value_t = AtomMethod::Et)]
        method: AtomMethod,
        /// Nuclear mass in electron masses; defaults to the fixture isotope for Z = 2, 3, 6, 8.
        #[arg(long, conflicts_with = "nucleus")]
        mass: Option<f64>,
        /// Fixture isotope name, e.g. He-4.
        #[arg(long)]
        nucleus: Option<String>,
    },
    /// Fermionic ground-state filling and its global quantum number.
    Fgs {
        #[arg(long)]
        particles: usize,
        #[arg(long, default_value_t = 3)]
        dim: u32,
        #[arg(long, default_value_t = 1)]
        degeneracy: u32,
        #[arg(long, default_value_t = 2.0)]
        phi: f64,
    },
    /// Critical coupling of V = -g v(r) for nonrelativistic particles.
    CriticalCoupling {
        #[arg(long, value_enum)]
        shape: Shape,
        #[arg(long, default_value_t = 1.0)]
        range: f64,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        #[arg(long = "particles", short = 'n')]
        particles: usize,
        #[arg(long, value_enum, default_value_t = Statistics::Boson)]
        statistics: Statistics,
        #[arg(long, default_value_t = 1)]
        degeneracy: u32,
        #[arg(long, default_value_t = 3)]
        dim: u32,
        /// Use the large-N estimate of the fermionic global quantum number.
        #[arg(long)]
        asymptotic: bool,
    },
    /// Recompute the reference tables and compare.
    Reproduce {
        #[arg(long, value_enum)]
        table: TableArg,
    },
}

/// Malformed or inconsistent user input (exit 2).
#[derive(Debug)]
pub struct InputError(String);

impl InputError {
    pub fn new(msg: impl Into<String>) -> Self {
        InputError(msg.into())
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

/// What a command produced.
pub struct Outcome {
    pub records: Vec<Record>,
    /// Lines for stderr unless `--quiet`.
    pub notes: Vec<String>,
    /// Nonzero exit even though records were produced.
    pub failed: Option<String>,
}

impl Outcome {
    fn single(record: Record) -> Self {
        Outcome {
            records: vec![record],
            notes: Vec::new(),
            failed: None,
        }
    }
}

fn classify(err: &anyhow::Error) -> (&'static str, u8) {
    if err.downcast_ref::<InputError>().is_some() {
        return ("input", 2);
    }
    match err.downcast_ref::<envelope::Error>() {
        Some(envelope::Error::InvalidParameter(_)) => ("input", 2),
        Some(_) => ("solver", 1),
        None if err.downcast_ref::<io::Error>().is_some() => ("input", 2),
        None => ("solver", 1),
    }
}

fn error_record(kind: &str, message: &str) -> Record {
    let line = message
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .collect::<Vec<_>>()
        .join(" ");
    Record::new()
        .with("status", "error")
        .with("kind", kind)
        .with("message", line)
}

fn emit_error(format: Format, record: &Record) {
    let mut err = io::stderr().lock();
    let rendered = match format {
        Format::Json => record.to_json().to_string(),
        _ => {
            let cell = |k: &str| match record.get(k) {
                Some(record::Value::Text(s)) => s.clone(),
                _ => String::new(),
            };
            format!("error ({}): {}", cell("kind"), cell("message"))
        }
    };
    let _ = writeln!(err, "{rendered}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let args: Vec<String> = std::env::args().collect();
            let json = args.iter().any(|a| a == "--output=json")
                || args
                    .windows(2)
                    .any(|w| w[0] == "--output" && w[1] == "json");
            let format = if json { Format::Json } else { Format::Pretty };
            let msg = e.to_string();
            let first = msg
                .lines()
                .next()
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ");
            emit_error(format, &error_record("input", first));
            return ExitCode::from(2);
        }
    };

    match commands::run(&cli) {
        Ok(outcome) => {
            let mut out = io::stdout().lock();
            if let Err(e) = record::write(&mut out, &outcome.records, cli.output) {
                if e.kind() != io::ErrorKind::BrokenPipe {
                    emit_error(cli.output, &error_record("io", &e.to_string()));
                    return ExitCode::from(1);
                }
            }
            if !cli.quiet {
                for note in &outcome.notes {
                    eprintln!("{note}");
                }
            }
            match outcome.failed {
                Some(msg) => {
                    emit_error(cli.output, &error_record("check", &msg));
                    ExitCode::from(1)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            let (kind, code) = classify(&e);
            emit_error(cli.output, &error_record(kind, &format!("{e:#}")));
            ExitCode::from(code)
        }
    }
}
