//! Command-line front-end: JSON model files in, deterministic reports out.

pub mod commands;
pub mod dot;
pub mod model_file;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Parser, Subcommand};

use commands::{Failure, EXIT_OK, EXIT_PARSE};
use report::{Format, Report};

#[derive(Debug, Parser)]
#[command(
    name = "netexcite",
    version,
    about = "Identifiability, pseudotree coverings and excitation allocation for dynamic networks"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the model file against the structural rules.
    Validate { model: PathBuf },
    /// Path-based identifiability test with the file's excitations.
    Check { model: PathBuf },
    /// Disjoint pseudotree covering of the parameterized edges.
    Cover {
        model: PathBuf,
        /// Also write the colored covering as a DOT graph.
        #[arg(long)]
        emit_dot: Option<PathBuf>,
    },
    /// Choose excitation signals.
    Allocate { model: PathBuf },
    /// Choose measured vertices for a fully excited, noise-free network.
    AllocateMeasurements { model: PathBuf },
    /// Lower and upper bounds on the number of excitations and measurements.
    Bounds { model: PathBuf },
    /// Compare against exhaustive search on small instances.
    OracleCompare {
        model: PathBuf,
        /// Largest extended graph, in vertices, the exhaustive search accepts.
        #[arg(long, default_value_t = 7)]
        budget: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Check { .. } => "check",
            Command::Cover { .. } => "cover",
            Command::Allocate { .. } => "allocate",
            Command::AllocateMeasurements { .. } => "allocate-measurements",
            Command::Bounds { .. } => "bounds",
            Command::OracleCompare { .. } => "oracle-compare",
        }
    }

    fn model(&self) -> &PathBuf {
        match self {
            Command::Validate { model }
            | Command::Check { model }
            | Command::Cover { model, .. }
            | Command::Allocate { model }
            | Command::AllocateMeasurements { model }
            | Command::Bounds { model }
            | Command::OracleCompare { model, .. } => model,
        }
    }
}

fn read_input(cmd: &Command) -> anyhow::Result<(Vec<u8>, String)> {
    let path = cmd.model();
    let bytes = std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    let text = String::from_utf8(bytes.clone())
        .with_context(|| format!("{} is not UTF-8", path.display()))?;
    Ok((bytes, text))
}

fn execute(cli: &Cli) -> Result<i32, Failure> {
    let (bytes, text) =
        read_input(&cli.command).map_err(|e| Failure::new(EXIT_PARSE, format!("{e:#}")))?;
    let outcome = match &cli.command {
        Command::Validate { .. } => commands::validate(&text)?,
        other => {
            let m = commands::load(&text)?;
            match other {
                Command::Check { .. } => commands::check(&m)?,
                Command::Cover { emit_dot, .. } => commands::cover(&m, emit_dot.as_deref())?,
                Command::Allocate { .. } => commands::allocate_cmd(&m)?,
                Command::AllocateMeasurements { .. } => commands::allocate_measurements(&m)?,
                Command::Bounds { .. } => commands::bounds(&m)?,
                Command::OracleCompare { budget, .. } => commands::oracle_compare(&m, *budget)?,
                Command::Validate { .. } => unreachable!(),
            }
        }
    };
    if outcome.code != EXIT_OK {
        if let Some(list) = outcome.result.get("violations") {
            for v in list.as_array().into_iter().flatten() {
                eprintln!("violation: {}", v.as_str().unwrap_or_default());
            }
        }
    }
    let report = Report::new(cli.command.name(), &bytes, outcome.result);
    let rendered = report.render(cli.format);
    match &cli.out {
        Some(path) => std::fs::write(path, rendered).map_err(|e| {
            Failure::new(EXIT_PARSE, format!("cannot write {}: {e}", path.display()))
        })?,
        None => std::io::stdout()
            .write_all(rendered.as_bytes())
            .map_err(|e| Failure::new(EXIT_PARSE, format!("cannot write report: {e}")))?,
    }
    Ok(outcome.code)
}

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(f) => {
            for line in f.message.lines() {
                eprintln!("error: {line}");
            }
            f.code
        }
    }
}
