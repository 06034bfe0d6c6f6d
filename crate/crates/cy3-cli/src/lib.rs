//! Command-line front end for the exact intersection engine.
//!
//! Every subcommand computes over exact integers, renders either a human
//! summary or a canonical JSON report (`--json`), and signals through the
//! exit code: `0` on success, `1` when a computation or check fails, `2`
//! on bad input (usage, unreadable files, schema or model violations).

use std::fmt;

use clap::{Parser, Subcommand};

pub mod commands;
pub mod model_io;
pub mod report;

/// Everything that can go wrong in the front end, split by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad command-line input.
    Usage(String),
    /// A file could not be read or written.
    Io { path: String, detail: String },
    /// A model file violates the schema.
    Schema { path: String, detail: String },
    /// A model file parsed but failed validation.
    Model { source: cy3_core::Error },
    /// An exact computation reported an error.
    Compute { source: cy3_core::Error },
    /// Checks ran to completion and some failed.
    ChecksFailed { failed: usize },
}

impl CliError {
    /// `2` for input problems, `1` for computation failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) | Self::Io { .. } | Self::Schema { .. } | Self::Model { .. } => 2,
            Self::Compute { .. } | Self::ChecksFailed { .. } => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Usage(msg) => write!(f, "{msg}"),
            Self::Io { path, detail } => write!(f, "`{path}`: {detail}"),
            Self::Schema { path, detail } => write!(f, "invalid model file `{path}`: {detail}"),
            Self::Model { source } => write!(f, "model validation failed: {source}"),
            Self::Compute { source } => write!(f, "computation failed: {source}"),
            Self::ChecksFailed { failed } => write!(f, "{failed} check(s) failed"),
        }
    }
}

impl std::error::Error for CliError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Self::Model { source } | Self::Compute { source } => Some(source),
            _ => None,
        }
    }
}

/// Exact intersection calculator for a pair of Calabi-Yau threefold
/// models.
#[derive(Debug, Parser)]
#[command(name = "cy3", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the built-in reproduction suite, one PASS/FAIL line per check.
    VerifyPaper {
        /// Emit the canonical JSON report instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Trilinear cube of a divisor (template or basis label) in a model.
    Cube {
        /// `builtin:x_phi`, `builtin:x_t`, or a model-file path.
        #[arg(long)]
        model: String,
        /// `template:NAME` or `label:LABEL`.
        #[arg(long)]
        divisor: String,
        #[arg(long)]
        json: bool,
    },
    /// Pairing of a divisor with the second Chern class.
    C2 {
        /// `builtin:x_phi`, `builtin:x_t`, or a model-file path.
        #[arg(long)]
        model: String,
        /// `template:NAME` or `label:LABEL`.
        #[arg(long)]
        divisor: String,
        #[arg(long)]
        json: bool,
    },
    /// Hilbert polynomial of a numeric (d3, d.c2) pair.
    Hilbert {
        /// Cube of the divisor, as a decimal integer.
        #[arg(long, allow_negative_numbers = true)]
        d3: String,
        /// Pairing with the second Chern class, as a decimal integer.
        #[arg(long, allow_negative_numbers = true)]
        dc2: String,
        #[arg(long)]
        json: bool,
    },
    /// Compare the divisibility parities of two models.
    Distinguish {
        /// Left model: `builtin:...` or a path.
        left: String,
        /// Right model: `builtin:...` or a path.
        right: String,
        #[arg(long)]
        json: bool,
    },
    /// Bounded search for equal cube values between the two families.
    Match {
        /// Which matching equation to search: `paper` or `standard`.
        #[arg(long, default_value = "paper")]
        equation: String,
        /// Exclusive lower bound: every parameter stays strictly above it.
        #[arg(long, default_value_t = 0)]
        bound: i64,
        /// Inclusive upper bound for every parameter.
        #[arg(long = "box")]
        box_upper: i64,
        #[arg(long)]
        json: bool,
    },
    /// Verify the built-in one-parameter family of matches.
    FamilyCheck {
        /// Which matching equation to check against: `paper` or `standard`.
        #[arg(long, default_value = "paper")]
        equation: String,
        /// Number of integer sample points, starting at 1.
        #[arg(long, default_value_t = 5)]
        samples: u32,
        #[arg(long)]
        json: bool,
    },
    /// Write a model as a canonical JSON model file.
    ExportModel {
        /// `builtin:x_phi`, `builtin:x_t`, or a model-file path.
        #[arg(long)]
        model: String,
        /// Output path; prints to stdout when omitted.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

fn echo_argv() -> Vec<String> {
    let mut args: Vec<String> = std::env::args().collect();
    if let Some(first) = args.first_mut() {
        if let Some(name) = std::path::Path::new(first.as_str()).file_name() {
            *first = name.to_string_lossy().into_owned();
        }
    }
    args
}

/// Parses the command line, runs the subcommand, prints its output, and
/// maps failed checks to an error exit.
pub fn run() -> Result<(), CliError> {
    let cli = Cli::parse();
    let argv = echo_argv();
    let (output, json) = match &cli.command {
        Command::VerifyPaper { json } => (commands::verify_paper(argv)?, *json),
        Command::Cube {
            model,
            divisor,
            json,
        } => (commands::cube_cmd(argv, model, divisor)?, *json),
        Command::C2 {
            model,
            divisor,
            json,
        } => (commands::c2_cmd(argv, model, divisor)?, *json),
        Command::Hilbert { d3, dc2, json } => (commands::hilbert_cmd(argv, d3, dc2)?, *json),
        Command::Distinguish { left, right, json } => {
            (commands::distinguish_cmd(argv, left, right)?, *json)
        }
        Command::Match {
            equation,
            bound,
            box_upper,
            json,
        } => (commands::match_cmd(argv, equation, *bound, *box_upper)?, *json),
        Command::FamilyCheck {
            equation,
            samples,
            json,
        } => (commands::family_check_cmd(argv, equation, *samples)?, *json),
        Command::ExportModel { model, out, json } => (
            commands::export_model_cmd(argv, model, out.as_deref())?,
            *json,
        ),
    };
    if json {
        print!("{}", output.report.render());
    } else {
        print!("{}", output.human);
    }
    if output.failures > 0 {
        return Err(CliError::ChecksFailed {
            failed: output.failures,
        });
    }
    Ok(())
}
