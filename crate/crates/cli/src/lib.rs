//! Front end for the `wb` binary: argument parsing, JSON documents, the
//! universal-polynomial cache and the verification suites.

pub mod args;
pub mod cache;
pub mod commands;
pub mod files;
pub mod sample;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use serde::Serialize;

pub use args::Cli;
pub use verify::{Report, Suite};

/// Exit status for a verification run with failures.
pub const EXIT_VERIFY_FAILED: i32 = 1;
/// Exit status for usage, schema and input errors.
pub const EXIT_USAGE: i32 = 2;
/// Exit status for mathematical domain errors.
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Schema(String),
    Io(String),
    Core(witt_burnside::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if !e.is_input_error() => EXIT_DOMAIN,
            _ => EXIT_USAGE,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "Usage: {m}"),
            CliError::Schema(m) => write!(f, "SchemaMismatch: {m}"),
            CliError::Io(m) => write!(f, "Io: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<witt_burnside::Error> for CliError {
    fn from(e: witt_burnside::Error) -> Self {
        CliError::Core(e)
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable");
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

/// Runs the CLI on `args` (including the program name) and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match commands::dispatch(cli) {
        Ok(outcome) => {
            let _ = out.write_all(outcome.stdout.as_bytes());
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// What a command produced.
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    pub fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}
