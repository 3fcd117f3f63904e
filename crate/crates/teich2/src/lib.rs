//! Command-line front end for `teich2-core`: geometry dumps, the side-pairing
//! group, Fenchel–Nielsen data, orbit and area tables, tilings, and the
//! validation suite, written as CSV, JSON or SVG.
//!
//! Output is byte-stable: floats are printed with 17 significant digits,
//! rows come in a fixed order, and sampled checks are seeded. Parallel work
//! runs on a rayon pool whose size can be capped with `TEICH2_THREADS`.

pub mod cli;
pub mod commands;
pub mod emit;
pub mod error;
pub mod svg;
pub mod validate;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

use crate::cli::{Cli, Format};
use crate::emit::{write_json_error, Sink};
use crate::error::CliError;

pub const THREADS_ENV: &str = "TEICH2_THREADS";

/// Pool size from `TEICH2_THREADS`, if set to a positive integer.
fn thread_cap() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!(
                "{THREADS_ENV} must be a positive integer, got {s:?}"
            ))),
        },
    }
}

/// Whether the raw arguments ask for JSON, for reporting parse errors.
fn wants_json(args: &[OsString]) -> bool {
    args.windows(2)
        .any(|w| w[0] == "--format" && w[1] == "json")
        || args.iter().any(|a| a == "--format=json")
}

fn report(err: &CliError, json: bool, out: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let _ = writeln!(stderr, "teich2: error: {err}");
    if json && !matches!(err, CliError::Validation { .. }) {
        let _ = write_json_error(out, err);
    }
    err.exit_code()
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let json = wants_json(&args);
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    if json {
                        let _ = write_json_error(out, &CliError::Usage(e.kind().to_string()));
                    }
                    2
                }
            };
        }
    };
    let json = cli.format == Some(Format::Json)
        || (cli.format.is_none() && cli.command.default_format() == Format::Json);
    let format = cli.format.unwrap_or_else(|| cli.command.default_format());
    let sink = Sink::from_option(cli.output.as_deref());

    let result = thread_cap().and_then(|cap| {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = cap {
            builder = builder.num_threads(n);
        }
        let pool = builder
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start thread pool: {e}")))?;
        let mut buf = Vec::new();
        let res = pool.install(|| commands::execute(&cli.command, format, &sink, &mut buf));
        out.write_all(&buf)
            .and_then(|()| out.flush())
            .map_err(|e| CliError::io("-", e))?;
        res
    });
    match result {
        Ok(()) => 0,
        Err(err) => report(&err, json && cli.format == Some(Format::Json), out, stderr),
    }
}

pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
