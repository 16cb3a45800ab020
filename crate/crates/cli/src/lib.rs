//! The `aw` command-line tool. `main.rs` only forwards to [`run`].

pub mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;

use aw_core::{AwError, BigFloat, Rational};
use clap::error::ErrorKind;
use clap::Parser;

use config::{Backend, Cli, RunConfig, Width};
use output::{write_report, Report, Verdict};

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Bad flags or parameters the kernel cannot work with. Exit code 2.
    Usage(String),
    /// An identity that must hold did not. Exit code 1.
    Fail(String),
    /// Writing the output failed. Exit code 2.
    Io(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> CliError {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Fail(_) => 1,
            CliError::Usage(_) | CliError::Io(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Fail(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<AwError> for CliError {
    fn from(e: AwError) -> CliError {
        match e {
            AwError::InvariantViolation(_) => CliError::Fail(e.to_string()),
            // the CLI prefixes its own "error:"
            AwError::Usage(msg) => CliError::Usage(msg),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

fn dispatch(cfg: &RunConfig) -> Result<Report, CliError> {
    use commands::run;
    match cfg.backend {
        Backend::Exact => run::<Rational>(cfg),
        Backend::Float(Width::F64) => run::<f64>(cfg),
        Backend::Float(Width::B64) => run::<BigFloat<64>>(cfg),
        Backend::Float(Width::B128) => run::<BigFloat<128>>(cfg),
        Backend::Float(Width::B256) => run::<BigFloat<256>>(cfg),
        Backend::Float(Width::B512) => run::<BigFloat<512>>(cfg),
        Backend::Float(Width::B1024) => run::<BigFloat<1024>>(cfg),
    }
}

/// Parses `args` (program name first), runs the command and writes the
/// payload to `out` and diagnostics to `err`. Returns the exit code: 0 on
/// success or PASS, 1 on FAIL, 2 on usage errors.
pub fn run<I, T>(
    args: I,
    env_precision: Option<&str>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e);
                return 0;
            }
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(err, "aw: {}", line.trim_start_matches("error: "));
            return 2;
        }
    };
    let result = RunConfig::from_cli(cli, env_precision)
        .and_then(|cfg| dispatch(&cfg).map(|report| (cfg, report)))
        .and_then(|(cfg, report)| {
            write_report(out, &cfg, &report)?;
            Ok((cfg, report))
        });
    match result {
        Ok((cfg, report)) => {
            if report.verdict != Verdict::Ok {
                let _ = writeln!(
                    err,
                    "aw: {} {}",
                    cfg.command.as_str(),
                    report.verdict.as_str()
                );
            }
            i32::from(report.verdict == Verdict::Fail)
        }
        Err(e) => {
            let _ = writeln!(err, "aw: error: {}", e);
            e.exit_code()
        }
    }
}
