//! Command-line front end for `smr-core`: text and JSON formats, and the
//! `smr` command with its exit-code contract.
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success, verified, or predicate true |
//! | 1 | failed property or predicate false |
//! | 2 | invalid input |
//! | 3 | resource cap exceeded |

pub mod axioms;
pub mod cli;
pub mod error;
pub mod json;
pub mod text;

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::Parser;
use smr_core::Report;

pub use cli::{Cli, Format};
pub use error::CliError;

/// A command's result in both renderings.
#[derive(Debug, Clone)]
pub struct Output {
    pub json: serde_json::Value,
    pub text: String,
    pub code: u8,
    /// Written to standard error after the body.
    pub diagnostic: Option<String>,
}

impl Output {
    pub fn new(json: serde_json::Value, text: String, ok: bool) -> Self {
        Output { json, text, code: if ok { 0 } else { 1 }, diagnostic: None }
    }
}

/// Runs `body` and stamps the wall-clock time into the report.
pub fn timed(body: impl FnOnce() -> Report) -> Report {
    let start = Instant::now();
    let mut report = body();
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}

/// Parses `argv`, dispatches, writes the report to `out` and diagnostics
/// to `err`, and returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut impl Write, err: &mut impl Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let parsed = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{rendered}") } else { write!(out, "{rendered}") };
            return code;
        }
    };
    match cli::dispatch(&parsed) {
        Ok(o) => {
            let body = match parsed.format {
                Format::Json => serde_json::to_string_pretty(&o.json).expect("values serialise"),
                Format::Text => o.text.trim_end().to_string(),
            };
            let _ = writeln!(out, "{body}");
            if let Some(d) = &o.diagnostic {
                let _ = writeln!(err, "smr: {d}");
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "smr: {e}");
            e.exit_code()
        }
    }
}

pub fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
