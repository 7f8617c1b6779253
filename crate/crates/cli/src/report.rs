//! Run reports, output formats and exit codes.

use std::fmt;
use std::fs;
use std::path::Path;

use omega_core::verify::Verdict;
use serde::Serialize;
use serde_json::Value;

use crate::{Format, GlobalOpts};

pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 64;

/// Machine-readable result of one invocation. Wall-clock time goes to stderr
/// only, so the JSON is byte-identical across runs.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub verdict: Verdict,
    pub details: Value,
}

/// A report plus the CSV table printed under `--format csv` and any extra
/// files written under `--output-dir`.
pub struct Outcome {
    pub report: RunReport,
    pub csv: String,
    pub artifacts: Vec<(String, String)>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Runtime(_) => EXIT_FAIL,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Runtime(m) => f.write_str(m),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

pub fn to_json(v: &impl Serialize) -> String {
    serde_json::to_string_pretty(v).expect("report values serialize") + "\n"
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(name), contents)?;
    Ok(())
}

/// Prints the report in the requested format and writes artifacts.
pub fn emit(g: &GlobalOpts, out: Outcome) -> Result<RunReport, CliError> {
    let json = to_json(&out.report);
    match g.format {
        Format::Json => print!("{json}"),
        Format::Csv => print!("{}", out.csv),
    }
    if let Some(dir) = &g.output_dir {
        let stem = out.report.command.replace('-', "_");
        write_file(dir, &format!("{stem}.json"), &json)?;
        write_file(dir, &format!("{stem}.csv"), &out.csv)?;
        for (name, contents) in &out.artifacts {
            write_file(dir, name, contents)?;
        }
    }
    Ok(out.report)
}
