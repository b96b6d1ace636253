// Copyright 2026 The qpair Authors
// SPDX-License-Identifier: Apache-2.0

//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for runtime and I/O failures, 2 for usage errors.

pub mod config;
pub mod emit;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::explore::{
    dephasing_sweep, evaluate, family_trace, grid_sweep, maximize_concurrence, sample_plane, EvalError, SpecError,
};
use config::{ConfigError, Format, Job, ParseOutcome, RunConfig, UsageError};

pub use config::{parse_config, render};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(#[from] UsageError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Spec(#[from] SpecError),
    #[error("steady state: {0}")]
    Eval(#[from] EvalError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => 2,
            _ => 1,
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        match e {
            ConfigError::Usage(u) => Self::Usage(u),
            ConfigError::Read { path, source } => Self::Io { path, source },
        }
    }
}

/// A finished output: the main document plus, for dephasing CSV runs, the
/// per-curve maxima.
#[derive(Debug, Clone, PartialEq)]
pub struct Rendered {
    pub main: String,
    pub maxima: Option<String>,
}

/// Runs the job described by `config` and renders its output.
pub fn execute(config: &RunConfig) -> Result<Rendered, CliError> {
    let json = config.format == Format::Json;
    let single = |table: emit::Table, result: &crate::explore::SweepResult| Rendered {
        main: if json { emit::sweep_json(result, &table) } else { table.to_csv() },
        maxima: None,
    };
    Ok(match config.job()? {
        Job::Steady(p) => {
            let e = evaluate(&p)?;
            Rendered {
                main: if json { emit::steady_json(&p, &e) } else { emit::steady_table(&p, &e).to_csv() },
                maxima: None,
            }
        }
        Job::Sample(spec) => {
            let r = sample_plane(&spec)?;
            single(emit::sample_table(&r), &r)
        }
        Job::Grid(spec) => {
            let r = grid_sweep(&spec)?;
            single(emit::grid_table(&r), &r)
        }
        Job::Family(spec) => {
            let r = family_trace(&spec)?;
            single(emit::family_table(&r), &r)
        }
        Job::Dephasing(spec) => {
            let r = dephasing_sweep(&spec)?;
            let mut out = single(emit::dephasing_table(&r), &r);
            if !json {
                out.maxima = Some(emit::maxima_table(&r).to_csv());
            }
            out
        }
        Job::Optimize(spec) => {
            let r = maximize_concurrence(&spec)?.into_sweep(&spec);
            single(emit::optimize_table(spec.preset, &r), &r)
        }
    })
}

/// `results.csv` → `results_maxima.csv`.
pub fn maxima_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let ext = out.extension().map(|e| format!(".{}", e.to_string_lossy())).unwrap_or_default();
    out.with_file_name(format!("{stem}_maxima{ext}"))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Writes rendered output to the configured destination. On stdout the
/// maxima table follows the main table after a blank line.
pub fn write_output(config: &RunConfig, out: &Rendered) -> Result<(), CliError> {
    match &config.out {
        Some(path) => {
            write_file(path, &out.main)?;
            if let Some(m) = &out.maxima {
                write_file(&maxima_path(path), m)?;
            }
            Ok(())
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            let io = |source| CliError::Io { path: PathBuf::from("<stdout>"), source };
            stdout.write_all(out.main.as_bytes()).map_err(io)?;
            if let Some(m) = &out.maxima {
                write!(stdout, "\n{m}").map_err(io)?;
            }
            stdout.flush().map_err(io)
        }
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let result = parse_config(argv, None).map_err(CliError::from).and_then(|parsed| match parsed {
        ParseOutcome::Info(text) => {
            print!("{text}");
            Ok(())
        }
        ParseOutcome::Run(config) => write_output(&config, &execute(&config)?),
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("qpair: {e}");
            e.exit_code()
        }
    }
}
