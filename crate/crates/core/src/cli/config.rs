// Copyright 2026 The qpair Authors
// SPDX-License-Identifier: Apache-2.0

//! Run configuration: a subcommand plus flat `key = value` settings taken from
//! the command line, an optional config file and built-in defaults, in that
//! order of precedence.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use clap::error::{ContextKind, ContextValue, ErrorKind};
use clap::{Arg, Command};

use crate::explore::{
    Axis, Bounds, DephasingSpec, Family, FamilySpec, GridSpec, OptimizePreset, OptimizeSpec, PlanePreset, PlaneSpec,
    Scale,
};
use crate::params::{QubitRates, SystemParams};

/// Printed by `--version`.
pub const VERSION_LINE: &str = concat!(env!("CARGO_PKG_VERSION"), " (schema 1)");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Subcommand {
    Steady,
    Sample,
    Grid,
    Family,
    Dephasing,
    Optimize,
}

impl Subcommand {
    pub const ALL: [Subcommand; 6] =
        [Self::Steady, Self::Sample, Self::Grid, Self::Family, Self::Dephasing, Self::Optimize];

    pub fn name(self) -> &'static str {
        match self {
            Self::Steady => "steady",
            Self::Sample => "sample",
            Self::Grid => "grid",
            Self::Family => "family",
            Self::Dephasing => "dephasing",
            Self::Optimize => "optimize",
        }
    }

    fn about(self) -> &'static str {
        match self {
            Self::Steady => "Steady state and metrics of one parameter point",
            Self::Sample => "Random sample of steady states",
            Self::Grid => "Concurrence over a Gamma1 x Gamma2 grid",
            Self::Family => "Closed-form families traced over alpha",
            Self::Dephasing => "Opposite reservoirs under pure dephasing",
            Self::Optimize => "Maximize the concurrence within a preset",
        }
    }

    fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// Finite and non-negative, in units of `g`.
    Rate,
    /// Any finite number.
    Real,
    /// Reservoir nature in `[0, 1]`.
    Nature,
    /// Integer of at least 1.
    Count,
    /// Integer of at least 0.
    Integer,
    Bool,
    Choice(&'static [&'static str]),
    /// Comma-separated rates.
    RateList,
    Path,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
    List(Vec<f64>),
}

impl Value {
    fn render(&self) -> String {
        match self {
            Value::Num(x) => format!("{x:?}"),
            Value::Int(n) => n.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Text(s) => s.clone(),
            Value::List(v) => v.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(","),
        }
    }
}

pub struct KeyDef {
    pub name: &'static str,
    pub kind: Kind,
    pub help: &'static str,
    commands: &'static [Subcommand],
}

use Subcommand::{Dephasing as D, Family as F, Grid as G, Optimize as O, Sample as Sa, Steady as St};

const EVERY: &[Subcommand] = &[St, Sa, G, F, D, O];
const SAMPLE_PRESETS: &[&str] = &["all", "thermal", "opposite"];
const OPTIMIZE_PRESETS: &[&str] = &["all", "thermal", "opposite", "thermal_unequal"];

pub const KEYS: &[KeyDef] = &[
    KeyDef { name: "out", kind: Kind::Path, help: "output file (default: stdout)", commands: EVERY },
    KeyDef { name: "format", kind: Kind::Choice(&["csv", "json"]), help: "output format", commands: EVERY },
    KeyDef { name: "workers", kind: Kind::Integer, help: "worker threads, 0 = all cores", commands: EVERY },
    KeyDef { name: "seed", kind: Kind::Integer, help: "random seed", commands: &[Sa, O] },
    KeyDef { name: "gamma1", kind: Kind::Rate, help: "decay rate of qubit 1", commands: &[St] },
    KeyDef { name: "pump1", kind: Kind::Rate, help: "pumping rate of qubit 1", commands: &[St] },
    KeyDef { name: "gamma2", kind: Kind::Rate, help: "decay rate of qubit 2", commands: &[St] },
    KeyDef { name: "pump2", kind: Kind::Rate, help: "pumping rate of qubit 2", commands: &[St] },
    KeyDef { name: "Gamma1", kind: Kind::Rate, help: "reservoir strength of qubit 1", commands: &[St] },
    KeyDef { name: "r1", kind: Kind::Nature, help: "reservoir nature of qubit 1", commands: &[St, G] },
    KeyDef { name: "Gamma2", kind: Kind::Rate, help: "reservoir strength of qubit 2", commands: &[St] },
    KeyDef { name: "r2", kind: Kind::Nature, help: "reservoir nature of qubit 2", commands: &[St, G] },
    KeyDef { name: "Delta", kind: Kind::Real, help: "detuning", commands: &[St, G] },
    KeyDef { name: "deph1", kind: Kind::Rate, help: "pure dephasing of qubit 1", commands: &[St] },
    KeyDef { name: "deph2", kind: Kind::Rate, help: "pure dephasing of qubit 2", commands: &[St] },
    KeyDef { name: "deph", kind: Kind::Rate, help: "pure dephasing of both qubits", commands: &[St, G] },
    KeyDef { name: "samples", kind: Kind::Count, help: "number of samples", commands: &[Sa] },
    KeyDef { name: "preset", kind: Kind::Choice(SAMPLE_PRESETS), help: "reservoir preset", commands: &[Sa] },
    KeyDef { name: "deph_max", kind: Kind::Rate, help: "upper end of the sampled dephasing", commands: &[Sa] },
    KeyDef { name: "equal_natures", kind: Kind::Bool, help: "force r2 = r1", commands: &[Sa] },
    KeyDef { name: "Gamma1_min", kind: Kind::Rate, help: "grid start along Gamma1", commands: &[G] },
    KeyDef { name: "Gamma1_max", kind: Kind::Rate, help: "grid end along Gamma1", commands: &[G] },
    KeyDef { name: "Gamma1_steps", kind: Kind::Count, help: "grid points along Gamma1", commands: &[G] },
    KeyDef { name: "Gamma2_min", kind: Kind::Rate, help: "grid start along Gamma2", commands: &[G] },
    KeyDef { name: "Gamma2_max", kind: Kind::Rate, help: "grid end along Gamma2", commands: &[G] },
    KeyDef { name: "Gamma2_steps", kind: Kind::Count, help: "grid points along Gamma2", commands: &[G] },
    KeyDef { name: "scale", kind: Kind::Choice(&["linear", "log"]), help: "axis spacing", commands: &[G, F] },
    KeyDef { name: "family", kind: Kind::Choice(&["optimal", "thermal"]), help: "closed-form family", commands: &[F] },
    KeyDef { name: "alpha_min", kind: Kind::Rate, help: "first alpha", commands: &[F] },
    KeyDef { name: "alpha_max", kind: Kind::Rate, help: "last alpha", commands: &[F] },
    KeyDef { name: "alpha_steps", kind: Kind::Count, help: "number of alpha values", commands: &[F] },
    KeyDef { name: "deph_values", kind: Kind::RateList, help: "dephasing rates, comma-separated", commands: &[D] },
    KeyDef { name: "Gamma_min", kind: Kind::Rate, help: "smallest Gamma", commands: &[D, O] },
    KeyDef { name: "Gamma_max", kind: Kind::Rate, help: "largest Gamma", commands: &[D, O] },
    KeyDef { name: "Gamma_steps", kind: Kind::Count, help: "log-spaced Gamma values", commands: &[D] },
    KeyDef { name: "Delta_max", kind: Kind::Rate, help: "largest |Delta|", commands: &[O] },
    KeyDef { name: "preset", kind: Kind::Choice(OPTIMIZE_PRESETS), help: "search space", commands: &[O] },
];

/// Keys accepted by a subcommand, in table order.
pub fn keys_for(sub: Subcommand) -> impl Iterator<Item = &'static KeyDef> {
    KEYS.iter().filter(move |k| k.commands.contains(&sub))
}

fn key_def(sub: Subcommand, name: &str) -> Option<&'static KeyDef> {
    keys_for(sub).find(|k| k.name == name)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError {
    pub key: Option<String>,
    pub message: String,
    pub valid: Vec<&'static str>,
}

impl UsageError {
    fn new(sub: Option<Subcommand>, key: Option<&str>, message: impl Into<String>) -> Self {
        let valid = match sub {
            Some(s) => keys_for(s).map(|k| k.name).chain(["config"]).collect(),
            None => Subcommand::ALL.iter().map(|s| s.name()).collect(),
        };
        Self { key: key.map(str::to_string), message: message.into(), valid }
    }
}

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)?;
        if let Some(k) = &self.key {
            write!(f, " (key `{k}`)")?;
        }
        write!(f, "\nvalid: {}", self.valid.join(", "))
    }
}

impl std::error::Error for UsageError {}

/// Anything `parse_config` can produce besides a configuration.
#[derive(Debug)]
pub enum ParseOutcome {
    Run(RunConfig),
    /// Help or version text to print before exiting successfully.
    Info(String),
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("usage: {0}")]
    Usage(UsageError),
    /// The config file could not be read.
    #[error("{}: {source}", path.display())]
    Read { path: PathBuf, source: std::io::Error },
}

impl From<UsageError> for ConfigError {
    fn from(e: UsageError) -> Self {
        Self::Usage(e)
    }
}

/// A fully resolved run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub subcommand: Subcommand,
    /// Explicitly set physics and sweep keys (everything except
    /// `out`, `format`, `seed` and `workers`).
    pub overrides: BTreeMap<&'static str, Value>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub seed: Option<u64>,
    pub workers: usize,
}

fn parse_value(sub: Subcommand, def: &KeyDef, raw: &str) -> Result<Value, UsageError> {
    let bad =
        |what: &str| UsageError::new(Some(sub), Some(def.name), format!("invalid value `{raw}`: expected {what}"));
    let number = |s: &str| s.trim().parse::<f64>().ok().filter(|x| x.is_finite());
    let raw_t = raw.trim();
    Ok(match def.kind {
        Kind::Rate => Value::Num(number(raw_t).filter(|x| *x >= 0.0).ok_or_else(|| bad("a finite non-negative rate"))?),
        Kind::Real => Value::Num(number(raw_t).ok_or_else(|| bad("a finite number"))?),
        Kind::Nature => {
            Value::Num(number(raw_t).filter(|x| (0.0..=1.0).contains(x)).ok_or_else(|| bad("a number in [0, 1]"))?)
        }
        Kind::Count => Value::Int(raw_t.parse().ok().filter(|n| *n >= 1).ok_or_else(|| bad("an integer >= 1"))?),
        Kind::Integer => Value::Int(raw_t.parse().map_err(|_| bad("a non-negative integer"))?),
        Kind::Bool => Value::Bool(raw_t.parse().map_err(|_| bad("true or false"))?),
        Kind::Choice(options) => {
            if !options.contains(&raw_t) {
                return Err(bad(&format!("one of {}", options.join(", "))));
            }
            Value::Text(raw_t.to_string())
        }
        Kind::RateList => {
            let list: Option<Vec<f64>> = raw_t.split(',').map(|s| number(s).filter(|x| *x >= 0.0)).collect();
            Value::List(list.filter(|l| !l.is_empty()).ok_or_else(|| bad("comma-separated non-negative rates"))?)
        }
        Kind::Path => {
            if raw_t.is_empty() {
                return Err(bad("a path"));
            }
            Value::Text(raw.to_string())
        }
    })
}

fn command() -> Command {
    let mut cmd = Command::new("qpair")
        .version(VERSION_LINE)
        .about("Steady-state entanglement of two coupled qubits")
        .subcommand_required(true);
    for sub in Subcommand::ALL {
        let mut sc = Command::new(sub.name())
            .about(sub.about())
            .arg(Arg::new("config").long("config").value_name("FILE").num_args(1).help("flat `key = value` file"));
        for k in keys_for(sub) {
            sc = sc.arg(
                Arg::new(k.name).long(k.name).value_name("VALUE").num_args(1).allow_negative_numbers(true).help(k.help),
            );
        }
        cmd = cmd.subcommand(sc);
    }
    cmd
}

fn clap_usage(err: &clap::Error, sub: Option<Subcommand>) -> UsageError {
    let key = match err.get(ContextKind::InvalidArg) {
        Some(ContextValue::String(s)) => {
            Some(s.split_whitespace().next().unwrap_or(s).trim_start_matches('-').to_string())
        }
        _ => None,
    };
    let reason = match err.kind() {
        ErrorKind::UnknownArgument => "unknown key".to_string(),
        ErrorKind::InvalidSubcommand => "unknown subcommand".to_string(),
        ErrorKind::MissingSubcommand | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
            "a subcommand is required".to_string()
        }
        ErrorKind::ArgumentConflict => "key given more than once".to_string(),
        _ => err.kind().to_string(),
    };
    // an unknown subcommand lists subcommands, not keys
    let sub = if err.kind() == ErrorKind::InvalidSubcommand { None } else { sub };
    UsageError::new(sub, key.as_deref(), reason)
}

/// Parses a flat `key = value` file; `#` starts a comment.
pub fn parse_config_text(sub: Subcommand, text: &str) -> Result<BTreeMap<&'static str, Value>, UsageError> {
    let mut out = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(UsageError::new(Some(sub), None, format!("config line {}: expected `key = value`", n + 1)));
        };
        let k = k.trim();
        let def = key_def(sub, k).ok_or_else(|| UsageError::new(Some(sub), Some(k), "unknown key in config file"))?;
        if out.contains_key(def.name) {
            return Err(UsageError::new(Some(sub), Some(k), "key repeated in config file"));
        }
        out.insert(def.name, parse_value(sub, def, v)?);
    }
    Ok(out)
}

const VIEWS: [[&[&str]; 2]; 2] = [[&["gamma1", "pump1"], &["Gamma1", "r1"]], [&["gamma2", "pump2"], &["Gamma2", "r2"]]];

/// Merges the config-file layer under the command-line layer. Setting either
/// rate view of a qubit (or any dephasing key) on the command line replaces the
/// file's entries for that qubit.
fn merge(
    sub: Subcommand,
    mut file: BTreeMap<&'static str, Value>,
    cli: BTreeMap<&'static str, Value>,
) -> BTreeMap<&'static str, Value> {
    if sub == Subcommand::Steady {
        for views in VIEWS {
            if views.iter().flat_map(|v| v.iter()).any(|k| cli.contains_key(k)) {
                for k in views.iter().flat_map(|v| v.iter()) {
                    file.remove(k);
                }
            }
        }
        if ["deph", "deph1", "deph2"].iter().any(|k| cli.contains_key(k)) {
            for k in ["deph", "deph1", "deph2"] {
                file.remove(k);
            }
        }
    }
    file.extend(cli);
    file
}

fn check_exclusive(sub: Subcommand, values: &BTreeMap<&'static str, Value>) -> Result<(), UsageError> {
    if sub != Subcommand::Steady {
        return Ok(());
    }
    for [rates, reservoir] in VIEWS {
        let a = rates.iter().find(|k| values.contains_key(*k));
        let b = reservoir.iter().find(|k| values.contains_key(*k));
        if let (Some(a), Some(b)) = (a, b) {
            return Err(UsageError::new(
                Some(sub),
                Some(b),
                format!("`{b}` cannot be combined with `{a}`: give either gamma/pump or Gamma/r for a qubit"),
            ));
        }
    }
    if values.contains_key("deph") {
        if let Some(k) = ["deph1", "deph2"].iter().find(|k| values.contains_key(*k)) {
            return Err(UsageError::new(Some(sub), Some(k), format!("`{k}` cannot be combined with `deph`")));
        }
    }
    Ok(())
}

/// Resolves `argv` (program name first) into a run configuration.
///
/// The config file, if any, is named by `--config`; `config_text` supplies its
/// contents directly and takes priority (used when the caller has already read it).
pub fn parse_config<I, S>(argv: I, config_text: Option<&str>) -> Result<ParseOutcome, ConfigError>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let sub_hint = argv.iter().skip(1).find_map(|a| a.to_str().and_then(Subcommand::from_name));
    let matches = match command().try_get_matches_from(&argv) {
        Ok(m) => m,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return Ok(ParseOutcome::Info(e.render().to_string()));
        }
        Err(e) => return Err(clap_usage(&e, sub_hint).into()),
    };
    let (name, sm) = matches.subcommand().expect("subcommand is required");
    let sub = Subcommand::from_name(name).expect("registered subcommand");

    let mut cli = BTreeMap::new();
    for def in keys_for(sub) {
        if let Some(raw) = sm.get_one::<String>(def.name) {
            cli.insert(def.name, parse_value(sub, def, raw)?);
        }
    }
    let file = match (config_text, sm.get_one::<String>("config")) {
        (Some(text), _) => parse_config_text(sub, text)?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|source| ConfigError::Read { path: PathBuf::from(path), source })?;
            parse_config_text(sub, &text)?
        }
        (None, None) => BTreeMap::new(),
    };
    let mut values = merge(sub, file, cli);
    check_exclusive(sub, &values)?;

    let out = values.remove("out").map(|v| match v {
        Value::Text(s) => PathBuf::from(s),
        _ => unreachable!("out is a path"),
    });
    let format = match values.remove("format") {
        Some(Value::Text(s)) if s == "json" => Format::Json,
        _ => Format::Csv,
    };
    let seed = match values.remove("seed") {
        Some(Value::Int(n)) => Some(n),
        _ => key_def(sub, "seed").map(|_| 0),
    };
    let workers = match values.remove("workers") {
        Some(Value::Int(n)) => n as usize,
        _ => 0,
    };
    let config = RunConfig { subcommand: sub, overrides: values, out, format, seed, workers };
    config.job()?;
    Ok(ParseOutcome::Run(config))
}

/// Command line that reproduces `config` through [`parse_config`].
pub fn render(config: &RunConfig) -> Vec<String> {
    let mut argv = vec!["qpair".to_string(), config.subcommand.name().to_string()];
    let mut push = |k: &str, v: String| {
        argv.push(format!("--{k}"));
        argv.push(v);
    };
    if let Some(out) = &config.out {
        push("out", out.to_string_lossy().into_owned());
    }
    push("format", if config.format == Format::Json { "json" } else { "csv" }.to_string());
    if let Some(seed) = config.seed {
        push("seed", seed.to_string());
    }
    push("workers", config.workers.to_string());
    for (k, v) in &config.overrides {
        push(k, v.render());
    }
    argv
}

/// The engine call described by a configuration.
#[derive(Debug, Clone, PartialEq)]
pub enum Job {
    Steady(SystemParams),
    Sample(PlaneSpec),
    Grid(GridSpec),
    Family(FamilySpec),
    Dephasing(DephasingSpec),
    Optimize(OptimizeSpec),
}

impl RunConfig {
    fn num(&self, key: &str, default: f64) -> f64 {
        match self.overrides.get(key) {
            Some(Value::Num(x)) => *x,
            _ => default,
        }
    }

    fn int(&self, key: &str, default: u64) -> u64 {
        match self.overrides.get(key) {
            Some(Value::Int(n)) => *n,
            _ => default,
        }
    }

    fn text<'a>(&'a self, key: &str, default: &'a str) -> &'a str {
        match self.overrides.get(key) {
            Some(Value::Text(s)) => s,
            _ => default,
        }
    }

    fn has(&self, key: &str) -> bool {
        self.overrides.contains_key(key)
    }

    fn usage(&self, key: Option<&str>, message: impl Into<String>) -> UsageError {
        UsageError::new(Some(self.subcommand), key, message)
    }

    fn scale(&self) -> Scale {
        if self.text("scale", "linear") == "log" {
            Scale::Log
        } else {
            Scale::Linear
        }
    }

    /// Rates of qubit `i` (1 or 2). The default point is `P₁ = γ₂ = g`, `γ₁ = P₂ = 0`.
    fn qubit(&self, i: usize) -> QubitRates {
        let [gamma, pump, big, r] = [["gamma1", "pump1", "Gamma1", "r1"], ["gamma2", "pump2", "Gamma2", "r2"]][i - 1];
        let default_r = if i == 1 { 1.0 } else { 0.0 };
        let rates = if self.has(big) || self.has(r) {
            QubitRates::from_reservoir(self.num(big, 1.0), self.num(r, default_r))
        } else {
            QubitRates::new(self.num(gamma, 1.0 - default_r), self.num(pump, default_r), 0.0)
        };
        let deph = self.num("deph", 0.0);
        rates.with_dephasing(self.num(if i == 1 { "deph1" } else { "deph2" }, deph))
    }

    /// Builds and validates the engine specification.
    pub fn job(&self) -> Result<Job, UsageError> {
        let workers = self.workers;
        let seed = self.seed.unwrap_or(0);
        let job = match self.subcommand {
            Subcommand::Steady => {
                let p = SystemParams::new(self.num("Delta", 0.0), self.qubit(1), self.qubit(2));
                p.validate().map_err(|e| self.usage(None, e.to_string()))?;
                Job::Steady(p)
            }
            Subcommand::Sample => {
                let preset = match self.text("preset", "all") {
                    "thermal" => PlanePreset::Thermal,
                    "opposite" => PlanePreset::Opposite,
                    _ => PlanePreset::All,
                };
                let spec = PlaneSpec {
                    workers,
                    equal_natures: matches!(self.overrides.get("equal_natures"), Some(Value::Bool(true))),
                    dephasing_max: self.num("deph_max", 0.0),
                    ..PlaneSpec::new(self.int("samples", 10_000) as usize, preset, seed)
                };
                spec.validate().map_err(|e| self.usage(None, e.to_string()))?;
                Job::Sample(spec)
            }
            Subcommand::Grid => {
                let axis = |k: &str, min: f64, max: f64, steps: u64| Axis {
                    min: self.num(&format!("{k}_min"), min),
                    max: self.num(&format!("{k}_max"), max),
                    steps: self.int(&format!("{k}_steps"), steps) as usize,
                    scale: self.scale(),
                };
                let spec = GridSpec {
                    detuning: self.num("Delta", 0.0),
                    dephasing: self.num("deph", 0.0),
                    workers,
                    ..GridSpec::new(
                        self.num("r1", 0.5),
                        self.num("r2", 0.0),
                        axis("Gamma1", 0.05, 10.0, 100),
                        axis("Gamma2", 0.05, 10.0, 100),
                    )
                };
                spec.validate().map_err(|e| self.usage(None, e.to_string()))?;
                Job::Grid(spec)
            }
            Subcommand::Family => {
                let family =
                    if self.text("family", "optimal") == "thermal" { Family::Thermal } else { Family::Optimal };
                let alpha = Axis {
                    min: self.num("alpha_min", 0.0),
                    max: self.num("alpha_max", 20.0),
                    steps: self.int("alpha_steps", 401) as usize,
                    scale: self.scale(),
                };
                alpha.validate().map_err(|e| self.usage(None, e.to_string()))?;
                Job::Family(FamilySpec { family, alpha, workers })
            }
            Subcommand::Dephasing => {
                let std = DephasingSpec::standard();
                let dephasing = match self.overrides.get("deph_values") {
                    Some(Value::List(v)) => v.clone(),
                    _ => std.dephasing,
                };
                let gamma = Axis::log(
                    self.num("Gamma_min", std.gamma.min),
                    self.num("Gamma_max", std.gamma.max),
                    self.int("Gamma_steps", std.gamma.steps as u64) as usize,
                );
                gamma.validate().map_err(|e| self.usage(Some("Gamma_min"), e.to_string()))?;
                Job::Dephasing(DephasingSpec { dephasing, gamma, workers })
            }
            Subcommand::Optimize => {
                let preset = match self.text("preset", "all") {
                    "thermal" => OptimizePreset::Thermal,
                    "opposite" => OptimizePreset::Opposite,
                    "thermal_unequal" => OptimizePreset::ThermalUnequal,
                    _ => OptimizePreset::All,
                };
                let d = Bounds::default();
                let bounds = Bounds {
                    gamma_min: self.num("Gamma_min", d.gamma_min),
                    gamma_max: self.num("Gamma_max", d.gamma_max),
                    detuning_max: self.num("Delta_max", d.detuning_max),
                };
                if !(bounds.gamma_min > 0.0 && bounds.gamma_min < bounds.gamma_max) {
                    return Err(self.usage(Some("Gamma_min"), "need 0 < Gamma_min < Gamma_max"));
                }
                Job::Optimize(OptimizeSpec { bounds, workers, ..OptimizeSpec::new(preset, seed) })
            }
        };
        Ok(job)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Result<RunConfig, ConfigError> {
        match parse_config(std::iter::once("qpair").chain(args.iter().copied()), None)? {
            ParseOutcome::Run(c) => Ok(c),
            ParseOutcome::Info(s) => panic!("unexpected info output {s}"),
        }
    }

    fn usage(args: &[&str]) -> UsageError {
        match run(args) {
            Err(ConfigError::Usage(u)) => u,
            other => panic!("expected a usage error, got {other:?}"),
        }
    }

    #[test]
    fn rate_view_flags() {
        let c = run(&["steady", "--gamma1", "0", "--pump1", "1", "--gamma2", "1", "--pump2", "0"]).unwrap();
        assert_eq!(c.job().unwrap(), Job::Steady(SystemParams::opposite(1.0, 0.0)));
    }

    #[test]
    fn reservoir_view_flags() {
        let c = run(&["steady", "--r1", "0.5", "--r2", "0.5", "--Gamma1", "3", "--Gamma2", "3"]).unwrap();
        let Job::Steady(p) = c.job().unwrap() else { panic!() };
        assert_eq!(p.first(), &QubitRates::new(1.5, 1.5, 0.0));
        assert_eq!(p.second(), &QubitRates::new(1.5, 1.5, 0.0));
    }

    #[test]
    fn negative_rate_names_the_key() {
        let e = usage(&["steady", "--gamma1", "-1"]);
        assert_eq!(e.key.as_deref(), Some("gamma1"));
        assert!(e.valid.contains(&"pump1"));
    }

    #[test]
    fn mixing_views_is_rejected() {
        let e = usage(&["steady", "--gamma1", "1", "--r1", "0.3"]);
        assert_eq!(e.key.as_deref(), Some("r1"));
        // different qubits may use different views
        assert!(run(&["steady", "--gamma1", "1", "--r2", "0.3"]).is_ok());
        assert!(matches!(run(&["steady", "--deph", "1", "--deph2", "1"]), Err(ConfigError::Usage(_))));
    }

    #[test]
    fn unknown_key_lists_valid_keys() {
        let e = usage(&["grid", "--bogus", "1"]);
        assert_eq!(e.key.as_deref(), Some("bogus"));
        assert!(e.valid.contains(&"Gamma1_steps"));
        assert!(!e.valid.contains(&"gamma1"));
        let e = usage(&["frobnicate"]);
        assert!(e.valid.contains(&"steady"));
    }

    #[test]
    fn precedence_cli_over_file_over_default() {
        let text = "samples = 50\npreset = thermal # comment\n\nseed = 3\n";
        let argv = ["qpair", "sample", "--samples", "7"];
        let ParseOutcome::Run(c) = parse_config(argv, Some(text)).unwrap() else { panic!() };
        let Job::Sample(s) = c.job().unwrap() else { panic!() };
        assert_eq!(s.samples, 7);
        assert_eq!(s.preset, PlanePreset::Thermal);
        assert_eq!(s.seed, 3);
        assert_eq!(s.dephasing_max, 0.0);
    }

    #[test]
    fn cli_view_replaces_file_view() {
        let ParseOutcome::Run(c) =
            parse_config(["qpair", "steady", "--gamma1", "2"], Some("Gamma1 = 4\nr1 = 0.5")).unwrap()
        else {
            panic!()
        };
        let Job::Steady(p) = c.job().unwrap() else { panic!() };
        assert_eq!(p.first(), &QubitRates::new(2.0, 1.0, 0.0));
    }

    #[test]
    fn file_errors() {
        let e = parse_config(["qpair", "grid"], Some("gamma1 = 1")).unwrap_err();
        assert!(matches!(e, ConfigError::Usage(UsageError { key: Some(ref k), .. }) if k == "gamma1"));
        let e = parse_config(["qpair", "grid"], Some("just words")).unwrap_err();
        assert!(matches!(e, ConfigError::Usage(_)));
        let e = parse_config(["qpair", "grid"], Some("r1 = 0.1\nr1 = 0.2")).unwrap_err();
        assert!(matches!(e, ConfigError::Usage(_)));
    }

    #[test]
    fn invalid_ranges_are_usage_errors() {
        assert!(matches!(run(&["grid", "--Gamma1_min", "5", "--Gamma1_max", "1"]), Err(ConfigError::Usage(_))));
        assert!(matches!(run(&["family", "--scale", "log"]), Err(ConfigError::Usage(_))));
        assert!(matches!(run(&["sample", "--samples", "0"]), Err(ConfigError::Usage(_))));
        assert!(matches!(run(&["steady", "--r1", "1.5"]), Err(ConfigError::Usage(_))));
    }

    #[test]
    fn version_and_help() {
        assert!(VERSION_LINE.ends_with(&format!("(schema {})", crate::explore::SCHEMA_VERSION)));
        let ParseOutcome::Info(s) = parse_config(["qpair", "--version"], None).unwrap() else { panic!() };
        assert!(s.contains(VERSION_LINE));
        assert!(matches!(parse_config(["qpair", "grid", "--help"], None).unwrap(), ParseOutcome::Info(_)));
    }

    #[test]
    fn render_round_trip_of_examples() {
        for args in [
            &["steady", "--Gamma1", "3.3", "--r1", "0.25", "--gamma2", "0.1", "--deph", "1e-3"][..],
            &["sample", "--samples", "12", "--seed", "99", "--equal_natures", "true", "--format", "json"],
            &["dephasing", "--deph_values", "0,0.5,1e-7", "--out", "x.csv"],
            &["optimize", "--preset", "thermal_unequal", "--Gamma_max", "50"],
        ] {
            let c = run(args).unwrap();
            let again = match parse_config(render(&c), None).unwrap() {
                ParseOutcome::Run(c) => c,
                ParseOutcome::Info(_) => panic!(),
            };
            assert_eq!(again, c);
        }
    }
}
