use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use update_queues::{ModelParams, Params64, Perturbation, SolverConfig64};

use crate::error::{CliError, Result};
use crate::parse::{number, parse_grid, parse_perturbation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Write the queue trajectory as `t,q1,...,qN`
    Simulate,
    /// Amplitude at one Δ by every applicable method
    Amplitude,
    /// Amplitudes over a Δ grid
    Table,
    /// Δ at which the equilibrium loses stability
    CriticalDelay,
    /// Simulated amplitudes against the analytic ones
    Compare,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodChoice {
    #[value(alias = "fixed_point", alias = "fixedpoint")]
    FixedPoint,
    Linear,
    Quadratic,
    Nonlinear,
}

/// Raw command line. Every setting is optional here so that a config file
/// can fill the gaps; flags win over the file.
#[derive(Debug, Default, Parser)]
#[command(
    name = "update-queues",
    version,
    about = "Oscillation amplitudes of queues fed by periodically updated information",
    allow_negative_numbers = true
)]
pub struct Cli {
    /// simulate | amplitude | table | critical-delay | compare (may also be set by `command=` in the config file)
    #[arg(value_enum)]
    pub command: Option<Command>,
    /// Arrival rate λ [default: 10]
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Service rate μ [default: 1]
    #[arg(long)]
    pub mu: Option<f64>,
    /// Logit sensitivity θ [default: 1]
    #[arg(long)]
    pub theta: Option<f64>,
    /// Number of queues [default: 2]
    #[arg(long)]
    pub n: Option<usize>,
    /// Update interval Δ
    #[arg(long)]
    pub delta: Option<f64>,
    /// Δ grid for `table`: start:stop:step or a comma list
    #[arg(long, allow_hyphen_values = true)]
    pub delta_grid: Option<String>,
    /// Simulated time [default: 300Δ]
    #[arg(long)]
    pub horizon: Option<f64>,
    /// Time discarded before measuring amplitudes [default: first settled epoch, at most 200Δ]
    #[arg(long)]
    pub burn_in: Option<f64>,
    /// Trajectory samples per update interval [default: 10]
    #[arg(long)]
    pub samples_per_interval: Option<usize>,
    /// CSV destination; standard output when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// key=value settings file
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// fixed-point | linear | quadratic | nonlinear
    #[arg(long, value_enum)]
    pub method: Option<MethodChoice>,
    /// Initial offsets from equilibrium: ε, alt:ε or a comma list [default: 0.01]
    #[arg(long, allow_hyphen_values = true)]
    pub seed_perturbation: Option<String>,
}

/// Fully resolved settings for one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub lambda: f64,
    pub mu: f64,
    pub theta: f64,
    pub n: usize,
    pub delta: Option<f64>,
    pub delta_grid: Option<Vec<f64>>,
    pub horizon: Option<f64>,
    pub burn_in: Option<f64>,
    pub samples_per_interval: usize,
    pub output_path: Option<PathBuf>,
    pub method: Option<MethodChoice>,
    pub seed_perturbation: Perturbation<f64>,
    pub solver: SolverConfig64,
}

const KEYS: [&str; 13] = [
    "command",
    "lambda",
    "mu",
    "theta",
    "n",
    "delta",
    "delta-grid",
    "horizon",
    "burn-in",
    "samples-per-interval",
    "out",
    "method",
    "seed-perturbation",
];

/// Reads `key = value` lines. Blank lines and `#` comments are skipped;
/// `_` and `-` are interchangeable in keys.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Usage(format!(
                "config line {}: expected key=value, got `{line}`",
                i + 1
            )));
        };
        let key = key.trim().to_ascii_lowercase().replace('_', "-");
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::Usage(format!(
                "config line {}: unknown key `{key}`",
                i + 1
            )));
        }
        if map.insert(key.clone(), value.trim().to_string()).is_some() {
            return Err(CliError::Usage(format!(
                "config line {}: `{key}` given twice",
                i + 1
            )));
        }
    }
    Ok(map)
}

fn read_config(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_config_text(&text)
}

fn pick<T>(
    flag: Option<T>,
    file: &BTreeMap<String, String>,
    key: &str,
    parse: impl Fn(&str) -> Result<T>,
) -> Result<Option<T>> {
    match flag {
        Some(v) => Ok(Some(v)),
        None => file.get(key).map(|s| parse(s)).transpose(),
    }
}

fn float(key: &'static str) -> impl Fn(&str) -> Result<f64> {
    move |s| number(key, s)
}

fn count(key: &'static str) -> impl Fn(&str) -> Result<usize> {
    move |s| {
        s.trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{key}: `{s}` is not a non-negative integer")))
    }
}

fn enum_value<T: ValueEnum>(key: &'static str) -> impl Fn(&str) -> Result<T> {
    move |s| {
        T::from_str(s.trim(), true)
            .map_err(|_| CliError::Usage(format!("{key}: unknown value `{s}`")))
    }
}

impl RunConfig {
    /// Merges the command line over the config file (when given) and
    /// validates the result.
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let file = match &cli.config {
            Some(path) => read_config(path)?,
            None => BTreeMap::new(),
        };
        let command =
            pick(cli.command, &file, "command", enum_value("command"))?.ok_or_else(|| {
                CliError::Usage(
                    "no command given (simulate, amplitude, table, critical-delay, compare)".into(),
                )
            })?;
        let grid = match cli.delta_grid {
            Some(g) => Some(parse_grid(&g)?),
            None => file.get("delta-grid").map(|g| parse_grid(g)).transpose()?,
        };
        let perturbation = match cli.seed_perturbation {
            Some(p) => parse_perturbation(&p)?,
            None => file
                .get("seed-perturbation")
                .map(|p| parse_perturbation(p))
                .transpose()?
                .unwrap_or_default(),
        };
        let cfg = RunConfig {
            command,
            lambda: pick(cli.lambda, &file, "lambda", float("lambda"))?.unwrap_or(10.0),
            mu: pick(cli.mu, &file, "mu", float("mu"))?.unwrap_or(1.0),
            theta: pick(cli.theta, &file, "theta", float("theta"))?.unwrap_or(1.0),
            n: pick(cli.n, &file, "n", count("n"))?.unwrap_or(2),
            delta: pick(cli.delta, &file, "delta", float("delta"))?,
            delta_grid: grid,
            horizon: pick(cli.horizon, &file, "horizon", float("horizon"))?,
            burn_in: pick(cli.burn_in, &file, "burn-in", float("burn-in"))?,
            samples_per_interval: pick(
                cli.samples_per_interval,
                &file,
                "samples-per-interval",
                count("samples-per-interval"),
            )?
            .unwrap_or(10),
            output_path: pick(cli.out, &file, "out", |s| Ok(PathBuf::from(s)))?,
            method: pick(cli.method, &file, "method", enum_value("method"))?,
            seed_perturbation: perturbation,
            solver: SolverConfig64::default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Settings for `command` with λ=10, μ=1, θ=1, N=2 and nothing else set.
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            lambda: 10.0,
            mu: 1.0,
            theta: 1.0,
            n: 2,
            delta: None,
            delta_grid: None,
            horizon: None,
            burn_in: None,
            samples_per_interval: 10,
            output_path: None,
            method: None,
            seed_perturbation: Perturbation::default(),
            solver: SolverConfig64::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        ModelParams::new(
            self.lambda,
            self.mu,
            self.theta,
            self.n,
            self.delta.unwrap_or(1.0),
        )?;
        if self.samples_per_interval < 1 {
            return Err(CliError::Usage(
                "samples-per-interval must be at least 1".into(),
            ));
        }
        for (name, v) in [("horizon", self.horizon), ("burn-in", self.burn_in)] {
            if let Some(v) = v {
                let ok = if name == "horizon" { v > 0.0 } else { v >= 0.0 };
                if !(v.is_finite() && ok) {
                    return Err(CliError::Usage(format!("{name} out of range: {v}")));
                }
            }
        }
        if let (Some(h), Some(b)) = (self.horizon, self.burn_in) {
            if !(h > b) {
                return Err(CliError::Usage(format!(
                    "horizon {h} must exceed burn-in {b}"
                )));
            }
        }
        if let Some(grid) = &self.delta_grid {
            if grid.is_empty()
                || grid.windows(2).any(|w| w[1] <= w[0])
                || grid.iter().any(|d| !(*d > 0.0))
            {
                return Err(CliError::Usage(
                    "delta grid must be nonempty, positive and strictly increasing".into(),
                ));
            }
        }
        Ok(())
    }

    /// Model parameters at `delta`.
    pub fn params_at(&self, delta: f64) -> Result<Params64> {
        Ok(ModelParams::new(
            self.lambda,
            self.mu,
            self.theta,
            self.n,
            delta,
        )?)
    }

    /// Model parameters at the configured Δ, which `command` requires.
    pub fn params(&self) -> Result<Params64> {
        let delta = self
            .delta
            .ok_or_else(|| CliError::Usage(format!("{} needs --delta", self.command_name())))?;
        self.params_at(delta)
    }

    pub fn command_name(&self) -> &'static str {
        match self.command {
            Command::Simulate => "simulate",
            Command::Amplitude => "amplitude",
            Command::Table => "table",
            Command::CriticalDelay => "critical-delay",
            Command::Compare => "compare",
        }
    }
}
