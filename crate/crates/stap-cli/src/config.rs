//! Flat key = value run configuration, merged with command-line flags
//! (flags override file values, file values override command defaults).

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{config_err, CliError};

/// One axis of a sweep grid; every field can be set independently so a
/// config may override only the resolution of a figure default.
#[derive(Clone, Copy, Debug, Default)]
pub struct AxisSpec {
    pub min: Option<f64>,
    pub max: Option<f64>,
    pub count: Option<usize>,
}

impl AxisSpec {
    pub fn resolve(&self, min: f64, max: f64, count: usize) -> (f64, f64, usize) {
        (self.min.unwrap_or(min), self.max.unwrap_or(max), self.count.unwrap_or(count))
    }
}

/// All recognized configuration keys. Unset fields fall back to the
/// command's (or figure's) defaults.
#[derive(Clone, Debug, Default)]
pub struct RunConfig {
    pub protocol: Option<String>,
    pub epsilon: Option<f64>,
    pub tf_over_g: Option<f64>,
    pub g: Option<f64>,
    pub gamma: Option<f64>,
    pub kappa: Option<f64>,
    pub n_steps: Option<usize>,
    pub grid_x: AxisSpec,
    pub grid_y: AxisSpec,
    pub output: Option<PathBuf>,
    // command-specific keys
    pub model: Option<String>,
    pub initial: Option<String>,
    pub target: Option<String>,
    pub labels: Option<Vec<String>>,
    pub sweep: Option<String>,
    pub rows: Option<usize>,
    pub delta_beta: Option<String>,
    pub threshold: Option<f64>,
    pub exact_epsilon: Option<bool>,
}

fn parse_f64(key: &str, value: &str) -> Result<f64, CliError> {
    value
        .parse::<f64>()
        .map_err(|_| config_err(format!("key '{key}': '{value}' is not a number")))
}

fn parse_usize(key: &str, value: &str) -> Result<usize, CliError> {
    value
        .parse::<usize>()
        .map_err(|_| config_err(format!("key '{key}': '{value}' is not a nonnegative integer")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool, CliError> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(config_err(format!("key '{key}': '{value}' is not a boolean (true/false)"))),
    }
}

impl RunConfig {
    /// Parse a config file. Lines are `key = value`; `#` starts a comment;
    /// blank lines are ignored; later assignments win.
    pub fn from_file(path: &Path) -> Result<RunConfig, CliError> {
        let text = fs::read_to_string(path).map_err(|e| {
            config_err(format!("cannot read config file {}: {e}", path.display()))
        })?;
        Self::from_str(&text)
    }

    pub fn from_str(text: &str) -> Result<RunConfig, CliError> {
        let mut cfg = RunConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                config_err(format!("line {}: expected 'key = value', got '{line}'", lineno + 1))
            })?;
            cfg.set(key.trim(), value.trim())?;
        }
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key {
            "protocol" => self.protocol = Some(value.to_string()),
            "epsilon" => self.epsilon = Some(parse_f64(key, value)?),
            "tf_over_g" => self.tf_over_g = Some(parse_f64(key, value)?),
            "g" => self.g = Some(parse_f64(key, value)?),
            "gamma" => self.gamma = Some(parse_f64(key, value)?),
            "kappa" => self.kappa = Some(parse_f64(key, value)?),
            "n_steps" => self.n_steps = Some(parse_usize(key, value)?),
            "grid.x.min" => self.grid_x.min = Some(parse_f64(key, value)?),
            "grid.x.max" => self.grid_x.max = Some(parse_f64(key, value)?),
            "grid.x.count" => self.grid_x.count = Some(parse_usize(key, value)?),
            "grid.y.min" => self.grid_y.min = Some(parse_f64(key, value)?),
            "grid.y.max" => self.grid_y.max = Some(parse_f64(key, value)?),
            "grid.y.count" => self.grid_y.count = Some(parse_usize(key, value)?),
            "output" => self.output = Some(PathBuf::from(value)),
            "model" => self.model = Some(value.to_string()),
            "initial" => self.initial = Some(value.to_string()),
            "target" => self.target = Some(value.to_string()),
            "labels" => {
                self.labels =
                    Some(value.split(',').map(|s| s.trim().to_string()).collect::<Vec<_>>())
            }
            "sweep" => self.sweep = Some(value.to_string()),
            "rows" => self.rows = Some(parse_usize(key, value)?),
            "delta_beta" => self.delta_beta = Some(value.to_string()),
            "threshold" => self.threshold = Some(parse_f64(key, value)?),
            "exact_epsilon" => self.exact_epsilon = Some(parse_bool(key, value)?),
            _ => {
                return Err(config_err(format!(
                    "unknown config key '{key}' (see `stap --help` for the schema)"
                )))
            }
        }
        Ok(())
    }

    /// Overlay `other` on top of `self`: any field set in `other` wins.
    pub fn overlay(mut self, other: RunConfig) -> RunConfig {
        macro_rules! take {
            ($($f:ident),*) => {$( if other.$f.is_some() { self.$f = other.$f; } )*};
        }
        take!(
            protocol, epsilon, tf_over_g, g, gamma, kappa, n_steps, output, model, initial,
            target, labels, sweep, rows, delta_beta, threshold, exact_epsilon
        );
        for (mine, theirs) in [
            (&mut self.grid_x, &other.grid_x),
            (&mut self.grid_y, &other.grid_y),
        ] {
            if theirs.min.is_some() {
                mine.min = theirs.min;
            }
            if theirs.max.is_some() {
                mine.max = theirs.max;
            }
            if theirs.count.is_some() {
                mine.count = theirs.count;
            }
        }
        self
    }
}

/// Parse a basis-state label such as `1`, `01`, or `12`: one decimal digit
/// (0–4) per atom, photons implicitly zero.
pub fn parse_label(text: &str, n_atoms: usize) -> Result<Vec<u8>, CliError> {
    let digits: Vec<u8> = text
        .chars()
        .map(|c| {
            c.to_digit(10)
                .filter(|d| *d <= 4)
                .map(|d| d as u8)
                .ok_or_else(|| config_err(format!("label '{text}': '{c}' is not a level 0-4")))
        })
        .collect::<Result<_, _>>()?;
    if digits.len() != n_atoms {
        return Err(config_err(format!(
            "label '{text}' names {} atom level(s), but the model has {n_atoms} atom(s)",
            digits.len()
        )));
    }
    Ok(digits)
}
