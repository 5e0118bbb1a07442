//! Run-wide caps and worker count, optionally read from a `key = value`
//! file and overridden by command-line flags.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::machine::MachineLimits;
use crate::partitions::DEFAULT_PARTITION_CAP;
use crate::quantum::state::DEFAULT_QUBIT_CAP;
use crate::solver::DEFAULT_CANDIDATE_CAP;

/// Environment variable naming a config file.
pub const CONFIG_ENV: &str = "OMEGA_DISENTANGLE_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub max_level: u32,
    pub max_steps: u64,
    pub partition_cap: usize,
    pub qubit_cap: usize,
    pub candidate_cap: u64,
    pub workers: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        let limits = MachineLimits::default();
        Self {
            max_level: limits.max_level,
            max_steps: limits.max_steps,
            partition_cap: DEFAULT_PARTITION_CAP,
            qubit_cap: DEFAULT_QUBIT_CAP,
            candidate_cap: DEFAULT_CANDIDATE_CAP,
            workers: 1,
        }
    }
}

fn parse_field<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("config key `{key}`: bad value `{value}`")))
}

impl RunConfig {
    pub fn machine_limits(&self) -> MachineLimits {
        MachineLimits {
            max_level: self.max_level,
            max_steps: self.max_steps,
        }
    }

    /// Apply `key = value` lines; `#` starts a comment.
    pub fn apply_text(mut self, text: &str) -> Result<Self> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidArgument(format!("config line {}: expected key = value", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "max_level" => self.max_level = parse_field(key, value)?,
                "max_steps" => self.max_steps = parse_field(key, value)?,
                "partition_cap" => self.partition_cap = parse_field(key, value)?,
                "qubit_cap" => self.qubit_cap = parse_field(key, value)?,
                "candidate_cap" => self.candidate_cap = parse_field(key, value)?,
                "workers" => self.workers = parse_field(key, value)?,
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown config key `{other}`"
                    )))
                }
            }
        }
        self.validate()
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::default().apply_text(&fs::read_to_string(path)?)
    }

    pub fn validate(self) -> Result<Self> {
        if self.max_level == 0
            || self.max_steps == 0
            || self.partition_cap == 0
            || self.qubit_cap == 0
            || self.candidate_cap == 0
            || self.workers == 0
        {
            return Err(Error::InvalidArgument(
                "all caps and the worker count must be positive".into(),
            ));
        }
        if self.qubit_cap > DEFAULT_QUBIT_CAP {
            return Err(Error::InvalidArgument(format!(
                "qubit_cap cannot exceed {DEFAULT_QUBIT_CAP}"
            )));
        }
        Ok(self)
    }
}
