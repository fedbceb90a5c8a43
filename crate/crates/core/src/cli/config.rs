//! Run configuration: defaults, `key=value` files, and the dump format.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::Result;
use crate::model::{PotentialMix, QuantumNumbers};
use crate::radial::RadialGrid;
use crate::specfun::AiryZeroIndex;

use super::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub m: f64,
    pub lambda: f64,
    pub s: f64,
    pub k: i32,
    pub zero_index: i64,
    pub r_max: f64,
    pub n: usize,
    pub out: Option<PathBuf>,
    /// Energy override for `lifetime`.
    pub energy: Option<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            m: 1.0,
            lambda: 0.2,
            s: 0.5,
            k: -1,
            zero_index: 1,
            r_max: 25.0,
            n: 20_000,
            out: None,
            energy: None,
        }
    }
}

/// Keys accepted in a config file, in dump order.
pub const KEYS: [&str; 9] = ["m", "lambda", "s", "k", "zero_index", "rmax", "n", "out", "energy"];

impl RunConfig {
    pub fn mix(&self) -> Result<PotentialMix> {
        PotentialMix::new(self.lambda, self.s)
    }

    pub fn quantum_numbers(&self) -> Result<QuantumNumbers> {
        QuantumNumbers::new(self.k)
    }

    pub fn grid(&self) -> Result<RadialGrid> {
        RadialGrid::from_r_max(self.r_max, self.n)
    }

    pub fn zero_index(&self) -> Result<AiryZeroIndex> {
        AiryZeroIndex::new(self.zero_index)
    }

    /// Checks every field against the library's own constructors.
    pub fn validate(&self) -> Result<()> {
        crate::model::Particle::new(self.m)?;
        self.mix()?;
        self.quantum_numbers()?;
        self.grid()?;
        self.zero_index()?;
        if let Some(e) = self.energy {
            if !e.is_finite() {
                return crate::error::domain(format!("energy must be finite, got {e}"));
            }
        }
        Ok(())
    }

    /// Applies one `key=value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> std::result::Result<(), CliError> {
        let bad = |what: &str| CliError::Usage(format!("invalid value '{value}' for config key '{key}': expected {what}"));
        match key {
            "m" => self.m = value.parse().map_err(|_| bad("a number"))?,
            "lambda" => self.lambda = value.parse().map_err(|_| bad("a number"))?,
            "s" => self.s = value.parse().map_err(|_| bad("a number"))?,
            "k" => self.k = value.parse().map_err(|_| bad("an integer"))?,
            "zero_index" => self.zero_index = value.parse().map_err(|_| bad("an integer"))?,
            "rmax" => self.r_max = value.parse().map_err(|_| bad("a number"))?,
            "n" => self.n = value.parse().map_err(|_| bad("a non-negative integer"))?,
            "out" => self.out = Some(PathBuf::from(value)),
            "energy" => self.energy = Some(value.parse().map_err(|_| bad("a number"))?),
            _ => return Err(CliError::Usage(format!("unknown config key '{key}'"))),
        }
        Ok(())
    }

    /// Parses `key=value` lines on top of the current values. Blank lines and
    /// lines starting with `#` are skipped; later keys override earlier ones.
    pub fn apply_str(&mut self, text: &str, origin: &str) -> std::result::Result<(), CliError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("{origin}:{}: expected key=value, got '{line}'", i + 1)))?;
            self.set(key.trim(), value.trim()).map_err(|e| match e {
                CliError::Usage(msg) => CliError::Usage(format!("{origin}:{}: {msg}", i + 1)),
                other => other,
            })?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> std::result::Result<(), CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        self.apply_str(&text, &path.display().to_string())
    }

    pub fn parse(text: &str) -> std::result::Result<Self, CliError> {
        let mut cfg = RunConfig::default();
        cfg.apply_str(text, "<config>")?;
        Ok(cfg)
    }

    /// `key=value` text that [`RunConfig::parse`] maps back to `self`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "m={}", self.m);
        let _ = writeln!(s, "lambda={}", self.lambda);
        let _ = writeln!(s, "s={}", self.s);
        let _ = writeln!(s, "k={}", self.k);
        let _ = writeln!(s, "zero_index={}", self.zero_index);
        let _ = writeln!(s, "rmax={}", self.r_max);
        let _ = writeln!(s, "n={}", self.n);
        if let Some(out) = &self.out {
            let _ = writeln!(s, "out={}", out.display());
        }
        if let Some(e) = self.energy {
            let _ = writeln!(s, "energy={e}");
        }
        s
    }
}
