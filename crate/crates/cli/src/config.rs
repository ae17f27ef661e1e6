use std::fmt;
use std::path::{Path, PathBuf};

use kmfaces::ParabolicType;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Table,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Table => "table",
        })
    }
}

/// Everything a run needs besides the positional arguments. Unset bounds
/// fall back to per-command defaults.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gcm: Option<String>,
    /// `Δ(P)` as `"i,j,…"`, `"maximal:j"` or `"borel"`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levi: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_length: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nmax: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub height: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_tests: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    pub format: Format,
    pub seed: u64,
    /// Directory of golden files for `selftest`; the bundled set otherwise.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub golden: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| {
            CliError::Usage(format!("config line {}, column {}: {e}", e.line(), e.column()))
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Fields set in `other` win.
    pub fn overlay(mut self, other: RunConfig, format_given: bool, seed_given: bool) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f; } )* };
        }
        take!(gcm, levi, max_length, depth, nmax, height, max_tests, out, golden);
        if format_given {
            self.format = other.format;
        }
        if seed_given {
            self.seed = other.seed;
        }
        self
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let positive = [
            ("max-length", self.max_length.map(|x| x as u64)),
            ("depth", self.depth.map(|x| x as u64)),
            ("nmax", self.nmax),
            ("height", self.height.map(|x| x as u64)),
            ("max-tests", self.max_tests.map(|x| x as u64)),
        ];
        for (name, v) in positive {
            if v == Some(0) {
                return Err(CliError::Usage(format!("--{name} must be positive")));
            }
        }
        Ok(())
    }

    pub fn parabolic(&self, rank: usize) -> Result<ParabolicType, CliError> {
        parse_parabolic(self.levi.as_deref().unwrap_or("borel"), rank)
    }
}

pub fn parse_parabolic(spec: &str, rank: usize) -> Result<ParabolicType, CliError> {
    let spec = spec.trim();
    if spec.is_empty() || spec == "borel" {
        return Ok(ParabolicType::borel(rank));
    }
    if let Some(j) = spec.strip_prefix("maximal:") {
        let j: usize = j
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad parabolic {spec:?}")))?;
        return Ok(ParabolicType::maximal(rank, j)?);
    }
    let levi = spec
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Usage(format!("bad parabolic {spec:?}")))?;
    Ok(ParabolicType::new(rank, levi)?)
}
