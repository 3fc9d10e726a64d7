use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceArg {
    #[value(alias = "r2")]
    #[serde(alias = "r2")]
    Euclidean,
    R3,
    Sphere,
    Hyperbolic,
}

impl SpaceArg {
    pub fn name(self) -> &'static str {
        match self {
            SpaceArg::Euclidean => "euclidean",
            SpaceArg::R3 => "r3",
            SpaceArg::Sphere => "sphere",
            SpaceArg::Hyperbolic => "hyperbolic",
        }
    }
}

/// Defaults read from the file named by `--config` or `ISOCAL_CONFIG`.
/// Command-line flags take precedence.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub refinement: Option<usize>,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    pub space: Option<SpaceArg>,
    pub problem: Option<String>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub grid: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: malformed config: {e}", path.display())))
    }
}

/// Settings given on the command line.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub refinement: Option<usize>,
    pub tolerances: Vec<(String, f64)>,
    pub space: Option<SpaceArg>,
    pub problem: Option<String>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub grid: Option<usize>,
    pub out: Option<PathBuf>,
}

/// Resolved settings of one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub refinement: Option<usize>,
    pub tolerances: BTreeMap<String, f64>,
    pub space: Option<SpaceArg>,
    pub problem: Option<String>,
    pub samples: Option<usize>,
    pub seed: u64,
    pub grid: Option<usize>,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    /// Merges file defaults with flags. `defaults` lists the tolerance names
    /// the command understands; flag overrides must name one of them.
    pub fn resolve(
        file: FileConfig,
        flags: Overrides,
        defaults: &[(&str, f64)],
    ) -> Result<Self, CliError> {
        let mut tolerances: BTreeMap<String, f64> = defaults.iter().map(|&(k, v)| (k.to_string(), v)).collect();
        for (name, value) in file.tolerances {
            if tolerances.contains_key(&name) {
                tolerances.insert(name, value);
            }
        }
        for (name, value) in flags.tolerances {
            if !tolerances.contains_key(&name) {
                let known: Vec<&str> = defaults.iter().map(|d| d.0).collect();
                return Err(CliError::Usage(format!(
                    "unknown tolerance '{name}'; expected one of {}",
                    known.join(", ")
                )));
            }
            tolerances.insert(name, value);
        }
        if let Some((name, value)) = tolerances.iter().find(|(_, v)| !(v.is_finite() && **v > 0.0)) {
            return Err(CliError::Usage(format!("tolerance {name} = {value} must be positive")));
        }
        let config = RunConfig {
            refinement: flags.refinement.or(file.refinement),
            tolerances,
            space: flags.space.or(file.space),
            problem: flags.problem.or(file.problem),
            samples: flags.samples.or(file.samples),
            seed: flags.seed.or(file.seed).unwrap_or(0),
            grid: flags.grid.or(file.grid),
            out: flags.out,
        };
        for (name, value) in [("refinement", config.refinement), ("samples", config.samples)] {
            if value == Some(0) {
                return Err(CliError::Usage(format!("{name} must be at least 1")));
            }
        }
        if matches!(config.grid, Some(g) if g < 2) {
            return Err(CliError::Usage("grid needs at least 2 points per side".into()));
        }
        Ok(config)
    }

    pub fn tolerance(&self, name: &str) -> f64 {
        self.tolerances[name]
    }
}

/// Parses `name=value`.
pub fn parse_tolerance(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected name=value, got '{s}'"))?;
    let value: f64 = value.trim().parse().map_err(|e| format!("bad value in '{s}': {e}"))?;
    Ok((name.trim().to_string(), value))
}
