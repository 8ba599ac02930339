//! JSON run configuration and `KEY=VALUE` overrides.
//!
//! Precedence is total: built-in defaults, then the config file, then each
//! `--set` in command-line order (a later `--set` of the same key wins).
//! Nested fields use dotted keys, e.g. `thresholds.mean_r_min=0.5`.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::model::{EnergyWindow, ModelParams};
use crate::spectral_stats::{Indicator, DEFAULT_FIT_DEGREE};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Thresholds {
    pub eta_max: f64,
    pub beta_min: f64,
    pub mean_r_min: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            eta_max: 0.3,
            beta_min: 0.7,
            mean_r_min: 0.48,
        }
    }
}

impl Thresholds {
    pub fn for_indicator(&self, indicator: Indicator) -> f64 {
        match indicator {
            Indicator::Eta => self.eta_max,
            Indicator::Beta => self.beta_min,
            Indicator::MeanR => self.mean_r_min,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("eta_max", self.eta_max),
            ("beta_min", self.beta_min),
            ("mean_r_min", self.mean_r_min),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::Config(format!("thresholds.{name} = {v} must lie in (0, 1)")));
            }
        }
        Ok(())
    }
}

/// Contents of a config file. Every key is optional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub omega: f64,
    pub omega0: f64,
    pub j: f64,
    pub n_cutoff: u32,
    pub energy_window: EnergyWindow,
    pub mid_window: EnergyWindow,
    /// Coupling for single-point commands.
    pub lambda: f64,
    /// Interaction for single-point commands.
    pub kappa: f64,
    pub kappa_grid: Vec<f64>,
    pub lambda_grid: Vec<f64>,
    pub fit_degree: usize,
    pub bins: usize,
    pub thresholds: Thresholds,
    pub workers: usize,
    pub output_dir: PathBuf,
    /// Compute eigenvectors (`D_KL`, convergence) in sweeps.
    pub eigenstate_stats: bool,
    /// Write per-point histogram files in sweeps.
    pub histograms: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        let p = ModelParams::default();
        RunConfig {
            omega: p.omega,
            omega0: p.omega0,
            j: p.j.value(),
            n_cutoff: p.n_cutoff,
            energy_window: p.energy_window,
            mid_window: p.mid_window,
            lambda: 0.0,
            kappa: 0.0,
            kappa_grid: (0..=10).map(|k| f64::from(k) / 10.0).collect(),
            lambda_grid: (0..=20).map(|k| f64::from(k) / 20.0).collect(),
            fit_degree: DEFAULT_FIT_DEGREE,
            bins: crate::eigenstate_stats::DEFAULT_BINS,
            thresholds: Thresholds::default(),
            workers: 1,
            output_dir: PathBuf::from("out"),
            eigenstate_stats: true,
            histograms: true,
        }
    }
}

impl RunConfig {
    /// Model parameters at the configured single point.
    pub fn params(&self) -> Result<ModelParams> {
        let p = ModelParams {
            omega: self.omega,
            omega0: self.omega0,
            lambda: self.lambda,
            kappa: self.kappa,
            j: self.j.try_into()?,
            n_cutoff: self.n_cutoff,
            energy_window: self.energy_window,
            mid_window: self.mid_window,
        };
        p.validate()?;
        Ok(p)
    }

    /// Load a config file and apply overrides.
    pub fn load(path: Option<&Path>, overrides: &[String]) -> Result<Self> {
        let mut doc = match path {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
                serde_json::from_str::<Value>(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?
            }
            None => Value::Object(Map::new()),
        };
        if !doc.is_object() {
            return Err(Error::Config("config root must be a JSON object".into()));
        }
        apply_overrides(&mut doc, overrides)?;
        serde_json::from_value(doc).map_err(|e| Error::Config(e.to_string()))
    }
}

/// Apply `KEY=VALUE` assignments to a config document. Keys must name a field
/// of [`RunConfig`]; values are parsed as JSON, falling back to a plain string.
pub fn apply_overrides(doc: &mut Value, overrides: &[String]) -> Result<()> {
    let schema = serde_json::to_value(RunConfig::default())?;
    for item in overrides {
        let (key, raw) = item
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("override `{item}` is not KEY=VALUE")))?;
        let path: Vec<&str> = key.split('.').collect();

        let mut known = &schema;
        for (depth, part) in path.iter().enumerate() {
            known = known
                .get(part)
                .ok_or_else(|| Error::Config(format!("unknown config key `{key}`")))?;
            if depth + 1 < path.len() && !known.is_object() {
                return Err(Error::Config(format!("unknown config key `{key}`")));
            }
        }
        let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_owned()));

        let mut target = doc
            .as_object_mut()
            .ok_or_else(|| Error::Config("config root must be a JSON object".into()))?;
        for part in &path[..path.len() - 1] {
            target = target
                .entry(part.to_string())
                .or_insert_with(|| Value::Object(Map::new()))
                .as_object_mut()
                .ok_or_else(|| Error::Config(format!("`{part}` is not an object")))?;
        }
        target.insert(path[path.len() - 1].to_owned(), value);
    }
    Ok(())
}
