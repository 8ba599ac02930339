//! Equal-width histograms normalized as probability densities.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BinRange {
    pub lo: f64,
    pub hi: f64,
    pub bins: usize,
}

impl BinRange {
    pub fn new(lo: f64, hi: f64, bins: usize) -> Result<Self> {
        let width = hi - lo;
        if bins == 0 || !(width.is_finite() && width > 0.0) {
            return Err(Error::InvalidParams(format!(
                "histogram range [{lo}, {hi}] with {bins} bins"
            )));
        }
        Ok(BinRange { lo, hi, bins })
    }
}

/// Binned empirical density. `densities[i] · width_i` sums to one over the
/// values that fell inside the range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub densities: Vec<f64>,
    pub counts: Vec<u64>,
    #[serde(default)]
    pub meta: Map<String, Value>,
}

impl Histogram {
    /// Bin `values` on `range`; values outside the closed range are skipped and
    /// reported as `meta.n_outside`.
    pub fn from_values(values: &[f64], range: BinRange) -> Result<Self> {
        let BinRange { lo, hi, bins } = range;
        let width = (hi - lo) / bins as f64;
        let mut edges: Vec<f64> = (0..=bins).map(|i| lo + width * i as f64).collect();
        edges[bins] = hi;

        let mut counts = vec![0u64; bins];
        let mut outside = 0u64;
        for &v in values {
            if !(v >= lo && v <= hi) {
                outside += 1;
                continue;
            }
            let mut idx = (((v - lo) / width) as usize).min(bins - 1);
            // guard against rounding in the division near an edge
            while idx > 0 && v < edges[idx] {
                idx -= 1;
            }
            while idx + 1 < bins && v >= edges[idx + 1] {
                idx += 1;
            }
            counts[idx] += 1;
        }
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(Error::EmptyInput);
        }
        let densities = counts
            .iter()
            .zip(edges.windows(2))
            .map(|(&c, e)| c as f64 / (total as f64 * (e[1] - e[0])))
            .collect();
        let mut meta = Map::new();
        meta.insert("n_outside".into(), outside.into());
        Ok(Histogram {
            edges,
            densities,
            counts,
            meta,
        })
    }

    /// A histogram with no counted values. Densities are all zero.
    pub fn empty(range: BinRange) -> Self {
        let BinRange { lo, hi, bins } = range;
        let width = (hi - lo) / bins as f64;
        let mut edges: Vec<f64> = (0..=bins).map(|i| lo + width * i as f64).collect();
        edges[bins] = hi;
        Histogram {
            edges,
            densities: vec![0.0; bins],
            counts: vec![0; bins],
            meta: Map::new(),
        }
    }

    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Empirical probability mass of each bin.
    pub fn masses(&self) -> Vec<f64> {
        let total = self.total() as f64;
        self.counts.iter().map(|&c| c as f64 / total).collect()
    }

    pub fn centers(&self) -> Vec<f64> {
        self.edges.windows(2).map(|e| 0.5 * (e[0] + e[1])).collect()
    }

    /// `Σ density · width`; one for any non-empty histogram.
    pub fn integral(&self) -> f64 {
        self.densities
            .iter()
            .zip(self.edges.windows(2))
            .map(|(d, e)| d * (e[1] - e[0]))
            .sum()
    }

    pub fn with_meta(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.meta.insert(key.to_owned(), value.into());
        self
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(path, text).map_err(|source| Error::OutputUnwritable {
            path: path.to_owned(),
            source,
        })
    }

    pub fn read_json(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}
