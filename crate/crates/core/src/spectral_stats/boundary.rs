//! Extraction of the chaos boundary `λ*(κ)` from a rectangular `(κ, λ)` grid.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Indicator {
    Eta,
    Beta,
    MeanR,
}

impl Indicator {
    pub const ALL: [Indicator; 3] = [Indicator::Eta, Indicator::Beta, Indicator::MeanR];

    pub fn name(self) -> &'static str {
        match self {
            Indicator::Eta => "eta",
            Indicator::Beta => "beta",
            Indicator::MeanR => "mean_r",
        }
    }

    /// η is chaotic when small; β and ⟨r⟩ when large. NaN never qualifies.
    pub fn is_chaotic(self, value: f64, threshold: f64) -> bool {
        match self {
            Indicator::Eta => value <= threshold,
            Indicator::Beta | Indicator::MeanR => value >= threshold,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridValue {
    pub kappa: f64,
    pub lambda: f64,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPoint {
    pub kappa: f64,
    /// Smallest grid λ from which the indicator stays chaotic; `None` if it never does.
    pub lambda_star: Option<f64>,
}

/// For each κ, the smallest λ at which the indicator meets its threshold and
/// keeps meeting it for every larger λ on the grid.
pub fn chaos_boundary(points: &[GridValue], indicator: Indicator, threshold: f64) -> Result<Vec<BoundaryPoint>> {
    if points.is_empty() {
        return Err(Error::NonRectangularGrid("no grid points".into()));
    }
    let mut sorted = points.to_vec();
    sorted.sort_by(|a, b| a.kappa.total_cmp(&b.kappa).then(a.lambda.total_cmp(&b.lambda)));

    let mut columns: Vec<(f64, Vec<GridValue>)> = Vec::new();
    for p in sorted {
        match columns.last_mut() {
            Some((k, col)) if *k == p.kappa => col.push(p),
            _ => columns.push((p.kappa, vec![p])),
        }
    }
    let lambdas: Vec<f64> = columns[0].1.iter().map(|p| p.lambda).collect();
    if lambdas.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::NonRectangularGrid(format!(
            "duplicate lambda at kappa = {}",
            columns[0].0
        )));
    }
    for (kappa, col) in &columns {
        if col.len() != lambdas.len() || col.iter().zip(&lambdas).any(|(p, l)| p.lambda != *l) {
            return Err(Error::NonRectangularGrid(format!(
                "lambda grid at kappa = {kappa} differs from kappa = {}",
                columns[0].0
            )));
        }
    }

    Ok(columns
        .into_iter()
        .map(|(kappa, col)| {
            let mut start = col.len();
            while start > 0 && indicator.is_chaotic(col[start - 1].value, threshold) {
                start -= 1;
            }
            BoundaryPoint {
                kappa,
                lambda_star: col.get(start).map(|p| p.lambda),
            }
        })
        .collect())
}
