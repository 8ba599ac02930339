//! CSV tables: sweep rows, boundary curves and the per-point error log.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral_stats::{BoundaryPoint, Indicator};

pub const SWEEP_HEADER: [&str; 10] = [
    "kappa",
    "lambda",
    "dim",
    "n_levels",
    "eta",
    "beta",
    "mean_r",
    "d_kl",
    "converged_fraction",
    "n_degenerate_dropped",
];

pub const BOUNDARY_HEADER: [&str; 3] = ["kappa", "lambda_star", "crossed"];

/// One grid point of a sweep. Indicators that were not computed, or points
/// that failed, carry NaN.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepResultRow {
    pub kappa: f64,
    pub lambda: f64,
    pub dim: usize,
    pub n_levels: usize,
    pub eta: f64,
    pub beta: f64,
    pub mean_r: f64,
    pub d_kl: f64,
    pub converged_fraction: f64,
    pub n_degenerate_dropped: usize,
}

impl SweepResultRow {
    pub fn get(&self, indicator: Indicator) -> f64 {
        match indicator {
            Indicator::Eta => self.eta,
            Indicator::Beta => self.beta,
            Indicator::MeanR => self.mean_r,
        }
    }

    /// Placeholder row for a point whose pipeline failed.
    pub fn failed(kappa: f64, lambda: f64, dim: usize) -> Self {
        SweepResultRow {
            kappa,
            lambda,
            dim,
            n_levels: 0,
            eta: f64::NAN,
            beta: f64::NAN,
            mean_r: f64::NAN,
            d_kl: f64::NAN,
            converged_fraction: f64::NAN,
            n_degenerate_dropped: 0,
        }
    }

    /// Bitwise comparison, so NaN fields compare equal.
    pub fn same_bits(&self, other: &Self) -> bool {
        let a = [
            self.kappa,
            self.lambda,
            self.eta,
            self.beta,
            self.mean_r,
            self.d_kl,
            self.converged_fraction,
        ];
        let b = [
            other.kappa,
            other.lambda,
            other.eta,
            other.beta,
            other.mean_r,
            other.d_kl,
            other.converged_fraction,
        ];
        a.iter().zip(&b).all(|(x, y)| x.to_bits() == y.to_bits())
            && self.dim == other.dim
            && self.n_levels == other.n_levels
            && self.n_degenerate_dropped == other.n_degenerate_dropped
    }
}

/// A point whose pipeline returned an error.
#[derive(Debug, Clone, PartialEq)]
pub struct PointFailure {
    pub kappa: f64,
    pub lambda: f64,
    pub message: String,
}

/// Seventeen significant digits: enough to round-trip any `f64`.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.16e}")
    }
}

fn create(path: &Path) -> Result<File> {
    File::create(path).map_err(|source| Error::OutputUnwritable {
        path: path.to_owned(),
        source,
    })
}

fn finish(mut w: csv::Writer<File>, path: &Path) -> Result<()> {
    w.flush().map_err(|source| Error::OutputUnwritable {
        path: path.to_owned(),
        source,
    })
}

pub fn write_csv(rows: &[SweepResultRow], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_writer(create(path)?);
    w.write_record(SWEEP_HEADER)?;
    for r in rows {
        w.write_record([
            format_float(r.kappa),
            format_float(r.lambda),
            r.dim.to_string(),
            r.n_levels.to_string(),
            format_float(r.eta),
            format_float(r.beta),
            format_float(r.mean_r),
            format_float(r.d_kl),
            format_float(r.converged_fraction),
            r.n_degenerate_dropped.to_string(),
        ])?;
    }
    finish(w, path)
}

fn field<T: std::str::FromStr>(rec: &csv::StringRecord, i: usize, line: usize) -> Result<T> {
    let raw = rec.get(i).unwrap_or_default();
    raw.trim().parse().map_err(|_| {
        Error::Config(format!(
            "row {line}: cannot parse `{raw}` in column {}",
            SWEEP_HEADER[i]
        ))
    })
}

pub fn read_csv(path: &Path) -> Result<Vec<SweepResultRow>> {
    let mut r = csv::Reader::from_path(path)?;
    let header = r.headers()?.clone();
    if header.iter().ne(SWEEP_HEADER) {
        return Err(Error::Config(format!(
            "{}: header must be `{}`",
            path.display(),
            SWEEP_HEADER.join(",")
        )));
    }
    let mut rows = Vec::new();
    for (k, rec) in r.records().enumerate() {
        let rec = rec?;
        let line = k + 2;
        rows.push(SweepResultRow {
            kappa: field(&rec, 0, line)?,
            lambda: field(&rec, 1, line)?,
            dim: field(&rec, 2, line)?,
            n_levels: field(&rec, 3, line)?,
            eta: field(&rec, 4, line)?,
            beta: field(&rec, 5, line)?,
            mean_r: field(&rec, 6, line)?,
            d_kl: field(&rec, 7, line)?,
            converged_fraction: field(&rec, 8, line)?,
            n_degenerate_dropped: field(&rec, 9, line)?,
        });
    }
    Ok(rows)
}

pub fn write_boundary_csv(points: &[BoundaryPoint], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_writer(create(path)?);
    w.write_record(BOUNDARY_HEADER)?;
    for p in points {
        w.write_record([
            format_float(p.kappa),
            format_float(p.lambda_star.unwrap_or(f64::NAN)),
            p.lambda_star.is_some().to_string(),
        ])?;
    }
    finish(w, path)
}

pub fn read_boundary_csv(path: &Path) -> Result<Vec<BoundaryPoint>> {
    let mut r = csv::Reader::from_path(path)?;
    let mut points = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let bad = || Error::Config(format!("{}: malformed boundary row", path.display()));
        let kappa: f64 = rec.get(0).and_then(|s| s.parse().ok()).ok_or_else(bad)?;
        let crossed: bool = rec.get(2).and_then(|s| s.parse().ok()).ok_or_else(bad)?;
        let lambda: f64 = rec.get(1).and_then(|s| s.parse().ok()).ok_or_else(bad)?;
        points.push(BoundaryPoint {
            kappa,
            lambda_star: crossed.then_some(lambda),
        });
    }
    Ok(points)
}

pub fn write_errors_csv(failures: &[PointFailure], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_writer(create(path)?);
    w.write_record(["kappa", "lambda", "error"])?;
    for f in failures {
        w.write_record([format_float(f.kappa), format_float(f.lambda), f.message.clone()])?;
    }
    finish(w, path)
}

/// Write `text` to `path`, mapping failures to [`Error::OutputUnwritable`].
pub fn write_text(path: &Path, text: &str) -> Result<()> {
    create(path)?
        .write_all(text.as_bytes())
        .map_err(|source| Error::OutputUnwritable {
            path: path.to_owned(),
            source,
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_has_seventeen_digits() {
        assert_eq!(format_float(0.1), "1.0000000000000001e-1");
        assert_eq!(format_float(-2.5), "-2.5000000000000000e0");
        assert_eq!(format_float(f64::NAN), "NaN");
        for x in [0.1, 1.0 / 3.0, 5e-324, f64::MAX, -0.0] {
            assert_eq!(format_float(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
    }

    #[test]
    fn empty_table_is_header_only() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sweep.csv");
        write_csv(&[], &path).unwrap();
        assert_eq!(
            std::fs::read_to_string(&path).unwrap(),
            format!("{}\n", SWEEP_HEADER.join(","))
        );
        assert!(read_csv(&path).unwrap().is_empty());
    }

    #[test]
    fn boundary_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("b.csv");
        let pts = vec![
            BoundaryPoint {
                kappa: 0.0,
                lambda_star: Some(0.45),
            },
            BoundaryPoint {
                kappa: 0.1,
                lambda_star: None,
            },
        ];
        write_boundary_csv(&pts, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("kappa,lambda_star,crossed\n"));
        assert!(text.contains(",NaN,false"));
        assert_eq!(read_boundary_csv(&path).unwrap(), pts);
    }

    #[test]
    fn unwritable_output_is_reported() {
        let err = write_csv(&[], Path::new("/nonexistent-dir/x/sweep.csv")).unwrap_err();
        assert!(matches!(err, Error::OutputUnwritable { .. }));
    }
}
