//! JSON file schemas for matrices and measurement records.
//!
//! A matrix file holds the real and imaginary parts as separate `N × N`
//! arrays:
//!
//! ```json
//! {"dim": 3, "re": [[1,0,0],[0,0,0],[0,0,0]], "im": [[0,0,0],[0,0,0],[0,0,0]]}
//! ```
//!
//! A record file lists one probability vector per basis, the reference
//! basis written as `"ddot0"` and the others as integers:
//!
//! ```json
//! {"dim": 3, "entries": [{"basis": "ddot0", "probs": [1,0,0]},
//!                        {"basis": 0, "probs": [0.3333,0.3333,0.3334]}, ...]}
//! ```

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Dimension;
use crate::linalg::ComplexMatrix;
use crate::mub::BasisLabel;
use crate::tomography::MeasurementRecord;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let n = m.dim();
        let part = |f: fn(Complex64) -> f64| -> Vec<Vec<f64>> {
            (0..n).map(|r| (0..n).map(|c| f(m[(r, c)])).collect()).collect()
        };
        MatrixFile { dim: n, re: part(|z| z.re), im: part(|z| z.im) }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let n = self.dim;
        let shape_ok = |a: &Vec<Vec<f64>>| a.len() == n && a.iter().all(|row| row.len() == n);
        if !shape_ok(&self.re) || !shape_ok(&self.im) {
            return Err(Error::Parse(format!("matrix arrays are not {n}x{n}")));
        }
        let data = self
            .re
            .iter()
            .flatten()
            .zip(self.im.iter().flatten())
            .map(|(&a, &b)| Complex64::new(a, b))
            .collect();
        ComplexMatrix::from_row_major(n, data)
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Rounds every entry to `digits` decimal places (and clears `-0`).
    pub fn rounded(&self, digits: i32) -> Self {
        let s = 10f64.powi(digits);
        let r = |a: &Vec<Vec<f64>>| -> Vec<Vec<f64>> {
            a.iter()
                .map(|row| row.iter().map(|x| (x * s).round() / s + 0.0).collect())
                .collect()
        };
        MatrixFile { dim: self.dim, re: r(&self.re), im: r(&self.im) }
    }
}

/// Basis field of a record entry: `"ddot0"` or an integer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BasisField {
    Slope(u64),
    Named(String),
}

impl BasisField {
    fn from_label(b: BasisLabel) -> Self {
        match b {
            BasisLabel::Reference => BasisField::Named("ddot0".into()),
            BasisLabel::Xz(b) => BasisField::Slope(b.value() as u64),
        }
    }

    fn to_label(&self, dim: Dimension) -> Result<BasisLabel> {
        match self {
            BasisField::Named(s) => BasisLabel::parse(s, dim),
            BasisField::Slope(b) => BasisLabel::parse(&b.to_string(), dim),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecordEntry {
    pub basis: BasisField,
    pub probs: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecordFile {
    pub dim: usize,
    pub entries: Vec<RecordEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample_count: Option<u64>,
}

impl RecordFile {
    pub fn from_record(rec: &MeasurementRecord) -> Self {
        RecordFile {
            dim: rec.dim.get(),
            entries: rec
                .iter()
                .map(|(b, p)| RecordEntry { basis: BasisField::from_label(b), probs: p.to_vec() })
                .collect(),
            sample_count: rec.sample_count,
        }
    }

    /// Entries may appear in any order but each label exactly once.
    pub fn to_record(&self) -> Result<MeasurementRecord> {
        let dim = Dimension::new(self.dim as u64)?;
        let n = dim.get();
        if self.entries.len() != n + 1 {
            return Err(Error::InvalidRecord(format!(
                "expected {} entries, found {}",
                n + 1,
                self.entries.len()
            )));
        }
        let mut probs: Vec<Option<Vec<f64>>> = vec![None; n + 1];
        for e in &self.entries {
            let label = e.basis.to_label(dim).map_err(|e| Error::InvalidRecord(e.to_string()))?;
            let slot = &mut probs[label.ordinal()];
            if slot.is_some() {
                return Err(Error::InvalidRecord(format!("basis {label} listed twice")));
            }
            *slot = Some(e.probs.clone());
        }
        let probs = probs.into_iter().map(|p| p.expect("every slot filled")).collect();
        MeasurementRecord::new(dim, probs, self.sample_count)
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}
