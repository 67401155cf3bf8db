//! State reconstruction from measured probabilities in all `N + 1` bases.
//!
//! The Wigner table is assembled directly from the Born probabilities,
//! `W(q, p) = Σ_b P_b(M(b)) − 1`, and then inverted back to a matrix.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Dimension;
use crate::lines::{line_value, PhaseParam, PhasePoint};
use crate::linalg::ComplexMatrix;
use crate::mub::{basis_states, BasisLabel};
use crate::wigner::{inverse_wwt, WignerTable};

/// Tolerance for Hermiticity and unit trace of an input density matrix.
pub const DENSITY_TOL: f64 = 1e-10;
/// Allowed deviation of a probability vector's sum from 1.
pub const RECORD_SUM_TOL: f64 = 1e-6;

/// A Hermitian, unit-trace matrix. Positivity is not enforced.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let h = matrix.hermiticity_residue();
        if h > DENSITY_TOL {
            return Err(Error::InvalidDensityMatrix(format!("Hermiticity residue {h:e}")));
        }
        let tr = matrix.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > DENSITY_TOL {
            return Err(Error::InvalidDensityMatrix(format!("trace {tr} is not 1")));
        }
        Ok(DensityMatrix { matrix })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim(&self) -> Result<Dimension> {
        Dimension::new(self.matrix.dim() as u64)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        min_eigenvalue(&self.matrix)
    }
}

/// Born probabilities for every basis, indexed by [`BasisLabel::ordinal`].
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementRecord {
    pub dim: Dimension,
    probs: Vec<Vec<f64>>,
    pub sample_count: Option<u64>,
}

impl MeasurementRecord {
    /// Validates shape, nonnegativity and normalization of `probs`.
    pub fn new(dim: Dimension, probs: Vec<Vec<f64>>, sample_count: Option<u64>) -> Result<Self> {
        let n = dim.get();
        if probs.len() != n + 1 {
            return Err(Error::InvalidRecord(format!(
                "expected {} bases, found {}",
                n + 1,
                probs.len()
            )));
        }
        for (k, v) in probs.iter().enumerate() {
            if v.len() != n {
                return Err(Error::InvalidRecord(format!(
                    "basis #{k}: expected {n} probabilities, found {}",
                    v.len()
                )));
            }
            if v.iter().any(|&x| !x.is_finite() || x < -1e-12) {
                return Err(Error::InvalidRecord(format!("basis #{k}: negative or non-finite entry")));
            }
            let s: f64 = v.iter().sum();
            if (s - 1.0).abs() > RECORD_SUM_TOL {
                return Err(Error::InvalidRecord(format!("basis #{k}: probabilities sum to {s}")));
            }
        }
        Ok(MeasurementRecord { dim, probs, sample_count })
    }

    pub fn probs(&self, b: BasisLabel) -> &[f64] {
        &self.probs[b.ordinal()]
    }

    /// `(label, probabilities)` with the reference basis first.
    pub fn iter(&self) -> impl Iterator<Item = (BasisLabel, &[f64])> {
        BasisLabel::all(self.dim).zip(self.probs.iter().map(Vec::as_slice))
    }
}

/// Exact `⟨m; b|ρ|m; b⟩` for all bases.
pub fn simulate_probs(rho: &DensityMatrix) -> Result<MeasurementRecord> {
    let dim = rho.dim()?;
    let probs = BasisLabel::all(dim)
        .map(|b| {
            basis_states(dim, b)
                .iter()
                .map(|ket| rho.matrix.expectation(ket).map(|z| z.re.max(0.0)))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MeasurementRecord { dim, probs, sample_count: None })
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for basis number `ordinal` derived from the user seed.
pub fn basis_seed(seed: u64, ordinal: usize) -> u64 {
    splitmix64(seed ^ splitmix64(ordinal as u64))
}

/// Empirical frequencies from `shots` inverse-CDF draws per basis.
///
/// Each basis gets its own `ChaCha8Rng` seeded with [`basis_seed`], so the
/// record depends only on `(rho, shots, seed)`.
pub fn sample_probs(rho: &DensityMatrix, shots: u64, seed: u64) -> Result<MeasurementRecord> {
    if shots == 0 {
        return Err(Error::InvalidRecord("shots must be at least 1".into()));
    }
    let exact = simulate_probs(rho)?;
    let probs = exact
        .probs
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let mut cdf = Vec::with_capacity(p.len());
            let mut acc = 0.0;
            for x in p {
                acc += x;
                cdf.push(acc);
            }
            let total = acc;
            let mut counts = vec![0u64; p.len()];
            let mut rng = ChaCha8Rng::seed_from_u64(basis_seed(seed, k));
            for _ in 0..shots {
                let u: f64 = rng.gen::<f64>() * total;
                let idx = cdf.partition_point(|&c| c <= u).min(p.len() - 1);
                counts[idx] += 1;
            }
            counts.iter().map(|&c| c as f64 / shots as f64).collect()
        })
        .collect();
    Ok(MeasurementRecord { dim: exact.dim, probs, sample_count: Some(shots) })
}

/// `W(q, p) = Σ_b P_b(M(b)) − 1`.
pub fn wigner_from_probs(rec: &MeasurementRecord, c: &PhaseParam) -> Result<WignerTable> {
    if rec.dim != c.dim() {
        return Err(Error::MixedParameters);
    }
    let values = PhasePoint::all(rec.dim)
        .map(|pt| {
            BasisLabel::all(rec.dim)
                .map(|b| rec.probs[b.ordinal()][line_value(pt, c, b).index()])
                .sum::<f64>()
                - 1.0
        })
        .collect();
    WignerTable::from_values(c, values)
}

/// Inverse transform of [`wigner_from_probs`]. The result is Hermitian with
/// unit trace but may have negative eigenvalues for noisy records.
pub fn reconstruct(rec: &MeasurementRecord, c: &PhaseParam) -> Result<DensityMatrix> {
    let w = wigner_from_probs(rec, c)?;
    let m = inverse_wwt(&w);
    // exact Hermitian projection; the inverse is Hermitian up to rounding
    let h = (&m + &m.adjoint()).scale_real(0.5);
    let tr = h.trace().re;
    Ok(DensityMatrix { matrix: h.scale_real(1.0 / tr) })
}

pub fn min_eigenvalue(a: &ComplexMatrix) -> f64 {
    a.hermitian_eigenvalues().first().copied().unwrap_or(0.0)
}

/// `½ ‖A − B‖₁` for Hermitian `A`, `B`.
pub fn trace_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    let d = a.try_sub(b)?;
    Ok(0.5 * d.hermitian_eigenvalues().iter().map(|x| x.abs()).sum::<f64>())
}
