//! Clock and shift operators and the position/momentum operators they define.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::Dimension;
use crate::linalg::{omega_pow, ComplexMatrix, ComplexVector, DEFAULT_TOL};

/// The clock `Z|q⟩ = ω^q|q⟩` and shift `X|q⟩ = |q+1⟩` operators.
#[derive(Clone, Debug)]
pub struct SchwingerPair {
    pub dim: Dimension,
    pub z: ComplexMatrix,
    pub x: ComplexMatrix,
}

impl SchwingerPair {
    /// `X Z^b`, the operator whose eigenbasis is MUB number `b`.
    pub fn xz_power(&self, b: i64) -> ComplexMatrix {
        let zb = clock_power(self.dim, b);
        &self.x * &zb
    }
}

pub fn build_schwinger(dim: Dimension) -> SchwingerPair {
    let n = dim.get();
    let z = clock_power(dim, 1);
    let x = ComplexMatrix::from_fn(n, |r, c| {
        if r == (c + 1) % n {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    SchwingerPair { dim, z, x }
}

/// `Z^k` built directly as `diag(ω^{kq})`.
pub fn clock_power(dim: Dimension, k: i64) -> ComplexMatrix {
    let n = dim.get();
    let diag: Vec<Complex64> = (0..n).map(|q| omega_pow(k * q as i64, n)).collect();
    ComplexMatrix::diagonal(&diag)
}

/// `U^k`, with negative powers taken as `(U†)^{|k|}`.
pub fn op_power(u: &ComplexMatrix, k: i64) -> Result<ComplexMatrix> {
    let residue = u.unitarity_residue();
    if residue > DEFAULT_TOL {
        return Err(Error::NonUnitaryInput(residue));
    }
    let base = if k < 0 { u.adjoint() } else { u.clone() };
    let mut e = k.unsigned_abs();
    let mut acc = ComplexMatrix::identity(u.dim());
    let mut sq = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = &acc * &sq;
        }
        e >>= 1;
        if e > 0 {
            sq = &sq * &sq;
        }
    }
    Ok(acc)
}

/// `q̂ = diag(0, 1, …, N-1)`, so that `Z = ω^{q̂}`.
pub fn position_op(dim: Dimension) -> ComplexMatrix {
    let diag: Vec<Complex64> = (0..dim.get()).map(|q| Complex64::new(q as f64, 0.0)).collect();
    ComplexMatrix::diagonal(&diag)
}

/// Momentum eigenstate `|p = k⟩`, amplitudes `ω^{kq}/√N`.
pub fn momentum_state(dim: Dimension, k: i64) -> ComplexVector {
    let n = dim.get();
    let norm = 1.0 / (n as f64).sqrt();
    ComplexVector::from_vec((0..n).map(|q| omega_pow(k * q as i64, n) * norm).collect())
}

/// Projectors `|p=k⟩⟨p=k|` for `k = 0..N-1`.
pub fn momentum_projectors(dim: Dimension) -> Vec<ComplexMatrix> {
    (0..dim.get() as i64)
        .map(|k| ComplexMatrix::projector(&momentum_state(dim, k)))
        .collect()
}

/// `p̂ = Σ_k k |p=k⟩⟨p=k|`, eigenvalues fixed to `0..N-1` so that `X = ω^{-p̂}`.
pub fn momentum_op(dim: Dimension) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(dim.get());
    for (k, proj) in momentum_projectors(dim).iter().enumerate() {
        out.add_scaled(Complex64::new(k as f64, 0.0), proj).expect("same dimension");
    }
    out
}
