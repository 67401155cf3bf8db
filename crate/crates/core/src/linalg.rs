//! Small dense complex matrices and vectors.
//!
//! Storage is row-major. The dimensions used here never exceed a few dozen,
//! so everything is a straightforward triple loop.

use std::f64::consts::PI;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::Gf;

/// Default entrywise comparison tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;

/// `exp(2πi k / n)` with `k` reduced mod `n` before the angle is formed.
pub fn omega_pow(k: i64, n: usize) -> Complex64 {
    let k = k.rem_euclid(n as i64) as f64;
    let theta = 2.0 * PI * k / n as f64;
    Complex64::new(theta.cos(), theta.sin())
}

/// `ω^k` for a field exponent.
#[inline]
pub fn omega(k: Gf) -> Complex64 {
    omega_pow(k.value() as i64, k.modulus() as usize)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexVector {
    data: Vec<Complex64>,
}

impl ComplexVector {
    pub fn zeros(dim: usize) -> Self {
        ComplexVector { data: vec![Complex64::new(0.0, 0.0); dim] }
    }

    pub fn from_vec(data: Vec<Complex64>) -> Self {
        ComplexVector { data }
    }

    /// Standard basis vector `e_k`.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.data[k] = Complex64::new(1.0, 0.0);
        v
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &ComplexVector) -> Result<Complex64> {
        check_dims(self.dim(), other.dim())?;
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: Complex64) -> ComplexVector {
        ComplexVector { data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn sub(&self, other: &ComplexVector) -> Result<ComplexVector> {
        check_dims(self.dim(), other.dim())?;
        Ok(ComplexVector {
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }
}

impl Index<usize> for ComplexVector {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.data[i]
    }
}

impl IndexMut<usize> for ComplexVector {
    fn index_mut(&mut self, i: usize) -> &mut Complex64 {
        &mut self.data[i]
    }
}

fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Square complex matrix. Operator impls (`&a * &b`, `&a + &b`) panic on a
/// dimension mismatch; the `try_*` methods return [`Error::DimensionMismatch`].
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        ComplexMatrix { dim, data }
    }

    /// Row-major entries; `data.len()` must be a perfect square.
    pub fn from_row_major(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        check_dims(dim * dim, data.len())?;
        Ok(ComplexMatrix { dim, data })
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, z) in entries.iter().enumerate() {
            m[(i, i)] = *z;
        }
        m
    }

    /// `|u⟩⟨v|`.
    pub fn outer_product(u: &ComplexVector, v: &ComplexVector) -> Result<Self> {
        check_dims(u.dim(), v.dim())?;
        Ok(Self::from_fn(u.dim(), |r, c| u[r] * v[c].conj()))
    }

    /// `|u⟩⟨u|`.
    pub fn projector(u: &ComplexVector) -> Self {
        Self::from_fn(u.dim(), |r, c| u[r] * u[c].conj())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn try_mul(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        check_dims(self.dim, rhs.dim)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.data[r * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] += a * rhs.data[k * n + c];
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        check_dims(self.dim, rhs.dim)?;
        Ok(ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        check_dims(self.dim, rhs.dim)?;
        Ok(ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        })
    }

    /// In-place `self += s * rhs`.
    pub fn add_scaled(&mut self, s: Complex64, rhs: &ComplexMatrix) -> Result<()> {
        check_dims(self.dim, rhs.dim)?;
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += s * b;
        }
        Ok(())
    }

    pub fn scale(&self, s: Complex64) -> ComplexMatrix {
        ComplexMatrix { dim: self.dim, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn scale_real(&self, s: f64) -> ComplexMatrix {
        ComplexMatrix { dim: self.dim, data: self.data.iter().map(|z| z * s).collect() }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// `Tr(self · rhs)` without forming the product.
    pub fn trace_of_product(&self, rhs: &ComplexMatrix) -> Result<Complex64> {
        check_dims(self.dim, rhs.dim)?;
        let n = self.dim;
        let mut acc = Complex64::new(0.0, 0.0);
        for r in 0..n {
            for k in 0..n {
                acc += self.data[r * n + k] * rhs.data[k * n + r];
            }
        }
        Ok(acc)
    }

    pub fn apply(&self, v: &ComplexVector) -> Result<ComplexVector> {
        check_dims(self.dim, v.dim())?;
        let n = self.dim;
        let mut out = ComplexVector::zeros(n);
        for r in 0..n {
            out[r] = (0..n).map(|c| self.data[r * n + c] * v[c]).sum();
        }
        Ok(out)
    }

    /// `⟨u| self |u⟩`.
    pub fn expectation(&self, u: &ComplexVector) -> Result<Complex64> {
        let au = self.apply(u)?;
        u.inner(&au)
    }

    /// Entrywise max-norm of `self - rhs`.
    pub fn max_abs_diff(&self, rhs: &ComplexMatrix) -> Result<f64> {
        check_dims(self.dim, rhs.dim)?;
        Ok(self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn approx_eq(&self, rhs: &ComplexMatrix, tol: f64) -> bool {
        matches!(self.max_abs_diff(rhs), Ok(d) if d <= tol)
    }

    /// `max |A - A†|` entrywise.
    pub fn hermiticity_residue(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for r in 0..n {
            for c in r..n {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_residue() <= tol
    }

    /// `max |U U† - I|` entrywise.
    pub fn unitarity_residue(&self) -> f64 {
        let uu = self * &self.adjoint();
        uu.max_abs_diff(&Self::identity(self.dim)).unwrap_or(f64::INFINITY)
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Eigenvalues of a Hermitian matrix in ascending order.
    ///
    /// Uses cyclic Jacobi rotations on the real symmetric embedding
    /// `[[Re, -Im], [Im, Re]]`, whose spectrum is that of `self` with every
    /// eigenvalue doubled. Only the Hermitian part of `self` is used.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let n = self.dim;
        let m = 2 * n;
        let mut a = vec![0.0f64; m * m];
        for r in 0..n {
            for c in 0..n {
                let z = 0.5 * (self[(r, c)] + self[(c, r)].conj());
                a[r * m + c] = z.re;
                a[(r + n) * m + (c + n)] = z.re;
                a[(r + n) * m + c] = z.im;
                a[r * m + (c + n)] = -z.im;
            }
        }
        jacobi_symmetric(&mut a, m);
        let mut eig: Vec<f64> = (0..m).map(|i| a[i * m + i]).collect();
        eig.sort_by(|x, y| x.total_cmp(y));
        // pairs are degenerate; keep one of each
        eig.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect()
    }
}

fn jacobi_symmetric(a: &mut [f64], m: usize) {
    let scale: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
    for _sweep in 0..100 {
        let off: f64 = (0..m)
            .flat_map(|r| (0..m).filter(move |&c| c != r).map(move |c| (r, c)))
            .map(|(r, c)| a[r * m + c] * a[r * m + c])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            return;
        }
        for p in 0..m {
            for q in (p + 1)..m {
                let apq = a[p * m + q];
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let app = a[p * m + p];
                let aqq = a[q * m + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let cs = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * cs;
                for k in 0..m {
                    let akp = a[k * m + p];
                    let akq = a[k * m + q];
                    a[k * m + p] = cs * akp - sn * akq;
                    a[k * m + q] = sn * akp + cs * akq;
                }
                for k in 0..m {
                    let apk = a[p * m + k];
                    let aqk = a[q * m + k];
                    a[p * m + k] = cs * apk - sn * aqk;
                    a[q * m + k] = sn * apk + cs * aqk;
                }
            }
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.dim + c]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_mul(rhs).expect("matrix dimension mismatch")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_add(rhs).expect("matrix dimension mismatch")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_sub(rhs).expect("matrix dimension mismatch")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = ComplexMatrix> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |v| {
            ComplexMatrix::from_row_major(n, v.into_iter().map(|(a, b)| c(a, b)).collect())
                .unwrap()
        })
    }

    #[test]
    fn trivial_examples() {
        assert_eq!(ComplexMatrix::identity(5).trace(), c(5.0, 0.0));
        let e0 = ComplexVector::basis(3, 0);
        let p = ComplexMatrix::outer_product(&e0, &e0).unwrap();
        for r in 0..3 {
            for col in 0..3 {
                let want = if r == 0 && col == 0 { 1.0 } else { 0.0 };
                assert_eq!(p[(r, col)], c(want, 0.0));
            }
        }
    }

    #[test]
    fn dimension_mismatch() {
        let a = ComplexMatrix::identity(3);
        let b = ComplexMatrix::identity(5);
        assert_eq!(
            a.try_mul(&b),
            Err(Error::DimensionMismatch { expected: 3, found: 5 })
        );
        assert!(a.try_add(&b).is_err());
        assert!(a.trace_of_product(&b).is_err());
        assert!(ComplexMatrix::from_row_major(2, vec![c(0.0, 0.0); 3]).is_err());
    }

    #[test]
    fn omega_reduces_exponent() {
        let a = omega_pow(7, 5);
        let b = omega_pow(2, 5);
        let d = omega_pow(-3, 5);
        assert_eq!(a, b);
        assert_eq!(d, b);
        assert!((omega_pow(1, 4) - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn eigenvalues_of_known_matrices() {
        let d = ComplexMatrix::diagonal(&[c(3.0, 0.0), c(-1.0, 0.0), c(0.5, 0.0)]);
        let ev = d.hermitian_eigenvalues();
        assert!((ev[0] + 1.0).abs() < 1e-12 && (ev[1] - 0.5).abs() < 1e-12 && (ev[2] - 3.0).abs() < 1e-12);
        // Pauli-Y: eigenvalues ±1
        let y = ComplexMatrix::from_row_major(2, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)])
            .unwrap();
        let ev = y.hermitian_eigenvalues();
        assert!((ev[0] + 1.0).abs() < 1e-12 && (ev[1] - 1.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn trace_is_cyclic(a in arb_matrix(4), b in arb_matrix(4)) {
            let ab = (&a * &b).trace();
            let ba = (&b * &a).trace();
            prop_assert!((ab - ba).norm() <= 1e-12);
            prop_assert!((a.trace_of_product(&b).unwrap() - ab).norm() <= 1e-12);
        }

        #[test]
        fn adjoint_reverses_products(a in arb_matrix(4), b in arb_matrix(4)) {
            let lhs = (&a * &b).adjoint();
            let rhs = &b.adjoint() * &a.adjoint();
            prop_assert!(lhs.approx_eq(&rhs, 1e-12));
            prop_assert_eq!(a.adjoint().adjoint(), a);
        }

        #[test]
        fn eigenvalues_sum_to_trace(a in arb_matrix(5)) {
            let h = &a + &a.adjoint();
            let ev = h.hermitian_eigenvalues();
            let s: f64 = ev.iter().sum();
            prop_assert!((s - h.trace().re).abs() < 1e-10);
            let s2: f64 = ev.iter().map(|x| x * x).sum();
            prop_assert!((s2 - h.trace_of_product(&h).unwrap().re).abs() < 1e-9);
        }
    }
}
