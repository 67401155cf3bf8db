//! Random test operators.

use num_complex::Complex64;
use rand::Rng;

use crate::field::Dimension;
use crate::linalg::ComplexMatrix;

fn random_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

/// `(G + G†) / 2` with entries of `G` uniform in the unit square.
pub fn random_hermitian<R: Rng + ?Sized>(dim: Dimension, rng: &mut R) -> ComplexMatrix {
    let g = random_matrix(dim.get(), rng);
    (&g + &g.adjoint()).scale_real(0.5)
}

/// `G G† / Tr(G G†)`: positive, Hermitian, unit trace.
pub fn random_density<R: Rng + ?Sized>(dim: Dimension, rng: &mut R) -> ComplexMatrix {
    let g = random_matrix(dim.get(), rng);
    let gg = &g * &g.adjoint();
    let tr = gg.trace().re;
    gg.scale_real(1.0 / tr)
}
