//! Discrete Weyl-Wigner transforms on prime-dimensional Hilbert spaces.
//!
//! For an odd prime `N` and a phase parameter `c` (any field element, most
//! usefully `0` or `-1/2`), each phase-space point `(q, p)` gets a Hermitian
//! line operator `P_{q,p}` built from the `N + 1` mutually unbiased bases.
//! The transform `W(q, p) = Tr(A P_{q,p})` is invertible, real for Hermitian
//! `A`, and its sums along lines are Born probabilities. At `c = -1/2` the line
//! operators are exactly the displaced parity operators.
//!
//! ```
//! use dwigner::{Dimension, PhaseParam, ComplexMatrix, wwt_trace, inverse_wwt};
//!
//! let dim = Dimension::new(5)?;
//! let c = PhaseParam::minus_half(dim);
//! let w = wwt_trace(&ComplexMatrix::identity(5), &c)?;
//! assert!(w.values().iter().all(|v| (v - 1.0).abs() < 1e-12));
//! assert!(inverse_wwt(&w).approx_eq(&ComplexMatrix::identity(5), 1e-10));
//! # Ok::<(), dwigner::Error>(())
//! ```
//!
//! See the guide under `book/` for a walk through the constructions.

pub mod error;
pub mod field;
pub mod io;
pub mod linalg;
pub mod lines;
pub mod mub;
pub mod random;
pub mod schwinger;
pub mod tomography;
pub mod verify;
pub mod wigner;

pub use error::{Error, Result};
pub use field::{check_dimension, gf_half, gf_make, Dimension, Gf};
pub use linalg::{ComplexMatrix, ComplexVector};
pub use lines::{enumerate_lines, line_intersection, line_points, Line, PhaseParam, PhasePoint};
pub use mub::{eigen_check, mub_state, overlap_magnitude_sq, BasisLabel, MubState};
pub use schwinger::{build_schwinger, momentum_op, op_power, position_op, SchwingerPair};
pub use tomography::{
    reconstruct, sample_probs, simulate_probs, wigner_from_probs, DensityMatrix, MeasurementRecord,
};
pub use wigner::{
    inverse_wwt, line_operator_closed, line_operator_mub, overlap, parity_op, radon, wwt_mub,
    wwt_schwinger, wwt_trace, LineOperator, WignerTable,
};

// Guide chapters are compiled as doctests so their snippets stay in sync.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/field.md")]
    mod field {}
    #[doc = include_str!("../../../book/src/bases.md")]
    mod bases {}
    #[doc = include_str!("../../../book/src/lines.md")]
    mod lines {}
    #[doc = include_str!("../../../book/src/line_operators.md")]
    mod line_operators {}
    #[doc = include_str!("../../../book/src/transform.md")]
    mod transform {}
    #[doc = include_str!("../../../book/src/parity.md")]
    mod parity {}
    #[doc = include_str!("../../../book/src/tomography.md")]
    mod tomography {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
