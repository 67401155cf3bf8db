use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension {0} is not prime")]
    CompositeDimension(u64),
    #[error("dimension 2 is not supported (2 has no inverse mod 2)")]
    UnsupportedDimension,
    #[error("field elements have different moduli ({0} vs {1})")]
    ModulusMismatch(u32, u32),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operator is not unitary (residual {0:e})")]
    NonUnitaryInput(f64),
    #[error("the reference basis has no X Z^b eigenvalue equation")]
    WrongBasisKind,
    #[error("lines are identical and share all N+1 points")]
    IdenticalLines,
    #[error("operands carry different dimension or phase parameter")]
    MixedParameters,
    #[error("operator is not Hermitian: imaginary residue {residue:e} exceeds tolerance")]
    NonHermitian { residue: f64 },
    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),
    #[error("invalid measurement record: {0}")]
    InvalidRecord(String),
    #[error("parse error: {0}")]
    Parse(String),
}
