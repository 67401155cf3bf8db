//! The `N + 1` mutually unbiased bases for prime `N`.
//!
//! Basis `b ∈ {0..N-1}` is the eigenbasis of `X Z^b`; the reference basis
//! (label `ddot0`) is the eigenbasis of `Z`. The state `|m; b⟩` has
//! amplitudes `ω^{b q(q-1)/2 - q m} / √N`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::field::{Dimension, Gf};
use crate::linalg::{omega, omega_pow, ComplexMatrix, ComplexVector};
use crate::schwinger::SchwingerPair;

/// One of the `N + 1` basis labels. The reference basis orders first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    /// Eigenbasis of `Z` (the computational basis), written `ddot0`.
    Reference,
    /// Eigenbasis of `X Z^b`.
    Xz(Gf),
}

impl BasisLabel {
    /// All labels in the order `ddot0, 0, 1, …, N-1`.
    pub fn all(dim: Dimension) -> impl Iterator<Item = BasisLabel> + Clone {
        std::iter::once(BasisLabel::Reference).chain(dim.elements().map(BasisLabel::Xz))
    }

    /// Position in [`BasisLabel::all`]: 0 for the reference basis, `1 + b` otherwise.
    pub fn ordinal(self) -> usize {
        match self {
            BasisLabel::Reference => 0,
            BasisLabel::Xz(b) => 1 + b.index(),
        }
    }

    pub fn from_ordinal(k: usize, dim: Dimension) -> Option<BasisLabel> {
        match k {
            0 => Some(BasisLabel::Reference),
            k if k <= dim.get() => Some(BasisLabel::Xz(dim.elem(k as i64 - 1))),
            _ => None,
        }
    }

    /// Parses `ddot0` or an integer `0..N-1` for the given dimension.
    pub fn parse(s: &str, dim: Dimension) -> Result<BasisLabel> {
        match s.trim().parse::<RawLabel>()? {
            RawLabel::Reference => Ok(BasisLabel::Reference),
            RawLabel::Slope(b) if (b as usize) < dim.get() => {
                Ok(BasisLabel::Xz(dim.elem(b as i64)))
            }
            RawLabel::Slope(b) => Err(Error::Parse(format!("basis {b} out of range for N={dim}"))),
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Reference => f.write_str("ddot0"),
            BasisLabel::Xz(b) => write!(f, "{b}"),
        }
    }
}

/// A basis label before it is tied to a dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RawLabel {
    Reference,
    Slope(u64),
}

impl FromStr for RawLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "ddot0" {
            return Ok(RawLabel::Reference);
        }
        s.parse::<u64>()
            .map(RawLabel::Slope)
            .map_err(|_| Error::Parse(format!("unknown basis label {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct MubState {
    pub basis: BasisLabel,
    pub index: Gf,
    pub ket: ComplexVector,
}

fn build_ket(m: Gf, basis: BasisLabel, dim: Dimension) -> ComplexVector {
    let n = dim.get();
    match basis {
        BasisLabel::Reference => ComplexVector::basis(n, m.index()),
        BasisLabel::Xz(b) => {
            let norm = 1.0 / (n as f64).sqrt();
            let amps = (0..n as i64).map(|q| {
                // q(q-1) is even, so the halving is exact in the integers
                let e = b.value() as i64 * (q * (q - 1) / 2) - q * m.value() as i64;
                omega_pow(e, n) * norm
            });
            ComplexVector::from_vec(amps.collect())
        }
    }
}

/// `|m; b⟩`.
pub fn mub_state(m: Gf, basis: BasisLabel, dim: Dimension) -> MubState {
    debug_assert_eq!(m.modulus(), dim.modulus());
    let ket = basis_states(dim, basis)[m.index()].clone();
    MubState { basis, index: m, ket }
}

type StateCache = RwLock<HashMap<(Dimension, BasisLabel), Arc<[ComplexVector]>>>;

fn state_cache() -> &'static StateCache {
    static CACHE: OnceLock<StateCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// All `N` kets of one basis, indexed by `m`. Built once per `(N, b)`.
pub fn basis_states(dim: Dimension, basis: BasisLabel) -> Arc<[ComplexVector]> {
    let key = (dim, basis);
    if let Some(hit) = state_cache().read().expect("mub cache poisoned").get(&key) {
        return hit.clone();
    }
    let built: Arc<[ComplexVector]> =
        dim.elements().map(|m| build_ket(m, basis, dim)).collect::<Vec<_>>().into();
    state_cache()
        .write()
        .expect("mub cache poisoned")
        .entry(key)
        .or_insert(built)
        .clone()
}

/// `|⟨s1|s2⟩|²`.
pub fn overlap_magnitude_sq(s1: &MubState, s2: &MubState) -> Result<f64> {
    Ok(s1.ket.inner(&s2.ket)?.norm_sqr())
}

/// Residual `‖X Z^b |m;b⟩ − ω^m |m;b⟩‖`.
pub fn eigen_check(state: &MubState, pair: &SchwingerPair) -> Result<f64> {
    let b = match state.basis {
        BasisLabel::Reference => return Err(Error::WrongBasisKind),
        BasisLabel::Xz(b) => b,
    };
    let u = pair.xz_power(b.value() as i64);
    let lhs = u.apply(&state.ket)?;
    let rhs = state.ket.scale(omega(state.index));
    Ok(lhs.sub(&rhs)?.norm())
}

/// `|m;b⟩⟨m;b|`.
pub fn projector(m: Gf, basis: BasisLabel, dim: Dimension) -> ComplexMatrix {
    ComplexMatrix::projector(&basis_states(dim, basis)[m.index()])
}
