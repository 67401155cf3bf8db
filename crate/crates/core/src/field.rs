//! Arithmetic in the prime field of integers modulo an odd prime `N`.
//!
//! Every phase-space index (`q`, `p`, basis slope `b`, state index `m`) and the
//! phase parameter `c` lives here. Half-integers such as `c = -1/2` are
//! represented through the inverse of two, `2^{-1} = (N + 1) / 2`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// A validated Hilbert-space dimension: an odd prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dimension(u32);

impl Dimension {
    /// Accepts `n` iff it is an odd prime.
    pub fn new(n: u64) -> Result<Self> {
        check_dimension(n)?;
        let n = u32::try_from(n).map_err(|_| Error::Parse(format!("dimension {n} too large")))?;
        Ok(Dimension(n))
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.0
    }

    /// Field element `v mod N` (Euclidean remainder, so negatives land in `[0, N)`).
    #[inline]
    pub fn elem(self, v: i64) -> Gf {
        Gf {
            value: v.rem_euclid(self.0 as i64) as u32,
            modulus: self.0,
        }
    }

    #[inline]
    pub fn zero(self) -> Gf {
        self.elem(0)
    }

    #[inline]
    pub fn one(self) -> Gf {
        self.elem(1)
    }

    /// `2^{-1}` in the field, i.e. `(N + 1) / 2`.
    pub fn half(self) -> Gf {
        self.elem((self.0 as i64 + 1) / 2)
    }

    /// All field elements in ascending order.
    pub fn elements(self) -> impl Iterator<Item = Gf> + Clone {
        (0..self.0).map(move |v| Gf { value: v, modulus: self.0 })
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Succeeds iff `n` is an odd prime.
pub fn check_dimension(n: u64) -> Result<()> {
    if n == 2 {
        return Err(Error::UnsupportedDimension);
    }
    if !is_prime(n) {
        return Err(Error::CompositeDimension(n));
    }
    Ok(())
}

/// Builds `v mod n`, validating `n` first.
pub fn gf_make(v: i64, n: u64) -> Result<Gf> {
    Ok(Dimension::new(n)?.elem(v))
}

/// `2^{-1} mod n`.
pub fn gf_half(n: u64) -> Result<Gf> {
    Ok(Dimension::new(n)?.half())
}

/// An element of `Z/NZ` for odd prime `N`.
///
/// The arithmetic operators panic when the moduli differ; the `checked_*`
/// methods report [`Error::ModulusMismatch`] instead.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf {
    value: u32,
    modulus: u32,
}

impl Gf {
    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn index(self) -> usize {
        self.value as usize
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn dimension(self) -> Dimension {
        Dimension(self.modulus)
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same_field(self, rhs: Gf) -> Result<()> {
        if self.modulus != rhs.modulus {
            return Err(Error::ModulusMismatch(self.modulus, rhs.modulus));
        }
        Ok(())
    }

    pub fn checked_add(self, rhs: Gf) -> Result<Gf> {
        self.same_field(rhs)?;
        let v = (self.value as u64 + rhs.value as u64) % self.modulus as u64;
        Ok(Gf { value: v as u32, modulus: self.modulus })
    }

    pub fn checked_sub(self, rhs: Gf) -> Result<Gf> {
        self.same_field(rhs)?;
        let m = self.modulus as u64;
        let v = (self.value as u64 + m - rhs.value as u64) % m;
        Ok(Gf { value: v as u32, modulus: self.modulus })
    }

    pub fn checked_mul(self, rhs: Gf) -> Result<Gf> {
        self.same_field(rhs)?;
        let v = (self.value as u64 * rhs.value as u64) % self.modulus as u64;
        Ok(Gf { value: v as u32, modulus: self.modulus })
    }

    pub fn checked_div(self, rhs: Gf) -> Result<Gf> {
        self.same_field(rhs)?;
        self.checked_mul(rhs.inv()?)
    }

    /// Multiplicative inverse via Fermat: `a^{N-2}`.
    pub fn inv(self) -> Result<Gf> {
        if self.value == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(self.modulus as u64 - 2))
    }

    pub fn pow(self, mut e: u64) -> Gf {
        let m = self.modulus as u64;
        let mut base = self.value as u64 % m;
        let mut acc = 1 % m;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        Gf { value: acc as u32, modulus: self.modulus }
    }

    /// The field element `num / den`; fails if `den ≡ 0 (mod N)`.
    pub fn from_ratio(num: i64, den: i64, dim: Dimension) -> Result<Gf> {
        let d = dim.elem(den);
        Ok(dim.elem(num) * d.inv()?)
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

impl Add for Gf {
    type Output = Gf;
    fn add(self, rhs: Gf) -> Gf {
        self.checked_add(rhs).expect("field elements from different moduli")
    }
}

impl Sub for Gf {
    type Output = Gf;
    fn sub(self, rhs: Gf) -> Gf {
        self.checked_sub(rhs).expect("field elements from different moduli")
    }
}

impl Mul for Gf {
    type Output = Gf;
    fn mul(self, rhs: Gf) -> Gf {
        self.checked_mul(rhs).expect("field elements from different moduli")
    }
}

impl Neg for Gf {
    type Output = Gf;
    fn neg(self) -> Gf {
        Gf {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}
