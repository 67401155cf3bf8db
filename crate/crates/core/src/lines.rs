//! Lines in the `b`–`m` plane.
//!
//! For a phase-space point `(q, p)` and phase parameter `c`, the line picks
//! one state from every basis: `m = q` in the reference basis and
//! `m = -p + b (q + c)` in basis `b`. There are `N(N+1)` points (basis
//! states) and `N²` lines; two distinct lines meet in exactly one point.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Dimension, Gf};
use crate::mub::BasisLabel;

/// The phase parameter `c`, stored as a field element together with the
/// rational it was written as.
#[derive(Clone, Debug)]
pub struct PhaseParam {
    c: Gf,
    display: String,
}

impl PhaseParam {
    /// `num / den` embedded into the field. Denominators 1 and 2 are the
    /// usual choices; any `den` invertible mod `N` is accepted.
    pub fn from_ratio(num: i64, den: i64, dim: Dimension) -> Result<Self> {
        if den == 0 {
            return Err(Error::Parse("zero denominator in phase parameter".into()));
        }
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = gcd(num.unsigned_abs(), den as u64).max(1) as i64;
        let (num, den) = (num / g, den / g);
        let c = Gf::from_ratio(num, den, dim)
            .map_err(|_| Error::Parse(format!("denominator {den} is not invertible mod {dim}")))?;
        let display = if den == 1 { num.to_string() } else { format!("{num}/{den}") };
        Ok(PhaseParam { c, display })
    }

    pub fn zero(dim: Dimension) -> Self {
        Self::from_ratio(0, 1, dim).expect("1 is invertible")
    }

    /// `c = -1/2`, the choice for which line operators are displaced parities.
    pub fn minus_half(dim: Dimension) -> Self {
        Self::from_ratio(-1, 2, dim).expect("2 is invertible for odd N")
    }

    /// Parses `"a"` or `"a/b"`.
    pub fn parse(s: &str, dim: Dimension) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid phase parameter {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (
                a.trim().parse::<i64>().map_err(|_| bad())?,
                b.trim().parse::<i64>().map_err(|_| bad())?,
            ),
            None => (s.parse::<i64>().map_err(|_| bad())?, 1),
        };
        Self::from_ratio(num, den, dim)
    }

    #[inline]
    pub fn value(&self) -> Gf {
        self.c
    }

    pub fn dim(&self) -> Dimension {
        self.c.dimension()
    }

    /// True iff `c ≡ -1/2 (mod N)`.
    pub fn is_parity_choice(&self) -> bool {
        self.c == -self.dim().half()
    }

    /// The rational form this parameter was written as.
    pub fn display_form(&self) -> &str {
        &self.display
    }
}

/// Parameters are equal when they embed to the same field element.
impl PartialEq for PhaseParam {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c
    }
}

impl Eq for PhaseParam {}

impl fmt::Display for PhaseParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhasePoint {
    pub q: Gf,
    pub p: Gf,
}

impl PhasePoint {
    pub fn new(q: Gf, p: Gf) -> Self {
        assert_eq!(q.modulus(), p.modulus(), "phase point coordinates from different fields");
        PhasePoint { q, p }
    }

    pub fn from_ints(q: i64, p: i64, dim: Dimension) -> Self {
        PhasePoint { q: dim.elem(q), p: dim.elem(p) }
    }

    pub fn dim(&self) -> Dimension {
        self.q.dimension()
    }

    /// All `N²` points, `q`-major ascending.
    pub fn all(dim: Dimension) -> impl Iterator<Item = PhasePoint> + Clone {
        dim.elements()
            .flat_map(move |q| dim.elements().map(move |p| PhasePoint { q, p }))
    }

    /// Row-major position `q N + p`.
    pub fn flat_index(&self) -> usize {
        self.q.index() * self.dim().get() + self.p.index()
    }
}

/// The value of `m` on the line through `(q, p)` at basis `b`.
pub fn line_value(point: PhasePoint, c: &PhaseParam, b: BasisLabel) -> Gf {
    match b {
        BasisLabel::Reference => point.q,
        BasisLabel::Xz(b) => -point.p + b * (point.q + c.value()),
    }
}

/// One line: `m` for each of the `N + 1` basis labels.
#[derive(Clone, Debug)]
pub struct Line {
    pub point: PhasePoint,
    pub c: PhaseParam,
    values: Vec<Gf>,
}

impl Line {
    /// The `m` value at basis `b`.
    pub fn at(&self, b: BasisLabel) -> Gf {
        self.values[b.ordinal()]
    }

    /// `(b, m)` pairs, reference basis first.
    pub fn points(&self) -> impl Iterator<Item = (BasisLabel, Gf)> + '_ {
        BasisLabel::all(self.point.dim()).zip(self.values.iter().copied())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn contains(&self, b: BasisLabel, m: Gf) -> bool {
        self.at(b) == m
    }
}

/// Structural equality over the point set.
impl PartialEq for Line {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values
    }
}

impl Eq for Line {}

pub fn line_points(point: PhasePoint, c: &PhaseParam) -> Result<Line> {
    let dim = point.dim();
    if c.dim() != dim {
        return Err(Error::MixedParameters);
    }
    let values = BasisLabel::all(dim).map(|b| line_value(point, c, b)).collect();
    Ok(Line { point, c: c.clone(), values })
}

/// The unique point shared by two distinct lines.
pub fn line_intersection(l1: &Line, l2: &Line) -> Result<(BasisLabel, Gf)> {
    if l1.point.dim() != l2.point.dim() || l1.c != l2.c {
        return Err(Error::MixedParameters);
    }
    let (a, b) = (l1.point, l2.point);
    if a.q == b.q {
        if a.p == b.p {
            return Err(Error::IdenticalLines);
        }
        return Ok((BasisLabel::Reference, a.q));
    }
    let slope = (a.p - b.p).checked_div(a.q - b.q)?;
    let label = BasisLabel::Xz(slope);
    Ok((label, l1.at(label)))
}

/// All `N²` lines for a given `c`, `q`-major ascending.
pub fn enumerate_lines(c: &PhaseParam) -> Vec<Line> {
    PhasePoint::all(c.dim())
        .map(|pt| line_points(pt, c).expect("dimension taken from c"))
        .collect()
}

/// All `N(N+1)` points `(b, m)` of the plane.
pub fn all_plane_points(dim: Dimension) -> impl Iterator<Item = (BasisLabel, Gf)> {
    BasisLabel::all(dim).flat_map(move |b| dim.elements().map(move |m| (b, m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dim(n: u64) -> Dimension {
        Dimension::new(n).unwrap()
    }

    fn values(l: &Line) -> Vec<u32> {
        l.points().map(|(_, m)| m.value()).collect()
    }

    #[test]
    fn phase_param_parsing() {
        let d = dim(5);
        assert_eq!(PhaseParam::parse("-1/2", d).unwrap().value().value(), 2);
        assert_eq!(PhaseParam::parse("0", d).unwrap().value().value(), 0);
        assert_eq!(PhaseParam::parse("1/3", d).unwrap().value().value(), 2);
        assert_eq!(PhaseParam::parse("3/2", d).unwrap().value().value(), 4);
        assert_eq!(PhaseParam::parse("2/-4", d).unwrap().display_form(), "-1/2");
        assert!(PhaseParam::parse("1/5", d).is_err());
        assert!(PhaseParam::parse("1/0", d).is_err());
        assert!(PhaseParam::parse("abc", d).is_err());
        assert!(PhaseParam::minus_half(d).is_parity_choice());
        assert!(!PhaseParam::zero(d).is_parity_choice());
        // 2 ≡ -1/2 mod 5
        assert!(PhaseParam::parse("2", d).unwrap().is_parity_choice());
    }

    #[test]
    fn example_lines() {
        let d = dim(5);
        let pt = PhasePoint::from_ints(2, 1, d);
        let l0 = line_points(pt, &PhaseParam::zero(d)).unwrap();
        assert_eq!(values(&l0), vec![2, 4, 1, 3, 0, 2]);
        let lh = line_points(pt, &PhaseParam::minus_half(d)).unwrap();
        assert_eq!(values(&lh), vec![2, 4, 3, 2, 1, 0]);
        let d3 = dim(3);
        let l = line_points(PhasePoint::from_ints(0, 0, d3), &PhaseParam::zero(d3)).unwrap();
        assert_eq!(values(&l), vec![0, 0, 0, 0]);
        assert_eq!(l.len(), 4);
    }

    #[test]
    fn intersections() {
        let d = dim(5);
        let c = PhaseParam::zero(d);
        let a = line_points(PhasePoint::from_ints(1, 0, d), &c).unwrap();
        let b = line_points(PhasePoint::from_ints(2, 0, d), &c).unwrap();
        assert_eq!(line_intersection(&a, &b).unwrap(), (BasisLabel::Xz(d.zero()), d.zero()));
        for cc in [PhaseParam::zero(d), PhaseParam::minus_half(d), PhaseParam::parse("3/2", d).unwrap()] {
            let a = line_points(PhasePoint::from_ints(3, 1, d), &cc).unwrap();
            let b = line_points(PhasePoint::from_ints(3, 2, d), &cc).unwrap();
            assert_eq!(line_intersection(&a, &b).unwrap(), (BasisLabel::Reference, d.elem(3)));
            assert_eq!(line_intersection(&a, &a), Err(Error::IdenticalLines));
        }
        let other = line_points(PhasePoint::from_ints(3, 2, d), &PhaseParam::minus_half(d)).unwrap();
        assert_eq!(line_intersection(&a, &other), Err(Error::MixedParameters));
        let d7 = dim(7);
        let far = line_points(PhasePoint::from_ints(0, 0, d7), &PhaseParam::zero(d7)).unwrap();
        assert_eq!(line_intersection(&a, &far), Err(Error::MixedParameters));
    }

    #[test]
    fn counts_and_incidence() {
        for n in [3u64, 5] {
            let d = dim(n);
            for c in [PhaseParam::zero(d), PhaseParam::minus_half(d)] {
                let lines = enumerate_lines(&c);
                assert_eq!(lines.len(), (n * n) as usize);
                assert!(lines.iter().all(|l| l.len() == n as usize + 1));
                let pts: Vec<_> = all_plane_points(d).collect();
                assert_eq!(pts.len(), (n * (n + 1)) as usize);
                for (b, m) in pts {
                    let k = lines.iter().filter(|l| l.contains(b, m)).count();
                    assert_eq!(k, n as usize);
                }
            }
        }
    }

    #[test]
    fn intersection_matches_brute_force() {
        for n in [3u64, 5] {
            let d = dim(n);
            for c in [PhaseParam::zero(d), PhaseParam::minus_half(d), PhaseParam::from_ratio(1, 1, d).unwrap()] {
                let lines = enumerate_lines(&c);
                for (i, l1) in lines.iter().enumerate() {
                    for (j, l2) in lines.iter().enumerate() {
                        let shared: Vec<_> = l1.points().filter(|&(b, m)| l2.contains(b, m)).collect();
                        if i == j {
                            assert_eq!(shared.len(), n as usize + 1);
                            continue;
                        }
                        assert_eq!(shared.len(), 1);
                        assert_eq!(line_intersection(l1, l2).unwrap(), shared[0]);
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn structural_equality_iff_same_point(
            q1 in 0i64..7, p1 in 0i64..7, q2 in 0i64..7, p2 in 0i64..7, cn in -3i64..4, cd in 1i64..3
        ) {
            let d = dim(7);
            let c = PhaseParam::from_ratio(cn, cd, d).unwrap();
            let l1 = line_points(PhasePoint::from_ints(q1, p1, d), &c).unwrap();
            let l2 = line_points(PhasePoint::from_ints(q2, p2, d), &c).unwrap();
            prop_assert_eq!(l1 == l2, (q1, p1) == (q2, p2));
        }
    }
}
