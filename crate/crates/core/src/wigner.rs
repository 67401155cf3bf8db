//! Line operators, the phase-parametrized Weyl-Wigner transform and its
//! inverse, discrete Radon marginals, and displaced parity operators.
//!
//! The line operator through `(q, p)` is the sum of the `N + 1` MUB
//! projectors picked out by the line, minus the identity:
//!
//! ```text
//! P_{q,p} = Σ_b |M(b); b⟩⟨M(b); b| − I
//! ```
//!
//! Its matrix elements in the reference basis have the closed form
//!
//! ```text
//! ⟨n|P|n'⟩ = δ_{qn} δ_{qn'} − δ_{nn'} δ_{n, q+c+1/2} + δ_{n+n', 2q+2c+1} ω^{p(n−n')}
//! ```
//!
//! with every index compared in the field. The transform of an operator `A`
//! is `W(q, p) = Tr(A P_{q,p})`. Three independent routes are provided:
//! [`wwt_trace`] (canonical), [`wwt_mub`] (sum of basis expectation values)
//! and [`wwt_schwinger`] (the clock/shift double sum).

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{Dimension, Gf};
use crate::lines::{line_value, PhaseParam, PhasePoint};
use crate::linalg::{omega, omega_pow, ComplexMatrix};
use crate::mub::{basis_states, BasisLabel};
use crate::schwinger::{build_schwinger, clock_power, op_power};

/// Absolute tolerance on the imaginary part of a transform, per unit of
/// operator norm, above which the input is treated as non-Hermitian.
pub const REALNESS_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct LineOperator {
    pub point: PhasePoint,
    pub c: PhaseParam,
    pub matrix: ComplexMatrix,
}

fn check_point(point: PhasePoint, c: &PhaseParam) -> Result<Dimension> {
    let dim = c.dim();
    if point.dim() != dim {
        return Err(Error::MixedParameters);
    }
    Ok(dim)
}

fn check_operator(a: &ComplexMatrix, dim: Dimension) -> Result<()> {
    if a.dim() != dim.get() {
        return Err(Error::DimensionMismatch { expected: dim.get(), found: a.dim() });
    }
    Ok(())
}

/// Builds `P_{q,p}` as a sum of MUB projectors.
pub fn line_operator_mub(point: PhasePoint, c: &PhaseParam) -> Result<LineOperator> {
    let dim = check_point(point, c)?;
    let n = dim.get();
    let mut matrix = ComplexMatrix::identity(n).scale_real(-1.0);
    for b in BasisLabel::all(dim) {
        let m = line_value(point, c, b);
        let ket = &basis_states(dim, b)[m.index()];
        matrix = &matrix + &ComplexMatrix::projector(ket);
    }
    Ok(LineOperator { point, c: c.clone(), matrix })
}

/// Builds `P_{q,p}` entrywise from the closed-form matrix elements.
pub fn line_operator_closed(point: PhasePoint, c: &PhaseParam) -> Result<LineOperator> {
    let dim = check_point(point, c)?;
    let n = dim.get();
    let half = dim.half();
    let shifted = point.q + c.value() + half; // q + c + 1/2
    let anti = shifted + shifted; // 2q + 2c + 1
    let mut matrix = ComplexMatrix::zeros(n);
    for (r, nr) in dim.elements().enumerate() {
        for (col, nc) in dim.elements().enumerate() {
            let mut z = Complex64::new(0.0, 0.0);
            if nr == point.q && nc == point.q {
                z += 1.0;
            }
            if nr == nc && nr == shifted {
                z -= 1.0;
            }
            if nr + nc == anti {
                z += omega(point.p * (nr - nc));
            }
            matrix[(r, col)] = z;
        }
    }
    Ok(LineOperator { point, c: c.clone(), matrix })
}

/// All `N²` line operators for one `(N, c)`, indexed by [`PhasePoint::flat_index`].
#[derive(Debug)]
pub struct LineOperatorSet {
    pub c: PhaseParam,
    ops: Vec<LineOperator>,
}

impl LineOperatorSet {
    pub fn build(c: &PhaseParam) -> Self {
        let ops = PhasePoint::all(c.dim())
            .map(|pt| line_operator_closed(pt, c).expect("point drawn from c's field"))
            .collect();
        LineOperatorSet { c: c.clone(), ops }
    }

    pub fn get(&self, point: PhasePoint) -> &LineOperator {
        &self.ops[point.flat_index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = &LineOperator> {
        self.ops.iter()
    }
}

type OpCache = RwLock<HashMap<(Dimension, Gf), Arc<LineOperatorSet>>>;

fn op_cache() -> &'static OpCache {
    static CACHE: OnceLock<OpCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Shared line-operator set for `(N, c)`, built on first use.
pub fn line_operators(c: &PhaseParam) -> Arc<LineOperatorSet> {
    let key = (c.dim(), c.value());
    if let Some(hit) = op_cache().read().expect("operator cache poisoned").get(&key) {
        return hit.clone();
    }
    let built = Arc::new(LineOperatorSet::build(c));
    op_cache()
        .write()
        .expect("operator cache poisoned")
        .entry(key)
        .or_insert(built)
        .clone()
}

/// A real `N × N` phase-space table `W(q, p)`.
#[derive(Clone, Debug)]
pub struct WignerTable {
    pub c: PhaseParam,
    values: Vec<f64>,
    /// Largest `|Im Tr(A P)|` seen while building the table (0 when the
    /// table did not come from an operator).
    pub imag_residue: f64,
}

impl WignerTable {
    /// Wraps `values` (row-major over `(q, p)`, `N²` entries).
    pub fn from_values(c: &PhaseParam, values: Vec<f64>) -> Result<Self> {
        let n = c.dim().get();
        if values.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: values.len() });
        }
        Ok(WignerTable { c: c.clone(), values, imag_residue: 0.0 })
    }

    pub fn dim(&self) -> Dimension {
        self.c.dim()
    }

    pub fn get(&self, point: PhasePoint) -> f64 {
        self.values[point.flat_index()]
    }

    /// `W(q, p)` by integer coordinates.
    pub fn at(&self, q: usize, p: usize) -> f64 {
        self.values[q * self.dim().get() + p]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `(point, W)` pairs, `q`-major ascending.
    pub fn iter(&self) -> impl Iterator<Item = (PhasePoint, f64)> + '_ {
        PhasePoint::all(self.dim()).zip(self.values.iter().copied())
    }

    /// `(1/N) Σ W(q, p)`; equals `Tr A`.
    pub fn normalization(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.dim().get() as f64
    }
}

fn into_table(c: &PhaseParam, a: &ComplexMatrix, raw: Vec<Complex64>) -> Result<WignerTable> {
    let residue = raw.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if residue > REALNESS_TOL * a.norm().max(1.0) {
        return Err(Error::NonHermitian { residue });
    }
    Ok(WignerTable {
        c: c.clone(),
        values: raw.into_iter().map(|z| z.re).collect(),
        imag_residue: residue,
    })
}

/// `Tr(A P_{q,p})` for every point, without the realness check.
pub fn wwt_complex(a: &ComplexMatrix, c: &PhaseParam) -> Result<Vec<Complex64>> {
    check_operator(a, c.dim())?;
    let set = line_operators(c);
    set.iter().map(|op| a.trace_of_product(&op.matrix)).collect()
}

/// `W(q, p) = Tr(A P_{q,p})`. Refuses inputs whose transform is not real.
pub fn wwt_trace(a: &ComplexMatrix, c: &PhaseParam) -> Result<WignerTable> {
    let raw = wwt_complex(a, c)?;
    into_table(c, a, raw)
}

/// `W(q, p) = Σ_b ⟨M(b); b|A|M(b); b⟩ − Tr A`.
pub fn wwt_mub(a: &ComplexMatrix, c: &PhaseParam) -> Result<WignerTable> {
    let dim = c.dim();
    check_operator(a, dim)?;
    // expectation values of A in every basis state, indexed [ordinal][m]
    let mut expect = Vec::with_capacity(dim.get() + 1);
    for b in BasisLabel::all(dim) {
        let states = basis_states(dim, b);
        let row: Result<Vec<Complex64>> = states.iter().map(|k| a.expectation(k)).collect();
        expect.push(row?);
    }
    let tr = a.trace();
    let raw = PhasePoint::all(dim)
        .map(|pt| {
            let mut acc = Complex64::new(0.0, 0.0);
            for b in BasisLabel::all(dim) {
                acc += expect[b.ordinal()][line_value(pt, c, b).index()];
            }
            acc - tr
        })
        .collect();
    into_table(c, a, raw)
}

/// The clock/shift double sum:
///
/// `W = (1/N) { Σ_{b} Σ_{k=1}^{N-1} Tr[A ((X Z^b)^k)†] ω^{k(−p + b(q+c))} + Σ_{k=0}^{N-1} Tr[A (Z^k)†] ω^{kq} }`.
pub fn wwt_schwinger(a: &ComplexMatrix, c: &PhaseParam) -> Result<WignerTable> {
    let dim = c.dim();
    check_operator(a, dim)?;
    let n = dim.get();
    let pair = build_schwinger(dim);
    // slope_traces[b][k] = Tr[A ((X Z^b)^k)†]
    let mut slope_traces = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for (b, row) in slope_traces.iter_mut().enumerate() {
        let u = pair.xz_power(b as i64);
        for (k, t) in row.iter_mut().enumerate().skip(1) {
            *t = a.trace_of_product(&op_power(&u, k as i64)?.adjoint())?;
        }
    }
    let clock_traces: Vec<Complex64> = (0..n as i64)
        .map(|k| a.trace_of_product(&clock_power(dim, -k)))
        .collect::<Result<_>>()?;

    let raw = PhasePoint::all(dim)
        .map(|pt| {
            let mut acc = Complex64::new(0.0, 0.0);
            for b in dim.elements() {
                let phase = -pt.p + b * (pt.q + c.value());
                for (k, t) in slope_traces[b.index()].iter().enumerate().skip(1) {
                    acc += t * omega_pow(k as i64 * phase.value() as i64, n);
                }
            }
            for (k, t) in clock_traces.iter().enumerate() {
                acc += t * omega_pow(k as i64 * pt.q.value() as i64, n);
            }
            acc / n as f64
        })
        .collect();
    into_table(c, a, raw)
}

/// `A = (1/N) Σ_{q,p} W(q, p) P_{q,p}`.
pub fn inverse_wwt(w: &WignerTable) -> ComplexMatrix {
    let dim = w.dim();
    let set = line_operators(&w.c);
    let mut out = ComplexMatrix::zeros(dim.get());
    for (pt, v) in w.iter() {
        out.add_scaled(Complex64::new(v, 0.0), &set.get(pt).matrix)
            .expect("same dimension");
    }
    out.scale_real(1.0 / dim.get() as f64)
}

/// `(1/N) Σ W_A W_B`, which equals `Tr(A B)`.
pub fn overlap(wa: &WignerTable, wb: &WignerTable) -> Result<f64> {
    if wa.dim() != wb.dim() || wa.c != wb.c {
        return Err(Error::MixedParameters);
    }
    let s: f64 = wa.values.iter().zip(&wb.values).map(|(x, y)| x * y).sum();
    Ok(s / wa.dim().get() as f64)
}

/// Sums `W` along every line through basis `b`:
/// `out[m] = (1/N) Σ_{(q,p): M(b) = m} W(q, p)`.
pub fn radon(w: &WignerTable, b: BasisLabel) -> Vec<f64> {
    let dim = w.dim();
    let mut out = vec![0.0; dim.get()];
    for (pt, v) in w.iter() {
        out[line_value(pt, &w.c, b).index()] += v;
    }
    let n = dim.get() as f64;
    out.iter_mut().for_each(|x| *x /= n);
    out
}

/// `Π_{0,0} = Σ_n |n⟩⟨−n|`.
pub fn parity_origin(dim: Dimension) -> ComplexMatrix {
    let n = dim.get();
    ComplexMatrix::from_fn(n, |r, c| {
        if (r + c) % n == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Displaced parity `Π_{q,p} = X^q Z^p Π_{0,0} Z^{−p} X^{−q}`.
pub fn parity_op(point: PhasePoint) -> ComplexMatrix {
    let dim = point.dim();
    let pair = build_schwinger(dim);
    let q = point.q.value() as i64;
    let p = point.p.value() as i64;
    let xq = op_power(&pair.x, q).expect("shift is unitary");
    let xmq = op_power(&pair.x, -q).expect("shift is unitary");
    let zp = clock_power(dim, p);
    let zmp = clock_power(dim, -p);
    let inner = &(&zp * &parity_origin(dim)) * &zmp;
    &(&xq * &inner) * &xmq
}

/// `Σ_{b=0}^{N-1} ⟨n|M(b); b⟩⟨M(b); b|n'⟩`, the slope-basis part of one
/// matrix element of the line operator. For `n ≠ n'` it vanishes unless
/// `n + n' = 2q + 2c + 1`.
pub fn slope_sum_element(point: PhasePoint, c: &PhaseParam, n: Gf, n_prime: Gf) -> Complex64 {
    let dim = c.dim();
    let mut acc = Complex64::new(0.0, 0.0);
    for b in dim.elements() {
        let label = BasisLabel::Xz(b);
        let ket = &basis_states(dim, label)[line_value(point, c, label).index()];
        acc += ket[n.index()] * ket[n_prime.index()].conj();
    }
    acc
}
