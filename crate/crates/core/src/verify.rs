//! Numerical checks of the transform identities for one `(N, c)`.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::lines::{enumerate_lines, line_intersection, all_plane_points, PhaseParam, PhasePoint};
use crate::linalg::ComplexMatrix;
use crate::mub::{basis_states, BasisLabel};
use crate::random::{random_density, random_hermitian};
use crate::tomography::{reconstruct, simulate_probs, DensityMatrix};
use crate::wigner::{
    inverse_wwt, line_operator_closed, line_operator_mub, line_operators, overlap, parity_op,
    radon, wwt_complex, wwt_mub, wwt_schwinger, wwt_trace,
};
use crate::Result;

/// Random operators drawn per check.
pub const SAMPLES: usize = 20;
/// Seed for the random operators used by the suite.
pub const SUITE_SEED: u64 = 0x5EED_2016;

#[derive(Clone, Debug, PartialEq)]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub max_residual: f64,
    pub tol: f64,
}

impl Check {
    fn measured(name: &'static str, max_residual: f64, tol: f64) -> Self {
        let status = if max_residual <= tol { Status::Pass } else { Status::Fail };
        Check { name, status, max_residual, tol }
    }

    fn skipped(name: &'static str, note: &str) -> Self {
        Check { name, status: Status::Skipped(note.into()), max_residual: f64::NAN, tol: f64::NAN }
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            Status::Skipped(note) => write!(f, "SKIPPED {:<28} ({note})", self.name),
            s => write!(
                f,
                "{:<7} {:<28} max_residual={:.3e} tol={:.0e}",
                if *s == Status::Pass { "PASS" } else { "FAIL" },
                self.name,
                self.max_residual,
                self.tol
            ),
        }
    }
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Runs every identity check for `c` (and its dimension). `deep` adds the
/// clock/shift route, exhaustive line geometry, basis unbiasedness and the
/// tomography round trip.
pub fn run_suite(c: &PhaseParam, deep: bool) -> Result<Vec<Check>> {
    let dim = c.dim();
    let n = dim.get();
    let nf = n as f64;
    let set = line_operators(c);
    let id = ComplexMatrix::identity(n);
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);
    let mut out = Vec::new();

    let mut worst = 0.0f64;
    for a in set.iter() {
        for b in set.iter() {
            let t = a.matrix.trace_of_product(&b.matrix)? / nf;
            let want = if a.point == b.point { 1.0 } else { 0.0 };
            worst = worst.max((t - want).norm());
        }
    }
    out.push(Check::measured("orthogonality", worst, 1e-9));

    let mut sum = ComplexMatrix::zeros(n);
    for op in set.iter() {
        sum = &sum + &op.matrix;
    }
    out.push(Check::measured("closure", sum.scale_real(1.0 / nf).max_abs_diff(&id)?, 1e-10));

    let mut worst = 0.0f64;
    for pt in PhasePoint::all(dim) {
        let a = line_operator_mub(pt, c)?.matrix;
        let b = line_operator_closed(pt, c)?.matrix;
        worst = worst.max(a.max_abs_diff(&b)?);
    }
    out.push(Check::measured("construction equivalence", worst, 1e-10));

    let worst = set
        .iter()
        .map(|op| op.matrix.hermiticity_residue().max((op.matrix.trace().re - 1.0).abs()))
        .fold(0.0, f64::max);
    out.push(Check::measured("hermitian unit-trace lines", worst, 1e-10));

    let w = wwt_trace(&id, c)?;
    out.push(Check::measured("unit operator", max_diff(w.values(), &vec![1.0; n * n]), 1e-10));

    let densities: Vec<ComplexMatrix> = (0..SAMPLES).map(|_| random_density(dim, &mut rng)).collect();
    let hermitians: Vec<ComplexMatrix> = (0..SAMPLES).map(|_| random_hermitian(dim, &mut rng)).collect();

    let mut norm_worst = 0.0f64;
    let mut imag_worst = 0.0f64;
    for rho in &densities {
        let raw = wwt_complex(rho, c)?;
        imag_worst = imag_worst.max(raw.iter().map(|z| z.im.abs()).fold(0.0, f64::max));
        norm_worst = norm_worst.max((wwt_trace(rho, c)?.normalization() - 1.0).abs());
    }
    for h in &hermitians {
        let raw = wwt_complex(h, c)?;
        imag_worst = imag_worst.max(raw.iter().map(|z| z.im.abs()).fold(0.0, f64::max));
    }
    out.push(Check::measured("normalization", norm_worst, 1e-10));
    out.push(Check::measured("realness", imag_worst, 1e-10));

    let mut worst = 0.0f64;
    for pair in hermitians.windows(2) {
        let wa = wwt_trace(&pair[0], c)?;
        let wb = wwt_trace(&pair[1], c)?;
        let direct = pair[0].trace_of_product(&pair[1])?.re;
        worst = worst.max((overlap(&wa, &wb)? - direct).abs());
    }
    out.push(Check::measured("product formula", worst, 1e-9));

    let mut worst = 0.0f64;
    for rho in &densities {
        let w = wwt_trace(rho, c)?;
        for b in BasisLabel::all(dim) {
            let born: Vec<f64> = basis_states(dim, b)
                .iter()
                .map(|k| rho.expectation(k).map(|z| z.re))
                .collect::<Result<_>>()?;
            worst = worst.max(max_diff(&radon(&w, b), &born));
        }
    }
    out.push(Check::measured("marginality", worst, 1e-9));

    let mut worst = 0.0f64;
    for h in &hermitians {
        worst = worst.max(inverse_wwt(&wwt_trace(h, c)?).max_abs_diff(h)?);
    }
    out.push(Check::measured("round trip", worst, 1e-9));

    let mut worst = 0.0f64;
    for h in &hermitians {
        worst = worst.max(max_diff(wwt_mub(h, c)?.values(), wwt_trace(h, c)?.values()));
    }
    out.push(Check::measured("basis-sum route", worst, 1e-9));

    if c.is_parity_choice() {
        let mut eq_worst = 0.0f64;
        let mut sq_worst = 0.0f64;
        for op in set.iter() {
            let pi = parity_op(op.point);
            eq_worst = eq_worst.max(pi.max_abs_diff(&op.matrix)?);
            sq_worst = sq_worst.max((&op.matrix * &op.matrix).max_abs_diff(&id)?);
        }
        out.push(Check::measured("parity identification", eq_worst, 1e-10));
        out.push(Check::measured("parity square", sq_worst, 1e-10));
    } else {
        let note = "holds only for c = -1/2";
        out.push(Check::skipped("parity identification", note));
        out.push(Check::skipped("parity square", note));
    }

    if deep {
        let mut worst = 0.0f64;
        for h in &hermitians {
            worst = worst.max(max_diff(wwt_schwinger(h, c)?.values(), wwt_trace(h, c)?.values()));
        }
        out.push(Check::measured("clock-shift route", worst, 1e-9));

        let mut worst = 0.0f64;
        let labels: Vec<BasisLabel> = BasisLabel::all(dim).collect();
        for (i, &b1) in labels.iter().enumerate() {
            for &b2 in &labels[i + 1..] {
                for k1 in basis_states(dim, b1).iter() {
                    for k2 in basis_states(dim, b2).iter() {
                        worst = worst.max((k1.inner(k2)?.norm_sqr() - 1.0 / nf).abs());
                    }
                }
            }
        }
        out.push(Check::measured("basis unbiasedness", worst, 1e-10));

        // geometry checks count violations, so the tolerance is zero
        let lines = enumerate_lines(c);
        let mut bad = 0usize;
        for (i, l1) in lines.iter().enumerate() {
            for l2 in &lines[i + 1..] {
                let shared: Vec<_> = l1.points().filter(|&(b, m)| l2.contains(b, m)).collect();
                if shared.len() != 1 || line_intersection(l1, l2).ok() != Some(shared[0]) {
                    bad += 1;
                }
            }
        }
        out.push(Check::measured("line intersections", bad as f64, 0.0));
        let bad = all_plane_points(dim)
            .filter(|&(b, m)| lines.iter().filter(|l| l.contains(b, m)).count() != n)
            .count()
            + (lines.len() != n * n) as usize;
        out.push(Check::measured("line incidence", bad as f64, 0.0));

        let mut worst = 0.0f64;
        for rho in &densities {
            let rec = simulate_probs(&DensityMatrix::new(rho.clone())?)?;
            worst = worst.max(reconstruct(&rec, c)?.matrix().max_abs_diff(rho)?);
        }
        out.push(Check::measured("tomography round trip", worst, 1e-9));
    }

    Ok(out)
}
