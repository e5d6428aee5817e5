//! 3x3 Hadamard submatrices and the sixth-root points of the block Fourier
//! orbit.

use crate::error::{invalid, Error, Result};
use crate::matrix::{unit_root, Matrix};
use crate::orbits::{fourier9, FourierParams};

use super::defect::{defect, DEFAULT_RANK_TOL};

/// Default orthogonality tolerance of [`h3_submatrix_scan`].
pub const H3_TOL: f64 = 1e-9;

pub type Triple = [usize; 3];

fn triples(n: usize) -> Vec<Triple> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// All `(rows, cols)` whose 3x3 submatrix has pairwise orthogonal rows
/// within `tol`. For unimodular entries that is an enphased `F3`.
pub fn h3_submatrix_scan(h: &Matrix, tol: f64) -> Vec<(Triple, Triple)> {
    let ts = triples(h.n());
    let mut out = Vec::new();
    for rows in &ts {
        for cols in &ts {
            let dot = |p: usize, q: usize| {
                cols.iter().map(|&j| h[(rows[p], j)] * h[(rows[q], j)].conj()).sum::<num_complex::Complex64>().norm()
            };
            if dot(0, 1) <= tol && dot(0, 2) <= tol && dot(1, 2) <= tol {
                out.push((*rows, *cols));
            }
        }
    }
    out
}

/// Defect of `fourier9(fp)` where every parameter is one of `+-1, +-w, +-w^2`.
pub fn fourier_butson_defect(fp: &FourierParams) -> Result<i64> {
    for (k, x) in fp.as_array().iter().enumerate() {
        let sixth = (0..6).any(|e| x.approx_eq(unit_root(6, e), 1e-12));
        if !sixth {
            return Err(invalid(format!("x{} = {x} is not a sixth root of unity", k + 1)));
        }
    }
    let report = defect(&fourier9(fp), DEFAULT_RANK_TOL)?;
    if !report.reliable {
        return Err(Error::Unreliable(format!("no spectral gap at {fp:?}: gap ratio {:.3}", report.gap_ratio)));
    }
    Ok(report.defect)
}
