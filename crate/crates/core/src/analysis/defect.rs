//! The defect: dimension of the first-order unimodular perturbations
//! `H_kj -> H_kj exp(i t R_kj)` that keep `H^dagger H` diagonal, minus the
//! `2n - 1` trivial enphasing directions.

use nalgebra::DMatrix;
use serde::{Serialize, Serializer};

use crate::error::{invalid, Result};
use crate::matrix::{is_hadamard, Matrix};

/// Default relative rank threshold.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

/// Minimum ratio between the smallest kept and largest dropped singular value.
pub const GAP_MIN: f64 = 10.0;

const INPUT_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DefectReport {
    pub n: usize,
    pub rank: usize,
    pub defect: i64,
    pub tolerance_used: f64,
    #[serde(serialize_with = "finite_or_null")]
    pub gap_ratio: f64,
    pub reliable: bool,
    /// Descending.
    pub singular_values: Vec<f64>,
}

fn finite_or_null<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else {
        s.serialize_none()
    }
}

impl DefectReport {
    fn from_singular_values(n: usize, singular_values: Vec<f64>, tol: f64) -> Self {
        let (rank, gap_ratio) = rank_and_gap(&singular_values, tol);
        let defect = (n * n - rank) as i64 - (2 * n as i64 - 1);
        DefectReport {
            n,
            rank,
            defect,
            tolerance_used: tol,
            gap_ratio,
            reliable: gap_ratio >= GAP_MIN,
            singular_values,
        }
    }

    /// Recount from the stored singular values at another threshold.
    pub fn defect_at(&self, tol: f64) -> i64 {
        let (rank, _) = rank_and_gap(&self.singular_values, tol);
        (self.n * self.n - rank) as i64 - (2 * self.n as i64 - 1)
    }

    /// Number of singular values below `tol * sigma_max`, counting the
    /// structural zeros of a wide system.
    pub fn small_count(&self, tol: f64) -> usize {
        let (rank, _) = rank_and_gap(&self.singular_values, tol);
        self.n * self.n - rank
    }
}

fn rank_and_gap(sv: &[f64], tol: f64) -> (usize, f64) {
    let smax = sv.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return (0, f64::INFINITY);
    }
    let rank = sv.iter().take_while(|&&s| s > tol * smax).count();
    let dropped = sv.get(rank).copied().unwrap_or(0.0);
    let gap = if dropped == 0.0 { f64::INFINITY } else { sv[rank - 1] / dropped };
    (rank, gap)
}

/// Real coefficient matrix of the linearized unitarity conditions, one real
/// and one imaginary row per column pair `a < b`, unknown `R_kj` at `k*n + j`.
pub fn defect_system(h: &Matrix) -> DMatrix<f64> {
    let n = h.n();
    let pairs = n * (n - 1) / 2;
    let mut sys = DMatrix::<f64>::zeros(2 * pairs, n * n);
    let mut row = 0;
    for a in 0..n {
        for b in a + 1..n {
            for k in 0..n {
                let c = h[(k, a)].conj() * h[(k, b)];
                sys[(row, k * n + b)] += c.re;
                sys[(row, k * n + a)] -= c.re;
                sys[(row + 1, k * n + b)] += c.im;
                sys[(row + 1, k * n + a)] -= c.im;
            }
            row += 2;
        }
    }
    sys
}

/// Entries share one modulus `m` and `H / m` is Hadamard at `1e-6`.
fn normalized(h: &Matrix) -> Result<Matrix> {
    let m = h[(0, 0)].norm();
    if !(m.is_finite() && m > 0.0) {
        return Err(invalid("defect needs nonzero finite entries"));
    }
    let scaled = h.scale_real(1.0 / m);
    if !is_hadamard(&scaled, INPUT_TOL) {
        return Err(invalid(format!(
            "defect needs a Hadamard matrix (or a unitary with entries of equal modulus); \
             Hadamard residual {:.3e}",
            scaled.hadamard_error()
        )));
    }
    Ok(scaled)
}

/// Defect with rank threshold `tol * sigma_max`.
pub fn defect(h: &Matrix, tol: f64) -> Result<DefectReport> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(invalid(format!("rank tolerance must lie in (0, 1), got {tol}")));
    }
    let h = normalized(h)?;
    let n = h.n();
    if n == 1 {
        return Ok(DefectReport::from_singular_values(1, Vec::new(), tol));
    }
    let mut sv: Vec<f64> = defect_system(&h).singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(DefectReport::from_singular_values(n, sv, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{fourier, kron};
    use crate::orbits::special;

    fn d(h: &Matrix) -> i64 {
        let r = defect(h, DEFAULT_RANK_TOL).unwrap();
        assert!(r.reliable, "gap {}", r.gap_ratio);
        r.defect
    }

    #[test]
    fn fourier_defects() {
        // prime orders are isolated
        assert_eq!(d(&fourier(2).unwrap()), 0);
        assert_eq!(d(&fourier(3).unwrap()), 0);
        assert_eq!(d(&fourier(5).unwrap()), 0);
        // sum over i of gcd(i, N), minus 2N - 1
        assert_eq!(d(&fourier(4).unwrap()), 1);
        assert_eq!(d(&fourier(6).unwrap()), 4);
        assert_eq!(d(&fourier(9).unwrap()), 4);
        let f3 = fourier(3).unwrap();
        assert_eq!(d(&kron(&f3, &f3)), 16);
        assert_eq!(d(&fourier(1).unwrap()), 0);
    }

    #[test]
    fn named_defects() {
        assert_eq!(d(&special("C3xC3").unwrap()), 16);
        assert_eq!(d(&special("BC9AcapB").unwrap()), 12);
        assert_eq!(d(&special("BC9Ab").unwrap()), 10);
        assert_eq!(d(&special("BC9Ab_dagger").unwrap()), 10);
    }

    #[test]
    fn system_shape() {
        let h = fourier(9).unwrap();
        let s = defect_system(&h);
        assert_eq!((s.nrows(), s.ncols()), (72, 81));
        // row- and column-constant perturbations are in the kernel
        let mut r = nalgebra::DVector::<f64>::zeros(81);
        for k in 0..9 {
            r[k * 9 + 4] = 1.0;
        }
        assert!((&s * &r).amax() < 1e-12);
    }

    #[test]
    fn unitary_scaling_is_accepted_and_junk_rejected() {
        let f = fourier(3).unwrap().scale_real(1.0 / 3f64.sqrt());
        assert_eq!(defect(&f, DEFAULT_RANK_TOL).unwrap().defect, 0);
        let ones = Matrix::from_fn(2, |_, _| crate::matrix::ONE);
        assert!(defect(&ones, DEFAULT_RANK_TOL).is_err());
        assert!(defect(&fourier(2).unwrap(), 0.0).is_err());
    }

    #[test]
    fn report_json_and_recount() {
        let r = defect(&fourier(4).unwrap(), DEFAULT_RANK_TOL).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["defect"], 1);
        assert_eq!(v["n"], 4);
        assert_eq!(v["singular_values"].as_array().unwrap().len(), 12);
        assert_eq!(r.defect_at(1e-10), 1);
    }
}
