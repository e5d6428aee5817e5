//! The complete set of ten mutually unbiased bases in dimension 9, built
//! from nine diagonal unitaries with entries in `{1, w, w^2}`.
//!
//! Bases are stored as unitary matrices whose columns are the basis vectors.

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::matrix::{fourier, kron, unit_root, Matrix, ONE};
use crate::orbits::{bc9_matrix, Bc9Params, Sign};

/// Exponents of `w` on the diagonals of `D1..D9`.
pub const D_EXPONENTS: [[u8; 9]; 9] = [
    [0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 2, 2, 0, 1, 0, 0, 0, 1],
    [0, 1, 1, 0, 2, 0, 0, 0, 2],
    [0, 1, 1, 1, 2, 2, 1, 2, 2],
    [0, 0, 0, 1, 0, 2, 1, 2, 0],
    [0, 2, 2, 1, 1, 2, 1, 2, 1],
    [0, 2, 2, 2, 1, 1, 2, 1, 1],
    [0, 1, 1, 2, 2, 1, 2, 1, 2],
    [0, 0, 0, 2, 0, 1, 2, 1, 0],
];

/// `MULTIPLICATION_TABLE[i-1][j-1] = k` with `Mi^dagger Mj = Mk`.
pub const MULTIPLICATION_TABLE: [[usize; 9]; 9] = [
    [1, 2, 3, 4, 5, 6, 7, 8, 9],
    [3, 1, 2, 6, 4, 5, 9, 7, 8],
    [2, 3, 1, 5, 6, 4, 8, 9, 7],
    [7, 8, 9, 1, 2, 3, 4, 5, 6],
    [9, 7, 8, 3, 1, 2, 6, 4, 5],
    [8, 9, 7, 2, 3, 1, 5, 6, 4],
    [4, 5, 6, 7, 8, 9, 1, 2, 3],
    [6, 4, 5, 9, 7, 8, 3, 1, 2],
    [5, 6, 4, 8, 9, 7, 2, 3, 1],
];

const MATCH_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct MubSet {
    pub bases: Vec<Matrix>,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MubReport {
    pub bases: usize,
    pub max_unbiasedness_error: f64,
    pub max_unitarity_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// `D1..D9`.
pub fn d_table() -> Vec<Matrix> {
    D_EXPONENTS.iter().map(|row| Matrix::diagonal(&row.map(|e| unit_root(3, e as i64).value()))).collect()
}

fn f3f3() -> Matrix {
    let f3 = fourier(3).expect("order 3");
    kron(&f3, &f3)
}

/// `B0 = I`, `Bi = D_i (F3 (x) F3) / 3`.
pub fn build_b_set() -> MubSet {
    let ff = f3f3();
    let mut bases = vec![Matrix::identity(9)];
    bases.extend(d_table().iter().map(|d| d.matmul(&ff).scale_real(1.0 / 3.0)));
    MubSet { bases, labels: (0..10).map(|i| format!("B{i}")).collect() }
}

/// `M0 = (F3 (x) F3)^dagger / 3`, `M1 = I`,
/// `Mi = (F3 (x) F3)^dagger D_i (F3 (x) F3) / 9`.
pub fn build_m_set() -> MubSet {
    let ff = f3f3();
    let ffd = ff.adjoint();
    let mut bases = vec![ffd.scale_real(1.0 / 3.0), Matrix::identity(9)];
    bases.extend(d_table()[1..].iter().map(|d| ffd.matmul(d).matmul(&ff).scale_real(1.0 / 9.0)));
    MubSet { bases, labels: (0..10).map(|i| format!("M{i}")).collect() }
}

/// Unitarity of each basis and `|<b_i, b'_j>| = 1/sqrt(N)` across bases.
pub fn verify_mub(s: &MubSet, tol: f64) -> MubReport {
    let mut max_unitarity_error: f64 = 0.0;
    let mut max_unbiasedness_error: f64 = 0.0;
    for b in &s.bases {
        let gram = b.adjoint().matmul(b);
        max_unitarity_error = max_unitarity_error.max(gram.max_abs_diff(&Matrix::identity(b.n())));
    }
    for (i, a) in s.bases.iter().enumerate() {
        let target = 1.0 / (a.n() as f64).sqrt();
        for b in &s.bases[i + 1..] {
            let overlap = a.adjoint().matmul(b);
            for z in overlap.entries() {
                max_unbiasedness_error = max_unbiasedness_error.max((z.norm() - target).abs());
            }
        }
    }
    MubReport {
        bases: s.bases.len(),
        max_unbiasedness_error,
        max_unitarity_error,
        tolerance: tol,
        pass: max_unbiasedness_error <= tol && max_unitarity_error <= tol,
    }
}

/// Computed `k` with `Mi^dagger Mj = Mk` for `i, j` in `1..=9`.
pub fn m_multiplication_table() -> Result<[[usize; 9]; 9]> {
    let m = build_m_set().bases;
    let mut table = [[0usize; 9]; 9];
    for i in 1..=9 {
        let mi_dag = m[i].adjoint();
        for j in 1..=9 {
            let prod = mi_dag.matmul(&m[j]);
            let k = (1..=9)
                .find(|&k| prod.max_abs_diff(&m[k]) <= MATCH_TOL)
                .ok_or_else(|| Error::Consistency(format!("M{i}^dagger M{j} is not in the M-set")))?;
            table[i - 1][j - 1] = k;
        }
    }
    Ok(table)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlgebraCheck {
    pub cube_is_identity: bool,
    pub commuting: bool,
    pub dagger_pairs: bool,
    pub pass: bool,
}

/// `Mi^3 = I`, `Mi Mj = Mj Mi` and `M3 = M2^dagger`, `M7 = M4^dagger`,
/// `M8 = M6^dagger`, `M9 = M5^dagger`.
pub fn m_set_algebra_check() -> AlgebraCheck {
    let m = build_m_set().bases;
    let id = Matrix::identity(9);
    let cube_is_identity = (1..=9).all(|i| m[i].matmul(&m[i]).matmul(&m[i]).max_abs_diff(&id) <= MATCH_TOL);
    let commuting = (1..=9).all(|i| (1..=9).all(|j| m[i].matmul(&m[j]).max_abs_diff(&m[j].matmul(&m[i])) <= MATCH_TOL));
    let dagger_pairs =
        [(3, 2), (7, 4), (8, 6), (9, 5)].iter().all(|&(a, b)| m[a].max_abs_diff(&m[b].adjoint()) <= MATCH_TOL);
    AlgebraCheck { cube_is_identity, commuting, dagger_pairs, pass: cube_is_identity && commuting && dagger_pairs }
}

/// Sign `s` and parameters with `s * 3 * Mi = bc9_matrix(params)`.
pub fn m_to_bc9_params(i: usize) -> Result<(Sign, Bc9Params)> {
    if !(2..=9).contains(&i) {
        return Err(invalid(format!("M-set index must lie in 2..=9, got {i}")));
    }
    let scaled = build_m_set().bases[i].scale_real(3.0);
    let corner = scaled[(0, 0)];
    let sign = if (corner - ONE).norm() <= MATCH_TOL {
        Sign::Plus
    } else if (corner + ONE).norm() <= MATCH_TOL {
        Sign::Minus
    } else {
        return Err(Error::Consistency(format!("3 M{i} has corner entry {corner}, not +-1")));
    };
    let h = scaled.scale_real(sign.value());
    let row = h.row(0);
    let params = Bc9Params::from_complex([row[1], row[3], row[4], row[5]])?;
    if bc9_matrix(&params).max_abs_diff(&h) > MATCH_TOL {
        return Err(Error::Consistency(format!("{sign}3 M{i} is not of the BCCB form")));
    }
    Ok((sign, params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::omega;
    use crate::orbits::{classify_bc9, Bc9Class};

    #[test]
    fn d_table_entries() {
        let d = d_table();
        let w = omega();
        let want = [ONE, w * w, w * w, ONE, w, ONE, ONE, ONE, w];
        for (z, e) in d[1].diag().iter().zip(&want) {
            assert!((z - e).norm() < 1e-15);
        }
        assert_eq!(d[0], Matrix::identity(9));
        for (a, b) in [(2, 1), (6, 3), (7, 5), (8, 4)] {
            assert!(d[a].approx_eq(&d[b].adjoint(), 1e-15), "D{} = D{}^dagger", a + 1, b + 1);
        }
    }

    #[test]
    fn both_sets_are_complete_mubs() {
        for s in [build_b_set(), build_m_set()] {
            let r = verify_mub(&s, 1e-12);
            assert!(r.pass, "{r:?}");
            assert_eq!(r.bases, 10);
        }
        let b = build_b_set();
        assert_eq!(b.bases[0], Matrix::identity(9));
        assert!(b.bases[1].approx_eq(&f3f3().scale_real(1.0 / 3.0), 1e-15));
    }

    #[test]
    fn duplicated_basis_fails() {
        let mut s = build_b_set();
        s.bases[3] = Matrix::identity(9);
        assert!(!verify_mub(&s, 1e-12).pass);
    }

    #[test]
    fn multiplication_table_matches() {
        assert_eq!(m_multiplication_table().unwrap(), MULTIPLICATION_TABLE);
        assert_eq!(MULTIPLICATION_TABLE[1][0], 3);
        assert_eq!(MULTIPLICATION_TABLE[4][7], 4);
    }

    #[test]
    fn algebra() {
        assert!(m_set_algebra_check().pass);
    }

    #[test]
    fn minus_m7_is_c3_kron_c3() {
        let w = omega();
        let c3 = crate::matrix::circulant(&[ONE, w, w]).unwrap();
        let m7 = &build_m_set().bases[7];
        assert!(m7.scale_real(-3.0).approx_eq(&kron(&c3, &c3), 1e-12));
    }

    #[test]
    fn parameter_table() {
        let w = omega();
        let w2 = w * w;
        let want = [
            (Sign::Plus, [ONE, w2, ONE, w]),
            (Sign::Plus, [ONE, w, ONE, w2]),
            (Sign::Minus, [w2, w2, w, w]),
            (Sign::Plus, [w, ONE, w2, ONE]),
            (Sign::Minus, [w2, w, w, w2]),
            (Sign::Minus, [w, w, w2, w2]),
            (Sign::Minus, [w, w2, w2, w]),
            (Sign::Plus, [w2, ONE, w, ONE]),
        ];
        for (i, (sign, vals)) in (2..=9).zip(want) {
            let (s, p) = m_to_bc9_params(i).unwrap();
            assert_eq!(s, sign, "M{i}");
            for (a, b) in p.values().iter().zip(&vals) {
                assert!((a - b).norm() < 1e-12, "M{i}");
            }
            assert!((p.u.value() - p.x.value().conj()).norm() < 1e-12);
            assert!((p.w.value() - p.y.value().conj()).norm() < 1e-12);
            let class = classify_bc9(&p, 1e-9);
            let expected = if sign == Sign::Plus { Bc9Class::SigmaOne } else { Bc9Class::SigmaMinusTwo };
            assert_eq!(class, expected);
        }
        assert!(m_to_bc9_params(1).is_err());
    }
}
