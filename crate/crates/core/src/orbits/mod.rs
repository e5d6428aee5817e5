//! Parametrized families and named matrices of orders 4 and 9.
//!
//! The centre of the module is the symmetric BCCB form `BC9(x, y, u, w)`:
//!
//! ```text
//!     ( A   B   B^T )        A = circ(1, x, x)
//! H = ( B^T A   B   )        B = circ(y, u, w)
//!     ( B   B^T A   )
//! ```
//!
//! It is Hadamard exactly when `x + y + u + w = 1` (a two-parameter orbit
//! addressed through `zeta`) or when two of the parameters equal `omega` and
//! the other two `omega^2`.

mod families;
mod special;
mod witness;
mod zeta;

pub use families::{backelin, bc9a, bc9a_params, bc9b, bc9b_params, fourier9, BackelinParams, FourierParams};
pub use special::{f4_bccb, f4_reducible, special, SpecialMatrix};
pub use witness::{apply_param_permutation, param_permutation_witness, PermutationWitness};
pub use zeta::{in_lens, params_to_zeta, zeta_to_params, Sign, ZetaPoint, LENS_TOL};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::matrix::{omega, Matrix, UnimodularScalar, ONE};

/// The four unimodular parameters of the BCCB form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bc9Params {
    pub x: UnimodularScalar,
    pub y: UnimodularScalar,
    pub u: UnimodularScalar,
    pub w: UnimodularScalar,
}

impl Bc9Params {
    pub fn new(x: UnimodularScalar, y: UnimodularScalar, u: UnimodularScalar, w: UnimodularScalar) -> Self {
        Bc9Params { x, y, u, w }
    }

    /// Validating constructor from raw complex values.
    pub fn from_complex(v: [Complex64; 4]) -> Result<Self> {
        Ok(Bc9Params {
            x: UnimodularScalar::new(v[0])?,
            y: UnimodularScalar::new(v[1])?,
            u: UnimodularScalar::new(v[2])?,
            w: UnimodularScalar::new(v[3])?,
        })
    }

    pub fn as_array(&self) -> [UnimodularScalar; 4] {
        [self.x, self.y, self.u, self.w]
    }

    pub fn values(&self) -> [Complex64; 4] {
        self.as_array().map(UnimodularScalar::value)
    }

    pub fn from_array(a: [UnimodularScalar; 4]) -> Self {
        Bc9Params::new(a[0], a[1], a[2], a[3])
    }

    /// `x + y + u + w`, always recomputed.
    pub fn sigma(&self) -> Complex64 {
        self.values().iter().sum()
    }

    /// `out[k] = self[perm[k]]` in the order `(x, y, u, w)`.
    pub fn permuted(&self, perm: [usize; 4]) -> Self {
        let a = self.as_array();
        Bc9Params::from_array(perm.map(|k| a[k]))
    }

    pub fn conj(&self) -> Self {
        Bc9Params::from_array(self.as_array().map(UnimodularScalar::conj))
    }
}

// Symbol layout of the 9x9 form: 0 -> 1, 1 -> x, 2 -> y, 3 -> u, 4 -> w.
const BC9_LAYOUT: [[u8; 9]; 9] = [
    [0, 1, 1, 2, 3, 4, 2, 4, 3],
    [1, 0, 1, 4, 2, 3, 3, 2, 4],
    [1, 1, 0, 3, 4, 2, 4, 3, 2],
    [2, 4, 3, 0, 1, 1, 2, 3, 4],
    [3, 2, 4, 1, 0, 1, 4, 2, 3],
    [4, 3, 2, 1, 1, 0, 3, 4, 2],
    [2, 3, 4, 2, 4, 3, 0, 1, 1],
    [4, 2, 3, 3, 2, 4, 1, 0, 1],
    [3, 4, 2, 4, 3, 2, 1, 1, 0],
];

/// The 9x9 symmetric BCCB matrix. Entries are copies of the four parameter
/// values, so the result is symmetric bit-for-bit with a literal unit diagonal.
pub fn bc9_matrix(p: &Bc9Params) -> Matrix {
    let sym = [ONE, p.x.value(), p.y.value(), p.u.value(), p.w.value()];
    Matrix::from_fn(9, |i, j| sym[BC9_LAYOUT[i][j] as usize])
}

/// Eigenvalues in the order
/// `(1+2s, 1-s+3y, 1-s+3y, 1-s+3x, 1-s+3w, 1-s+3u, 1-s+3x, 1-s+3u, 1-s+3w)`
/// with `s = x + y + u + w`. The eigenvectors are the columns of
/// `(F3 (x) F3)^dagger / 3`.
pub fn bc9_eigenvalues(p: &Bc9Params) -> [Complex64; 9] {
    let s = p.sigma();
    let base = ONE - s;
    let [x, y, u, w] = p.values();
    let e = |z: Complex64| base + 3.0 * z;
    [ONE + 2.0 * s, e(y), e(y), e(x), e(w), e(u), e(x), e(u), e(w)]
}

/// Which branch of the Hadamard classification a parameter set falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Bc9Class {
    /// `x + y + u + w = 1`: a point of the two-parameter orbit.
    SigmaOne,
    /// Two parameters equal `omega`, two equal `omega^2`; `sigma = -2`.
    SigmaMinusTwo,
    NotHadamard,
}

pub fn classify_bc9(p: &Bc9Params, tol: f64) -> Bc9Class {
    if (p.sigma() - ONE).norm() <= tol {
        return Bc9Class::SigmaOne;
    }
    let w = omega();
    let w2 = w * w;
    let vals = p.values();
    let near_w = vals.iter().filter(|z| (*z - w).norm() <= tol).count();
    let near_w2 = vals.iter().filter(|z| (*z - w2).norm() <= tol).count();
    if near_w == 2 && near_w2 == 2 {
        Bc9Class::SigmaMinusTwo
    } else {
        Bc9Class::NotHadamard
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{bccb, circulant, fourier, is_hadamard, kron, DEFAULT_TOL};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn u(z: Complex64) -> UnimodularScalar {
        UnimodularScalar::new(z).unwrap()
    }

    fn params(v: [Complex64; 4]) -> Bc9Params {
        Bc9Params::from_complex(v).unwrap()
    }

    fn random_params(rng: &mut impl Rng) -> Bc9Params {
        Bc9Params::from_array(std::array::from_fn(|_| UnimodularScalar::from_turns(rng.random::<f64>())))
    }

    #[test]
    fn layout_matches_block_construction() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let p = random_params(&mut rng);
            let [x, y, uu, w] = p.values();
            let a = circulant(&[ONE, x, x]).unwrap();
            let b = circulant(&[y, uu, w]).unwrap();
            let h = bccb(&[a, b.clone(), b.transpose()]).unwrap();
            assert_eq!(h, bc9_matrix(&p));
        }
    }

    #[test]
    fn structure_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let p = random_params(&mut rng);
        let h = bc9_matrix(&p);
        assert!(h.is_symmetric_exact());
        assert!(h.diag().iter().all(|z| *z == ONE));
    }

    #[test]
    fn all_ones_is_not_hadamard() {
        let p = Bc9Params::from_array([UnimodularScalar::ONE; 4]);
        assert!(!is_hadamard(&bc9_matrix(&p), DEFAULT_TOL));
        assert_eq!(classify_bc9(&p, DEFAULT_TOL), Bc9Class::NotHadamard);
    }

    #[test]
    fn sigma_minus_two_point_is_c3_kron_c3() {
        let w = omega();
        let p = params([w, w, w * w, w * w]);
        let c3 = circulant(&[ONE, w, w]).unwrap();
        assert!(bc9_matrix(&p).approx_eq(&kron(&c3, &c3), 1e-15));
        assert_eq!(classify_bc9(&p, DEFAULT_TOL), Bc9Class::SigmaMinusTwo);
        let q = params([w, w * w, w, w * w]);
        assert_eq!(classify_bc9(&q, DEFAULT_TOL), Bc9Class::SigmaMinusTwo);
    }

    #[test]
    fn sigma_one_family_member() {
        let w = omega();
        let p = params([ONE, ONE, w, w * w]);
        assert_eq!(classify_bc9(&p, DEFAULT_TOL), Bc9Class::SigmaOne);
        assert!(is_hadamard(&bc9_matrix(&p), DEFAULT_TOL));
    }

    #[test]
    fn eigenvalue_closed_forms() {
        let w = omega();
        let p = params([ONE, ONE, w, w * w]);
        let (x, y, uu, ww) = (ONE, ONE, w, w * w);
        let expected = [ONE, y, y, x, ww, uu, x, uu, ww].map(|z| 3.0 * z);
        for (a, b) in bc9_eigenvalues(&p).iter().zip(&expected) {
            assert!((a - b).norm() < 1e-14);
        }
        let q = params([w, w, w * w, w * w]);
        let (x, y, uu, ww) = (w, w, w * w, w * w);
        let expected =
            [-ONE, ONE + y, ONE + y, ONE + x, ONE + ww, ONE + uu, ONE + x, ONE + uu, ONE + ww].map(|z| 3.0 * z);
        for (a, b) in bc9_eigenvalues(&q).iter().zip(&expected) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn eigenvalues_match_fourier_conjugation() {
        let f = fourier(3).unwrap();
        let ff = kron(&f, &f);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..50 {
            let p = random_params(&mut rng);
            let lam = ff.matmul(&bc9_matrix(&p)).matmul(&ff.adjoint()).scale_real(1.0 / 9.0);
            let eig = bc9_eigenvalues(&p);
            for i in 0..9 {
                for j in 0..9 {
                    let want = if i == j { eig[i] } else { Complex64::new(0.0, 0.0) };
                    assert!((lam[(i, j)] - want).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn any_two_forms_commute() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..20 {
            let a = bc9_matrix(&random_params(&mut rng));
            let b = bc9_matrix(&random_params(&mut rng));
            assert!(a.matmul(&b).max_abs_diff(&b.matmul(&a)) <= 1e-11);
        }
    }

    #[test]
    fn classification_agrees_with_hadamard_test_on_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..2000 {
            let p = random_params(&mut rng);
            let had = is_hadamard(&bc9_matrix(&p), DEFAULT_TOL);
            let class = classify_bc9(&p, DEFAULT_TOL);
            assert_eq!(had, class != Bc9Class::NotHadamard);
            assert!(!had);
        }
    }

    #[test]
    fn permuted_reorders_parameters() {
        let w = omega();
        let p = params([ONE, -ONE, w, w * w]);
        let q = p.permuted([3, 2, 1, 0]);
        assert_eq!(q.values(), [w * w, w, -ONE, ONE]);
        assert_eq!(u(ONE), UnimodularScalar::ONE);
    }
}
