//! The affine suborbits of the BCCB form, the block Fourier orbit of order 9
//! and the circulant Backelin orbit.

use num_complex::Complex64;

use super::{bc9_matrix, Bc9Params};
use crate::matrix::{fourier, omega, unit_root, Matrix, UnimodularScalar, ONE};

fn w3() -> UnimodularScalar {
    unit_root(3, 1)
}

/// `(mu, -mu, -omega, -omega^2)`.
pub fn bc9a_params(mu: UnimodularScalar) -> Bc9Params {
    let w = w3();
    Bc9Params::new(mu, -mu, -w, -(w * w))
}

pub fn bc9a(mu: UnimodularScalar) -> Matrix {
    bc9_matrix(&bc9a_params(mu))
}

/// `(1, xi, omega xi, omega^2 xi)`.
pub fn bc9b_params(xi: UnimodularScalar) -> Bc9Params {
    let w = w3();
    Bc9Params::new(UnimodularScalar::ONE, xi, w * xi, w * w * xi)
}

pub fn bc9b(xi: UnimodularScalar) -> Matrix {
    bc9_matrix(&bc9b_params(xi))
}

/// Enphasing parameters of the block Fourier form
/// `( F3  D1 F3  D2 F3 ; F3  w D1 F3  w^2 D2 F3 ; F3  w^2 D1 F3  w D2 F3 )`
/// with `D1 = diag(1, x1, x2)` and `D2 = diag(1, x3, x4)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourierParams {
    pub x1: UnimodularScalar,
    pub x2: UnimodularScalar,
    pub x3: UnimodularScalar,
    pub x4: UnimodularScalar,
}

impl FourierParams {
    pub fn new(x1: UnimodularScalar, x2: UnimodularScalar, x3: UnimodularScalar, x4: UnimodularScalar) -> Self {
        FourierParams { x1, x2, x3, x4 }
    }

    pub fn identity() -> Self {
        let one = UnimodularScalar::ONE;
        FourierParams::new(one, one, one, one)
    }

    /// The catalogue phases `(a, b, c, d)`:
    /// `x1 = w9 e^{ia}`, `x2 = w9^2 e^{ic}`, `x3 = w9^2 e^{ib}`, `x4 = w9^4 e^{id}`.
    pub fn from_phases(a: f64, b: f64, c: f64, d: f64) -> Self {
        let w9 = |k| unit_root(9, k);
        FourierParams::new(
            w9(1) * UnimodularScalar::from_angle(a),
            w9(2) * UnimodularScalar::from_angle(c),
            w9(2) * UnimodularScalar::from_angle(b),
            w9(4) * UnimodularScalar::from_angle(d),
        )
    }

    pub fn as_array(&self) -> [UnimodularScalar; 4] {
        [self.x1, self.x2, self.x3, self.x4]
    }
}

pub fn fourier9(fp: &FourierParams) -> Matrix {
    let f3 = fourier(3).expect("order 3");
    let deltas: [[Complex64; 3]; 3] =
        [[ONE, ONE, ONE], [ONE, fp.x1.value(), fp.x2.value()], [ONE, fp.x3.value(), fp.x4.value()]];
    // block (I, J) = F3[I][J] * D_J * F3
    Matrix::from_fn(9, |i, j| {
        let (bi, bj) = (i / 3, j / 3);
        let (r, s) = (i % 3, j % 3);
        f3[(bi, bj)] * deltas[bj][r] * f3[(r, s)]
    })
}

/// Parameters of the circulant Backelin orbit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BackelinParams {
    pub u: UnimodularScalar,
    pub v: UnimodularScalar,
}

impl BackelinParams {
    pub fn new(u: UnimodularScalar, v: UnimodularScalar) -> Self {
        BackelinParams { u, v }
    }
}

/// `circ(1, a, b, 1, w a, w^2 b, 1, w^2 a, w b)` with `a = conj(u)`, `b = conj(v)`.
///
/// The conjugated parameters put the defect-6 suborbits at
/// `v = w9^{1+3n} u^2`, `u = w9^{1+3n} v^2` and `uv = w9^{1+3n}`.
pub fn backelin(bp: &BackelinParams) -> Matrix {
    let a = bp.u.value().conj();
    let b = bp.v.value().conj();
    let w = omega();
    let w2 = w * w;
    let row = [ONE, a, b, ONE, w * a, w2 * b, ONE, w2 * a, w * b];
    crate::matrix::circulant(&row).expect("nonempty row")
}
