//! Dense complex matrices and the structured constructors everything else is
//! built from: roots of unity, Fourier, circulant, Kronecker and BCCB
//! matrices, dephasing and the Hadamard test.
//!
//! Indices are 0-based. The Fourier exponent convention `(i-1)(j-1)` of the
//! usual 1-based notation therefore becomes `i*j` here.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Index, IndexMut, Mul, Neg};

use num_complex::Complex64;

use crate::error::{invalid, Result};

/// Rectangular complex scalar. Comparisons between scalars always go through
/// an explicit tolerance.
pub type ComplexScalar = Complex64;

/// Default tolerance for Hadamard and unimodularity checks.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Allowed deviation of `|z|` from 1 when building a [`UnimodularScalar`].
pub const UNIMODULAR_TOL: f64 = 1e-12;

pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A complex number of modulus one.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnimodularScalar(Complex64);

impl UnimodularScalar {
    pub const ONE: UnimodularScalar = UnimodularScalar(ONE);

    pub fn new(value: Complex64) -> Result<Self> {
        if !value.re.is_finite() || !value.im.is_finite() {
            return Err(invalid(format!("non-finite scalar {value}")));
        }
        let dev = (value.norm() - 1.0).abs();
        if dev > UNIMODULAR_TOL {
            return Err(invalid(format!("scalar {value} is not unimodular (||z|-1| = {dev:.3e})")));
        }
        Ok(UnimodularScalar(value))
    }

    /// `exp(i * angle)`.
    pub fn from_angle(angle: f64) -> Self {
        UnimodularScalar(Complex64::from_polar(1.0, angle))
    }

    /// `exp(2 pi i * turns)`.
    pub fn from_turns(turns: f64) -> Self {
        Self::from_angle(TAU * turns)
    }

    pub(crate) fn new_unchecked(value: Complex64) -> Self {
        UnimodularScalar(value)
    }

    #[inline]
    pub fn value(self) -> Complex64 {
        self.0
    }

    pub fn conj(self) -> Self {
        UnimodularScalar(self.0.conj())
    }

    pub fn powi(self, k: i32) -> Self {
        UnimodularScalar(self.0.powi(k))
    }

    /// Principal argument in `(-pi, pi]`.
    pub fn arg(self) -> f64 {
        self.0.arg()
    }

    pub fn approx_eq(self, other: Self, tol: f64) -> bool {
        (self.0 - other.0).norm() <= tol
    }
}

impl Mul for UnimodularScalar {
    type Output = UnimodularScalar;
    fn mul(self, rhs: Self) -> Self {
        UnimodularScalar(self.0 * rhs.0)
    }
}

impl Neg for UnimodularScalar {
    type Output = UnimodularScalar;
    fn neg(self) -> Self {
        UnimodularScalar(-self.0)
    }
}

impl From<UnimodularScalar> for Complex64 {
    fn from(u: UnimodularScalar) -> Self {
        u.0
    }
}

impl fmt::Display for UnimodularScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `exp(2 pi i k / q)` with `k` reduced mod `q`.
pub fn root_of_unity(q: u32, k: i64) -> Result<UnimodularScalar> {
    if q == 0 {
        return Err(invalid("root of unity order q must be positive"));
    }
    Ok(unit_root(q, k))
}

pub(crate) fn unit_root(q: u32, k: i64) -> UnimodularScalar {
    let k = k.rem_euclid(q as i64);
    if k == 0 {
        return UnimodularScalar::ONE;
    }
    // exact values for the half and quarter turns
    if 2 * k == q as i64 {
        return UnimodularScalar(c(-1.0, 0.0));
    }
    if 4 * k == q as i64 {
        return UnimodularScalar(c(0.0, 1.0));
    }
    if 4 * k == 3 * q as i64 {
        return UnimodularScalar(c(0.0, -1.0));
    }
    UnimodularScalar::from_angle(TAU * k as f64 / q as f64)
}

/// The cube root of unity `exp(2 pi i / 3)`.
pub fn omega() -> Complex64 {
    unit_root(3, 1).value()
}

/// Dense square complex matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn new(n: usize, data: Vec<Complex64>) -> Result<Self> {
        if n == 0 {
            return Err(invalid("matrix order must be at least 1"));
        }
        if data.len() != n * n {
            return Err(invalid(format!("expected {} entries for order {n}, got {}", n * n, data.len())));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(invalid("matrix entries must be finite"));
        }
        Ok(Matrix { n, data })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(invalid("matrix rows must all have length equal to the row count"));
        }
        Matrix::new(n, rows.concat())
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        assert!(n >= 1, "matrix order must be at least 1");
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn diagonal(diag: &[Complex64]) -> Self {
        Matrix::from_fn(diag.len(), |i, j| if i == j { diag[i] } else { ZERO })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    pub fn diag(&self) -> Vec<Complex64> {
        (0..self.n).map(|i| self[(i, i)]).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Matrix {
        Matrix { n: self.n, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn adjoint(&self) -> Matrix {
        Matrix::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: Complex64) -> Matrix {
        Matrix { n: self.n, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn scale_real(&self, s: f64) -> Matrix {
        self.scale(c(s, 0.0))
    }

    pub fn matmul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "matrix orders differ");
        let n = self.n;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let rrow = &rhs.data[k * n..(k + 1) * n];
                let orow = &mut out[i * n..(i + 1) * n];
                for (o, b) in orow.iter_mut().zip(rrow) {
                    *o += a * b;
                }
            }
        }
        Matrix { n, data: out }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "matrix orders differ");
        Matrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }

    /// Max-norm of the entrywise difference. Panics on order mismatch.
    pub fn max_abs_diff(&self, rhs: &Matrix) -> f64 {
        assert_eq!(self.n, rhs.n, "matrix orders differ");
        self.data.iter().zip(&rhs.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, rhs: &Matrix, tol: f64) -> bool {
        self.n == rhs.n && self.max_abs_diff(rhs) <= tol
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `out[i][j] = self[rows[i]][cols[j]]`.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        assert_eq!(rows.len(), cols.len());
        Matrix::from_fn(rows.len(), |i, j| self[(rows[i], cols[j])])
    }

    pub fn is_symmetric_exact(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// `max |(H^dagger H - n I)_ij| / n`, the scale-free Hadamard residual.
    pub fn hadamard_error(&self) -> f64 {
        let n = self.n as f64;
        self.adjoint().matmul(self).max_abs_diff(&Matrix::identity(self.n).scale_real(n)) / n
    }

    /// `max |(U^dagger U - I)_ij|`.
    pub fn unitarity_error(&self) -> f64 {
        self.adjoint().matmul(self).max_abs_diff(&Matrix::identity(self.n))
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.matmul(rhs)
    }
}

/// `(F_n)_ij = exp(2 pi i * i * j / n)`.
pub fn fourier(n: usize) -> Result<Matrix> {
    if n == 0 {
        return Err(invalid("Fourier order must be at least 1"));
    }
    let q = n as u32;
    Ok(Matrix::from_fn(n, |i, j| unit_root(q, (i * j) as i64).value()))
}

/// Circulant matrix with entry `(i, j) = first_row[(j - i) mod n]`.
pub fn circulant(first_row: &[Complex64]) -> Result<Matrix> {
    let n = first_row.len();
    if n == 0 {
        return Err(invalid("circulant first row must be nonempty"));
    }
    Ok(Matrix::from_fn(n, |i, j| first_row[(j + n - i) % n]))
}

/// True iff every row is the previous row shifted one step right, within `tol`.
pub fn is_circulant(m: &Matrix, tol: f64) -> bool {
    let n = m.n();
    (1..n).all(|i| (0..n).all(|j| (m[(i, j)] - m[(0, (j + n - i) % n)]).norm() <= tol))
}

/// Kronecker product; block `(i, j)` of the result is `a_ij * b`.
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (na, nb) = (a.n(), b.n());
    Matrix::from_fn(na * nb, |i, j| a[(i / nb, j / nb)] * b[(i % nb, j % nb)])
}

/// Block circulant matrix whose first block row is `blocks`; every block
/// must itself be circulant.
pub fn bccb(blocks: &[Matrix]) -> Result<Matrix> {
    let n1 = blocks.len();
    if n1 == 0 {
        return Err(invalid("bccb needs at least one block"));
    }
    let n2 = blocks[0].n();
    if blocks.iter().any(|b| b.n() != n2) {
        return Err(invalid("bccb blocks must share one order"));
    }
    for (k, b) in blocks.iter().enumerate() {
        if !is_circulant(b, 1e-12) {
            return Err(invalid(format!("bccb block {k} is not circulant")));
        }
    }
    Ok(Matrix::from_fn(n1 * n2, |i, j| {
        let (bi, bj) = (i / n2, j / n2);
        blocks[(bj + n1 - bi) % n1][(i % n2, j % n2)]
    }))
}

/// Equivalent matrix with first row and column exactly one.
///
/// Entry `(i, j)` becomes `h_ij * h_00 / (h_i0 * h_0j)`; the first row and
/// column are written as literal ones rather than computed.
pub fn dephase(h: &Matrix) -> Result<Matrix> {
    dephase_at(h, 0, 0)
}

/// Dephase with respect to row `r` and column `c`: the result has row `r`
/// and column `c` equal to one and keeps the original index order.
pub fn dephase_at(h: &Matrix, r: usize, col: usize) -> Result<Matrix> {
    let n = h.n();
    if r >= n || col >= n {
        return Err(invalid("dephasing pivot out of range"));
    }
    let pivot_row = h.row(r);
    let pivot_col = h.column(col);
    if pivot_row.iter().chain(&pivot_col).any(|z| z.norm() == 0.0) {
        return Err(invalid("cannot dephase: zero entry in pivot row or column"));
    }
    let corner = h[(r, col)];
    Ok(Matrix::from_fn(
        n,
        |i, j| {
            if i == r || j == col {
                ONE
            } else {
                h[(i, j)] * corner / (pivot_col[i] * pivot_row[j])
            }
        },
    ))
}

/// All entries within `tol` of modulus one and `||H^dagger H - n I||_max <= n tol`.
pub fn is_hadamard(h: &Matrix, tol: f64) -> bool {
    if h.entries().iter().any(|z| (z.norm() - 1.0).abs() > tol) {
        return false;
    }
    let n = h.n();
    let gram = h.adjoint().matmul(h);
    gram.max_abs_diff(&Matrix::identity(n).scale_real(n as f64)) <= n as f64 * tol
}
