//! Named matrices: the low-order seeds and the special points of the order-9
//! BCCB orbit.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::{bc9_matrix, Bc9Params};
use crate::error::{invalid, Error, Result};
use crate::matrix::{bccb, circulant, fourier, kron, omega, unit_root, Matrix, UnimodularScalar, ONE};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpecialMatrix {
    F2,
    C2,
    F3,
    C3,
    /// BCCB form of the order-4 Fourier orbit at phase `a`.
    F4 {
        a: f64,
    },
    C3xC3,
    F3xF3,
    Bc9AcapB,
    Bc9Ab,
    Bc9AbDagger,
    W9aPoint,
    B90Point,
}

impl SpecialMatrix {
    pub const NAMES: [&'static str; 12] = [
        "F2",
        "C2",
        "F3",
        "C3",
        "F4",
        "C3xC3",
        "F3xF3",
        "BC9AcapB",
        "BC9Ab",
        "BC9Ab_dagger",
        "W9A_point",
        "B9_0_point",
    ];

    pub fn all_default() -> Vec<SpecialMatrix> {
        Self::NAMES.iter().map(|n| n.parse().unwrap()).collect()
    }

    pub fn matrix(&self) -> Matrix {
        let w = omega();
        match *self {
            SpecialMatrix::F2 => fourier(2).unwrap(),
            SpecialMatrix::C2 => circulant(&[ONE, Complex64::i()]).unwrap(),
            SpecialMatrix::F3 => fourier(3).unwrap(),
            SpecialMatrix::C3 => c3(),
            SpecialMatrix::F4 { a } => {
                let x = Complex64::i() * Complex64::from_polar(1.0, a);
                f4_bccb(UnimodularScalar::new_unchecked(x.conj().sqrt()))
            }
            SpecialMatrix::C3xC3 => kron(&c3(), &c3()),
            SpecialMatrix::F3xF3 => {
                let f3 = fourier(3).unwrap();
                kron(&f3, &f3)
            }
            SpecialMatrix::Bc9AcapB => {
                let j3 = circulant(&[ONE, ONE, ONE]).unwrap();
                let b = circulant(&[ONE, w, w * w]).unwrap().scale_real(-1.0);
                bccb(&[j3, b.clone(), b.transpose()]).unwrap()
            }
            SpecialMatrix::Bc9Ab => bc9ab(),
            SpecialMatrix::Bc9AbDagger => bc9ab().adjoint(),
            SpecialMatrix::W9aPoint => {
                let tau = UnimodularScalar::new_unchecked(Complex64::new(0.25, 15f64.sqrt() / 4.0));
                bc9_matrix(&Bc9Params::new(tau, tau.conj(), tau, tau.conj()))
            }
            SpecialMatrix::B90Point => {
                let e = |k| unit_root(10, k);
                bc9_matrix(&Bc9Params::new(e(1), e(3), e(7), e(9)))
            }
        }
    }
}

fn c3() -> Matrix {
    let w = omega();
    circulant(&[ONE, w, w]).unwrap()
}

/// Blocks `C3` on the diagonal and `-w^2 C3^dagger` elsewhere.
fn bc9ab() -> Matrix {
    let w = omega();
    let off = c3().adjoint().scale(-w * w);
    bccb(&[c3(), off.clone(), off]).unwrap()
}

/// `circ(1, t, -1, t)`; Hadamard for every unimodular `t`.
pub fn f4_bccb(t: UnimodularScalar) -> Matrix {
    let t = t.value();
    circulant(&[ONE, t, -ONE, t]).unwrap()
}

/// `( F2  D F2 ; F2  -D F2 )` with `D = diag(1, x)`.
pub fn f4_reducible(x: UnimodularScalar) -> Matrix {
    let f2 = fourier(2).unwrap();
    let d = [ONE, x.value()];
    Matrix::from_fn(4, |i, j| {
        let (bi, bj) = (i / 2, j / 2);
        let (r, s) = (i % 2, j % 2);
        let base = f2[(r, s)];
        match (bi, bj) {
            (_, 0) => base,
            (0, 1) => d[r] * base,
            _ => -d[r] * base,
        }
    })
}

impl FromStr for SpecialMatrix {
    type Err = Error;

    /// Names as in [`SpecialMatrix::NAMES`]; `F4` optionally takes its phase
    /// as `F4(a)`.
    fn from_str(s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix("F4") {
            if rest.is_empty() {
                return Ok(SpecialMatrix::F4 { a: 0.0 });
            }
            let inner = rest
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| invalid(format!("bad F4 parameter syntax {s:?}")))?;
            let a: f64 = inner.trim().parse().map_err(|_| invalid(format!("bad F4 phase {inner:?}")))?;
            return Ok(SpecialMatrix::F4 { a });
        }
        Ok(match s {
            "F2" => SpecialMatrix::F2,
            "C2" => SpecialMatrix::C2,
            "F3" => SpecialMatrix::F3,
            "C3" => SpecialMatrix::C3,
            "C3xC3" => SpecialMatrix::C3xC3,
            "F3xF3" => SpecialMatrix::F3xF3,
            "BC9AcapB" => SpecialMatrix::Bc9AcapB,
            "BC9Ab" => SpecialMatrix::Bc9Ab,
            "BC9Ab_dagger" => SpecialMatrix::Bc9AbDagger,
            "W9A_point" => SpecialMatrix::W9aPoint,
            "B9_0_point" => SpecialMatrix::B90Point,
            _ => {
                return Err(invalid(format!(
                    "unknown special matrix {s:?}; expected one of {}",
                    SpecialMatrix::NAMES.join(", ")
                )))
            }
        })
    }
}

impl fmt::Display for SpecialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecialMatrix::F4 { a } => write!(f, "F4({a})"),
            other => {
                let idx = match other {
                    SpecialMatrix::F2 => 0,
                    SpecialMatrix::C2 => 1,
                    SpecialMatrix::F3 => 2,
                    SpecialMatrix::C3 => 3,
                    SpecialMatrix::C3xC3 => 5,
                    SpecialMatrix::F3xF3 => 6,
                    SpecialMatrix::Bc9AcapB => 7,
                    SpecialMatrix::Bc9Ab => 8,
                    SpecialMatrix::Bc9AbDagger => 9,
                    SpecialMatrix::W9aPoint => 10,
                    SpecialMatrix::B90Point => 11,
                    SpecialMatrix::F4 { .. } => unreachable!(),
                };
                f.write_str(SpecialMatrix::NAMES[idx])
            }
        }
    }
}

/// Look up a named matrix.
pub fn special(name: &str) -> Result<Matrix> {
    Ok(name.parse::<SpecialMatrix>()?.matrix())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{is_hadamard, DEFAULT_TOL};

    fn bc9(v: [Complex64; 4]) -> Matrix {
        bc9_matrix(&Bc9Params::from_complex(v).unwrap())
    }

    #[test]
    fn every_name_round_trips_and_is_hadamard() {
        for s in SpecialMatrix::all_default() {
            let again: SpecialMatrix = s.to_string().parse().unwrap();
            assert_eq!(again, s);
            assert!(is_hadamard(&s.matrix(), DEFAULT_TOL), "{s}");
        }
        assert!(special("nope").is_err());
        assert!(special("F4(x)").is_err());
        assert!(is_hadamard(&special("F4(0.7)").unwrap(), DEFAULT_TOL));
    }

    #[test]
    fn intersection_point_matches_parameters() {
        let w = omega();
        let m = special("BC9AcapB").unwrap();
        assert!(m.approx_eq(&bc9([ONE, -ONE, -w, -w * w]), 1e-15));
    }

    #[test]
    fn boundary_points_match_parameters() {
        let w = omega();
        let ab = special("BC9Ab").unwrap();
        assert!(ab.approx_eq(&bc9([w, -w * w, -w, -w]), 1e-15));
        let abd = special("BC9Ab_dagger").unwrap();
        assert!(abd.approx_eq(&bc9([w * w, -w, -w * w, -w * w]), 1e-15));
    }

    #[test]
    fn c3_kron_c3_blocks() {
        let w = omega();
        let m = special("C3xC3").unwrap();
        let expected = bccb(&[c3(), c3().scale(w), c3().scale(w)]).unwrap();
        assert!(m.approx_eq(&expected, 1e-15));
    }

    #[test]
    fn f4_forms() {
        let t = UnimodularScalar::from_angle(0.4);
        assert!(is_hadamard(&f4_bccb(t), DEFAULT_TOL));
        let x = UnimodularScalar::from_angle(1.1);
        assert!(is_hadamard(&f4_reducible(x), DEFAULT_TOL));
        let f2 = fourier(2).unwrap();
        assert!(f4_reducible(UnimodularScalar::ONE).approx_eq(&kron(&f2, &f2), 1e-15));
        // default phase: x = i, t = sqrt(-i), t^2 x = 1
        let m = special("F4").unwrap();
        let t = m[(0, 1)];
        assert!((t * t * Complex64::i() - ONE).norm() < 1e-15);
    }
}
