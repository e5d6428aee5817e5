//! JSON matrix files.
//!
//! Two encodings are accepted:
//!
//! * rectangular: `{"n": 3, "entries": [[[re, im], ...], ...]}`
//! * phase (exact): `{"n": 3, "q": 6, "log_entries": [[k, ...], ...]}` where
//!   each entry is `exp(2 pi i k / q)` with `0 <= k < q`.
//!
//! The writer uses the phase form whenever every entry lies within `1e-12` of
//! a `q`-th root of unity.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{invalid, Error, Result};
use crate::matrix::{unit_root, Matrix};

/// Entries must sit this close to a root of unity to be written in phase form.
pub const PHASE_FORM_TOL: f64 = 1e-12;

/// Largest root-of-unity order tried when the writer picks `q` itself.
pub const MAX_AUTO_Q: u32 = 72;

#[derive(Deserialize)]
#[serde(untagged)]
enum RawMatrixFile {
    Phase { n: usize, q: u32, log_entries: Vec<Vec<i64>> },
    Rect { n: usize, entries: Vec<Vec<[f64; 2]>> },
}

/// Parse either encoding.
pub fn matrix_from_json(text: &str) -> Result<Matrix> {
    let raw: RawMatrixFile = serde_json::from_str(text)?;
    match raw {
        RawMatrixFile::Rect { n, entries } => {
            check_shape(n, entries.iter().map(Vec::len), entries.len())?;
            let data = entries.into_iter().flatten().map(|[re, im]| Complex64::new(re, im)).collect();
            Matrix::new(n, data)
        }
        RawMatrixFile::Phase { n, q, log_entries } => {
            if q == 0 {
                return Err(invalid("phase-form q must be positive"));
            }
            check_shape(n, log_entries.iter().map(Vec::len), log_entries.len())?;
            let mut data = Vec::with_capacity(n * n);
            for &k in log_entries.iter().flatten() {
                if k < 0 || k >= q as i64 {
                    return Err(invalid(format!("log entry {k} outside 0..{q}")));
                }
                data.push(unit_root(q, k).value());
            }
            Matrix::new(n, data)
        }
    }
}

fn check_shape(n: usize, row_lens: impl Iterator<Item = usize>, rows: usize) -> Result<()> {
    if rows != n {
        return Err(invalid(format!("declared n = {n} but found {rows} rows")));
    }
    for (i, len) in row_lens.enumerate() {
        if len != n {
            return Err(invalid(format!("row {i} has {len} entries, expected {n}")));
        }
    }
    Ok(())
}

/// Exponent table `k_ij` with `m_ij = exp(2 pi i k_ij / q)` within `tol`, if
/// every entry is such a root.
pub fn phase_exponents(m: &Matrix, q: u32, tol: f64) -> Option<Vec<Vec<u32>>> {
    let n = m.n();
    let mut out = vec![vec![0u32; n]; n];
    for i in 0..n {
        for j in 0..n {
            let z = m[(i, j)];
            let k = (z.arg() * q as f64 / std::f64::consts::TAU).round() as i64;
            let k = k.rem_euclid(q as i64);
            if (z - unit_root(q, k).value()).norm() > tol {
                return None;
            }
            out[i][j] = k as u32;
        }
    }
    Some(out)
}

/// Serialize, choosing the phase form when `q` (or the smallest `q <=
/// MAX_AUTO_Q` if none is given) fits every entry.
pub fn matrix_to_json(m: &Matrix, q: Option<u32>) -> String {
    let candidates: Vec<u32> = match q {
        Some(q) if q > 0 => vec![q],
        _ => (1..=MAX_AUTO_Q).collect(),
    };
    for q in candidates {
        if let Some(exps) = phase_exponents(m, q, PHASE_FORM_TOL) {
            return phase_json(m.n(), q, &exps);
        }
    }
    rect_json(m)
}

fn phase_json(n: usize, q: u32, exps: &[Vec<u32>]) -> String {
    let rows: Vec<String> = exps
        .iter()
        .map(|r| {
            let ks: Vec<String> = r.iter().map(u32::to_string).collect();
            format!("[{}]", ks.join(","))
        })
        .collect();
    format!("{{\"n\":{n},\"q\":{q},\"log_entries\":[\n  {}\n]}}\n", rows.join(",\n  "))
}

/// Rectangular form with 17 significant digits per real.
pub fn rect_json(m: &Matrix) -> String {
    let n = m.n();
    let mut s = format!("{{\"n\":{n},\"entries\":[\n");
    for i in 0..n {
        s.push_str("  [");
        for j in 0..n {
            let z = m[(i, j)];
            if j > 0 {
                s.push(',');
            }
            write!(s, "[{},{}]", fmt_real(z.re), fmt_real(z.im)).unwrap();
        }
        s.push(']');
        if i + 1 < n {
            s.push(',');
        }
        s.push('\n');
    }
    s.push_str("]}\n");
    s
}

fn fmt_real(x: f64) -> String {
    // -0.0 prints as "-0.0000000000000000e0", which is valid JSON
    format!("{x:.16e}")
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<Matrix> {
    let text = std::fs::read_to_string(path)?;
    matrix_from_json(&text)
}

pub fn write_matrix(path: impl AsRef<Path>, m: &Matrix, q: Option<u32>) -> Result<()> {
    std::fs::write(path, matrix_to_json(m, q)).map_err(Error::from)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{circulant, fourier, omega, ONE};

    #[test]
    fn fourier_writes_phase_form() {
        let f3 = fourier(3).unwrap();
        let text = matrix_to_json(&f3, None);
        assert!(text.contains("\"q\":3"), "{text}");
        assert!(text.contains("[0,1,2]"));
        let back = matrix_from_json(&text).unwrap();
        assert!(back.approx_eq(&f3, 1e-15));
    }

    #[test]
    fn generic_matrix_writes_rectangular_form() {
        let m = circulant(&[ONE, Complex64::from_polar(1.0, 0.123), omega()]).unwrap();
        let text = matrix_to_json(&m, None);
        assert!(text.contains("\"entries\""));
        let back = matrix_from_json(&text).unwrap();
        assert_eq!(back, m, "17 significant digits must round-trip exactly");
    }

    #[test]
    fn declared_q_that_does_not_fit_falls_back() {
        let f3 = fourier(3).unwrap();
        assert!(matrix_to_json(&f3, Some(4)).contains("\"entries\""));
        assert!(matrix_to_json(&f3, Some(6)).contains("\"q\":6"));
    }

    #[test]
    fn rejects_malformed_files() {
        assert!(matrix_from_json(r#"{"n":2,"q":3,"log_entries":[[0,3],[0,0]]}"#).is_err());
        assert!(matrix_from_json(r#"{"n":2,"entries":[[[1,0],[1,0]]]}"#).is_err());
        assert!(matrix_from_json(r#"{"n":2,"q":0,"log_entries":[[0,0],[0,0]]}"#).is_err());
        assert!(matrix_from_json("not json").is_err());
    }

    #[test]
    fn reads_hand_written_rectangular_file() {
        let m = matrix_from_json(r#"{"n":2,"entries":[[[1,0],[0,1]],[[0,1],[1,0]]]}"#).unwrap();
        assert_eq!(m[(0, 1)], Complex64::new(0.0, 1.0));
    }
}
