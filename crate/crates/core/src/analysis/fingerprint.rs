//! Haagerup invariant: the multiset of `h_ij h_kl conj(h_il) conj(h_kj)` over
//! `i < k`, `j < l`.
//!
//! Swapping the two rows (or the two columns) of a quadruple conjugates the
//! product, so each value is folded to `(re, |im|)` before counting. The
//! folded set cannot tell `H` from `conj(H)`.

use serde::Serialize;

use crate::matrix::Matrix;

const SCALE: f64 = 1e9;

#[derive(Clone, Debug, Serialize)]
pub struct HaagerupFingerprint {
    /// Sorted `(round(1e9 re), round(1e9 |im|))`.
    pub entries: Vec<(i64, i64)>,
    #[serde(skip)]
    re: Vec<f64>,
    #[serde(skip)]
    im_abs: Vec<f64>,
}

impl PartialEq for HaagerupFingerprint {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl Eq for HaagerupFingerprint {}

impl HaagerupFingerprint {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Compares the sorted real parts and sorted `|im|` parts within `tol`.
    /// Unlike `==` this is immune to values landing on a rounding boundary.
    pub fn approx_matches(&self, other: &Self, tol: f64) -> bool {
        let close = |a: &[f64], b: &[f64]| a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol);
        close(&self.re, &other.re) && close(&self.im_abs, &other.im_abs)
    }
}

pub fn haagerup_fingerprint(h: &Matrix) -> HaagerupFingerprint {
    let n = h.n();
    let unit = h.entries().iter().map(|z| z / z.norm()).collect::<Vec<_>>();
    let at = |i: usize, j: usize| unit[i * n + j];
    let mut raw = Vec::with_capacity((n * (n - 1) / 2).pow(2));
    for i in 0..n {
        for k in i + 1..n {
            for j in 0..n {
                for l in j + 1..n {
                    let p = at(i, j) * at(k, l) * at(i, l).conj() * at(k, j).conj();
                    raw.push((p.re, p.im.abs()));
                }
            }
        }
    }
    let mut entries: Vec<(i64, i64)> =
        raw.iter().map(|&(re, im)| ((re * SCALE).round() as i64, (im * SCALE).round() as i64)).collect();
    entries.sort_unstable();
    let mut re: Vec<f64> = raw.iter().map(|r| r.0).collect();
    let mut im_abs: Vec<f64> = raw.iter().map(|r| r.1).collect();
    re.sort_by(f64::total_cmp);
    im_abs.sort_by(f64::total_cmp);
    HaagerupFingerprint { entries, re, im_abs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::fourier;
    use crate::orbits::special;

    #[test]
    fn f3_and_c3_agree() {
        let a = haagerup_fingerprint(&fourier(3).unwrap());
        let b = haagerup_fingerprint(&special("C3").unwrap());
        assert_eq!(a, b);
        assert_eq!(a.len(), 9);
        assert!(a.approx_matches(&b, 1e-9));
    }

    #[test]
    fn separates_inequivalent_orders_four() {
        let a = haagerup_fingerprint(&special("F4(0)").unwrap());
        let b = haagerup_fingerprint(&special("F4(0.9)").unwrap());
        assert_ne!(a, b);
    }

    #[test]
    fn blind_to_conjugation() {
        let h = special("BC9Ab").unwrap();
        assert_eq!(haagerup_fingerprint(&h), haagerup_fingerprint(&h.conj()));
    }
}
