use crate::io::phase_exponents;
use crate::matrix::Matrix;

/// Entries must sit this close to a `q`-th root of unity.
pub const BUTSON_TOL: f64 = 1e-9;

/// Smallest `q <= q_max` such that every entry is a `q`-th root of unity.
pub fn butson_class(h: &Matrix, q_max: u32) -> Option<u32> {
    (1..=q_max).find(|&q| phase_exponents(h, q, BUTSON_TOL).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::fourier;
    use crate::orbits::special;

    #[test]
    fn named_classes() {
        assert_eq!(butson_class(&special("C3xC3").unwrap(), 72), Some(3));
        assert_eq!(butson_class(&special("BC9AcapB").unwrap(), 72), Some(6));
        assert_eq!(butson_class(&special("BC9Ab").unwrap(), 72), Some(6));
        assert_eq!(butson_class(&special("W9A_point").unwrap(), 36), None);
        assert_eq!(butson_class(&special("B9_0_point").unwrap(), 72), Some(10));
        assert_eq!(butson_class(&fourier(9).unwrap(), 8), None);
        assert_eq!(butson_class(&fourier(1).unwrap(), 1), Some(1));
    }

    #[test]
    fn irrational_phase_is_never_a_root() {
        // cos(theta) = 1/4 so theta/pi is irrational
        let w9a = special("W9A_point").unwrap();
        for q in 1..=36 {
            assert!(phase_exponents(&w9a, q, BUTSON_TOL).is_none(), "q = {q}");
        }
    }
}
