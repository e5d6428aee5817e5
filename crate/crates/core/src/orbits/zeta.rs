//! The complex coordinate `zeta = 2(x + y) - 1 = -2(u + w) + 1` on the
//! `sigma = 1` orbit.
//!
//! Given `zeta`, the pair sums `x + y = (1 + zeta)/2` and `u + w = (1 - zeta)/2`
//! fix each unordered pair up to the sign of one square root. The admissible
//! region is the lens `|1 + zeta| <= 4`, `|1 - zeta| <= 4`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use super::Bc9Params;
use crate::error::{invalid, Error, Result};
use crate::matrix::ONE;

/// Slack admitted on the lens boundary, and the clamp applied to the
/// radicand `16/|1 +- zeta|^2 - 1` near zero.
pub const LENS_TOL: f64 = 1e-12;

const DEGENERATE_TOL: f64 = 1e-12;
const SIGMA_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub const ALL_PAIRS: [(Sign, Sign); 4] =
        [(Sign::Plus, Sign::Plus), (Sign::Plus, Sign::Minus), (Sign::Minus, Sign::Plus), (Sign::Minus, Sign::Minus)];

    /// Parse a two-character branch such as `++` or `+-`; `p`/`m` are
    /// accepted in place of `+`/`-`.
    pub fn parse_pair(s: &str) -> Result<(Sign, Sign)> {
        let signs: Vec<Sign> = s
            .chars()
            .map(|ch| match ch {
                '+' | 'p' | 'P' => Ok(Sign::Plus),
                '-' | 'm' | 'M' => Ok(Sign::Minus),
                _ => Err(invalid(format!("bad branch character {ch:?} in {s:?}"))),
            })
            .collect::<Result<_>>()?;
        match signs.as_slice() {
            [a, b] => Ok((*a, *b)),
            _ => Err(invalid(format!("branch must have two signs, got {s:?}"))),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Sign> {
        match s {
            "+" | "p" => Ok(Sign::Plus),
            "-" | "m" => Ok(Sign::Minus),
            _ => Err(invalid(format!("bad sign {s:?}"))),
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A point of the lens plus the two branch signs choosing `x <-> y` and
/// `u <-> w`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZetaPoint {
    pub zeta: Complex64,
    pub branch_xy: Sign,
    pub branch_uw: Sign,
}

impl ZetaPoint {
    pub fn new(zeta: Complex64, branch_xy: Sign, branch_uw: Sign) -> Self {
        ZetaPoint { zeta, branch_xy, branch_uw }
    }

    pub fn plus(zeta: Complex64) -> Self {
        ZetaPoint::new(zeta, Sign::Plus, Sign::Plus)
    }
}

/// Inside the closed lens, with the boundary slack [`LENS_TOL`].
pub fn in_lens(zeta: Complex64) -> bool {
    (ONE + zeta).norm() <= 4.0 + LENS_TOL && (ONE - zeta).norm() <= 4.0 + LENS_TOL
}

/// Two unimodular numbers with sum `sum`, `|sum| <= 2`:
/// `sum/2 * (1 +- i sqrt(4/|sum|^2 - 1))`.
fn split_pair(sum: Complex64, sign: Sign) -> (Complex64, Complex64) {
    let mut radicand = 4.0 / sum.norm_sqr() - 1.0;
    if radicand.abs() <= LENS_TOL {
        radicand = 0.0;
    }
    let root = Complex64::new(0.0, sign.value() * radicand.max(0.0).sqrt());
    let half = sum / 2.0;
    (half * (ONE + root), half * (ONE - root))
}

pub fn zeta_to_params(z: &ZetaPoint) -> Result<Bc9Params> {
    let zeta = z.zeta;
    if !zeta.re.is_finite() || !zeta.im.is_finite() {
        return Err(Error::OutOfDomain(format!("zeta = {zeta} is not finite")));
    }
    if !in_lens(zeta) {
        return Err(Error::OutOfDomain(format!(
            "zeta = {zeta} outside the lens: |1+zeta| = {:.6}, |1-zeta| = {:.6}",
            (ONE + zeta).norm(),
            (ONE - zeta).norm()
        )));
    }
    if (zeta - ONE).norm() <= DEGENERATE_TOL || (zeta + ONE).norm() <= DEGENERATE_TOL {
        return Err(Error::DegeneratePoint(format!(
            "zeta = {zeta}: the one-parameter family at zeta = +-1 is only reachable via bc9a"
        )));
    }
    let (x, y) = split_pair((ONE + zeta) / 2.0, z.branch_xy);
    let (u, w) = split_pair((ONE - zeta) / 2.0, z.branch_uw);
    Bc9Params::from_complex([x, y, u, w])
}

pub fn params_to_zeta(p: &Bc9Params) -> Result<Complex64> {
    let sigma = p.sigma();
    if (sigma - ONE).norm() > SIGMA_TOL {
        return Err(invalid(format!("zeta is only defined on the sigma = 1 orbit (sigma = {sigma})")));
    }
    let from_xy = 2.0 * (p.x.value() + p.y.value()) - ONE;
    let from_uw = ONE - 2.0 * (p.u.value() + p.w.value());
    if (from_xy - from_uw).norm() > SIGMA_TOL {
        return Err(invalid(format!("inconsistent zeta: {from_xy} from (x, y) vs {from_uw} from (u, w)")));
    }
    Ok(from_xy)
}
