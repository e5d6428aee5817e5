//! Parameter-space sweeps: defect maps over the `zeta` plane, the
//! sixth-root census of the block Fourier orbit and the Backelin loci.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{defect, DEFAULT_RANK_TOL};
use crate::error::{invalid, Error, Result};
use crate::matrix::{unit_root, UnimodularScalar, ONE};
use crate::orbits::{
    backelin, bc9_matrix, fourier9, in_lens, zeta_to_params, BackelinParams, FourierParams, Sign, ZetaPoint,
};

/// Relative threshold of the marching mask: a grid point belongs to the
/// mask when at least `2n - 1 + 4` singular values fall below
/// `MARCH_TOL * sigma_max`.
pub const MARCH_TOL: f64 = 1e-3;

const DEGENERATE_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridSpec {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub resolution: usize,
    pub tol: f64,
    pub branches: Vec<(Sign, Sign)>,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            re_min: -3.2,
            re_max: 3.2,
            im_min: -3.2,
            im_max: 3.2,
            resolution: 401,
            tol: DEFAULT_RANK_TOL,
            branches: vec![(Sign::Plus, Sign::Plus)],
        }
    }
}

fn axis(lo: f64, hi: f64, res: usize, k: usize) -> f64 {
    // written around the midpoint so that symmetric ranges give exactly
    // antisymmetric coordinates
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let m = (res - 1) as f64;
    mid + half * ((2 * k) as f64 - m) / m
}

impl GridSpec {
    pub fn with_resolution(resolution: usize) -> Self {
        GridSpec { resolution, ..GridSpec::default() }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.re_min, self.re_max, self.im_min, self.im_max].iter().all(|x| x.is_finite());
        if !finite || self.re_min >= self.re_max || self.im_min >= self.im_max {
            return Err(invalid("grid ranges must be finite with min < max"));
        }
        if self.resolution < 2 {
            return Err(invalid("grid resolution must be at least 2"));
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(invalid(format!("rank tolerance must lie in (0, 1), got {}", self.tol)));
        }
        if self.branches.is_empty() {
            return Err(invalid("at least one branch is required"));
        }
        Ok(())
    }

    pub fn re_at(&self, k: usize) -> f64 {
        axis(self.re_min, self.re_max, self.resolution, k)
    }

    pub fn im_at(&self, k: usize) -> f64 {
        axis(self.im_min, self.im_max, self.resolution, k)
    }

    /// Both ranges centred on zero, so negation and conjugation map grid
    /// nodes to grid nodes.
    pub fn is_symmetric(&self) -> bool {
        self.re_min == -self.re_max && self.im_min == -self.im_max
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanRecord {
    pub zeta: Complex64,
    pub branch_xy: Sign,
    pub branch_uw: Sign,
    pub defect: i64,
    pub reliable: bool,
    /// Defect counted at [`MARCH_TOL`].
    pub marching_defect: i64,
    /// Grid indices (real axis, imaginary axis).
    pub index: (usize, usize),
}

fn scan_point(g: &GridSpec, ix: usize, iy: usize) -> Result<Vec<ScanRecord>> {
    let zeta = Complex64::new(g.re_at(ix), g.im_at(iy));
    if !in_lens(zeta) || (zeta - ONE).norm() <= DEGENERATE_TOL || (zeta + ONE).norm() <= DEGENERATE_TOL {
        return Ok(Vec::new());
    }
    g.branches
        .iter()
        .map(|&(bxy, buw)| {
            let p = zeta_to_params(&ZetaPoint::new(zeta, bxy, buw))?;
            let report = defect(&bc9_matrix(&p), g.tol)?;
            Ok(ScanRecord {
                zeta,
                branch_xy: bxy,
                branch_uw: buw,
                defect: report.defect,
                reliable: report.reliable,
                marching_defect: report.defect_at(MARCH_TOL),
                index: (ix, iy),
            })
        })
        .collect()
}

/// Defect at every in-lens grid node and requested branch. Rows (fixed
/// imaginary part, ascending) run in parallel; output is row-major with the
/// real part ascending within a row.
pub fn zeta_defect_scan(g: &GridSpec) -> Result<Vec<ScanRecord>> {
    g.validate()?;
    let rows: Vec<Vec<ScanRecord>> = (0..g.resolution)
        .into_par_iter()
        .map(|iy| -> Result<Vec<ScanRecord>> {
            let mut row = Vec::new();
            for ix in 0..g.resolution {
                row.extend(scan_point(g, ix, iy)?);
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

pub const CSV_HEADER: &str = "re_zeta,im_zeta,branch_xy,branch_uw,defect,reliable";

pub fn records_to_csv(records: &[ScanRecord]) -> String {
    let mut s = String::with_capacity(64 * (records.len() + 1));
    s.push_str(CSV_HEADER);
    s.push('\n');
    for r in records {
        writeln!(
            s,
            "{:.11e},{:.11e},{},{},{},{}",
            r.zeta.re, r.zeta.im, r.branch_xy, r.branch_uw, r.defect, r.reliable
        )
        .unwrap();
    }
    s
}

/// Grid nodes whose marching defect is at least 4.
#[derive(Clone, Debug)]
pub struct DefectMask {
    pub resolution: usize,
    symmetric_grid: bool,
    /// Row-major, index `iy * resolution + ix`.
    cells: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MaskSummary {
    pub points: usize,
    pub components: usize,
    pub conj_symmetric: bool,
    pub neg_symmetric: bool,
}

impl DefectMask {
    pub fn from_records(g: &GridSpec, records: &[ScanRecord]) -> Self {
        let res = g.resolution;
        let mut cells = vec![false; res * res];
        for r in records {
            if r.marching_defect >= 4 {
                cells[r.index.1 * res + r.index.0] = true;
            }
        }
        DefectMask { resolution: res, symmetric_grid: g.is_symmetric(), cells }
    }

    pub fn get(&self, ix: usize, iy: usize) -> bool {
        self.cells[iy * self.resolution + ix]
    }

    pub fn count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    fn invariant_under(&self, map: impl Fn(usize, usize) -> (usize, usize)) -> bool {
        if !self.symmetric_grid {
            return false;
        }
        let res = self.resolution;
        (0..res).all(|iy| {
            (0..res).all(|ix| {
                let (jx, jy) = map(ix, iy);
                self.get(ix, iy) == self.get(jx, jy)
            })
        })
    }

    /// Invariant under `zeta -> conj(zeta)`; false on an asymmetric grid.
    pub fn is_conj_symmetric(&self) -> bool {
        let last = self.resolution - 1;
        self.invariant_under(|ix, iy| (ix, last - iy))
    }

    /// Invariant under `zeta -> -zeta`; false on an asymmetric grid.
    pub fn is_neg_symmetric(&self) -> bool {
        let last = self.resolution - 1;
        self.invariant_under(|ix, iy| (last - ix, last - iy))
    }

    /// 8-connected components.
    pub fn components(&self) -> usize {
        let res = self.resolution as isize;
        let mut seen = vec![false; self.cells.len()];
        let mut count = 0;
        for start in 0..self.cells.len() {
            if !self.cells[start] || seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(c) = queue.pop_front() {
                let (x, y) = ((c as isize) % res, (c as isize) / res);
                for dy in -1..=1 {
                    for dx in -1..=1 {
                        let (nx, ny) = (x + dx, y + dy);
                        if nx < 0 || ny < 0 || nx >= res || ny >= res {
                            continue;
                        }
                        let k = (ny * res + nx) as usize;
                        if self.cells[k] && !seen[k] {
                            seen[k] = true;
                            queue.push_back(k);
                        }
                    }
                }
            }
        }
        count
    }

    pub fn summary(&self) -> MaskSummary {
        MaskSummary {
            points: self.count(),
            components: self.components(),
            conj_symmetric: self.is_conj_symmetric(),
            neg_symmetric: self.is_neg_symmetric(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanSummary {
    pub records: usize,
    pub unreliable: usize,
    pub histogram: BTreeMap<i64, usize>,
    pub mask: MaskSummary,
}

pub fn summarize(g: &GridSpec, records: &[ScanRecord]) -> ScanSummary {
    let mut histogram = BTreeMap::new();
    for r in records {
        *histogram.entry(r.defect).or_insert(0) += 1;
    }
    ScanSummary {
        records: records.len(),
        unreliable: records.iter().filter(|r| !r.reliable).count(),
        histogram,
        mask: DefectMask::from_records(g, records).summary(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusResult {
    pub total: usize,
    pub histogram: BTreeMap<i64, usize>,
}

/// Defect of the block Fourier form at all `6^4` choices of
/// `x1..x4 in {+-1, +-w, +-w^2}`.
pub fn fourier_butson_census() -> Result<CensusResult> {
    let points: Vec<[i64; 4]> = (0..1296i64).map(|k| [k / 216, (k / 36) % 6, (k / 6) % 6, k % 6]).collect();
    let defects: Vec<i64> = points
        .par_iter()
        .map(|e| {
            let fp = FourierParams::new(unit_root(6, e[0]), unit_root(6, e[1]), unit_root(6, e[2]), unit_root(6, e[3]));
            let report = defect(&fourier9(&fp), DEFAULT_RANK_TOL)?;
            if !report.reliable {
                return Err(Error::Unreliable(format!(
                    "census point with sixth-root exponents {e:?}: gap ratio {:.3}",
                    report.gap_ratio
                )));
            }
            Ok(report.defect)
        })
        .collect::<Result<_>>()?;
    let mut histogram = BTreeMap::new();
    for d in &defects {
        *histogram.entry(*d).or_insert(0) += 1;
    }
    Ok(CensusResult { total: defects.len(), histogram })
}

/// The three kinds of defect-6 locus in the Backelin orbit, each with
/// constant `c = w9^{1+3n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BackelinFamily {
    /// `v = c u^2`
    VFromU,
    /// `u = c v^2`
    UFromV,
    /// `u v = c`
    Product,
}

impl BackelinFamily {
    pub const ALL: [BackelinFamily; 3] = [BackelinFamily::VFromU, BackelinFamily::UFromV, BackelinFamily::Product];

    /// Membership of `(u, v) = (w27^a, w27^b)`.
    fn contains_exponents(self, n: u32, a: u32, b: u32) -> bool {
        let c = 3 * (1 + 3 * n);
        match self {
            BackelinFamily::VFromU => (c + 2 * a) % 27 == b,
            BackelinFamily::UFromV => (c + 2 * b) % 27 == a,
            BackelinFamily::Product => (a + b) % 27 == c % 27,
        }
    }

    /// The point of the locus with free parameter `t`.
    pub fn point(self, n: u32, t: UnimodularScalar) -> BackelinParams {
        let c = unit_root(9, 1 + 3 * n as i64);
        match self {
            BackelinFamily::VFromU => BackelinParams::new(t, c * t * t),
            BackelinFamily::UFromV => BackelinParams::new(c * t * t, t),
            BackelinFamily::Product => BackelinParams::new(t, c * t.conj()),
        }
    }
}

impl std::str::FromStr for BackelinFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "v-from-u" | "v=cu2" => Ok(BackelinFamily::VFromU),
            "u-from-v" | "u=cv2" => Ok(BackelinFamily::UFromV),
            "product" | "uv=c" => Ok(BackelinFamily::Product),
            _ => Err(invalid(format!("unknown Backelin family {s:?}; expected v-from-u, u-from-v or product"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BackelinSample {
    pub u: Complex64,
    pub v: Complex64,
    pub defect: i64,
    pub reliable: bool,
}

/// `count` points of one locus at golden-ratio spaced parameters.
pub fn backelin_suborbit_samples(n: u32, family: BackelinFamily, count: usize) -> Result<Vec<BackelinSample>> {
    if n > 2 {
        return Err(invalid(format!("locus index n must be 0, 1 or 2, got {n}")));
    }
    if count == 0 {
        return Err(invalid("sample count must be at least 1"));
    }
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    (0..count)
        .map(|k| {
            let t = UnimodularScalar::from_turns((0.1 + k as f64 * golden).fract());
            let bp = family.point(n, t);
            let report = defect(&backelin(&bp), DEFAULT_RANK_TOL)?;
            Ok(BackelinSample { u: bp.u.value(), v: bp.v.value(), defect: report.defect, reliable: report.reliable })
        })
        .collect()
}

/// A point on at least two loci: `u = w27^u_exp`, `v = w27^v_exp`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BackelinIntersection {
    pub u_exp27: u32,
    pub v_exp27: u32,
    pub u: Complex64,
    pub v: Complex64,
    /// `(family, n)` of every locus through the point.
    pub loci: Vec<(BackelinFamily, u32)>,
}

impl BackelinIntersection {
    pub fn params(&self) -> BackelinParams {
        BackelinParams::new(unit_root(27, self.u_exp27 as i64), unit_root(27, self.v_exp27 as i64))
    }
}

/// Every pairwise intersection of the nine loci. Each pair reduces to
/// `u^3` (or `v^3`) equal to a ninth root of unity, so all solutions are
/// 27th roots and enumerating exponent pairs mod 27 is exact.
pub fn backelin_intersections() -> Result<Vec<BackelinIntersection>> {
    let mut out = Vec::new();
    for a in 0..27 {
        for b in 0..27 {
            let loci: Vec<(BackelinFamily, u32)> = BackelinFamily::ALL
                .iter()
                .flat_map(|&f| (0..3).map(move |n| (f, n)))
                .filter(|&(f, n)| f.contains_exponents(n, a, b))
                .collect();
            if loci.len() >= 2 {
                out.push(BackelinIntersection {
                    u_exp27: a,
                    v_exp27: b,
                    u: unit_root(27, a as i64).value(),
                    v: unit_root(27, b as i64).value(),
                    loci,
                });
            }
        }
    }
    if out.len() != 27 {
        return Err(Error::Consistency(format!("expected 27 intersection points, found {}", out.len())));
    }
    Ok(out)
}
