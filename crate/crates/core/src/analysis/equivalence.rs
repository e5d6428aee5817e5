//! Hadamard equivalence `A = P1 D1 B D2 P2`.
//!
//! Cheap invariants are compared first, in the order defect, Butson class of
//! the dephased form, Haagerup fingerprint. When all of them agree, every
//! choice of pivot `(r, c)` of `B` is tried: `B` is dephased at the pivot and
//! matched against the dephased `A` by the permutation search.

use num_complex::Complex64;
use serde::Serialize;

use super::butson::butson_class;
use super::defect::{defect, DEFAULT_RANK_TOL};
use super::fingerprint::haagerup_fingerprint;
use super::permsearch::{key_pair, match_permutations, SearchOutcome};
use crate::matrix::{dephase, dephase_at, Matrix, ONE, ZERO};

/// Default node budget of the search.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// A replayed witness must reproduce `A` this closely.
pub const WITNESS_TOL: f64 = 1e-10;

const KEY_TOL: f64 = 1e-7;
const FINGERPRINT_TOL: f64 = 1e-7;
const BUTSON_Q_MAX: u32 = 72;

/// `A[i][j] = row_phases[i] * B[row_map[i]][col_map[j]] * col_phases[j]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivalenceWitness {
    pub row_map: Vec<usize>,
    pub col_map: Vec<usize>,
    pub row_phases: Vec<Complex64>,
    pub col_phases: Vec<Complex64>,
}

impl EquivalenceWitness {
    /// `P1` with `(P1 X)[i][j] = X[row_map[i]][j]`.
    pub fn p1(&self) -> Matrix {
        let n = self.row_map.len();
        Matrix::from_fn(n, |i, k| if self.row_map[i] == k { ONE } else { ZERO })
    }

    /// `D1` with `D1[row_map[i]] = row_phases[i]`.
    pub fn d1(&self) -> Matrix {
        let mut d = vec![ONE; self.row_map.len()];
        for (i, &r) in self.row_map.iter().enumerate() {
            d[r] = self.row_phases[i];
        }
        Matrix::diagonal(&d)
    }

    /// `D2` with `D2[col_map[j]] = col_phases[j]`.
    pub fn d2(&self) -> Matrix {
        let mut d = vec![ONE; self.col_map.len()];
        for (j, &c) in self.col_map.iter().enumerate() {
            d[c] = self.col_phases[j];
        }
        Matrix::diagonal(&d)
    }

    /// `P2` with `(X P2)[i][j] = X[i][col_map[j]]`.
    pub fn p2(&self) -> Matrix {
        let n = self.col_map.len();
        Matrix::from_fn(n, |k, j| if self.col_map[j] == k { ONE } else { ZERO })
    }

    /// `P1 D1 B D2 P2`, entrywise.
    pub fn apply(&self, b: &Matrix) -> Matrix {
        Matrix::from_fn(b.n(), |i, j| self.row_phases[i] * b[(self.row_map[i], self.col_map[j])] * self.col_phases[j])
    }

    fn from_maps(a: &Matrix, b: &Matrix, row_map: &[usize], col_map: &[usize]) -> Self {
        let n = a.n();
        let (r, c) = (row_map[0], col_map[0]);
        let row_phases: Vec<Complex64> = (0..n).map(|i| a[(i, 0)] / b[(row_map[i], c)]).collect();
        let col_phases: Vec<Complex64> =
            (0..n).map(|j| a[(0, j)] * b[(r, c)] / (a[(0, 0)] * b[(r, col_map[j])])).collect();
        EquivalenceWitness { row_map: row_map.to_vec(), col_map: col_map.to_vec(), row_phases, col_phases }
    }
}

/// The invariant or procedure that separated two matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "invariant", rename_all = "kebab-case")]
pub enum Distinction {
    Order {
        a: usize,
        b: usize,
    },
    Defect {
        a: i64,
        b: i64,
    },
    ButsonClass {
        a: Option<u32>,
        b: Option<u32>,
    },
    Fingerprint,
    /// The search covered every pivot and row assignment.
    Exhaustion,
}

impl Distinction {
    pub fn name(&self) -> &'static str {
        match self {
            Distinction::Order { .. } => "order",
            Distinction::Defect { .. } => "defect",
            Distinction::ButsonClass { .. } => "butson-class",
            Distinction::Fingerprint => "fingerprint",
            Distinction::Exhaustion => "exhaustion",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum EquivalenceVerdict {
    Equivalent { witness: EquivalenceWitness, nodes: u64 },
    Inequivalent { distinction: Distinction, nodes: u64 },
    Unknown { nodes: u64 },
}

impl EquivalenceVerdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, EquivalenceVerdict::Equivalent { .. })
    }

    pub fn is_inequivalent(&self) -> bool {
        matches!(self, EquivalenceVerdict::Inequivalent { .. })
    }

    pub fn nodes(&self) -> u64 {
        match self {
            EquivalenceVerdict::Equivalent { nodes, .. }
            | EquivalenceVerdict::Inequivalent { nodes, .. }
            | EquivalenceVerdict::Unknown { nodes } => *nodes,
        }
    }
}

fn invariant_mismatch(a: &Matrix, b: &Matrix) -> Option<Distinction> {
    if a.n() != b.n() {
        return Some(Distinction::Order { a: a.n(), b: b.n() });
    }
    // defect only counts when both ranks are unambiguous
    if let (Ok(da), Ok(db)) = (defect(a, DEFAULT_RANK_TOL), defect(b, DEFAULT_RANK_TOL)) {
        if da.reliable && db.reliable && da.defect != db.defect {
            return Some(Distinction::Defect { a: da.defect, b: db.defect });
        }
    }
    if let (Ok(pa), Ok(pb)) = (dephase(a), dephase(b)) {
        let (qa, qb) = (butson_class(&pa, BUTSON_Q_MAX), butson_class(&pb, BUTSON_Q_MAX));
        if qa != qb {
            return Some(Distinction::ButsonClass { a: qa, b: qb });
        }
    }
    if !haagerup_fingerprint(a).approx_matches(&haagerup_fingerprint(b), FINGERPRINT_TOL) {
        return Some(Distinction::Fingerprint);
    }
    None
}

/// Decide whether `a` and `b` are equivalent. Entries must be nonzero.
pub fn equivalent(a: &Matrix, b: &Matrix, node_budget: u64) -> EquivalenceVerdict {
    if let Some(distinction) = invariant_mismatch(a, b) {
        return EquivalenceVerdict::Inequivalent { distinction, nodes: 0 };
    }
    search(a, b, node_budget)
}

/// The exhaustive layer on its own, skipping the invariants.
pub fn search(a: &Matrix, b: &Matrix, node_budget: u64) -> EquivalenceVerdict {
    let n = a.n();
    let mut nodes = 0u64;
    if n != b.n() {
        return EquivalenceVerdict::Inequivalent { distinction: Distinction::Order { a: n, b: b.n() }, nodes };
    }
    let Ok(da) = dephase(a) else {
        return EquivalenceVerdict::Unknown { nodes };
    };
    for r in 0..n {
        for c in 0..n {
            let Ok(db) = dephase_at(b, r, c) else {
                return EquivalenceVerdict::Unknown { nodes };
            };
            let Some((ka, kb)) = key_pair(&da, &db, KEY_TOL) else {
                continue;
            };
            if ka.sorted_keys() != kb.sorted_keys() {
                continue;
            }
            let mut witness = None;
            let accept = |rows: &[usize], cols: &[usize]| {
                let w = EquivalenceWitness::from_maps(a, b, rows, cols);
                if w.apply(b).max_abs_diff(a) <= WITNESS_TOL {
                    witness = Some(w);
                    true
                } else {
                    false
                }
            };
            match match_permutations(&ka, &kb, Some((r, c)), node_budget, &mut nodes, accept) {
                SearchOutcome::Found { .. } => {
                    let witness = witness.expect("accepted witness recorded");
                    return EquivalenceVerdict::Equivalent { witness, nodes };
                }
                SearchOutcome::Exhausted => {}
                SearchOutcome::BudgetExceeded => return EquivalenceVerdict::Unknown { nodes },
            }
        }
    }
    EquivalenceVerdict::Inequivalent { distinction: Distinction::Exhaustion, nodes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{fourier, kron, UnimodularScalar};
    use crate::orbits::special;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn scramble(h: &Matrix, rng: &mut impl Rng) -> Matrix {
        let n = h.n();
        let mut rows: Vec<usize> = (0..n).collect();
        let mut cols: Vec<usize> = (0..n).collect();
        rows.shuffle(rng);
        cols.shuffle(rng);
        let dr: Vec<Complex64> = (0..n).map(|_| UnimodularScalar::from_turns(rng.random()).value()).collect();
        let dc: Vec<Complex64> = (0..n).map(|_| UnimodularScalar::from_turns(rng.random()).value()).collect();
        Matrix::from_fn(n, |i, j| dr[i] * h[(rows[i], cols[j])] * dc[j])
    }

    #[test]
    fn self_pair_gives_identity_witness() {
        let h = special("BC9AcapB").unwrap();
        match equivalent(&h, &h, DEFAULT_NODE_BUDGET) {
            EquivalenceVerdict::Equivalent { witness, .. } => {
                assert_eq!(witness.row_map, (0..9).collect::<Vec<_>>());
                assert_eq!(witness.col_map, (0..9).collect::<Vec<_>>());
                assert!(witness.row_phases.iter().chain(&witness.col_phases).all(|z| (z - ONE).norm() < 1e-15));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn c3_kron_c3_is_f3_kron_f3() {
        let f3 = fourier(3).unwrap();
        let a = special("C3xC3").unwrap();
        let b = kron(&f3, &f3);
        let EquivalenceVerdict::Equivalent { witness, .. } = equivalent(&a, &b, DEFAULT_NODE_BUDGET) else {
            panic!("expected equivalence");
        };
        assert!(witness.apply(&b).max_abs_diff(&a) <= WITNESS_TOL);
        let product = witness.p1().matmul(&witness.d1()).matmul(&b).matmul(&witness.d2()).matmul(&witness.p2());
        assert!(product.max_abs_diff(&a) <= WITNESS_TOL);
    }

    #[test]
    fn scrambled_copies_are_found() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let f9 = fourier(9).unwrap();
        for _ in 0..5 {
            let b = scramble(&f9, &mut rng);
            let v = equivalent(&f9, &b, DEFAULT_NODE_BUDGET);
            let EquivalenceVerdict::Equivalent { witness, .. } = v else { panic!("{v:?}") };
            assert!(witness.apply(&b).max_abs_diff(&f9) <= WITNESS_TOL);
        }
    }

    #[test]
    fn invariants_fire_first() {
        let f3 = fourier(3).unwrap();
        let v = equivalent(&special("BC9AcapB").unwrap(), &kron(&f3, &f3), DEFAULT_NODE_BUDGET);
        assert_eq!(v, EquivalenceVerdict::Inequivalent { distinction: Distinction::Defect { a: 12, b: 16 }, nodes: 0 });
        let v = equivalent(&f3, &fourier(2).unwrap(), 10);
        assert!(matches!(v, EquivalenceVerdict::Inequivalent { distinction: Distinction::Order { .. }, .. }));
    }

    #[test]
    fn fourier_four_orbit_points_differ() {
        let a = special("F4(0)").unwrap();
        let b = special("F4(0.9)").unwrap();
        assert!(equivalent(&a, &b, DEFAULT_NODE_BUDGET).is_inequivalent());
        assert!(search(&a, &b, DEFAULT_NODE_BUDGET).is_inequivalent());
    }

    #[test]
    fn tiny_budget_gives_unknown() {
        let f9 = fourier(9).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let b = scramble(&f9, &mut rng);
        assert!(matches!(search(&f9, &b, 2), EquivalenceVerdict::Unknown { .. }));
    }
}
