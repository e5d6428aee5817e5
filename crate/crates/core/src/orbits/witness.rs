//! Permuting `(x, y, u, w)` permutes rows and columns of the BCCB form. The
//! witness is found by search rather than from a formula.

use serde::Serialize;

use super::{bc9_matrix, Bc9Params};
use crate::analysis::permsearch::{key_pair, match_permutations, SearchOutcome};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

const KEY_TOL: f64 = 1e-12;
const NODE_BUDGET: u64 = 10_000_000;

/// `target[i][j] = source[rows[i]][cols[j]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermutationWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl PermutationWitness {
    pub fn identity(n: usize) -> Self {
        PermutationWitness { rows: (0..n).collect(), cols: (0..n).collect() }
    }
}

pub fn apply_param_permutation(h: &Matrix, w: &PermutationWitness) -> Matrix {
    Matrix::from_fn(h.n(), |i, j| h[(w.rows[i], w.cols[j])])
}

/// Row and column permutations taking `bc9_matrix(p)` to
/// `bc9_matrix(p.permuted(perm))`, entrywise within `1e-12`.
pub fn param_permutation_witness(p: &Bc9Params, perm: [usize; 4]) -> Result<PermutationWitness> {
    let mut seen = [false; 4];
    for &k in &perm {
        if k >= 4 || seen[k] {
            return Err(crate::error::invalid(format!("{perm:?} is not a permutation of 0..4")));
        }
        seen[k] = true;
    }
    let source = bc9_matrix(p);
    let target = bc9_matrix(&p.permuted(perm));
    if perm == [0, 1, 2, 3] {
        return Ok(PermutationWitness::identity(9));
    }
    let (kt, ks) = key_pair(&target, &source, KEY_TOL)
        .ok_or_else(|| Error::Consistency("permuted form has entries outside the original".into()))?;
    let mut nodes = 0;
    let accept = |rows: &[usize], cols: &[usize]| {
        let w = PermutationWitness { rows: rows.to_vec(), cols: cols.to_vec() };
        apply_param_permutation(&source, &w).max_abs_diff(&target) <= KEY_TOL
    };
    match match_permutations(&kt, &ks, None, NODE_BUDGET, &mut nodes, accept) {
        SearchOutcome::Found { rows, cols } => Ok(PermutationWitness { rows, cols }),
        SearchOutcome::Exhausted => {
            Err(Error::Consistency(format!("no row/column permutation realizes parameter permutation {perm:?}")))
        }
        SearchOutcome::BudgetExceeded => {
            Err(Error::Consistency(format!("witness search for {perm:?} exceeded {NODE_BUDGET} nodes")))
        }
    }
}
