//! Backtracking search for a row and column permutation between two keyed
//! matrices: find `rows`, `cols` with `a[i][j] == b[rows[i]][cols[j]]`.
//!
//! Rows of `a` are assigned in order. After each assignment the columns are
//! refined into classes by the key history of the rows placed so far, and the
//! class multisets of `a` and `b` must agree.

use std::collections::HashMap;

use num_complex::Complex64;

/// Maps complex values to small integer keys, merging values within `tol`.
pub(crate) struct Codebook {
    reps: Vec<Complex64>,
    tol: f64,
}

impl Codebook {
    pub(crate) fn new(tol: f64) -> Self {
        Codebook { reps: Vec::new(), tol }
    }

    pub(crate) fn insert(&mut self, z: Complex64) -> usize {
        match self.lookup(z) {
            Some(k) => k,
            None => {
                self.reps.push(z);
                self.reps.len() - 1
            }
        }
    }

    pub(crate) fn lookup(&self, z: Complex64) -> Option<usize> {
        self.reps.iter().position(|r| (r - z).norm() <= self.tol)
    }
}

/// Square table of keys, row-major.
#[derive(Clone, Debug)]
pub(crate) struct KeyMatrix {
    pub n: usize,
    pub keys: Vec<usize>,
}

impl KeyMatrix {
    #[inline]
    fn at(&self, i: usize, j: usize) -> usize {
        self.keys[i * self.n + j]
    }

    fn sorted_row(&self, i: usize) -> Vec<usize> {
        let mut r = self.keys[i * self.n..(i + 1) * self.n].to_vec();
        r.sort_unstable();
        r
    }

    pub(crate) fn sorted_keys(&self) -> Vec<usize> {
        let mut k = self.keys.clone();
        k.sort_unstable();
        k
    }
}

/// Key both matrices through one codebook built from `a`. `None` when some
/// entry of `b` has no counterpart in `a`.
pub(crate) fn key_pair(
    a: &crate::matrix::Matrix,
    b: &crate::matrix::Matrix,
    tol: f64,
) -> Option<(KeyMatrix, KeyMatrix)> {
    let mut book = Codebook::new(tol);
    let ka: Vec<usize> = a.entries().iter().map(|&z| book.insert(z)).collect();
    let kb: Option<Vec<usize>> = b.entries().iter().map(|&z| book.lookup(z)).collect();
    let n = a.n();
    Some((KeyMatrix { n, keys: ka }, KeyMatrix { n, keys: kb? }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum SearchOutcome {
    Found { rows: Vec<usize>, cols: Vec<usize> },
    Exhausted,
    BudgetExceeded,
}

struct Search<'a, F> {
    a: &'a KeyMatrix,
    b: &'a KeyMatrix,
    a_row_sig: Vec<Vec<usize>>,
    b_row_sig: Vec<Vec<usize>>,
    rows: Vec<usize>,
    used: Vec<bool>,
    budget: u64,
    nodes: u64,
    accept: F,
}

/// Outcome of a refinement step: new column classes for `a` and `b`.
type Classes = (Vec<usize>, Vec<usize>);

impl<F: FnMut(&[usize], &[usize]) -> bool> Search<'_, F> {
    fn refine(&self, ca: &[usize], cb: &[usize], ia: usize, ib: usize) -> Option<Classes> {
        let n = self.a.n;
        let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut counts: Vec<i64> = Vec::new();
        let mut na = Vec::with_capacity(n);
        for j in 0..n {
            let pair = (ca[j], self.a.at(ia, j));
            let next = ids.len();
            let id = *ids.entry(pair).or_insert(next);
            if id == counts.len() {
                counts.push(0);
            }
            counts[id] += 1;
            na.push(id);
        }
        let mut nb = Vec::with_capacity(n);
        for k in 0..n {
            let id = *ids.get(&(cb[k], self.b.at(ib, k)))?;
            counts[id] -= 1;
            if counts[id] < 0 {
                return None;
            }
            nb.push(id);
        }
        Some((na, nb))
    }

    fn pair_columns(ca: &[usize], cb: &[usize]) -> Vec<usize> {
        let n = ca.len();
        let mut taken = vec![false; n];
        let mut cols = Vec::with_capacity(n);
        for &class in ca {
            let k = (0..n).find(|&k| !taken[k] && cb[k] == class).expect("class multisets agree");
            taken[k] = true;
            cols.push(k);
        }
        cols
    }

    fn descend(&mut self, depth: usize, ca: &[usize], cb: &[usize], pin: Option<usize>) -> Option<SearchOutcome> {
        let n = self.a.n;
        if depth == n {
            let cols = Self::pair_columns(ca, cb);
            if (self.accept)(&self.rows, &cols) {
                return Some(SearchOutcome::Found { rows: self.rows.clone(), cols });
            }
            return None;
        }
        let candidates: Vec<usize> = match pin {
            Some(r) if depth == 0 => vec![r],
            _ => (0..n).filter(|&s| !self.used[s]).collect(),
        };
        for s in candidates {
            if self.a_row_sig[depth] != self.b_row_sig[s] {
                continue;
            }
            if self.nodes >= self.budget {
                return Some(SearchOutcome::BudgetExceeded);
            }
            self.nodes += 1;
            let Some((na, nb)) = self.refine(ca, cb, depth, s) else {
                continue;
            };
            self.used[s] = true;
            self.rows.push(s);
            let found = self.descend(depth + 1, &na, &nb, pin);
            self.rows.pop();
            self.used[s] = false;
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

/// Search for `rows`, `cols` with `a[i][j] == b[rows[i]][cols[j]]`. With a
/// pin `(r, c)` the search is restricted to `rows[0] = r`, `cols[0] = c`.
/// Every full candidate is passed to `accept`; a rejected candidate lets the
/// search continue. `nodes` accumulates refinement attempts and the search
/// stops once it reaches `budget`.
pub(crate) fn match_permutations<F>(
    a: &KeyMatrix,
    b: &KeyMatrix,
    pin: Option<(usize, usize)>,
    budget: u64,
    nodes: &mut u64,
    accept: F,
) -> SearchOutcome
where
    F: FnMut(&[usize], &[usize]) -> bool,
{
    let n = a.n;
    assert_eq!(n, b.n);
    let (ca, cb) = match pin {
        Some((_, c)) => ((0..n).map(|j| usize::from(j == 0)).collect(), (0..n).map(|k| usize::from(k == c)).collect()),
        None => (vec![0; n], vec![0; n]),
    };
    let mut search = Search {
        a,
        b,
        a_row_sig: (0..n).map(|i| a.sorted_row(i)).collect(),
        b_row_sig: (0..n).map(|i| b.sorted_row(i)).collect(),
        rows: Vec::with_capacity(n),
        used: vec![false; n],
        budget,
        nodes: *nodes,
        accept,
    };
    let out = search.descend(0, &ca, &cb, pin.map(|p| p.0));
    *nodes = search.nodes;
    out.unwrap_or(SearchOutcome::Exhausted)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn km(n: usize, keys: &[usize]) -> KeyMatrix {
        KeyMatrix { n, keys: keys.to_vec() }
    }

    #[test]
    fn finds_a_planted_permutation() {
        let a = km(3, &[0, 1, 2, 3, 4, 5, 6, 7, 8]);
        // b[rows[i]][cols[j]] = a[i][j] with rows = (2, 0, 1), cols = (1, 2, 0)
        let rows = [2, 0, 1];
        let cols = [1, 2, 0];
        let mut keys = vec![0; 9];
        for i in 0..3 {
            for j in 0..3 {
                keys[rows[i] * 3 + cols[j]] = a.at(i, j);
            }
        }
        let b = km(3, &keys);
        let mut nodes = 0;
        let out = match_permutations(&a, &b, None, 1000, &mut nodes, |_, _| true);
        assert_eq!(out, SearchOutcome::Found { rows: rows.to_vec(), cols: cols.to_vec() });
    }

    #[test]
    fn reports_exhaustion_and_budget() {
        let a = km(2, &[0, 0, 0, 1]);
        let b = km(2, &[0, 1, 1, 0]);
        let mut nodes = 0;
        assert_eq!(match_permutations(&a, &b, None, 1000, &mut nodes, |_, _| true), SearchOutcome::Exhausted);
        let mut nodes = 0;
        let a = km(2, &[0, 0, 0, 0]);
        assert_eq!(match_permutations(&a, &a, None, 0, &mut nodes, |_, _| true), SearchOutcome::BudgetExceeded);
    }

    #[test]
    fn rejected_candidates_keep_the_search_going() {
        let a = km(2, &[0, 0, 0, 0]);
        let mut seen = 0;
        let mut nodes = 0;
        let out = match_permutations(&a, &a, None, 1000, &mut nodes, |rows, _| {
            seen += 1;
            rows == [1, 0]
        });
        assert!(matches!(out, SearchOutcome::Found { .. }));
        assert_eq!(seen, 2);
    }

    #[test]
    fn pins_are_respected() {
        let a = km(2, &[0, 0, 0, 0]);
        let mut nodes = 0;
        match match_permutations(&a, &a, Some((1, 1)), 1000, &mut nodes, |_, _| true) {
            SearchOutcome::Found { rows, cols } => {
                assert_eq!(rows[0], 1);
                assert_eq!(cols[0], 1);
            }
            other => panic!("{other:?}"),
        }
    }
}
