//! Smith normal form over the integers.
//!
//! Pivot selection is the smallest nonzero absolute value in the remaining
//! submatrix, ties broken in row-major order, and each round eliminates the
//! pivot column before the pivot row. This fixes one decomposition per input
//! so transforms are reproducible across runs and platforms.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::matrix::IntMatrix;

/// Unimodular decomposition `U * M * V = D` with `D` diagonal, nonnegative,
/// and each diagonal entry dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal of `D`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows()).map(|i| self.d[(i, i)].clone()).collect()
    }
}

struct Workspace {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
}

impl Workspace {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let n = self.a.cols();
        for c in 0..n {
            let t = self.a[(i, c)].clone();
            self.a[(i, c)] = self.a[(j, c)].clone();
            self.a[(j, c)] = t;
            let t = self.u[(i, c)].clone();
            self.u[(i, c)] = self.u[(j, c)].clone();
            self.u[(j, c)] = t;
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let n = self.a.rows();
        for r in 0..n {
            let t = self.a[(r, i)].clone();
            self.a[(r, i)] = self.a[(r, j)].clone();
            self.a[(r, j)] = t;
            let t = self.v[(r, i)].clone();
            self.v[(r, i)] = self.v[(r, j)].clone();
            self.v[(r, j)] = t;
        }
    }

    /// row i -= q * row k
    fn row_sub(&mut self, i: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let n = self.a.cols();
        for c in 0..n {
            let s = q * &self.a[(k, c)];
            self.a[(i, c)] -= s;
            let s = q * &self.u[(k, c)];
            self.u[(i, c)] -= s;
        }
    }

    /// col j -= q * col k
    fn col_sub(&mut self, j: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let n = self.a.rows();
        for r in 0..n {
            let s = q * &self.a[(r, k)];
            self.a[(r, j)] -= s;
            let s = q * &self.v[(r, k)];
            self.v[(r, j)] -= s;
        }
    }

    /// col j += col k
    fn col_add(&mut self, j: usize, k: usize) {
        let n = self.a.rows();
        for r in 0..n {
            let s = self.a[(r, k)].clone();
            self.a[(r, j)] += s;
            let s = self.v[(r, k)].clone();
            self.v[(r, j)] += s;
        }
    }

    fn negate_row(&mut self, i: usize) {
        let n = self.a.cols();
        for c in 0..n {
            let t = -self.a[(i, c)].clone();
            self.a[(i, c)] = t;
            let t = -self.u[(i, c)].clone();
            self.u[(i, c)] = t;
        }
    }

    fn min_abs_pivot(&self, from: usize) -> Option<(usize, usize)> {
        let n = self.a.rows();
        let mut best: Option<(usize, usize)> = None;
        for i in from..n {
            for j in from..n {
                if self.a[(i, j)].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some(b) => {
                        if self.a[(i, j)].abs() < self.a[b].abs() {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        best
    }
}

/// Smith normal form of a square integer matrix.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    assert!(m.is_square(), "smith normal form of non-square matrix");
    let n = m.rows();
    let mut w = Workspace {
        a: m.clone(),
        u: IntMatrix::identity(n),
        v: IntMatrix::identity(n),
    };

    for k in 0..n {
        while let Some((pi, pj)) = w.min_abs_pivot(k) {
            w.swap_rows(k, pi);
            w.swap_cols(k, pj);

            // clear the pivot column, then the pivot row
            let mut dirty = false;
            for i in k + 1..n {
                let q = &w.a[(i, k)] / &w.a[(k, k)];
                w.row_sub(i, k, &q);
                if !w.a[(i, k)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue; // remainders are strictly smaller; re-pick pivot
            }
            for j in k + 1..n {
                let q = &w.a[(k, j)] / &w.a[(k, k)];
                w.col_sub(j, k, &q);
                if !w.a[(k, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            break;
        }
        if w.a[(k, k)].is_negative() {
            w.negate_row(k);
        }
    }

    // enforce the divisibility chain d_k | d_{k+1}
    loop {
        let mut fixed = true;
        for k in 0..n.saturating_sub(1) {
            let dk = w.a[(k, k)].clone();
            let dn = w.a[(k + 1, k + 1)].clone();
            if dk.is_zero() && !dn.is_zero() {
                // zeros must trail; swap the diagonal entries
                w.swap_rows(k, k + 1);
                w.swap_cols(k, k + 1);
                fixed = false;
                continue;
            }
            if dk.is_zero() || (&dn % &dk).is_zero() {
                continue;
            }
            // fold d_{k+1} into the k-th position and re-reduce the 2x2 block
            w.col_add(k, k + 1);
            while let Some((pi, pj)) = w.min_abs_pivot(k) {
                w.swap_rows(k, pi);
                w.swap_cols(k, pj);
                let mut dirty = false;
                for i in k + 1..n {
                    let q = &w.a[(i, k)] / &w.a[(k, k)];
                    w.row_sub(i, k, &q);
                    if !w.a[(i, k)].is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                for j in k + 1..n {
                    let q = &w.a[(k, j)] / &w.a[(k, k)];
                    w.col_sub(j, k, &q);
                    if !w.a[(k, j)].is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                break;
            }
            if w.a[(k, k)].is_negative() {
                w.negate_row(k);
            }
            if w.a[(k + 1, k + 1)].is_negative() {
                w.negate_row(k + 1);
            }
            fixed = false;
        }
        if fixed {
            break;
        }
    }

    SmithDecomposition {
        u: w.u,
        v: w.v,
        d: w.a,
    }
}
