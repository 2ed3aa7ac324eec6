//! Smith normal form over ℤ with tracked unimodular transforms and their inverses.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Result of `smith_normal_form`: `u * source * v = d` with `u`, `v`
/// unimodular, `d` diagonal with nonnegative entries in a divisibility chain.
/// `u_inv` and `v_inv` are the exact inverses of `u` and `v`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub source: IntMatrix,
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal of `d` (length min(rows, cols)).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.entry(i, i).clone()).collect()
    }

    /// Number of nonzero diagonal entries = rank of the source matrix.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Mutable state: the five matrices updated by synchronized elementary operations,
/// maintaining the invariants u·source·v = d, u·u_inv = 1, v·v_inv = 1.
struct Work {
    d: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn row_swap(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn col_swap(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    fn row_negate(&mut self, a: usize) {
        self.d.negate_row(a);
        self.u.negate_row(a);
        self.u_inv.negate_col(a);
    }

    /// row[dst] += k·row[src] on d and u; the inverse column operation on u_inv.
    fn row_addmul(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.d.add_multiple_of_row(dst, src, k);
        self.u.add_multiple_of_row(dst, src, k);
        self.u_inv.add_multiple_of_col(src, dst, &-k);
    }

    /// col[dst] += k·col[src] on d and v; the inverse row operation on v_inv.
    fn col_addmul(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.d.add_multiple_of_col(dst, src, k);
        self.v.add_multiple_of_col(dst, src, k);
        self.v_inv.add_multiple_of_row(src, dst, &-k);
    }

    /// Position of a minimal-|entry| nonzero element of the trailing submatrix
    /// starting at (t, t); row-major first wins ties. None if all zero.
    fn min_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let e = self.d.entry(i, j);
                if e.is_zero() {
                    continue;
                }
                let a = e.abs();
                match &best {
                    Some((_, _, b)) if *b <= a => {}
                    _ => best = Some((i, j, a)),
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

/// Smith normal form by minimal-pivot elimination. Deterministic for a given
/// input; handles every shape including empty matrices.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (a.rows(), a.cols());
    let mut w = Work {
        d: a.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };

    'pivots: for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = w.min_nonzero(t) else {
                break 'pivots; // trailing submatrix is zero
            };
            w.row_swap(t, pi);
            w.col_swap(t, pj);

            // Reduce column t below and row t right of the pivot; truncated
            // quotients leave remainders strictly smaller than the pivot, so
            // re-selecting the minimal pivot terminates.
            let mut dirty = false;
            for i in t + 1..rows {
                if w.d.entry(i, t).is_zero() {
                    continue;
                }
                let q = w.d.entry(i, t) / w.d.entry(t, t);
                if !q.is_zero() {
                    w.row_addmul(i, t, &-q);
                }
                if !w.d.entry(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if w.d.entry(t, j).is_zero() {
                    continue;
                }
                let q = w.d.entry(t, j) / w.d.entry(t, t);
                if !q.is_zero() {
                    w.col_addmul(j, t, &-q);
                }
                if !w.d.entry(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }

            // Pivot now isolated; force it to divide the rest of the submatrix
            // so the diagonal comes out as a divisibility chain.
            let pivot = w.d.entry(t, t).clone();
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !(w.d.entry(i, j) % &pivot).is_zero())
            });
            match offender {
                Some(i) => {
                    w.row_addmul(t, i, &BigInt::from(1));
                }
                None => break,
            }
        }
    }

    for t in 0..rows.min(cols) {
        if w.d.entry(t, t).is_negative() {
            w.row_negate(t);
        }
    }

    SmithDecomposition {
        source: a.clone(),
        u: w.u,
        d: w.d,
        v: w.v,
        u_inv: w.u_inv,
        v_inv: w.v_inv,
    }
}
