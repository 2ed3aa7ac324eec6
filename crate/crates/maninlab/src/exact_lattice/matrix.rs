//! Dense integer matrices with arbitrary-precision entries.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Dense row-major matrix over ℤ. All arithmetic is exact at any magnitude.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

/// JSON form: entries as decimal strings to keep arbitrary precision bit-exact.
#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<String>,
}

impl TryFrom<MatrixRepr> for IntMatrix {
    type Error = String;

    fn try_from(r: MatrixRepr) -> std::result::Result<Self, String> {
        let entries = r
            .entries
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(|e| format!("bad integer {s:?}: {e}")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        IntMatrix::new(r.rows, r.cols, entries).map_err(|e| e.to_string())
    }
}

impl From<IntMatrix> for MatrixRepr {
    fn from(m: IntMatrix) -> Self {
        MatrixRepr {
            rows: m.rows,
            cols: m.cols,
            entries: m.entries.iter().map(|e| e.to_string()).collect(),
        }
    }
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.entry_mut(i, i) = BigInt::one();
        }
        m
    }

    /// Build from row slices of machine integers. Panics on ragged input;
    /// intended for literal matrices in code and tests.
    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let entries = rows.iter().flat_map(|row| row.iter().map(|&x| BigInt::from(x))).collect();
        IntMatrix { rows: r, cols: c, entries }
    }

    /// Build from column vectors (each of length `rows`).
    pub fn from_columns(rows: usize, cols: &[Vec<BigInt>]) -> Self {
        assert!(cols.iter().all(|c| c.len() == rows), "column length mismatch");
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                *m.entry_mut(i, j) = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.entry(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Matrix product. Panics on inner-dimension mismatch.
    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch in matrix product");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.entry(k, j);
                    if !b.is_zero() {
                        *out.entry_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    /// Matrix–vector product. Panics on length mismatch.
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "vector length mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.entry(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.entry_mut(j, i) = self.entry(i, j).clone();
            }
        }
        out
    }

    /// Horizontal concatenation. Panics on row-count mismatch.
    pub fn hstack(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, rhs.rows, "row count mismatch in hstack");
        let mut out = IntMatrix::zeros(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.entry_mut(i, j) = self.entry(i, j).clone();
            }
            for j in 0..rhs.cols {
                *out.entry_mut(i, self.cols + j) = rhs.entry(i, j).clone();
            }
        }
        out
    }

    /// Block-diagonal concatenation: self in the top-left, rhs bottom-right.
    pub fn block_diag(&self, rhs: &IntMatrix) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows + rhs.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.entry_mut(i, j) = self.entry(i, j).clone();
            }
        }
        for i in 0..rhs.rows {
            for j in 0..rhs.cols {
                *out.entry_mut(self.rows + i, self.cols + j) = rhs.entry(i, j).clone();
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    /// Panics if the matrix is not square.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.entries.clone();
        let at = |m: &Vec<BigInt>, i: usize, j: usize| m[i * n + j].clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if at(&m, k, k).is_zero() {
                match (k + 1..n).find(|&i| !at(&m, i, k).is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            m.swap(k * n + j, i * n + j);
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = at(&m, i, j) * at(&m, k, k) - at(&m, i, k) * at(&m, k, j);
                    m[i * n + j] = num / &prev;
                }
                m[i * n + k] = BigInt::zero();
            }
            prev = at(&m, k, k);
        }
        sign * at(&m, n - 1, n - 1)
    }

    /// True if `|det| = 1` (square matrices only).
    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.determinant().abs().is_one()
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub(crate) fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let e = self.entry_mut(a, j);
            *e = -std::mem::take(e);
        }
    }

    pub(crate) fn negate_col(&mut self, a: usize) {
        for i in 0..self.rows {
            let e = self.entry_mut(i, a);
            *e = -std::mem::take(e);
        }
    }

    /// row[dst] += k * row[src]
    pub(crate) fn add_multiple_of_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        assert_ne!(dst, src);
        for j in 0..self.cols {
            let add = self.entry(src, j) * k;
            *self.entry_mut(dst, j) += add;
        }
    }

    /// col[dst] += k * col[src]
    pub(crate) fn add_multiple_of_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        assert_ne!(dst, src);
        for i in 0..self.rows {
            let add = self.entry(i, src) * k;
            *self.entry_mut(i, dst) += add;
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self.entry(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = IntMatrix::from_rows(&[&[1, 2], &[3, 4]]);
        let b = IntMatrix::from_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b), IntMatrix::from_rows(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.transpose(), IntMatrix::from_rows(&[&[1, 3], &[2, 4]]));
    }

    #[test]
    fn determinant_small_cases() {
        assert_eq!(IntMatrix::identity(4).determinant(), BigInt::from(1));
        let a = IntMatrix::from_rows(&[&[2, 4], &[6, 8]]);
        assert_eq!(a.determinant(), BigInt::from(-8));
        let s = IntMatrix::from_rows(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(s.determinant(), BigInt::from(0));
        let m = IntMatrix::from_rows(&[&[0, 2], &[3, 0]]);
        assert_eq!(m.determinant(), BigInt::from(-6));
    }

    #[test]
    fn determinant_empty_matrix_is_one() {
        assert_eq!(IntMatrix::zeros(0, 0).determinant(), BigInt::from(1));
    }

    #[test]
    fn json_round_trip_preserves_large_entries() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let m = IntMatrix::new(1, 2, vec![big.clone(), -big]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.contains("\"123456789012345678901234567890\""));
        let back: IntMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn json_rejects_wrong_entry_count() {
        let bad = r#"{"rows":2,"cols":2,"entries":["1","2","3"]}"#;
        assert!(serde_json::from_str::<IntMatrix>(bad).is_err());
    }

    #[test]
    fn elementary_ops() {
        let mut m = IntMatrix::from_rows(&[&[1, 0], &[5, 7]]);
        m.add_multiple_of_row(1, 0, &BigInt::from(-5));
        assert_eq!(m, IntMatrix::from_rows(&[&[1, 0], &[0, 7]]));
        m.swap_cols(0, 1);
        assert_eq!(m, IntMatrix::from_rows(&[&[0, 1], &[7, 0]]));
        m.negate_row(1);
        assert_eq!(m, IntMatrix::from_rows(&[&[0, 1], &[-7, 0]]));
    }
}
