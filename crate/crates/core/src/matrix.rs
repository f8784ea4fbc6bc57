//! Dense matrices over an exact integer scalar.
//!
//! Sizes here are tiny (presentation matrices, differentials of small
//! complexes), so the representation is a plain row-major `Vec` and the
//! algorithms favor exactness and clarity over asymptotics. Zero-row and
//! zero-column matrices are first-class: boundary degrees of a chain complex
//! produce them routinely.

use crate::scalar::Scalar;
use std::fmt;
use std::ops::{Index, IndexMut};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    /// Entries in row-major order; `entries.len()` must equal `rows * cols`.
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Self {
        assert_eq!(
            entries.len(),
            rows * cols,
            "matrix entry count must match dimensions"
        );
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::new(rows, cols, vec![T::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[T]) -> Self {
        assert!(diag.len() <= rows.min(cols));
        let mut m = Matrix::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|row| row.len() == c),
            "all rows must have equal length"
        );
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix::new(rows, cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(T::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "inner dimensions must agree for multiplication"
        );
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + self[(i, k)].clone() * other[(k, j)].clone();
            }
            acc
        })
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack needs equal row counts");
        Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn submatrix_columns(&self, range: std::ops::Range<usize>) -> Self {
        assert!(range.end <= self.cols);
        let start = range.start;
        Matrix::from_fn(self.rows, range.len(), |i, j| self[(i, start + j)].clone())
    }

    pub fn submatrix_rows(&self, range: std::ops::Range<usize>) -> Self {
        assert!(range.end <= self.rows);
        let start = range.start;
        Matrix::from_fn(range.len(), self.cols, |i, j| self[(start + i, j)].clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += factor * row[src]
    pub fn add_multiple_of_row(&mut self, dst: usize, src: usize, factor: &T) {
        assert_ne!(dst, src);
        for j in 0..self.cols {
            let add = factor.clone() * self[(src, j)].clone();
            self[(dst, j)] = self[(dst, j)].clone() + add;
        }
    }

    /// col[dst] += factor * col[src]
    pub fn add_multiple_of_col(&mut self, dst: usize, src: usize, factor: &T) {
        assert_ne!(dst, src);
        for i in 0..self.rows {
            let add = factor.clone() * self[(i, src)].clone();
            self[(i, dst)] = self[(i, dst)].clone() + add;
        }
    }

    pub fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            self[(r, j)] = T::zero() - self[(r, j)].clone();
        }
    }

    pub fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            self[(i, c)] = T::zero() - self[(i, c)].clone();
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> T {
        assert!(self.is_square(), "determinant needs a square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut m = self.clone();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = T::zero() - sign;
                    }
                    None => return T::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[(i, j)].clone() * m[(k, k)].clone()
                        - m[(i, k)].clone() * m[(k, j)].clone();
                    // Bareiss: division by the previous pivot is exact.
                    m[(i, j)] = num / prev.clone();
                }
                m[(i, k)] = T::zero();
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }

    /// Rank by fraction-free elimination with full pivot search. Independent
    /// of the Smith normal form code path on purpose: the two are
    /// cross-checked in tests.
    pub fn rank_via_elimination(&self) -> usize {
        let mut m = self.clone();
        let limit = m.rows.min(m.cols);
        let mut prev = T::one();
        let mut rank = 0;
        for k in 0..limit {
            let pivot = (k..m.rows)
                .flat_map(|i| (k..m.cols).map(move |j| (i, j)))
                .find(|&(i, j)| !m[(i, j)].is_zero());
            let (pi, pj) = match pivot {
                Some(p) => p,
                None => break,
            };
            m.swap_rows(k, pi);
            m.swap_cols(k, pj);
            for i in k + 1..m.rows {
                for j in k + 1..m.cols {
                    let num = m[(i, j)].clone() * m[(k, k)].clone()
                        - m[(i, k)].clone() * m[(k, j)].clone();
                    m[(i, j)] = num / prev.clone();
                }
                m[(i, k)] = T::zero();
            }
            prev = m[(k, k)].clone();
            rank += 1;
        }
        rank
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix::new(self.rows, self.cols, self.entries.iter().map(f).collect())
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
