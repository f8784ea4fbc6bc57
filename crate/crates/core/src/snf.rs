//! Smith normal form over the integers (or any exact scalar).
//!
//! `smith_normal_form` factors `A` as `left * A * right = diagonal` with
//! `left`, `right` unimodular and the diagonal entries nonnegative, each
//! dividing the next. Everything downstream that touches integer linear
//! algebra (kernels, quotient presentations, solvability of `Ax = b`) runs
//! through this decomposition.

use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct SmithDecomposition<T: Scalar> {
    /// Unimodular row transform.
    pub left: Matrix<T>,
    /// left * a * right, diagonal with the divisibility chain.
    pub diagonal: Matrix<T>,
    /// Unimodular column transform.
    pub right: Matrix<T>,
    /// Count of nonzero diagonal entries.
    pub rank: usize,
}

impl<T: Scalar> SmithDecomposition<T> {
    pub fn diagonal_entries(&self) -> Vec<T> {
        let n = self.diagonal.rows().min(self.diagonal.cols());
        (0..n).map(|i| self.diagonal[(i, i)].clone()).collect()
    }

    /// Nonzero diagonal entries, in chain order.
    pub fn elementary_divisors(&self) -> Vec<T> {
        self.diagonal_entries()
            .into_iter()
            .filter(|d| !d.is_zero())
            .collect()
    }

    /// Basis for `ker(a)` as matrix columns: the last `cols - rank` columns
    /// of `right`, since `a * right` has those columns zero.
    pub fn kernel_basis(&self) -> Matrix<T> {
        let cols = self.right.cols();
        self.right.submatrix_columns(self.rank..cols)
    }
}

fn abs<T: Scalar>(x: &T) -> T {
    if *x < T::zero() {
        T::zero() - x.clone()
    } else {
        x.clone()
    }
}

/// Reduce `a` to Smith normal form by elementary row and column operations,
/// accumulating the transforms.
pub fn smith_normal_form<T: Scalar>(a: &Matrix<T>) -> SmithDecomposition<T> {
    let rows = a.rows();
    let cols = a.cols();
    let mut d = a.clone();
    let mut left = Matrix::identity(rows);
    let mut right = Matrix::identity(cols);

    let limit = rows.min(cols);
    let mut t = 0;
    while t < limit {
        // Pivot: a nonzero entry of minimal absolute value in the
        // uneliminated block. Minimal pivots keep the reduction loop short
        // and the intermediate entries small.
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !d[(i, j)].is_zero())
            .min_by_key(|&(i, j)| abs(&d[(i, j)]));
        let (pi, pj) = match pivot {
            Some(p) => p,
            None => break,
        };
        d.swap_rows(t, pi);
        left.swap_rows(t, pi);
        d.swap_cols(t, pj);
        right.swap_cols(t, pj);

        // Clear row t and column t. Each remainder step strictly shrinks
        // |d[t][t]| or the cleared entry, so this terminates.
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = entry_quotient(&d[(i, t)], &d[(t, t)]);
                let neg_q = T::zero() - q;
                d.add_multiple_of_row(i, t, &neg_q);
                left.add_multiple_of_row(i, t, &neg_q);
                if !d[(i, t)].is_zero() {
                    // Remainder smaller than the pivot: promote it.
                    d.swap_rows(t, i);
                    left.swap_rows(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = entry_quotient(&d[(t, j)], &d[(t, t)]);
                let neg_q = T::zero() - q;
                d.add_multiple_of_col(j, t, &neg_q);
                right.add_multiple_of_col(j, t, &neg_q);
                if !d[(t, j)].is_zero() {
                    d.swap_cols(t, j);
                    right.swap_cols(t, j);
                    dirty = true;
                }
            }
            if !dirty && (t + 1..rows).all(|i| d[(i, t)].is_zero()) {
                break;
            }
        }

        // Divisibility: if some remaining entry is not divisible by the
        // pivot, fold its column into column t and re-run the clearing loop
        // on a strictly smaller pivot.
        let offender = (t + 1..rows)
            .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !(d[(i, j)].clone() % d[(t, t)].clone()).is_zero());
        if let Some((_, j)) = offender {
            d.add_multiple_of_col(t, j, &T::one());
            right.add_multiple_of_col(t, j, &T::one());
            continue; // redo position t with the new column
        }

        if d[(t, t)] < T::zero() {
            d.negate_row(t);
            left.negate_row(t);
        }
        t += 1;
    }

    let rank = (0..limit).filter(|&i| !d[(i, i)].is_zero()).count();
    debug_assert_eq!(left.mul(a).mul(&right), d);
    SmithDecomposition {
        left,
        diagonal: d,
        right,
        rank,
    }
}

/// Quotient used when clearing entries: rounds toward the nearest multiple so
/// the remainder has at most half the pivot's absolute value.
fn entry_quotient<T: Scalar>(entry: &T, pivot: &T) -> T {
    let q = entry.clone() / pivot.clone();
    let r = entry.clone() - q.clone() * pivot.clone();
    let two_r = abs(&r) + abs(&r);
    if two_r > abs(pivot) {
        if (r < T::zero()) == (*pivot < T::zero()) {
            q + T::one()
        } else {
            q - T::one()
        }
    } else {
        q
    }
}

/// Inverse of a unimodular matrix. Runs the Smith reduction on `u`; the
/// diagonal must come out as the identity, which makes `right * left` the
/// inverse.
pub fn unimodular_inverse<T: Scalar>(u: &Matrix<T>) -> Matrix<T> {
    assert!(u.is_square(), "only square matrices can be unimodular");
    let n = u.rows();
    let dec = smith_normal_form(u);
    assert_eq!(
        dec.diagonal,
        Matrix::identity(n),
        "matrix is not unimodular"
    );
    // left * u * right = I, so u^{-1} = right * left.
    dec.right.mul(&dec.left)
}
