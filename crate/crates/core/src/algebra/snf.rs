//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntegerMatrix;

/// `diag = left * input * right` with `left`, `right` unimodular and
/// `diag[i][i] | diag[i+1][i+1]`, all diagonal entries nonnegative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub diag: IntegerMatrix,
    pub left: IntegerMatrix,
    pub right: IntegerMatrix,
}

impl SmithForm {
    pub fn diagonal_entries(&self) -> Vec<BigInt> {
        let k = self.diag.rows().min(self.diag.cols());
        (0..k).map(|i| self.diag[(i, i)].clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal_entries().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Computes the Smith normal form.
///
/// Pivot choice is the smallest nonzero magnitude in the active block, first
/// in row-major order, so the output is a deterministic function of the input.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut left = IntegerMatrix::identity(rows);
    let mut right = IntegerMatrix::identity(cols);

    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_entry(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        left.swap_rows(t, pi);
        a.swap_cols(t, pj);
        right.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row_multiple(i, t, &-&q);
                left.add_row_multiple(i, t, &-&q);
                if !a[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col_multiple(j, t, &-&q);
                right.add_col_multiple(j, t, &-&q);
                if !a[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a remainder is now smaller than the pivot; restart with it
                let (pi, pj) = min_in_cross(&a, t);
                a.swap_rows(t, pi);
                left.swap_rows(t, pi);
                a.swap_cols(t, pj);
                right.swap_cols(t, pj);
                continue;
            }
            // row and column cleared; enforce divisibility on the rest
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].is_multiple_of(&a[(t, t)]));
            match offender {
                Some((i, _)) => {
                    let one = BigInt::from(1);
                    a.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
        t += 1;
    }
    SmithForm {
        diag: a,
        left,
        right,
    }
}

fn min_entry(a: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            if a[(i, j)].is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[(bi, bj)].abs() <= a[(i, j)].abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

fn min_in_cross(a: &IntegerMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    for i in t + 1..a.rows() {
        if !a[(i, t)].is_zero()
            && (a[(best.0, best.1)].is_zero() || a[(i, t)].abs() < a[(best.0, best.1)].abs())
        {
            best = (i, t);
        }
    }
    for j in t + 1..a.cols() {
        if !a[(t, j)].is_zero()
            && (a[(best.0, best.1)].is_zero() || a[(t, j)].abs() < a[(best.0, best.1)].abs())
        {
            best = (t, j);
        }
    }
    best
}
