use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix with arbitrary-precision entries, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend(r.iter().cloned().map(Into::into));
        }
        Ok(IntegerMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn diagonal<T: Into<BigInt> + Clone>(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone().into();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Rows as machine integers, if every entry fits.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_i64()).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        Ok(out)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * &a[(n - 1, n - 1)])
    }

    pub(crate) fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub(crate) fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row[dst] += factor * row[src]
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = &self.data[src * self.cols + c] * factor;
            self.data[dst * self.cols + c] += v;
        }
    }

    /// col[dst] += factor * col[src]
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = &self.data[r * self.cols + src] * factor;
            self.data[r * self.cols + dst] += v;
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -std::mem::take(&mut self.data[i * self.cols + c]);
            self.data[i * self.cols + c] = v;
        }
    }

    fn reversed(&self) -> Self {
        let mut out = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(self.rows - 1 - i, self.cols - 1 - j)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Row-style Hermite normal form of the row lattice, zero rows dropped.
    ///
    /// Echelon form with positive pivots; entries above each pivot lie in `[0, pivot)`.
    pub fn hermite_upper(&self) -> IntegerMatrix {
        let mut a = self.clone();
        let mut pivot_row = 0;
        let mut pivots = Vec::new();
        for col in 0..a.cols {
            if pivot_row == a.rows {
                break;
            }
            loop {
                // smallest nonzero magnitude at or below pivot_row
                let best = (pivot_row..a.rows)
                    .filter(|&i| !a[(i, col)].is_zero())
                    .min_by(|&i, &j| a[(i, col)].abs().cmp(&a[(j, col)].abs()));
                let Some(best) = best else { break };
                a.swap_rows(pivot_row, best);
                let mut done = true;
                for i in pivot_row + 1..a.rows {
                    if a[(i, col)].is_zero() {
                        continue;
                    }
                    let q = a[(i, col)].div_floor(&a[(pivot_row, col)]);
                    a.add_row_multiple(i, pivot_row, &-q);
                    if !a[(i, col)].is_zero() {
                        done = false;
                    }
                }
                if done {
                    if a[(pivot_row, col)].is_negative() {
                        a.negate_row(pivot_row);
                    }
                    pivots.push((pivot_row, col));
                    pivot_row += 1;
                    break;
                }
            }
        }
        for &(r, c) in &pivots {
            for i in 0..r {
                let q = a[(i, c)].div_floor(&a[(r, c)]);
                a.add_row_multiple(i, r, &-q);
            }
        }
        let rows: Vec<Vec<BigInt>> = (0..pivot_row).map(|i| a.row(i).to_vec()).collect();
        let mut out = IntegerMatrix::from_rows(&rows).unwrap_or_else(|_| IntegerMatrix::zeros(0, 0));
        if rows.is_empty() {
            out = IntegerMatrix::zeros(0, self.cols);
        }
        out
    }

    /// Lower-triangular Hermite normal form: zero above the diagonal, positive
    /// diagonal, entries below each pivot reduced into `[0, pivot)`.
    ///
    /// For the kernel lattice of `x -> x_1 + 3 x_2 (mod 7)` this gives rows `(7, 0), (4, 1)`.
    pub fn hermite_lower(&self) -> IntegerMatrix {
        self.reversed().hermite_upper().reversed()
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        self.hermite_upper().rows()
    }

    /// Exact inverse over the rationals.
    pub fn inverse(&self) -> Result<RationalMatrix> {
        RationalMatrix::from_integer(self).inverse()
    }

    /// Whether `x` lies in the row lattice (square full-rank basis only).
    pub fn lattice_contains(&self, x: &[BigInt]) -> Result<bool> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: x.len(),
            });
        }
        let inv = self.inverse()?;
        // x = c B  <=>  c = x B^{-1}
        for j in 0..self.rows {
            let mut acc = BigRational::zero();
            for (i, xi) in x.iter().enumerate() {
                acc += BigRational::from_integer(xi.clone()) * &inv[(i, j)];
            }
            if !acc.is_integer() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Dense matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn from_integer(m: &IntegerMatrix) -> Self {
        RationalMatrix {
            rows: m.rows,
            cols: m.cols,
            data: m.data.iter().cloned().map(BigRational::from_integer).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_integer(&IntegerMatrix::identity(n))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        RationalMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut data = vec![BigRational::zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    data[i * other.cols + j] += a * &other[(k, j)];
                }
            }
        }
        Ok(RationalMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<RationalMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RationalMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&i| !a[(i, col)].is_zero()).ok_or(Error::Singular)?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = &a[(col, j)] / &p;
                inv[(col, j)] = &inv[(col, j)] / &p;
            }
            for i in 0..n {
                if i == col || a[(i, col)].is_zero() {
                    continue;
                }
                let f = a[(i, col)].clone();
                for j in 0..n {
                    let da = &f * &a[(col, j)];
                    a[(i, j)] -= da;
                    let di = &f * &inv[(col, j)];
                    inv[(i, j)] -= di;
                }
            }
        }
        Ok(inv)
    }

    pub fn determinant(&self) -> Result<BigRational> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = BigRational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&i| !a[(i, col)].is_zero()) else {
                return Ok(BigRational::zero());
            };
            if pivot != col {
                a.swap_rows(col, pivot);
                det = -det;
            }
            let p = a[(col, col)].clone();
            det *= &p;
            for i in col + 1..n {
                if a[(i, col)].is_zero() {
                    continue;
                }
                let f = &a[(i, col)] / &p;
                for j in col..n {
                    let d = &f * &a[(col, j)];
                    a[(i, j)] -= d;
                }
            }
        }
        Ok(det)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}
