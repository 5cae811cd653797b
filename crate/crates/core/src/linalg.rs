//! Dense integer matrices over arbitrary-precision integers and Smith normal
//! form with the unimodular transforms that certify it.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left_rows}x{left_cols} times {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("matrix of shape {rows}x{cols} has {len} entries")]
    BadShape { rows: usize, cols: usize, len: usize },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
}

/// Row-major dense matrix of `BigInt`s.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(LinalgError::BadShape { rows, cols, len: entries.len() });
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    /// Builds a matrix from nested rows; all rows must have equal length.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(LinalgError::BadShape { rows: r, cols: c, len: entries.len() + row.len() });
            }
            entries.extend(row.iter().cloned().map(Into::into));
        }
        IntMatrix::new(r, c, entries)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
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

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_nested(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Exact product `self · other`.
    pub fn multiply(&self, other: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn subtract(&self, other: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(IntMatrix { rows: self.rows, cols: self.cols, entries })
    }

    /// `self - I`; only meaningful for square matrices.
    pub fn minus_identity(&self) -> Result<IntMatrix, LinalgError> {
        self.require_square()?;
        self.subtract(&IntMatrix::identity(self.rows))
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j { e.is_one() } else { e.is_zero() }
                })
            })
    }

    fn require_square(&self) -> Result<(), LinalgError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt, LinalgError> {
        self.require_square()?;
        let n = self.rows;
        let mut m = self.to_nested();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                    m[i][j] = v;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        Ok(sign * &m[n - 1][n - 1])
    }

    /// Rank over the rationals via fraction-free Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.to_nested();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        let mut prev = BigInt::one();
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(p, rank);
            for i in rank + 1..rows {
                for j in col + 1..cols {
                    let v = (&m[i][j] * &m[rank][col] - &m[i][col] * &m[rank][j]) / &prev;
                    m[i][j] = v;
                }
                m[i][col] = BigInt::zero();
            }
            prev = m[rank][col].clone();
            rank += 1;
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += factor · row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let v = &self.entries[src * self.cols + j] * factor;
            self.entries[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += factor · col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let v = &self.entries[i * self.cols + src] * factor;
            self.entries[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let e = &mut self.entries[i * self.cols + j];
            *e = -std::mem::take(e);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// `left · A · right = diag(divisors, 0, …, 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub rank: usize,
    pub divisors: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithDecomposition {
    /// The diagonal matrix `diag(e_1, …, e_r, 0, …, 0)` of size `n`.
    pub fn diagonal(&self, n: usize) -> IntMatrix {
        let mut d = IntMatrix::zeros(n, n);
        for (i, e) in self.divisors.iter().enumerate() {
            d.set(i, i, e.clone());
        }
        d
    }

    /// Checks every structural property of the decomposition against `a`.
    pub fn certifies(&self, a: &IntMatrix) -> bool {
        let n = a.rows();
        let chain = self.divisors.iter().all(|e| e.is_positive())
            && self.divisors.windows(2).all(|w| (&w[1] % &w[0]).is_zero());
        let unimodular = |m: &IntMatrix| m.determinant().map(|d| d.abs().is_one()).unwrap_or(false);
        let product = self
            .left
            .multiply(a)
            .and_then(|sa| sa.multiply(&self.right))
            .map(|sat| sat == self.diagonal(n))
            .unwrap_or(false);
        chain && self.rank == self.divisors.len() && unimodular(&self.left) && unimodular(&self.right) && product
    }
}

/// Entry of least nonzero absolute value in the trailing block starting at
/// `(start, start)`; ties resolve in row-major order.
fn min_abs_entry(m: &IntMatrix, start: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in start..m.rows() {
        for j in start..m.cols() {
            let v = m.get(i, j);
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            if best.as_ref().map_or(true, |(_, b)| a < *b) {
                best = Some(((i, j), a));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

/// Smith normal form of a square integer matrix.
///
/// Pivots on the smallest nonzero entry at every step and records each row
/// operation in `left` and each column operation in `right`.
pub fn smith_normal_form(a: &IntMatrix) -> Result<SmithDecomposition, LinalgError> {
    a.require_square()?;
    let n = a.rows();
    let mut m = a.clone();
    let mut left = IntMatrix::identity(n);
    let mut right = IntMatrix::identity(n);
    let mut divisors = Vec::new();

    for p in 0..n {
        let Some((i0, j0)) = min_abs_entry(&m, p) else {
            break;
        };
        m.swap_rows(p, i0);
        left.swap_rows(p, i0);
        m.swap_cols(p, j0);
        right.swap_cols(p, j0);

        loop {
            let pivot = m.get(p, p).clone();
            for i in p + 1..n {
                if !m.get(i, p).is_zero() {
                    let q = -m.get(i, p).div_floor(&pivot);
                    m.add_row_multiple(i, p, &q);
                    left.add_row_multiple(i, p, &q);
                }
            }
            for j in p + 1..n {
                if !m.get(p, j).is_zero() {
                    let q = -m.get(p, j).div_floor(&pivot);
                    m.add_col_multiple(j, p, &q);
                    right.add_col_multiple(j, p, &q);
                }
            }

            // Remainders left in the pivot row or column are smaller than the
            // pivot; move the smallest one into place and repeat.
            let mut smallest: Option<(bool, usize, BigInt)> = None;
            for i in p + 1..n {
                let v = m.get(i, p);
                if !v.is_zero() && smallest.as_ref().map_or(true, |s| v.abs() < s.2) {
                    smallest = Some((true, i, v.abs()));
                }
            }
            for j in p + 1..n {
                let v = m.get(p, j);
                if !v.is_zero() && smallest.as_ref().map_or(true, |s| v.abs() < s.2) {
                    smallest = Some((false, j, v.abs()));
                }
            }
            if let Some((is_row, idx, _)) = smallest {
                if is_row {
                    m.swap_rows(p, idx);
                    left.swap_rows(p, idx);
                } else {
                    m.swap_cols(p, idx);
                    right.swap_cols(p, idx);
                }
                continue;
            }

            let pivot = m.get(p, p).clone();
            let offending = (p + 1..n)
                .flat_map(|i| (p + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !(m.get(i, j) % &pivot).is_zero());
            match offending {
                Some((i, _)) => {
                    let one = BigInt::one();
                    m.add_row_multiple(p, i, &one);
                    left.add_row_multiple(p, i, &one);
                }
                None => break,
            }
        }

        if m.get(p, p).is_negative() {
            m.negate_row(p);
            left.negate_row(p);
        }
        divisors.push(m.get(p, p).clone());
    }

    Ok(SmithDecomposition { rank: divisors.len(), divisors, left, right })
}
