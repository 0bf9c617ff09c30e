//! Dense non-negative integer matrices with checked arithmetic.
//!
//! Entries are `u64` and every operation that could wrap uses checked
//! arithmetic; overflow is reported as [`MatrixError::Overflow`] rather than
//! silently wrapping. Matrices always have at least one row and one column.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// A dense `rows x cols` matrix of non-negative integers, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

/// Errors from matrix construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixError {
    /// A matrix must have at least one row and one column.
    EmptyShape,
    /// The entry buffer does not match `rows * cols`.
    EntryCount { expected: usize, found: usize },
    /// Ragged row input: a row's length differs from the first row's.
    RaggedRows { row: usize, expected: usize, found: usize },
    /// Operand shapes are incompatible for the attempted operation.
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    /// The operation needs a square matrix.
    NotSquare { rows: usize, cols: usize },
    /// Power bounds start at 1.
    ZeroPowerBound,
    /// A sum or product does not fit in `u64`.
    Overflow,
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::EmptyShape => write!(f, "matrix must have at least one row and column"),
            MatrixError::EntryCount { expected, found } => {
                write!(f, "expected {expected} entries, found {found}")
            }
            MatrixError::RaggedRows {
                row,
                expected,
                found,
            } => write!(
                f,
                "row {row} has {found} entries, expected {expected}"
            ),
            MatrixError::DimensionMismatch { left, right } => write!(
                f,
                "incompatible shapes {}x{} and {}x{}",
                left.0, left.1, right.0, right.1
            ),
            MatrixError::NotSquare { rows, cols } => {
                write!(f, "matrix is {rows}x{cols}, expected square")
            }
            MatrixError::ZeroPowerBound => write!(f, "power bound must be at least 1"),
            MatrixError::Overflow => write!(f, "arithmetic overflow in u64"),
        }
    }
}

impl Matrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<u64>) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::EmptyShape);
        }
        let expected = rows
            .checked_mul(cols)
            .ok_or(MatrixError::Overflow)?;
        if entries.len() != expected {
            return Err(MatrixError::EntryCount {
                expected,
                found: entries.len(),
            });
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from a sequence of equal-length rows.
    pub fn from_rows(rows: Vec<Vec<u64>>) -> Result<Self, MatrixError> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(MatrixError::EmptyShape);
        }
        let cols = rows[0].len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(MatrixError::RaggedRows {
                    row: i,
                    expected: cols,
                    found: row.len(),
                });
            }
        }
        let nrows = rows.len();
        let entries = rows.into_iter().flatten().collect();
        Matrix::new(nrows, cols, entries)
    }

    /// The `rows x cols` zero matrix.
    pub fn zero(rows: usize, cols: usize) -> Result<Self, MatrixError> {
        Matrix::new(rows, cols, vec![0; rows.checked_mul(cols).ok_or(MatrixError::Overflow)?])
    }

    /// The `n x n` identity matrix.
    pub fn identity(n: usize) -> Result<Self, MatrixError> {
        let mut m = Matrix::zero(n, n)?;
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        Ok(m)
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

    /// The entry at `(row, col)`, zero-based.
    ///
    /// Panics when the position is out of range.
    pub fn get(&self, row: usize, col: usize) -> u64 {
        assert!(
            row < self.rows && col < self.cols,
            "entry ({row},{col}) out of range for {}x{} matrix",
            self.rows,
            self.cols
        );
        self.entries[row * self.cols + col]
    }

    /// Row-major view of all entries.
    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    /// Iterates over the rows as slices.
    pub fn row_iter(&self) -> impl Iterator<Item = &[u64]> {
        self.entries.chunks(self.cols)
    }

    /// Checked sum of all entries.
    pub fn entry_sum(&self) -> Result<u64, MatrixError> {
        self.entries
            .iter()
            .try_fold(0u64, |acc, &x| acc.checked_add(x))
            .ok_or(MatrixError::Overflow)
    }

    /// Checked per-row sums.
    pub fn row_sums(&self) -> Result<Vec<u64>, MatrixError> {
        self.row_iter()
            .map(|row| {
                row.iter()
                    .try_fold(0u64, |acc, &x| acc.checked_add(x))
                    .ok_or(MatrixError::Overflow)
            })
            .collect()
    }

    /// Matrix product `self * other` with checked arithmetic.
    pub fn multiply(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut entries = vec![0u64; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entries[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.entries[k * other.cols + j];
                    let term = a.checked_mul(b).ok_or(MatrixError::Overflow)?;
                    let cell = &mut entries[i * other.cols + j];
                    *cell = cell.checked_add(term).ok_or(MatrixError::Overflow)?;
                }
            }
        }
        Matrix::new(self.rows, other.cols, entries)
    }

    /// Checked trace of a square matrix.
    pub fn trace(&self) -> Result<u64, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        (0..self.rows)
            .map(|i| self.entries[i * self.cols + i])
            .try_fold(0u64, |acc, x| acc.checked_add(x))
            .ok_or(MatrixError::Overflow)
    }

    /// Traces of `self^1 .. self^kmax` for a square matrix, `kmax >= 1`.
    pub fn trace_powers(&self, kmax: usize) -> Result<Vec<u64>, MatrixError> {
        if kmax == 0 {
            return Err(MatrixError::ZeroPowerBound);
        }
        if !self.is_square() {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut traces = Vec::with_capacity(kmax);
        let mut power = self.clone();
        traces.push(power.trace()?);
        for _ in 1..kmax {
            power = power.multiply(self)?;
            traces.push(power.trace()?);
        }
        Ok(traces)
    }

    /// The bipartite block matrix `[0 R; S 0]` for `R: m x n`, `S: n x m`.
    ///
    /// Its square is the block diagonal of `R*S` and `S*R`, which is what
    /// makes it the vertex matrix of the inflation graph of the pair.
    pub fn block_bipartite(r: &Matrix, s: &Matrix) -> Result<Matrix, MatrixError> {
        if s.rows != r.cols || s.cols != r.rows {
            return Err(MatrixError::DimensionMismatch {
                left: (r.rows, r.cols),
                right: (s.rows, s.cols),
            });
        }
        let m = r.rows;
        let n = r.cols;
        let size = m + n;
        let mut entries = vec![0u64; size * size];
        for i in 0..m {
            for j in 0..n {
                entries[i * size + (m + j)] = r.entries[i * n + j];
            }
        }
        for i in 0..n {
            for j in 0..m {
                entries[(m + i) * size + j] = s.entries[i * m + j];
            }
        }
        Matrix::new(size, size, entries)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.row_iter() {
            let mut first = true;
            for x in row {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
                first = false;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testdata;

    /// Independent multiply oracle: i128 accumulation, no shared code path.
    fn naive_multiply(a: &Matrix, b: &Matrix) -> Vec<i128> {
        assert_eq!(a.cols(), b.rows());
        let mut out = vec![0i128; a.rows() * b.cols()];
        for i in 0..a.rows() {
            for j in 0..b.cols() {
                let mut acc = 0i128;
                for k in 0..a.cols() {
                    acc += a.get(i, k) as i128 * b.get(k, j) as i128;
                }
                out[i * b.cols() + j] = acc;
            }
        }
        out
    }

    fn assert_matches_oracle(product: &Matrix, a: &Matrix, b: &Matrix) {
        let oracle = naive_multiply(a, b);
        let got: Vec<i128> = product.entries().iter().map(|&x| x as i128).collect();
        assert_eq!(got, oracle);
    }

    #[test]
    fn new_rejects_empty_shape() {
        assert_eq!(Matrix::new(0, 2, vec![]), Err(MatrixError::EmptyShape));
        assert_eq!(Matrix::new(2, 0, vec![]), Err(MatrixError::EmptyShape));
    }

    #[test]
    fn new_rejects_wrong_entry_count() {
        assert_eq!(
            Matrix::new(2, 2, vec![1, 2, 3]),
            Err(MatrixError::EntryCount {
                expected: 4,
                found: 3
            })
        );
    }

    #[test]
    fn from_rows_rejects_ragged_input() {
        assert_eq!(
            Matrix::from_rows(vec![vec![1, 2], vec![3]]),
            Err(MatrixError::RaggedRows {
                row: 1,
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn multiply_recovers_both_products_of_witness_pair() {
        let (a, b, r, s) = testdata::single_loop_pair();
        let rs = r.multiply(&s).unwrap();
        let sr = s.multiply(&r).unwrap();
        assert_eq!(rs, a);
        assert_eq!(sr, b);
        assert_matches_oracle(&rs, &r, &s);
        assert_matches_oracle(&sr, &s, &r);
    }

    #[test]
    fn multiply_by_identity_is_identity_map() {
        let (_, b, _, _) = testdata::single_loop_pair();
        let id = Matrix::identity(3).unwrap();
        assert_eq!(id.multiply(&b).unwrap(), b);
        assert_eq!(b.multiply(&id).unwrap(), b);
    }

    #[test]
    fn multiply_rejects_dimension_mismatch() {
        let a = Matrix::zero(2, 3).unwrap();
        let b = Matrix::zero(2, 3).unwrap();
        assert_eq!(
            a.multiply(&b),
            Err(MatrixError::DimensionMismatch {
                left: (2, 3),
                right: (2, 3)
            })
        );
    }

    #[test]
    fn multiply_reports_overflow() {
        let big = Matrix::from_rows(vec![vec![u64::MAX, u64::MAX]]).unwrap();
        let col = Matrix::from_rows(vec![vec![2], vec![2]]).unwrap();
        assert_eq!(big.multiply(&col), Err(MatrixError::Overflow));
    }

    #[test]
    fn trace_powers_agree_for_witnessed_pair() {
        let (a, b, _, _) = testdata::single_loop_pair();
        assert_eq!(a.trace_powers(2).unwrap(), vec![2, 2]);
        assert_eq!(b.trace_powers(2).unwrap(), vec![2, 2]);
    }

    #[test]
    fn trace_powers_of_zero_matrix_are_zero() {
        let z = Matrix::zero(2, 2).unwrap();
        assert_eq!(z.trace_powers(3).unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn trace_powers_rejects_zero_bound_and_non_square() {
        let z = Matrix::zero(2, 2).unwrap();
        assert_eq!(z.trace_powers(0), Err(MatrixError::ZeroPowerBound));
        let r = Matrix::zero(2, 3).unwrap();
        assert_eq!(
            r.trace_powers(1),
            Err(MatrixError::NotSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn trace_powers_reports_overflow() {
        let big = Matrix::from_rows(vec![vec![u64::MAX, 1], vec![1, 1]]).unwrap();
        assert_eq!(big.trace_powers(2), Err(MatrixError::Overflow));
    }

    #[test]
    fn block_bipartite_places_blocks_off_diagonal() {
        let (_, _, r, s) = testdata::single_loop_pair();
        let g = Matrix::block_bipartite(&r, &s).unwrap();
        assert_eq!(g.rows(), 5);
        assert_eq!(g.row_sums().unwrap(), vec![2, 1, 1, 1, 1]);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(g.get(i, j), 0);
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(g.get(2 + i, 2 + j), 0);
            }
        }
        assert_eq!(g.get(0, 2), r.get(0, 0));
        assert_eq!(g.get(2, 0), s.get(0, 0));
    }

    #[test]
    fn block_bipartite_of_zero_pair_is_zero() {
        let z = Matrix::zero(1, 1).unwrap();
        let g = Matrix::block_bipartite(&z, &z).unwrap();
        assert_eq!(g, Matrix::zero(2, 2).unwrap());
    }

    #[test]
    fn block_bipartite_rejects_incompatible_shapes() {
        let r = Matrix::zero(2, 3).unwrap();
        let s = Matrix::zero(2, 3).unwrap();
        assert!(matches!(
            Matrix::block_bipartite(&r, &s),
            Err(MatrixError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn block_bipartite_square_is_block_diagonal_of_products() {
        let (a, b, r, s) = testdata::single_loop_pair();
        let g = Matrix::block_bipartite(&r, &s).unwrap();
        let sq = g.multiply(&g).unwrap();
        let m = r.rows();
        let n = r.cols();
        for i in 0..m + n {
            for j in 0..m + n {
                let expected = if i < m && j < m {
                    a.get(i, j)
                } else if i >= m && j >= m {
                    b.get(i - m, j - m)
                } else {
                    0
                };
                assert_eq!(sq.get(i, j), expected, "square mismatch at ({i},{j})");
            }
        }
    }

    #[test]
    fn display_prints_rows_space_separated() {
        let (a, _, _, _) = testdata::single_loop_pair();
        assert_eq!(a.to_string(), "1 1\n0 1\n");
    }
}
