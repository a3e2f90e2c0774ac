//! Alternating sign matrices: validation, boundary statistics, enumeration.
//!
//! An alternating sign matrix (ASM) of order `n` is an `n x n` matrix with
//! entries in `{-1, 0, 1}` whose rows and columns each sum to one and whose
//! nonzero entries alternate in sign along every row and column. Permutation
//! matrices are exactly the ASMs without `-1` entries.

use crate::triangle::{complete_triangles, MonotoneTriangle};
use thiserror::Error;

/// Validation failure for a candidate alternating sign matrix.
///
/// The shape and alphabet variants ([`Empty`](AsmError::Empty),
/// [`NotSquare`](AsmError::NotSquare), [`BadEntry`](AsmError::BadEntry))
/// describe malformed input; the remaining variants describe a well-formed
/// matrix that breaks an alternating-sign invariant, naming the first
/// violation met when scanning rows top to bottom and then columns left to
/// right. All coordinates are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AsmError {
    /// The matrix has no rows.
    #[error("matrix has no rows")]
    Empty,
    /// Row `row` does not have `expected` entries.
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    /// Entry `(row, col)` is outside `{-1, 0, 1}`.
    #[error("entry ({row}, {col}) is {value}, outside {{-1, 0, 1}}")]
    BadEntry { row: usize, col: usize, value: i64 },
    /// Partial sums along row `row` leave `{0, 1}` at column `col`, so the
    /// nonzero entries of the row do not alternate starting with `+1`.
    #[error("row {row} breaks sign alternation at column {col}")]
    RowAlternation { row: usize, col: usize },
    /// Row `row` sums to `sum` instead of one.
    #[error("row {row} sums to {sum}, expected 1")]
    RowSum { row: usize, sum: i64 },
    /// Partial sums along column `col` leave `{0, 1}` at row `row`.
    #[error("column {col} breaks sign alternation at row {row}")]
    ColumnAlternation { col: usize, row: usize },
    /// Column `col` sums to `sum` instead of one.
    #[error("column {col} sums to {sum}, expected 1")]
    ColumnSum { col: usize, sum: i64 },
    /// The requested statistic needs a larger matrix.
    #[error("order {order} is too small, need at least {min}")]
    OrderTooSmall { order: usize, min: usize },
}

/// Checks the alternating sign matrix conditions on a rectangular array.
///
/// Equivalent to the textbook definition: all row and column partial sums
/// (taken from either end) lie in `{0, 1}` and every full row and column
/// sums to one.
pub fn validate(rows: &[Vec<i64>]) -> Result<(), AsmError> {
    if rows.is_empty() {
        return Err(AsmError::Empty);
    }
    let n = rows.len();
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(AsmError::NotSquare {
                row: i + 1,
                len: row.len(),
                expected: n,
            });
        }
        for (j, &v) in row.iter().enumerate() {
            if !(-1..=1).contains(&v) {
                return Err(AsmError::BadEntry {
                    row: i + 1,
                    col: j + 1,
                    value: v,
                });
            }
        }
    }
    for (i, row) in rows.iter().enumerate() {
        let mut run = 0;
        for (j, &v) in row.iter().enumerate() {
            run += v;
            if !(0..=1).contains(&run) {
                return Err(AsmError::RowAlternation {
                    row: i + 1,
                    col: j + 1,
                });
            }
        }
        if run != 1 {
            return Err(AsmError::RowSum {
                row: i + 1,
                sum: run,
            });
        }
    }
    for j in 0..n {
        let mut run = 0;
        for (i, row) in rows.iter().enumerate() {
            run += row[j];
            if !(0..=1).contains(&run) {
                return Err(AsmError::ColumnAlternation {
                    col: j + 1,
                    row: i + 1,
                });
            }
        }
        if run != 1 {
            return Err(AsmError::ColumnSum {
                col: j + 1,
                sum: run,
            });
        }
    }
    Ok(())
}

/// The shape of the top two rows of an alternating sign matrix of order at
/// least two, read off the corresponding monotone triangle: `k` is the
/// single entry of triangle row one (the column of the `1` in matrix row
/// one) and `i < j` are the two entries of triangle row two (the columns
/// whose partial sums over the first two matrix rows equal one).
///
/// Interlacing forces `1 <= i <= k <= j <= n`, so exactly three shapes
/// occur: `i < k < j` (matrix row two carries `+1, -1, +1`), `i = k < j`,
/// and `i < k = j` (row two carries a single `+1`). All columns are
/// 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TopTwoRowIndex {
    /// Smaller entry of triangle row two.
    pub i: usize,
    /// Larger entry of triangle row two.
    pub j: usize,
    /// Entry of triangle row one.
    pub k: usize,
}

/// A validated alternating sign matrix with entries stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Asm {
    n: usize,
    entries: Vec<i8>,
}

impl Asm {
    /// Validates `rows` and takes ownership of the entries.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, AsmError> {
        validate(rows)?;
        let n = rows.len();
        let entries = rows.iter().flatten().map(|&v| v as i8).collect();
        Ok(Asm { n, entries })
    }

    /// Validating constructor over a flat row-major sign vector.
    pub(crate) fn from_signs(n: usize, entries: Vec<i8>) -> Result<Self, AsmError> {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                entries[i * n..(i + 1) * n]
                    .iter()
                    .map(|&v| v as i64)
                    .collect()
            })
            .collect();
        validate(&rows)?;
        Ok(Asm { n, entries })
    }

    /// The identity permutation matrix of order `n`. Panics when `n` is zero.
    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "matrix order must be positive");
        let mut entries = vec![0i8; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        Asm { n, entries }
    }

    /// The number of rows (and columns).
    pub fn order(&self) -> usize {
        self.n
    }

    /// Entry at 0-based `(row, col)`. Panics when out of range.
    pub fn get(&self, row: usize, col: usize) -> i8 {
        assert!(row < self.n && col < self.n, "index out of range");
        self.entries[row * self.n + col]
    }

    /// Rows top to bottom, each a slice of `{-1, 0, 1}` entries.
    pub fn rows(&self) -> impl Iterator<Item = &[i8]> {
        self.entries.chunks(self.n)
    }

    /// The monotone triangle whose row `i` lists the columns with partial
    /// column sum one after the first `i` matrix rows. This is the inverse
    /// of [`MonotoneTriangle::to_asm`].
    pub fn to_triangle(&self) -> MonotoneTriangle {
        let n = self.n;
        let mut sums = vec![0i8; n];
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(i + 1);
            for (c, sum) in sums.iter_mut().enumerate() {
                *sum += self.entries[i * n + c];
                if *sum == 1 {
                    row.push(c as i64 + 1);
                }
            }
            rows.push(row);
        }
        MonotoneTriangle::from_rows(rows).expect("partial column sums of an ASM form a triangle")
    }

    /// Columns of the row-one `1` and the row-`n` `1`, both 1-based.
    pub fn first_last_index(&self) -> (usize, usize) {
        let first = self.entries[..self.n]
            .iter()
            .position(|&v| v == 1)
            .expect("first row of an ASM contains a 1");
        let last = self.entries[(self.n - 1) * self.n..]
            .iter()
            .position(|&v| v == 1)
            .expect("last row of an ASM contains a 1");
        (first + 1, last + 1)
    }

    /// The triple `(i, j, k)` described on [`TopTwoRowIndex`].
    ///
    /// Fails with [`AsmError::OrderTooSmall`] when the order is one, since
    /// there is no second row.
    pub fn top_two_row_index(&self) -> Result<TopTwoRowIndex, AsmError> {
        if self.n < 2 {
            return Err(AsmError::OrderTooSmall {
                order: self.n,
                min: 2,
            });
        }
        let k = 1 + self.entries[..self.n]
            .iter()
            .position(|&v| v == 1)
            .expect("first row of an ASM contains a 1");
        let mut pair = [0usize; 2];
        let mut found = 0;
        for c in 0..self.n {
            if self.entries[c] + self.entries[self.n + c] == 1 {
                pair[found.min(1)] = c + 1;
                found += 1;
            }
        }
        debug_assert_eq!(found, 2);
        let (i, j) = (pair[0], pair[1]);
        debug_assert!(1 <= i && i <= k && k <= j && j <= self.n && i < j);
        Ok(TopTwoRowIndex { i, j, k })
    }
}

/// Enumerates every alternating sign matrix of order `n`, ordered by the
/// lexicographic order of the corresponding monotone triangles.
///
/// The stream has size `1, 2, 7, 42, 429, 7436, 218348, ...` for
/// `n = 1, 2, 3, ...` and is practical on a desktop up to about `n = 7`.
/// Panics when `n` is zero.
pub fn enumerate_asms(n: usize) -> impl Iterator<Item = Asm> {
    complete_triangles(n).map(|t| {
        t.to_asm()
            .expect("complete triangles convert to alternating sign matrices")
    })
}
