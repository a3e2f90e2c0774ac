//! Monotone triangles and their enumeration.
//!
//! A monotone triangle of order `n` is a triangular array with `i` entries in
//! row `i`, strictly increasing along each row, such that each entry of row
//! `i - 1` sits weakly between its two neighbours in row `i`. A triangle is
//! *complete* when its bottom row is `1, 2, ..., n`; complete triangles of
//! order `n` are in bijection with alternating sign matrices of order `n`
//! (see [`MonotoneTriangle::to_asm`]).

use crate::asm::Asm;
use thiserror::Error;

/// Validation failure for a candidate monotone triangle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangleError {
    /// The array has no rows.
    #[error("triangle has no rows")]
    Empty,
    /// Row `row` does not have exactly `row` entries (rows are 1-based).
    #[error("row {row} has {len} entries, expected {row}")]
    BadShape { row: usize, len: usize },
    /// Row `row` is not strictly increasing at position `pos` (both 1-based).
    #[error("row {row} is not strictly increasing at position {pos}")]
    NotIncreasing { row: usize, pos: usize },
    /// Entry `pos` of row `row` does not sit weakly between its two
    /// neighbours in row `row + 1` (both 1-based).
    #[error("row {row}, position {pos} breaks the betweenness condition")]
    NotBetween { row: usize, pos: usize },
    /// The bottom row is not `1, 2, ..., n`, so the triangle does not
    /// correspond to an alternating sign matrix.
    #[error("bottom row is not 1..=n; the triangle is not complete")]
    Incomplete,
}

/// A validated monotone triangle.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonotoneTriangle {
    rows: Vec<Vec<i64>>,
}

impl MonotoneTriangle {
    /// Validates `rows` as a monotone triangle. Row `i` (1-based) must have
    /// `i` entries, rows must increase strictly, and every entry must sit
    /// weakly between its neighbours in the row below.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self, TriangleError> {
        if rows.is_empty() {
            return Err(TriangleError::Empty);
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != i + 1 {
                return Err(TriangleError::BadShape {
                    row: i + 1,
                    len: row.len(),
                });
            }
            for j in 1..row.len() {
                if row[j - 1] >= row[j] {
                    return Err(TriangleError::NotIncreasing { row: i + 1, pos: j });
                }
            }
        }
        for i in 0..rows.len() - 1 {
            let (upper, lower) = (&rows[i], &rows[i + 1]);
            for j in 0..upper.len() {
                if !(lower[j] <= upper[j] && upper[j] <= lower[j + 1]) {
                    return Err(TriangleError::NotBetween {
                        row: i + 1,
                        pos: j + 1,
                    });
                }
            }
        }
        Ok(MonotoneTriangle { rows })
    }

    /// The number of rows.
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    /// All rows, top to bottom; row `i` (0-based) has `i + 1` entries.
    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// The bottom row.
    pub fn bottom(&self) -> &[i64] {
        self.rows.last().expect("triangle has at least one row")
    }

    /// Whether the bottom row is exactly `1, 2, ..., n`.
    pub fn is_complete(&self) -> bool {
        self.bottom()
            .iter()
            .enumerate()
            .all(|(j, &v)| v == j as i64 + 1)
    }

    /// Converts a complete triangle to the alternating sign matrix whose
    /// `i`-th partial column-sum matrix has ones exactly in the columns
    /// listed in row `i`.
    ///
    /// Fails with [`TriangleError::Incomplete`] when the bottom row is not
    /// `1, 2, ..., n`.
    pub fn to_asm(&self) -> Result<Asm, TriangleError> {
        if !self.is_complete() {
            return Err(TriangleError::Incomplete);
        }
        let n = self.order();
        let mut entries = vec![0i8; n * n];
        let mut prev = vec![0i8; n];
        let mut cur = vec![0i8; n];
        for (i, row) in self.rows.iter().enumerate() {
            cur.fill(0);
            for &v in row {
                cur[v as usize - 1] = 1;
            }
            for c in 0..n {
                entries[i * n + c] = cur[c] - prev[c];
            }
            std::mem::swap(&mut prev, &mut cur);
        }
        Ok(Asm::from_signs(n, entries)
            .expect("partial-sum rows of a monotone triangle form an ASM"))
    }
}

/// Streams every complete monotone triangle of order `n` in lexicographic
/// order (rows compared top to bottom, each row left to right).
///
/// Panics when `n` is zero.
pub fn complete_triangles(n: usize) -> TriangleStream {
    assert!(n > 0, "triangle order must be positive");
    triangles_with_bottom(&(1..=n as i64).collect::<Vec<_>>())
        .expect("1..=n is strictly increasing")
}

/// Streams every monotone triangle with the given bottom row, in
/// lexicographic order. The bottom row must be nonempty and strictly
/// increasing; any such integer row admits at least one triangle.
pub fn triangles_with_bottom(bottom: &[i64]) -> Result<TriangleStream, TriangleError> {
    if bottom.is_empty() {
        return Err(TriangleError::Empty);
    }
    for j in 1..bottom.len() {
        if bottom[j - 1] >= bottom[j] {
            return Err(TriangleError::NotIncreasing {
                row: bottom.len(),
                pos: j,
            });
        }
    }
    Ok(TriangleStream {
        rows: (0..bottom.len()).map(|i| vec![0; i + 1]).collect(),
        bottom: bottom.to_vec(),
        fresh: true,
        done: false,
    })
}

/// Iterator produced by [`complete_triangles`] and [`triangles_with_bottom`].
///
/// Works like an odometer over the entries of the free rows (all rows above
/// the fixed bottom row): each step bumps the least significant entry that
/// still has headroom and refills everything after it with its smallest
/// admissible value. Every partial filling extends to a full triangle, so
/// the stream never backtracks.
#[derive(Debug)]
pub struct TriangleStream {
    rows: Vec<Vec<i64>>,
    bottom: Vec<i64>,
    fresh: bool,
    done: bool,
}

impl TriangleStream {
    fn order(&self) -> usize {
        self.bottom.len()
    }

    /// Smallest admissible value at `(i, j)` given all earlier positions.
    fn lower(&self, i: usize, j: usize) -> i64 {
        let mut lo = self.bottom[j];
        if j > 0 {
            lo = lo.max(self.rows[i][j - 1] + 1);
            lo = lo.max(self.rows[i - 1][j - 1]);
        }
        lo
    }

    /// Largest admissible value at `(i, j)` given all earlier positions.
    fn upper(&self, i: usize, j: usize) -> i64 {
        let mut hi = self.bottom[j + (self.order() - 1 - i)];
        if i > 0 && j < i {
            hi = hi.min(self.rows[i - 1][j]);
        }
        hi
    }

    /// Fills every free position from `(i, j)` onward with its minimum.
    fn refill_from(&mut self, i: usize, j: usize) {
        let n = self.order();
        for r in i..n - 1 {
            let start = if r == i { j } else { 0 };
            for c in start..r + 1 {
                let lo = self.lower(r, c);
                debug_assert!(lo <= self.upper(r, c));
                self.rows[r][c] = lo;
            }
        }
    }

    fn snapshot(&self) -> MonotoneTriangle {
        MonotoneTriangle {
            rows: self.rows.clone(),
        }
    }
}

impl Iterator for TriangleStream {
    type Item = MonotoneTriangle;

    fn next(&mut self) -> Option<MonotoneTriangle> {
        if self.done {
            return None;
        }
        let n = self.order();
        if self.fresh {
            self.fresh = false;
            self.rows[n - 1] = self.bottom.clone();
            if n > 1 {
                self.refill_from(0, 0);
            }
            return Some(self.snapshot());
        }
        for i in (0..n.saturating_sub(1)).rev() {
            for j in (0..i + 1).rev() {
                if self.rows[i][j] < self.upper(i, j) {
                    self.rows[i][j] += 1;
                    if j < i {
                        self.refill_from(i, j + 1);
                    } else if i + 1 < n - 1 {
                        self.refill_from(i + 1, 0);
                    }
                    return Some(self.snapshot());
                }
            }
        }
        self.done = true;
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(t: &MonotoneTriangle) -> Vec<Vec<i64>> {
        t.rows().to_vec()
    }

    #[test]
    fn order_three_complete_triangles_in_lexicographic_order() {
        let all: Vec<_> = complete_triangles(3).collect();
        let got: Vec<Vec<Vec<i64>>> = all.iter().map(rows).collect();
        let want: Vec<Vec<Vec<i64>>> = vec![
            vec![vec![1], vec![1, 2], vec![1, 2, 3]],
            vec![vec![1], vec![1, 3], vec![1, 2, 3]],
            vec![vec![2], vec![1, 2], vec![1, 2, 3]],
            vec![vec![2], vec![1, 3], vec![1, 2, 3]],
            vec![vec![2], vec![2, 3], vec![1, 2, 3]],
            vec![vec![3], vec![1, 3], vec![1, 2, 3]],
            vec![vec![3], vec![2, 3], vec![1, 2, 3]],
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn complete_counts_match_known_totals() {
        let want = [1u64, 2, 7, 42, 429, 7436];
        for (i, &w) in want.iter().enumerate() {
            assert_eq!(complete_triangles(i + 1).count() as u64, w);
        }
    }

    #[test]
    fn arbitrary_bottom_rows() {
        assert_eq!(triangles_with_bottom(&[5]).unwrap().count(), 1);
        assert_eq!(triangles_with_bottom(&[3, 4]).unwrap().count(), 2);
        assert_eq!(triangles_with_bottom(&[1, 3]).unwrap().count(), 3);
        assert_eq!(triangles_with_bottom(&[1, 2, 3]).unwrap().count(), 7);
    }

    #[test]
    fn bottom_row_must_increase() {
        assert_eq!(
            triangles_with_bottom(&[2, 2]).unwrap_err(),
            TriangleError::NotIncreasing { row: 2, pos: 1 }
        );
        assert_eq!(
            triangles_with_bottom(&[]).unwrap_err(),
            TriangleError::Empty
        );
    }

    #[test]
    fn validation_rejects_bad_arrays() {
        assert_eq!(
            MonotoneTriangle::from_rows(vec![]).unwrap_err(),
            TriangleError::Empty
        );
        assert_eq!(
            MonotoneTriangle::from_rows(vec![vec![1, 2]]).unwrap_err(),
            TriangleError::BadShape { row: 1, len: 2 }
        );
        assert_eq!(
            MonotoneTriangle::from_rows(vec![vec![1], vec![3, 3]]).unwrap_err(),
            TriangleError::NotIncreasing { row: 2, pos: 1 }
        );
        assert_eq!(
            MonotoneTriangle::from_rows(vec![vec![3], vec![1, 2]]).unwrap_err(),
            TriangleError::NotBetween { row: 1, pos: 1 }
        );
    }

    #[test]
    fn every_streamed_triangle_validates() {
        for t in complete_triangles(5) {
            assert!(MonotoneTriangle::from_rows(t.rows().to_vec()).is_ok());
        }
        for t in triangles_with_bottom(&[-2, 1, 5]).unwrap() {
            assert!(MonotoneTriangle::from_rows(t.rows().to_vec()).is_ok());
        }
    }

    #[test]
    fn incomplete_triangle_does_not_convert() {
        let t = MonotoneTriangle::from_rows(vec![vec![2], vec![2, 3]]).unwrap();
        assert!(!t.is_complete());
        assert_eq!(t.to_asm().unwrap_err(), TriangleError::Incomplete);
    }
}
