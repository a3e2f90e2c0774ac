//! Brute-force counting oracles.
//!
//! Everything here counts by dynamic programming or exhaustive enumeration,
//! with no closed-form shortcuts, so the results can serve as an independent
//! reference for the product formulas in [`crate::formulas`].
//!
//! The workhorse is [`AlphaCounter::alpha`]: the number of monotone
//! triangles with a prescribed bottom row. Removing entries from the row
//! `1, 2, ..., n` turns it into the refined counts of alternating sign
//! matrices by boundary data.

use crate::asm::enumerate_asms;
use crate::triangle::triangles_with_bottom;
use num::BigInt;
use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use thiserror::Error;

/// Domain failure in a counting request.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    /// Bottom rows must be nonempty.
    #[error("bottom row is empty")]
    EmptyRow,
    /// Bottom rows must increase strictly; `pos` is the 1-based position of
    /// the first entry not below its successor.
    #[error("bottom row is not strictly increasing at position {pos}")]
    NotIncreasing { pos: usize },
    /// The requested table needs a larger order.
    #[error("order {n} is too small, need at least {min}")]
    OrderTooSmall { n: usize, min: usize },
}

/// A strictly increasing integer row, the boundary condition for counting
/// monotone triangles.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BottomRow {
    values: Vec<i64>,
}

impl BottomRow {
    /// Validates strict increase and nonemptiness.
    pub fn new(values: Vec<i64>) -> Result<Self, CountError> {
        if values.is_empty() {
            return Err(CountError::EmptyRow);
        }
        for pos in 1..values.len() {
            if values[pos - 1] >= values[pos] {
                return Err(CountError::NotIncreasing { pos });
            }
        }
        Ok(BottomRow { values })
    }

    /// The row `1, 2, ..., n`. Panics when `n` is zero.
    pub fn consecutive(n: usize) -> Self {
        assert!(n > 0, "row length must be positive");
        BottomRow {
            values: (1..=n as i64).collect(),
        }
    }

    /// The row `1, 2, ..., n` with the listed values removed. Panics when
    /// nothing is left.
    pub fn consecutive_without(n: usize, omit: &[i64]) -> Self {
        let values: Vec<i64> = (1..=n as i64).filter(|v| !omit.contains(v)).collect();
        assert!(!values.is_empty(), "row length must be positive");
        BottomRow { values }
    }

    /// The entries, strictly increasing.
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// The number of entries.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; rows are nonempty by construction.
    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Counting statistics for [`AlphaCounter`]'s memo cache.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CacheStats {
    /// Lookups answered from the cache.
    pub hits: u64,
    /// Lookups that had to compute and store a new row count.
    pub misses: u64,
    /// Rows currently stored.
    pub entries: usize,
}

/// Memoizing counter for monotone triangles with prescribed bottom rows.
///
/// Counts are computed by peeling rows off the bottom: the count for a row
/// `k` of length `m` is the sum of the counts of every strictly increasing
/// row `l` of length `m - 1` with `k[j] <= l[j] <= k[j+1]`. Memo keys are
/// normalized by translating the row so its minimum is one, which is sound
/// because counts are translation invariant.
///
/// The cache is shared behind a mutex, so one counter can serve several
/// threads; recomputation races are benign because values are deterministic.
pub struct AlphaCounter {
    cache: Mutex<HashMap<Vec<i64>, BigInt>>,
    hits: AtomicU64,
    misses: AtomicU64,
    workers: usize,
}

impl Default for AlphaCounter {
    fn default() -> Self {
        Self::new()
    }
}

impl AlphaCounter {
    /// A counter with an empty cache that builds tables on one thread.
    pub fn new() -> Self {
        Self::with_workers(1)
    }

    /// A counter whose table constructors spread independent entries over
    /// `workers` threads. Zero is treated as one.
    pub fn with_workers(workers: usize) -> Self {
        AlphaCounter {
            cache: Mutex::new(HashMap::new()),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
            workers: workers.max(1),
        }
    }

    /// The number of monotone triangles with bottom row `row`.
    pub fn alpha(&self, row: &BottomRow) -> BigInt {
        self.alpha_normalized(&normalize(row.values()))
    }

    fn alpha_normalized(&self, key: &[i64]) -> BigInt {
        if key.len() == 1 {
            return BigInt::from(1);
        }
        if let Some(v) = self.cache.lock().unwrap().get(key) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return v.clone();
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let mut sum = BigInt::from(0);
        let mut scratch = vec![0i64; key.len() - 1];
        self.sum_rows_above(key, &mut scratch, 0, &mut sum);
        self.cache.lock().unwrap().insert(key.to_vec(), sum.clone());
        sum
    }

    /// Adds the count of every interlacing row above `key` to `sum`; the
    /// row being built lives in `scratch[..pos]`. Entries may touch their
    /// window ends (`l[j] = k[j]` or `l[j] = k[j+1]`) but must still
    /// increase strictly among themselves.
    fn sum_rows_above(&self, key: &[i64], scratch: &mut [i64], pos: usize, sum: &mut BigInt) {
        if pos == scratch.len() {
            *sum += self.alpha_normalized(&normalize(scratch));
            return;
        }
        let mut lo = key[pos];
        if pos > 0 {
            lo = lo.max(scratch[pos - 1] + 1);
        }
        for v in lo..=key[pos + 1] {
            scratch[pos] = v;
            self.sum_rows_above(key, scratch, pos + 1, sum);
        }
    }

    /// The number of alternating sign matrices of order `n`, by dynamic
    /// programming on the bottom row `1, 2, ..., n`. Panics when `n` is
    /// zero. Practical on a desktop up to roughly `n = 12`.
    pub fn total(&self, n: usize) -> BigInt {
        self.alpha(&BottomRow::consecutive(n))
    }

    /// The counts of order-`n` alternating sign matrices refined by the
    /// column `k` of the `1` in the first row, as a table over `k = 1..=n`.
    /// Entry `k` is the count for the bottom row `1..=n` with `k` removed.
    pub fn refined(&self, n: usize) -> Result<CountTable, CountError> {
        if n < 2 {
            return Err(CountError::OrderTooSmall { n, min: 2 });
        }
        let indices: Vec<i64> = (1..=n as i64).collect();
        let computed = self.compute_parallel(&indices, |&k| {
            self.alpha(&BottomRow::consecutive_without(n, &[k]))
        });
        let values: BTreeMap<i64, BigInt> = indices.into_iter().zip(computed).collect();
        Ok(CountTable::refined(n, values))
    }

    /// The counts of order-`n` alternating sign matrices refined by the two
    /// entries `i < j` of the second row of the corresponding monotone
    /// triangle. Entry `(i, j)` is the count for the bottom row `1..=n`
    /// with `i` and `j` removed.
    pub fn doubly_top(&self, n: usize) -> Result<CountTable, CountError> {
        if n < 3 {
            return Err(CountError::OrderTooSmall { n, min: 3 });
        }
        let mut indices = Vec::new();
        for i in 1..=n as i64 {
            for j in i + 1..=n as i64 {
                indices.push((i, j));
            }
        }
        let computed = self.compute_parallel(&indices, |&(i, j)| {
            self.alpha(&BottomRow::consecutive_without(n, &[i, j]))
        });
        let values: BTreeMap<(i64, i64), BigInt> = indices.into_iter().zip(computed).collect();
        Ok(CountTable::doubly_top(n, values))
    }

    /// Applies `f` to every index, on one thread or several, preserving
    /// index order in the returned values.
    fn compute_parallel<I: Sync, F>(&self, indices: &[I], f: F) -> Vec<BigInt>
    where
        F: Fn(&I) -> BigInt + Sync,
    {
        if self.workers == 1 || indices.len() < 2 {
            return indices.iter().map(f).collect();
        }
        let workers = self.workers.min(indices.len());
        let mut collected: Vec<(usize, BigInt)> = Vec::with_capacity(indices.len());
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let f = &f;
                    scope.spawn(move || {
                        indices
                            .iter()
                            .enumerate()
                            .skip(w)
                            .step_by(workers)
                            .map(|(pos, idx)| (pos, f(idx)))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            for handle in handles {
                collected.extend(handle.join().expect("worker thread panicked"));
            }
        });
        collected.sort_by_key(|&(pos, _)| pos);
        collected.into_iter().map(|(_, value)| value).collect()
    }

    /// Cache hit/miss counts and current size.
    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            entries: self.cache.lock().unwrap().len(),
        }
    }

    /// Inserts previously computed rows, skipping entries whose key is not
    /// a normalized strictly increasing row (minimum one) or whose count is
    /// negative. Returns how many entries were accepted.
    pub fn preload<I>(&self, entries: I) -> usize
    where
        I: IntoIterator<Item = (Vec<i64>, BigInt)>,
    {
        let mut cache = self.cache.lock().unwrap();
        let mut accepted = 0;
        for (key, value) in entries {
            let increasing = key.windows(2).all(|w| w[0] < w[1]);
            let normalized = key.first() == Some(&1);
            if key.len() < 2
                || !increasing
                || !normalized
                || value.sign() == num::bigint::Sign::Minus
            {
                continue;
            }
            cache.insert(key, value);
            accepted += 1;
        }
        accepted
    }

    /// The cached rows, sorted by key for deterministic output.
    pub fn snapshot(&self) -> Vec<(Vec<i64>, BigInt)> {
        let cache = self.cache.lock().unwrap();
        let mut entries: Vec<(Vec<i64>, BigInt)> =
            cache.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        entries.sort();
        entries
    }
}

/// Translates a strictly increasing row so its minimum entry is one.
fn normalize(values: &[i64]) -> Vec<i64> {
    let shift = values[0] - 1;
    values.iter().map(|v| v - shift).collect()
}

/// Counts the triangles over `row` by exhaustive generation instead of
/// dynamic programming. Slow; exists purely as an independent cross-check
/// for [`AlphaCounter::alpha`] on tiny rows.
pub fn alpha_by_enumeration(row: &BottomRow) -> BigInt {
    BigInt::from(
        triangles_with_bottom(row.values())
            .expect("bottom row is validated")
            .count(),
    )
}

/// The counts of order-`n` alternating sign matrices refined by the columns
/// `(i, j)` of the `1` in the first and last rows, built by enumerating all
/// matrices and bucketing. Runs on one thread; practical up to about
/// `n = 7`. Panics when `n` is zero.
pub fn top_bottom_by_enumeration(n: usize) -> CountTable {
    assert!(n > 0, "matrix order must be positive");
    let mut values: BTreeMap<(i64, i64), BigInt> = BTreeMap::new();
    for i in 1..=n as i64 {
        for j in 1..=n as i64 {
            values.insert((i, j), BigInt::from(0));
        }
    }
    for a in enumerate_asms(n) {
        let (i, j) = a.first_last_index();
        *values
            .get_mut(&(i as i64, j as i64))
            .expect("indices lie in 1..=n") += 1;
    }
    CountTable::top_bottom(n, values)
}

/// Which refinement a [`CountTable`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    /// One value: the total count of order-`n` alternating sign matrices.
    Total,
    /// Indexed by the column of the first-row `1`, `k = 1..=n`.
    Refined,
    /// Indexed by the second triangle row `(i, j)`, `1 <= i < j <= n`.
    DoublyTop,
    /// Indexed by the first- and last-row `1` columns, `(i, j)` in
    /// `1..=n` squared.
    TopBottom,
}

impl TableKind {
    /// Stable lowercase name, used in serialized output.
    pub fn as_str(self) -> &'static str {
        match self {
            TableKind::Total => "total",
            TableKind::Refined => "refined",
            TableKind::DoublyTop => "top-two",
            TableKind::TopBottom => "top-bottom",
        }
    }
}

/// Out-of-range strict lookup on a [`CountTable`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    /// `k` lies outside `1..=n`.
    #[error("index {k} is outside 1..={n}")]
    IndexOutOfRange { k: i64, n: usize },
    /// `(i, j)` lies outside the table's index set.
    #[error("index ({i}, {j}) is outside the {kind} range for order {n}")]
    PairOutOfRange {
        i: i64,
        j: i64,
        n: usize,
        kind: &'static str,
    },
}

#[derive(Debug, Clone)]
enum TableValues {
    Scalar(BigInt),
    Single(BTreeMap<i64, BigInt>),
    Pairs(BTreeMap<(i64, i64), BigInt>),
}

/// An immutable table of exact counts for one order and one refinement.
///
/// Lookups outside the index range return zero, matching the usual
/// conventions for these refined counts; the `*_strict` variants report
/// out-of-range indices instead, for tests that must tell a stored zero
/// from a missing index.
#[derive(Debug, Clone)]
pub struct CountTable {
    n: usize,
    kind: TableKind,
    values: TableValues,
    zero: BigInt,
}

impl CountTable {
    /// A one-value table holding the total count for order `n`.
    pub fn total(n: usize, value: BigInt) -> Self {
        assert!(n > 0, "matrix order must be positive");
        CountTable {
            n,
            kind: TableKind::Total,
            values: TableValues::Scalar(value),
            zero: BigInt::from(0),
        }
    }

    /// A table over `k = 1..=n`. Panics unless the keys are exactly that
    /// range.
    pub fn refined(n: usize, values: BTreeMap<i64, BigInt>) -> Self {
        assert!(
            values.len() == n && values.keys().zip(1..=n as i64).all(|(&a, b)| a == b),
            "refined table must cover exactly 1..=n"
        );
        CountTable {
            n,
            kind: TableKind::Refined,
            values: TableValues::Single(values),
            zero: BigInt::from(0),
        }
    }

    /// A table over pairs `1 <= i < j <= n`. Panics unless the keys are
    /// exactly those pairs.
    pub fn doubly_top(n: usize, values: BTreeMap<(i64, i64), BigInt>) -> Self {
        let complete = values.len() == n * (n - 1) / 2
            && values
                .keys()
                .all(|&(i, j)| 1 <= i && i < j && j <= n as i64);
        assert!(
            complete,
            "table must cover exactly the pairs 1 <= i < j <= n"
        );
        CountTable {
            n,
            kind: TableKind::DoublyTop,
            values: TableValues::Pairs(values),
            zero: BigInt::from(0),
        }
    }

    /// A table over all pairs `(i, j)` in `1..=n` squared. Panics unless
    /// the keys are exactly those pairs.
    pub fn top_bottom(n: usize, values: BTreeMap<(i64, i64), BigInt>) -> Self {
        let complete = values.len() == n * n
            && values
                .keys()
                .all(|&(i, j)| 1 <= i && i <= n as i64 && 1 <= j && j <= n as i64);
        assert!(complete, "table must cover exactly 1..=n squared");
        CountTable {
            n,
            kind: TableKind::TopBottom,
            values: TableValues::Pairs(values),
            zero: BigInt::from(0),
        }
    }

    /// The order the table refines.
    pub fn order(&self) -> usize {
        self.n
    }

    /// The refinement held.
    pub fn kind(&self) -> TableKind {
        self.kind
    }

    /// The single value of a [`TableKind::Total`] table. Panics on other
    /// kinds.
    pub fn total_value(&self) -> &BigInt {
        match &self.values {
            TableValues::Scalar(v) => v,
            _ => panic!("total_value on a {} table", self.kind.as_str()),
        }
    }

    /// Entry `k` of a [`TableKind::Refined`] table, zero outside `1..=n`.
    /// Panics on other kinds.
    pub fn refined_value(&self, k: i64) -> &BigInt {
        self.refined_strict(k).unwrap_or(&self.zero)
    }

    /// Entry `k`, or an error outside `1..=n`. Panics on kinds other than
    /// [`TableKind::Refined`].
    pub fn refined_strict(&self, k: i64) -> Result<&BigInt, TableError> {
        match &self.values {
            TableValues::Single(map) => map
                .get(&k)
                .ok_or(TableError::IndexOutOfRange { k, n: self.n }),
            _ => panic!("refined lookup on a {} table", self.kind.as_str()),
        }
    }

    /// Entry `(i, j)` of a pair-indexed table, zero outside the index set.
    /// For [`TableKind::DoublyTop`] the index set is `1 <= i < j <= n`; for
    /// [`TableKind::TopBottom`] it is `1..=n` squared. Panics on other
    /// kinds.
    pub fn pair_value(&self, i: i64, j: i64) -> &BigInt {
        self.pair_strict(i, j).unwrap_or(&self.zero)
    }

    /// Entry `(i, j)`, or an error outside the index set. Panics on kinds
    /// without pair indices.
    pub fn pair_strict(&self, i: i64, j: i64) -> Result<&BigInt, TableError> {
        match &self.values {
            TableValues::Pairs(map) => map.get(&(i, j)).ok_or(TableError::PairOutOfRange {
                i,
                j,
                n: self.n,
                kind: self.kind.as_str(),
            }),
            _ => panic!("pair lookup on a {} table", self.kind.as_str()),
        }
    }

    /// The sum of all stored values.
    pub fn sum(&self) -> BigInt {
        match &self.values {
            TableValues::Scalar(v) => v.clone(),
            TableValues::Single(map) => map.values().sum(),
            TableValues::Pairs(map) => map.values().sum(),
        }
    }

    /// Entries of a singly indexed table in increasing `k`. Panics on other
    /// kinds.
    pub fn iter_single(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        match &self.values {
            TableValues::Single(map) => map.iter().map(|(&k, v)| (k, v)),
            _ => panic!("single-index iteration on a {} table", self.kind.as_str()),
        }
    }

    /// Entries of a pair-indexed table in lexicographic `(i, j)` order.
    /// Panics on other kinds.
    pub fn iter_pairs(&self) -> impl Iterator<Item = (i64, i64, &BigInt)> {
        match &self.values {
            TableValues::Pairs(map) => map.iter().map(|(&(i, j), v)| (i, j, v)),
            _ => panic!("pair iteration on a {} table", self.kind.as_str()),
        }
    }
}
