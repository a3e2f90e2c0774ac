//! Closed-form product formulas for the counts of alternating sign
//! matrices, refined by boundary data, plus exact checkers for the
//! identities relating them.
//!
//! Every function here is formula-only: no enumeration, no dynamic
//! programming. The intermediate quantities are exact rationals; a division
//! that must come out integral is asserted to do so rather than trusted.
//! The brute-force tables from [`crate::counting`] are the independent
//! reference the checkers compare against.

use crate::counting::{CountTable, TableKind};
use crate::report::CheckReport;
use num::{BigInt, BigRational, One, Zero};
use std::collections::HashMap;
use std::sync::{LazyLock, Mutex};
use thiserror::Error;

/// Index failure in a strict formula lookup.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    /// `(i, j)` is outside `1 <= i < j <= n`.
    #[error("indices ({i}, {j}) are outside 1 <= i < j <= {n}")]
    IndexOutOfRange { i: i64, j: i64, n: usize },
}

/// `m!` as an exact big integer. Panics when `m` is negative.
fn factorial(m: i64) -> BigInt {
    assert!(m >= 0, "factorial of a negative number");
    let mut acc = BigInt::one();
    for v in 2..=m {
        acc *= v;
    }
    acc
}

/// Binomial coefficient `C(a, b)`, zero when `b` lies outside `0..=a`.
/// Computed by the multiplicative rule; every intermediate division is
/// exact. `a` must be nonnegative.
fn binomial(a: i64, b: i64) -> BigInt {
    assert!(a >= 0, "binomial with a negative upper index");
    if b < 0 || b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc = acc * (a - i) / (i + 1);
    }
    acc
}

/// Reduces `numerator / denominator` and returns it as an integer,
/// panicking when the quotient is not integral. Formula values proven
/// integral land here, so a remainder can only mean an implementation bug.
fn exact_quotient(numerator: BigInt, denominator: BigInt, what: &str) -> BigInt {
    let ratio = BigRational::new(numerator, denominator);
    assert!(
        ratio.is_integer(),
        "{what} came out non-integral ({ratio}), which signals an implementation bug"
    );
    ratio.to_integer()
}

static TOTAL_CACHE: LazyLock<Mutex<HashMap<usize, BigInt>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));
static REFINED_CACHE: LazyLock<Mutex<HashMap<(usize, i64), BigInt>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// The number of alternating sign matrices of order `n`, as the product of
/// factorial ratios `(3j+1)!/(n+j)!` over `j = 0..n-1`, evaluated as one
/// exact rational. Results are memoized process-wide. Panics when `n` is
/// zero.
pub fn asm_total(n: usize) -> BigInt {
    assert!(n > 0, "matrix order must be positive");
    if let Some(v) = TOTAL_CACHE.lock().unwrap().get(&n) {
        return v.clone();
    }
    let mut numerator = BigInt::one();
    let mut denominator = BigInt::one();
    for j in 0..n as i64 {
        numerator *= factorial(3 * j + 1);
        denominator *= factorial(n as i64 + j);
    }
    let value = exact_quotient(numerator, denominator, "total count product");
    TOTAL_CACHE.lock().unwrap().insert(n, value.clone());
    value
}

/// The number of order-`n` alternating sign matrices whose first-row `1`
/// sits in column `k`:
///
/// `C(n+k-2, k-1) * (2n-k-1)!/(n-k)! * prod_{j=0}^{n-2} (3j+1)!/(n+j)!`
///
/// evaluated as one exact rational. Returns zero for `k` outside `1..=n`.
/// Results are memoized process-wide. Panics when `n` is zero.
pub fn asm_refined(n: usize, k: i64) -> BigInt {
    assert!(n > 0, "matrix order must be positive");
    if k < 1 || k > n as i64 {
        return BigInt::zero();
    }
    if let Some(v) = REFINED_CACHE.lock().unwrap().get(&(n, k)) {
        return v.clone();
    }
    let n_i = n as i64;
    let mut numerator = binomial(n_i + k - 2, k - 1) * factorial(2 * n_i - k - 1);
    let mut denominator = factorial(n_i - k);
    for j in 0..n_i - 1 {
        numerator *= factorial(3 * j + 1);
        denominator *= factorial(n_i + j);
    }
    let value = exact_quotient(numerator, denominator, "refined count product");
    REFINED_CACHE.lock().unwrap().insert((n, k), value.clone());
    value
}

/// The antisymmetrized difference quotient underlying the doubly refined
/// counts, as an exact rational:
///
/// `X_n(s,t) = (R'_t (R_{s+1} - R_s) - R'_s (R_{t+1} - R_t)) / A_{n-1}`
///
/// where `R_k` abbreviates [`asm_refined(n, k)`](asm_refined) and `R'_k`
/// the same at order `n - 1`. Out-of-range refined values are zero.
/// Panics when `n < 2`.
pub fn x_fn_rational(n: usize, s: i64, t: i64) -> BigRational {
    assert!(n >= 2, "difference quotient needs order at least 2");
    let numerator = asm_refined(n - 1, t) * (asm_refined(n, s + 1) - asm_refined(n, s))
        - asm_refined(n - 1, s) * (asm_refined(n, t + 1) - asm_refined(n, t));
    BigRational::new(numerator, asm_total(n - 1))
}

/// [`x_fn_rational`] asserted integral and returned as an integer. The
/// division by the order-`n-1` total is exact on every index this crate
/// evaluates; a non-integral value panics as an implementation bug.
pub fn x_fn(n: usize, s: i64, t: i64) -> BigInt {
    let ratio = x_fn_rational(n, s, t);
    assert!(
        ratio.is_integer(),
        "X_{n}({s}, {t}) = {ratio} is not integral, which signals an implementation bug"
    );
    ratio.to_integer()
}

/// The symmetric companion of [`x_fn_rational`]:
///
/// `Y_n(i,j) = (R'_j (R_{i+1} - R_i) + R'_i (R_{j+1} - R_j)) / A_{n-1}`
///
/// It satisfies `Y_n(i,j) = X_n(i, n-j)` and equals the difference
/// `B_{n,i+1,j+1} - B_{n,i,j}` of neighbouring first/last-row counts.
/// Panics when `n < 2`.
pub fn y_fn_rational(n: usize, i: i64, j: i64) -> BigRational {
    assert!(n >= 2, "difference quotient needs order at least 2");
    let numerator = asm_refined(n - 1, j) * (asm_refined(n, i + 1) - asm_refined(n, i))
        + asm_refined(n - 1, i) * (asm_refined(n, j + 1) - asm_refined(n, j));
    BigRational::new(numerator, asm_total(n - 1))
}

/// [`y_fn_rational`] asserted integral and returned as an integer.
pub fn y_fn(n: usize, i: i64, j: i64) -> BigInt {
    let ratio = y_fn_rational(n, i, j);
    assert!(
        ratio.is_integer(),
        "Y_{n}({i}, {j}) = {ratio} is not integral, which signals an implementation bug"
    );
    ratio.to_integer()
}

/// The number of order-`n` alternating sign matrices refined by the second
/// triangle row `(i, j)`, by the double sum
///
/// `A_{n,i,j} = sum_{p=0}^{n-j} sum_{q=0}^{p} (-1)^q C(p,q) X_n(i+q, j+p)`.
///
/// Returns zero outside `1 <= i < j <= n`. Panics when `n < 3`.
pub fn a_doubly_refined(n: usize, i: i64, j: i64) -> BigInt {
    assert!(n >= 3, "doubly refined counts need order at least 3");
    match a_doubly_refined_strict(n, i, j) {
        Ok(v) => v,
        Err(FormulaError::IndexOutOfRange { .. }) => BigInt::zero(),
    }
}

/// [`a_doubly_refined`] that reports out-of-range indices instead of
/// mapping them to zero.
pub fn a_doubly_refined_strict(n: usize, i: i64, j: i64) -> Result<BigInt, FormulaError> {
    assert!(n >= 3, "doubly refined counts need order at least 3");
    if !(1 <= i && i < j && j <= n as i64) {
        return Err(FormulaError::IndexOutOfRange { i, j, n });
    }
    let mut sum = BigInt::zero();
    for p in 0..=(n as i64 - j) {
        for q in 0..=p {
            let term = binomial(p, q) * x_fn(n, i + q, j + p);
            if q % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
    }
    Ok(sum)
}

/// The number of order-`n` alternating sign matrices with the first-row `1`
/// in column `i` and the last-row `1` in column `j`, by the summation
///
/// `B_{n,i,j} = A_{n-1,|i-j|} + sum_{k=1}^{min(i,j)-1} Y_n(k, |i-j|+k)`.
///
/// The diagonal case `i = j` rides on the convention `A_{n-1,0} = 0`.
/// Returns zero outside `1..=n` squared. Panics when `n < 2`.
pub fn b_doubly_refined(n: usize, i: i64, j: i64) -> BigInt {
    assert!(n >= 2, "first/last refined counts need order at least 2");
    if !(1 <= i && i <= n as i64 && 1 <= j && j <= n as i64) {
        return BigInt::zero();
    }
    let gap = (i - j).abs();
    let mut value = asm_refined(n - 1, gap);
    for k in 1..i.min(j) {
        value += y_fn(n, k, gap + k);
    }
    value
}

/// Checks `X_n(i,j) = A_{n,i+1,j+1} + A_{n,i,j} - A_{n,i,j+1}` over all
/// `1 <= i < j <= n` against a brute-force table of the doubly refined
/// counts, reading out-of-range entries as zero. Panics unless the table
/// holds [`TableKind::DoublyTop`] counts for an order of at least 3.
pub fn check_x_recurrence(doubly_top: &CountTable) -> CheckReport {
    assert_eq!(doubly_top.kind(), TableKind::DoublyTop, "wrong table kind");
    let n = doubly_top.order();
    assert!(n >= 3, "recurrence check needs order at least 3");
    let mut report = CheckReport::new("x-recurrence");
    for i in 1..=n as i64 {
        for j in i + 1..=n as i64 {
            let got = x_fn(n, i, j);
            let want = doubly_top.pair_value(i + 1, j + 1) + doubly_top.pair_value(i, j)
                - doubly_top.pair_value(i, j + 1);
            report.record(got == want, || {
                format!("X_{n}({i}, {j}) = {got}, but the table gives {want}")
            });
        }
    }
    report
}

/// Checks that the formula difference `Y_n(i,j)` matches the brute-force
/// difference `B_{n,i+1,j+1} - B_{n,i,j}` on a window two steps wider than
/// `1..=n` in both coordinates, exercising the zero conventions at the
/// edges. Panics unless the table holds [`TableKind::TopBottom`] counts
/// for an order of at least 2.
pub fn check_top_bottom_difference(top_bottom: &CountTable) -> CheckReport {
    assert_eq!(top_bottom.kind(), TableKind::TopBottom, "wrong table kind");
    let n = top_bottom.order();
    assert!(n >= 2, "difference check needs order at least 2");
    let mut report = CheckReport::new("top-bottom-difference");
    for i in -1..=n as i64 + 2 {
        for j in -1..=n as i64 + 2 {
            let got = y_fn(n, i, j);
            let want = top_bottom.pair_value(i + 1, j + 1) - top_bottom.pair_value(i, j);
            report.record(got == want, || {
                format!("Y_{n}({i}, {j}) = {got}, but the table difference is {want}")
            });
        }
    }
    report
}

/// Checks the six-term identity tying the two doubly refined families
/// together:
///
/// `B_{n,i+1,j+1} - B_{n,i,j} = A_{n,i+1,n+1-j} + A_{n,i,n-j} - A_{n,i,n+1-j}
///  - A_{n,n-j,i} - A_{n,n+1-j,i+1} + A_{n,n-j,i+1}`
///
/// for all integers `(i, j)` in a window two steps wider than `0..=n+1`,
/// with both tables read as zero outside their index sets. Both tables must
/// be brute-force tables of the same order `n >= 3`; the formula side
/// ([`y_fn`]) is checked against the `B` difference as well, so all three
/// expressions must agree.
pub fn check_six_term_identity(doubly_top: &CountTable, top_bottom: &CountTable) -> CheckReport {
    assert_eq!(doubly_top.kind(), TableKind::DoublyTop, "wrong table kind");
    assert_eq!(top_bottom.kind(), TableKind::TopBottom, "wrong table kind");
    assert_eq!(
        doubly_top.order(),
        top_bottom.order(),
        "tables refine different orders"
    );
    let n = doubly_top.order();
    assert!(n >= 3, "identity check needs order at least 3");
    let n_i = n as i64;
    let a = |p: i64, q: i64| doubly_top.pair_value(p, q);
    let mut report = CheckReport::new("six-term-identity");
    for i in -1..=n_i + 2 {
        for j in -1..=n_i + 2 {
            let b_diff = top_bottom.pair_value(i + 1, j + 1) - top_bottom.pair_value(i, j);
            let a_comb = a(i + 1, n_i + 1 - j) + a(i, n_i - j)
                - a(i, n_i + 1 - j)
                - a(n_i - j, i)
                - a(n_i + 1 - j, i + 1)
                + a(n_i - j, i + 1);
            let y = y_fn(n, i, j);
            report.record(y == b_diff && b_diff == a_comb, || {
                format!(
                    "at (i, j) = ({i}, {j}): Y = {y}, B difference = {b_diff}, A combination = {a_comb}"
                )
            });
        }
    }
    report
}

/// Checks that the rational forms of [`x_fn`] and [`y_fn`] are integral:
/// `X_n(s,t)` over `1 <= s < t <= n` and `Y_n(i,j)` over `1..=n` squared.
/// Panics when `n < 2`.
pub fn check_x_integrality(n: usize) -> CheckReport {
    assert!(n >= 2, "difference quotient needs order at least 2");
    let mut report = CheckReport::new("x-integrality");
    for s in 1..=n as i64 {
        for t in s + 1..=n as i64 {
            let ratio = x_fn_rational(n, s, t);
            report.record(ratio.is_integer(), || {
                format!("X_{n}({s}, {t}) = {ratio} is not an integer")
            });
        }
    }
    for i in 1..=n as i64 {
        for j in 1..=n as i64 {
            let ratio = y_fn_rational(n, i, j);
            report.record(ratio.is_integer(), || {
                format!("Y_{n}({i}, {j}) = {ratio} is not an integer")
            });
        }
    }
    report
}
