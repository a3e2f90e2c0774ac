//! Square-ice (six-vertex) model with domain wall boundary conditions.
//!
//! Configurations correspond bijectively to alternating sign matrices, so
//! the partition function is computed as a sum over [`enumerate_asms`]
//! with each lattice site weighted by its vertex class and the spectral
//! parameters of its row and column. At the crossing parameter
//! [`DEFAULT_ETA`] the homogeneous partition function reduces to the plain
//! count of matrices, and two special parameter slices expand into the
//! refined counting tables; the `check_*` functions verify all of that
//! numerically against the exact tables.

use crate::asm::{enumerate_asms, Asm};
use crate::counting::{AlphaCounter, CountTable, TableKind};
use crate::report::CheckReport;
use num::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// The crossing parameter `2*pi/3`, at which every vertex weight of the
/// homogeneous model becomes one and the partition function counts
/// matrices.
pub const DEFAULT_ETA: f64 = 2.0 * std::f64::consts::FRAC_PI_3;

/// Below this magnitude, `sin(eta)` is treated as zero and the weights as
/// undefined.
const ETA_MARGIN: f64 = 1e-12;

/// Below this distance from one, the product `t*s` makes the reconstruction
/// in [`s2_expansion`] numerically meaningless.
const TS_MARGIN: f64 = 1e-12;

/// Domain failure in the square-ice model.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum IceError {
    /// `sin(eta)` vanishes, so the `a` and `b` weights are undefined.
    #[error("sin(eta) vanishes at eta = {eta}; vertex weights are undefined")]
    DegenerateEta { eta: f64 },
    /// Parameter lists must cover at least one row and column.
    #[error("parameter lists are empty")]
    EmptyParameters,
    /// Row and column parameter lists differ in length.
    #[error("{xs} row parameters but {ys} column parameters")]
    LengthMismatch { xs: usize, ys: usize },
    /// An expansion was handed a table of the wrong kind or order.
    #[error("expected a {expected} table of order {n}, got a {found} table of order {found_n}")]
    TableMismatch {
        expected: &'static str,
        n: usize,
        found: &'static str,
        found_n: usize,
    },
    /// `t*s` is too close to one; the reconstruction divides by `t*s - 1`.
    #[error("t*s = {ts} is within {TS_MARGIN:e} of one; perturb (u, v) away from the removable singularity")]
    DegenerateTs { ts: f64 },
}

/// Crossing parameter and per-row/per-column spectral parameters for one
/// lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralParams {
    eta: f64,
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl SpectralParams {
    /// Validates that the lists are nonempty, equally long, and that
    /// `sin(eta)` does not vanish.
    pub fn new(eta: f64, xs: Vec<f64>, ys: Vec<f64>) -> Result<Self, IceError> {
        if eta.sin().abs() < ETA_MARGIN {
            return Err(IceError::DegenerateEta { eta });
        }
        if xs.len() != ys.len() {
            return Err(IceError::LengthMismatch {
                xs: xs.len(),
                ys: ys.len(),
            });
        }
        if xs.is_empty() {
            return Err(IceError::EmptyParameters);
        }
        Ok(SpectralParams { eta, xs, ys })
    }

    /// All parameters zero at [`DEFAULT_ETA`]: every weight is one. Panics
    /// when `n` is zero.
    pub fn homogeneous(n: usize) -> Self {
        assert!(n > 0, "lattice order must be positive");
        SpectralParams {
            eta: DEFAULT_ETA,
            xs: vec![0.0; n],
            ys: vec![0.0; n],
        }
    }

    /// The lattice order.
    pub fn order(&self) -> usize {
        self.xs.len()
    }

    /// The crossing parameter.
    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Row parameters, top to bottom.
    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    /// Column parameters, left to right.
    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    /// A copy with row parameters `a` and `b` (0-based) exchanged.
    pub fn with_rows_swapped(&self, a: usize, b: usize) -> Self {
        let mut params = self.clone();
        params.xs.swap(a, b);
        params
    }

    /// A copy with column parameters `a` and `b` (0-based) exchanged.
    pub fn with_columns_swapped(&self, a: usize, b: usize) -> Self {
        let mut params = self.clone();
        params.ys.swap(a, b);
        params
    }
}

/// The weight class of one lattice site, determined by the matrix entry
/// and, for zero entries, by the flow balance around the site.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexClass {
    /// Zero entry whose inclusive partial row sum equals its inclusive
    /// partial column sum; carries the `a` weight.
    A,
    /// Any other zero entry; carries the `b` weight.
    B,
    /// A nonzero entry, with its sign; carries weight one.
    C { sign: i8 },
}

/// `phi(x) = (2/sqrt(3)) * sin(pi/3 + x)`, the building block of the
/// boundary weight bookkeeping at [`DEFAULT_ETA`]; `phi(0) = 1`.
pub fn phi(x: f64) -> f64 {
    2.0 / 3.0_f64.sqrt() * (std::f64::consts::FRAC_PI_3 + x).sin()
}

/// `t = phi(u)/phi(-u)`, the row-side expansion variable.
pub fn t_ratio(u: f64) -> f64 {
    phi(u) / phi(-u)
}

/// `s = phi(-v)/phi(v)`, the column-side expansion variable.
pub fn s_ratio(v: f64) -> f64 {
    phi(-v) / phi(v)
}

/// The weight of a site of the given class at row parameter `x`, column
/// parameter `y`: `sin(eta/2 + x - y)/sin(eta)` for class A,
/// `sin(eta/2 - x + y)/sin(eta)` for class B, one for class C. Fails when
/// `sin(eta)` vanishes.
pub fn weight(class: VertexClass, x: f64, y: f64, eta: f64) -> Result<f64, IceError> {
    if eta.sin().abs() < ETA_MARGIN {
        return Err(IceError::DegenerateEta { eta });
    }
    Ok(weight_unchecked(class, x, y, eta))
}

fn weight_unchecked(class: VertexClass, x: f64, y: f64, eta: f64) -> f64 {
    match class {
        VertexClass::A => (eta / 2.0 + x - y).sin() / eta.sin(),
        VertexClass::B => (eta / 2.0 - x + y).sin() / eta.sin(),
        VertexClass::C { .. } => 1.0,
    }
}

/// Classifies the site at 0-based `(row, col)`: a nonzero entry is class C
/// with its sign; a zero entry is class A exactly when the inclusive
/// partial sums of its row and of its column agree (both sums are 0 on the
/// far side of the row's and column's `1` region, both are 1 inside it).
pub fn classify_vertex(a: &Asm, row: usize, col: usize) -> VertexClass {
    let entry = a.get(row, col);
    if entry != 0 {
        return VertexClass::C { sign: entry };
    }
    let row_sum: i8 = (0..=col).map(|c| a.get(row, c)).sum();
    let col_sum: i8 = (0..=row).map(|r| a.get(r, col)).sum();
    if row_sum == col_sum {
        VertexClass::A
    } else {
        VertexClass::B
    }
}

/// The product of all site weights of one configuration. Panics when the
/// matrix order differs from the parameter order.
pub fn configuration_weight(a: &Asm, params: &SpectralParams) -> f64 {
    let n = a.order();
    assert_eq!(n, params.order(), "matrix and parameter orders differ");
    let mut product = 1.0;
    let mut col_sums = vec![0i8; n];
    for (r, row) in a.rows().enumerate() {
        let mut row_sum = 0i8;
        for (c, &entry) in row.iter().enumerate() {
            row_sum += entry;
            col_sums[c] += entry;
            if entry != 0 {
                continue;
            }
            let class = if row_sum == col_sums[c] {
                VertexClass::A
            } else {
                VertexClass::B
            };
            product *= weight_unchecked(class, params.xs[r], params.ys[c], params.eta);
        }
    }
    product
}

/// The partition function: the sum of [`configuration_weight`] over every
/// alternating sign matrix of the parameter order, in enumeration order.
/// Exponential in the order; intended for `n <= 5` or so.
pub fn partition_function(params: &SpectralParams) -> f64 {
    enumerate_asms(params.order())
        .map(|a| configuration_weight(&a, params))
        .sum()
}

/// [`partition_function`] with the configurations split into `workers`
/// contiguous chunks summed in parallel. Chunk sums are combined in chunk
/// order, so the result is deterministic for a fixed worker count, but may
/// differ from the serial sum by floating-point reassociation. Zero
/// workers is treated as one; one worker takes the serial path.
pub fn partition_function_with_workers(params: &SpectralParams, workers: usize) -> f64 {
    if workers <= 1 {
        return partition_function(params);
    }
    let matrices: Vec<Asm> = enumerate_asms(params.order()).collect();
    let chunk_len = matrices.len().div_ceil(workers);
    let mut total = 0.0;
    std::thread::scope(|scope| {
        let handles: Vec<_> = matrices
            .chunks(chunk_len)
            .map(|chunk| {
                scope.spawn(move || {
                    chunk
                        .iter()
                        .map(|a| configuration_weight(a, params))
                        .sum::<f64>()
                })
            })
            .collect();
        for handle in handles {
            total += handle.join().expect("worker thread panicked");
        }
    });
    total
}

/// The partition function on the slice `xs = (u, 0, ..., 0, v)`, `ys = 0`
/// at [`DEFAULT_ETA`]: inhomogeneities in the first and last rows only.
/// Panics when `n < 2`.
pub fn s1(n: usize, u: f64, v: f64) -> f64 {
    partition_function(&boundary_params(n, u, v, false))
}

/// The partition function on the slice `xs = (u, v, 0, ..., 0)`, `ys = 0`
/// at [`DEFAULT_ETA`]: inhomogeneities in the first two rows. By symmetry
/// of the partition function in the row parameters, `s2 = s1`. Panics when
/// `n < 2`.
pub fn s2(n: usize, u: f64, v: f64) -> f64 {
    partition_function(&boundary_params(n, u, v, true))
}

fn boundary_params(n: usize, u: f64, v: f64, adjacent: bool) -> SpectralParams {
    assert!(n >= 2, "boundary slices need order at least 2");
    let mut xs = vec![0.0; n];
    xs[0] = u;
    if adjacent {
        xs[1] = v;
    } else {
        xs[n - 1] = v;
    }
    SpectralParams::new(DEFAULT_ETA, xs, vec![0.0; n])
        .expect("default crossing parameter is not degenerate")
}

fn big_to_f64(v: &num::BigInt) -> f64 {
    v.to_f64().expect("table entries fit in a double")
}

/// Evaluates [`s1`] through the first/last-row count table instead of the
/// configuration sum:
///
/// `s1 = (phi(v) phi(-u))^(n-1) * sum_{i,j} B[i,j] t^(i-1) s^(j-1)`
///
/// with `t = phi(u)/phi(-u)` and `s = phi(-v)/phi(v)`. The table must hold
/// [`TableKind::TopBottom`] counts of order `n`.
pub fn s1_expansion(n: usize, u: f64, v: f64, top_bottom: &CountTable) -> Result<f64, IceError> {
    expect_table(top_bottom, TableKind::TopBottom, n)?;
    let (t, s) = (t_ratio(u), s_ratio(v));
    let mut sum = 0.0;
    for (i, j, count) in top_bottom.iter_pairs() {
        sum += big_to_f64(count) * t.powi(i as i32 - 1) * s.powi(j as i32 - 1);
    }
    Ok((phi(v) * phi(-u)).powi(n as i32 - 1) * sum)
}

/// Reconstructs [`s2`] from the top-two-row count table:
///
/// `s2 = (phi(v) phi(-u))^(n-1) / (ts - 1) * sum_{i<j} A[i,j] *
///  (t^i s^(n-j+1) - t^i s^(n-j) - t^(i-1) s^(n-j+1)
///   + t^j s^(n-i) + t^(j-1) s^(n-i+1) - t^(j-1) s^(n-i))`
///
/// The table must hold [`TableKind::DoublyTop`] counts of order `n`, and
/// `t*s` must stay away from one, where the prefactor's pole meets the
/// sum's zero.
pub fn s2_expansion(n: usize, u: f64, v: f64, doubly_top: &CountTable) -> Result<f64, IceError> {
    expect_table(doubly_top, TableKind::DoublyTop, n)?;
    let (t, s) = (t_ratio(u), s_ratio(v));
    let ts = t * s;
    if (ts - 1.0).abs() < TS_MARGIN {
        return Err(IceError::DegenerateTs { ts });
    }
    let n_i = n as i32;
    let mut sum = 0.0;
    for (i, j, count) in doubly_top.iter_pairs() {
        let (i, j) = (i as i32, j as i32);
        let monomials = t.powi(i) * s.powi(n_i - j + 1)
            - t.powi(i) * s.powi(n_i - j)
            - t.powi(i - 1) * s.powi(n_i - j + 1)
            + t.powi(j) * s.powi(n_i - i)
            + t.powi(j - 1) * s.powi(n_i - i + 1)
            - t.powi(j - 1) * s.powi(n_i - i);
        sum += big_to_f64(count) * monomials;
    }
    Ok((phi(v) * phi(-u)).powi(n_i - 1) / (ts - 1.0) * sum)
}

fn expect_table(table: &CountTable, kind: TableKind, n: usize) -> Result<(), IceError> {
    if table.kind() != kind || table.order() != n {
        return Err(IceError::TableMismatch {
            expected: kind.as_str(),
            n,
            found: table.kind().as_str(),
            found_n: table.order(),
        });
    }
    Ok(())
}

/// Relative closeness with an absolute floor: `|a - b|` at most `tol`
/// times the larger magnitude, or at most `tol` itself when both values
/// sit below magnitude one.
pub fn approx_eq(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

fn draw_open_unit(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(-1.0..1.0)
}

/// Checks that the homogeneous partition function at [`DEFAULT_ETA`]
/// equals the exact matrix count of the same order, to relative tolerance
/// `tol`. One case per call.
pub fn check_homogeneous_total(n: usize, tol: f64) -> CheckReport {
    let mut report = CheckReport::new("homogeneous-equals-total");
    let z = partition_function(&SpectralParams::homogeneous(n));
    let exact = big_to_f64(&AlphaCounter::new().total(n));
    report.record(approx_eq(z, exact, tol), || {
        format!("order {n}: partition function {z} vs exact count {exact}")
    });
    report
}

/// Checks symmetry of the partition function in the row parameters and in
/// the column parameters: each trial draws parameters in `(-1, 1)`,
/// applies a random row transposition and a random column transposition,
/// and compares to relative tolerance `tol`. Two cases per trial.
pub fn check_row_symmetry(n: usize, trials: usize, seed: u64, tol: f64) -> CheckReport {
    let mut report = CheckReport::new("row-column-symmetry");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let xs: Vec<f64> = (0..n).map(|_| draw_open_unit(&mut rng)).collect();
        let ys: Vec<f64> = (0..n).map(|_| draw_open_unit(&mut rng)).collect();
        let params = SpectralParams::new(DEFAULT_ETA, xs, ys).expect("drawn parameters are valid");
        let (a, b) = random_transposition(&mut rng, n);
        let z = partition_function(&params);
        let z_rows = partition_function(&params.with_rows_swapped(a, b));
        report.record(approx_eq(z, z_rows, tol), || {
            format!("trial {trial}: swapping rows {a} and {b} moved {z} to {z_rows}")
        });
        let (a, b) = random_transposition(&mut rng, n);
        let z_cols = partition_function(&params.with_columns_swapped(a, b));
        report.record(approx_eq(z, z_cols, tol), || {
            format!("trial {trial}: swapping columns {a} and {b} moved {z} to {z_cols}")
        });
    }
    report
}

fn random_transposition(rng: &mut ChaCha8Rng, n: usize) -> (usize, usize) {
    if n < 2 {
        return (0, 0);
    }
    let a = rng.gen_range(0..n);
    let b = (a + rng.gen_range(1..n)) % n;
    (a, b)
}

/// Checks that the two boundary slices agree: `s1 = s2` to relative
/// tolerance `tol` over `trials` draws of `(u, v)` in `(-1, 1)`.
pub fn check_s1_s2(n: usize, trials: usize, seed: u64, tol: f64) -> CheckReport {
    let mut report = CheckReport::new("s1-equals-s2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let (u, v) = (draw_open_unit(&mut rng), draw_open_unit(&mut rng));
        let (first, second) = (s1(n, u, v), s2(n, u, v));
        report.record(approx_eq(first, second, tol), || {
            format!("trial {trial}: s1({u}, {v}) = {first} but s2 = {second}")
        });
    }
    report
}

/// Checks the table expansion of `s1` against the configuration sum over
/// `trials` draws of `(u, v)` in `(-1, 1)`, plus the homogeneous point
/// `(0, 0)` where the expansion collapses to the table total.
pub fn check_s1_expansion(
    top_bottom: &CountTable,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<CheckReport, IceError> {
    let n = top_bottom.order();
    expect_table(top_bottom, TableKind::TopBottom, n)?;
    let mut report = CheckReport::new("s1-expansion");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let at_origin = s1_expansion(n, 0.0, 0.0, top_bottom)?;
    let table_total = big_to_f64(&top_bottom.sum());
    report.record(approx_eq(at_origin, table_total, tol), || {
        format!("expansion at (0, 0) gives {at_origin}, table total is {table_total}")
    });
    for trial in 0..trials {
        let (u, v) = (draw_open_unit(&mut rng), draw_open_unit(&mut rng));
        let brute = s1(n, u, v);
        let expanded = s1_expansion(n, u, v, top_bottom)?;
        report.record(approx_eq(brute, expanded, tol), || {
            format!("trial {trial}: s1({u}, {v}) = {brute} but the expansion gives {expanded}")
        });
    }
    Ok(report)
}

/// Checks the table reconstruction of `s2` against the configuration sum
/// over `trials` draws of `(u, v)` in `(-1, 1)`, redrawing any pair whose
/// `t*s` lands within `1e-3` of the removable singularity at one.
pub fn check_s2_expansion(
    doubly_top: &CountTable,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<CheckReport, IceError> {
    let n = doubly_top.order();
    expect_table(doubly_top, TableKind::DoublyTop, n)?;
    let mut report = CheckReport::new("s2-expansion");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let (u, v) = draw_away_from_singularity(&mut rng);
        let brute = s2(n, u, v);
        let reconstructed = s2_expansion(n, u, v, doubly_top)?;
        report.record(approx_eq(brute, reconstructed, tol), || {
            format!(
                "trial {trial}: s2({u}, {v}) = {brute} but the reconstruction gives {reconstructed}"
            )
        });
    }
    Ok(report)
}

fn draw_away_from_singularity(rng: &mut ChaCha8Rng) -> (f64, f64) {
    for _ in 0..1000 {
        let (u, v) = (draw_open_unit(rng), draw_open_unit(rng));
        if (t_ratio(u) * s_ratio(v) - 1.0).abs() > 1e-3 {
            return (u, v);
        }
    }
    panic!("a thousand draws all landed within 1e-3 of t*s = 1");
}

/// Checks the pointwise identity `phi(x)^2 + phi(-x)^2 - phi(x)phi(-x) = 1`
/// at `points` draws of `x` in `(-10, 10)`, to absolute tolerance `tol`.
pub fn check_phi_identity(points: usize, seed: u64, tol: f64) -> CheckReport {
    let mut report = CheckReport::new("phi-identity");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..points {
        let x = rng.gen_range(-10.0..10.0);
        let lhs = phi(x) * phi(x) + phi(-x) * phi(-x) - phi(x) * phi(-x);
        report.record((lhs - 1.0).abs() <= tol, || {
            format!("at x = {x}: phi(x)^2 + phi(-x)^2 - phi(x)phi(-x) = {lhs}")
        });
    }
    report
}
