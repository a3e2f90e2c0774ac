//! The `verify` subcommand: runs every identity and cross-check suite and
//! emits one machine-readable JSON report.
//!
//! The report is deterministic for a fixed seed and order bound. Suites run
//! in a fixed order, every (suite, order) combination gets its own result
//! row, and nothing in the output depends on wall-clock time or memory
//! layout, so two runs with the same flags produce byte-identical reports.

use asmcount::counting::{AlphaCounter, CountTable};
use asmcount::report::CheckReport;
use asmcount::{counting, formulas, sixvertex, BigInt};
use clap::ValueEnum;
use serde::Serialize;
use std::collections::BTreeMap;

/// Which suite families to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum SuiteSelection {
    /// Exact integer suites plus the floating-point ice-model suites.
    #[default]
    All,
    /// Exact integer suites only: formula-vs-brute tables and identities.
    Exact,
    /// Floating-point ice-model suites only.
    Ice,
}

impl SuiteSelection {
    fn as_str(self) -> &'static str {
        match self {
            SuiteSelection::All => "all",
            SuiteSelection::Exact => "exact",
            SuiteSelection::Ice => "ice",
        }
    }

    /// True when the exact integer suites are selected.
    pub fn exact(self) -> bool {
        matches!(self, SuiteSelection::All | SuiteSelection::Exact)
    }

    /// True when the floating-point ice suites are selected.
    pub fn ice(self) -> bool {
        matches!(self, SuiteSelection::All | SuiteSelection::Ice)
    }
}

/// Settings for a verification run.
#[derive(Debug)]
pub struct VerifyOptions {
    pub n_max: usize,
    pub suites: SuiteSelection,
    pub seed: u64,
    pub tolerance: f64,
    /// Lifts the desk-scale caps on the ice suites.
    pub unsafe_large: bool,
    /// Corrupts the brute total at the smallest order, to exercise the
    /// failure path end to end.
    pub inject_fault: bool,
}

/// Largest order the ice partition-function suites run at by default.
pub const ICE_CAP: usize = 5;
/// Largest order the transposition-symmetry suite runs at by default; it
/// recomputes the partition function twice per trial.
pub const SYMMETRY_CAP: usize = 4;

const RANDOM_TRIALS: usize = 50;
const SYMMETRY_TRIALS: usize = 100;
const PHI_POINTS: usize = 1000;
const PHI_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Serialize)]
struct Row {
    suite: &'static str,
    n: Option<usize>,
    status: &'static str,
    witness: Option<String>,
}

#[derive(Debug, Serialize)]
struct Report {
    n_max: usize,
    suites: &'static str,
    seed: u64,
    tolerance: f64,
    results: Vec<Row>,
    passed: bool,
}

/// Runs the selected suites and returns the JSON report plus the overall
/// verdict (false as soon as any row fails).
pub fn run(counter: &AlphaCounter, opts: &VerifyOptions) -> (String, bool) {
    let mut runner = Runner {
        counter,
        opts,
        rows: Vec::new(),
        doubly_top: BTreeMap::new(),
        top_bottom: BTreeMap::new(),
    };
    if opts.suites.exact() {
        runner.exact_suites();
    }
    if opts.suites.ice() {
        runner.ice_suites();
    }
    let passed = runner.rows.iter().all(|row| row.status != "fail");
    let report = Report {
        n_max: opts.n_max,
        suites: opts.suites.as_str(),
        seed: opts.seed,
        tolerance: opts.tolerance,
        results: runner.rows,
        passed,
    };
    let mut out = serde_json::to_string_pretty(&report).expect("the report serializes");
    out.push('\n');
    (out, passed)
}

struct Runner<'a> {
    counter: &'a AlphaCounter,
    opts: &'a VerifyOptions,
    rows: Vec<Row>,
    doubly_top: BTreeMap<usize, CountTable>,
    top_bottom: BTreeMap<usize, CountTable>,
}

impl Runner<'_> {
    fn doubly_top(&mut self, n: usize) -> &CountTable {
        self.doubly_top.entry(n).or_insert_with(|| {
            self.counter
                .doubly_top(n)
                .expect("suites only request orders of at least three")
        })
    }

    fn top_bottom(&mut self, n: usize) -> &CountTable {
        self.top_bottom
            .entry(n)
            .or_insert_with(|| counting::top_bottom_by_enumeration(n))
    }

    fn push(&mut self, suite: &'static str, n: Option<usize>, ok: bool, witness: Option<String>) {
        self.rows.push(Row {
            suite,
            n,
            status: if ok { "pass" } else { "fail" },
            witness: if ok { None } else { witness },
        });
    }

    fn push_report(&mut self, suite: &'static str, n: Option<usize>, report: &CheckReport) {
        debug_assert_eq!(report.name(), suite);
        let witness = report.failures().first().cloned();
        self.push(suite, n, report.passed(), witness);
    }

    fn skip(&mut self, suite: &'static str, witness: String) {
        self.rows.push(Row {
            suite,
            n: None,
            status: "skip",
            witness: Some(witness),
        });
    }

    /// Emits skip markers for a suite whose smallest order exceeds the
    /// requested bound; returns the usable range otherwise.
    fn range(&mut self, suite: &'static str, min_n: usize) -> std::ops::Range<usize> {
        if min_n > self.opts.n_max {
            self.skip(suite, format!("needs an order of at least {min_n}"));
            return min_n..min_n;
        }
        min_n..self.opts.n_max + 1
    }

    /// Like `range`, but also clamps to the suite's desk-scale cap unless
    /// the caps were lifted, recording one skip marker for the clamped tail.
    fn capped_range(
        &mut self,
        suite: &'static str,
        min_n: usize,
        cap: usize,
    ) -> std::ops::Range<usize> {
        if min_n > self.opts.n_max {
            self.skip(suite, format!("needs an order of at least {min_n}"));
            return min_n..min_n;
        }
        if self.opts.unsafe_large || self.opts.n_max <= cap {
            return min_n..self.opts.n_max + 1;
        }
        self.skip(
            suite,
            format!("orders above {cap} skipped; pass --unsafe-large to run them"),
        );
        min_n..cap + 1
    }

    fn seed_for(&self, suite_index: u64, n: usize) -> u64 {
        self.opts
            .seed
            .wrapping_add(suite_index.wrapping_mul(1_000_003))
            .wrapping_add(n as u64)
    }

    fn exact_suites(&mut self) {
        for n in self.range("total-formula-vs-brute", 1) {
            let formula = formulas::asm_total(n);
            let mut brute = self.counter.total(n);
            if self.opts.inject_fault && n == 1 {
                brute += BigInt::from(1);
            }
            let ok = formula == brute;
            self.push(
                "total-formula-vs-brute",
                Some(n),
                ok,
                Some(format!(
                    "order {n}: formula {formula} but brute count {brute}"
                )),
            );
        }

        for n in self.range("refined-formula-vs-brute", 2) {
            let table = self
                .counter
                .refined(n)
                .expect("refined tables exist from order two");
            let mut witness = None;
            for k in 1..=n as i64 {
                let formula = formulas::asm_refined(n, k);
                let brute = table.refined_value(k);
                if formula != *brute {
                    witness = Some(format!(
                        "order {n}, position {k}: formula {formula} but brute count {brute}"
                    ));
                    break;
                }
            }
            if witness.is_none() {
                let total = formulas::asm_total(n);
                let sum = table.sum();
                if sum != total {
                    witness = Some(format!("order {n}: table sums to {sum}, total is {total}"));
                }
            }
            let ok = witness.is_none();
            self.push("refined-formula-vs-brute", Some(n), ok, witness);
        }

        for n in self.range("top-two-formula-vs-brute", 3) {
            let table = self.doubly_top(n);
            let mut witness = None;
            'outer: for i in 1..=n as i64 {
                for j in (i + 1)..=n as i64 {
                    let formula = formulas::a_doubly_refined(n, i, j);
                    let brute = table.pair_value(i, j);
                    if formula != *brute {
                        witness = Some(format!(
                            "order {n}, pair ({i}, {j}): formula {formula} but brute count {brute}"
                        ));
                        break 'outer;
                    }
                }
            }
            let ok = witness.is_none();
            self.push("top-two-formula-vs-brute", Some(n), ok, witness);
        }

        for n in self.range("top-bottom-formula-vs-brute", 2) {
            let table = self.top_bottom(n);
            let mut witness = None;
            'outer: for i in 1..=n as i64 {
                for j in 1..=n as i64 {
                    let formula = formulas::b_doubly_refined(n, i, j);
                    let brute = table.pair_value(i, j);
                    if formula != *brute {
                        witness = Some(format!(
                            "order {n}, pair ({i}, {j}): formula {formula} but brute count {brute}"
                        ));
                        break 'outer;
                    }
                }
            }
            let ok = witness.is_none();
            self.push("top-bottom-formula-vs-brute", Some(n), ok, witness);
        }

        for n in self.range("top-bottom-difference", 2) {
            let report = formulas::check_top_bottom_difference(self.top_bottom(n));
            self.push_report("top-bottom-difference", Some(n), &report);
        }

        for n in self.range("six-term-identity", 3) {
            self.doubly_top(n);
            self.top_bottom(n);
            let report = formulas::check_six_term_identity(
                self.doubly_top.get(&n).expect("built above"),
                self.top_bottom.get(&n).expect("built above"),
            );
            self.push_report("six-term-identity", Some(n), &report);
        }

        for n in self.range("x-recurrence", 3) {
            let report = formulas::check_x_recurrence(self.doubly_top(n));
            self.push_report("x-recurrence", Some(n), &report);
        }

        for n in self.range("x-integrality", 2) {
            let report = formulas::check_x_integrality(n);
            self.push_report("x-integrality", Some(n), &report);
        }
    }

    fn ice_suites(&mut self) {
        let tol = self.opts.tolerance;

        for n in self.capped_range("homogeneous-equals-total", 1, ICE_CAP) {
            let report = sixvertex::check_homogeneous_total(n, tol);
            self.push_report("homogeneous-equals-total", Some(n), &report);
        }

        for n in self.capped_range("row-column-symmetry", 1, SYMMETRY_CAP) {
            let seed = self.seed_for(10, n);
            let report = sixvertex::check_row_symmetry(n, SYMMETRY_TRIALS, seed, tol);
            self.push_report("row-column-symmetry", Some(n), &report);
        }

        for n in self.capped_range("s1-equals-s2", 2, ICE_CAP) {
            let seed = self.seed_for(11, n);
            let report = sixvertex::check_s1_s2(n, RANDOM_TRIALS, seed, tol);
            self.push_report("s1-equals-s2", Some(n), &report);
        }

        for n in self.capped_range("s1-expansion", 2, ICE_CAP) {
            let seed = self.seed_for(12, n);
            self.top_bottom(n);
            let table = self.top_bottom.get(&n).expect("built above");
            let report = sixvertex::check_s1_expansion(table, RANDOM_TRIALS, seed, tol)
                .expect("the table kind and order match by construction");
            self.push_report("s1-expansion", Some(n), &report);
        }

        for n in self.capped_range("s2-expansion", 3, ICE_CAP) {
            let seed = self.seed_for(13, n);
            self.doubly_top(n);
            let table = self.doubly_top.get(&n).expect("built above");
            let report = sixvertex::check_s2_expansion(table, RANDOM_TRIALS, seed, tol)
                .expect("the table kind and order match by construction");
            self.push_report("s2-expansion", Some(n), &report);
        }

        let report = sixvertex::check_phi_identity(PHI_POINTS, self.seed_for(14, 0), PHI_TOLERANCE);
        self.push_report("phi-identity", None, &report);
    }
}
