//! Acceptance gate: every closed-form count and identity in the crate is
//! held against an independent brute-force oracle at desk scale, and the
//! floating-point lattice-model suite against the exact counts.
//!
//! One test per criterion; the harness emits one pass/fail line for each.

use asmcount::asm::enumerate_asms;
use asmcount::counting::{self, AlphaCounter};
use asmcount::report::CheckReport;
use asmcount::triangle::complete_triangles;
use asmcount::{formulas, sixvertex, BigInt};
use std::collections::BTreeMap;
use std::sync::LazyLock;

static COUNTER: LazyLock<AlphaCounter> = LazyLock::new(|| AlphaCounter::with_workers(4));

const SEED: u64 = 42;
const TOL: f64 = 1e-9;

fn assert_passed(report: &CheckReport) {
    assert!(
        report.passed(),
        "{} failed ({} cases): {:?}",
        report.name(),
        report.checked(),
        report.failures()
    );
}

#[test]
fn criterion_1_top_two_formula_matches_counting_oracle() {
    for n in 3..=8usize {
        let table = COUNTER.doubly_top(n).unwrap();
        for i in 1..=n as i64 {
            for j in (i + 1)..=n as i64 {
                assert_eq!(
                    formulas::a_doubly_refined(n, i, j),
                    *table.pair_value(i, j),
                    "top-two count disagrees at order {n}, pair ({i}, {j})"
                );
            }
        }
    }
    println!("criterion 1 (top-two pair formula vs counting oracle, orders 3..=8): pass");
}

#[test]
fn criterion_2_total_and_refined_formulas_match_brute_counts() {
    for n in 1..=7usize {
        let formula = formulas::asm_total(n);
        assert_eq!(formula, COUNTER.total(n), "total disagrees at order {n}");
        let enumerated = enumerate_asms(n).count();
        assert_eq!(
            formula,
            BigInt::from(enumerated),
            "enumeration found {enumerated} matrices at order {n}"
        );
    }
    for n in 2..=7usize {
        let table = COUNTER.refined(n).unwrap();
        for k in 1..=n as i64 {
            assert_eq!(
                formulas::asm_refined(n, k),
                *table.refined_value(k),
                "refined count disagrees at order {n}, column {k}"
            );
        }
    }
    for n in 1..=12usize {
        let sum: BigInt = (1..=n as i64).map(|k| formulas::asm_refined(n, k)).sum();
        assert_eq!(
            sum,
            formulas::asm_total(n),
            "refined sum disagrees at order {n}"
        );
    }
    println!("criterion 2 (total and refined formulas vs enumeration and counting, orders <= 7; refined sums to order 12): pass");
}

#[test]
fn criterion_3_top_bottom_differences_match_the_pair_formula() {
    for n in 2..=6usize {
        let table = counting::top_bottom_by_enumeration(n);
        assert_passed(&formulas::check_top_bottom_difference(&table));
    }
    println!("criterion 3 (top-bottom table differences vs pair formula, orders 2..=6): pass");
}

#[test]
fn criterion_4_top_bottom_formula_matches_enumeration() {
    for n in 2..=6usize {
        let table = counting::top_bottom_by_enumeration(n);
        for i in 1..=n as i64 {
            for j in 1..=n as i64 {
                assert_eq!(
                    formulas::b_doubly_refined(n, i, j),
                    *table.pair_value(i, j),
                    "top-bottom count disagrees at order {n}, pair ({i}, {j})"
                );
            }
        }
    }
    println!("criterion 4 (top-bottom summation formula vs enumeration, orders 2..=6): pass");
}

#[test]
fn criterion_5_six_term_identity_and_recurrence_hold() {
    for n in 3..=7usize {
        let doubly_top = COUNTER.doubly_top(n).unwrap();
        let top_bottom = counting::top_bottom_by_enumeration(n);
        assert_passed(&formulas::check_six_term_identity(&doubly_top, &top_bottom));
        assert_passed(&formulas::check_x_recurrence(&doubly_top));
    }
    println!("criterion 5 (six-term identity and pair recurrence on the widened window, orders 3..=7): pass");
}

#[test]
fn criterion_6_pair_generating_values_are_integral() {
    for n in 2..=8usize {
        assert_passed(&formulas::check_x_integrality(n));
    }
    println!("criterion 6 (antisymmetrized and reflected pair values have unit denominators, orders 2..=8): pass");
}

#[test]
fn criterion_7_lattice_model_suite_agrees_with_exact_counts() {
    for n in 1..=5usize {
        assert_passed(&sixvertex::check_homogeneous_total(n, TOL));
    }
    for n in 1..=4usize {
        assert_passed(&sixvertex::check_row_symmetry(n, 100, SEED, TOL));
    }
    for n in 2..=5usize {
        assert_passed(&sixvertex::check_s1_s2(n, 50, SEED, TOL));
    }
    for n in 2..=5usize {
        let table = counting::top_bottom_by_enumeration(n);
        assert_passed(&sixvertex::check_s1_expansion(&table, 50, SEED, TOL).unwrap());
    }
    for n in 3..=5usize {
        let table = COUNTER.doubly_top(n).unwrap();
        assert_passed(&sixvertex::check_s2_expansion(&table, 50, SEED, TOL).unwrap());
    }
    assert_passed(&sixvertex::check_phi_identity(1000, SEED, 1e-12));
    println!("criterion 7 (six-vertex partition sums vs exact counts, slices, expansions, and the pointwise weight identity): pass");
}

#[test]
fn criterion_8_structural_invariants_hold() {
    for n in 1..=6usize {
        for triangle in complete_triangles(n) {
            let matrix = triangle.to_asm().unwrap();
            assert_eq!(
                matrix.to_triangle(),
                triangle,
                "round trip broke at order {n}"
            );
            let back = matrix.to_triangle().to_asm().unwrap();
            assert_eq!(back, matrix, "reverse round trip broke at order {n}");
        }
    }

    for n in 3..=6usize {
        let n_i = n as i64;
        let mut weighted = BigInt::from(0);
        for i in 1..=n_i {
            for j in (i + 1)..=n_i {
                let value = formulas::a_doubly_refined(n, i, j);
                weighted += BigInt::from(j - i + 1) * &value;
                assert_eq!(
                    value,
                    formulas::a_doubly_refined(n, n_i + 1 - j, n_i + 1 - i),
                    "top-two reflection broke at order {n}, pair ({i}, {j})"
                );
            }
        }
        assert_eq!(
            weighted,
            formulas::asm_total(n),
            "middle-value multiplicity sum disagrees at order {n}"
        );
    }

    for n in 2..=6usize {
        let n_i = n as i64;
        for i in 1..=n_i {
            for j in 1..=n_i {
                let value = formulas::b_doubly_refined(n, i, j);
                assert_eq!(value, formulas::b_doubly_refined(n, j, i));
                assert_eq!(
                    value,
                    formulas::b_doubly_refined(n, n_i + 1 - i, n_i + 1 - j)
                );
            }
            assert_eq!(
                formulas::b_doubly_refined(n, 1, i),
                formulas::asm_refined(n - 1, i - 1),
                "first-column reduction broke at order {n}, column {i}"
            );
        }
    }

    for n in 3..=6usize {
        let mut buckets: BTreeMap<(usize, usize, usize), BigInt> = BTreeMap::new();
        for matrix in enumerate_asms(n) {
            let triple = matrix.top_two_row_index().unwrap();
            *buckets.entry((triple.i, triple.j, triple.k)).or_default() += 1;
        }
        for i in 1..=n {
            for j in (i + 1)..=n {
                let expected = formulas::a_doubly_refined(n, i as i64, j as i64);
                for k in i..=j {
                    let got = buckets.get(&(i, j, k)).cloned().unwrap_or_default();
                    assert_eq!(
                        got, expected,
                        "bucket ({i}, {j}, {k}) depends on the middle value at order {n}"
                    );
                }
            }
        }
    }
    println!("criterion 8 (round trips, multiplicity sum, reflections, flips, reduction, middle-value independence, orders <= 6): pass");
}
