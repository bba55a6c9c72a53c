//! End-to-end acceptance checks, one per published claim group. Each
//! test prints a single PASS/FAIL line (visible with --nocapture).

use std::panic::{catch_unwind, resume_unwind, UnwindSafe};

use num_bigint::BigInt;
use num_rational::BigRational;

use latpath::bijection::{map_f, map_g, weight_bounds, weighted_count, WeightedPath};
use latpath::brute::{enumerate_free, enumerate_primary, EnumerationBudget};
use latpath::count::{
    count_free_coeff, count_free_convolution, count_free_rec, count_primary0_k1, count_primary1,
    count_primary1_convolution, count_primary_direct, count_primary_k,
};
use latpath::paths::Classification;
use latpath::riordan::{delannoy, riordan_for, riordan_transform};
use latpath::series::{solve_system, verify_algebraic, Relation};
use latpath::stats::{census, delannoy_diag_expectation, expected_steps, expected_vertical};
use latpath::steps::{Family, Step, StepSet};

fn criterion(idx: usize, desc: &str, run: impl FnOnce() + UnwindSafe) {
    match catch_unwind(run) {
        Ok(()) => println!("ACCEPTANCE {idx} PASS: {desc}"),
        Err(cause) => {
            println!("ACCEPTANCE {idx} FAIL: {desc}");
            resume_unwind(cause);
        }
    }
}

fn check_seq(label: &str, expect: &[u64], actual: impl Fn(i64) -> BigInt) {
    for (n, v) in expect.iter().enumerate() {
        assert_eq!(actual(n as i64), BigInt::from(*v), "{label} at n = {n}");
    }
}

fn budget() -> EnumerationBudget {
    EnumerationBudget::default()
}

#[test]
fn criterion_01_family_a_sequences() {
    criterion(1, "family A (N=1,K=2) printed sequences", || {
        let set = StepSet::family(Family::A, 1, 2).unwrap();
        check_seq(
            "F(0,n)",
            &[1, 3, 15, 84, 491, 2948, 18018, 111520, 696739],
            |n| count_free_rec(&set, 0, n),
        );
        check_seq(
            "F(1,n)",
            &[1, 6, 35, 207, 1251, 7678, 47658, 298371, 1880659],
            |n| count_free_rec(&set, 1, n),
        );
        check_seq(
            "P(0,n)",
            &[1, 2, 7, 30, 142, 716, 3771, 20502, 114194, 648276],
            |n| count_primary_direct(&set, 0, n).unwrap(),
        );
        check_seq(
            "P(1,n)",
            &[1, 3, 10, 41, 190, 946, 4940, 26693, 147990, 837102],
            |n| count_primary_direct(&set, 1, n).unwrap(),
        );
        check_seq(
            "P(2,n)",
            &[1, 1, 2, 7, 30, 142, 716, 3771, 20502, 114194, 648276],
            |n| count_primary_direct(&set, 2, n).unwrap(),
        );
    });
}

#[test]
fn criterion_02_family_b_sequences() {
    criterion(2, "family B (N=1) printed sequences", || {
        let set = StepSet::family(Family::B, 1, 1).unwrap();
        check_seq(
            "F(0,n)",
            &[1, 3, 15, 81, 459, 2673, 15849, 95175, 576963],
            |n| count_free_rec(&set, 0, n),
        );
        check_seq("F(1,n)", &[1, 6, 33, 189, 1107, 6588, 39663, 240894], |n| {
            count_free_rec(&set, 1, n)
        });
        check_seq(
            "P(0,n)",
            &[1, 2, 7, 29, 133, 650, 3319, 17498, 94525],
            |n| count_primary_direct(&set, 0, n).unwrap(),
        );
        check_seq(
            "P(1,n)",
            &[1, 3, 9, 36, 162, 783, 3969, 20817, 112023],
            |n| count_primary_direct(&set, 1, n).unwrap(),
        );
    });
}

#[test]
fn criterion_03_family_c_arrays() {
    criterion(3, "family C printed arrays for N = 0..3, n = 0..7", || {
        let primary1: [[u64; 8]; 4] = [
            [1, 2, 2, 2, 2, 2, 2, 2],
            [1, 3, 10, 42, 198, 1001, 5304, 29070],
            [1, 4, 28, 264, 2860, 33592, 416024, 5348880],
            [1, 5, 60, 1001, 19380, 408595, 9104550, 210905400],
        ];
        let free0: [[u64; 8]; 4] = [
            [1, 1, 1, 1, 1, 1, 1, 1],
            [1, 3, 15, 84, 495, 3003, 18564, 116280],
            [1, 6, 70, 924, 12870, 184756, 2704156, 40116600],
            [1, 10, 210, 5005, 125970, 3268760, 86493225, 2319959400],
        ];
        for big_n in 0..=3u64 {
            let set = StepSet::family(Family::C, big_n, 0).unwrap();
            check_seq(&format!("P(1,n), N={big_n}"), &primary1[big_n as usize], |n| {
                count_primary_direct(&set, 1, n).unwrap()
            });
            check_seq(&format!("F(0,n), N={big_n}"), &free0[big_n as usize], |n| {
                count_free_rec(&set, 0, n)
            });
        }
    });
}

#[test]
fn criterion_04_family_d_sequences() {
    criterion(4, "family D (N=K=1) printed sequences", || {
        let set = StepSet::family(Family::D, 1, 1).unwrap();
        check_seq(
            "F(0,n)",
            &[1, 2, 8, 32, 136, 592, 2624, 11776, 53344, 243392],
            |n| count_free_rec(&set, 0, n),
        );
        check_seq(
            "F(1,n)",
            &[1, 4, 16, 68, 296, 1312, 5888, 26672, 121696],
            |n| count_free_rec(&set, 1, n),
        );
        check_seq(
            "P(0,n)",
            &[1, 1, 3, 9, 31, 113, 431, 1697, 6847, 28161, 117631],
            |n| count_primary_direct(&set, 0, n).unwrap(),
        );
        check_seq(
            "P(1,n)",
            &[1, 2, 4, 12, 40, 144, 544, 2128, 8544, 35008, 145792],
            |n| count_primary_direct(&set, 1, n).unwrap(),
        );
    });
}

/// Every admissible weight vector for a companion path, in odometer
/// order.
fn all_weight_vectors(bounds: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut out = vec![Vec::new()];
    for b in bounds {
        let mut next = Vec::new();
        for prefix in &out {
            let mut w = BigInt::from(1);
            while &w <= b {
                let mut row = prefix.clone();
                row.push(w.clone());
                next.push(row);
                w += 1;
            }
        }
        out = next;
    }
    out
}

#[test]
fn criterion_05_bijection() {
    criterion(5, "weighted-path bijection on four families, m <= 2, n <= 5", || {
        let budget = budget();
        for set in [
            StepSet::family(Family::A, 1, 2).unwrap(),
            StepSet::family(Family::B, 1, 1).unwrap(),
            StepSet::family(Family::D, 1, 1).unwrap(),
            StepSet::family(Family::E, 0, 0).unwrap(),
        ] {
            let companion = set.companion_l().unwrap();
            for m in 0..=2i64 {
                for n in 1..=5i64 {
                    let primaries = enumerate_primary(&set, m, n, &budget).unwrap();
                    let oracle = BigInt::from(primaries.len());
                    // three independent counts of the primary class
                    assert_eq!(
                        count_primary_direct(&set, m, n).unwrap(),
                        oracle,
                        "{set} recurrence m={m} n={n}"
                    );
                    assert_eq!(
                        weighted_count(&set, m, n).unwrap(),
                        oracle,
                        "{set} weighted m={m} n={n}"
                    );
                    if m == 1 {
                        let f1 = count_free_coeff(&set, 1, n, true).unwrap();
                        let f0 = count_free_coeff(&set, 0, n, true).unwrap();
                        assert_eq!((f1 - f0) / n, oracle, "{set} coefficient n={n}");
                    }

                    // g then f is the identity on the primary class
                    let mut images = std::collections::BTreeSet::new();
                    for pi in &primaries {
                        let wp = map_g(&set, pi).unwrap();
                        assert_eq!(&map_f(&set, &wp, m).unwrap(), pi);
                        assert!(images.insert((wp.path.clone(), wp.weights.clone())));
                    }

                    // f then g is the identity on the weighted class
                    let mut seen = 0usize;
                    for mu in enumerate_primary(&companion, m, n, &budget).unwrap() {
                        let bounds = weight_bounds(&set, &mu, m).unwrap();
                        for weights in all_weight_vectors(&bounds) {
                            let wp = WeightedPath { path: mu.clone(), weights };
                            let pi = map_f(&set, &wp, m).unwrap();
                            assert_eq!(pi.classify(&set), Classification::Primary(m));
                            assert_eq!(map_g(&set, &pi).unwrap(), wp);
                            seen += 1;
                        }
                    }
                    assert_eq!(BigInt::from(seen), oracle, "{set} domain size m={m} n={n}");
                }
            }
        }
    });
}

#[test]
fn criterion_06_counting_identities() {
    criterion(6, "ratio, convolution and census identities, n <= 6", || {
        let budget = budget();
        for set in [
            StepSet::family(Family::A, 1, 2).unwrap(),
            StepSet::family(Family::B, 1, 1).unwrap(),
            StepSet::family(Family::D, 1, 1).unwrap(),
        ] {
            for n in 1..=6i64 {
                // n |P(1,n)| = |F(1,n)| - |F(0,n)|
                assert_eq!(
                    BigInt::from(n) * count_primary1(&set, n).unwrap(),
                    count_free_rec(&set, 1, n) - count_free_rec(&set, 0, n),
                    "{set} ratio n={n}"
                );
                assert_eq!(
                    count_primary1_convolution(&set, n).unwrap(),
                    count_primary1(&set, n).unwrap(),
                    "{set} primary convolution n={n}"
                );
            }
            for m in 0..=3i64 {
                for n in 0..=6i64 {
                    assert_eq!(
                        count_free_convolution(&set, m, n).unwrap(),
                        count_free_rec(&set, m, n),
                        "{set} free convolution m={m} n={n}"
                    );
                }
            }
            for n in 1..=5i64 {
                let c = census(&set, n, &budget).unwrap();
                assert_eq!(c.total, count_free_rec(&set, 1, n), "{set} census total n={n}");
                assert_eq!(
                    c.counts.get(&Step::Vertical).cloned().unwrap_or_default(),
                    count_free_rec(&set, 0, n),
                    "{set} census verticals n={n}"
                );
                for s in set.non_vertical_steps(-(6 * 2)) {
                    let k = s.rise().unwrap();
                    assert_eq!(
                        c.counts.get(&s).cloned().unwrap_or_default(),
                        count_free_rec(&set, 1 + k, n - 1),
                        "{set} census {s} n={n}"
                    );
                }
            }
        }
    });
}

#[test]
fn criterion_07_expectations() {
    criterion(7, "closed-form expectations against empirical averages", || {
        let budget = budget();
        for big_n in 0..=2u64 {
            let set = StepSet::family(Family::C, big_n, 0).unwrap();
            for n in 1..=5i64 {
                let paths = enumerate_primary(&set, 1, n, &budget).unwrap();
                let count = BigInt::from(paths.len());
                let verticals: usize = paths
                    .iter()
                    .map(|p| p.steps().iter().filter(|s| s.is_vertical()).count())
                    .sum();
                let lengths: usize = paths.iter().map(|p| p.len()).sum();
                let expect_v = BigRational::new(BigInt::from(big_n as i64 * n + 1), 2.into());
                let expect_s =
                    BigRational::new(BigInt::from((big_n as i64 + 2) * n + 1), 2.into());
                assert_eq!(expected_vertical(&set, n).unwrap(), expect_v, "N={big_n} n={n}");
                assert_eq!(expected_steps(&set, n).unwrap(), expect_s, "N={big_n} n={n}");
                assert_eq!(
                    BigRational::new(BigInt::from(verticals), count.clone()),
                    expect_v,
                    "empirical verticals N={big_n} n={n}"
                );
                assert_eq!(
                    BigRational::new(BigInt::from(lengths), count),
                    expect_s,
                    "empirical lengths N={big_n} n={n}"
                );
            }
        }
        let e = StepSet::family(Family::E, 0, 0).unwrap();
        for n in 1..=5i64 {
            let paths = enumerate_primary(&e, 1, n, &budget).unwrap();
            let flats: usize = paths
                .iter()
                .map(|p| p.steps().iter().filter(|s| **s == Step::up(0)).count())
                .sum();
            assert_eq!(
                delannoy_diag_expectation(n).unwrap(),
                BigRational::new(BigInt::from(flats), BigInt::from(paths.len())),
                "diagonal expectation n={n}"
            );
        }
    });
}

#[test]
fn criterion_08_riordan() {
    criterion(8, "Riordan entries, Delannoy array and transform", || {
        for set in [
            StepSet::family(Family::B, 1, 1).unwrap(),
            StepSet::family(Family::E, 0, 0).unwrap(),
        ] {
            let big_n = set.max_rise() as i64;
            let pair = riordan_for(&set, 8).unwrap();
            for i in 0..=8usize {
                for j in 0..=8usize {
                    assert_eq!(
                        pair.entry(i, j),
                        count_free_rec(&set, i as i64 - (big_n + 1) * j as i64, j as i64),
                        "{set} ({i},{j})"
                    );
                }
            }
        }
        let e = StepSet::family(Family::E, 0, 0).unwrap();
        let pair = riordan_for(&e, 8).unwrap();
        for i in 0..=8i64 {
            for j in 0..=8i64 {
                assert_eq!(pair.entry(i as usize, j as usize), delannoy(j, i - j));
            }
        }
        let sequences: [&[i64]; 3] = [
            &[1, 1, 1, 1, 1, 1, 1, 1, 1],
            &[0, 1, 4, 9, 16, 25, 36, 49, 64],
            &[2, -1, 3, -5, 8, -13, 21, -34, 55],
        ];
        for set in [
            StepSet::family(Family::B, 1, 1).unwrap(),
            StepSet::family(Family::E, 0, 0).unwrap(),
        ] {
            for seq in sequences {
                let a: Vec<BigInt> = seq.iter().map(|&v| BigInt::from(v)).collect();
                for n in 0..=8usize {
                    // both evaluation routes are compared internally
                    riordan_transform(&set, &a, n).unwrap();
                }
            }
        }
    });
}

#[test]
fn criterion_09_series() {
    criterion(9, "generating-function systems and algebraic residuals", || {
        for set in [
            StepSet::family(Family::A, 1, 2).unwrap(),
            StepSet::family(Family::B, 1, 1).unwrap(),
            StepSet::family(Family::D, 1, 1).unwrap(),
            StepSet::family(Family::E, 0, 0).unwrap(),
        ] {
            let solution = solve_system(&set, 10).unwrap();
            for (depth, series) in solution.iter().enumerate() {
                for n in 0..=10usize {
                    assert_eq!(
                        series.coefficient(n),
                        BigRational::from_integer(
                            count_primary_direct(&set, depth as i64, n as i64).unwrap()
                        ),
                        "{set} P{depth} n={n}"
                    );
                }
            }
        }
        for relation in [
            Relation::CubicA12,
            Relation::QuadB1P0,
            Relation::QuadB1P1,
            Relation::QuadD11P0,
            Relation::QuadD11P1,
            Relation::FreeB1Gfs,
        ] {
            assert!(verify_algebraic(relation, 12).unwrap(), "{relation:?}");
        }
    });
}

#[test]
fn criterion_10_full_reproducibility() {
    criterion(10, "no unverified claims: closed forms covered exactly", || {
        // every quantity is exact; the one trigonometric closed form is
        // certified through its defining cubic rather than numerically
        assert!(verify_algebraic(Relation::CubicA12, 12).unwrap());
        // the alternative closed-form routes agree with the recurrences
        let b = StepSet::family(Family::B, 1, 1).unwrap();
        for n in 1..=6i64 {
            assert_eq!(
                count_primary0_k1(&b, n).unwrap(),
                count_primary_direct(&b, 0, n).unwrap()
            );
        }
        let a = StepSet::family(Family::A, 1, 2).unwrap();
        for n in 1..=6i64 {
            assert_eq!(
                count_primary_k(&a, n).unwrap(),
                count_primary_direct(&a, 2, n).unwrap()
            );
        }
    });
}
