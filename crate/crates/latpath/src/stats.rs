//! Step statistics over depth-one primary paths: the removal/rotation
//! bijections behind them, exact step censuses, and expected counts.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::compositions::binomial;
use crate::count::count_free_rec;
use crate::paths::Path;
use crate::riordan::delannoy;
use crate::steps::{Step, StepSet};
use crate::{Error, Result};

/// Total occurrences of each step over all depth-one primary paths of a
/// given width, together with the grand total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepCensus {
    pub counts: BTreeMap<Step, BigInt>,
    pub total: BigInt,
}

/// Tally every step occurrence across the full enumeration of
/// depth-one primary paths with `n` non-vertical steps.
pub fn census(
    set: &StepSet,
    n: i64,
    budget: &crate::brute::EnumerationBudget,
) -> Result<StepCensus> {
    let mut counts: BTreeMap<Step, BigInt> = BTreeMap::new();
    let mut total = BigInt::zero();
    for p in crate::brute::enumerate_primary(set, 1, n, budget)? {
        for s in p.steps() {
            *counts.entry(*s).or_insert_with(BigInt::zero) += 1;
            total += 1;
        }
    }
    Ok(StepCensus { counts, total })
}

/// Remove the `occurrence`-th appearance (1-based) of `step` from the
/// path and swap the two sides: the suffix after the removed step comes
/// first, then the prefix before it.
pub fn phi(path: &Path, step: Step, occurrence: usize) -> Result<Path> {
    if occurrence == 0 {
        return Err(Error::Parameter("occurrences are counted from 1".into()));
    }
    let mut seen = 0usize;
    for (i, s) in path.steps().iter().enumerate() {
        if *s == step {
            seen += 1;
            if seen == occurrence {
                let alpha = &path.steps()[..i];
                let beta = &path.steps()[i + 1..];
                let mut out = beta.to_vec();
                out.extend_from_slice(alpha);
                return Ok(Path::new(out));
            }
        }
    }
    Err(Error::Parameter(format!(
        "the path has only {seen} occurrences of {step}, not {occurrence}"
    )))
}

/// Inverse of [`phi`]: split the free path at its leftmost lowest
/// vertex, reinsert `step` between the two sides in swapped order, and
/// report which occurrence of `step` was removed.
pub fn phi_inverse(free: &Path, step: Step) -> Result<(Path, usize)> {
    let heights = free.heights();
    let min = *heights.iter().min().expect("heights are nonempty");
    let split = heights.iter().position(|&h| h == min).unwrap();
    let beta = &free.steps()[..split];
    let alpha = &free.steps()[split..];
    let mut steps = alpha.to_vec();
    steps.push(step);
    steps.extend_from_slice(beta);
    let occurrence = alpha.iter().filter(|s| **s == step).count() + 1;
    Ok((Path::new(steps), occurrence))
}

/// Rotation starting at the `k`-th step (1-based).
pub fn psi(path: &Path, k: usize) -> Result<Path> {
    if k == 0 || k > path.len() {
        return Err(Error::Parameter(format!(
            "rotation index {k} is outside 1..={}",
            path.len()
        )));
    }
    let mut steps = path.steps()[k - 1..].to_vec();
    steps.extend_from_slice(&path.steps()[..k - 1]);
    Ok(Path::new(steps))
}

/// The unique rotation start (0-based) of an integer word with sum -1
/// whose proper partial sums are all nonnegative.
pub fn raney_shift(word: &[i64]) -> Result<usize> {
    let total: i64 = word.iter().sum();
    if total != -1 {
        return Err(Error::Precondition(format!("the word sums to {total}, not -1")));
    }
    let r = word.len();
    let mut found = Vec::new();
    for start in 0..r {
        let mut acc = 0i64;
        let mut ok = true;
        for j in 0..r - 1 {
            acc += word[(start + j) % r];
            if acc < 0 {
                ok = false;
                break;
            }
        }
        if ok {
            found.push(start);
        }
    }
    match found.as_slice() {
        [one] => Ok(*one),
        other => Err(Error::Internal(format!(
            "expected exactly one admissible rotation, found {}",
            other.len()
        ))),
    }
}

/// Factor a free path of depth one into a depth-one primary path and a
/// rotation index: `psi(mu, k)` recovers the input.
pub fn zeta(free: &Path) -> Result<(Path, usize)> {
    if free.is_empty() {
        return Err(Error::Precondition("the empty path has no rotations".into()));
    }
    if free.endpoint().1 != -1 {
        return Err(Error::Precondition("rotation factoring needs a path of depth one".into()));
    }
    let word: Vec<i64> = free
        .steps()
        .iter()
        .map(|s| match s {
            Step::Vertical => -1,
            Step::NonVertical(k) => *k,
        })
        .collect();
    let r0 = raney_shift(&word)?;
    let mu = psi(free, r0 + 1)?;
    let r = free.len();
    let k = (r - r0) % r + 1;
    Ok((mu, k))
}

/// Expected number of vertical steps of a uniform depth-one primary
/// path with `n` non-vertical steps: `n F(0,n) / (F(1,n) - F(0,n))`.
pub fn expected_vertical(set: &StepSet, n: i64) -> Result<BigRational> {
    if !set.has_vertical() || n < 1 {
        return Err(Error::Precondition(
            "the vertical-step expectation needs the vertical step and n >= 1".into(),
        ));
    }
    let f0 = count_free_rec(set, 0, n);
    let f1 = count_free_rec(set, 1, n);
    let den = &f1 - &f0;
    if den.is_zero() {
        return Err(Error::Internal("no depth-one primary paths at this width".into()));
    }
    Ok(BigRational::new(BigInt::from(n) * f0, den))
}

/// Expected total length of a uniform depth-one primary path with `n`
/// non-vertical steps: `n F(1,n) / (F(1,n) - F(0,n))`.
pub fn expected_steps(set: &StepSet, n: i64) -> Result<BigRational> {
    if !set.has_vertical() || n < 1 {
        return Err(Error::Precondition(
            "the length expectation needs the vertical step and n >= 1".into(),
        ));
    }
    let f0 = count_free_rec(set, 0, n);
    let f1 = count_free_rec(set, 1, n);
    let den = &f1 - &f0;
    if den.is_zero() {
        return Err(Error::Internal("no depth-one primary paths at this width".into()));
    }
    Ok(BigRational::new(BigInt::from(n) * f1, den))
}

/// Expected number of diagonal steps of a uniform subdiagonal Delannoy
/// path, as the exact ratio `n D(n,n-1) / (D(n,n+1) - D(n,n))`; equals
/// the expected flat-step count of a three-step primary path.
pub fn delannoy_diag_expectation(n: i64) -> Result<BigRational> {
    if n < 1 {
        return Err(Error::Precondition("the diagonal expectation needs n >= 1".into()));
    }
    let den = delannoy(n, n + 1) - delannoy(n, n);
    if den.is_zero() {
        return Err(Error::Internal("vanishing path count".into()));
    }
    Ok(BigRational::new(BigInt::from(n) * delannoy(n, n - 1), den))
}

/// The same expectation written purely with binomial sums.
pub fn delannoy_diag_expectation_binomial(n: i64) -> Result<BigRational> {
    if n < 1 {
        return Err(Error::Precondition("the diagonal expectation needs n >= 1".into()));
    }
    let mut num = BigInt::zero();
    for j in 0..n {
        num += binomial(n, j) * binomial(2 * n - j - 1, n);
    }
    let mut den = BigInt::zero();
    for j in 0..=n {
        den += binomial(n, j) * binomial(2 * n - j, n - 1);
    }
    if den.is_zero() {
        return Err(Error::Internal("vanishing path count".into()));
    }
    Ok(BigRational::new(BigInt::from(n) * num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brute::{enumerate_free, enumerate_primary, EnumerationBudget};
    use crate::paths::Classification;
    use crate::steps::Family;
    use num_traits::One;
    use proptest::prelude::*;

    fn b() -> EnumerationBudget {
        EnumerationBudget::default()
    }

    #[test]
    fn census_matches_free_counts() {
        for set in [
            StepSet::family(Family::B, 1, 1).unwrap(),
            StepSet::family(Family::D, 1, 1).unwrap(),
            StepSet::family(Family::E, 0, 0).unwrap(),
        ] {
            for n in 1..=5i64 {
                let c = census(&set, n, &b()).unwrap();
                assert_eq!(c.total, count_free_rec(&set, 1, n), "{set} n={n} total");
                if set.has_vertical() {
                    assert_eq!(
                        c.counts.get(&Step::Vertical).cloned().unwrap_or_default(),
                        count_free_rec(&set, 0, n),
                        "{set} n={n} verticals"
                    );
                }
                for s in set.non_vertical_steps(i64::MIN + 1) {
                    let k = s.rise().unwrap();
                    assert_eq!(
                        c.counts.get(&s).cloned().unwrap_or_default(),
                        count_free_rec(&set, 1 + k, n - 1),
                        "{set} n={n} step {s}"
                    );
                }
            }
        }
        let bset = StepSet::family(Family::B, 1, 1).unwrap();
        let c = census(&bset, 3, &b()).unwrap();
        assert_eq!(c.counts[&Step::Vertical], BigInt::from(81));
    }

    #[test]
    fn removal_bijection_round_trips() {
        let set = StepSet::family(Family::D, 1, 1).unwrap();
        for n in 1..=4i64 {
            for pi in enumerate_primary(&set, 1, n, &b()).unwrap() {
                for step in [Step::Vertical, Step::up(1), Step::down(1)] {
                    let total = pi.steps().iter().filter(|s| **s == step).count();
                    for occ in 1..=total {
                        let gamma = phi(&pi, step, occ).unwrap();
                        // image lands in the free class fixed by the step
                        let (m, dn) = match step {
                            Step::Vertical => (0, n),
                            Step::NonVertical(k) => (1 + k, n - 1),
                        };
                        assert_eq!(gamma.endpoint(), (dn, -m));
                        assert_eq!(phi_inverse(&gamma, step).unwrap(), (pi.clone(), occ));
                    }
                    assert!(phi(&pi, step, total + 1).is_err());
                }
            }
        }
    }

    #[test]
    fn removal_bijection_is_onto() {
        // every free path arises exactly once from (primary, occurrence)
        let set = StepSet::family(Family::E, 0, 0).unwrap();
        for n in 1..=4i64 {
            for gamma in enumerate_free(&set, 0, n, &b()).unwrap() {
                let (pi, occ) = phi_inverse(&gamma, Step::Vertical).unwrap();
                assert_eq!(pi.classify(&set), Classification::Primary(1));
                assert_eq!(phi(&pi, Step::Vertical, occ).unwrap(), gamma);
            }
        }
    }

    #[test]
    fn worked_example_round_trips() {
        let pi: Path = "U6 D2 U1 V D1 V U2 D1 V3 U1 V2".parse().unwrap();
        let gamma = phi(&pi, Step::Vertical, 2).unwrap();
        let expect: Path = "U2 D1 V3 U1 V2 U6 D2 U1 V D1".parse().unwrap();
        assert_eq!(gamma, expect);
        assert_eq!(phi_inverse(&gamma, Step::Vertical).unwrap(), (pi, 2));
    }

    #[test]
    fn raney_shift_examples() {
        assert_eq!(raney_shift(&[-1]).unwrap(), 0);
        assert_eq!(raney_shift(&[-1, 1, -1]).unwrap(), 1);
        assert_eq!(raney_shift(&[2, -3]).unwrap(), 0);
        assert!(raney_shift(&[1, -1]).is_err()); // wrong sum
    }

    proptest! {
        #[test]
        fn raney_shift_is_unique(mut word in proptest::collection::vec(-3i64..=3, 0..12)) {
            let s: i64 = word.iter().sum();
            word.push(-1 - s); // force the sum to -1
            let r0 = raney_shift(&word).unwrap();
            // the chosen rotation really is admissible
            let r = word.len();
            let mut acc = 0i64;
            for j in 0..r - 1 {
                acc += word[(r0 + j) % r];
                prop_assert!(acc >= 0);
            }
        }
    }

    #[test]
    fn rotation_factoring_inverts_rotation() {
        let set = StepSet::family(Family::E, 0, 0).unwrap();
        for n in 1..=5i64 {
            for mu in enumerate_primary(&set, 1, n, &b()).unwrap() {
                for k in 1..=mu.len() {
                    let rotated = psi(&mu, k).unwrap();
                    assert_eq!(zeta(&rotated).unwrap(), (mu.clone(), k));
                }
            }
        }
    }

    #[test]
    fn rotation_pairing_counts_free_paths() {
        // summing path lengths over the primary class counts the free class
        let set = StepSet::family(Family::D, 1, 1).unwrap();
        let total: usize = enumerate_primary(&set, 1, 4, &b())
            .unwrap()
            .iter()
            .map(Path::len)
            .sum();
        assert_eq!(total, 296);
        assert_eq!(BigInt::from(total), count_free_rec(&set, 1, 4));
        // and zeta hits each primary path once per admissible index
        let frees = enumerate_free(&set, 1, 4, &b()).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for f in &frees {
            let (mu, k) = zeta(f).unwrap();
            assert_eq!(mu.classify(&set), Classification::Primary(1));
            assert!(seen.insert((mu, k)));
        }
        assert_eq!(seen.len(), frees.len());
    }

    #[test]
    fn expectations_match_enumeration() {
        for set in [
            StepSet::family(Family::B, 1, 1).unwrap(),
            StepSet::family(Family::D, 1, 1).unwrap(),
            StepSet::family(Family::E, 0, 0).unwrap(),
        ] {
            for n in 1..=5i64 {
                let paths = enumerate_primary(&set, 1, n, &b()).unwrap();
                let count = BigInt::from(paths.len());
                let verticals: usize = paths
                    .iter()
                    .map(|p| p.steps().iter().filter(|s| s.is_vertical()).count())
                    .sum();
                let steps: usize = paths.iter().map(Path::len).sum();
                assert_eq!(
                    expected_vertical(&set, n).unwrap(),
                    BigRational::new(BigInt::from(verticals), count.clone()),
                    "{set} n={n}"
                );
                assert_eq!(
                    expected_steps(&set, n).unwrap(),
                    BigRational::new(BigInt::from(steps), count),
                    "{set} n={n}"
                );
            }
        }
    }

    #[test]
    fn all_downs_expectations_close_form() {
        // with every down step allowed the averages are linear in n
        for big_n in 0..=2u64 {
            let set = StepSet::family(Family::C, big_n, 0).unwrap();
            for n in 1..=5i64 {
                let half = BigRational::new(BigInt::one(), BigInt::from(2));
                let expect_v =
                    BigRational::from_integer(BigInt::from(big_n as i64 * n + 1)) * &half;
                let expect_s =
                    BigRational::from_integer(BigInt::from((big_n as i64 + 2) * n + 1)) * &half;
                assert_eq!(expected_vertical(&set, n).unwrap(), expect_v, "N={big_n} n={n}");
                assert_eq!(expected_steps(&set, n).unwrap(), expect_s, "N={big_n} n={n}");
            }
        }
    }

    #[test]
    fn diagonal_expectation() {
        assert_eq!(
            delannoy_diag_expectation(1).unwrap(),
            BigRational::new(BigInt::one(), BigInt::from(2))
        );
        for n in 1..=8i64 {
            assert_eq!(
                delannoy_diag_expectation(n).unwrap(),
                delannoy_diag_expectation_binomial(n).unwrap()
            );
        }
        // the flat step of the three-step alphabet realises the diagonal
        let e = StepSet::family(Family::E, 0, 0).unwrap();
        for n in 1..=5i64 {
            let paths = enumerate_primary(&e, 1, n, &b()).unwrap();
            let flats: usize = paths
                .iter()
                .map(|p| p.steps().iter().filter(|s| **s == Step::up(0)).count())
                .sum();
            assert_eq!(
                delannoy_diag_expectation(n).unwrap(),
                BigRational::new(BigInt::from(flats), BigInt::from(paths.len())),
                "n={n}"
            );
        }
    }
}
