//! Compositions with zero parts allowed: counting, lexicographic
//! rank/unrank, and bounded-part generation. One generator serves both the
//! H-set machinery and the functional-equation summation ranges.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Combinatorial binomial coefficient: zero for `k < 0` or `n < 0 < k`,
/// one for `k == 0`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if k == 0 {
        return BigInt::one();
    }
    if n < k {
        return BigInt::zero();
    }
    let mut out = BigInt::one();
    let k = k.min(n - k);
    for i in 1..=k {
        out = out * BigInt::from(n - k + i) / BigInt::from(i);
    }
    out
}

/// Number of compositions of `total` into exactly `parts` nonnegative parts.
pub fn count_compositions(total: u64, parts: usize) -> BigInt {
    if parts == 0 {
        return if total == 0 { BigInt::one() } else { BigInt::zero() };
    }
    binomial(total as i64 + parts as i64 - 1, parts as i64 - 1)
}

/// The `idx`-th (0-based) composition of `total` into `parts` nonnegative
/// parts, in lexicographic order on `(c_0, c_1, ...)`.
pub fn unrank_composition(total: u64, parts: usize, idx: &BigInt) -> Option<Vec<u64>> {
    if idx < &BigInt::zero() || idx >= &count_compositions(total, parts) {
        return None;
    }
    let mut out = Vec::with_capacity(parts);
    let mut rest = total;
    let mut idx = idx.clone();
    for i in 0..parts {
        if i + 1 == parts {
            out.push(rest);
            break;
        }
        let mut c = 0u64;
        loop {
            let below = count_compositions(rest - c, parts - i - 1);
            if idx < below {
                break;
            }
            idx -= below;
            c += 1;
        }
        out.push(c);
        rest -= c;
    }
    Some(out)
}

/// Lexicographic rank of a composition; inverse of [`unrank_composition`].
pub fn rank_composition(comp: &[u64]) -> BigInt {
    let mut rank = BigInt::zero();
    let mut rest: u64 = comp.iter().sum();
    for (i, &c) in comp.iter().enumerate() {
        if i + 1 == comp.len() {
            break;
        }
        for smaller in 0..c {
            rank += count_compositions(rest - smaller, comp.len() - i - 1);
        }
        rest -= c;
    }
    rank
}

/// All solutions of `m_1 + ... + m_d = total` with
/// `1 <= m_1, ..., m_{d-1} <= max_part` and `last_min <= m_d <= max_part`.
pub fn bounded_compositions(
    total: i64,
    parts: usize,
    max_part: u64,
    last_min: u64,
) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    if parts == 0 {
        return out; // the summation ranges always have d >= 1
    }
    let mut current = Vec::with_capacity(parts);
    fn rec(
        total: i64,
        parts: usize,
        max_part: u64,
        last_min: u64,
        current: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        if parts == 1 {
            if total >= last_min as i64 && total <= max_part as i64 {
                current.push(total as u64);
                out.push(current.clone());
                current.pop();
            }
            return;
        }
        for part in 1..=max_part {
            let rest = total - part as i64;
            if rest < 1 {
                break;
            }
            current.push(part);
            rec(rest, parts - 1, max_part, last_min, current, out);
            current.pop();
        }
    }
    rec(total, parts, max_part, last_min, &mut current, &mut out);
    out
}
