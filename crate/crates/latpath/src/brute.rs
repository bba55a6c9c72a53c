//! Exhaustive enumeration of free and primary paths for small sizes.
//! Independent of the counting formulas; serves as ground truth.

use crate::paths::{Classification, Path};
use crate::steps::{Step, StepSet};
use crate::{Error, Result};

/// Caps for exhaustive enumeration.
#[derive(Debug, Clone, Copy)]
pub struct EnumerationBudget {
    pub max_n: i64,
    pub max_paths: usize,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_n: 10,
            max_paths: 10_000_000,
        }
    }
}

/// Effective lower bound on down rises when the step set has the infinite
/// down tail: a path ending at `(n,-m)` can never use a drop beyond
/// `m + (n-1)N + V_max` with `V_max = Nn + m`.
pub fn effective_min_rise(set: &StepSet, m: i64, n: i64) -> i64 {
    let big_n = set.max_rise() as i64;
    let v_max = big_n * n + m;
    -(m + (n - 1).max(0) * big_n) - v_max.max(0)
}

/// All `S`-paths with exactly `n` non-vertical steps ending at `(n,-m)`,
/// in depth-first order over the step alphabet (V first, then ascending
/// rise).
pub fn enumerate_free(
    set: &StepSet,
    m: i64,
    n: i64,
    budget: &EnumerationBudget,
) -> Result<Vec<Path>> {
    if n < 0 {
        return Ok(Vec::new());
    }
    if n > budget.max_n {
        return Err(Error::Precondition(format!(
            "n = {n} exceeds the enumeration budget max_n = {}",
            budget.max_n
        )));
    }
    let big_n = set.max_rise() as i64;
    // number of vertical steps is sum of rises + m, at most Nn + m
    let v_max = if set.has_vertical() { big_n * n + m } else { 0 };
    if v_max < 0 && m != 0 && n == 0 {
        return Ok(Vec::new());
    }
    let min_rise = if set.all_downs() {
        effective_min_rise(set, m, n)
    } else {
        i64::MIN
    };
    let alphabet: Vec<Step> = {
        let mut a = Vec::new();
        if set.has_vertical() {
            a.push(Step::Vertical);
        }
        a.extend(set.non_vertical_steps(min_rise.max(-(m.max(0) + big_n * n.max(0) + v_max.max(0) + 1))));
        a
    };
    let min_step_rise = alphabet
        .iter()
        .filter_map(|s| s.rise())
        .min()
        .unwrap_or(0);

    let mut out = Vec::new();
    let mut current: Vec<Step> = Vec::new();
    dfs(
        set,
        &alphabet,
        m,
        n,
        v_max,
        big_n,
        min_step_rise,
        0,
        0,
        0,
        &mut current,
        &mut out,
        budget,
    )?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    set: &StepSet,
    alphabet: &[Step],
    m: i64,
    n: i64,
    v_max: i64,
    big_n: i64,
    min_step_rise: i64,
    nv_used: i64,
    v_used: i64,
    y: i64,
    current: &mut Vec<Step>,
    out: &mut Vec<Path>,
    budget: &EnumerationBudget,
) -> Result<()> {
    if nv_used == n && y == -m {
        if out.len() >= budget.max_paths {
            return Err(Error::BudgetExceeded(budget.max_paths));
        }
        out.push(Path::new(current.clone()));
        return Ok(());
    }
    let n_rem = n - nv_used;
    for step in alphabet {
        match step {
            Step::Vertical => {
                if v_used >= v_max {
                    continue;
                }
                // must still be able to climb back up to -m
                if y - 1 + big_n * n_rem < -m {
                    continue;
                }
                current.push(*step);
                dfs(set, alphabet, m, n, v_max, big_n, min_step_rise, nv_used, v_used + 1, y - 1, current, out, budget)?;
                current.pop();
            }
            Step::NonVertical(k) => {
                if n_rem == 0 {
                    continue;
                }
                let y2 = y + k;
                if y2 + big_n * (n_rem - 1) < -m {
                    continue;
                }
                if !set.has_vertical() {
                    // without verticals the remaining descent is bounded
                    if y2 + min_step_rise * (n_rem - 1) > -m {
                        continue;
                    }
                }
                current.push(*step);
                dfs(set, alphabet, m, n, v_max, big_n, min_step_rise, nv_used + 1, v_used, y2, current, out, budget)?;
                current.pop();
            }
        }
    }
    Ok(())
}

/// The subset of [`enumerate_free`] output that is `m`-primary.
pub fn enumerate_primary(
    set: &StepSet,
    m: i64,
    n: i64,
    budget: &EnumerationBudget,
) -> Result<Vec<Path>> {
    if m < 0 {
        return Err(Error::Precondition("primary paths need m >= 0".into()));
    }
    Ok(enumerate_free(set, m, n, budget)?
        .into_iter()
        .filter(|p| p.classify(set) == Classification::Primary(m))
        .collect())
}
