//! The weighted-path bijection: H-sets with rank/unrank, the step weight
//! function, and the mutually inverse maps between weighted vertical-free
//! paths and primary paths with vertical steps.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::compositions::{count_compositions, rank_composition, unrank_composition};
use crate::paths::{Classification, Path};
use crate::steps::{Step, StepSet};
use crate::{Error, Result};

/// A vertical-free path together with one weight per step, each between 1
/// and the weight of the step in its decomposition context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedPath {
    pub path: Path,
    pub weights: Vec<BigInt>,
}

fn parts_for(m: i64, d: usize) -> usize {
    // compositions into d+1 parts for m <= 1, d parts for m >= 2
    if m <= 1 {
        d + 1
    } else {
        d
    }
}

/// `|H(m,d,k)| = sum over up steps U_h with h >= k of the number of
/// compositions of h-k into d+1 parts (d parts for m >= 2).`
pub fn h_size(set: &StepSet, m: i64, d: usize, k: i64) -> Result<BigInt> {
    if m < 0 || k < 0 {
        return Err(Error::Precondition("h_size needs m, k >= 0".into()));
    }
    let parts = parts_for(m, d);
    let mut total = BigInt::zero();
    for h in set.rises_geq(k) {
        total += count_compositions((h - k) as u64, parts);
    }
    Ok(total)
}

/// The `idx`-th pair (1-based) of `H(m,d,k)` under the canonical order:
/// ascending `h`, then compositions in lexicographic order.
pub fn h_unrank(set: &StepSet, m: i64, d: usize, k: i64, idx: &BigInt) -> Result<(i64, Vec<u64>)> {
    if m < 0 || k < 0 {
        return Err(Error::Precondition("h_unrank needs m, k >= 0".into()));
    }
    if idx < &BigInt::one() {
        return Err(Error::OutOfRange(format!("h_unrank index {idx}")));
    }
    let parts = parts_for(m, d);
    let mut rest = idx - BigInt::one();
    for h in set.rises_geq(k) {
        let block = count_compositions((h - k) as u64, parts);
        if rest < block {
            let comp = unrank_composition((h - k) as u64, parts, &rest)
                .ok_or_else(|| Error::Internal("composition unrank failed".into()))?;
            return Ok((h, comp));
        }
        rest -= block;
    }
    Err(Error::OutOfRange(format!(
        "h_unrank index {idx} exceeds |H({m},{d},{k})|"
    )))
}

/// The 1-based rank of `(h, lambda)` in `H(m,d,k)`; inverse of
/// [`h_unrank`].
pub fn h_rank(set: &StepSet, m: i64, d: usize, k: i64, h: i64, lambda: &[u64]) -> Result<BigInt> {
    if m < 0 || k < 0 {
        return Err(Error::Precondition("h_rank needs m, k >= 0".into()));
    }
    let parts = parts_for(m, d);
    if lambda.len() != parts || lambda.iter().sum::<u64>() as i64 != h - k {
        return Err(Error::Precondition(format!(
            "({h}, {lambda:?}) is not a member of H({m},{d},{k})"
        )));
    }
    let mut rank = BigInt::one();
    for lower in set.rises_geq(k) {
        if lower >= h {
            break;
        }
        rank += count_compositions((lower - k) as u64, parts);
    }
    if !set.contains(&Step::NonVertical(h)) {
        return Err(Error::Precondition(format!("U_{h} is not in the step set")));
    }
    Ok(rank + rank_composition(lambda))
}

/// A step of a vertical-free path together with the context that fixes
/// its weight: a down step stands alone, an up step carries the shape of
/// the primary subpath it opens.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepContext {
    Down(u64),
    Up { m: i64, d: usize, k: i64 },
}

/// The weight of a step in context: `w(D_1) = |V_{>=-1}|`, `w(D_p) = 1`
/// for `p >= 2`, `w(U_k^{m,d}) = |H(m,d,k)|`.
pub fn step_weight(set: &StepSet, ctx: &StepContext) -> Result<BigInt> {
    match ctx {
        StepContext::Down(1) => Ok(BigInt::from(set.rises_geq(-1).len())),
        StepContext::Down(p) => {
            if *p < 2 || !set.contains(&Step::down(*p)) {
                return Err(Error::Parameter(format!("D{p} is not a companion step")));
            }
            Ok(BigInt::one())
        }
        StepContext::Up { m, d, k } => {
            if *k < 0 || *k > set.max_rise() as i64 {
                return Err(Error::Parameter(format!("U{k} is not a companion step")));
            }
            h_size(set, *m, *d, *k)
        }
    }
}

/// Per-step weight bounds of a primary companion-set path, in path order.
pub fn weight_bounds(set: &StepSet, mu: &Path, m: i64) -> Result<Vec<BigInt>> {
    let companion = set.companion_l()?;
    let mut out = Vec::with_capacity(mu.len());
    bounds_rec(set, &companion, mu, m, &mut out)?;
    Ok(out)
}

fn bounds_rec(
    set: &StepSet,
    companion: &StepSet,
    mu: &Path,
    m: i64,
    out: &mut Vec<BigInt>,
) -> Result<()> {
    let n = mu.width();
    if n != mu.len() {
        return Err(Error::Precondition(format!("{mu} contains vertical steps")));
    }
    if n == 1 && m >= 1 {
        // terminal D_1 (m = 1) or D_m (m >= 2)
        let bound = if m == 1 {
            BigInt::from(set.rises_geq(-1).len())
        } else {
            BigInt::one()
        };
        out.push(bound);
        return Ok(());
    }
    let dec = mu.decompose(companion)?;
    out.push(h_size(set, dec.m, dec.d, dec.k)?);
    for (sub_m, sub) in &dec.subpaths {
        bounds_rec(set, companion, sub, *sub_m, out)?;
    }
    if let Some(tail) = &dec.tail {
        if !tail.is_empty() {
            bounds_rec(set, companion, tail, 0, out)?;
        }
    }
    Ok(())
}

/// `sum of w(mu)` over all primary companion-set paths to `(n,-m)`:
/// equals `|P(m,n)|` for the vertical-step set.
pub fn weighted_count(set: &StepSet, m: i64, n: i64) -> Result<BigInt> {
    if m < 0 || n < 1 {
        return Err(Error::Precondition("weighted_count needs m >= 0, n >= 1".into()));
    }
    let companion = set.companion_l()?;
    let budget = crate::brute::EnumerationBudget::default();
    let mut total = BigInt::zero();
    for mu in crate::brute::enumerate_primary(&companion, m, n, &budget)? {
        let mut product = BigInt::one();
        for b in weight_bounds(set, &mu, m)? {
            product *= b;
        }
        total += product;
    }
    Ok(total)
}

/// Expand a weighted companion-set path into the corresponding primary
/// path with vertical steps.
pub fn map_f(set: &StepSet, wp: &WeightedPath, m: i64) -> Result<Path> {
    let companion = set.companion_l()?;
    if wp.weights.len() != wp.path.len() {
        return Err(Error::Precondition("one weight per step is required".into()));
    }
    match wp.path.classify(&companion) {
        Classification::Primary(depth) if depth == m => {}
        other => {
            return Err(Error::Precondition(format!(
                "{} is not {m}-primary over the companion set ({other:?})",
                wp.path
            )))
        }
    }
    let mut pos = 0usize;
    let out = f_rec(set, &companion, &wp.path, m, &wp.weights, &mut pos)?;
    debug_assert_eq!(pos, wp.weights.len());
    Ok(out)
}

fn f_rec(
    set: &StepSet,
    companion: &StepSet,
    mu: &Path,
    m: i64,
    weights: &[BigInt],
    pos: &mut usize,
) -> Result<Path> {
    let n = mu.width();
    let v1 = weights
        .get(*pos)
        .ok_or_else(|| Error::Precondition("weight vector too short".into()))?
        .clone();
    *pos += 1;
    if v1 < BigInt::one() {
        return Err(Error::Precondition(format!("weight {v1} out of range")));
    }
    if n == 1 && m == 1 {
        // D_1 with weight v1 expands to the v1-th step of V_{>=-1}
        // followed by the verticals returning to depth 1
        let choices = set.rises_geq(-1);
        let idx: usize = usize::try_from(&v1 - BigInt::one())
            .map_err(|_| Error::OutOfRange(format!("weight {v1}")))?;
        let h = *choices
            .get(idx)
            .ok_or_else(|| Error::OutOfRange(format!("weight {v1} exceeds |V>=-1|")))?;
        let mut steps = vec![Step::NonVertical(h)];
        steps.extend(std::iter::repeat(Step::Vertical).take((h + 1) as usize));
        return Ok(Path::new(steps));
    }
    if n == 1 && m >= 2 {
        if !v1.is_one() {
            return Err(Error::OutOfRange(format!("weight {v1} for a deep down step")));
        }
        return Ok(mu.clone());
    }
    // general case, including the 0-primary tail structure
    let dec = mu.decompose(companion)?;
    let (h, lambda) = h_unrank(set, dec.m, dec.d, dec.k, &v1)?;
    let mut lambda = lambda;
    if dec.m >= 2 {
        lambda.push(0);
    }
    let mut steps = vec![Step::NonVertical(h)];
    steps.extend(std::iter::repeat(Step::Vertical).take(lambda[0] as usize));
    for (i, (sub_m, sub)) in dec.subpaths.iter().enumerate() {
        let image = f_rec(set, companion, sub, *sub_m, weights, pos)?;
        steps.extend_from_slice(image.steps());
        steps.extend(std::iter::repeat(Step::Vertical).take(lambda[i + 1] as usize));
    }
    if let Some(tail) = &dec.tail {
        if !tail.is_empty() {
            let image = f_rec(set, companion, tail, 0, weights, pos)?;
            steps.extend_from_slice(image.steps());
        }
    }
    Ok(Path::new(steps))
}

/// Contract a primary path with vertical steps back into a weighted
/// companion-set path; inverse of [`map_f`].
pub fn map_g(set: &StepSet, pi: &Path) -> Result<WeightedPath> {
    let m = match pi.classify(set) {
        Classification::Primary(m) if !pi.is_empty() => m,
        other => {
            return Err(Error::NotPrimary(format!("{pi}: {other:?}")))
        }
    };
    let mut steps = Vec::new();
    let mut weights = Vec::new();
    g_rec(set, pi, m, &mut steps, &mut weights)?;
    Ok(WeightedPath {
        path: Path::new(steps),
        weights,
    })
}

fn g_rec(
    set: &StepSet,
    pi: &Path,
    m: i64,
    steps: &mut Vec<Step>,
    weights: &mut Vec<BigInt>,
) -> Result<()> {
    let n = pi.width();
    if n == 1 && m == 1 {
        // S_h V^{h+1} contracts to D_1 weighted by the position of S_h
        let h = pi.steps()[0]
            .rise()
            .ok_or_else(|| Error::NotPrimary(format!("{pi} starts vertically")))?;
        let idx = set
            .rises_geq(-1)
            .iter()
            .position(|&r| r == h)
            .ok_or_else(|| Error::Internal(format!("S_{h} outside V>=-1")))?;
        steps.push(Step::down(1));
        weights.push(BigInt::from(idx + 1));
        return Ok(());
    }
    if n == 1 && m >= 2 {
        steps.push(Step::down(m as u64));
        weights.push(BigInt::one());
        return Ok(());
    }
    let dec = pi.decompose(set)?;
    let h = dec.first.rise().expect("primary paths start non-vertically");
    let mut lambda = dec.lambdas.clone();
    if dec.m >= 2 {
        if lambda.pop() != Some(0) {
            return Err(Error::Internal(format!("trailing vertical run in {pi}")));
        }
    }
    let v1 = h_rank(set, dec.m, dec.d, dec.k, h, &lambda)?;
    steps.push(Step::NonVertical(dec.k));
    weights.push(v1);
    for (sub_m, sub) in &dec.subpaths {
        g_rec(set, sub, *sub_m, steps, weights)?;
    }
    if let Some(tail) = &dec.tail {
        if !tail.is_empty() {
            g_rec(set, tail, 0, steps, weights)?;
        }
    }
    Ok(())
}
