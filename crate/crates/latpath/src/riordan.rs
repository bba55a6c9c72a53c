//! The Riordan array attached to a vertical-step set, the sequence
//! transform it induces, and the Delannoy / Schroeder specialisations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::compositions::binomial;
use crate::count::{count_primary1, count_primary_direct};
use crate::series::TruncatedSeries;
use crate::steps::{Family, StepSet};
use crate::{Error, Result};

/// The pair `(g, f)` of a Riordan array together with its expanded
/// entry matrix `d[i][j] = [y^i] g f^j`.
pub struct RiordanPair {
    g: TruncatedSeries,
    f: TruncatedSeries,
    matrix: Vec<Vec<BigInt>>,
}

impl RiordanPair {
    pub fn g(&self) -> &TruncatedSeries {
        &self.g
    }

    pub fn f(&self) -> &TruncatedSeries {
        &self.f
    }

    pub fn rows(&self) -> usize {
        self.matrix.len() - 1
    }

    /// Entry `d[i][j]`; zero above the diagonal since `f` has no
    /// constant term.
    pub fn entry(&self, i: usize, j: usize) -> BigInt {
        self.matrix
            .get(i)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.matrix[i]
    }
}

fn poly(order: usize, coeffs: &[i64]) -> TruncatedSeries {
    let ints: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
    TruncatedSeries::from_integers(order, &ints)
}

/// The Riordan pair of a step set containing the vertical step:
/// `g = 1/(1-y)` and `f = y/(1-y) * sum_k y^(N-k)` over the non-vertical
/// steps. Entries satisfy `d[i][j] = |F(i - (N+1)j, j)|`.
pub fn riordan_for(set: &StepSet, rows: usize) -> Result<RiordanPair> {
    if !set.has_vertical() {
        return Err(Error::Precondition("the Riordan array needs the vertical step".into()));
    }
    let order = rows;
    let big_n = set.max_rise() as i64;
    let g = poly(order, &[1, -1]).invert()?;
    let mut steps = TruncatedSeries::zero(order);
    // drops beyond N + rows cannot reach row `rows`, so the infinite
    // tail may be truncated
    for k in set.rises_geq(big_n - order as i64) {
        let e = (big_n - k) as usize;
        if e <= order {
            steps = steps.add(&TruncatedSeries::monomial(order, e, BigRational::one()));
        }
    }
    let f = TruncatedSeries::monomial(order, 1, BigRational::one())
        .mul(&g)
        .mul(&steps);
    let mut matrix = Vec::with_capacity(rows + 1);
    let mut col = g.clone(); // g f^j as j advances
    let mut columns: Vec<TruncatedSeries> = Vec::with_capacity(rows + 1);
    for _ in 0..=rows {
        columns.push(col.clone());
        col = col.mul(&f);
    }
    for i in 0..=rows {
        let mut row = Vec::with_capacity(rows + 1);
        for column in &columns {
            let c = column.coefficient(i);
            if !c.is_integer() {
                return Err(Error::Internal(format!("non-integer Riordan entry {c}")));
            }
            row.push(c.to_integer());
        }
        matrix.push(row);
    }
    Ok(RiordanPair { g, f, matrix })
}

/// Apply the array's sequence transform to `a`, returning the `n`-th
/// entry of the image. Computed both as the matrix product
/// `sum_j d[n][j] a_j` and as `[y^n] g(y) a(f(y))`; the two must agree.
pub fn riordan_transform(set: &StepSet, a: &[BigInt], n: usize) -> Result<BigInt> {
    if a.len() <= n {
        return Err(Error::Parameter(format!(
            "the transform at index {n} needs at least {} input terms",
            n + 1
        )));
    }
    let pair = riordan_for(set, n)?;
    let mut matrix_side = BigInt::zero();
    for (j, aj) in a.iter().take(n + 1).enumerate() {
        matrix_side += pair.entry(n, j) * aj;
    }
    let a_poly = TruncatedSeries::from_integers(n, &a[..=n.min(a.len() - 1)]);
    let composed = pair.g.mul(&a_poly.compose(&pair.f)?);
    let series_side = composed.coefficient(n);
    if series_side != BigRational::from_integer(matrix_side.clone()) {
        return Err(Error::Internal(format!(
            "transform mismatch at n = {n}: matrix {matrix_side}, series {series_side}"
        )));
    }
    Ok(matrix_side)
}

/// Delannoy number `D(n, k)` as the binomial sum
/// `sum_j C(n, j) C(n + k - j, n)`.
pub fn delannoy(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 {
        return BigInt::zero();
    }
    let mut acc = BigInt::zero();
    for j in 0..=k {
        acc += binomial(n, j) * binomial(n + k - j, n);
    }
    acc
}

/// Large Schroeder number `S(n)`, realised as a primary-path count for
/// the three-step set `{V, U_1, U_0}` and cross-checked between its two
/// primary depths.
pub fn schroeder(n: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::Parameter("Schroeder numbers need n >= 0".into()));
    }
    let e = StepSet::family(Family::E, 0, 0)?;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let via_depth_one = count_primary1(&e, n)?;
    let via_depth_zero = count_primary_direct(&e, 0, n)?;
    if via_depth_one != via_depth_zero {
        return Err(Error::Internal(format!(
            "Schroeder cross-check failed at n = {n}: {via_depth_one} vs {via_depth_zero}"
        )));
    }
    Ok(via_depth_one)
}
