//! Truncated power series over exact rationals, the functional-equation
//! systems for the primary-path generating functions, and polynomial
//! verification of the closed-form algebraic relations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bijection::h_size;
use crate::compositions::bounded_compositions;
use crate::count::count_free_rec;
use crate::steps::{Family, Step, StepSet};
use crate::{Error, Result};

/// A power series truncated after `x^T`, with exact rational
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn constant(order: usize, value: BigRational) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(order);
        s.coeffs[0] = value;
        s
    }

    pub fn one(order: usize) -> TruncatedSeries {
        TruncatedSeries::constant(order, BigRational::one())
    }

    /// The monomial `c x^e` (zero when `e` exceeds the order).
    pub fn monomial(order: usize, e: usize, c: BigRational) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(order);
        if e <= order {
            s.coeffs[e] = c;
        }
        s
    }

    pub fn from_integers(order: usize, values: &[BigInt]) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(order);
        for (i, v) in values.iter().take(order + 1).enumerate() {
            s.coeffs[i] = BigRational::from_integer(v.clone());
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficient(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
        out
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order();
        let mut out = TruncatedSeries::zero(order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> TruncatedSeries {
        let mut out = self.clone();
        for a in out.coeffs.iter_mut() {
            *a *= c;
        }
        out
    }

    pub fn pow(&self, e: usize) -> TruncatedSeries {
        let mut out = TruncatedSeries::one(self.order());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn invert(&self) -> Result<TruncatedSeries> {
        if self.coeffs[0].is_zero() {
            return Err(Error::Precondition("cannot invert a series with zero constant term".into()));
        }
        let order = self.order();
        let mut out = TruncatedSeries::zero(order);
        let lead = self.coeffs[0].recip();
        out.coeffs[0] = lead.clone();
        for n in 1..=order {
            let mut acc = BigRational::zero();
            for i in 1..=n {
                acc += &self.coeffs[i] * &out.coeffs[n - i];
            }
            out.coeffs[n] = -acc * &lead;
        }
        Ok(out)
    }

    /// Composition `self(arg)`; the argument must have zero constant
    /// term.
    pub fn compose(&self, arg: &TruncatedSeries) -> Result<TruncatedSeries> {
        if !arg.coeffs[0].is_zero() {
            return Err(Error::Precondition(
                "composition needs an argument with zero constant term".into(),
            ));
        }
        let order = self.order();
        // Horner evaluation from the top coefficient down
        let mut out = TruncatedSeries::zero(order);
        for c in self.coeffs.iter().rev() {
            out = out.mul(arg);
            out.coeffs[0] += c;
        }
        Ok(out)
    }

    /// Integer coefficients, asserted exactly.
    pub fn integer_coefficients(&self) -> Result<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(Error::Internal(format!("non-integer coefficient {c}")))
                }
            })
            .collect()
    }
}

/// The functional-equation system for the primary-path generating
/// functions of a finite step set: unknowns `P_0 .. P_K`.
pub struct GFSystem {
    set: StepSet,
    /// Whether the equation coefficients carry H-set sizes (vertical-step
    /// sets) or are plain products (vertical-free sets).
    weighted: bool,
    max_m: u64,
}

impl GFSystem {
    /// The system for a set containing the vertical step; coefficients
    /// are the H-set sizes.
    pub fn for_vertical(set: StepSet) -> Result<GFSystem> {
        if !set.has_vertical() {
            return Err(Error::Precondition("the weighted system needs the vertical step".into()));
        }
        GFSystem::build(set, true)
    }

    /// The plain system for a vertical-free set.
    pub fn for_plain(set: StepSet) -> Result<GFSystem> {
        if set.has_vertical() {
            return Err(Error::Precondition("the plain system is for vertical-free sets".into()));
        }
        GFSystem::build(set, false)
    }

    fn build(set: StepSet, weighted: bool) -> Result<GFSystem> {
        let max_drop = match set.max_drop() {
            Some(k) => k,
            None if set.is_finite() => 1,
            None => {
                return Err(Error::Precondition(
                    "the functional-equation system needs a finite step set".into(),
                ))
            }
        };
        if !set.ups().contains(&set.max_rise()) {
            return Err(Error::Internal("missing maximal up step".into()));
        }
        // depths that can occur as block depths: 1..K, plus the axis level
        Ok(GFSystem {
            set,
            weighted,
            max_m: max_drop.max(1),
        })
    }

    pub fn max_depth(&self) -> u64 {
        self.max_m
    }

    fn delta(&self, m: i64) -> Result<BigRational> {
        let v = if self.weighted {
            if m <= 1 {
                BigInt::from(self.set.rises_geq(-m).len())
            } else if self.set.contains(&Step::down(m as u64)) {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        } else if self.set.contains(&Step::NonVertical(-m)) {
            BigInt::one()
        } else {
            BigInt::zero()
        };
        Ok(BigRational::from_integer(v))
    }

    fn coefficient(&self, m: i64, d: usize, k: i64) -> Result<BigRational> {
        if self.weighted {
            Ok(BigRational::from_integer(h_size(&self.set, m, d, k)?))
        } else {
            Ok(BigRational::one())
        }
    }

    /// One right-hand-side evaluation of the equation for `P_m` given the
    /// current values of all unknowns.
    fn rhs(&self, m: i64, current: &[TruncatedSeries], order: usize) -> Result<TruncatedSeries> {
        let kk = self.max_m;
        let x = TruncatedSeries::monomial(order, 1, BigRational::one());
        let one = TruncatedSeries::one(order);
        let mut out = one.clone();
        if m == 0 {
            // 1 + d0 x P0 + x P0 * (block sums over k >= 1)
            let mut blocks = TruncatedSeries::zero(order);
            for k in self.up_rises(1) {
                for d in 1..=k as usize {
                    let coeff = self.coefficient(0, d, k)?;
                    let mut inner = TruncatedSeries::zero(order);
                    for comp in bounded_compositions(k, d, kk, 1) {
                        let mut product = one.clone();
                        for mj in comp {
                            product = product.mul(&current[mj as usize].sub(&one));
                        }
                        inner = inner.add(&product);
                    }
                    blocks = blocks.add(&inner.scale(&coeff));
                }
            }
            let head = x.scale(&self.delta(0)?).add(&x.mul(&blocks));
            out = out.add(&head.mul(&current[0]));
        } else {
            out = out.add(&x.scale(&self.delta(m)?));
            let mut blocks = TruncatedSeries::zero(order);
            for k in self.up_rises(0) {
                for d in 1..=(k as usize + 1) {
                    let coeff = self.coefficient(m, d, k)?;
                    let mut inner = TruncatedSeries::zero(order);
                    for comp in bounded_compositions(k + m, d, kk, m.max(1) as u64) {
                        let mut product = one.clone();
                        for mj in comp {
                            product = product.mul(&current[mj as usize].sub(&one));
                        }
                        inner = inner.add(&product);
                    }
                    blocks = blocks.add(&inner.scale(&coeff));
                }
            }
            out = out.add(&x.mul(&blocks));
        }
        Ok(out)
    }

    fn up_rises(&self, min: i64) -> Vec<i64> {
        if self.weighted {
            // the companion alphabet always has the full ladder U_0..U_N
            (min..=self.set.max_rise() as i64).collect()
        } else {
            self.set
                .ups()
                .iter()
                .map(|&u| u as i64)
                .filter(|&k| k >= min)
                .collect()
        }
    }

    /// Solve to order `T` by whole-series fixpoint iteration: every
    /// right-hand term carries a factor `x`, so each pass fixes one more
    /// coefficient.
    pub fn solve(&self, order: usize) -> Result<Vec<TruncatedSeries>> {
        let mut current: Vec<TruncatedSeries> =
            (0..=self.max_m).map(|_| TruncatedSeries::one(order)).collect();
        for _ in 0..=order {
            let mut next = Vec::with_capacity(current.len());
            for m in 0..=self.max_m as i64 {
                next.push(self.rhs(m, &current, order)?);
            }
            current = next;
        }
        Ok(current)
    }
}

/// Solve the weighted system of a vertical-step set; returns
/// `P_0 .. P_K` to order `T`.
pub fn solve_system(set: &StepSet, order: usize) -> Result<Vec<TruncatedSeries>> {
    GFSystem::for_vertical(set.clone())?.solve(order)
}

/// Solve the plain system of a vertical-free set.
pub fn solve_system_n(set: &StepSet, order: usize) -> Result<Vec<TruncatedSeries>> {
    GFSystem::for_plain(set.clone())?.solve(order)
}

/// The closed-form algebraic relations checked as vanishing residuals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    CubicA12,
    QuadB1P0,
    QuadB1P1,
    QuadD11P0,
    QuadD11P1,
    FreeB1Gfs,
}

impl std::str::FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Relation> {
        match s {
            "CubicA12" => Ok(Relation::CubicA12),
            "QuadB1_P0" => Ok(Relation::QuadB1P0),
            "QuadB1_P1" => Ok(Relation::QuadB1P1),
            "QuadD11_P0" => Ok(Relation::QuadD11P0),
            "QuadD11_P1" => Ok(Relation::QuadD11P1),
            "FreeB1_GFs" => Ok(Relation::FreeB1Gfs),
            _ => Err(Error::Parse(format!("unknown relation {s:?}"))),
        }
    }
}

fn poly(order: usize, coeffs: &[i64]) -> TruncatedSeries {
    let ints: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
    TruncatedSeries::from_integers(order, &ints)
}

/// Substitute the solved series into the named polynomial relation and
/// report whether the residual vanishes to order `T`.
pub fn verify_algebraic(relation: Relation, order: usize) -> Result<bool> {
    if order < 8 {
        return Err(Error::Precondition("verify_algebraic needs order >= 8".into()));
    }
    let residuals: Vec<TruncatedSeries> = match relation {
        Relation::CubicA12 => {
            let p1 = &solve_system(&StepSet::family(Family::A, 1, 2)?, order)?[1];
            // x^2 P1^3 + 2x(x-1) P1^2 + (1-x+2x^2) P1 - 1
            vec![poly(order, &[0, 0, 1])
                .mul(&p1.pow(3))
                .add(&poly(order, &[0, -2, 2]).mul(&p1.pow(2)))
                .add(&poly(order, &[1, -1, 2]).mul(p1))
                .sub(&TruncatedSeries::one(order))]
        }
        Relation::QuadB1P0 => {
            let p0 = &solve_system(&StepSet::family(Family::B, 1, 1)?, order)?[0];
            // (2x(1+x) P0 - (1-x))^2 - (1-6x-3x^2)
            let lhs = poly(order, &[0, 2, 2]).mul(p0).sub(&poly(order, &[1, -1]));
            vec![lhs.mul(&lhs).sub(&poly(order, &[1, -6, -3]))]
        }
        Relation::QuadB1P1 => {
            let p1 = &solve_system(&StepSet::family(Family::B, 1, 1)?, order)?[1];
            // (1-x-2x P1)^2 - (1-6x-3x^2)
            let lhs = poly(order, &[1, -1]).sub(&poly(order, &[0, 2]).mul(p1));
            vec![lhs.mul(&lhs).sub(&poly(order, &[1, -6, -3]))]
        }
        Relation::QuadD11P0 => {
            let p0 = &solve_system(&StepSet::family(Family::D, 1, 1)?, order)?[0];
            // (2x(1+x) P0 - 1)^2 - (1-4x-4x^2)
            let lhs = poly(order, &[0, 2, 2]).mul(p0).sub(&TruncatedSeries::one(order));
            vec![lhs.mul(&lhs).sub(&poly(order, &[1, -4, -4]))]
        }
        Relation::QuadD11P1 => {
            let p1 = &solve_system(&StepSet::family(Family::D, 1, 1)?, order)?[1];
            // (2x P1 - 1)^2 - (1-4x-4x^2)
            let lhs = poly(order, &[0, 2]).mul(p1).sub(&TruncatedSeries::one(order));
            vec![lhs.mul(&lhs).sub(&poly(order, &[1, -4, -4]))]
        }
        Relation::FreeB1Gfs => {
            // G0^2 (1-6x-3x^2) = 1 and (2x G1 + 1)^2 (1-6x-3x^2) = (1-x)^2
            let b = StepSet::family(Family::B, 1, 1)?;
            let g0: Vec<BigInt> = (0..=order as i64).map(|n| count_free_rec(&b, 0, n)).collect();
            let g1: Vec<BigInt> = (0..=order as i64).map(|n| count_free_rec(&b, 1, n)).collect();
            let g0 = TruncatedSeries::from_integers(order, &g0);
            let g1 = TruncatedSeries::from_integers(order, &g1);
            let delta = poly(order, &[1, -6, -3]);
            let first = g0.mul(&g0).mul(&delta).sub(&TruncatedSeries::one(order));
            let lhs = poly(order, &[0, 2]).mul(&g1).add(&TruncatedSeries::one(order));
            let second = lhs.mul(&lhs).mul(&delta).sub(&poly(order, &[1, -2, 1]));
            vec![first, second]
        }
    };
    Ok(residuals.iter().all(TruncatedSeries::is_zero))
}

/// The `x^n` slice of the bivariate free-path generating function as a
/// series in `y` to order `d_order`: the coefficient of `y^m` is
/// `|F(m - Nn, n)|`.
pub fn bivariate_row(set: &StepSet, n: i64, d_order: usize) -> Result<TruncatedSeries> {
    if n < 0 {
        return Err(Error::Precondition("bivariate_row needs n >= 0".into()));
    }
    let big_n = set.max_rise() as i64;
    let mut steps = TruncatedSeries::zero(d_order);
    for k in set.rises_geq(big_n - d_order as i64) {
        let e = (big_n - k) as usize;
        if e <= d_order {
            steps.coeffs[e] += BigRational::one();
        }
    }
    let geom = poly(d_order, &[1, -1]).invert()?; // 1/(1-y)
    let mut out = steps.pow(n as usize);
    for _ in 0..=n {
        out = out.mul(&geom);
    }
    Ok(out)
}
