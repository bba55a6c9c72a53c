//! Exact counting of free and primary paths: the additive recurrence,
//! coefficient extraction from the step polynomial, vertical-step
//! convolutions, and the per-family closed-form binomial sums.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::compositions::binomial;
use crate::steps::{DownSteps, StepSet};
use crate::{Error, Result};

/// Memoized table of free-path counts for one step set.
///
/// Entries are zero for `n < 0` or `m < -N n`; column `n = 0` is all ones
/// for `m >= 0` when the set has the vertical step (the paths `V^m`), and
/// the single one at `m = 0` otherwise.
pub struct CountTable {
    set: StepSet,
    free: RefCell<HashMap<(i64, i64), BigInt>>,
}

impl CountTable {
    pub fn new(set: StepSet) -> CountTable {
        CountTable {
            set,
            free: RefCell::new(HashMap::new()),
        }
    }

    pub fn set(&self) -> &StepSet {
        &self.set
    }

    /// `|F(m,n)|` by the recurrence
    /// `|F(m,n)| = |F(m-1,n)| + sum_k |F(m+k,n-1)|`
    /// (first term dropped for vertical-free sets). The sum over an
    /// infinite down tail is finite because terms with `m+k < -N(n-1)`
    /// vanish.
    pub fn free(&self, m: i64, n: i64) -> BigInt {
        let big_n = self.set.max_rise() as i64;
        if n < 0 || m < -big_n * n {
            return BigInt::zero();
        }
        if n == 0 {
            let one = self.set.has_vertical() && m >= 0 || m == 0;
            return if one { BigInt::one() } else { BigInt::zero() };
        }
        if let Some(v) = self.free.borrow().get(&(m, n)) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        if self.set.has_vertical() {
            total += self.free(m - 1, n);
        }
        let min_k = -(m + big_n * (n - 1));
        for k in self.set.rises_geq(min_k) {
            total += self.free(m + k, n - 1);
        }
        self.free.borrow_mut().insert((m, n), total.clone());
        total
    }
}

/// `|F_S(m,n)|` via [`CountTable::free`].
pub fn count_free_rec(set: &StepSet, m: i64, n: i64) -> BigInt {
    CountTable::new(set.clone()).free(m, n)
}

/// Dense polynomial over big integers, truncated at a fixed degree.
struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    fn zero(trunc: usize) -> IntPoly {
        IntPoly {
            coeffs: vec![BigInt::zero(); trunc + 1],
        }
    }

    fn one(trunc: usize) -> IntPoly {
        let mut p = IntPoly::zero(trunc);
        p.coeffs[0] = BigInt::one();
        p
    }

    fn mul(&self, other: &IntPoly) -> IntPoly {
        let trunc = self.coeffs.len() - 1;
        let mut out = IntPoly::zero(trunc);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(trunc + 1 - i).enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }

    fn pow(&self, mut e: i64) -> IntPoly {
        let trunc = self.coeffs.len() - 1;
        let mut base = IntPoly {
            coeffs: self.coeffs.clone(),
        };
        let mut out = IntPoly::one(trunc);
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }
}

/// The step polynomial `sum_{S_k} y^{N-k}` truncated at `trunc`; for the
/// infinite down tail this is the truncated geometric tail.
fn step_poly(set: &StepSet, trunc: usize) -> IntPoly {
    let big_n = set.max_rise() as i64;
    let mut p = IntPoly::zero(trunc);
    for k in set.rises_geq(big_n - trunc as i64) {
        let e = (big_n - k) as usize;
        if e <= trunc {
            p.coeffs[e] += BigInt::one();
        }
    }
    p
}

/// `|F(m,n)|` by coefficient extraction: `[y^{Nn+m}]` of the `n`-th power
/// of the step polynomial, multiplied by `(1-y)^{-(n+1)}` when
/// `with_vertical` is set.
pub fn count_free_coeff(set: &StepSet, m: i64, n: i64, with_vertical: bool) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::Precondition("count_free_coeff needs n >= 0".into()));
    }
    let big_n = set.max_rise() as i64;
    let degree = big_n * n + m;
    if degree < 0 {
        return Ok(BigInt::zero());
    }
    let trunc = degree as usize;
    let mut p = step_poly(set, trunc).pow(n);
    if with_vertical {
        // multiply by 1/(1-y)^{n+1} = sum_j binom(n+j, j) y^j
        let mut geom = IntPoly::zero(trunc);
        for (j, c) in geom.coeffs.iter_mut().enumerate() {
            *c = binomial(n + j as i64, j as i64);
        }
        p = p.mul(&geom);
    }
    Ok(p.coeffs[trunc].clone())
}

/// `|P(1,n)| = (|F(1,n)| - |F(0,n)|) / n` for sets with the vertical step;
/// for vertical-free sets the cycle lemma gives `|F(1,n)| / n` directly.
/// The division is checked and never rounds.
pub fn count_primary1(set: &StepSet, n: i64) -> Result<BigInt> {
    if n < 1 {
        return Err(Error::Precondition("count_primary1 needs n >= 1".into()));
    }
    let table = CountTable::new(set.clone());
    let numer = if set.has_vertical() {
        table.free(1, n) - table.free(0, n)
    } else {
        table.free(1, n)
    };
    exact_div(numer, n)
}

fn exact_div(numer: BigInt, n: i64) -> Result<BigInt> {
    let n = BigInt::from(n);
    let (q, r) = num_integer::Integer::div_rem(&numer, &n);
    if !r.is_zero() {
        return Err(Error::Internal(format!(
            "non-exact division {numer} / {n}"
        )));
    }
    Ok(q)
}

/// `|F_V(m,n)|` as the vertical-step convolution
/// `sum_j binom(n+j, j) |F_N(m-j, n)|` over the vertical-free companion
/// counts.
pub fn count_free_convolution(set: &StepSet, m: i64, n: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::Precondition("count_free_convolution needs n >= 0".into()));
    }
    if !set.has_vertical() {
        return Err(Error::Precondition(
            "the convolution counts sets with the vertical step".into(),
        ));
    }
    let stripped = StepSet::new(false, set.ups().clone(), set.downs().clone())?;
    let table = CountTable::new(stripped);
    let big_n = set.max_rise() as i64;
    let mut total = BigInt::zero();
    for j in 0..=(big_n * n + m).max(-1) {
        total += binomial(n + j, j) * table.free(m - j, n);
    }
    Ok(total)
}

/// `|P(1,n)| = (1/n) sum_j binom(n+j-1, j) |F_N(1-j, n)|`.
pub fn count_primary1_convolution(set: &StepSet, n: i64) -> Result<BigInt> {
    if n < 1 {
        return Err(Error::Precondition(
            "count_primary1_convolution needs n >= 1".into(),
        ));
    }
    if !set.has_vertical() {
        return Err(Error::Precondition(
            "the convolution counts sets with the vertical step".into(),
        ));
    }
    let stripped = StepSet::new(false, set.ups().clone(), set.downs().clone())?;
    let table = CountTable::new(stripped);
    let big_n = set.max_rise() as i64;
    let mut total = BigInt::zero();
    for j in 0..=(big_n * n + 1) {
        total += binomial(n + j - 1, j) * table.free(1 - j, n);
    }
    exact_div(total, n)
}

/// `|P(0,n)| = sum_{j=0}^n (-1)^{n-j} |P(1,j)|`, valid only when the
/// maximal drop is 1 (no step can skip over the axis). The `j = 0` term
/// uses the length-zero convention `|P(1,0)| = 1`.
pub fn count_primary0_k1(set: &StepSet, n: i64) -> Result<BigInt> {
    if set.downs() != &DownSteps::Finite([1].into()) {
        return Err(Error::Precondition(
            "the alternating sum needs down steps exactly {D1}".into(),
        ));
    }
    if n < 0 {
        return Err(Error::Precondition("count_primary0_k1 needs n >= 0".into()));
    }
    let mut total = BigInt::zero();
    for j in 0..=n {
        let p1 = if j == 0 {
            BigInt::one()
        } else {
            count_primary1(set, j)?
        };
        if (n - j) % 2 == 0 {
            total += p1;
        } else {
            total -= p1;
        }
    }
    Ok(total)
}

/// `|P(K,n)| = |P(0,n-1)|` for finite sets with maximal drop `K >= 2`:
/// the last step of a `K`-primary path is forced to be `D_K` from the
/// axis.
pub fn count_primary_k(set: &StepSet, n: i64) -> Result<BigInt> {
    let k = set
        .max_drop()
        .ok_or_else(|| Error::Precondition("count_primary_k needs a finite step set".into()))?;
    if k < 2 {
        return Err(Error::Precondition("count_primary_k needs K >= 2".into()));
    }
    if n < 1 {
        return Err(Error::Precondition("count_primary_k needs n >= 1".into()));
    }
    count_primary_direct(set, 0, n - 1)
}

/// `|P(m,n)|` by dynamic programming over nonnegative prefixes: count the
/// words with `j` non-vertical steps that stay on or above the axis, do
/// not start with a vertical step, and end at height `y`; then attach the
/// final descent. `n = 0` returns the length-zero convention value 1.
pub fn count_primary_direct(set: &StepSet, m: i64, n: i64) -> Result<BigInt> {
    if m < 0 || n < 0 {
        return Err(Error::Precondition("count_primary_direct needs m, n >= 0".into()));
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    let big_n = set.max_rise() as i64;
    // stay[j][y]: prefixes with j non-vertical steps ending at height y
    let mut stay: Vec<Vec<BigInt>> = Vec::with_capacity(n as usize + 1);
    stay.push(vec![BigInt::one()]);
    for j in 1..=n {
        let top = (big_n * j) as usize;
        let mut row = vec![BigInt::zero(); top + 1];
        for y in 0..=top as i64 {
            let mut total = BigInt::zero();
            for k in set.rises_geq(y - (j - 1) * big_n) {
                let y0 = y - k;
                if y0 >= 0 {
                    if let Some(v) = stay[j as usize - 1].get(y0 as usize) {
                        total += v;
                    }
                }
            }
            row[y as usize] = total;
        }
        // a trailing vertical run may lower the endpoint from any higher
        // prefix endpoint: closing cumulative sum from above
        if set.has_vertical() {
            for y in (0..top as usize).rev() {
                let above = row[y + 1].clone();
                row[y] += above;
            }
        }
        stay.push(row);
    }
    if m == 0 {
        return Ok(stay[n as usize][0].clone());
    }
    let mut total = BigInt::zero();
    if m == 1 && set.has_vertical() {
        // final step V from the axis
        total += &stay[n as usize][0];
    }
    // final step D_p from height p - m
    let last = &stay[n as usize - 1];
    for k in set.rises_geq(-(m + (n - 1) * big_n)) {
        if k < 0 {
            let y0 = -k - m;
            if y0 >= 0 {
                if let Some(v) = last.get(y0 as usize) {
                    total += v;
                }
            }
        }
    }
    Ok(total)
}

/// Selector for the printed closed-form binomial sums of the named
/// families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedForm {
    FreeA,
    Prim1A,
    FreeB,
    Prim0B,
    Prim1B,
    FreeC,
    Prim1C,
    FreeD,
    Prim1D,
    Prim0D,
}

impl std::str::FromStr for ClosedForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<ClosedForm> {
        match s {
            "FreeA" => Ok(ClosedForm::FreeA),
            "Prim1A" => Ok(ClosedForm::Prim1A),
            "FreeB" => Ok(ClosedForm::FreeB),
            "Prim0B" => Ok(ClosedForm::Prim0B),
            "Prim1B" => Ok(ClosedForm::Prim1B),
            "FreeC" => Ok(ClosedForm::FreeC),
            "Prim1C" => Ok(ClosedForm::Prim1C),
            "FreeD" => Ok(ClosedForm::FreeD),
            "Prim1D" => Ok(ClosedForm::Prim1D),
            "Prim0D" => Ok(ClosedForm::Prim0D),
            _ => Err(Error::Parse(format!("unknown closed form {s:?}"))),
        }
    }
}

/// Evaluate one of the closed-form binomial sums exactly. `big_n` is the
/// maximal rise, `big_k` the maximal drop (ignored where the family fixes
/// it), `m` the depth (ignored by the primary forms).
pub fn family_closed_form(
    which: ClosedForm,
    big_n: u64,
    big_k: u64,
    m: i64,
    n: i64,
) -> Result<BigInt> {
    use ClosedForm::*;
    let nn = big_n as i64;
    let kk = big_k as i64;
    match which {
        FreeA => {
            if n < 1 && m != 0 || n < 0 || kk < 1 {
                return Err(Error::Precondition("FreeA needs n >= 1, K >= 1".into()));
            }
            let period = nn + kk + 1;
            let mut total = BigInt::zero();
            for k in 0..=((nn * n + m) / period).max(-1) {
                let term = binomial(n, k) * binomial(n * (nn + 2) - k * period + m, 2 * n);
                if k % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            Ok(total)
        }
        Prim1A => {
            if n < 1 || kk < 1 {
                return Err(Error::Precondition("Prim1A needs n >= 1, K >= 1".into()));
            }
            let period = nn + kk + 1;
            let mut total = BigInt::zero();
            for k in 0..=(nn * n + 1) / period {
                let term = binomial(n, k) * binomial(n * (nn + 2) - k * period, 2 * n - 1);
                if k % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            exact_div(total, n)
        }
        FreeB => family_closed_form(FreeA, big_n, 1, m, n),
        Prim1B => family_closed_form(Prim1A, big_n, 1, 0, n),
        Prim0B => {
            if n < 0 {
                return Err(Error::Precondition("Prim0B needs n >= 0".into()));
            }
            let mut total = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            for j in 1..=n {
                let p1 = family_closed_form(Prim1B, big_n, 1, 0, j)?;
                if (n - j) % 2 == 0 {
                    total += p1;
                } else {
                    total -= p1;
                }
            }
            Ok(total)
        }
        FreeC => {
            if n < 0 {
                return Err(Error::Precondition("FreeC needs n >= 0".into()));
            }
            Ok(binomial((nn + 2) * n + m, 2 * n))
        }
        Prim1C => {
            if n < 1 {
                return Err(Error::Precondition("Prim1C needs n >= 1".into()));
            }
            exact_div(binomial((nn + 2) * n, 2 * n - 1), n)
        }
        FreeD => {
            if n < 0 || nn < 1 || kk < 1 {
                return Err(Error::Precondition("FreeD needs n >= 0, N, K >= 1".into()));
            }
            let period = nn + kk;
            let mut total = BigInt::zero();
            for k in 0..=((nn * n + m) / period).max(-1) {
                total += binomial(n, k) * binomial(n * (nn + 1) - k * period + m, n);
            }
            Ok(total)
        }
        Prim1D => {
            if n < 1 || nn < 1 || kk < 1 {
                return Err(Error::Precondition("Prim1D needs n >= 1, N, K >= 1".into()));
            }
            let period = nn + kk;
            let mut total = BigInt::zero();
            for k in 0..=(nn * n + 1) / period {
                total += binomial(n, k) * binomial(n * (nn + 1) - k * period, n - 1);
            }
            exact_div(total, n)
        }
        Prim0D => {
            if kk != 1 {
                return Err(Error::Precondition("Prim0D needs K = 1".into()));
            }
            if n < 0 {
                return Err(Error::Precondition("Prim0D needs n >= 0".into()));
            }
            let mut total = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            for j in 1..=n {
                let p1 = family_closed_form(Prim1D, big_n, 1, 0, j)?;
                if (n - j) % 2 == 0 {
                    total += p1;
                } else {
                    total -= p1;
                }
            }
            Ok(total)
        }
    }
}

/// `[z^n] (1 - z^A)^B / (1 - z)^C` by the double binomial expansion.
pub fn binom_series_coeff(a: i64, b: i64, c: i64, n: i64) -> Result<BigInt> {
    if a < 1 || b < 0 || c < 0 || n < 0 {
        return Err(Error::Precondition(
            "binom_series_coeff needs A >= 1, B, C, n >= 0".into(),
        ));
    }
    if c == 0 {
        // plain (1 - z^A)^B
        if n % a != 0 {
            return Ok(BigInt::zero());
        }
        let k = n / a;
        let term = binomial(b, k);
        return Ok(if k % 2 == 0 { term } else { -term });
    }
    let mut total = BigInt::zero();
    for k in 0..=n / a {
        let term = binomial(b, k) * binomial(c + n - k * a - 1, c - 1);
        if k % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}
