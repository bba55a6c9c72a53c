//! Steps, admissible step sets, and the five named families.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// A single lattice step: the vertical step `(0,-1)` or a non-vertical
/// step `(1,k)`. `NonVertical(k)` with `k >= 0` is the up step `U_k`;
/// with `k < 0` it is the down step `D_{-k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    Vertical,
    NonVertical(i64),
}

impl Step {
    pub fn up(k: u64) -> Step {
        Step::NonVertical(k as i64)
    }

    pub fn down(p: u64) -> Step {
        assert!(p >= 1, "down step needs p >= 1");
        Step::NonVertical(-(p as i64))
    }

    /// Displacement `(dx, dy)` of the step.
    pub fn delta(&self) -> (i64, i64) {
        match self {
            Step::Vertical => (0, -1),
            Step::NonVertical(k) => (1, *k),
        }
    }

    /// Rise of a non-vertical step, `None` for the vertical step.
    pub fn rise(&self) -> Option<i64> {
        match self {
            Step::Vertical => None,
            Step::NonVertical(k) => Some(*k),
        }
    }

    pub fn is_vertical(&self) -> bool {
        matches!(self, Step::Vertical)
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Vertical => write!(f, "V"),
            Step::NonVertical(k) if *k >= 0 => write!(f, "U{k}"),
            Step::NonVertical(k) => write!(f, "D{}", -k),
        }
    }
}

impl FromStr for Step {
    type Err = Error;

    fn from_str(s: &str) -> Result<Step> {
        if s == "V" {
            return Ok(Step::Vertical);
        }
        let (head, rest) = s.split_at(1.min(s.len()));
        let num = |r: &str| {
            r.parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad step {s:?}")))
        };
        match head {
            "U" => Ok(Step::up(num(rest)?)),
            "D" => {
                let p = num(rest)?;
                if p == 0 {
                    return Err(Error::Parse("D0 is not a step".into()));
                }
                Ok(Step::down(p))
            }
            _ => Err(Error::Parse(format!("bad step {s:?}"))),
        }
    }
}

/// The down-step part of a step set: an explicit finite set of drops
/// `p >= 1`, or the full infinite tail `{D_1, D_2, ...}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DownSteps {
    Finite(BTreeSet<u64>),
    All,
}

/// An admissible step set: optionally the vertical step, a nonempty finite
/// set of up steps (so the maximal rise `N` always exists), and a finite or
/// down-infinite set of down steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepSet {
    has_vertical: bool,
    ups: BTreeSet<u64>,
    downs: DownSteps,
}

/// The five named step-set families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        match s {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            "E" | "e" => Ok(Family::E),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

impl StepSet {
    pub fn new(has_vertical: bool, ups: BTreeSet<u64>, downs: DownSteps) -> Result<StepSet> {
        if ups.is_empty() {
            return Err(Error::Parameter("step set needs at least one up step".into()));
        }
        Ok(StepSet { has_vertical, ups, downs })
    }

    /// The step set of a named family.
    ///
    /// * `A`: `{V, U_N..U_0, D_1..D_K}` (needs `K >= 1`)
    /// * `B`: `{V, U_N..U_0, D_1}`
    /// * `C`: `{V, U_N..U_0, D_1, D_2, ...}`
    /// * `D`: `{V, U_N, D_K}` (needs `N, K >= 1`)
    /// * `E`: `{V, U_1, U_0}` (ignores `N` and `K`)
    pub fn family(family: Family, n: u64, k: u64) -> Result<StepSet> {
        let ups_to = |n: u64| (0..=n).collect::<BTreeSet<_>>();
        match family {
            Family::A => {
                if k < 1 {
                    return Err(Error::Parameter("family A needs K >= 1".into()));
                }
                StepSet::new(true, ups_to(n), DownSteps::Finite((1..=k).collect()))
            }
            Family::B => StepSet::new(true, ups_to(n), DownSteps::Finite([1].into())),
            Family::C => StepSet::new(true, ups_to(n), DownSteps::All),
            Family::D => {
                if n < 1 || k < 1 {
                    return Err(Error::Parameter("family D needs N, K >= 1".into()));
                }
                StepSet::new(true, [n].into(), DownSteps::Finite([k].into()))
            }
            Family::E => StepSet::new(true, [0, 1].into(), DownSteps::Finite(BTreeSet::new())),
        }
    }

    pub fn has_vertical(&self) -> bool {
        self.has_vertical
    }

    /// Maximal rise `N`.
    pub fn max_rise(&self) -> u64 {
        *self.ups.iter().next_back().expect("ups nonempty")
    }

    /// Maximal drop `K`; `None` when the set has the infinite down tail or
    /// no down steps at all.
    pub fn max_drop(&self) -> Option<u64> {
        match &self.downs {
            DownSteps::Finite(d) => d.iter().next_back().copied(),
            DownSteps::All => None,
        }
    }

    pub fn ups(&self) -> &BTreeSet<u64> {
        &self.ups
    }

    pub fn downs(&self) -> &DownSteps {
        &self.downs
    }

    pub fn all_downs(&self) -> bool {
        matches!(self.downs, DownSteps::All)
    }

    pub fn is_finite(&self) -> bool {
        !self.all_downs()
    }

    pub fn contains(&self, step: &Step) -> bool {
        match step {
            Step::Vertical => self.has_vertical,
            Step::NonVertical(k) if *k >= 0 => self.ups.contains(&(*k as u64)),
            Step::NonVertical(k) => match &self.downs {
                DownSteps::Finite(d) => d.contains(&((-k) as u64)),
                DownSteps::All => true,
            },
        }
    }

    /// Rises `h` with `S_h` in the set and `h >= k`, ascending. This is the
    /// canonical order of the set written `V_{>=k}` and is the order every
    /// rank-dependent construction in this crate uses.
    pub fn rises_geq(&self, k: i64) -> Vec<i64> {
        let mut out = Vec::new();
        if k < 0 {
            match &self.downs {
                DownSteps::Finite(d) => {
                    for p in d.iter().rev() {
                        let h = -(*p as i64);
                        if h >= k {
                            out.push(h);
                        }
                    }
                }
                DownSteps::All => {
                    for h in k..0 {
                        out.push(h);
                    }
                }
            }
        }
        for u in &self.ups {
            let h = *u as i64;
            if h >= k {
                out.push(h);
            }
        }
        out
    }

    /// The companion vertical-free set `L = (V \ {V}) ∪ {U_N..U_0, D_1}`.
    pub fn companion_l(&self) -> Result<StepSet> {
        if !self.has_vertical {
            return Err(Error::Precondition(
                "companion set is defined for sets containing the vertical step".into(),
            ));
        }
        let ups: BTreeSet<u64> = (0..=self.max_rise()).collect();
        let downs = match &self.downs {
            DownSteps::Finite(d) => {
                let mut d = d.clone();
                d.insert(1);
                DownSteps::Finite(d)
            }
            DownSteps::All => DownSteps::All,
        };
        StepSet::new(false, ups, downs)
    }

    /// Non-vertical steps as `Step`s in ascending rise order, with the
    /// down tail cut at `min_rise` for down-infinite sets.
    pub fn non_vertical_steps(&self, min_rise: i64) -> Vec<Step> {
        self.rises_geq(min_rise)
            .into_iter()
            .map(Step::NonVertical)
            .collect()
    }
}

impl fmt::Display for StepSet {
    /// Compact text form, e.g. `V,U1,U0,D1,D2` or `V,U1,U0,D*`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.has_vertical {
            parts.push("V".into());
        }
        for u in self.ups.iter().rev() {
            parts.push(format!("U{u}"));
        }
        match &self.downs {
            DownSteps::Finite(d) => {
                for p in d {
                    parts.push(format!("D{p}"));
                }
            }
            DownSteps::All => parts.push("D*".into()),
        }
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for StepSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<StepSet> {
        let mut has_vertical = false;
        let mut ups = BTreeSet::new();
        let mut finite_downs = BTreeSet::new();
        let mut all_downs = false;
        for token in s.split(',') {
            let token = token.trim();
            if token == "D*" {
                all_downs = true;
                continue;
            }
            match token.parse::<Step>()? {
                Step::Vertical => has_vertical = true,
                Step::NonVertical(k) if k >= 0 => {
                    ups.insert(k as u64);
                }
                Step::NonVertical(k) => {
                    finite_downs.insert((-k) as u64);
                }
            }
        }
        let downs = if all_downs {
            if !finite_downs.is_empty() {
                return Err(Error::Parse("mixed D* with explicit down steps".into()));
            }
            DownSteps::All
        } else {
            DownSteps::Finite(finite_downs)
        };
        StepSet::new(has_vertical, ups, downs)
    }
}
