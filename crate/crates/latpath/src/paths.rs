//! Path representation, endpoint geometry, primary/free classification,
//! and the unique decomposition of primary paths.

use std::fmt;
use std::str::FromStr;

use crate::steps::{Step, StepSet};
use crate::{Error, Result};

/// A lattice path as a word over the step alphabet, starting at `(0,0)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    steps: Vec<Step>,
}

/// Result of classifying a path against a step set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    /// All steps in the set, every point except possibly the last on or
    /// above the x-axis, first step non-vertical (or the path is empty);
    /// the payload is the depth `m >= 0` of the endpoint.
    Primary(i64),
    /// All steps in the set but not primary.
    FreeOnly,
    /// Some step outside the set.
    NotInSet,
}

/// The unique decomposition of a primary path
/// `U_h V^{l_0} p^(1) V^{l_1} ... p^(d) V^{l_d}` (followed, when `m = 0`,
/// by a trailing 0-primary remainder).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// First step of the path (an up step in the general case; the whole
    /// path in the single-step terminal cases).
    pub first: Step,
    /// Shape `(m, d, k)` with `k = h - sum(lambdas)`.
    pub m: i64,
    pub d: usize,
    pub k: i64,
    /// `l_0 .. l_d` (`d + 1` entries; the last is zero whenever `m >= 2`).
    pub lambdas: Vec<u64>,
    /// The non-vertical blocks `p^(i)` with their depths `m_i`.
    pub subpaths: Vec<(i64, Path)>,
    /// The 0-primary remainder after the first return to the x-axis;
    /// present (possibly empty) exactly when `m = 0`.
    pub tail: Option<Path>,
}

impl Path {
    pub fn new(steps: Vec<Step>) -> Path {
        Path { steps }
    }

    pub fn empty() -> Path {
        Path { steps: Vec::new() }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Number of non-vertical steps (the x-extent `n`).
    pub fn width(&self) -> usize {
        self.steps.iter().filter(|s| !s.is_vertical()).count()
    }

    /// Endpoint `(n, y)`.
    pub fn endpoint(&self) -> (i64, i64) {
        let mut x = 0;
        let mut y = 0;
        for s in &self.steps {
            let (dx, dy) = s.delta();
            x += dx;
            y += dy;
        }
        (x, y)
    }

    /// Heights at the lattice points the path visits, starting with 0.
    pub fn heights(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut y = 0;
        out.push(y);
        for s in &self.steps {
            y += s.delta().1;
            out.push(y);
        }
        out
    }

    pub fn concat(parts: &[&Path]) -> Path {
        let mut steps = Vec::new();
        for p in parts {
            steps.extend_from_slice(&p.steps);
        }
        Path::new(steps)
    }

    /// Classify against `set`: primary (with depth), merely free, or not
    /// an `S`-path at all. The bare vertical path is free but not primary
    /// (a nonempty primary path never begins with a vertical step).
    pub fn classify(&self, set: &StepSet) -> Classification {
        if self.steps.iter().any(|s| !set.contains(s)) {
            return Classification::NotInSet;
        }
        if self.steps.is_empty() {
            return Classification::Primary(0);
        }
        if self.steps[0].is_vertical() {
            return Classification::FreeOnly;
        }
        let heights = self.heights();
        let last = *heights.last().unwrap();
        if last > 0 {
            return Classification::FreeOnly;
        }
        if heights[..heights.len() - 1].iter().any(|&y| y < 0) {
            return Classification::FreeOnly;
        }
        Classification::Primary(-last)
    }

    /// Decompose a primary path at the left-most lattice crossings of the
    /// integer levels below its first step. Errors when the path is not
    /// primary for `set` or has no non-vertical step.
    pub fn decompose(&self, set: &StepSet) -> Result<Decomposition> {
        let m = match self.classify(set) {
            Classification::Primary(m) => m,
            other => return Err(Error::NotPrimary(format!("{self}: {other:?}"))),
        };
        let n = self.width();
        if n == 0 {
            return Err(Error::NotPrimary(format!("{self}: no non-vertical step")));
        }
        let first = self.steps[0];
        let h = first.rise().expect("primary paths start non-vertically");

        if n == 1 && m >= 2 {
            // terminal case: the single down step D_m
            debug_assert_eq!(self.steps.len(), 1);
            return Ok(Decomposition {
                first,
                m,
                d: 0,
                k: 0,
                lambdas: Vec::new(),
                subpaths: Vec::new(),
                tail: None,
            });
        }
        if n == 1 && m == 1 {
            // terminal case: S_h V^{h+1}
            return Ok(Decomposition {
                first,
                m,
                d: 0,
                k: -1,
                lambdas: vec![(h + 1) as u64],
                subpaths: Vec::new(),
                tail: None,
            });
        }

        if m == 0 && h == 0 {
            // shape (0,0,0): U_0 followed directly by the 0-primary remainder
            return Ok(Decomposition {
                first,
                m: 0,
                d: 0,
                k: 0,
                lambdas: vec![0],
                subpaths: Vec::new(),
                tail: Some(Path::new(self.steps[1..].to_vec())),
            });
        }

        // General case (m = 0 with any n, or m >= 1 with n >= 2): cut the
        // suffix after U_h at the left-most integer-point crossings of the
        // levels h, h-1, ..., -m+1, and additionally at the first return
        // to level 0 when m = 0 (which starts the trailing remainder).
        let lowest_level = if m == 0 { 0 } else { -m + 1 };
        let mut cuts = self.cut_positions(h, lowest_level.min(h), m == 0)?;

        let tail_cut = if m == 0 { cuts.pop() } else { None };
        let tail = tail_cut.map(|c| Path::new(self.steps[c..].to_vec()));
        let end = tail_cut.unwrap_or(self.steps.len());

        // Split the suffix into runs of verticals and primary blocks.
        let mut lambdas = vec![0u64];
        let mut subpaths: Vec<(i64, Path)> = Vec::new();
        let heights = self.heights();
        for w in cuts.windows(2).chain(std::iter::once(&[*cuts.last().unwrap(), end][..])) {
            let (from, to) = (w[0], w[1]);
            if to == from {
                continue;
            }
            let segment = &self.steps[from..to];
            if segment.len() == 1 && segment[0].is_vertical() {
                *lambdas.last_mut().unwrap() += 1;
            } else {
                let drop = heights[from] - heights[to];
                subpaths.push((drop, Path::new(segment.to_vec())));
                lambdas.push(0);
            }
        }
        let d = subpaths.len();
        if lambdas.len() != d + 1 {
            return Err(Error::Internal(format!("lambda count mismatch for {self}")));
        }
        let k = h - lambdas.iter().sum::<u64>() as i64;
        Ok(Decomposition {
            first,
            m,
            d,
            k,
            lambdas,
            subpaths,
            tail,
        })
    }

    /// Positions (step indices) of the cut points: for each target level
    /// from `h` down to `lowest`, the left-most point of the suffix after
    /// the first step at that level, kept only when it is a lattice point.
    /// When `with_axis_return` is set, the first return to level 0 is
    /// appended as a final cut (it is always a lattice point).
    fn cut_positions(&self, h: i64, lowest: i64, with_axis_return: bool) -> Result<Vec<usize>> {
        use std::collections::BTreeMap;
        // level -> Some(step position) for lattice cuts, None for
        // non-integer left-most crossings (level excluded).
        let mut found: BTreeMap<i64, Option<usize>> = BTreeMap::new();
        let mut pending: Vec<i64> = (lowest..=h).collect();
        let mut axis_return: Option<usize> = None;
        let heights = self.heights();
        // vertex 1 is the first cut (level h at x = 1)
        let mut mark = |level: i64, pos: Option<usize>, pending: &mut Vec<i64>| {
            if let Some(idx) = pending.iter().position(|&l| l == level) {
                pending.remove(idx);
                found.insert(level, pos);
            }
        };
        mark(h, Some(1), &mut pending);
        for (i, step) in self.steps.iter().enumerate().skip(1) {
            let y0 = heights[i];
            let y1 = heights[i + 1];
            // newly swept levels, excluding the starting height
            let (lo, hi) = (y0.min(y1), y0.max(y1));
            for level in lo..=hi {
                if level == y0 {
                    continue;
                }
                let lattice = level == y1 || step.rise() == Some(0);
                mark(level, lattice.then_some(i + 1), &mut pending);
                if with_axis_return && level == 0 && axis_return.is_none() {
                    if !lattice {
                        return Err(Error::Internal(format!(
                            "non-lattice return to the axis in {self}"
                        )));
                    }
                    axis_return = Some(i + 1);
                }
            }
            if pending.is_empty() && (!with_axis_return || axis_return.is_some()) {
                break;
            }
        }
        let mut cuts: Vec<usize> = found.values().filter_map(|p| *p).collect();
        cuts.sort_unstable();
        cuts.dedup();
        if with_axis_return {
            match axis_return {
                Some(pos) => cuts.push(pos),
                None => {
                    return Err(Error::Internal(format!("no return to the axis in {self}")))
                }
            }
        }
        if cuts.first() != Some(&1) {
            return Err(Error::Internal(format!("missing first cut in {self}")));
        }
        Ok(cuts)
    }
}

impl Decomposition {
    /// Rebuild the original path.
    pub fn recompose(&self) -> Path {
        let mut steps = vec![self.first];
        if self.d == 0 && self.subpaths.is_empty() && self.lambdas.len() == 1 {
            // single-block terminal forms S_h V^{l_0}
            steps.extend(std::iter::repeat(Step::Vertical).take(self.lambdas[0] as usize));
        } else if !self.lambdas.is_empty() {
            steps.extend(std::iter::repeat(Step::Vertical).take(self.lambdas[0] as usize));
            for (i, (_, sub)) in self.subpaths.iter().enumerate() {
                steps.extend_from_slice(sub.steps());
                steps.extend(std::iter::repeat(Step::Vertical).take(self.lambdas[i + 1] as usize));
            }
        }
        if let Some(tail) = &self.tail {
            steps.extend_from_slice(tail.steps());
        }
        Path::new(steps)
    }
}

impl fmt::Display for Path {
    /// Word form with exponents for repeated steps, e.g.
    /// `U3 D2 U1 V U2 V3 U1 D1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps.is_empty() {
            return write!(f, "eps");
        }
        let mut words: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.steps.len() {
            let step = self.steps[i];
            let mut count = 1;
            while i + count < self.steps.len() && self.steps[i + count] == step {
                count += 1;
            }
            if count == 1 {
                words.push(step.to_string());
            } else {
                words.push(format!("{step}{count}", step = step));
            }
            i += count;
        }
        write!(f, "{}", words.join(" "))
    }
}

impl FromStr for Path {
    type Err = Error;

    fn from_str(s: &str) -> Result<Path> {
        let mut steps = Vec::new();
        if s.trim() == "eps" || s.trim().is_empty() {
            return Ok(Path::empty());
        }
        for word in s.split_whitespace() {
            // split "U3" vs exponent form "V3" / "D2V..." -- a word is a
            // step name optionally followed by a repeat count, where the
            // step name is V, U<k>, or D<p>.
            let (step_str, reps) = split_word(word)?;
            let step: Step = step_str.parse()?;
            for _ in 0..reps {
                steps.push(step);
            }
        }
        Ok(Path::new(steps))
    }
}

fn split_word(word: &str) -> Result<(&str, u64)> {
    if word.starts_with('V') {
        let reps = &word[1..];
        let reps = if reps.is_empty() {
            1
        } else {
            reps.parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad word {word:?}")))?
        };
        return Ok((&word[..1], reps));
    }
    // U<k> or D<p>: the first number is part of the step; no exponent form
    // is used for non-vertical steps in this serialization.
    Ok((word, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::steps::Family;

    fn path(word: &str) -> Path {
        word.parse().unwrap()
    }

    #[test]
    fn endpoint_examples() {
        assert_eq!(path("U3 D2 U1 V U2 V3 U1 D1").endpoint(), (6, 0));
        assert_eq!(Path::empty().endpoint(), (0, 0));
        assert_eq!(path("V").endpoint(), (0, -1));
    }

    #[test]
    fn word_form_roundtrip() {
        let p = path("U3 D2 U1 V U2 V3 U1 D1");
        assert_eq!(p.to_string(), "U3 D2 U1 V U2 V3 U1 D1");
        assert_eq!(p.to_string().parse::<Path>().unwrap(), p);
    }

    #[test]
    fn classification() {
        let s: StepSet = "V,U6,U5,U4,U3,U2,U1,U0,D1,D2".parse().unwrap();
        let fig3 = path("U6 D2 U1 V D1 V U2 D1 V3 U1 V2");
        assert_eq!(fig3.classify(&s), Classification::Primary(1));
        // bare V is free but not primary
        assert_eq!(path("V").classify(&s), Classification::FreeOnly);
        // single down step D_2 is 2-primary
        assert_eq!(path("D2").classify(&s), Classification::Primary(2));
        // a step outside the set
        assert_eq!(path("U7").classify(&s), Classification::NotInSet);
        // a path dipping below the axis before its last point
        assert_eq!(path("D1 U1").classify(&s), Classification::FreeOnly);
    }

    #[test]
    fn decompose_fig1_path() {
        let s: StepSet = "V,U6,U5,U4,U3,U2,U1,U0,D1,D2".parse().unwrap();
        let p = path("U6 D2 U1 V D1 V U2 D1 V3 U1 V2");
        let d = p.decompose(&s).unwrap();
        assert_eq!((d.m, d.d, d.k), (1, 4, 4));
        assert_eq!(d.lambdas, vec![0, 0, 1, 1, 0]);
        let blocks: Vec<String> = d.subpaths.iter().map(|(_, p)| p.to_string()).collect();
        assert_eq!(blocks, vec!["D2", "U1 V D1", "U2 D1 V2", "U1 V2"]);
        assert_eq!(d.recompose(), p);
    }

    #[test]
    fn decompose_fig3_path() {
        let l: StepSet = "U6,U5,U4,U3,U2,U1,U0,D1,D2".parse().unwrap();
        let p = path("U4 D2 U0 D1 U0 D1 D1");
        let d = p.decompose(&l).unwrap();
        assert_eq!((d.m, d.d, d.k), (1, 4, 4));
        let blocks: Vec<String> = d.subpaths.iter().map(|(_, p)| p.to_string()).collect();
        assert_eq!(blocks, vec!["D2", "U0 D1", "U0 D1", "D1"]);
        assert_eq!(d.recompose(), p);
    }

    #[test]
    fn decompose_terminal_cases() {
        let s = StepSet::family(Family::A, 1, 2).unwrap();
        // U_h V^h, the n = 1, m = 0 case
        let p = path("U1 V");
        let d = p.decompose(&s).unwrap();
        assert_eq!((d.m, d.d, d.k), (0, 0, 0));
        assert_eq!(d.first, Step::up(1));
        assert_eq!(d.recompose(), p);
        // D_m terminal
        let p = path("D2");
        let d = p.decompose(&s).unwrap();
        assert_eq!(d.m, 2);
        assert_eq!(d.recompose(), p);
        // S_h V^{h+1} terminal
        let p = path("U1 V V");
        let d = p.decompose(&s).unwrap();
        assert_eq!((d.m, d.k), (1, -1));
        assert_eq!(d.recompose(), p);
    }

    #[test]
    fn decompose_zero_primary_with_tail() {
        let s = StepSet::family(Family::B, 1, 1).unwrap();
        // U_1 D_1 U_1 D_1: one block (D_1) then a 0-primary remainder
        let p = path("U1 D1 U1 D1");
        let d = p.decompose(&s).unwrap();
        assert_eq!((d.m, d.d, d.k), (0, 1, 1));
        assert_eq!(d.subpaths[0].1.to_string(), "D1");
        assert_eq!(d.tail.as_ref().unwrap().to_string(), "U1 D1");
        assert_eq!(d.recompose(), p);
        // shape (0,0,0): U_0 followed by the remainder
        let p = path("U0 U1 D1");
        let d = p.decompose(&s).unwrap();
        assert_eq!((d.m, d.d, d.k), (0, 0, 0));
        assert_eq!(d.tail.as_ref().unwrap().to_string(), "U1 D1");
        assert_eq!(d.recompose(), p);
    }

    #[test]
    fn decompose_skipped_level() {
        // m = 2 with the level -1 crossed mid-step: U1 D3 in a D-family set
        let s: StepSet = "V,U1,U0,D1,D3".parse().unwrap();
        let p = path("U1 D3");
        let d = p.decompose(&s).unwrap();
        assert_eq!((d.m, d.d, d.k), (2, 1, 1));
        assert_eq!(d.subpaths[0].0, 3);
        assert_eq!(d.recompose(), p);
    }

    #[test]
    fn decompose_rejects_free_paths() {
        let s = StepSet::family(Family::A, 1, 2).unwrap();
        assert!(path("V").decompose(&s).is_err());
        assert!(path("D1 U1").decompose(&s).is_err());
    }
}
