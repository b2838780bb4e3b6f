//! Optimized-parallel coding: parity words need not be balanced.
//!
//! The encoder walks a schedule of `(k, u)` pairs. Each walk step either
//! flips one more data bit or moves to a parity word with one more `1`,
//! never both, so the codeword disparity `v(u) + v(w^(k))` moves by exactly
//! ±2 per step. The parity weights span a window `[p/2 - t, p/2 + t]` that
//! is symmetric about `p/2`; that makes the first and last disparities of
//! the walk opposite in sign for every input, so some step is balanced.
//!
//! For a nonzero bound only one walk step per block of `2d + 1` carries a
//! parity word, exactly as in the simple-parallel extension.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_traits::ToPrimitive;

use crate::bits::{BitWord, Codeword, DisparityBound};
use crate::error::{Error, Result};
use crate::par;
use crate::parity::WeightClass;
use crate::sizing::binomial;
use crate::sp::{centres, check_params};

/// Parity length `p` and weight-window half width `t` for an OP code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OpSizing {
    pub p: usize,
    pub t: usize,
}

impl OpSizing {
    /// Number of underlying walk steps, `n + 2t`.
    pub fn walk_len(&self, n: usize) -> usize {
        n + 2 * self.t
    }

    pub fn window(&self) -> (usize, usize) {
        (self.p / 2 - self.t, self.p / 2 + self.t)
    }
}

fn capacity(p: usize, weight: usize) -> usize {
    binomial(p as u64, weight as u64)
        .to_usize()
        .unwrap_or(usize::MAX)
}

/// Splits the walk into one contiguous run per window weight.
///
/// Each run is made as long as its weight's capacity allows while leaving
/// one step for every later weight. Returns the run lengths, or `None` when
/// no split keeps every weight within `C(p, ω)` selected steps.
fn place_runs(n: usize, d: u32, sizing: OpSizing) -> Option<Vec<usize>> {
    let len = sizing.walk_len(n);
    let mut selected = vec![false; len];
    for i in centres(len, d) {
        selected[i] = true;
    }
    let (lo, hi) = sizing.window();
    let weights = hi - lo + 1;
    let mut runs = Vec::with_capacity(weights);
    let mut start = 0;
    for (r, weight) in (lo..=hi).enumerate() {
        let cap = capacity(sizing.p, weight);
        let remaining_runs = weights - r - 1;
        let mut end = start;
        let mut used = 0;
        while end < len - remaining_runs {
            let extra = usize::from(selected[end]);
            if used + extra > cap {
                break;
            }
            used += extra;
            end += 1;
        }
        if end == start {
            return None;
        }
        runs.push(end - start);
        start = end;
    }
    (start == len).then_some(runs)
}

/// Smallest even `p ≥ 2`, then smallest `t`, for which the walk fits.
pub fn op_parity_bits(n: usize, d: u32) -> OpSizing {
    let mut p = 2;
    loop {
        for t in 0..=p / 2 {
            let sizing = OpSizing { p, t };
            if place_runs(n, d, sizing).is_some() {
                return sizing;
            }
        }
        p += 2;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WalkStep {
    pub k: usize,
    pub weight: usize,
}

/// A walk step that carries a parity word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OpStep {
    pub walk_index: usize,
    pub k: usize,
    pub parity: BitWord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpSchedule {
    n: usize,
    bound: DisparityBound,
    p: usize,
    walk: Vec<WalkStep>,
    steps: Vec<OpStep>,
}

impl OpSchedule {
    /// Canonical schedule for `(n, d)`.
    pub fn build(n: usize, d: u32) -> Result<Self> {
        check_params(n)?;
        let sizing = op_parity_bits(n, d);
        let runs = place_runs(n, d, sizing).ok_or(Error::Infeasible { n, d, p: sizing.p })?;
        let (lo, _) = sizing.window();

        let mut walk = Vec::with_capacity(sizing.walk_len(n));
        let mut k = 0;
        for (r, run) in runs.iter().enumerate() {
            for i in 0..*run {
                if i > 0 {
                    k += 1;
                }
                walk.push(WalkStep { k, weight: lo + r });
            }
        }

        let mut classes: BTreeMap<usize, WeightClass> = BTreeMap::new();
        let mut steps = Vec::new();
        for walk_index in centres(walk.len(), d) {
            let WalkStep { k, weight } = walk[walk_index];
            let parity = classes
                .entry(weight)
                .or_insert_with(|| WeightClass::new(sizing.p, weight))
                .next()
                .ok_or(Error::Infeasible { n, d, p: sizing.p })?;
            steps.push(OpStep {
                walk_index,
                k,
                parity,
            });
        }

        Ok(Self {
            n,
            bound: DisparityBound::new(d),
            p: sizing.p,
            walk,
            steps,
        })
    }

    /// Assembles a schedule without checking it; see [`validate_op_schedule`].
    pub fn from_parts(
        n: usize,
        d: u32,
        p: usize,
        walk: Vec<WalkStep>,
        steps: Vec<OpStep>,
    ) -> Self {
        Self {
            n,
            bound: DisparityBound::new(d),
            p,
            walk,
            steps,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn m(&self) -> usize {
        self.n + self.p
    }

    pub fn bound(&self) -> DisparityBound {
        self.bound
    }

    pub fn walk(&self) -> &[WalkStep] {
        &self.walk
    }

    /// Selected steps in walk order.
    pub fn steps(&self) -> &[OpStep] {
        &self.steps
    }

    /// `(ω_min, ω_max)` spanned by the walk.
    pub fn window(&self) -> (usize, usize) {
        match (self.walk.first(), self.walk.last()) {
            (Some(a), Some(b)) => (a.weight, b.weight),
            _ => (0, 0),
        }
    }

    /// Codeword disparity `v(u_j) + v(w^(k_j))` at every walk step.
    ///
    /// Unselected steps have no parity word, but the disparity of any word
    /// of the step's weight is `2ω - p`.
    pub fn walk_disparities(&self, w: BitWord) -> Vec<i32> {
        self.walk
            .iter()
            .map(|s| {
                (2 * s.weight as i32 - self.p as i32) + w.prefix_flip_unchecked(s.k).disparity()
            })
            .collect()
    }

    /// Structural checks only; see [`validate_op_schedule`] for the full pass.
    pub fn structural_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let d = self.bound.d() as usize;

        if self.walk.is_empty() {
            out.push("empty walk".to_string());
            return out;
        }
        if self.walk[0].k != 0 {
            out.push(format!("walk starts at k={}", self.walk[0].k));
        }
        let last = self.walk[self.walk.len() - 1];
        if last.k + 1 != self.n {
            out.push(format!("walk ends at k={}, expected {}", last.k, self.n - 1));
        }
        let (lo, hi) = self.window();
        if lo + hi != self.p {
            out.push(format!("weight window [{lo}, {hi}] not symmetric about p/2={}", self.p / 2));
        }
        for (j, pair) in self.walk.windows(2).enumerate() {
            let dk = pair[1].k as isize - pair[0].k as isize;
            let dw = pair[1].weight as isize - pair[0].weight as isize;
            if !matches!((dk, dw), (1, 0) | (0, 1)) {
                out.push(format!("walk step {j}->{} moves (k {dk:+}, weight {dw:+})", j + 1));
            }
        }

        let mut seen = HashSet::new();
        let mut usage: BTreeMap<usize, usize> = BTreeMap::new();
        let mut prev_index = None;
        for (j, step) in self.steps.iter().enumerate() {
            if prev_index.is_some_and(|i| step.walk_index <= i) {
                out.push(format!("selected step {j} out of walk order"));
            }
            prev_index = Some(step.walk_index);
            let Some(ws) = self.walk.get(step.walk_index) else {
                out.push(format!("selected step {j} points past the walk"));
                continue;
            };
            if ws.k != step.k {
                out.push(format!("selected step {j} has k={} but walk says {}", step.k, ws.k));
            }
            if step.parity.len() != self.p {
                out.push(format!("selected step {j} parity word has {} bits", step.parity.len()));
            }
            if step.parity.weight() as usize != ws.weight {
                out.push(format!(
                    "selected step {j} parity word {} has weight {}, walk weight {}",
                    step.parity,
                    step.parity.weight(),
                    ws.weight
                ));
            }
            if !seen.insert(step.parity) {
                out.push(format!("parity word {} used twice", step.parity));
            }
            *usage.entry(ws.weight).or_default() += 1;
        }
        for (weight, used) in usage {
            if weight <= self.p && used > capacity(self.p, weight) {
                out.push(format!("weight {weight} used {used} times, capacity {}", capacity(self.p, weight)));
            }
        }

        let mut covered = vec![false; self.walk.len()];
        for step in &self.steps {
            let lo = step.walk_index.saturating_sub(d);
            let hi = (step.walk_index + d).min(self.walk.len() - 1);
            for c in covered.iter_mut().take(hi + 1).skip(lo) {
                *c = true;
            }
        }
        if let Some(i) = covered.iter().position(|c| !c) {
            out.push(format!("walk step {i} is more than {d} steps from any selected step"));
        }
        out
    }

    /// `j k u weight selected` per walk step; `u` is `-` where unselected.
    pub fn dump(&self) -> String {
        let by_index: HashMap<usize, BitWord> =
            self.steps.iter().map(|s| (s.walk_index, s.parity)).collect();
        let mut out = String::new();
        for (j, s) in self.walk.iter().enumerate() {
            let (u, sel) = match by_index.get(&j) {
                Some(u) => (u.to_string(), "yes"),
                None => ("-".to_string(), "no"),
            };
            out.push_str(&format!("{j} {} {u} {} {sel}\n", s.k, s.weight));
        }
        out
    }
}

pub fn build_op_schedule(n: usize, d: u32) -> Result<OpSchedule> {
    OpSchedule::build(n, d)
}

/// Inputs checked beyond `EXHAUSTIVE_LIMIT` bits when validating.
pub const DEFAULT_VALIDATION_SAMPLES: u64 = 100_000;
pub const EXHAUSTIVE_LIMIT: usize = 16;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<String>,
    /// Inputs for which no selected step lands within the bound.
    pub counterexamples: Vec<BitWord>,
    pub inputs_checked: u64,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty() && self.counterexamples.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} invariant violations, {} unencodable inputs of {} checked",
            self.violations.len(),
            self.counterexamples.len(),
            self.inputs_checked
        )?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        for w in self.counterexamples.iter().take(16) {
            writeln!(f, "  unencodable: {w}")?;
        }
        Ok(())
    }
}

/// Checks structure, then that every input reaches the bound at some
/// selected step: exhaustively up to 16 data bits, otherwise on seeded
/// samples plus the all-zeros, all-ones and alternating words.
pub fn validate_op_schedule(s: &OpSchedule) -> ValidationReport {
    validate_with(s, DEFAULT_VALIDATION_SAMPLES, 0)
}

pub fn validate_with(s: &OpSchedule, samples: u64, seed: u64) -> ValidationReport {
    let violations = s.structural_violations();
    if !violations.is_empty() {
        return ValidationReport {
            violations,
            ..Default::default()
        };
    }
    let bound = s.bound;
    let reaches = |w: BitWord| {
        s.steps.iter().any(|st| {
            bound.admits(st.parity.disparity() + w.prefix_flip_unchecked(st.k).disparity())
        })
    };
    let (counterexamples, inputs_checked) = if s.n <= EXHAUSTIVE_LIMIT {
        let n = s.n;
        let bad = par::filter_range(0..1u64 << n, |v| {
            let w = BitWord::new(v, n).expect("in range");
            (!reaches(w)).then_some(w)
        });
        (bad, 1u64 << n)
    } else {
        let sampler = par::Sampler::new(s.n, seed);
        let mut bad = sampler.filter(samples, |w| (!reaches(w)).then_some(w));
        for w in par::adversarial(s.n) {
            if !reaches(w) {
                bad.push(w);
            }
        }
        (bad, samples + par::adversarial(s.n).len() as u64)
    };
    ValidationReport {
        violations: Vec::new(),
        counterexamples,
        inputs_checked,
    }
}

#[derive(Clone, Debug)]
pub struct OpCodec {
    schedule: OpSchedule,
    // per selected step: flip count, parity word, parity disparity
    candidates: Vec<(usize, BitWord, i32)>,
    decode_map: HashMap<BitWord, usize>,
}

impl OpCodec {
    /// Wraps a schedule after checking its structure.
    pub fn new(schedule: OpSchedule) -> Result<Self> {
        let violations = schedule.structural_violations();
        if !violations.is_empty() {
            return Err(Error::InvalidArgument(violations.join("; ")));
        }
        let candidates = schedule
            .steps
            .iter()
            .map(|s| (s.k, s.parity, s.parity.disparity()))
            .collect();
        let decode_map = schedule.steps.iter().map(|s| (s.parity, s.k)).collect();
        Ok(Self {
            schedule,
            candidates,
            decode_map,
        })
    }

    pub fn build(n: usize, d: u32) -> Result<Self> {
        Self::new(OpSchedule::build(n, d)?)
    }

    #[cfg(test)]
    pub(crate) fn new_unchecked(schedule: OpSchedule) -> Self {
        let candidates = schedule
            .steps
            .iter()
            .map(|s| (s.k, s.parity, s.parity.disparity()))
            .collect();
        let decode_map = schedule.steps.iter().map(|s| (s.parity, s.k)).collect();
        Self {
            schedule,
            candidates,
            decode_map,
        }
    }

    pub fn schedule(&self) -> &OpSchedule {
        &self.schedule
    }

    pub fn n(&self) -> usize {
        self.schedule.n
    }

    pub fn p(&self) -> usize {
        self.schedule.p
    }

    pub fn m(&self) -> usize {
        self.schedule.m()
    }

    pub fn bound(&self) -> DisparityBound {
        self.schedule.bound
    }

    /// Index of the first selected step that meets the bound.
    pub fn choose_step(&self, w: BitWord) -> Result<usize> {
        if w.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                actual: w.len(),
            });
        }
        let bound = self.bound();
        self.candidates
            .iter()
            .position(|&(k, _, vu)| bound.admits(vu + w.prefix_flip_unchecked(k).disparity()))
            .ok_or(Error::Unencodable(w))
    }

    pub fn encode(&self, w: BitWord) -> Result<Codeword> {
        let j = self.choose_step(w)?;
        let (k, u, _) = self.candidates[j];
        Ok(Codeword::new(u, w.prefix_flip_unchecked(k)))
    }

    pub fn decode(&self, c: &Codeword) -> Result<BitWord> {
        if c.parity.len() != self.p() || c.payload.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.m(),
                actual: c.len(),
            });
        }
        let v = c.disparity();
        if !self.bound().admits(v) {
            return Err(Error::BoundViolation {
                disparity: v,
                bound: self.bound().bound(),
            });
        }
        let k = *self
            .decode_map
            .get(&c.parity)
            .ok_or(Error::UnknownParityWord(c.parity))?;
        Ok(c.payload.prefix_flip_unchecked(k))
    }
}
