//! Objective, lower bounds, incremental deltas and search-space counts.
//!
//! Everything here works on integer mistake counts and [`ScaledRisk`]
//! units; conversion to `f64` only happens for reporting.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::bitvec::BitVec;
use crate::lambda::{RiskScale, ScaledRisk};

/// Summary of a prefix: its length, how many samples it captures and how
/// many of those it gets wrong.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixStats {
    pub length: usize,
    pub prefix_mistakes: usize,
    pub captured: BitVec,
}

impl PrefixStats {
    pub fn empty(n: usize) -> Self {
        PrefixStats {
            length: 0,
            prefix_mistakes: 0,
            captured: BitVec::zeros(n),
        }
    }

    pub fn captured_count(&self) -> usize {
        self.captured.count_ones()
    }

    pub fn not_captured_count(&self) -> usize {
        self.captured.len() - self.captured_count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectiveValue {
    pub mistakes: usize,
    pub length: usize,
    pub risk: ScaledRisk,
    pub value: f64,
}

/// Majority label and minority count of a group with `ones` label-1
/// samples among `total`. Ties predict 1.
#[inline]
pub fn majority(total: usize, ones: usize) -> (bool, usize) {
    let zeros = total - ones;
    if ones >= zeros {
        (true, zeros)
    } else {
        (false, ones)
    }
}

pub fn objective(stats: &PrefixStats, default_mistakes: usize, scale: &RiskScale) -> ObjectiveValue {
    debug_assert!(default_mistakes <= stats.not_captured_count());
    let mistakes = stats.prefix_mistakes + default_mistakes;
    let risk = scale.risk(mistakes, stats.length);
    ObjectiveValue {
        mistakes,
        length: stats.length,
        risk,
        value: scale.to_f64(risk),
    }
}

pub fn lower_bound(stats: &PrefixStats, scale: &RiskScale) -> ScaledRisk {
    scale.risk(stats.prefix_mistakes, stats.length)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChildCapture {
    pub captured_in_context: BitVec,
    pub new_mistakes: usize,
    pub prediction: bool,
}

/// What a new antecedent captures beneath its parent, the label it
/// predicts there and how many of those samples it misclassifies.
pub fn incremental_child_mistakes(parent_uncaptured: &BitVec, antecedent_captures: &BitVec, labels: &BitVec) -> ChildCapture {
    let captured_in_context = parent_uncaptured.and(antecedent_captures);
    let total = captured_in_context.count_ones();
    let ones = captured_in_context.and_count(labels);
    let (prediction, new_mistakes) = majority(total, ones);
    ChildCapture {
        captured_in_context,
        new_mistakes,
        prediction,
    }
}

/// Default-rule prediction and mistakes over the samples left after the
/// child's capture.
pub fn incremental_default(parent_uncaptured: &BitVec, captured_in_context: &BitVec, labels: &BitVec) -> (usize, bool) {
    let rest = parent_uncaptured.andnot(captured_in_context);
    let (prediction, mistakes) = majority(rest.count_ones(), rest.and_count(labels));
    (mistakes, prediction)
}

/// Equivalent-points bound on the default rule's error.
pub fn equiv_points_default_bound(uncaptured: &BitVec, minority_mask: &BitVec, scale: &RiskScale) -> ScaledRisk {
    scale.count(uncaptured.and_count(minority_mask))
}

/// True when no strict extension of a prefix with bound `lower_bound` can
/// beat `incumbent`.
pub fn lookahead_prunes(lower_bound: ScaledRisk, scale: &RiskScale, incumbent: ScaledRisk) -> bool {
    lower_bound.0 + scale.lambda_units() >= incumbent.0
}

/// Longest prefix an optimal rule list can have given `incumbent`.
pub fn max_prefix_length(incumbent: ScaledRisk, scale: &RiskScale, m: usize) -> usize {
    let unit = scale.lambda_units();
    if unit == 0 {
        return m;
    }
    ((incumbent.0 / unit) as usize).min(m)
}

/// `sum_{k=0}^{f} n! / (n-k)!`.
fn falling_factorial_sum(n: usize, f: usize) -> BigUint {
    let mut total = BigUint::one();
    let mut term = BigUint::one();
    for k in 0..f.min(n) {
        term *= (n - k) as u64;
        total += &term;
    }
    total
}

/// Upper bound on the number of prefixes still to be evaluated below the
/// queue entries `(length, lower bound)`.
pub fn remaining_search_space<I>(incumbent: ScaledRisk, queue_snapshot: I, scale: &RiskScale, m: usize) -> BigUint
where
    I: IntoIterator<Item = (usize, ScaledRisk)>,
{
    let unit = scale.lambda_units();
    // Entries sharing (length, depth budget) contribute identical terms.
    let mut counts: Vec<((usize, usize), u64)> = Vec::new();
    for (length, bound) in queue_snapshot {
        let free = m.saturating_sub(length);
        let f = match incumbent.0.saturating_sub(bound.0).checked_div(unit) {
            Some(q) => (q as usize).min(free),
            None => free,
        };
        match counts.iter_mut().find(|(key, _)| *key == (free, f)) {
            Some((_, c)) => *c += 1,
            None => counts.push(((free, f), 1)),
        }
    }
    let mut total = BigUint::zero();
    for ((free, f), c) in counts {
        total += falling_factorial_sum(free, f) * c;
    }
    total
}

/// Ordered selections of at most `k_max` of `m` antecedents.
pub fn naive_total_evaluations(m: usize, k_max: usize) -> BigUint {
    falling_factorial_sum(m, k_max)
}

/// Count that remains when only one permutation of each antecedent set is
/// kept: `1 + sum_{k=1}^{K} m! / ((m-k)! (k-1)!)`.
pub fn symmetry_aware_total(m: usize, k_max: usize) -> BigUint {
    let mut total = BigUint::one();
    // term_k = m! / ((m-k)! (k-1)!) = k * C(m, k)
    let mut binom = BigUint::one();
    for k in 1..=k_max.min(m) {
        binom = binom * (m - k + 1) as u64 / k as u64;
        total += &binom * k as u64;
    }
    total
}

/// Lower bound divided by normalized support. `None` for an empty capture.
pub fn curiosity(lower_bound: ScaledRisk, captured_count: usize, scale: &RiskScale) -> Option<f64> {
    if captured_count == 0 {
        return None;
    }
    let support = captured_count as f64 / scale.n_samples() as f64;
    Some(scale.to_f64(lower_bound) / support)
}

/// Popcounts needed to evaluate one child in a single pass over the words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ChildCounts {
    /// Samples the antecedent captures in context.
    pub captured: usize,
    /// Of those, how many carry label 1.
    pub captured_ones: usize,
    /// Of those, how many are in the minority mask.
    pub captured_minority: usize,
}

/// Fused `popcount(u & c)`, `popcount(u & c & y)`, `popcount(u & c & z)`.
#[inline]
pub fn child_counts(uncaptured: &[u64], captures: &[u64], labels: &[u64], minority: &[u64]) -> ChildCounts {
    let mut out = ChildCounts::default();
    for i in 0..uncaptured.len() {
        let v = uncaptured[i] & captures[i];
        out.captured += v.count_ones() as usize;
        out.captured_ones += (v & labels[i]).count_ones() as usize;
        out.captured_minority += (v & minority[i]).count_ones() as usize;
    }
    out
}
