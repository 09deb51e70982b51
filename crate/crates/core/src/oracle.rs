//! Exhaustive reference solver for small instances.
//!
//! Every ordered selection of at most `k_cap` antecedents is scored from
//! scratch, one sample at a time, with no pruning and no shared code with
//! the branch-and-bound solver beyond the input types.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::lambda::Lambda;
use crate::rulelist::{Rule, RuleList};
use crate::AntecedentId;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub min_objective: f64,
    /// Minimum objective times `N * lambda_den`, exact.
    pub min_objective_units: u128,
    pub witnesses: Vec<RuleList>,
    pub evaluated: u64,
}

/// `sum_{k=0}^{k_cap} m! / (m-k)!`, saturating.
pub fn enumeration_count(m: usize, k_cap: usize) -> u128 {
    let mut total: u128 = 1;
    let mut term: u128 = 1;
    for k in 0..k_cap.min(m) {
        term = term.saturating_mul((m - k) as u128);
        total = total.saturating_add(term);
    }
    total
}

/// `min(floor(1 / (2 lambda)), m)`, or `m` for `lambda = 0`.
pub fn default_k_cap(lambda: Lambda, m: usize) -> usize {
    if lambda.is_zero() {
        return m;
    }
    let cap = lambda.denom() / (2 * lambda.numer());
    (cap.min(m as u64)) as usize
}

struct Scorer {
    /// `captures[m][n]`
    captures: Vec<Vec<bool>>,
    labels: Vec<bool>,
    lambda: Lambda,
}

impl Scorer {
    fn score(&self, prefix: &[AntecedentId]) -> (u128, RuleList) {
        let k = prefix.len();
        let mut totals = vec![0usize; k + 1];
        let mut ones = vec![0usize; k + 1];
        for (s, &y) in self.labels.iter().enumerate() {
            let slot = prefix
                .iter()
                .position(|&a| self.captures[a as usize][s])
                .unwrap_or(k);
            totals[slot] += 1;
            ones[slot] += y as usize;
        }
        let mut mistakes = 0;
        let mut preds = Vec::with_capacity(k + 1);
        for (t, o) in totals.iter().zip(&ones) {
            let zeros = t - o;
            let predict_one = *o >= zeros;
            mistakes += if predict_one { zeros } else { *o };
            preds.push(predict_one);
        }
        let n = self.labels.len() as u128;
        let units = mistakes as u128 * self.lambda.denom() as u128 + k as u128 * self.lambda.numer() as u128 * n;
        let rules = prefix
            .iter()
            .zip(&preds)
            .map(|(&antecedent, &prediction)| Rule {
                antecedent,
                prediction,
            })
            .collect();
        (
            units,
            RuleList {
                rules,
                default_prediction: preds[k],
            },
        )
    }
}

/// Minimum objective over all rule lists of length at most `k_cap`
/// (default [`default_k_cap`]), with every rule list attaining it.
pub fn brute_force(dataset: &LabeledDataset, lambda: Lambda, k_cap: Option<usize>, budget: u64) -> Result<OracleResult> {
    let m = dataset.antecedents.len();
    let n = dataset.n_samples();
    if n == 0 {
        return Err(Error::InvalidArgument("empty dataset".to_string()));
    }
    let k_cap = k_cap.unwrap_or_else(|| default_k_cap(lambda, m)).min(m);
    let count = enumeration_count(m, k_cap);
    if count > budget as u128 {
        return Err(Error::EnumerationBudget {
            count: count.to_string(),
            budget,
        });
    }
    let scorer = Scorer {
        captures: dataset
            .antecedents
            .iter()
            .map(|a| (0..n).map(|s| a.captures.get(s)).collect())
            .collect(),
        labels: (0..n).map(|s| dataset.labels.get(s)).collect(),
        lambda,
    };

    let mut best_units = u128::MAX;
    let mut witnesses = Vec::new();
    let mut evaluated = 0u64;
    let mut prefix: Vec<AntecedentId> = Vec::with_capacity(k_cap);
    let mut used = vec![false; m];
    // next[d] is the next antecedent to try at depth d.
    let mut next = vec![0usize; k_cap + 1];
    let mut visit = |prefix: &[AntecedentId]| {
        let (units, rl) = scorer.score(prefix);
        if units < best_units {
            best_units = units;
            witnesses.clear();
        }
        if units == best_units {
            witnesses.push(rl);
        }
    };
    visit(&prefix);
    evaluated += 1;
    loop {
        let d = prefix.len();
        if d < k_cap {
            if let Some(a) = (next[d]..m).find(|&a| !used[a]) {
                next[d] = a + 1;
                used[a] = true;
                prefix.push(a as AntecedentId);
                visit(&prefix);
                evaluated += 1;
                next[d + 1] = 0;
                continue;
            }
        }
        match prefix.pop() {
            Some(a) => used[a as usize] = false,
            None => break,
        }
    }
    let scale = n as f64 * lambda.denom() as f64;
    Ok(OracleResult {
        min_objective: best_units as f64 / scale,
        min_objective_units: best_units,
        witnesses,
        evaluated,
    })
}
