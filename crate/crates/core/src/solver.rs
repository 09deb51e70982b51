//! Branch-and-bound driver.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::bitvec::BitVec;
use crate::bounds::{child_counts, majority, remaining_search_space};
use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::lambda::{Lambda, RiskScale, ScaledRisk};
use crate::rulelist::{Rule, RuleList};
use crate::search::{Queue, SearchPolicy};
use crate::symmap::{Decision, SymmetryMap};
use crate::trie::{NodeId, NodeMeta, Trie, ROOT};
use crate::AntecedentId;

/// Switches that each disable one optimization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Ablations {
    /// Breadth-first order regardless of the configured policy.
    pub no_priority: bool,
    pub no_support_bounds: bool,
    pub no_lookahead: bool,
    pub no_symmap: bool,
    pub no_equiv_points: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub lambda: Lambda,
    pub policy: SearchPolicy,
    /// Maximum number of trie nodes.
    pub max_nodes: Option<usize>,
    /// Checked against the [`Clock`] before every pop.
    pub max_seconds: Option<f64>,
    pub ablations: Ablations,
    /// Emit a trace record every this many pops (0 disables sampling).
    pub trace_sample_interval: u64,
    /// The `lambda_min` the antecedents were mined with, if known.
    pub mining_lambda: Option<Lambda>,
}

impl SolverConfig {
    pub fn new(lambda: Lambda) -> Self {
        SolverConfig {
            lambda,
            policy: SearchPolicy::LowerBound,
            max_nodes: None,
            max_seconds: None,
            ablations: Ablations::default(),
            trace_sample_interval: 4096,
            mining_lambda: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    CertifiedOptimal,
    IncompleteMemory,
    IncompleteTime,
}

impl Status {
    pub fn name(&self) -> &'static str {
        match self {
            Status::CertifiedOptimal => "certified_optimal",
            Status::IncompleteMemory => "incomplete_memory",
            Status::IncompleteTime => "incomplete_time",
        }
    }
}

impl core::fmt::Display for Status {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Counters {
    pub lower_bound_evaluations: u64,
    pub queue_insertions: u64,
    pub max_physical_queue: usize,
    pub max_logical_queue: usize,
    pub trie_node_peak: usize,
    pub incumbent_updates: u64,
    pub max_evaluated_prefix_length: usize,
    pub nodes_expanded: u64,
    pub discarded_at_pop: u64,
    pub skipped_support: u64,
    pub skipped_accurate_support: u64,
    pub skipped_bound: u64,
    pub skipped_lookahead: u64,
    pub symmap_blocked: u64,
    pub symmap_replaced: u64,
    pub gc_removed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverResult {
    pub best_rule_list: RuleList,
    pub best_objective: f64,
    pub best_objective_units: ScaledRisk,
    pub best_mistakes: usize,
    pub status: Status,
    /// Incumbent minus the smallest surviving bound; 0 when certified.
    pub optimality_gap: f64,
    pub counters: Counters,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    pub elapsed_s: f64,
    pub incumbent_objective: f64,
    /// Lower bound of the node being expanded; `None` in the final record.
    pub popped_lower_bound: Option<f64>,
    pub incumbent_length: usize,
    pub logical_queue: usize,
    pub physical_queue: usize,
    pub trie_nodes: usize,
    /// Bound on the prefixes still to evaluate; `None` in the final record.
    pub remaining: Option<BigUint>,
    pub lower_bound_evaluations: u64,
}

impl TraceRecord {
    /// `floor(log10(remaining))`, or `None` when unavailable or zero.
    pub fn log10_remaining(&self) -> Option<usize> {
        match &self.remaining {
            Some(r) if *r > BigUint::ZERO => Some(r.to_string().len() - 1),
            _ => None,
        }
    }
}

/// One child evaluation, reported to observers that ask for it.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation<'a> {
    pub prefix: &'a [AntecedentId],
    pub parent_lower_bound: ScaledRisk,
    pub lower_bound: ScaledRisk,
    pub prefix_mistakes: usize,
    pub incumbent: ScaledRisk,
}

/// Hooks into a run. All methods default to doing nothing.
pub trait Observer {
    fn wants_evaluations(&self) -> bool {
        false
    }
    fn evaluation(&mut self, _e: &Evaluation<'_>) {}
    fn trace(&mut self, _r: &TraceRecord) {}
}

impl Observer for () {}

/// Time source for the time cap and trace timestamps.
pub trait Clock {
    /// Seconds since the run started; `pops` is the number of nodes
    /// expanded so far.
    fn elapsed_seconds(&mut self, pops: u64) -> f64;
}

/// Reports the pop count as the elapsed time, which makes traces
/// reproducible.
#[derive(Debug, Clone, Copy, Default)]
pub struct LogicalClock;

impl Clock for LogicalClock {
    fn elapsed_seconds(&mut self, pops: u64) -> f64 {
        pops as f64
    }
}

pub fn solve(dataset: &LabeledDataset, config: &SolverConfig) -> Result<SolverResult> {
    solve_with(dataset, config, &mut LogicalClock, &mut ())
}

struct Run<'a> {
    scale: RiskScale,
    m: usize,
    caps: Vec<&'a [u64]>,
    labels: &'a [u64],
    minority: BitVec,
    trie: Trie,
    queue: Queue,
    symmap: SymmetryMap,
    counters: Counters,
    rc: ScaledRisk,
    incumbent: RuleList,
    incumbent_mistakes: usize,
}

impl Run<'_> {
    fn gc_threshold(&self, no_lookahead: bool) -> ScaledRisk {
        if no_lookahead {
            self.rc
        } else {
            ScaledRisk(self.rc.0.saturating_sub(self.scale.lambda_units()))
        }
    }

    fn note_sizes(&mut self) {
        let c = &mut self.counters;
        c.trie_node_peak = c.trie_node_peak.max(self.trie.len());
        c.max_physical_queue = c.max_physical_queue.max(self.queue.len());
        c.max_logical_queue = c.max_logical_queue.max(self.queue.logical_len(&self.trie));
    }

    fn record(&self, elapsed_s: f64, popped: Option<NodeId>) -> TraceRecord {
        let remaining = popped.map(|p| {
            let entries = self
                .queue
                .live_nodes(&self.trie)
                .chain(core::iter::once(p))
                .map(|id| (self.trie.depth(id), self.trie.lower_bound(id)));
            remaining_search_space(self.rc, entries, &self.scale, self.m)
        });
        // The node under expansion may have been marked by GC; it is not in the queue.
        let outside = popped.map_or(0, |p| self.trie.is_marked(p) as usize);
        TraceRecord {
            elapsed_s,
            incumbent_objective: self.scale.to_f64(self.rc),
            popped_lower_bound: popped.map(|p| self.scale.to_f64(self.trie.lower_bound(p))),
            incumbent_length: self.incumbent.len(),
            logical_queue: self.queue.len() + outside - self.trie.marked_count(),
            physical_queue: self.queue.len(),
            trie_nodes: self.trie.len(),
            remaining,
            lower_bound_evaluations: self.counters.lower_bound_evaluations,
        }
    }

    fn rule_list(&self, node: NodeId, child: Rule, default_prediction: bool) -> RuleList {
        let mut rules = Vec::with_capacity(self.trie.depth(node) + 1);
        rules.push(child);
        let mut cur = node;
        while cur != ROOT {
            let v = self.trie.view(cur);
            rules.push(Rule {
                antecedent: v.antecedent.expect("non-root"),
                prediction: v.meta.prediction,
            });
            cur = self.trie.parent(cur);
        }
        rules.reverse();
        RuleList {
            rules,
            default_prediction,
        }
    }
}

/// Runs the search with an explicit clock and observer.
pub fn solve_with(
    dataset: &LabeledDataset,
    config: &SolverConfig,
    clock: &mut dyn Clock,
    observer: &mut dyn Observer,
) -> Result<SolverResult> {
    let m = dataset.antecedents.len();
    let n = dataset.n_samples();
    if m == 0 {
        return Err(Error::EmptyModel);
    }
    if n == 0 || n > u32::MAX as usize {
        return Err(Error::InvalidArgument(format!("sample count {n} out of range")));
    }
    let ab = config.ablations;
    let mut warnings = Vec::new();
    if let Some(lm) = config.mining_lambda {
        if lm.as_f64() > config.lambda.as_f64() {
            warnings.push(format!(
                "antecedents were mined with lambda_min {lm} above the run's lambda {}; some optimal rules may be missing",
                config.lambda
            ));
        }
    }
    let scale = RiskScale::new(n, config.lambda)?;
    let lambda_units = scale.lambda_units();
    let lookahead = if ab.no_lookahead { 0 } else { lambda_units };
    let policy = if ab.no_priority { SearchPolicy::Bfs } else { config.policy };
    let minority = if ab.no_equiv_points {
        BitVec::zeros(n)
    } else {
        dataset.minority_mask.clone()
    };
    let label_ones = dataset.labels.count_ones();
    let (default_prediction, default_mistakes) = majority(n, label_ones);
    let root = NodeMeta {
        prefix_mistakes: 0,
        default_mistakes: default_mistakes as u32,
        uncaptured_minority: minority.count_ones() as u32,
        captured: 0,
        prediction: false,
        default_prediction,
    };

    let mut run = Run {
        scale,
        m,
        caps: dataset.antecedents.iter().map(|a| a.captures.words()).collect(),
        labels: dataset.labels.words(),
        minority,
        trie: Trie::new(scale, root),
        queue: Queue::new(policy),
        symmap: SymmetryMap::new(),
        counters: Counters::default(),
        rc: scale.risk(default_mistakes, 0),
        incumbent: RuleList {
            rules: Vec::new(),
            default_prediction,
        },
        incumbent_mistakes: default_mistakes,
    };
    run.queue.push(&mut run.trie, ROOT);
    run.note_sizes();

    let wants_evals = observer.wants_evaluations();
    let mut status = Status::CertifiedOptimal;
    let mut interrupted_bound: Option<ScaledRisk> = None;
    let mut in_path = alloc::vec![false; m];

    'search: loop {
        let now = clock.elapsed_seconds(run.counters.nodes_expanded);
        if config.max_seconds.is_some_and(|cap| now > cap) {
            status = Status::IncompleteTime;
            break;
        }
        let Some(node) = run.queue.pop_live(&mut run.trie) else {
            break;
        };
        let b = run.trie.lower_bound(node);
        let b0 = run.trie.b0(node);
        if b.0 + b0.0 + lookahead >= run.rc.0 {
            run.counters.discarded_at_pop += 1;
            run.trie.release(node);
            continue;
        }
        run.counters.nodes_expanded += 1;
        let pops = run.counters.nodes_expanded;
        if config.trace_sample_interval > 0 && pops.is_multiple_of(config.trace_sample_interval) {
            let r = run.record(clock.elapsed_seconds(pops), Some(node));
            observer.trace(&r);
        }

        let path = run.trie.path(node);
        let depth = path.len();
        let parent_mistakes = run.trie.prefix_mistakes(node);
        let mut u = BitVec::ones(n);
        for &a in &path {
            u.andnot_assign(&dataset.antecedents.get(a).captures);
        }
        let n_u = u.count_ones();
        let n_uy = u.and_count(&dataset.labels);
        let n_uz = u.and_count(&run.minority);
        for &a in &path {
            in_path[a as usize] = true;
        }
        let mut sorted_path = path.clone();
        sorted_path.sort_unstable();
        let mut child_path = path.clone();
        child_path.push(0);
        let mut key = Vec::with_capacity(depth + 1);

        for a in 0..m {
            if in_path[a] {
                continue;
            }
            if run.trie.is_marked(node) {
                break;
            }
            let cc = child_counts(u.words(), run.caps[a], run.labels, run.minority.words());
            let (prediction, new_mistakes) = majority(cc.captured, cc.captured_ones);
            if !ab.no_support_bounds {
                if config.lambda.exceeds_fraction(cc.captured, n) {
                    run.counters.skipped_support += 1;
                    continue;
                }
                if config.lambda.exceeds_fraction(cc.captured - new_mistakes, n) {
                    run.counters.skipped_accurate_support += 1;
                    continue;
                }
            }
            let child_mistakes = parent_mistakes + new_mistakes;
            let child_b = scale.risk(child_mistakes, depth + 1);
            run.counters.lower_bound_evaluations += 1;
            run.counters.max_evaluated_prefix_length = run.counters.max_evaluated_prefix_length.max(depth + 1);
            *child_path.last_mut().expect("nonempty") = a as AntecedentId;
            if wants_evals {
                observer.evaluation(&Evaluation {
                    prefix: &child_path,
                    parent_lower_bound: b,
                    lower_bound: child_b,
                    prefix_mistakes: child_mistakes,
                    incumbent: run.rc,
                });
            }
            if child_b >= run.rc {
                run.counters.skipped_bound += 1;
                continue;
            }

            let rest = n_u - cc.captured;
            let rest_ones = n_uy - cc.captured_ones;
            let (child_default, child_default_mistakes) = majority(rest, rest_ones);
            let objective = scale.risk(child_mistakes + child_default_mistakes, depth + 1);
            if objective < run.rc {
                run.rc = objective;
                run.incumbent_mistakes = child_mistakes + child_default_mistakes;
                run.incumbent = run.rule_list(
                    node,
                    Rule {
                        antecedent: a as AntecedentId,
                        prediction,
                    },
                    child_default,
                );
                run.counters.incumbent_updates += 1;
                let t = run.gc_threshold(ab.no_lookahead);
                run.counters.gc_removed += run.trie.garbage_collect(t) as u64;
                let r = run.record(clock.elapsed_seconds(pops), Some(node));
                observer.trace(&r);
                if run.trie.is_marked(node) {
                    break;
                }
            }

            let child_b0 = n_uz - cc.captured_minority;
            let augmented = child_b + scale.count(child_b0);
            if augmented.0 + lookahead >= run.rc.0 || depth + 1 >= m {
                run.counters.skipped_lookahead += 1;
                continue;
            }

            if !ab.no_symmap {
                key.clear();
                let pos = sorted_path.partition_point(|&x| (x as usize) < a);
                key.extend_from_slice(&sorted_path[..pos]);
                key.push(a as AntecedentId);
                key.extend_from_slice(&sorted_path[pos..]);
                match run.symmap.check_and_insert_keyed(&key, &child_path, augmented) {
                    Decision::InsertNew => {}
                    Decision::Blocked => {
                        run.counters.symmap_blocked += 1;
                        continue;
                    }
                    Decision::ReplacedWorse(prior) => {
                        run.counters.symmap_replaced += 1;
                        run.trie.delete_subtree(&prior);
                    }
                }
            }

            if config.max_nodes.is_some_and(|cap| run.trie.len() >= cap) {
                status = Status::IncompleteMemory;
                interrupted_bound = Some(b + b0);
                for &a in &path {
                    in_path[a as usize] = false;
                }
                run.trie.release(node);
                break 'search;
            }
            let child = run.trie.insert_child(
                node,
                a as AntecedentId,
                NodeMeta {
                    prefix_mistakes: child_mistakes as u32,
                    default_mistakes: child_default_mistakes as u32,
                    uncaptured_minority: child_b0 as u32,
                    captured: (n - rest) as u32,
                    prediction,
                    default_prediction: child_default,
                },
            );
            run.queue.push(&mut run.trie, child);
            run.counters.queue_insertions += 1;
            run.note_sizes();
        }
        for &a in &path {
            in_path[a as usize] = false;
        }
        run.trie.release(node);
    }

    let optimality_gap = match status {
        Status::CertifiedOptimal => 0.0,
        _ => {
            let surviving = run.queue.min_bound(&run.trie).into_iter().chain(interrupted_bound).min();
            match surviving {
                Some(lb) if lb < run.rc => scale.to_f64(run.rc - lb),
                _ => 0.0,
            }
        }
    };
    let end = clock.elapsed_seconds(run.counters.nodes_expanded);
    let r = run.record(end, None);
    observer.trace(&r);

    Ok(SolverResult {
        best_objective: scale.to_f64(run.rc),
        best_objective_units: run.rc,
        best_mistakes: run.incumbent_mistakes,
        best_rule_list: run.incumbent,
        status,
        optimality_gap,
        counters: run.counters,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::AntecedentSet;

    fn dataset(caps: &[&str], labels: &str) -> LabeledDataset {
        let bits = |s: &str| BitVec::from_bools(s.bytes().map(|b| b == b'1'));
        let set = AntecedentSet::from_named(
            labels.len(),
            caps.iter().enumerate().map(|(i, c)| (format!("a{i}"), bits(c))),
        )
        .unwrap();
        LabeledDataset::new(set, bits(labels)).unwrap()
    }

    #[test]
    fn perfect_single_rule() {
        let d = dataset(&["0110", "1100", "0011"], "1100");
        let r = solve(&d, &SolverConfig::new("0.01".parse().unwrap())).unwrap();
        assert_eq!(r.status, Status::CertifiedOptimal);
        assert_eq!(r.best_rule_list.prefix(), vec![1]);
        assert!((r.best_objective - 0.01).abs() < 1e-12);
        assert_eq!(r.optimality_gap, 0.0);
    }

    #[test]
    fn empty_list_can_be_optimal() {
        let d = dataset(&["1000", "0100"], "1110");
        let r = solve(&d, &SolverConfig::new("0.4".parse().unwrap())).unwrap();
        assert!(r.best_rule_list.is_empty());
        assert_eq!(r.best_objective, 0.25);
    }

    #[test]
    fn rejects_empty_antecedent_set() {
        let set = AntecedentSet::from_named(3, []).unwrap();
        let d = LabeledDataset::new(set, BitVec::zeros(3)).unwrap();
        assert_eq!(solve(&d, &SolverConfig::new(Lambda::ZERO)).unwrap_err(), Error::EmptyModel);
    }

    #[test]
    fn node_cap_reports_memory_status() {
        let d = dataset(&["11000000", "01100000", "00110000", "00011000", "00001100"], "10101010");
        let mut cfg = SolverConfig::new(Lambda::ZERO);
        cfg.max_nodes = Some(2);
        let r = solve(&d, &cfg).unwrap();
        assert_eq!(r.status, Status::IncompleteMemory);
        assert!(r.optimality_gap >= 0.0);
    }

    #[test]
    fn mining_lambda_warning() {
        let d = dataset(&["0110", "1100"], "1100");
        let mut cfg = SolverConfig::new("0.01".parse().unwrap());
        cfg.mining_lambda = Some("0.05".parse().unwrap());
        assert_eq!(solve(&d, &cfg).unwrap().warnings.len(), 1);
    }
}
