//! Frontier ordering.

use alloc::collections::BinaryHeap;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::lambda::ScaledRisk;
use crate::trie::{NodeId, Trie};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SearchPolicy {
    Bfs,
    Dfs,
    /// Prefix lower bound plus the equivalent-points bound.
    #[default]
    LowerBound,
    Objective,
    Curiosity,
}

impl SearchPolicy {
    pub const ALL: [SearchPolicy; 5] = [
        SearchPolicy::Bfs,
        SearchPolicy::Dfs,
        SearchPolicy::LowerBound,
        SearchPolicy::Objective,
        SearchPolicy::Curiosity,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SearchPolicy::Bfs => "bfs",
            SearchPolicy::Dfs => "dfs",
            SearchPolicy::LowerBound => "lower_bound",
            SearchPolicy::Objective => "objective",
            SearchPolicy::Curiosity => "curiosity",
        }
    }
}

impl fmt::Display for SearchPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SearchPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SearchPolicy::ALL
            .into_iter()
            .find(|p| p.name() == s.replace('-', "_"))
            .ok_or_else(|| Error::InvalidArgument(alloc::format!("unknown search policy `{s}`")))
    }
}

#[derive(Debug, Clone, Copy)]
struct Entry {
    key: f64,
    tiebreak: u64,
    node: NodeId,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    // Reversed so the max-heap pops the smallest (key, tiebreak).
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .key
            .total_cmp(&self.key)
            .then(other.tiebreak.cmp(&self.tiebreak))
    }
}

/// Priority queue of trie leaves. Entries hold their node (see
/// [`Trie::hold`]); deleted nodes stay in the heap until popped.
#[derive(Debug, Clone)]
pub struct Queue {
    heap: BinaryHeap<Entry>,
    counter: u64,
    policy: SearchPolicy,
}

impl Queue {
    pub fn new(policy: SearchPolicy) -> Self {
        Queue {
            heap: BinaryHeap::new(),
            counter: 0,
            policy,
        }
    }

    pub fn policy(&self) -> SearchPolicy {
        self.policy
    }

    pub fn priority(&self, trie: &Trie, node: NodeId) -> f64 {
        let depth = trie.depth(node) as f64;
        match self.policy {
            SearchPolicy::Bfs => depth,
            SearchPolicy::Dfs => -depth,
            SearchPolicy::LowerBound => (trie.lower_bound(node) + trie.b0(node)).0 as f64,
            SearchPolicy::Objective => trie.objective(node).0 as f64,
            SearchPolicy::Curiosity => {
                let captured = trie.view(node).meta.captured;
                crate::bounds::curiosity(trie.lower_bound(node), captured as usize, trie.scale()).unwrap_or(0.0)
            }
        }
    }

    pub fn push(&mut self, trie: &mut Trie, node: NodeId) {
        let key = self.priority(trie, node);
        trie.hold(node);
        self.heap.push(Entry {
            key,
            tiebreak: self.counter,
            node,
        });
        self.counter += 1;
    }

    /// Pops the next unmarked leaf, freeing marked ones on the way. The
    /// returned node is still held; the caller releases it.
    pub fn pop_live(&mut self, trie: &mut Trie) -> Option<NodeId> {
        while let Some(e) = self.heap.pop() {
            if trie.is_marked(e.node) {
                trie.release(e.node);
            } else {
                return Some(e.node);
            }
        }
        None
    }

    /// Physical size, including entries whose node was deleted.
    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    /// Entries whose node is still live. Valid between expansions, when
    /// every marked node is referenced by exactly one queue entry.
    pub fn logical_len(&self, trie: &Trie) -> usize {
        self.heap.len() - trie.marked_count()
    }

    /// Live entries, in no particular order.
    pub fn live_nodes<'a>(&'a self, trie: &'a Trie) -> impl Iterator<Item = NodeId> + 'a {
        self.heap
            .iter()
            .map(|e| e.node)
            .filter(move |&n| !trie.is_marked(n))
    }

    /// Smallest `b + b0` among live entries.
    pub fn min_bound(&self, trie: &Trie) -> Option<ScaledRisk> {
        self.live_nodes(trie).map(|n| trie.lower_bound(n) + trie.b0(n)).min()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda::RiskScale;
    use crate::trie::NodeMeta;

    fn trie() -> Trie {
        Trie::new(RiskScale::new(10, "0.1".parse().unwrap()).unwrap(), NodeMeta::default())
    }

    fn meta(m: u32) -> NodeMeta {
        NodeMeta {
            prefix_mistakes: m,
            captured: 5,
            ..NodeMeta::default()
        }
    }

    #[test]
    fn bfs_is_fifo_within_depth() {
        let mut t = trie();
        let mut q = Queue::new(SearchPolicy::Bfs);
        let a = t.insert(&[1], meta(0)).unwrap();
        let b = t.insert(&[0], meta(0)).unwrap();
        let c = t.insert(&[1, 0], meta(0)).unwrap();
        q.push(&mut t, c);
        q.push(&mut t, a);
        q.push(&mut t, b);
        assert_eq!(q.pop_live(&mut t), Some(a));
        assert_eq!(q.pop_live(&mut t), Some(b));
        assert_eq!(q.pop_live(&mut t), Some(c));
        assert_eq!(q.pop_live(&mut t), None);
    }

    #[test]
    fn dfs_and_bound_orders() {
        let mut t = trie();
        let a = t.insert(&[1], meta(1)).unwrap();
        let b = t.insert(&[2], meta(2)).unwrap();
        let c = t.insert(&[1, 3], meta(1)).unwrap();
        let mut q = Queue::new(SearchPolicy::Dfs);
        q.push(&mut t, a);
        q.push(&mut t, c);
        assert_eq!(q.pop_live(&mut t), Some(c));
        let mut q = Queue::new(SearchPolicy::LowerBound);
        q.push(&mut t, b);
        q.push(&mut t, a);
        assert_eq!(q.pop_live(&mut t), Some(a));
    }

    #[test]
    fn marked_entries_are_skipped_and_freed() {
        let mut t = trie();
        let mut q = Queue::new(SearchPolicy::Bfs);
        let a = t.insert(&[1], meta(0)).unwrap();
        q.push(&mut t, a);
        t.delete_subtree(&[1]);
        assert_eq!((q.len(), q.logical_len(&t)), (1, 0));
        assert_eq!(q.pop_live(&mut t), None);
        assert_eq!(t.len(), 1);

        let a = t.insert(&[1], meta(0)).unwrap();
        let b = t.insert(&[2], meta(0)).unwrap();
        q.push(&mut t, a);
        q.push(&mut t, b);
        t.delete_subtree(&[1]);
        assert_eq!(q.pop_live(&mut t), Some(b));
        assert_eq!(t.len(), 2);
    }

    #[test]
    fn policy_names_round_trip() {
        for p in SearchPolicy::ALL {
            assert_eq!(p.name().parse::<SearchPolicy>().unwrap(), p);
        }
        assert_eq!("lower-bound".parse::<SearchPolicy>().unwrap(), SearchPolicy::LowerBound);
        assert!("stochastic".parse::<SearchPolicy>().is_err());
    }
}
