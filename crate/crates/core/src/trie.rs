//! Prefix tree of evaluated prefixes.
//!
//! Nodes live in a slab addressed by [`NodeId`]. Children form a singly
//! linked sibling list. A node is *held* while a queue entry or the solver's
//! current expansion refers to it; deleting a held node only marks it and
//! detaches it from its parent, and the holder frees it later.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write as _;

use crate::error::{Error, Result};
use crate::lambda::{RiskScale, ScaledRisk};
use crate::AntecedentId;

pub type NodeId = u32;

pub const ROOT: NodeId = 0;
const NIL: u32 = u32::MAX;

const PREDICTION: u8 = 1;
const DEFAULT_PREDICTION: u8 = 2;
const HELD: u8 = 4;
const MARKED: u8 = 8;
const FREE: u8 = 16;

/// Per-prefix counts supplied on insert.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct NodeMeta {
    pub prefix_mistakes: u32,
    pub default_mistakes: u32,
    /// Minority-mask samples not captured by the prefix.
    pub uncaptured_minority: u32,
    pub captured: u32,
    pub prediction: bool,
    pub default_prediction: bool,
}

#[derive(Debug, Clone)]
struct Node {
    parent: u32,
    first_child: u32,
    next_sibling: u32,
    prefix_mistakes: u32,
    default_mistakes: u32,
    uncaptured_minority: u32,
    captured: u32,
    antecedent: AntecedentId,
    depth: u16,
    flags: u8,
}

impl Node {
    fn has(&self, flag: u8) -> bool {
        self.flags & flag != 0
    }
}

/// Read-only view of one node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeView {
    pub id: NodeId,
    pub antecedent: Option<AntecedentId>,
    pub depth: usize,
    pub meta: NodeMeta,
    pub lower_bound: ScaledRisk,
    pub objective: ScaledRisk,
    pub held: bool,
    pub marked: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuditReport {
    pub reachable: usize,
    pub marked: usize,
    pub leaves: usize,
}

#[derive(Debug, Clone)]
pub struct Trie {
    nodes: Vec<Node>,
    free: Vec<u32>,
    live: usize,
    marked: usize,
    scale: RiskScale,
}

impl Trie {
    /// A trie holding only the root (empty prefix).
    pub fn new(scale: RiskScale, root: NodeMeta) -> Self {
        let mut t = Trie {
            nodes: Vec::new(),
            free: Vec::new(),
            live: 0,
            marked: 0,
            scale,
        };
        t.alloc(NIL, 0, 0, root);
        t
    }

    /// Allocated nodes, including marked ones awaiting release.
    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    pub fn marked_count(&self) -> usize {
        self.marked
    }

    pub fn scale(&self) -> &RiskScale {
        &self.scale
    }

    fn alloc(&mut self, parent: u32, antecedent: AntecedentId, depth: u16, meta: NodeMeta) -> NodeId {
        let mut flags = 0;
        if meta.prediction {
            flags |= PREDICTION;
        }
        if meta.default_prediction {
            flags |= DEFAULT_PREDICTION;
        }
        let node = Node {
            parent,
            first_child: NIL,
            next_sibling: NIL,
            prefix_mistakes: meta.prefix_mistakes,
            default_mistakes: meta.default_mistakes,
            uncaptured_minority: meta.uncaptured_minority,
            captured: meta.captured,
            antecedent,
            depth,
            flags,
        };
        self.live += 1;
        match self.free.pop() {
            Some(id) => {
                self.nodes[id as usize] = node;
                id
            }
            None => {
                self.nodes.push(node);
                (self.nodes.len() - 1) as NodeId
            }
        }
    }

    fn release_slot(&mut self, id: NodeId) {
        let n = &mut self.nodes[id as usize];
        debug_assert!(!n.has(FREE));
        if n.has(MARKED) {
            self.marked -= 1;
        }
        n.flags = FREE;
        n.parent = NIL;
        n.first_child = NIL;
        n.next_sibling = NIL;
        self.live -= 1;
        self.free.push(id);
    }

    fn node(&self, id: NodeId) -> &Node {
        let n = &self.nodes[id as usize];
        debug_assert!(!n.has(FREE), "node {id} is free");
        n
    }

    pub fn lower_bound(&self, id: NodeId) -> ScaledRisk {
        let n = self.node(id);
        self.scale.risk(n.prefix_mistakes as usize, n.depth as usize)
    }

    /// Equivalent-points bound of the node's default rule.
    pub fn b0(&self, id: NodeId) -> ScaledRisk {
        self.scale.count(self.node(id).uncaptured_minority as usize)
    }

    pub fn objective(&self, id: NodeId) -> ScaledRisk {
        let n = self.node(id);
        self.scale
            .risk((n.prefix_mistakes + n.default_mistakes) as usize, n.depth as usize)
    }

    pub fn depth(&self, id: NodeId) -> usize {
        self.node(id).depth as usize
    }

    pub fn antecedent(&self, id: NodeId) -> Option<AntecedentId> {
        (id != ROOT).then(|| self.node(id).antecedent)
    }

    /// Parent of a non-root node.
    pub fn parent(&self, id: NodeId) -> NodeId {
        self.node(id).parent
    }

    pub fn prefix_mistakes(&self, id: NodeId) -> usize {
        self.node(id).prefix_mistakes as usize
    }

    pub fn is_marked(&self, id: NodeId) -> bool {
        self.node(id).has(MARKED)
    }

    pub fn is_held(&self, id: NodeId) -> bool {
        self.node(id).has(HELD)
    }

    pub fn has_children(&self, id: NodeId) -> bool {
        self.node(id).first_child != NIL
    }

    pub fn view(&self, id: NodeId) -> NodeView {
        let n = self.node(id);
        NodeView {
            id,
            antecedent: self.antecedent(id),
            depth: n.depth as usize,
            meta: NodeMeta {
                prefix_mistakes: n.prefix_mistakes,
                default_mistakes: n.default_mistakes,
                uncaptured_minority: n.uncaptured_minority,
                captured: n.captured,
                prediction: n.has(PREDICTION),
                default_prediction: n.has(DEFAULT_PREDICTION),
            },
            lower_bound: self.lower_bound(id),
            objective: self.objective(id),
            held: n.has(HELD),
            marked: n.has(MARKED),
        }
    }

    /// Children of `id` in ascending antecedent order.
    pub fn children(&self, id: NodeId) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut c = self.node(id).first_child;
        while c != NIL {
            out.push(c);
            c = self.nodes[c as usize].next_sibling;
        }
        out.sort_unstable_by_key(|&c| self.nodes[c as usize].antecedent);
        out
    }

    fn child(&self, id: NodeId, antecedent: AntecedentId) -> Option<NodeId> {
        let mut c = self.node(id).first_child;
        while c != NIL {
            let n = &self.nodes[c as usize];
            if n.antecedent == antecedent {
                return Some(c);
            }
            c = n.next_sibling;
        }
        None
    }

    pub fn find(&self, path: &[AntecedentId]) -> Option<NodeId> {
        path.iter().try_fold(ROOT, |id, &a| self.child(id, a))
    }

    /// Antecedent ids from the root down to `id`.
    pub fn path(&self, id: NodeId) -> Vec<AntecedentId> {
        let mut out = Vec::with_capacity(self.depth(id));
        let mut cur = id;
        while cur != ROOT {
            let n = self.node(cur);
            out.push(n.antecedent);
            cur = n.parent;
            if cur == NIL {
                break;
            }
        }
        out.reverse();
        out
    }

    /// Inserts the prefix `path`, whose parent must already be present.
    pub fn insert(&mut self, path: &[AntecedentId], meta: NodeMeta) -> Result<NodeId> {
        let Some((&last, parent_path)) = path.split_last() else {
            return Err(Error::DuplicatePath(Vec::new()));
        };
        let parent = self
            .find(parent_path)
            .ok_or_else(|| Error::MissingParent(path.to_vec()))?;
        if self.child(parent, last).is_some() {
            return Err(Error::DuplicatePath(path.to_vec()));
        }
        if parent_path.contains(&last) {
            return Err(Error::DuplicateAntecedent(last));
        }
        Ok(self.insert_child(parent, last, meta))
    }

    /// Adds a child without checking for an existing sibling with the same
    /// antecedent; the solver never produces one.
    pub fn insert_child(&mut self, parent: NodeId, antecedent: AntecedentId, meta: NodeMeta) -> NodeId {
        let depth = self.node(parent).depth + 1;
        let id = self.alloc(parent, antecedent, depth, meta);
        let head = self.nodes[parent as usize].first_child;
        self.nodes[id as usize].next_sibling = head;
        self.nodes[parent as usize].first_child = id;
        id
    }

    pub fn hold(&mut self, id: NodeId) {
        self.nodes[id as usize].flags |= HELD;
    }

    /// Drops the hold on `id`. A marked node is freed; an unmarked node
    /// without children is pruned together with any ancestors left
    /// childless. Returns the number of nodes freed.
    pub fn release(&mut self, id: NodeId) -> usize {
        let n = &mut self.nodes[id as usize];
        n.flags &= !HELD;
        if n.has(MARKED) {
            self.release_slot(id);
            1
        } else if n.first_child == NIL {
            self.prune_upward(id)
        } else {
            0
        }
    }

    fn unlink(&mut self, id: NodeId) {
        let parent = self.nodes[id as usize].parent;
        if parent == NIL {
            return;
        }
        let next = self.nodes[id as usize].next_sibling;
        let mut c = self.nodes[parent as usize].first_child;
        if c == id {
            self.nodes[parent as usize].first_child = next;
        } else {
            while c != NIL {
                let n = self.nodes[c as usize].next_sibling;
                if n == id {
                    self.nodes[c as usize].next_sibling = next;
                    break;
                }
                c = n;
            }
        }
        self.nodes[id as usize].next_sibling = NIL;
    }

    /// Frees `id` and then each ancestor left with no children, stopping at
    /// the root or a held node.
    fn prune_upward(&mut self, id: NodeId) -> usize {
        let mut freed = 0;
        let mut cur = id;
        while cur != ROOT {
            let n = &self.nodes[cur as usize];
            if n.first_child != NIL || n.has(HELD) {
                break;
            }
            let parent = n.parent;
            self.unlink(cur);
            self.release_slot(cur);
            freed += 1;
            cur = parent;
        }
        freed
    }

    /// Frees or marks every node of an already unlinked subtree.
    fn drop_subtree(&mut self, id: NodeId) -> usize {
        let mut count = 0;
        let mut stack = alloc::vec![id];
        while let Some(cur) = stack.pop() {
            let mut c = self.nodes[cur as usize].first_child;
            while c != NIL {
                stack.push(c);
                c = self.nodes[c as usize].next_sibling;
            }
            let n = &mut self.nodes[cur as usize];
            n.first_child = NIL;
            n.next_sibling = NIL;
            count += 1;
            if n.has(HELD) {
                if !n.has(MARKED) {
                    n.flags |= MARKED;
                    n.parent = NIL;
                    self.marked += 1;
                }
            } else {
                self.release_slot(cur);
            }
        }
        count
    }

    /// Removes the node at `path` and its descendants, then prunes ancestors
    /// left childless. Held nodes are marked instead of freed. Returns the
    /// number of nodes removed or marked (0 for an unknown path).
    pub fn delete_subtree(&mut self, path: &[AntecedentId]) -> usize {
        match self.find(path) {
            Some(id) if id != ROOT => self.delete_node(id),
            _ => 0,
        }
    }

    pub fn delete_node(&mut self, id: NodeId) -> usize {
        let parent = self.nodes[id as usize].parent;
        self.unlink(id);
        let mut count = self.drop_subtree(id);
        if parent != NIL && parent != ROOT && self.nodes[parent as usize].first_child == NIL {
            count += self.prune_upward(parent);
        }
        count
    }

    /// Deletes every subtree rooted at a node with lower bound at least
    /// `threshold`, then any node left without children. Returns the number
    /// of nodes removed or marked.
    pub fn garbage_collect(&mut self, threshold: ScaledRisk) -> usize {
        if self.lower_bound(ROOT) >= threshold {
            let mut count = 0;
            for c in self.children(ROOT) {
                self.unlink(c);
                count += self.drop_subtree(c);
            }
            return count;
        }
        // Post-order walk; each frame tracks the last kept child and the
        // child under inspection.
        #[derive(Clone, Copy)]
        struct Frame {
            node: NodeId,
            prev: u32,
            cur: u32,
        }
        let mut count = 0;
        let mut stack = alloc::vec![Frame {
            node: ROOT,
            prev: NIL,
            cur: self.nodes[ROOT as usize].first_child,
        }];
        while let Some(&top) = stack.last() {
            if top.cur == NIL {
                stack.pop();
                let Some(parent) = stack.last_mut() else {
                    break;
                };
                let n = &self.nodes[top.node as usize];
                let next = n.next_sibling;
                if n.first_child == NIL && !n.has(HELD) {
                    let (prev, pnode) = (parent.prev, parent.node);
                    parent.cur = next;
                    self.unlink_after(prev, top.node, pnode);
                    self.release_slot(top.node);
                    count += 1;
                } else {
                    parent.prev = top.node;
                    parent.cur = next;
                }
                continue;
            }
            let child = top.cur;
            let next = self.nodes[child as usize].next_sibling;
            if self.lower_bound(child) >= threshold {
                self.unlink_after(top.prev, child, top.node);
                count += self.drop_subtree(child);
                stack.last_mut().expect("frame").cur = next;
            } else {
                stack.push(Frame {
                    node: child,
                    prev: NIL,
                    cur: self.nodes[child as usize].first_child,
                });
            }
        }
        count
    }

    /// Unlinks `id` given its predecessor in the sibling list (`NIL` when it
    /// is the first child of `parent`).
    fn unlink_after(&mut self, prev: u32, id: NodeId, parent: NodeId) {
        let next = self.nodes[id as usize].next_sibling;
        if prev == NIL {
            self.nodes[parent as usize].first_child = next;
        } else {
            self.nodes[prev as usize].next_sibling = next;
        }
        self.nodes[id as usize].next_sibling = NIL;
    }

    /// Walks the reachable tree and checks structural invariants.
    pub fn audit(&self) -> core::result::Result<AuditReport, String> {
        let mut reachable = 0;
        let mut leaves = 0;
        let lambda = self.scale.lambda_units();
        let mut stack = alloc::vec![(ROOT, Vec::<AntecedentId>::new())];
        while let Some((id, path)) = stack.pop() {
            reachable += 1;
            let n = self.node(id);
            if n.has(MARKED) {
                return Err(format!("reachable node {path:?} is marked"));
            }
            if n.first_child == NIL {
                leaves += 1;
                if id != ROOT && !n.has(HELD) {
                    return Err(format!("leaf {path:?} is not held"));
                }
            }
            for c in self.children(id) {
                let cn = &self.nodes[c as usize];
                if cn.parent != id || cn.depth != n.depth + 1 {
                    return Err(format!("bad link below {path:?}"));
                }
                if path.contains(&cn.antecedent) {
                    return Err(format!("repeated antecedent {} below {path:?}", cn.antecedent));
                }
                if self.lower_bound(c).0 < self.lower_bound(id).0 + lambda {
                    return Err(format!("child bound below parent bound + lambda at {path:?}"));
                }
                let mut p = path.clone();
                p.push(cn.antecedent);
                stack.push((c, p));
            }
        }
        if reachable + self.marked != self.live {
            return Err(format!(
                "{} reachable + {} marked != {} allocated",
                reachable, self.marked, self.live
            ));
        }
        Ok(AuditReport {
            reachable,
            marked: self.marked,
            leaves,
        })
    }

    /// Depth-first listing, one `path, K, bound, objective, marker` line per
    /// reachable node.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let mut stack = alloc::vec![ROOT];
        while let Some(id) = stack.pop() {
            let v = self.view(id);
            let path: Vec<String> = self.path(id).iter().map(|a| format!("{a}")).collect();
            let marker = if v.marked {
                "marked"
            } else if v.held {
                "held"
            } else {
                "-"
            };
            let _ = writeln!(
                out,
                "[{}], {}, {:.6}, {:.6}, {}",
                path.join(" "),
                v.depth,
                self.scale.to_f64(v.lower_bound),
                self.scale.to_f64(v.objective),
                marker
            );
            stack.extend(self.children(id).into_iter().rev());
        }
        out
    }
}
