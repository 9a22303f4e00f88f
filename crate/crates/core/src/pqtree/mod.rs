//! PQ-trees over unit labels.
//!
//! A P-node lets its children appear in any order; a Q-node only in the stored
//! order or its exact reverse. The frontier of a tree is its left-to-right
//! leaf sequence, and the frontier set is everything reachable by admissible
//! reorderings.

mod canonical;
mod enumerate;
mod render;

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::Label;

#[cfg(test)]
pub(crate) use enumerate::permutations as all_orderings;
pub use enumerate::DEFAULT_ENUMERATION_CAP;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("internal node has no children")]
    EmptyNode,
    #[error("leaf label {0} appears more than once")]
    DuplicateLabel(Label),
    #[error("{0} frontiers exceed the enumeration cap of {1}")]
    Capacity(FrontierCount, usize),
    #[error("sequence is not a permutation of the tree's leaves")]
    NotAPermutation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Leaf,
    P,
    Q,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PQNode {
    Leaf(Label),
    P(Vec<PQNode>),
    Q(Vec<PQNode>),
}

impl PQNode {
    pub fn leaf(label: Label) -> Self {
        PQNode::Leaf(label)
    }

    pub fn p(children: impl IntoIterator<Item = PQNode>) -> Self {
        PQNode::P(children.into_iter().collect())
    }

    pub fn q(children: impl IntoIterator<Item = PQNode>) -> Self {
        PQNode::Q(children.into_iter().collect())
    }

    /// P-node whose children are all leaves.
    pub fn p_leaves(labels: impl IntoIterator<Item = Label>) -> Self {
        PQNode::P(labels.into_iter().map(PQNode::Leaf).collect())
    }

    /// Q-node whose children are all leaves.
    pub fn q_leaves(labels: impl IntoIterator<Item = Label>) -> Self {
        PQNode::Q(labels.into_iter().map(PQNode::Leaf).collect())
    }

    pub fn kind(&self) -> NodeKind {
        match self {
            PQNode::Leaf(_) => NodeKind::Leaf,
            PQNode::P(_) => NodeKind::P,
            PQNode::Q(_) => NodeKind::Q,
        }
    }

    pub fn children(&self) -> &[PQNode] {
        match self {
            PQNode::Leaf(_) => &[],
            PQNode::P(c) | PQNode::Q(c) => c,
        }
    }

    pub fn label(&self) -> Option<Label> {
        match self {
            PQNode::Leaf(l) => Some(*l),
            _ => None,
        }
    }

    /// Leaf labels in left-to-right order.
    pub fn frontier(&self) -> Vec<Label> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Label>) {
        match self {
            PQNode::Leaf(l) => out.push(*l),
            PQNode::P(c) | PQNode::Q(c) => c.iter().for_each(|n| n.collect_leaves(out)),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            PQNode::Leaf(_) => 1,
            PQNode::P(c) | PQNode::Q(c) => c.iter().map(PQNode::leaf_count).sum(),
        }
    }

    pub(crate) fn min_label(&self) -> Label {
        match self {
            PQNode::Leaf(l) => *l,
            PQNode::P(c) | PQNode::Q(c) => {
                c.iter().map(PQNode::min_label).min().unwrap_or(Label::MAX)
            }
        }
    }
}

/// Number of frontiers of a tree. Arbitrary precision.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FrontierCount(pub BigUint);

impl FrontierCount {
    pub fn value(&self) -> &BigUint {
        &self.0
    }
}

impl fmt::Display for FrontierCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl From<u64> for FrontierCount {
    fn from(v: u64) -> Self {
        FrontierCount(BigUint::from(v))
    }
}

/// A validated PQ-tree: internal nodes are non-empty and leaf labels distinct.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PQTree {
    root: PQNode,
    universe: Vec<Label>,
}

impl PQTree {
    pub fn new(root: PQNode) -> Result<Self, TreeError> {
        fn walk(node: &PQNode, seen: &mut BTreeSet<Label>) -> Result<(), TreeError> {
            match node {
                PQNode::Leaf(l) => {
                    if !seen.insert(*l) {
                        return Err(TreeError::DuplicateLabel(*l));
                    }
                }
                PQNode::P(c) | PQNode::Q(c) => {
                    if c.is_empty() {
                        return Err(TreeError::EmptyNode);
                    }
                    for child in c {
                        walk(child, seen)?;
                    }
                }
            }
            Ok(())
        }
        let mut seen = BTreeSet::new();
        walk(&root, &mut seen)?;
        Ok(Self {
            root,
            universe: seen.into_iter().collect(),
        })
    }

    pub fn leaf(label: Label) -> Self {
        Self {
            root: PQNode::Leaf(label),
            universe: alloc::vec![label],
        }
    }

    pub fn root(&self) -> &PQNode {
        &self.root
    }

    pub fn into_root(self) -> PQNode {
        self.root
    }

    /// Leaf labels, ascending.
    pub fn universe(&self) -> &[Label] {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.universe.len()
    }

    pub fn is_empty(&self) -> bool {
        self.universe.is_empty()
    }

    /// The displayed frontier: leaf labels read left to right.
    pub fn frontier(&self) -> Vec<Label> {
        self.root.frontier()
    }

    /// Whether `perm` is one of the tree's frontiers.
    ///
    /// Decided structurally: every child's leaves must occupy a contiguous
    /// run of `perm`, and the runs under a Q-node must appear in stored or
    /// reversed order. Never enumerates, so it works for any tree size.
    pub fn contains(&self, perm: &[Label]) -> Result<bool, TreeError> {
        if perm.len() != self.universe.len() {
            return Err(TreeError::NotAPermutation);
        }
        let mut sorted = perm.to_vec();
        sorted.sort_unstable();
        if sorted != self.universe {
            return Err(TreeError::NotAPermutation);
        }
        let position = |label: Label| {
            self.universe
                .binary_search(&label)
                .expect("label in universe")
        };
        let mut pos_of = alloc::vec![0usize; perm.len()];
        for (pos, &label) in perm.iter().enumerate() {
            pos_of[position(label)] = pos;
        }
        Ok(span(&self.root, &|l| pos_of[position(l)]).is_some())
    }
}

/// `(first, last)` position of a subtree's leaves when they form an admissible
/// contiguous run, `None` otherwise.
fn span(node: &PQNode, pos: &dyn Fn(Label) -> usize) -> Option<(usize, usize)> {
    match node {
        PQNode::Leaf(l) => {
            let p = pos(*l);
            Some((p, p))
        }
        PQNode::P(children) | PQNode::Q(children) => {
            let mut runs = Vec::with_capacity(children.len());
            let mut leaves = 0;
            for child in children {
                let run = span(child, pos)?;
                if run.1 - run.0 + 1 != child.leaf_count() {
                    return None;
                }
                leaves += child.leaf_count();
                runs.push(run);
            }
            let first = runs.iter().map(|r| r.0).min()?;
            let last = runs.iter().map(|r| r.1).max()?;
            if last - first + 1 != leaves {
                return None;
            }
            if let PQNode::Q(_) = node {
                let forward = runs.windows(2).all(|w| w[0].1 < w[1].0);
                let backward = runs.windows(2).all(|w| w[0].0 > w[1].1);
                if !(forward || backward) {
                    return None;
                }
            }
            Some((first, last))
        }
    }
}
