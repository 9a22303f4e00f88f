use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigUint;

use super::{PQNode, PQTree};

/// [`PQTree::equivalent`] compares full frontier sets when both counts are at most this.
const ENUMERATION_FALLBACK: u32 = 10_000;

impl PQTree {
    /// Same frontier set, normalized shape: unary nodes spliced out, 2-child
    /// Q-nodes turned into P-nodes, P-children sorted by smallest leaf label.
    /// Q-node orientation is kept.
    pub fn canonicalize(&self) -> PQTree {
        PQTree {
            root: canonical_node(self.root()),
            universe: self.universe().to_vec(),
        }
    }

    /// True iff both trees encode the same set of frontiers.
    pub fn equivalent(&self, other: &PQTree) -> bool {
        if self.universe() != other.universe() {
            return false;
        }
        if oriented(&canonical_node(self.root())) == oriented(&canonical_node(other.root())) {
            return true;
        }
        let limit = BigUint::from(ENUMERATION_FALLBACK);
        let (a, b) = (self.count_frontiers(), other.count_frontiers());
        if a != b {
            return false;
        }
        if a.0 > limit {
            return false;
        }
        let cap = ENUMERATION_FALLBACK as usize;
        match (
            self.enumerate_frontiers(cap),
            other.enumerate_frontiers(cap),
        ) {
            (Ok(x), Ok(y)) => {
                let x: BTreeSet<_> = x.into_iter().collect();
                let y: BTreeSet<_> = y.into_iter().collect();
                x == y
            }
            _ => false,
        }
    }
}

pub(crate) fn canonical_node(node: &PQNode) -> PQNode {
    match node {
        PQNode::Leaf(l) => PQNode::Leaf(*l),
        PQNode::P(children) | PQNode::Q(children) => {
            let mut kids: Vec<PQNode> = children.iter().map(canonical_node).collect();
            if kids.len() == 1 {
                return kids.pop().expect("one child");
            }
            let is_p = matches!(node, PQNode::P(_)) || kids.len() == 2;
            if is_p {
                kids.sort_by_key(PQNode::min_label);
                PQNode::P(kids)
            } else {
                PQNode::Q(kids)
            }
        }
    }
}

/// Fixes every Q-node's direction so its first child holds a smaller label
/// than its last. Two canonical trees are equivalent iff their oriented forms
/// are equal.
pub(crate) fn oriented(node: &PQNode) -> PQNode {
    match node {
        PQNode::Leaf(l) => PQNode::Leaf(*l),
        PQNode::P(c) => PQNode::P(c.iter().map(oriented).collect()),
        PQNode::Q(c) => {
            let mut kids: Vec<PQNode> = c.iter().map(oriented).collect();
            if kids.first().map(PQNode::min_label) > kids.last().map(PQNode::min_label) {
                kids.reverse();
            }
            PQNode::Q(kids)
        }
    }
}
