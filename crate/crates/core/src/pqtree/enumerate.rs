use alloc::vec::Vec;

use num_bigint::BigUint;

use super::{FrontierCount, PQNode, PQTree, TreeError};
use crate::Label;

/// Largest frontier set [`PQTree::enumerate_frontiers`] materializes by default.
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

impl PQTree {
    /// Number of frontiers: `k!` per P-node with `k` children, 2 per Q-node
    /// with at least two children.
    pub fn count_frontiers(&self) -> FrontierCount {
        FrontierCount(node_count(self.root()))
    }

    /// Every frontier exactly once, in lexicographic order.
    ///
    /// Fails with [`TreeError::Capacity`] carrying the exact count when it
    /// exceeds `cap`.
    pub fn enumerate_frontiers(&self, cap: usize) -> Result<Vec<Vec<Label>>, TreeError> {
        let count = self.count_frontiers();
        if count.0 > BigUint::from(cap) {
            return Err(TreeError::Capacity(count, cap));
        }
        let mut all = node_frontiers(self.root());
        all.sort_unstable();
        debug_assert!(all.windows(2).all(|w| w[0] != w[1]));
        Ok(all)
    }
}

fn node_count(node: &PQNode) -> BigUint {
    match node {
        PQNode::Leaf(_) => BigUint::from(1u32),
        PQNode::P(children) => {
            let mut n = factorial(children.len());
            for c in children {
                n *= node_count(c);
            }
            n
        }
        PQNode::Q(children) => {
            let mut n = BigUint::from(if children.len() >= 2 { 2u32 } else { 1 });
            for c in children {
                n *= node_count(c);
            }
            n
        }
    }
}

pub(crate) fn factorial(k: usize) -> BigUint {
    (1..=k as u64).fold(BigUint::from(1u32), |acc, i| acc * i)
}

fn node_frontiers(node: &PQNode) -> Vec<Vec<Label>> {
    match node {
        PQNode::Leaf(l) => alloc::vec![alloc::vec![*l]],
        PQNode::P(children) => {
            let parts: Vec<_> = children.iter().map(node_frontiers).collect();
            let mut out = Vec::new();
            for order in permutations(children.len()) {
                product_into(&parts, &order, &mut out);
            }
            out
        }
        PQNode::Q(children) => {
            let parts: Vec<_> = children.iter().map(node_frontiers).collect();
            let forward: Vec<usize> = (0..children.len()).collect();
            let mut out = Vec::new();
            product_into(&parts, &forward, &mut out);
            if children.len() >= 2 {
                let backward: Vec<usize> = forward.iter().rev().copied().collect();
                product_into(&parts, &backward, &mut out);
            }
            out
        }
    }
}

/// Appends every concatenation `parts[order[0]][_] ++ parts[order[1]][_] ++ …`.
fn product_into(parts: &[Vec<Vec<Label>>], order: &[usize], out: &mut Vec<Vec<Label>>) {
    let mut acc: Vec<Vec<Label>> = alloc::vec![Vec::new()];
    for &i in order {
        let mut next = Vec::with_capacity(acc.len() * parts[i].len());
        for prefix in &acc {
            for tail in &parts[i] {
                let mut seq = prefix.clone();
                seq.extend_from_slice(tail);
                next.push(seq);
            }
        }
        acc = next;
    }
    out.extend(acc);
}

/// All orderings of `0..k`, lexicographic.
pub(crate) fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(
        &mut Vec::with_capacity(k),
        &mut alloc::vec![false; k],
        &mut out,
    );
    out
}
