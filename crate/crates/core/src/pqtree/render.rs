use alloc::string::String;
use core::fmt::Write;

use super::{PQNode, PQTree};

impl PQTree {
    /// Graphviz source: P-nodes are circles, Q-nodes boxes, leaves triangles.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph pqtree {\n  ordering=out;\n");
        let mut next = 0usize;
        dot_node(self.root(), &mut next, &mut out);
        out.push_str("}\n");
        out
    }

    /// Indented outline, two spaces per level.
    pub fn to_ascii(&self) -> String {
        let mut out = String::new();
        ascii_node(self.root(), 0, &mut out);
        out
    }
}

fn dot_node(node: &PQNode, next: &mut usize, out: &mut String) -> usize {
    let id = *next;
    *next += 1;
    let _ = match node {
        PQNode::Leaf(l) => writeln!(out, "  n{id} [shape=triangle, label=\"{l}\"];"),
        PQNode::P(_) => writeln!(out, "  n{id} [shape=circle, label=\"P\"];"),
        PQNode::Q(_) => writeln!(out, "  n{id} [shape=box, label=\"Q\"];"),
    };
    for child in node.children() {
        let cid = dot_node(child, next, out);
        let _ = writeln!(out, "  n{id} -- n{cid};");
    }
    id
}

fn ascii_node(node: &PQNode, depth: usize, out: &mut String) {
    for _ in 0..depth {
        out.push_str("  ");
    }
    let _ = match node {
        PQNode::Leaf(l) => writeln!(out, "{l}"),
        PQNode::P(_) => writeln!(out, "P"),
        PQNode::Q(_) => writeln!(out, "Q"),
    };
    for child in node.children() {
        ascii_node(child, depth + 1, out);
    }
}
