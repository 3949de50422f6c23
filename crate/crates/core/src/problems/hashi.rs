use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{invalid, ProblemError};

fn default_max_edges() -> usize {
    2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct HashiNode {
    pub row: usize,
    pub col: usize,
    pub degree: usize,
}

/// Islands on a grid; two islands can be bridged when they share a row or
/// a column with no island strictly between them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct HashiInstance {
    pub nodes: Vec<HashiNode>,
    #[serde(default = "default_max_edges")]
    pub max_edges: usize,
}

impl HashiInstance {
    pub fn new(nodes: Vec<(usize, usize, usize)>) -> Result<Self, ProblemError> {
        let inst = Self {
            nodes: nodes
                .into_iter()
                .map(|(row, col, degree)| HashiNode { row, col, degree })
                .collect(),
            max_edges: default_max_edges(),
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<(), ProblemError> {
        if self.max_edges == 0 {
            return Err(invalid("hashi", "maximum edge multiplicity must be at least 1"));
        }
        let mut seen = BTreeSet::new();
        for n in &self.nodes {
            if !seen.insert((n.row, n.col)) {
                return Err(invalid("hashi", format!("two nodes at ({}, {})", n.row, n.col)));
            }
            if n.degree == 0 || n.degree > 4 * self.max_edges {
                return Err(invalid(
                    "hashi",
                    format!("node degree {} outside [1, {}]", n.degree, 4 * self.max_edges),
                ));
            }
        }
        Ok(())
    }

    /// Connectable node pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn candidate_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for i in 0..self.nodes.len() {
            for j in i + 1..self.nodes.len() {
                if self.connectable(i, j) {
                    edges.push((i, j));
                }
            }
        }
        edges
    }

    pub fn connectable(&self, i: usize, j: usize) -> bool {
        if i == j {
            return false;
        }
        let (a, b) = (&self.nodes[i], &self.nodes[j]);
        if a.row == b.row {
            let (lo, hi) = (a.col.min(b.col), a.col.max(b.col));
            !self.nodes.iter().any(|n| n.row == a.row && lo < n.col && n.col < hi)
        } else if a.col == b.col {
            let (lo, hi) = (a.row.min(b.row), a.row.max(b.row));
            !self.nodes.iter().any(|n| n.col == a.col && lo < n.row && n.row < hi)
        } else {
            false
        }
    }

    /// Whether the bridges `e` and `f` intersect in their interiors: one must
    /// be horizontal, the other vertical, and they must properly cross.
    pub fn edges_cross(&self, e: (usize, usize), f: (usize, usize)) -> bool {
        let seg = |(i, j): (usize, usize)| {
            let (a, b) = (&self.nodes[i], &self.nodes[j]);
            ((a.row, a.col), (b.row, b.col))
        };
        let (e0, e1) = seg(e);
        let (f0, f1) = seg(f);
        let horizontal = |p: (usize, usize), q: (usize, usize)| p.0 == q.0;
        let crosses = |h0: (usize, usize), h1: (usize, usize), v0: (usize, usize), v1: (usize, usize)| {
            let row = h0.0;
            let (c_lo, c_hi) = (h0.1.min(h1.1), h0.1.max(h1.1));
            let col = v0.1;
            let (r_lo, r_hi) = (v0.0.min(v1.0), v0.0.max(v1.0));
            r_lo < row && row < r_hi && c_lo < col && col < c_hi
        };
        match (horizontal(e0, e1), horizontal(f0, f1)) {
            (true, false) => crosses(e0, e1, f0, f1),
            (false, true) => crosses(f0, f1, e0, e1),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct HashiEdge {
    pub a: usize,
    pub b: usize,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct HashiSolution {
    pub edges: Vec<HashiEdge>,
}
