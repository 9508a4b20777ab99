//! Overlap of `K6 ∪ K6` copies with the complete bipartite 3-graph on
//! `6 + 6` vertices.

use serde::{Deserialize, Serialize};

use crate::graph::{EdgeSet, Hypergraph3};

/// Vertices `0..6` form one side, `6..12` the other.
pub const SIDE: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteReport {
    /// Edges meeting both sides.
    pub bip_edges: usize,
    /// Splits of the 12 vertices into two labelled-free halves.
    pub splits: usize,
    pub max_overlap: usize,
    pub max_count: usize,
    /// Pairs of maximum overlaps with no common edge.
    pub disjoint_pairs: usize,
    /// Three pairwise edge-disjoint maximum overlaps exist.
    pub disjoint_triple: bool,
}

impl BipartiteReport {
    /// The conclusion the Ramsey step relies on.
    pub fn passes(&self) -> bool {
        self.splits == 462 && self.max_overlap == 36 && !self.disjoint_triple
    }
}

/// The complete bipartite 3-graph `B(6,6)`.
pub fn bipartite_host() -> Hypergraph3 {
    crate::constructions::build(crate::constructions::Tag::Bip6x6, 2 * SIDE).unwrap()
}

fn clique_on(mask: u16) -> EdgeSet {
    let mut s = EdgeSet::new();
    let vs: Vec<usize> = (0..2 * SIDE).filter(|v| mask >> v & 1 == 1).collect();
    for (i, &a) in vs.iter().enumerate() {
        for (j, &b) in vs.iter().enumerate().skip(i + 1) {
            for &c in &vs[j + 1..] {
                s.insert(crate::graph::Edge::new(a, b, c).unwrap().rank());
            }
        }
    }
    s
}

/// Every copy of `K6 ∪ K6` on the 12 vertices, intersected with `B(6,6)`.
pub fn overlaps() -> Vec<(u16, EdgeSet)> {
    let bip = bipartite_host();
    let full: u16 = (1 << (2 * SIDE)) - 1;
    let mut out = Vec::new();
    for a in 0u16..=full {
        // vertex 0 always lies in the first half
        if a & 1 == 0 || a.count_ones() as usize != SIDE {
            continue;
        }
        let copy = clique_on(a).union(&clique_on(full & !a));
        out.push((a, copy.intersection(bip.edge_set())));
    }
    out
}

/// Scans all 462 splits and looks for three pairwise edge-disjoint maximum
/// overlaps.
pub fn bipartite_check() -> BipartiteReport {
    let bip = bipartite_host();
    let all = overlaps();
    let max_overlap = all.iter().map(|(_, s)| s.len()).max().unwrap_or(0);
    let best: Vec<&EdgeSet> = all
        .iter()
        .filter(|(_, s)| s.len() == max_overlap)
        .map(|(_, s)| s)
        .collect();
    let k = best.len();
    let mut adj = vec![vec![false; k]; k];
    let mut disjoint_pairs = 0;
    for i in 0..k {
        for j in i + 1..k {
            if best[i].is_disjoint(best[j]) {
                adj[i][j] = true;
                adj[j][i] = true;
                disjoint_pairs += 1;
            }
        }
    }
    let disjoint_triple = (0..k).any(|i| {
        (i + 1..k).any(|j| adj[i][j] && (j + 1..k).any(|l| adj[i][l] && adj[j][l]))
    });
    BipartiteReport {
        bip_edges: bip.edge_count(),
        splits: all.len(),
        max_overlap,
        max_count: k,
        disjoint_pairs,
        disjoint_triple,
    }
}
