//! Canonical forms and isomorphism testing.
//!
//! The canonical form of a graph is the lexicographically least edge bitset
//! (read from colex slot 0 upward) over all labelings that respect an
//! iterated degree refinement. Candidates for each label are restricted to
//! the refinement cell owning that label, twins (vertices whose transposition
//! is an automorphism) are tried once, and partial labelings whose settled
//! slots already compare greater than the incumbent are cut.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{binom, EdgeSet, Hypergraph3};

/// Label-invariant fingerprint: equal keys iff isomorphic graphs.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct CanonicalKey {
    n: u8,
    bits: EdgeSet,
}

impl CanonicalKey {
    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn edge_count(&self) -> usize {
        self.bits.len()
    }

    /// The canonical representative itself.
    pub fn graph(&self) -> Hypergraph3 {
        Hypergraph3::from_edge_set(self.n as usize, self.bits)
    }
}

impl Ord for CanonicalKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.bits.cmp_prefix(&other.bits, crate::graph::MAX_SLOTS))
    }
}

impl PartialOrd for CanonicalKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.n, self.bits.to_hex())
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for CanonicalKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            line: 1,
            msg: format!("malformed canonical key {s:?}"),
        };
        let (n, hex) = s.split_once(':').ok_or_else(bad)?;
        let n: usize = n.parse().map_err(|_| bad())?;
        if !(1..=crate::graph::MAX_VERTICES).contains(&n) {
            return Err(bad());
        }
        let bits = EdgeSet::from_hex(hex).ok_or_else(bad)?;
        if bits.iter().any(|slot| slot >= binom(n, 3)) {
            return Err(bad());
        }
        Ok(CanonicalKey { n: n as u8, bits })
    }
}

impl Serialize for CanonicalKey {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CanonicalKey {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Iterated refinement of vertex colors by degree and by the colors of
/// co-members in each incident edge. Colors are ranks of sorted signatures,
/// so equal graphs up to relabeling get equal color multisets.
pub fn refine_colors(g: &Hypergraph3) -> Vec<usize> {
    let n = g.n();
    let edges: Vec<[usize; 3]> = g.edges().map(|e| e.vertices()).collect();
    let mut color = g.degrees();
    let mut classes = count_distinct(&color);
    loop {
        let mut sigs: Vec<(usize, Vec<(usize, usize)>)> = (0..n)
            .map(|v| (color[v], Vec::new()))
            .collect();
        for e in &edges {
            for i in 0..3 {
                let (a, b) = (color[e[(i + 1) % 3]], color[e[(i + 2) % 3]]);
                sigs[e[i]].1.push((a.min(b), a.max(b)));
            }
        }
        for s in sigs.iter_mut() {
            s.1.sort_unstable();
        }
        let mut sorted: Vec<&(usize, Vec<(usize, usize)>)> = sigs.iter().collect();
        sorted.sort();
        sorted.dedup();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| sorted.binary_search(&s).unwrap())
            .collect();
        let next_classes = sorted.len();
        color = next;
        if next_classes == classes {
            return color;
        }
        classes = next_classes;
    }
}

fn count_distinct(v: &[usize]) -> usize {
    let mut s = v.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len()
}

struct Canonizer<'a> {
    n: usize,
    adj: &'a EdgeSet,
    /// `slot_cell[k]` = color that label `k` must carry.
    slot_cell: Vec<usize>,
    color: Vec<usize>,
    twin_rep: Vec<usize>,
    labels: Vec<usize>,
    used: Vec<bool>,
    best: Option<(EdgeSet, Vec<usize>)>,
}

impl Canonizer<'_> {
    fn has(&self, a: usize, b: usize, c: usize) -> bool {
        let mut t = [a, b, c];
        t.sort_unstable();
        self.adj
            .contains(binom(t[2], 3) + binom(t[1], 2) + t[0])
    }

    fn search(&mut self, k: usize, cur: EdgeSet) {
        if k == self.n {
            let better = match &self.best {
                None => true,
                Some((b, _)) => cur.cmp_prefix(b, binom(self.n, 3)) == Ordering::Less,
            };
            if better {
                self.best = Some((cur, self.labels.clone()));
            }
            return;
        }
        let cell = self.slot_cell[k];
        let mut tried_reps: Vec<usize> = Vec::new();
        for v in 0..self.n {
            if self.used[v] || self.color[v] != cell {
                continue;
            }
            let rep = self.twin_rep[v];
            if tried_reps.contains(&rep) {
                continue;
            }
            tried_reps.push(rep);

            let mut next = cur;
            for j in 1..k {
                for i in 0..j {
                    if self.has(self.labels[i], self.labels[j], v) {
                        next.insert(binom(k, 3) + binom(j, 2) + i);
                    }
                }
            }
            if let Some((b, _)) = &self.best {
                if next.cmp_prefix(b, binom(k + 1, 3)) == Ordering::Greater {
                    continue;
                }
            }
            self.used[v] = true;
            self.labels.push(v);
            self.search(k + 1, next);
            self.labels.pop();
            self.used[v] = false;
        }
    }
}

/// Twin classes: `rep[v]` is the least vertex `u` such that swapping `u` and
/// `v` is an automorphism.
pub fn twin_representatives(g: &Hypergraph3) -> Vec<usize> {
    let n = g.n();
    let links: Vec<Vec<(usize, usize)>> = (0..n).map(|v| g.link(v).unwrap().pairs).collect();
    let mut rep: Vec<usize> = (0..n).collect();
    for v in 0..n {
        for u in 0..v {
            if rep[u] != u {
                continue;
            }
            let strip = |w: usize, other: usize| -> Vec<(usize, usize)> {
                links[w]
                    .iter()
                    .copied()
                    .filter(|&(a, b)| a != other && b != other)
                    .collect()
            };
            if strip(u, v) == strip(v, u) {
                rep[v] = u;
                break;
            }
        }
    }
    rep
}

/// Canonical labeling: `labeling[k]` is the vertex receiving label `k`.
pub fn canonical_labeling(g: &Hypergraph3) -> (EdgeSet, Vec<usize>) {
    let n = g.n();
    let color = refine_colors(g);
    let mut slot_cell: Vec<usize> = color.clone();
    slot_cell.sort_unstable();
    let mut c = Canonizer {
        n,
        adj: g.edge_set(),
        slot_cell,
        color,
        twin_rep: twin_representatives(g),
        labels: Vec::with_capacity(n),
        used: vec![false; n],
        best: None,
    };
    c.search(0, EdgeSet::new());
    c.best.expect("at least one admissible labeling")
}

pub fn canonical_key(g: &Hypergraph3) -> CanonicalKey {
    let (bits, _) = canonical_labeling(g);
    CanonicalKey {
        n: g.n() as u8,
        bits,
    }
}

/// The canonical representative of `g`'s isomorphism class.
pub fn canonical_form(g: &Hypergraph3) -> Hypergraph3 {
    canonical_key(g).graph()
}

fn sorted_degrees(g: &Hypergraph3) -> Vec<usize> {
    let mut d = g.degrees();
    d.sort_unstable();
    d
}

pub fn are_isomorphic(a: &Hypergraph3, b: &Hypergraph3) -> Result<bool> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch(a.n(), b.n()));
    }
    if a.edge_count() != b.edge_count() || sorted_degrees(a) != sorted_degrees(b) {
        return Ok(false);
    }
    Ok(canonical_key(a) == canonical_key(b))
}

/// One representative per isomorphism class, in order of first occurrence.
pub fn dedupe(graphs: &[Hypergraph3]) -> Vec<Hypergraph3> {
    let mut seen = std::collections::HashSet::new();
    graphs
        .iter()
        .filter(|g| seen.insert(canonical_key(g)))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    fn path() -> Hypergraph3 {
        Hypergraph3::from_triples(7, &[[0, 1, 2], [2, 3, 4], [4, 5, 6]]).unwrap()
    }

    #[test]
    fn path_labelings_share_a_key() {
        let p = path();
        let q = Hypergraph3::from_triples(7, &[[6, 3, 0], [0, 5, 2], [2, 1, 4]]).unwrap();
        assert_eq!(canonical_key(&p), canonical_key(&q));
        assert!(are_isomorphic(&p, &q).unwrap());
    }

    #[test]
    fn key_text_round_trip() {
        let k = canonical_key(&path());
        let s = k.to_string();
        assert!(s.starts_with("7:"));
        assert_eq!(s.parse::<CanonicalKey>().unwrap(), k);
        assert!("7:zz".parse::<CanonicalKey>().is_err());
        assert!("3:2".parse::<CanonicalKey>().is_err());
    }

    #[test]
    fn symmetric_graphs_are_fast_and_stable() {
        let k16 = Hypergraph3::complete(16).unwrap();
        assert_eq!(canonical_form(&k16), k16);
        let e = Hypergraph3::empty(16).unwrap();
        assert_eq!(canonical_form(&e), e);
    }

    #[test]
    fn isomorphism_size_mismatch_errors() {
        assert!(are_isomorphic(&path(), &Hypergraph3::empty(8).unwrap()).is_err());
    }

    #[test]
    fn degree_mismatch_is_non_isomorphic() {
        let a = Hypergraph3::from_triples(6, &[[0, 1, 2], [0, 3, 4]]).unwrap();
        let b = Hypergraph3::from_triples(6, &[[0, 1, 2], [3, 4, 5]]).unwrap();
        assert!(!are_isomorphic(&a, &b).unwrap());
    }

    #[test]
    fn dedupe_keeps_first_occurrence() {
        let c1 = Hypergraph3::from_triples(6, &[[0, 1, 2], [2, 3, 4], [4, 5, 0]]).unwrap();
        let c2 = c1.relabel(&[1, 2, 3, 4, 5, 0]).unwrap();
        let c3 = c1.relabel(&[5, 4, 3, 2, 1, 0]).unwrap();
        let out = dedupe(&[c1.clone(), c2, c3]);
        assert_eq!(out, vec![c1]);
        assert!(dedupe(&[]).is_empty());
    }

    #[test]
    fn twins_detected() {
        let star = Hypergraph3::from_edges(
            5,
            (1..5).flat_map(|a| (a + 1..5).map(move |b| Edge::new(0, a, b).unwrap())),
        )
        .unwrap();
        assert_eq!(twin_representatives(&star), vec![0, 1, 1, 1, 1]);
    }
}
