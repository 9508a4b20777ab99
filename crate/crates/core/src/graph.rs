//! 3-uniform hypergraphs on at most 16 vertices.
//!
//! Edges are indexed by the colex rank of their ascending vertex triple, so the
//! triples spanned by `0..n` are exactly the ranks `0..C(n,3)` for every `n`.
//! A graph is a vertex count plus a 560-bit edge set.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 16;
pub const MAX_SLOTS: usize = 560;
const WORDS: usize = MAX_SLOTS.div_ceil(64);

pub const fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc = 1usize;
    let mut i = 0;
    while i < k {
        acc = acc * (n - i) / (i + 1);
        i += 1;
    }
    acc
}

const fn build_unrank() -> [[u8; 3]; MAX_SLOTS] {
    let mut table = [[0u8; 3]; MAX_SLOTS];
    let mut idx = 0;
    let mut c = 2;
    while c < MAX_VERTICES {
        let mut b = 1;
        while b < c {
            let mut a = 0;
            while a < b {
                table[idx] = [a as u8, b as u8, c as u8];
                idx += 1;
                a += 1;
            }
            b += 1;
        }
        c += 1;
    }
    table
}

static UNRANK: [[u8; 3]; MAX_SLOTS] = build_unrank();

/// Number of triple slots on `n` vertices.
pub fn slot_count(n: usize) -> usize {
    binom(n, 3)
}

/// A 3-element vertex set, stored ascending.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge([u8; 3]);

impl Edge {
    pub fn new(a: usize, b: usize, c: usize) -> Result<Edge> {
        let mut v = [a, b, c];
        v.sort_unstable();
        if v[0] == v[1] || v[1] == v[2] {
            return Err(Error::DegenerateEdge([a, b, c]));
        }
        if v[2] >= MAX_VERTICES {
            return Err(Error::VertexOutOfRange {
                vertex: v[2],
                n: MAX_VERTICES,
            });
        }
        Ok(Edge([v[0] as u8, v[1] as u8, v[2] as u8]))
    }

    pub fn from_rank(rank: usize) -> Edge {
        Edge(UNRANK[rank])
    }

    pub fn from_mask(mask: u16) -> Edge {
        debug_assert_eq!(mask.count_ones(), 3);
        let a = mask.trailing_zeros();
        let m = mask & (mask - 1);
        let b = m.trailing_zeros();
        let c = (m & (m - 1)).trailing_zeros();
        Edge([a as u8, b as u8, c as u8])
    }

    /// Colex rank: `C(c,3) + C(b,2) + a`.
    pub fn rank(self) -> usize {
        let [a, b, c] = self.0;
        binom(c as usize, 3) + binom(b as usize, 2) + a as usize
    }

    pub fn vertices(self) -> [usize; 3] {
        [self.0[0] as usize, self.0[1] as usize, self.0[2] as usize]
    }

    pub fn mask(self) -> u16 {
        (1 << self.0[0]) | (1 << self.0[1]) | (1 << self.0[2])
    }

    pub fn max_vertex(self) -> usize {
        self.0[2] as usize
    }

    pub fn contains(self, v: usize) -> bool {
        self.0.iter().any(|&x| x as usize == v)
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{}}}", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.0[0], self.0[1], self.0[2])
    }
}

/// Fixed-width bitset over the 560 triple slots.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct EdgeSet([u64; WORDS]);

impl EdgeSet {
    pub fn new() -> EdgeSet {
        EdgeSet([0; WORDS])
    }

    /// All slots below `len`.
    pub fn prefix(len: usize) -> EdgeSet {
        let mut s = EdgeSet::new();
        for w in 0..WORDS {
            let lo = w * 64;
            if len >= lo + 64 {
                s.0[w] = u64::MAX;
            } else if len > lo {
                s.0[w] = (1u64 << (len - lo)) - 1;
            }
        }
        s
    }

    #[inline]
    pub fn contains(&self, slot: usize) -> bool {
        self.0[slot >> 6] >> (slot & 63) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, slot: usize) -> bool {
        let had = self.contains(slot);
        self.0[slot >> 6] |= 1 << (slot & 63);
        !had
    }

    #[inline]
    pub fn remove(&mut self, slot: usize) -> bool {
        let had = self.contains(slot);
        self.0[slot >> 6] &= !(1 << (slot & 63));
        had
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &EdgeSet) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & b == 0)
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a |= b;
        }
        out
    }

    pub fn intersection(&self, other: &EdgeSet) -> EdgeSet {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a &= b;
        }
        out
    }

    pub fn difference(&self, other: &EdgeSet) -> EdgeSet {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a &= !b;
        }
        out
    }

    /// Slots in increasing (colex) order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let t = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(w * 64 + t)
                }
            })
        })
    }

    pub fn words(&self) -> &[u64] {
        &self.0
    }

    /// Compare two sets as bit strings read from slot 0 upward, restricted to
    /// slots below `len`; a set bit sorts after a clear bit.
    pub fn cmp_prefix(&self, other: &EdgeSet, len: usize) -> std::cmp::Ordering {
        let mask = EdgeSet::prefix(len);
        for w in 0..WORDS {
            let a = self.0[w] & mask.0[w];
            let b = other.0[w] & mask.0[w];
            if a != b {
                let low = (a ^ b).trailing_zeros();
                return if a >> low & 1 == 1 {
                    std::cmp::Ordering::Greater
                } else {
                    std::cmp::Ordering::Less
                };
            }
        }
        std::cmp::Ordering::Equal
    }

    /// Little-endian integer value of the bitset, as minimal lowercase hex.
    pub fn to_hex(&self) -> String {
        let mut bytes: Vec<u8> = self.0.iter().flat_map(|w| w.to_le_bytes()).collect();
        while bytes.len() > 1 && *bytes.last().unwrap() == 0 {
            bytes.pop();
        }
        bytes.reverse();
        let s = hex::encode(bytes);
        let trimmed = s.trim_start_matches('0');
        if trimmed.is_empty() {
            "0".to_string()
        } else {
            trimmed.to_string()
        }
    }

    pub fn from_hex(s: &str) -> Option<EdgeSet> {
        if s.is_empty() || s.len() > WORDS * 16 {
            return None;
        }
        let padded = if s.len() % 2 == 1 {
            format!("0{s}")
        } else {
            s.to_string()
        };
        let mut bytes = hex::decode(padded).ok()?;
        bytes.reverse();
        let mut set = EdgeSet::new();
        for (i, b) in bytes.iter().enumerate() {
            set.0[i / 8] |= (*b as u64) << ((i % 8) * 8);
        }
        Some(set)
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.iter().map(Edge::from_rank))
            .finish()
    }
}

/// A labeled 3-uniform hypergraph on `n` vertices, `1 <= n <= 16`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph3 {
    n: usize,
    edges: EdgeSet,
}

/// The link of a vertex: the pairs that complete it to an edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkGraph {
    pub vertex: usize,
    pub pairs: Vec<(usize, usize)>,
}

impl LinkGraph {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

fn check_n(n: usize) -> Result<()> {
    if (1..=MAX_VERTICES).contains(&n) {
        Ok(())
    } else {
        Err(Error::VertexCount(n))
    }
}

impl Hypergraph3 {
    pub fn empty(n: usize) -> Result<Hypergraph3> {
        check_n(n)?;
        Ok(Hypergraph3 {
            n,
            edges: EdgeSet::new(),
        })
    }

    pub fn complete(n: usize) -> Result<Hypergraph3> {
        check_n(n)?;
        Ok(Hypergraph3 {
            n,
            edges: EdgeSet::prefix(slot_count(n)),
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Hypergraph3>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut g = Hypergraph3::empty(n)?;
        for e in edges {
            g.insert(e)?;
        }
        Ok(g)
    }

    /// Convenience constructor from raw triples.
    pub fn from_triples(n: usize, triples: &[[usize; 3]]) -> Result<Hypergraph3> {
        let mut g = Hypergraph3::empty(n)?;
        for t in triples {
            g.insert(Edge::new(t[0], t[1], t[2])?)?;
        }
        Ok(g)
    }

    pub(crate) fn from_edge_set(n: usize, edges: EdgeSet) -> Hypergraph3 {
        debug_assert!(edges.iter().all(|s| s < slot_count(n)));
        Hypergraph3 { n, edges }
    }

    pub fn from_masks(n: usize, masks: &[u16]) -> Result<Hypergraph3> {
        let mut g = Hypergraph3::empty(n)?;
        for &m in masks {
            if m.count_ones() != 3 {
                return Err(Error::InvalidSpec(format!("mask {m:#x} is not a triple")));
            }
            g.insert(Edge::from_mask(m))?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_set(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    fn check_edge(&self, e: Edge) -> Result<()> {
        if e.max_vertex() >= self.n {
            Err(Error::VertexOutOfRange {
                vertex: e.max_vertex(),
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// Inserts `e`; returns whether it was new.
    pub fn insert(&mut self, e: Edge) -> Result<bool> {
        self.check_edge(e)?;
        Ok(self.edges.insert(e.rank()))
    }

    pub fn remove(&mut self, e: Edge) -> Result<bool> {
        self.check_edge(e)?;
        Ok(self.edges.remove(e.rank()))
    }

    /// Returns a copy with `e` added. Adding an existing edge is a no-op.
    pub fn add_edge(&self, e: Edge) -> Result<Hypergraph3> {
        let mut g = self.clone();
        g.insert(e)?;
        Ok(g)
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        e.max_vertex() < self.n && self.edges.contains(e.rank())
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().map(Edge::from_rank)
    }

    /// Vertex masks of the edges, in colex order.
    pub fn masks(&self) -> Vec<u16> {
        self.edges().map(Edge::mask).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges().filter(|e| e.contains(v)).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in self.edges() {
            for v in e.vertices() {
                d[v] += 1;
            }
        }
        d
    }

    pub fn link(&self, v: usize) -> Result<LinkGraph> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        let mut pairs: Vec<(usize, usize)> = self
            .edges()
            .filter(|e| e.contains(v))
            .map(|e| {
                let mut rest = e.vertices().into_iter().filter(|&u| u != v);
                (rest.next().unwrap(), rest.next().unwrap())
            })
            .collect();
        pairs.sort_unstable();
        Ok(LinkGraph { vertex: v, pairs })
    }

    /// Connected components, each sorted, listed by smallest vertex.
    /// Isolated vertices form singleton components.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in self.edges() {
            let [a, b, c] = e.vertices();
            for u in [b, c] {
                let (ra, ru) = (find(&mut parent, a), find(&mut parent, u));
                if ra != ru {
                    parent[ra.max(ru)] = ra.min(ru);
                }
            }
        }
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut index = vec![usize::MAX; self.n];
        for v in 0..self.n {
            let r = find(&mut parent, v);
            if index[r] == usize::MAX {
                index[r] = comps.len();
                comps.push(Vec::new());
            }
            comps[index[r]].push(v);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Vertex-disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Hypergraph3) -> Result<Hypergraph3> {
        let n = self.n + other.n;
        check_n(n)?;
        let mut g = Hypergraph3 {
            n,
            edges: self.edges,
        };
        for e in other.edges() {
            let [a, b, c] = e.vertices();
            g.insert(Edge::new(a + self.n, b + self.n, c + self.n)?)?;
        }
        Ok(g)
    }

    /// Sub-3-graph induced on `vertices`, relabeled order-preservingly.
    pub fn induced(&self, vertices: &[usize]) -> Result<Hypergraph3> {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&v) = keep.iter().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        let mut new_label = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            new_label[v] = i;
        }
        let mut g = Hypergraph3::empty(keep.len())?;
        for e in self.edges() {
            let [a, b, c] = e.vertices().map(|v| new_label[v]);
            if a != usize::MAX && b != usize::MAX && c != usize::MAX {
                g.insert(Edge::new(a, b, c)?)?;
            }
        }
        Ok(g)
    }

    /// Removes `v` and closes the gap (vertices above `v` shift down by one).
    pub fn delete_vertex(&self, v: usize) -> Result<Hypergraph3> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        let rest: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        self.induced(&rest)
    }

    /// Applies the vertex permutation `perm` (vertex `v` becomes `perm[v]`).
    pub fn relabel(&self, perm: &[usize]) -> Result<Hypergraph3> {
        if perm.len() != self.n {
            return Err(Error::SizeMismatch(perm.len(), self.n));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidSpec(format!("{perm:?} is not a permutation")));
            }
        }
        let mut g = Hypergraph3::empty(self.n)?;
        for e in self.edges() {
            let [a, b, c] = e.vertices().map(|v| perm[v]);
            g.insert(Edge::new(a, b, c)?)?;
        }
        Ok(g)
    }

    /// Same edges on a larger vertex set (new vertices isolated).
    pub fn pad_to(&self, n: usize) -> Result<Hypergraph3> {
        check_n(n)?;
        if n < self.n {
            return Err(Error::SizeMismatch(n, self.n));
        }
        Ok(Hypergraph3 { n, edges: self.edges })
    }

    /// Complement inside `K_n`.
    pub fn complement(&self) -> Hypergraph3 {
        Hypergraph3 {
            n: self.n,
            edges: EdgeSet::prefix(slot_count(self.n)).difference(&self.edges),
        }
    }

    pub fn is_subgraph_of(&self, other: &Hypergraph3) -> bool {
        self.n <= other.n && self.edges.is_subset(&other.edges)
    }

    /// Core text format: `n m` followed by one `u v w` line per edge in colex order.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edge_count());
        for e in self.edges() {
            s.push_str(&format!("{e}\n"));
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Hypergraph3> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let perr = |line: usize, msg: &str| Error::Parse {
            line: line + 1,
            msg: msg.to_string(),
        };
        let (hl, header) = lines.next().ok_or_else(|| perr(0, "empty input"))?;
        let nums: Vec<&str> = header.split_whitespace().collect();
        if nums.len() != 2 {
            return Err(perr(hl, "header must be `n m`"));
        }
        let n: usize = nums[0].parse().map_err(|_| perr(hl, "bad vertex count"))?;
        let m: usize = nums[1].parse().map_err(|_| perr(hl, "bad edge count"))?;
        let mut g = Hypergraph3::empty(n).map_err(|e| perr(hl, &e.to_string()))?;
        let mut last_rank: Option<usize> = None;
        let mut count = 0;
        for (ln, line) in lines {
            let vals: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| perr(ln, "edge line must hold three integers"))?;
            if vals.len() != 3 {
                return Err(perr(ln, "edge line must hold three integers"));
            }
            let (u, v, w) = (vals[0], vals[1], vals[2]);
            if !(u < v && v < w) {
                return Err(perr(ln, "edge vertices must be strictly increasing"));
            }
            if w >= n {
                return Err(perr(ln, &format!("vertex {w} out of range for n = {n}")));
            }
            let e = Edge::new(u, v, w).map_err(|e| perr(ln, &e.to_string()))?;
            let r = e.rank();
            match last_rank {
                Some(prev) if prev == r => return Err(perr(ln, "duplicate edge")),
                Some(prev) if prev > r => {
                    if g.has_edge(e) {
                        return Err(perr(ln, "duplicate edge"));
                    }
                    return Err(perr(ln, "edges must be listed in colex order"));
                }
                _ => {}
            }
            last_rank = Some(r);
            g.insert(e).map_err(|e| perr(ln, &e.to_string()))?;
            count += 1;
        }
        if count != m {
            return Err(perr(hl, &format!("header announces {m} edges, found {count}")));
        }
        Ok(g)
    }
}

/// Serialized as the core text format.
impl Serialize for Hypergraph3 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

impl<'de> Deserialize<'de> for Hypergraph3 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Hypergraph3::parse_text(&s).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for Hypergraph3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypergraph3(n={}, ", self.n)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

impl fmt::Display for Hypergraph3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Hypergraph3 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Hypergraph3::parse_text(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path() -> Hypergraph3 {
        Hypergraph3::from_triples(7, &[[0, 1, 2], [2, 3, 4], [4, 5, 6]]).unwrap()
    }

    #[test]
    fn colex_rank_round_trip() {
        for r in 0..MAX_SLOTS {
            assert_eq!(Edge::from_rank(r).rank(), r);
        }
        assert_eq!(Edge::new(0, 1, 2).unwrap().rank(), 0);
        assert_eq!(Edge::new(0, 1, 3).unwrap().rank(), 1);
        assert_eq!(Edge::new(1, 2, 3).unwrap().rank(), 3);
        assert_eq!(Edge::new(13, 14, 15).unwrap().rank(), 559);
    }

    #[test]
    fn add_edge_builds_path_and_is_idempotent() {
        let p = path();
        assert_eq!(p.edge_count(), 3);
        let e = Edge::new(0, 1, 2).unwrap();
        let g = Hypergraph3::empty(7).unwrap().add_edge(e).unwrap().add_edge(e).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(matches!(
            Hypergraph3::empty(5).unwrap().add_edge(Edge::new(2, 3, 5).unwrap()),
            Err(Error::VertexOutOfRange { vertex: 5, n: 5 })
        ));
    }

    #[test]
    fn complete_graph_on_six() {
        let mut g = Hypergraph3::empty(6).unwrap();
        for a in 0..6 {
            for b in a + 1..6 {
                for c in b + 1..6 {
                    g.insert(Edge::new(a, b, c).unwrap()).unwrap();
                }
            }
        }
        assert_eq!(g.edge_count(), 20);
        assert_eq!(g, Hypergraph3::complete(6).unwrap());
    }

    #[test]
    fn links() {
        let p = path();
        assert_eq!(p.link(2).unwrap().pairs, vec![(0, 1), (3, 4)]);
        let lonely = Hypergraph3::from_triples(5, &[[0, 1, 2]]).unwrap();
        assert!(lonely.link(4).unwrap().is_empty());
        // full star on 7 vertices centred at 0
        let mut star = Hypergraph3::empty(7).unwrap();
        for a in 1..7 {
            for b in a + 1..7 {
                star.insert(Edge::new(0, a, b).unwrap()).unwrap();
            }
        }
        assert_eq!(star.link(0).unwrap().len(), 15);
        assert!(p.link(9).is_err());
    }

    #[test]
    fn components_of_unions() {
        let k6 = Hypergraph3::complete(6).unwrap();
        let k1 = Hypergraph3::empty(1).unwrap();
        let g = k6.disjoint_union(&k1).unwrap();
        let sizes: Vec<usize> = g.components().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![6, 1]);
        assert_eq!(path().components().len(), 1);
        let g2 = k6.disjoint_union(&k6).unwrap().disjoint_union(&k1).unwrap();
        let mut sizes: Vec<usize> = g2.components().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 6, 6]);
        assert_eq!(k6.disjoint_union(&k6).unwrap().edge_count(), 40);
        assert!(k6.disjoint_union(&Hypergraph3::complete(11).unwrap()).is_err());
    }

    #[test]
    fn delete_and_induce() {
        let mut star = Hypergraph3::empty(8).unwrap();
        for a in 1..8 {
            for b in a + 1..8 {
                star.insert(Edge::new(0, a, b).unwrap()).unwrap();
            }
        }
        let rest = star.delete_vertex(0).unwrap();
        assert_eq!(rest.n(), 7);
        assert!(rest.is_empty());
        let p = path();
        let d = p.delete_vertex(3).unwrap();
        assert_eq!(d.edge_count(), 2);
        assert!(d.has_edge(Edge::new(0, 1, 2).unwrap()));
        assert!(d.has_edge(Edge::new(3, 4, 5).unwrap()));
        let ind = p.induced(&[4, 5, 6, 0]).unwrap();
        assert_eq!(ind.n(), 4);
        assert_eq!(ind.edges().collect::<Vec<_>>(), vec![Edge::new(1, 2, 3).unwrap()]);
    }

    #[test]
    fn text_format_is_bit_exact() {
        let p = path();
        assert_eq!(p.to_text(), "7 3\n0 1 2\n2 3 4\n4 5 6\n");
        assert_eq!(Hypergraph3::parse_text(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn parser_rejects_malformed_input() {
        for bad in [
            "",
            "7 2\n0 1 2\n0 1 2\n",
            "7 1\n0 1 7\n",
            "7 2\n2 3 4\n0 1 2\n",
            "7 2\n0 1 2\n",
            "7 1\n1 0 2\n",
            "17 0\n",
            "7 1\n0 1\n",
        ] {
            assert!(Hypergraph3::parse_text(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn hex_round_trip() {
        let p = path();
        let h = p.edge_set().to_hex();
        assert_eq!(EdgeSet::from_hex(&h).unwrap(), *p.edge_set());
        assert_eq!(EdgeSet::new().to_hex(), "0");
        let full = EdgeSet::prefix(MAX_SLOTS);
        assert_eq!(EdgeSet::from_hex(&full.to_hex()).unwrap(), full);
    }
}
