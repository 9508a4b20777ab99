//! Containment oracles for the small forbidden patterns, a generic embedder,
//! and sub-isomorphism tests against named host graphs.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{binom, Edge, Hypergraph3};

#[inline]
fn one(x: u16) -> bool {
    x != 0 && x & (x - 1) == 0
}

/// The fixed patterns used throughout, plus an arbitrary graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    /// Loose path with three edges on seven vertices.
    P,
    /// Loose triangle: three edges on six vertices, pairwise meeting once.
    C,
    /// Two disjoint edges.
    M,
    /// Two edges sharing exactly one vertex.
    P2,
    /// `P2` plus an edge disjoint from it.
    P2uK3,
    Generic(Hypergraph3),
}

/// The named patterns, as a serializable tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PatternTag {
    P,
    C,
    M,
    P2,
    P2uK3,
}

impl PatternTag {
    pub const ALL: [PatternTag; 5] = [
        PatternTag::P,
        PatternTag::C,
        PatternTag::M,
        PatternTag::P2,
        PatternTag::P2uK3,
    ];

    pub fn pattern(self) -> Pattern {
        match self {
            PatternTag::P => Pattern::P,
            PatternTag::C => Pattern::C,
            PatternTag::M => Pattern::M,
            PatternTag::P2 => Pattern::P2,
            PatternTag::P2uK3 => Pattern::P2uK3,
        }
    }

    pub fn graph(self) -> Hypergraph3 {
        self.pattern().graph()
    }
}

impl fmt::Display for PatternTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PatternTag::P => "P",
            PatternTag::C => "C",
            PatternTag::M => "M",
            PatternTag::P2 => "P2",
            PatternTag::P2uK3 => "P2uK3",
        })
    }
}

impl FromStr for PatternTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "P" => Ok(PatternTag::P),
            "C" => Ok(PatternTag::C),
            "M" => Ok(PatternTag::M),
            "P2" => Ok(PatternTag::P2),
            "P2uK3" | "P2UK3" | "P2∪K3" => Ok(PatternTag::P2uK3),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }
}

impl Pattern {
    /// The pattern as a graph on exactly its own vertices.
    pub fn graph(&self) -> Hypergraph3 {
        let t: &[[usize; 3]] = match self {
            Pattern::P => &[[0, 1, 2], [2, 3, 4], [4, 5, 6]],
            Pattern::C => &[[0, 1, 2], [2, 3, 4], [4, 5, 0]],
            Pattern::M => &[[0, 1, 2], [3, 4, 5]],
            Pattern::P2 => &[[0, 1, 2], [0, 3, 4]],
            Pattern::P2uK3 => &[[0, 1, 2], [0, 3, 4], [5, 6, 7]],
            Pattern::Generic(g) => return g.clone(),
        };
        let n = t.iter().flatten().max().unwrap() + 1;
        Hypergraph3::from_triples(n, t).unwrap()
    }

    pub fn tag(&self) -> Option<PatternTag> {
        match self {
            Pattern::P => Some(PatternTag::P),
            Pattern::C => Some(PatternTag::C),
            Pattern::M => Some(PatternTag::M),
            Pattern::P2 => Some(PatternTag::P2),
            Pattern::P2uK3 => Some(PatternTag::P2uK3),
            Pattern::Generic(_) => None,
        }
    }
}

// ---------------------------------------------------------------------------
// Fast whole-graph oracles over vertex masks.

fn find_path_masks(m: &[u16]) -> Option<[u16; 3]> {
    for &mid in m {
        for &a in m {
            let ia = a & mid;
            if !one(ia) {
                continue;
            }
            for &b in m {
                let ib = b & mid;
                if one(ib) && ib != ia && a & b == 0 {
                    return Some([a, mid, b]);
                }
            }
        }
    }
    None
}

fn find_triangle_masks(m: &[u16]) -> Option<[u16; 3]> {
    for (i, &a) in m.iter().enumerate() {
        for (j, &b) in m.iter().enumerate().skip(i + 1) {
            if !one(a & b) {
                continue;
            }
            for &c in &m[j + 1..] {
                if one(a & c) && one(b & c) && a & b & c == 0 {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

fn find_matching_masks(m: &[u16]) -> Option<[u16; 2]> {
    for (i, &a) in m.iter().enumerate() {
        if let Some(&b) = m[i + 1..].iter().find(|&&b| a & b == 0) {
            return Some([a, b]);
        }
    }
    None
}

fn find_p2_masks(m: &[u16]) -> Option<[u16; 2]> {
    for (i, &a) in m.iter().enumerate() {
        if let Some(&b) = m[i + 1..].iter().find(|&&b| one(a & b)) {
            return Some([a, b]);
        }
    }
    None
}

fn find_p2uk3_masks(m: &[u16]) -> Option<[u16; 3]> {
    for (i, &a) in m.iter().enumerate() {
        for &b in &m[i + 1..] {
            if !one(a & b) {
                continue;
            }
            if let Some(&c) = m.iter().find(|&&c| c & (a | b) == 0) {
                return Some([a, b, c]);
            }
        }
    }
    None
}

/// Whole-graph search for a named pattern; returns the edge masks of a copy.
pub fn find_tag_masks(tag: PatternTag, masks: &[u16]) -> Option<Vec<u16>> {
    match tag {
        PatternTag::P => find_path_masks(masks).map(|w| w.to_vec()),
        PatternTag::C => find_triangle_masks(masks).map(|w| w.to_vec()),
        PatternTag::M => find_matching_masks(masks).map(|w| w.to_vec()),
        PatternTag::P2 => find_p2_masks(masks).map(|w| w.to_vec()),
        PatternTag::P2uK3 => find_p2uk3_masks(masks).map(|w| w.to_vec()),
    }
}

// ---------------------------------------------------------------------------
// Incremental oracles: given that `m` avoids the pattern, does `m + f`?

fn path_through(m: &[u16], f: u16) -> bool {
    // f as the middle edge: pendant edges at two different vertices of f.
    let mut pend: [Vec<u16>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    let lo = f & f.wrapping_neg();
    let mid = (f ^ lo) & (f ^ lo).wrapping_neg();
    let fv = [lo, mid, f ^ lo ^ mid];
    let mut away: Vec<u16> = Vec::new();
    for &g in m {
        let i = g & f;
        if i == 0 {
            away.push(g);
        } else if one(i) {
            let slot = fv.iter().position(|&v| v == i).unwrap();
            pend[slot].push(g);
        }
    }
    for s in 0..3 {
        for t in s + 1..3 {
            for &a in &pend[s] {
                if pend[t].iter().any(|&b| a & b == 0) {
                    return true;
                }
            }
        }
    }
    // f as an end edge: a middle edge meeting f once, then an edge avoiding f
    // and meeting the middle once elsewhere.
    for s in 0..3 {
        for &mid in &pend[s] {
            if away.iter().any(|&b| one(b & mid)) {
                return true;
            }
        }
    }
    false
}

fn triangle_through(m: &[u16], f: u16) -> bool {
    let touching: Vec<u16> = m.iter().copied().filter(|&g| one(g & f)).collect();
    for (i, &a) in touching.iter().enumerate() {
        for &b in &touching[i + 1..] {
            if a & f != b & f && one(a & b) && a & b & f == 0 {
                return true;
            }
        }
    }
    false
}

fn matching_through(m: &[u16], f: u16) -> bool {
    m.iter().any(|&g| g & f == 0)
}

fn p2_through(m: &[u16], f: u16) -> bool {
    m.iter().any(|&g| one(g & f))
}

fn p2uk3_through(m: &[u16], f: u16) -> bool {
    // f inside the P2
    for &g in m {
        if one(g & f) {
            let u = g | f;
            if m.iter().any(|&k| k & u == 0) {
                return true;
            }
        }
    }
    // f as the separate edge
    let away: Vec<u16> = m.iter().copied().filter(|&g| g & f == 0).collect();
    find_p2_masks(&away).is_some()
}

/// Whether adding `f` to the pattern-free edge list `m` creates a copy of the
/// pattern. The result is only meaningful when `m` itself avoids it.
#[inline]
pub fn completes(tag: PatternTag, m: &[u16], f: u16) -> bool {
    match tag {
        PatternTag::P => path_through(m, f),
        PatternTag::C => triangle_through(m, f),
        PatternTag::M => matching_through(m, f),
        PatternTag::P2 => p2_through(m, f),
        PatternTag::P2uK3 => p2uk3_through(m, f),
    }
}

// ---------------------------------------------------------------------------
// Generic embedding.

/// Backtracking search for an injective map of the non-isolated vertices of
/// `pattern` into `host` carrying every pattern edge onto a host edge.
/// Returns `map[v]` for every pattern vertex (isolated ones get `usize::MAX`).
pub fn find_embedding(pattern: &Hypergraph3, host: &Hypergraph3) -> Option<Vec<usize>> {
    let pd = pattern.degrees();
    let hd = host.degrees();
    let active: Vec<usize> = (0..pattern.n()).filter(|&v| pd[v] > 0).collect();
    if active.len() > host.n() || pattern.edge_count() > host.edge_count() {
        return None;
    }
    // Order: highest degree first, then repeatedly the vertex with most
    // already-ordered co-members.
    let pedges: Vec<[usize; 3]> = pattern.edges().map(|e| e.vertices()).collect();
    let mut order: Vec<usize> = Vec::with_capacity(active.len());
    let mut placed = vec![false; pattern.n()];
    while order.len() < active.len() {
        let next = active
            .iter()
            .copied()
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let conn = pedges
                    .iter()
                    .filter(|e| e.contains(&v))
                    .map(|e| e.iter().filter(|&&u| placed[u]).count())
                    .sum::<usize>();
                (conn, pd[v], std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    let pos: Vec<usize> = {
        let mut p = vec![usize::MAX; pattern.n()];
        for (i, &v) in order.iter().enumerate() {
            p[v] = i;
        }
        p
    };
    // Edges completed when the vertex at position i is placed, as the two
    // earlier positions.
    let mut closing: Vec<Vec<(usize, usize)>> = vec![Vec::new(); order.len()];
    for e in &pedges {
        let mut ps = e.map(|v| pos[v]);
        ps.sort_unstable();
        closing[ps[2]].push((ps[0], ps[1]));
    }
    let host_set = host.edge_set();
    let has = |a: usize, b: usize, c: usize| {
        let mut t = [a, b, c];
        t.sort_unstable();
        host_set.contains(binom(t[2], 3) + binom(t[1], 2) + t[0])
    };

    fn rec(
        i: usize,
        order: &[usize],
        closing: &[Vec<(usize, usize)>],
        pd: &[usize],
        hd: &[usize],
        image: &mut Vec<usize>,
        used: &mut [bool],
        has: &dyn Fn(usize, usize, usize) -> bool,
    ) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        for w in 0..hd.len() {
            if used[w] || hd[w] < pd[v] {
                continue;
            }
            if closing[i].iter().all(|&(a, b)| has(image[a], image[b], w)) {
                used[w] = true;
                image.push(w);
                if rec(i + 1, order, closing, pd, hd, image, used, has) {
                    return true;
                }
                image.pop();
                used[w] = false;
            }
        }
        false
    }

    let mut image = Vec::with_capacity(order.len());
    let mut used = vec![false; host.n()];
    if rec(0, &order, &closing, &pd, &hd, &mut image, &mut used, &has) {
        let mut map = vec![usize::MAX; pattern.n()];
        for (i, &v) in order.iter().enumerate() {
            map[v] = image[i];
        }
        Some(map)
    } else {
        None
    }
}

fn sorted_witness(masks: &[u16]) -> Vec<Edge> {
    let mut w: Vec<Edge> = masks.iter().map(|&m| Edge::from_mask(m)).collect();
    w.sort_by_key(|e| e.rank());
    w
}

/// A copy of `pattern` in `g`, as host edges in colex order.
pub fn find(g: &Hypergraph3, pattern: &Pattern) -> Option<Vec<Edge>> {
    match pattern.tag() {
        Some(tag) => find_tag_masks(tag, &g.masks()).map(|w| sorted_witness(&w)),
        None => find_generic(g, &pattern.graph()),
    }
}

/// Witness search that only uses the generic embedder.
pub fn find_generic(g: &Hypergraph3, pattern: &Hypergraph3) -> Option<Vec<Edge>> {
    let map = find_embedding(pattern, g)?;
    let mut w: Vec<Edge> = pattern
        .edges()
        .map(|e| {
            let [a, b, c] = e.vertices().map(|v| map[v]);
            Edge::new(a, b, c).unwrap()
        })
        .collect();
    w.sort_by_key(|e| e.rank());
    Some(w)
}

pub fn contains(g: &Hypergraph3, pattern: &Pattern) -> bool {
    find(g, pattern).is_some()
}

pub fn contains_tag(g: &Hypergraph3, tag: PatternTag) -> bool {
    find_tag_masks(tag, &g.masks()).is_some()
}

/// Re-checks a claimed witness: the edges are in `g` and form a copy of the
/// pattern.
pub fn check_witness(g: &Hypergraph3, pattern: &Pattern, witness: &[Edge]) -> bool {
    if !witness.iter().all(|e| g.has_edge(*e)) {
        return false;
    }
    let sub = match Hypergraph3::from_edges(g.n(), witness.iter().copied()) {
        Ok(s) => s,
        Err(_) => return false,
    };
    let p = pattern.graph();
    sub.edge_count() == p.edge_count() && find_embedding(&p, &sub).is_some()
}

// ---------------------------------------------------------------------------
// Stars, comets and named hosts.

/// A vertex lying in every edge, if any (the least such vertex).
pub fn star_center(g: &Hypergraph3) -> Option<usize> {
    let all = g.masks().iter().fold(u16::MAX, |acc, &m| acc & m);
    let all = all & ((1u32 << g.n()) - 1) as u16;
    if all == 0 {
        None
    } else {
        Some(all.trailing_zeros() as usize)
    }
}

pub fn in_star(g: &Hypergraph3) -> bool {
    g.is_empty() || star_center(g).is_some()
}

/// Center and head of a comet containing `g`, if `g` is (up to relabeling) a
/// sub-3-graph of `Co(n)`: every edge either is the head triple or contains
/// the center together with a pair lying inside the head or inside the tail.
pub fn comet_roles(g: &Hypergraph3) -> Option<(usize, u16)> {
    let n = g.n();
    if n < 4 {
        return None;
    }
    let masks = g.masks();
    let full: u16 = ((1u32 << n) - 1) as u16;
    for x in 0..n {
        let xb = 1u16 << x;
        let avoid: Vec<u16> = masks.iter().copied().filter(|&m| m & xb == 0).collect();
        match avoid.len() {
            0 => {
                // choose a head: a union of link components of total size 3
                let mut comp: Vec<u16> = Vec::new();
                let mut seen: u16 = xb;
                let links: Vec<u16> = masks.iter().map(|&m| m & !xb).collect();
                for v in 0..n {
                    if seen >> v & 1 == 1 {
                        continue;
                    }
                    let mut c: u16 = 1 << v;
                    loop {
                        let grown = links
                            .iter()
                            .filter(|&&l| l & c != 0)
                            .fold(c, |acc, &l| acc | l);
                        if grown == c {
                            break;
                        }
                        c = grown;
                    }
                    seen |= c;
                    comp.push(c);
                }
                if let Some(head) = pick_size_three(&comp) {
                    return Some((x, head));
                }
            }
            1 => {
                let head = avoid[0];
                if head & xb != 0 {
                    continue;
                }
                let tail = full & !head & !xb;
                let ok = masks.iter().all(|&m| {
                    if m == head {
                        return true;
                    }
                    let rest = m & !xb;
                    rest & head == rest || rest & tail == rest
                });
                if ok {
                    return Some((x, head));
                }
            }
            _ => {}
        }
    }
    None
}

fn pick_size_three(comps: &[u16]) -> Option<u16> {
    fn rec(comps: &[u16], acc: u16, need: u32) -> Option<u16> {
        if need == 0 {
            return Some(acc);
        }
        for (i, &c) in comps.iter().enumerate() {
            let s = c.count_ones();
            if s <= need {
                if let Some(r) = rec(&comps[i + 1..], acc | c, need - s) {
                    return Some(r);
                }
            }
        }
        None
    }
    rec(comps, 0, 3)
}

pub fn in_comet(g: &Hypergraph3) -> bool {
    comet_roles(g).is_some()
}

/// Structural description of a host graph, used to pick a fast containment
/// test.
#[derive(Clone, Debug)]
pub enum HostShape {
    /// The full star `S_n`.
    Star,
    /// The comet `Co(n)`.
    Comet,
    /// Vertex-disjoint complete 3-graphs of the given orders (each at least
    /// 3) plus isolated vertices.
    CliqueUnion(Vec<usize>),
    Generic,
}

/// A host graph together with its recognized shape.
#[derive(Clone, Debug)]
pub struct Host {
    pub graph: Hypergraph3,
    pub shape: HostShape,
}

impl Host {
    pub fn new(graph: Hypergraph3) -> Host {
        let shape = classify_host(&graph);
        Host { graph, shape }
    }

    /// Is `h` (padded with isolated vertices) isomorphic to a sub-3-graph of
    /// this host?
    pub fn contains_copy(&self, h: &Hypergraph3) -> bool {
        if h.edge_count() > self.graph.edge_count() {
            return false;
        }
        let n = h.n().max(self.graph.n());
        let h = h.pad_to(n).unwrap();
        if n != self.graph.n() {
            return is_sub_iso_generic(&h, &self.graph.pad_to(n).unwrap());
        }
        match &self.shape {
            HostShape::Star => in_star(&h),
            HostShape::Comet => in_comet(&h),
            HostShape::CliqueUnion(sizes) => packs_into_cliques(&h, sizes),
            HostShape::Generic => {
                // each component of h must land inside one host component
                let room: Vec<usize> = self.graph.components().iter().map(Vec::len).collect();
                packs_into_cliques(&h, &room) && is_sub_iso_generic(&h, &self.graph)
            }
        }
    }
}

fn classify_host(g: &Hypergraph3) -> HostShape {
    let n = g.n();
    let m = g.edge_count();
    if n >= 3 && m == binom(n - 1, 2) && m > 0 {
        if let Some(_c) = star_center(g) {
            return HostShape::Star;
        }
    }
    if n >= 4 && m == 4 + binom(n - 4, 2) {
        if let Some((x, head)) = comet_roles(g) {
            let head_edge_present = g.masks().contains(&head);
            let xb = 1u16 << x;
            let head_pairs = g
                .masks()
                .iter()
                .filter(|&&e| e & xb != 0 && (e & !xb) & head == e & !xb)
                .count();
            if head_edge_present && head_pairs == 3 {
                return HostShape::Comet;
            }
        }
    }
    let mut sizes = Vec::new();
    let mut clique_union = true;
    for comp in g.components() {
        if comp.len() == 1 {
            continue;
        }
        let sub = g.induced(&comp).unwrap();
        if sub.edge_count() != binom(comp.len(), 3) {
            clique_union = false;
            break;
        }
        sizes.push(comp.len());
    }
    if clique_union && !sizes.is_empty() {
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        return HostShape::CliqueUnion(sizes);
    }
    HostShape::Generic
}

/// Whether the components of `h` can be distributed among cliques of the
/// given orders (isolated vertices fill the remaining room).
fn packs_into_cliques(h: &Hypergraph3, sizes: &[usize]) -> bool {
    let mut comps: Vec<usize> = h
        .components()
        .iter()
        .map(Vec::len)
        .filter(|&s| s > 1)
        .collect();
    comps.sort_unstable_by(|a, b| b.cmp(a));
    let mut room = sizes.to_vec();
    fn rec(comps: &[usize], room: &mut [usize]) -> bool {
        let Some((&c, rest)) = comps.split_first() else {
            return true;
        };
        for i in 0..room.len() {
            if room[i] >= c && !room[..i].contains(&room[i]) {
                room[i] -= c;
                if rec(rest, room) {
                    room[i] += c;
                    return true;
                }
                room[i] += c;
            }
        }
        false
    }
    rec(&comps, &mut room)
}

/// Sub-isomorphism through the generic embedder only.
pub fn is_sub_iso_generic(h: &Hypergraph3, host: &Hypergraph3) -> bool {
    let n = h.n().max(host.n());
    let h = h.pad_to(n).unwrap();
    let host = host.pad_to(n).unwrap();
    find_embedding(&h, &host).is_some()
}

/// Is `h` isomorphic to a sub-3-graph of `host`? The smaller side is padded
/// with isolated vertices.
pub fn is_sub_iso(h: &Hypergraph3, host: &Hypergraph3) -> bool {
    Host::new(host.clone()).contains_copy(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(n: usize) -> Hypergraph3 {
        let mut g = Hypergraph3::empty(n).unwrap();
        for a in 1..n {
            for b in a + 1..n {
                g.insert(Edge::new(0, a, b).unwrap()).unwrap();
            }
        }
        g
    }

    #[test]
    fn pattern_sizes() {
        assert_eq!(Pattern::P.graph().n(), 7);
        assert_eq!(Pattern::C.graph().n(), 6);
        assert_eq!(Pattern::M.graph().edge_count(), 2);
        assert_eq!(Pattern::P2uK3.graph().n(), 8);
        for t in PatternTag::ALL {
            assert_eq!(t.to_string().parse::<PatternTag>().unwrap(), t);
        }
    }

    #[test]
    fn complete_graphs_and_the_path() {
        assert!(contains(&Hypergraph3::complete(7).unwrap(), &Pattern::P));
        assert!(!contains(&Hypergraph3::complete(6).unwrap(), &Pattern::P));
        assert!(!contains(&star(9), &Pattern::P));
    }

    #[test]
    fn witness_is_colex_and_rechecks() {
        let k7 = Hypergraph3::complete(7).unwrap();
        let w = find(&k7, &Pattern::P).unwrap();
        assert!(w.windows(2).all(|p| p[0].rank() < p[1].rank()));
        assert!(check_witness(&k7, &Pattern::P, &w));
        assert!(!check_witness(&k7, &Pattern::C, &w));
    }

    #[test]
    fn incremental_matches_whole_graph() {
        let k7 = Hypergraph3::complete(7).unwrap();
        for tag in PatternTag::ALL {
            let mut masks: Vec<u16> = Vec::new();
            for f in k7.masks() {
                let before = find_tag_masks(tag, &masks).is_some();
                assert!(!before);
                let inc = completes(tag, &masks, f);
                masks.push(f);
                let after = find_tag_masks(tag, &masks).is_some();
                assert_eq!(inc, after, "{tag} at {f:#b}");
                if after {
                    masks.pop();
                }
            }
        }
    }

    #[test]
    fn stars_and_comets() {
        assert!(in_star(&Hypergraph3::empty(5).unwrap()));
        assert!(in_star(&star(7)));
        let co = comet_of(14);
        assert!(in_comet(&co));
        assert!(!in_star(&co));
        assert!(matches!(Host::new(co).shape, HostShape::Comet));
        // an edge mixing head and tail through the center is not in a comet
        let g = Hypergraph3::from_triples(
            9,
            &[[1, 2, 3], [0, 1, 4], [0, 5, 6], [0, 7, 8]],
        )
        .unwrap();
        assert!(!in_comet(&g));
        assert!(!is_sub_iso_generic(&g, &Host::new(comet_of(9)).graph));
    }

    fn comet_of(n: usize) -> Hypergraph3 {
        let mut g = Hypergraph3::empty(n).unwrap();
        g.insert(Edge::new(1, 2, 3).unwrap()).unwrap();
        for (a, b) in [(1, 2), (1, 3), (2, 3)] {
            g.insert(Edge::new(0, a, b).unwrap()).unwrap();
        }
        for a in 4..n {
            for b in a + 1..n {
                g.insert(Edge::new(0, a, b).unwrap()).unwrap();
            }
        }
        g
    }

    #[test]
    fn clique_union_packing() {
        let k6 = Hypergraph3::complete(6).unwrap();
        let host = k6.disjoint_union(&Hypergraph3::complete(3).unwrap()).unwrap();
        let h = Host::new(host.clone());
        assert!(matches!(&h.shape, HostShape::CliqueUnion(s) if s == &vec![6, 3]));
        let two_k4 = Hypergraph3::complete(4)
            .unwrap()
            .disjoint_union(&Hypergraph3::complete(4).unwrap())
            .unwrap()
            .pad_to(9)
            .unwrap();
        assert!(!h.contains_copy(&two_k4));
        assert!(!is_sub_iso_generic(&two_k4, &host));
        let k4_k3 = Hypergraph3::complete(4)
            .unwrap()
            .disjoint_union(&Hypergraph3::complete(3).unwrap())
            .unwrap();
        assert!(h.contains_copy(&k4_k3));
        assert!(is_sub_iso_generic(&k4_k3, &host));
    }

    #[test]
    fn star_minus_edge_is_in_star() {
        let mut s = star(7);
        s.remove(Edge::new(0, 1, 2).unwrap()).unwrap();
        assert!(is_sub_iso(&s, &star(7)));
    }
}
