//! Decomposition of `{P,C}`-free 3-graphs around a copy of `P2`, and
//! empirical checks of the counting inequalities that bound its parts.
//!
//! Given `H` containing `P2 ∪ K3`, fix `Q` (a `P2` with apex `x`) having an
//! edge disjoint from `U = V(Q)`. Let `W` be the rest, `W0` the vertices
//! isolated in `H[W]` and `W1` the others. Edges split into `H[U]`, `H[W]`,
//! `H0` (meeting `U` and `W0`) and `H1` (meeting `U` and `W1`). An edge of
//! `H0 ∪ H1` lies in `F^k` when it has `k` vertices of `U` other than `x`.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::{binom, Edge, Hypergraph3};
use crate::patterns::{self, PatternTag};

fn bits(m: u16) -> impl Iterator<Item = usize> {
    (0..16).filter(move |v| m >> v & 1 == 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub host: Hypergraph3,
    pub q: [Edge; 2],
    /// Apex of `Q`.
    pub x: usize,
    pub u: u16,
    pub w0: u16,
    pub w1: u16,
    pub h_u: Vec<Edge>,
    pub h_w: Vec<Edge>,
    pub h0: Vec<Edge>,
    pub h1: Vec<Edge>,
    /// Edges meeting all of `U`, `W0` and `W1`; empty for `P`-free hosts.
    pub stray: Vec<Edge>,
    /// `f[i][k]` is `F^k ∩ H_i`.
    pub f: [[Vec<Edge>; 3]; 2],
}

impl Decomposition {
    pub fn z(&self) -> usize {
        self.w1.count_ones() as usize
    }

    pub fn s(&self) -> usize {
        self.w0.count_ones() as usize
    }

    /// Edges of `F^k` (both parts) containing `v`.
    pub fn f_at(&self, k: usize, v: usize) -> usize {
        self.f
            .iter()
            .flat_map(|fi| fi[k].iter())
            .filter(|e| e.contains(v))
            .count()
    }

    /// `|H[U ∪ W0]|`.
    pub fn u_w0_edges(&self) -> usize {
        let m = self.u | self.w0;
        self.host.masks().iter().filter(|&&e| e & m == e).count()
    }
}

/// The first `P2` in colex order (by larger edge, then smaller) that misses
/// some edge entirely, or `None` when `H` is not `{P,C}`-free or has no
/// `P2 ∪ K3`.
pub fn decompose(h: &Hypergraph3) -> Option<Decomposition> {
    if patterns::contains_tag(h, PatternTag::P)
        || patterns::contains_tag(h, PatternTag::C)
        || !patterns::contains_tag(h, PatternTag::P2uK3)
    {
        return None;
    }
    let masks = h.masks();
    let mut q = None;
    'outer: for (j, &b) in masks.iter().enumerate() {
        for &a in &masks[..j] {
            if (a & b).count_ones() != 1 {
                continue;
            }
            let u = a | b;
            if masks.iter().any(|&e| e & u == 0) {
                q = Some((a, b));
                break 'outer;
            }
        }
    }
    let (a, b) = q?;
    let u = a | b;
    let x = (a & b).trailing_zeros() as usize;
    let full: u16 = ((1u32 << h.n()) - 1) as u16;
    let w = full & !u;
    let inside_w: Vec<u16> = masks.iter().copied().filter(|&e| e & w == e).collect();
    let w1 = inside_w.iter().fold(0, |m, &e| m | e);
    let w0 = w & !w1;
    let mut d = Decomposition {
        host: h.clone(),
        q: [Edge::from_mask(a), Edge::from_mask(b)],
        x,
        u,
        w0,
        w1,
        h_u: Vec::new(),
        h_w: Vec::new(),
        h0: Vec::new(),
        h1: Vec::new(),
        stray: Vec::new(),
        f: Default::default(),
    };
    for &e in &masks {
        let edge = Edge::from_mask(e);
        let (in_u, in_0, in_1) = (e & u != 0, e & w0 != 0, e & w1 != 0);
        let part = match (in_u, in_0, in_1) {
            (true, false, false) => {
                d.h_u.push(edge);
                continue;
            }
            (false, _, _) => {
                d.h_w.push(edge);
                continue;
            }
            (true, true, true) => {
                d.stray.push(edge);
                continue;
            }
            (true, true, false) => 0,
            (true, false, true) => 1,
        };
        if part == 0 {
            d.h0.push(edge);
        } else {
            d.h1.push(edge);
        }
        let k = (e & u & !(1 << x)).count_ones() as usize;
        d.f[part][k].push(edge);
    }
    Some(d)
}

/// One evaluated inequality. `applies` is false when its hypotheses fail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub lhs: usize,
    pub rhs: usize,
    pub applies: bool,
}

impl Check {
    fn new(name: &str, lhs: usize, rhs: usize, applies: bool) -> Check {
        Check {
            name: name.to_string(),
            lhs,
            rhs,
            applies,
        }
    }

    pub fn holds(&self) -> bool {
        !self.applies || self.lhs <= self.rhs
    }
}

/// Bound on `|H[W]| + |H1|` in terms of `z = |W1|`.
pub fn e5_bound(z: usize) -> usize {
    match z {
        0..=5 => binom(z, 3) + 2 * z - 3,
        6..=7 => binom(z - 1, 2) + 2 * z - 3,
        _ => (z - 1) * (z - 1) / 2 + 2,
    }
}

/// Bound on `|H[U ∪ W0]|` when `F^2_1` is nonempty, in terms of `s = |W0|`.
pub fn e4_bound(s: usize) -> usize {
    match s {
        0 | 1 => 8,
        2..=4 => 3 * s + 7,
        _ => binom(s + 2, 2) + 1,
    }
}

/// Pairs of `vs` such that every edge of `g` holds both or neither.
pub fn nonseparable_pairs(g: &[u16], vs: u16) -> usize {
    let list: Vec<usize> = bits(vs).collect();
    let mut count = 0;
    for (i, &a) in list.iter().enumerate() {
        for &b in &list[i + 1..] {
            let p = 1u16 << a | 1 << b;
            if g.iter().all(|&e| e & p == 0 || e & p == p) {
                count += 1;
            }
        }
    }
    count
}

/// Evaluates the structural invariants and the counting inequalities.
pub fn check_inequalities(d: &Decomposition) -> Vec<Check> {
    let mut out = Vec::new();
    let z = d.z();
    let s = d.s();
    let m = d.host.edge_count();
    let parts = d.h_u.len() + d.h_w.len() + d.h0.len() + d.h1.len();
    out.push(Check::new("HHH", d.stray.len() + parts.abs_diff(m), 0, true));
    out.push(Check::new("F11", d.f[1][1].len(), 0, true));
    // single U-vertex edges go through x; U-pairs sit inside an edge of Q
    let qm = [d.q[0].mask(), d.q[1].mask()];
    let bad_apex = d
        .h0
        .iter()
        .chain(&d.h1)
        .filter(|e| {
            let cut = e.mask() & d.u;
            match cut.count_ones() {
                1 => cut != 1 << d.x,
                2 => !qm.iter().any(|&q| cut & q == cut),
                _ => false,
            }
        })
        .count();
    out.push(Check::new("U-trace", bad_apex, 0, true));
    let h1 = d.h1.len();
    out.push(Check::new("hu1", d.h_u.len(), 6, h1 > 0));
    out.push(Check::new("r4", h1, (2 * z).saturating_sub(3), z >= 3));
    out.push(Check::new("e5", d.h_w.len() + h1, e5_bound(z), z >= 3));
    out.push(Check::new(
        "e4",
        d.u_w0_edges(),
        e4_bound(s),
        s >= 1 && !d.f[1][2].is_empty(),
    ));
    let w = d.w0 | d.w1;
    let forf = bits(w)
        .filter(|&v| d.f_at(0, v) > 0 && d.f_at(2, v) > 0)
        .count();
    out.push(Check::new("FORF", forf, 0, true));
    let over = bits(w)
        .filter(|&v| d.f_at(1, v) > 4 || d.f_at(2, v) > 2)
        .count();
    out.push(Check::new("4and2", over, 0, true));
    // star case: H[W] inside a star centered in W1
    let hw: Vec<u16> = d.h_w.iter().map(|e| e.mask()).collect();
    let star = !hw.is_empty() && hw.iter().fold(u16::MAX, |a, &e| a & e) != 0;
    let star = star && z >= 4;
    let half = (z.max(1) - 1) / 2;
    out.push(Check::new("nonseparable", nonseparable_pairs(&hw, d.w1), half, star));
    // the bounds on H1 are only claimed for the large-W case
    out.push(Check::new("F01-star", d.f[1][0].len(), half, star && z >= 8));
    out.push(Check::new("F21-star", d.f[1][2].len(), 2, star && z >= 8));
    out
}

/// The Lemma's setting: connected, not inside a comet.
pub fn in_lemma_setting(h: &Hypergraph3) -> bool {
    h.is_connected() && !patterns::in_comet(h)
}

/// Randomized greedy `{P,C}`-free graphs containing `P2 ∪ K3`. Edges are
/// tried in a shuffled order; a quarter of the runs stop early at a random
/// size. Graphs missing `P2 ∪ K3` are discarded and redrawn.
pub fn sample_pc_free(n: usize, seed: u64, count: usize) -> Vec<Hypergraph3> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all: Vec<u16> = Hypergraph3::complete(n).map(|k| k.masks()).unwrap_or_default();
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count && attempts < 1000 * count.max(1) {
        attempts += 1;
        let mut order = all.clone();
        order.shuffle(&mut rng);
        let stop = if rng.gen_ratio(1, 4) {
            rng.gen_range(3..=order.len().max(3))
        } else {
            usize::MAX
        };
        let mut edges: Vec<u16> = Vec::new();
        for f in order {
            if edges.len() >= stop {
                break;
            }
            if !patterns::completes(PatternTag::P, &edges, f)
                && !patterns::completes(PatternTag::C, &edges, f)
            {
                edges.push(f);
            }
        }
        if patterns::find_tag_masks(PatternTag::P2uK3, &edges).is_some() {
            out.push(Hypergraph3::from_masks(n, &edges).unwrap());
        }
    }
    out
}

/// Random sub-3-graphs of a star on `z` vertices with no isolated vertex.
pub fn sample_star_subgraphs(z: usize, seed: u64, count: usize) -> Vec<Hypergraph3> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let star: Vec<u16> = Hypergraph3::complete(z)
        .unwrap()
        .masks()
        .into_iter()
        .filter(|e| e & 1 == 1)
        .collect();
    let full = ((1u32 << z) - 1) as u16;
    let mut out = Vec::new();
    while out.len() < count {
        let p = rng.gen_range(0.05..0.9);
        let es: Vec<u16> = star.iter().copied().filter(|_| rng.gen_bool(p)).collect();
        if es.iter().fold(0, |a, &e| a | e) == full {
            out.push(Hypergraph3::from_masks(z, &es).unwrap());
        }
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub applied: usize,
    pub passed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub check: String,
    pub lhs: usize,
    pub rhs: usize,
    /// The instance in the core text format.
    pub instance: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub ns: Vec<usize>,
    pub seed: u64,
    pub samples: usize,
    /// Samples in the Lemma's setting.
    pub in_setting: usize,
    pub checks: BTreeMap<String, Tally>,
    /// Star samples for the nonseparable-pair bound.
    pub star_samples: usize,
    pub violations: Vec<Violation>,
}

impl AuditReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Audits `samples` graphs spread evenly over `ns`. Each `n` draws from its
/// own seed derived from `seed`, so results do not depend on thread count.
pub fn audit(ns: &[usize], samples: usize, seed: u64) -> AuditReport {
    let per: Vec<(usize, usize)> = ns
        .iter()
        .enumerate()
        .map(|(i, &n)| (n, samples / ns.len() + usize::from(i < samples % ns.len())))
        .collect();
    let graphs: Vec<Hypergraph3> = per
        .par_iter()
        .flat_map_iter(|&(n, k)| sample_pc_free(n, seed ^ (n as u64) << 32, k))
        .collect();
    let results: Vec<(bool, Vec<Check>, String)> = graphs
        .par_iter()
        .filter_map(|g| {
            let d = decompose(g)?;
            Some((in_lemma_setting(g), check_inequalities(&d), g.to_text()))
        })
        .collect();
    let mut rep = AuditReport {
        ns: ns.to_vec(),
        seed,
        samples: results.len(),
        ..Default::default()
    };
    for (setting, checks, text) in results {
        rep.in_setting += usize::from(setting);
        for c in checks {
            let t = rep.checks.entry(c.name.clone()).or_default();
            if c.applies {
                t.applied += 1;
                if c.holds() {
                    t.passed += 1;
                } else {
                    rep.violations.push(Violation {
                        check: c.name,
                        lhs: c.lhs,
                        rhs: c.rhs,
                        instance: text.clone(),
                    });
                }
            }
        }
    }
    // the nonseparable-pair bound directly on star sub-3-graphs
    for z in 4..=16 {
        for g in sample_star_subgraphs(z, seed ^ 0x5eed ^ z as u64, 20) {
            rep.star_samples += 1;
            let full = ((1u32 << z) - 1) as u16;
            let lhs = nonseparable_pairs(&g.masks(), full);
            let rhs = (z - 1) / 2;
            let t = rep.checks.entry("nonseparable-star".into()).or_default();
            t.applied += 1;
            if lhs <= rhs {
                t.passed += 1;
            } else {
                rep.violations.push(Violation {
                    check: "nonseparable-star".into(),
                    lhs,
                    rhs,
                    instance: g.to_text(),
                });
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p2_union_k3_itself() {
        let g = crate::patterns::Pattern::P2uK3.graph();
        let d = decompose(&g).unwrap();
        assert_eq!(d.u, 0b11111);
        assert_eq!(d.w1, 0b11100000);
        assert!(d.h1.is_empty());
        assert_eq!(d.x, 0);
        assert!(check_inequalities(&d).iter().all(Check::holds));
    }

    #[test]
    fn comet_decomposes() {
        let g = crate::constructions::build(crate::constructions::Tag::Comet, 12).unwrap();
        let d = decompose(&g).unwrap();
        // the head lies inside W1
        assert!(d.w1 & 0b1110 == 0b1110 || d.u & 0b1110 != 0);
        assert!(check_inequalities(&d).iter().all(Check::holds));
    }

    #[test]
    fn path_is_rejected() {
        assert!(decompose(&crate::patterns::Pattern::P.graph()).is_none());
    }

    #[test]
    fn deterministic() {
        let a = sample_pc_free(10, 1, 20);
        let b = sample_pc_free(10, 1, 20);
        assert_eq!(a, b);
        for g in &a {
            assert_eq!(decompose(g), decompose(g));
        }
    }

    #[test]
    fn samples_are_pc_free() {
        let gs = sample_pc_free(10, 1, 100);
        assert_eq!(gs.len(), 100);
        for g in &gs {
            assert!(!patterns::contains_tag(g, PatternTag::P));
            assert!(!patterns::contains_tag(g, PatternTag::C));
            assert!(patterns::contains_tag(g, PatternTag::P2uK3));
        }
        assert!(sample_pc_free(10, 1, 0).is_empty());
    }

    #[test]
    fn bounds() {
        assert_eq!(e5_bound(5), 17);
        assert_eq!(e4_bound(1), 8);
        assert_eq!(e4_bound(3), 16);
        assert_eq!(e4_bound(5), 22);
        // a single edge has three nonseparable pairs on z = 3
        assert_eq!(nonseparable_pairs(&[0b111], 0b111), 3);
    }
}
