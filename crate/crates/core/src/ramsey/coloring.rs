//! Proper colorings: witnesses, the star-peeling construction, and the
//! exhaustive arrowing search.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Hypergraph3;
use crate::patterns::{self, PatternTag};

/// An assignment of colors `0..r` to the edges of `host`, listed in colex
/// order of the host's edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringWitness {
    pub host: Hypergraph3,
    pub r: usize,
    pub colors: Vec<u8>,
}

impl ColoringWitness {
    pub fn classes(&self) -> Vec<Vec<u16>> {
        let mut out = vec![Vec::new(); self.r];
        for (m, &c) in self.host.masks().iter().zip(&self.colors) {
            if (c as usize) < self.r {
                out[c as usize].push(*m);
            }
        }
        out
    }

    /// Checks totality, the color range, and that no class contains `P`.
    pub fn verify(&self) -> Result<()> {
        if self.colors.len() != self.host.edge_count() {
            return Err(Error::Certificate(format!(
                "coloring covers {} of {} edges",
                self.colors.len(),
                self.host.edge_count()
            )));
        }
        if let Some(&c) = self.colors.iter().find(|&&c| c as usize >= self.r) {
            return Err(Error::Certificate(format!("color {c} outside 0..{}", self.r)));
        }
        for (i, class) in self.classes().iter().enumerate() {
            if patterns::find_tag_masks(PatternTag::P, class).is_some() {
                return Err(Error::Certificate(format!("color {i} contains P")));
            }
        }
        Ok(())
    }
}

/// Colors the edges of `host` (a graph on at most `r + 5` vertices) by their
/// least vertex: vertices `0..n-6` each own a star, the last six vertices
/// span one `K6` in the final color.
pub fn star_peeling(host: &Hypergraph3, r: usize) -> Result<ColoringWitness> {
    let n = host.n();
    if r == 0 || n > r + 5 {
        return Err(Error::InvalidSpec(format!(
            "star peeling needs n <= r + 5 (n = {n}, r = {r})"
        )));
    }
    let stars = n.saturating_sub(6);
    let colors = host
        .edges()
        .map(|e| e.vertices()[0].min(stars) as u8)
        .collect();
    let w = ColoringWitness {
        host: host.clone(),
        r,
        colors,
    };
    w.verify()?;
    Ok(w)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColoringOutcome {
    Proper(ColoringWitness),
    /// Exhaustively confirmed that no proper coloring exists.
    None,
    /// Budget ran out, or the instance is too large to try.
    Unknown,
}

/// Result of the exhaustive search; `arrows` is `None` on timeout.
#[derive(Clone, Debug)]
pub struct ExhaustiveOutcome {
    pub arrows: Option<bool>,
    pub witness: Option<ColoringWitness>,
    pub nodes: u64,
    pub prefixes: usize,
}

struct Search<'a> {
    edges: &'a [u16],
    r: usize,
    classes: Vec<Vec<u16>>,
    colors: Vec<u8>,
    nodes: u64,
    deadline: Instant,
    abort: &'a AtomicBool,
}

impl Search<'_> {
    /// Colors edges `i..`; color `c` may be used first only after `c - 1`.
    fn run(&mut self, i: usize, used: usize) -> bool {
        self.nodes += 1;
        if self.nodes & 0xffff == 0 {
            if self.abort.load(Ordering::Relaxed) {
                return false;
            }
            if Instant::now() >= self.deadline {
                self.abort.store(true, Ordering::Relaxed);
                return false;
            }
        }
        if i == self.edges.len() {
            return true;
        }
        let f = self.edges[i];
        for c in 0..(used + 1).min(self.r) {
            if patterns::completes(PatternTag::P, &self.classes[c], f) {
                continue;
            }
            self.classes[c].push(f);
            self.colors.push(c as u8);
            if self.run(i + 1, used.max(c + 1)) {
                return true;
            }
            self.colors.pop();
            self.classes[c].pop();
            if self.abort.load(Ordering::Relaxed) {
                return false;
            }
        }
        false
    }
}

/// Enumerates symmetry-reduced colorings of the first `depth` edges.
fn prefixes(edges: &[u16], r: usize, depth: usize) -> Vec<(Vec<u8>, usize)> {
    let mut out = vec![(Vec::new(), 0usize)];
    for i in 0..depth.min(edges.len()) {
        let mut next = Vec::new();
        for (p, used) in out {
            for c in 0..(used + 1).min(r) {
                let mut q = p.clone();
                q.push(c as u8);
                // prune prefixes that already hold P
                let cls: Vec<u16> = q
                    .iter()
                    .zip(edges)
                    .filter(|(&x, _)| x as usize == c)
                    .map(|(_, &m)| m)
                    .collect();
                let f = edges[i];
                let without: Vec<u16> = cls.iter().copied().filter(|&m| m != f).collect();
                if patterns::completes(PatternTag::P, &without, f) {
                    continue;
                }
                next.push((q, used.max(c + 1)));
            }
        }
        out = next;
    }
    out
}

/// Decides `host -> (P; r)` by backtracking over colorings of the edges in
/// colex order, pruning a branch as soon as a color class contains `P`.
pub fn arrows_exhaustive(host: &Hypergraph3, r: usize, budget: Duration) -> ExhaustiveOutcome {
    let edges = host.masks();
    if r == 0 {
        let arrows = !edges.is_empty();
        return ExhaustiveOutcome {
            arrows: Some(arrows),
            witness: None,
            nodes: 0,
            prefixes: 0,
        };
    }
    let deadline = Instant::now() + budget;
    let abort = AtomicBool::new(false);
    let nodes = AtomicU64::new(0);
    let depth = 12.min(edges.len());
    let pre = prefixes(&edges, r, depth);
    let found = pre.par_iter().find_map_first(|(p, used)| {
        let mut classes = vec![Vec::new(); r];
        for (&c, &m) in p.iter().zip(&edges) {
            classes[c as usize].push(m);
        }
        let mut s = Search {
            edges: &edges,
            r,
            classes,
            colors: p.clone(),
            nodes: 0,
            deadline,
            abort: &abort,
        };
        let ok = s.run(p.len(), *used);
        nodes.fetch_add(s.nodes, Ordering::Relaxed);
        ok.then_some(s.colors)
    });
    let nodes = nodes.load(Ordering::Relaxed);
    match found {
        Some(colors) => {
            let w = ColoringWitness {
                host: host.clone(),
                r,
                colors,
            };
            ExhaustiveOutcome {
                arrows: Some(false),
                witness: Some(w),
                nodes,
                prefixes: pre.len(),
            }
        }
        None if abort.load(Ordering::Relaxed) => ExhaustiveOutcome {
            arrows: None,
            witness: None,
            nodes,
            prefixes: pre.len(),
        },
        None => ExhaustiveOutcome {
            arrows: Some(true),
            witness: None,
            nodes,
            prefixes: pre.len(),
        },
    }
}

/// A proper `r`-coloring of `host` if one is found: star peeling when the
/// host has at most `r + 5` vertices, exhaustive search on up to 8 vertices.
pub fn find_proper_coloring(host: &Hypergraph3, r: usize, budget: Duration) -> ColoringOutcome {
    if r > 0 && host.n() <= r + 5 {
        if let Ok(w) = star_peeling(host, r) {
            return ColoringOutcome::Proper(w);
        }
    }
    if host.n() > 8 {
        return ColoringOutcome::Unknown;
    }
    let out = arrows_exhaustive(host, r, budget);
    match (out.arrows, out.witness) {
        (Some(false), Some(w)) => ColoringOutcome::Proper(w),
        (Some(true), _) => ColoringOutcome::None,
        _ => ColoringOutcome::Unknown,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k7_two_colors_by_star_and_k6() {
        let k7 = Hypergraph3::complete(7).unwrap();
        let w = star_peeling(&k7, 2).unwrap();
        let classes = w.classes();
        assert_eq!(classes[0].len(), 15);
        assert_eq!(classes[1].len(), 20);
    }

    #[test]
    fn star_peeling_up_to_nine_colors() {
        for r in 2..=9 {
            let k = Hypergraph3::complete(r + 5).unwrap();
            star_peeling(&k, r).unwrap().verify().unwrap();
        }
        assert!(star_peeling(&Hypergraph3::complete(15).unwrap(), 9).is_err());
    }

    #[test]
    fn tampered_witness_fails() {
        let k7 = Hypergraph3::complete(7).unwrap();
        let mut w = star_peeling(&k7, 2).unwrap();
        for c in w.colors.iter_mut() {
            *c = 0;
        }
        assert!(w.verify().is_err());
        w.colors.pop();
        assert!(w.verify().is_err());
    }

    #[test]
    fn path_arrows_with_one_color() {
        let p = crate::patterns::Pattern::P.graph();
        let out = arrows_exhaustive(&p, 1, Duration::from_secs(10));
        assert_eq!(out.arrows, Some(true));
        let out = arrows_exhaustive(&p, 2, Duration::from_secs(10));
        assert_eq!(out.arrows, Some(false));
        out.witness.unwrap().verify().unwrap();
    }

    #[test]
    fn k7_two_colors_exhaustive_finds_witness() {
        let k7 = Hypergraph3::complete(7).unwrap();
        let out = arrows_exhaustive(&k7, 2, Duration::from_secs(60));
        assert_eq!(out.arrows, Some(false));
        out.witness.unwrap().verify().unwrap();
    }
}
