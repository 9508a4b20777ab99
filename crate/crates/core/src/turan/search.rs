//! Exact maximization over F-free graphs.
//!
//! Graphs are grown one vertex at a time; the slots added with vertex `k` are
//! exactly the colex slots `C(k,3)..C(k+1,3)`, branched on in order. After
//! each vertex the partial graphs are reduced to one representative per
//! isomorphism class.
//!
//! Pruning uses a min-degree deletion bound: if `H` has `m` edges on `k+1`
//! vertices, removing a vertex of minimum degree leaves at least
//! `m - floor(3m/(k+1))` edges. Ordering the vertices of any target graph by
//! repeatedly deleting a minimum-degree vertex therefore gives a chain of
//! induced subgraphs whose sizes respect `thresholds`, and in which every
//! newly added vertex has minimum degree. Only such extensions are generated.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{FactKey, NamedGraph, SearchSpec, SearchStats, TrustStatus, TuranResult};
use crate::canon::{canonical_key, CanonicalKey};
use crate::constructions::{construct, Tag};
use crate::error::{Error, Result};
use crate::graph::{binom, Edge, Hypergraph3};
use crate::patterns::{self, find_tag_masks, Host, PatternTag};

/// `m[k]`: fewest edges the `k`-vertex prefix of a target graph with `t`
/// edges on `n` vertices can have.
pub fn thresholds(n: usize, t: usize) -> Vec<usize> {
    let mut m = vec![0; n + 1];
    m[n] = t;
    for k in (0..n).rev() {
        let kk = k + 1;
        m[k] = if kk >= 3 { m[kk] - 3 * m[kk] / kk } else { 0 };
    }
    m
}

struct Filters<'a> {
    n: usize,
    require: Option<PatternTag>,
    connected: bool,
    hosts: &'a [Host],
}

impl Filters<'_> {
    fn accepts(&self, masks: &[u16]) -> bool {
        if let Some(g) = self.require {
            if find_tag_masks(g, masks).is_none() {
                return false;
            }
        }
        if !self.connected && self.hosts.is_empty() {
            return true;
        }
        let g = Hypergraph3::from_masks(self.n, masks).unwrap();
        if self.connected && !g.is_connected() {
            return false;
        }
        !self.hosts.iter().any(|h| h.contains_copy(&g))
    }
}

fn is_free(forbidden: &[PatternTag], masks: &[u16]) -> bool {
    forbidden.iter().all(|&t| find_tag_masks(t, masks).is_none())
}

/// Qualifying graphs to start the bound from: catalog constructions plus
/// randomized greedy maximal F-free graphs (deterministic in `spec.seed`).
pub fn seeds(spec: &SearchSpec) -> Vec<NamedGraph> {
    let hosts: Vec<Host> = spec.excluded.iter().map(|h| Host::new(h.graph.clone())).collect();
    let filt = Filters {
        n: spec.n,
        require: spec.require,
        connected: spec.connected,
        hosts: &hosts,
    };
    let mut out = Vec::new();
    for tag in Tag::all() {
        if let Ok(c) = construct(tag, spec.n) {
            let m = c.graph.masks();
            if is_free(&spec.forbidden, &m) && filt.accepts(&m) {
                out.push(NamedGraph::new(tag.label(spec.n), c.graph));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let slots = binom(spec.n, 3);
    for i in 0..64 {
        let mut masks: Vec<u16> = Vec::new();
        if let Some(g) = spec.require {
            let gg = g.graph();
            let mut perm: Vec<usize> = (0..spec.n).collect();
            perm.shuffle(&mut rng);
            for e in gg.edges() {
                let [a, b, c] = e.vertices();
                masks.push((1 << perm[a]) | (1 << perm[b]) | (1 << perm[c]));
            }
        }
        let mut order: Vec<usize> = (0..slots).collect();
        order.shuffle(&mut rng);
        // a random early stop keeps some non-maximal variety
        let stop = if i % 4 == 3 { rng.gen_range(0..=slots) } else { slots };
        for &s in order.iter().take(stop) {
            let f = Edge::from_rank(s).mask();
            if masks.contains(&f) {
                continue;
            }
            if spec.forbidden.iter().all(|&t| !patterns::completes(t, &masks, f)) {
                masks.push(f);
            }
        }
        if is_free(&spec.forbidden, &masks) && filt.accepts(&masks) {
            let g = Hypergraph3::from_masks(spec.n, &masks).unwrap();
            out.push(NamedGraph::new(format!("greedy#{i}"), g));
        }
    }
    out
}

struct Extender<'a> {
    k: usize,
    forbidden: &'a [PatternTag],
    pairs: Vec<u16>,
    /// `rem[p * k + v]`: pairs at positions `>= p` containing `v`.
    rem: Vec<u8>,
    need_total: usize,
    deadline: Instant,
    abort: &'a AtomicBool,
}

struct Walk<'e, F: FnMut(&[u16])> {
    ext: &'e Extender<'e>,
    masks: Vec<u16>,
    parent_len: usize,
    deg: [usize; 16],
    link: [usize; 16],
    dmax: usize,
    chosen: usize,
    nodes: u64,
    prunes: u64,
    emit: F,
}

impl<F: FnMut(&[u16])> Walk<'_, F> {
    fn run(&mut self, p: usize) {
        self.nodes += 1;
        if self.nodes & 0xfff == 0 {
            if self.ext.abort.load(Ordering::Relaxed) {
                return;
            }
            if Instant::now() >= self.ext.deadline {
                self.ext.abort.store(true, Ordering::Relaxed);
                return;
            }
        }
        let ext = self.ext;
        let k = ext.k;
        let need = ext.need_total.saturating_sub(self.parent_len);
        let left = ext.pairs.len() - p;
        if self.chosen + left < need {
            self.prunes += 1;
            return;
        }
        let target = need.max(self.chosen);
        for v in 0..k {
            if self.deg[v] + self.link[v] + (ext.rem[p * k + v] as usize) < target {
                self.prunes += 1;
                return;
            }
        }
        if p == ext.pairs.len() {
            (self.emit)(&self.masks);
            return;
        }
        let pair = ext.pairs[p];
        let f = pair | (1u16 << k);
        if self.chosen < self.dmax
            && ext
                .forbidden
                .iter()
                .all(|&t| !patterns::completes(t, &self.masks, f))
        {
            self.masks.push(f);
            self.chosen += 1;
            let (a, b) = (pair.trailing_zeros() as usize, 15 - pair.leading_zeros() as usize);
            self.link[a] += 1;
            self.link[b] += 1;
            self.run(p + 1);
            self.link[a] -= 1;
            self.link[b] -= 1;
            self.chosen -= 1;
            self.masks.pop();
        }
        self.run(p + 1);
    }
}

impl<'a> Extender<'a> {
    fn new(
        k: usize,
        forbidden: &'a [PatternTag],
        need_total: usize,
        deadline: Instant,
        abort: &'a AtomicBool,
    ) -> Self {
        let mut pairs = Vec::new();
        for j in 1..k {
            for i in 0..j {
                pairs.push((1u16 << i) | (1u16 << j));
            }
        }
        let np = pairs.len();
        let mut rem = vec![0u8; (np + 1) * k];
        for p in (0..np).rev() {
            for v in 0..k {
                rem[p * k + v] = rem[(p + 1) * k + v] + ((pairs[p] >> v) & 1) as u8;
            }
        }
        Extender {
            k,
            forbidden,
            pairs,
            rem,
            need_total,
            deadline,
            abort,
        }
    }

    /// Calls `emit` with every admissible extension of `parent` by vertex `k`.
    fn extend<F: FnMut(&[u16])>(&self, parent: &[u16], emit: F) -> (u64, u64) {
        let k = self.k;
        let mut deg = [0usize; 16];
        for &m in parent {
            for (v, d) in deg.iter_mut().enumerate().take(k) {
                *d += ((m >> v) & 1) as usize;
            }
        }
        // the new vertex has minimum degree, so at most the average
        let dmax = if k >= 3 {
            3 * parent.len() / (k - 2)
        } else {
            usize::MAX
        };
        let mut w = Walk {
            ext: self,
            masks: parent.to_vec(),
            parent_len: parent.len(),
            deg,
            link: [0; 16],
            dmax,
            chosen: 0,
            nodes: 0,
            prunes: 0,
            emit,
        };
        w.run(0);
        (w.nodes, w.prunes)
    }
}

struct Enumeration {
    /// Best qualifying graphs at the final level (as edge masks).
    best: Option<(usize, Vec<Vec<u16>>)>,
    stats: SearchStats,
    aborted: bool,
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    if jobs == 0 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Every F-free graph on `n` vertices with at least `t` edges is reached;
/// among those passing the filters the largest are returned.
fn enumerate(spec: &SearchSpec, t: usize, hosts: &[Host], deadline: Instant) -> Enumeration {
    let n = spec.n;
    let m = thresholds(n, t);
    let abort = AtomicBool::new(false);
    let filt = Filters {
        n,
        require: spec.require,
        connected: spec.connected,
        hosts,
    };
    let mut stats = SearchStats::default();
    let mut level: Vec<Vec<u16>> = vec![Vec::new()];
    for k in 0..n {
        if Instant::now() >= deadline {
            abort.store(true, Ordering::Relaxed);
            break;
        }
        let ext = Extender::new(k, &spec.forbidden, m[k + 1], deadline, &abort);
        if k + 1 < n {
            let parts: Vec<(Vec<CanonicalKey>, u64, u64)> = level
                .par_iter()
                .map(|parent| {
                    let mut keys = Vec::new();
                    let (nodes, prunes) = ext.extend(parent, |child| {
                        let g = Hypergraph3::from_masks(k + 1, child).unwrap();
                        keys.push(canonical_key(&g));
                    });
                    keys.sort_unstable();
                    keys.dedup();
                    (keys, nodes, prunes)
                })
                .collect();
            let mut all: BTreeSet<CanonicalKey> = BTreeSet::new();
            for (keys, nodes, prunes) in parts {
                stats.nodes += nodes;
                stats.prunes += prunes;
                all.extend(keys);
            }
            level = all.iter().map(|key| key.graph().masks()).collect();
            stats.level_sizes.push(level.len());
        } else {
            let parts: Vec<(Option<(usize, Vec<Vec<u16>>)>, u64, u64)> = level
                .par_iter()
                .map(|parent| {
                    let mut best: Option<(usize, Vec<Vec<u16>>)> = None;
                    let (nodes, prunes) = ext.extend(parent, |child| {
                        let c = child.len();
                        if matches!(&best, Some((b, _)) if c < *b) {
                            return;
                        }
                        if !filt.accepts(child) {
                            return;
                        }
                        match &mut best {
                            Some((b, v)) if *b == c => v.push(child.to_vec()),
                            _ => best = Some((c, vec![child.to_vec()])),
                        }
                    });
                    (best, nodes, prunes)
                })
                .collect();
            let mut best: Option<(usize, Vec<Vec<u16>>)> = None;
            let mut leaves = 0;
            for (b, nodes, prunes) in parts {
                stats.nodes += nodes;
                stats.prunes += prunes;
                if let Some((c, v)) = b {
                    leaves += v.len();
                    match &mut best {
                        Some((bc, bv)) if *bc == c => bv.extend(v),
                        Some((bc, _)) if *bc > c => {}
                        _ => best = Some((c, v)),
                    }
                }
            }
            stats.level_sizes.push(leaves);
            return Enumeration {
                best,
                stats,
                aborted: abort.load(Ordering::Relaxed),
            };
        }
        if abort.load(Ordering::Relaxed) {
            break;
        }
    }
    Enumeration {
        best: None,
        stats,
        aborted: true,
    }
}

fn keys_of(n: usize, graphs: &[Vec<u16>]) -> Vec<CanonicalKey> {
    let mut keys: Vec<CanonicalKey> = graphs
        .par_iter()
        .map(|m| canonical_key(&Hypergraph3::from_masks(n, m).unwrap()))
        .collect();
    keys.sort_unstable();
    keys.dedup();
    keys
}

/// Exact `ex` for a single spec: the maximum over F-free graphs that pass the
/// requirement, connectivity and exclusion filters, with every optimizer up to
/// isomorphism.
pub fn max_f_free(spec: &SearchSpec) -> Result<TuranResult> {
    spec.validate()?;
    let started = Instant::now();
    let deadline = started + spec.budget;
    let seeds = seeds(spec);
    let seed_value = seeds.iter().map(|s| s.graph.edge_count()).max();
    let t = seed_value.unwrap_or(0);
    let hosts: Vec<Host> = spec.excluded.iter().map(|h| Host::new(h.graph.clone())).collect();
    let run = with_pool(spec.jobs, || enumerate(spec, t, &hosts, deadline));
    let mut stats = run.stats;
    stats.seed_value = t;
    stats.wall_ms = started.elapsed().as_millis();
    let excluded = spec.excluded.iter().map(|h| h.label.clone()).collect();
    if run.aborted {
        let family = match seed_value {
            Some(v) => {
                let best: Vec<Vec<u16>> = seeds
                    .iter()
                    .filter(|s| s.graph.edge_count() == v)
                    .map(|s| s.graph.masks())
                    .collect();
                keys_of(spec.n, &best)
            }
            None => Vec::new(),
        };
        return Ok(TuranResult {
            key: spec.key(),
            excluded,
            value: seed_value,
            family,
            status: if seed_value.is_some() {
                TrustStatus::LowerBoundOnly
            } else {
                TrustStatus::Unknown
            },
            stats,
        });
    }
    let (value, family) = match run.best {
        Some((c, graphs)) => (Some(c), with_pool(spec.jobs, || keys_of(spec.n, &graphs))),
        None => (None, Vec::new()),
    };
    if let (Some(v), Some(s)) = (value, seed_value) {
        if v < s {
            return Err(Error::InvalidSpec(format!(
                "search optimum {v} below the seeded bound {s}"
            )));
        }
    }
    Ok(TuranResult {
        key: spec.key(),
        excluded,
        value,
        family,
        status: TrustStatus::SearchVerified,
        stats,
    })
}

/// Orders `1..=order` in sequence, each excluding the families of the orders
/// before it. Checks that the values strictly decrease.
pub fn higher_order_chain(
    n: usize,
    forbidden: &[PatternTag],
    order: usize,
    base: &SearchSpec,
) -> Result<Vec<TuranResult>> {
    let mut out: Vec<TuranResult> = Vec::new();
    let mut excluded: Vec<NamedGraph> = Vec::new();
    for s in 1..=order {
        let key = FactKey::ordinary(forbidden, s, n);
        if let Some(prev) = out.last() {
            if prev.value.is_none() {
                out.push(TuranResult {
                    key,
                    excluded: excluded.iter().map(|h| h.label.clone()).collect(),
                    value: None,
                    family: Vec::new(),
                    status: prev.status,
                    stats: SearchStats::default(),
                });
                continue;
            }
        }
        let spec = SearchSpec {
            n,
            forbidden: key.forbidden.clone(),
            order: s,
            require: None,
            connected: false,
            excluded: excluded.clone(),
            ..base.clone()
        };
        let mut r = max_f_free(&spec)?;
        if let Some(prev) = out.last() {
            r.status = r.status.min(prev.status);
            if let (Some(a), Some(b)) = (prev.value, r.value) {
                if b >= a {
                    return Err(Error::Registry(format!(
                        "decrease violated: {} = {b} is not below {} = {a}",
                        r.key, prev.key
                    )));
                }
            }
        }
        for (i, key) in r.family.iter().enumerate() {
            excluded.push(NamedGraph::new(format!("Ex^({s})#{i}"), key.graph()));
        }
        out.push(r);
    }
    Ok(out)
}

pub fn higher_order(
    n: usize,
    forbidden: &[PatternTag],
    order: usize,
    base: &SearchSpec,
) -> Result<TuranResult> {
    Ok(higher_order_chain(n, forbidden, order, base)?
        .pop()
        .expect("order >= 1"))
}

/// `ex(n; F | G)`, or `ex_conn(n; F | G)` when `connected` is set.
pub fn conditional(
    n: usize,
    forbidden: &[PatternTag],
    require: PatternTag,
    connected: bool,
    base: &SearchSpec,
) -> Result<TuranResult> {
    let spec = SearchSpec {
        n,
        forbidden: super::normalize(forbidden),
        order: 1,
        require: Some(require),
        connected,
        excluded: Vec::new(),
        ..base.clone()
    };
    max_f_free(&spec)
}

/// Plain enumeration of all `2^C(n,3)` labeled graphs, for cross-checking the
/// search on tiny instances. Uses only whole-graph oracles and the generic
/// embedder.
pub fn reference_search(spec: &SearchSpec) -> Result<(Option<usize>, Vec<CanonicalKey>)> {
    let n = spec.n;
    let slots = binom(n, 3);
    if slots > 20 {
        return Err(Error::InvalidSpec("reference search is limited to n <= 6".into()));
    }
    let slot_masks: Vec<u16> = (0..slots).map(|s| Edge::from_rank(s).mask()).collect();
    let mut best: Option<usize> = None;
    let mut fam: Vec<Hypergraph3> = Vec::new();
    for bits in 0u32..(1u32 << slots) {
        let masks: Vec<u16> = (0..slots)
            .filter(|&s| bits >> s & 1 == 1)
            .map(|s| slot_masks[s])
            .collect();
        let c = masks.len();
        if matches!(best, Some(b) if c < b) {
            continue;
        }
        if !is_free(&spec.forbidden, &masks) {
            continue;
        }
        if let Some(g) = spec.require {
            if find_tag_masks(g, &masks).is_none() {
                continue;
            }
        }
        let g = Hypergraph3::from_masks(n, &masks)?;
        if spec.connected && !g.is_connected() {
            continue;
        }
        if spec
            .excluded
            .iter()
            .any(|h| patterns::is_sub_iso_generic(&g, &h.graph))
        {
            continue;
        }
        if best != Some(c) {
            best = Some(c);
            fam.clear();
        }
        fam.push(g);
    }
    let mut keys: Vec<CanonicalKey> = fam.iter().map(canonical_key).collect();
    keys.sort_unstable();
    keys.dedup();
    Ok((best, keys))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::time::Duration;

    fn spec(n: usize, f: &[PatternTag]) -> SearchSpec {
        let mut s = SearchSpec::new(n, f);
        s.budget = Duration::from_secs(120);
        s
    }

    #[test]
    fn threshold_chain() {
        assert_eq!(thresholds(8, 21), vec![0, 0, 0, 1, 2, 4, 8, 14, 21]);
        assert!(thresholds(5, 0).iter().all(|&x| x == 0));
    }

    #[test]
    fn k6_is_the_answer_on_six_vertices() {
        let r = max_f_free(&spec(6, &[PatternTag::P])).unwrap();
        assert_eq!(r.value, Some(20));
        assert_eq!(r.family, vec![canonical_key(&Hypergraph3::complete(6).unwrap())]);
        assert_eq!(r.status, TrustStatus::SearchVerified);
    }

    #[test]
    fn matchings_on_six_vertices() {
        let r = max_f_free(&spec(6, &[PatternTag::M])).unwrap();
        assert_eq!(r.value, Some(10));
    }

    #[test]
    fn second_order_undefined_below_seven() {
        let chain = higher_order_chain(6, &[PatternTag::P], 3, &spec(6, &[PatternTag::P])).unwrap();
        assert_eq!(chain[0].value, Some(20));
        assert_eq!(chain[1].value, None);
        assert_eq!(chain[2].value, None);
    }

    #[test]
    fn agrees_with_reference_on_tiny_graphs() {
        for n in 3..=5 {
            for f in [
                vec![PatternTag::P],
                vec![PatternTag::C],
                vec![PatternTag::M],
                vec![PatternTag::P2],
                vec![PatternTag::M, PatternTag::P2],
            ] {
                let s = spec(n, &f);
                let fast = max_f_free(&s).unwrap();
                let (v, keys) = reference_search(&s).unwrap();
                assert_eq!(fast.value, v, "n={n} F={f:?}");
                assert_eq!(fast.family, keys, "n={n} F={f:?}");
            }
        }
    }

    #[test]
    fn conditional_tiny_agrees_with_reference() {
        for f in [PatternTag::C, PatternTag::M] {
            let mut s = spec(5, &[f]);
            s.require = Some(PatternTag::P2);
            let fast = max_f_free(&s).unwrap();
            let (v, keys) = reference_search(&s).unwrap();
            assert_eq!(fast.value, v);
            assert_eq!(fast.family, keys);
        }
    }

    #[test]
    fn zero_budget_degrades_status() {
        let mut s = spec(8, &[PatternTag::P]);
        s.budget = Duration::from_millis(0);
        let r = max_f_free(&s).unwrap();
        assert_eq!(r.status, TrustStatus::LowerBoundOnly);
        assert_eq!(r.value, Some(21));
    }
}
