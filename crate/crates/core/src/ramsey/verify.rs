//! Independent checking of arrowing certificates. Nothing here calls the
//! prover; outcomes are re-enumerated vertex by vertex and coverage uses a
//! separate edge-mapping test.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::canon::canonical_key;
use crate::graph::{binom, Edge, Hypergraph3};
use crate::patterns::PatternTag;
use crate::turan::{FactKey, Registry, TrustStatus};

use super::bipartite;
use super::prover::{ArrowCertificate, CaseStep, Lemma, Proof};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub lemmas: usize,
    pub outcomes_checked: usize,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Does `a` map into `b` by a vertex injection sending edges to edges?
/// Both graphs are tiny (a handful of missing edges).
pub fn edges_embed(a: &Hypergraph3, b: &Hypergraph3) -> bool {
    let ae: Vec<[usize; 3]> = a.edges().map(Edge::vertices).collect();
    let be: Vec<[usize; 3]> = b.edges().map(Edge::vertices).collect();
    if ae.len() > be.len() {
        return false;
    }
    let mut map: BTreeMap<usize, usize> = BTreeMap::new();
    let mut used = vec![false; be.len()];
    fn rec(
        i: usize,
        ae: &[[usize; 3]],
        be: &[[usize; 3]],
        used: &mut [bool],
        map: &mut BTreeMap<usize, usize>,
    ) -> bool {
        if i == ae.len() {
            return true;
        }
        for j in 0..be.len() {
            if used[j] {
                continue;
            }
            for perm in PERMS {
                let target = [be[j][perm[0]], be[j][perm[1]], be[j][perm[2]]];
                let mut added = Vec::new();
                let mut ok = true;
                for k in 0..3 {
                    match map.get(&ae[i][k]) {
                        Some(&t) if t != target[k] => ok = false,
                        Some(_) => {}
                        None => {
                            if map.values().any(|&t| t == target[k]) {
                                ok = false;
                            } else {
                                map.insert(ae[i][k], target[k]);
                                added.push(ae[i][k]);
                            }
                        }
                    }
                    if !ok {
                        break;
                    }
                }
                if ok {
                    used[j] = true;
                    if rec(i + 1, ae, be, used, map) {
                        return true;
                    }
                    used[j] = false;
                }
                for v in added {
                    map.remove(&v);
                }
            }
        }
        false
    }
    rec(0, &ae, &be, &mut used, &mut map)
}

const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Every edge of `g` contains some common vertex.
fn star_like(g: &Hypergraph3) -> bool {
    (0..g.n()).any(|x| g.edges().all(|e| e.contains(x)))
}

/// At most one edge of `g` avoids some vertex.
fn comet_like(g: &Hypergraph3) -> bool {
    (0..g.n()).any(|x| g.edges().filter(|e| !e.contains(x)).count() <= 1)
}

/// Two vertex-disjoint complete 3-graphs on six vertices each.
fn two_k6(g: &Hypergraph3) -> bool {
    if g.n() != 12 || g.edge_count() != 40 {
        return false;
    }
    let comps = g.components();
    comps.len() == 2
        && comps.iter().all(|c| c.len() == 6)
        && g.edges().all(|e| {
            let v = e.vertices();
            comps.iter().any(|c| v.iter().all(|x| c.contains(x)))
        })
}

fn drop_vertex(missing: &Hypergraph3, v: usize) -> Hypergraph3 {
    let n = missing.n();
    let idx = |x: usize| if x > v { x - 1 } else { x };
    let triples: Vec<[usize; 3]> = missing
        .edges()
        .map(Edge::vertices)
        .filter(|t| !t.contains(&v))
        .map(|t| [idx(t[0]), idx(t[1]), idx(t[2])])
        .collect();
    Hypergraph3::from_triples(n - 1, &triples).unwrap()
}

struct Checker<'a> {
    cert: &'a ArrowCertificate,
    registry: &'a Registry,
    cited: BTreeSet<FactKey>,
    report: VerifyReport,
}

impl Checker<'_> {
    fn fail(&mut self, id: usize, msg: String) {
        self.report.failures.push(format!("lemma {id}: {msg}"));
    }

    fn value(&mut self, id: usize, key: &FactKey) -> Option<Option<usize>> {
        if !self.cited.contains(key) {
            self.fail(id, format!("{key} used but not cited"));
            return None;
        }
        match self.registry.get(key) {
            Some(e) => Some(e.value),
            None => {
                self.fail(id, format!("{key} not in registry"));
                None
            }
        }
    }

    /// Each outcome must be covered by one of `children`.
    fn cover(&mut self, id: usize, outcomes: &[Hypergraph3], children: &[usize], r: usize) {
        let mut distinct = BTreeMap::new();
        for o in outcomes {
            distinct.entry(canonical_key(o)).or_insert_with(|| o.clone());
        }
        self.report.outcomes_checked += outcomes.len();
        for o in distinct.values() {
            let ok = children.iter().any(|&c| {
                c < id && {
                    let cl = &self.cert.lemmas[c].claim;
                    cl.r == r && cl.n == o.n() && edges_embed(o, &cl.missing)
                }
            });
            if !ok {
                let msg = format!(
                    "outcome K({}) minus {} edges with {r} colors is not covered",
                    o.n(),
                    o.edge_count()
                );
                self.fail(id, msg);
            }
        }
    }

    fn lemma(&mut self, l: &Lemma) {
        let id = l.id;
        let c = &l.claim;
        if c.missing.n() != c.n {
            self.fail(id, "missing graph has the wrong order".into());
            return;
        }
        match &l.proof {
            Proof::Monotone { child } => {
                if *child >= id {
                    self.fail(id, "monotone step points forward".into());
                    return;
                }
                let ch = &self.cert.lemmas[*child].claim;
                if ch.r != c.r || ch.n != c.n || !edges_embed(&c.missing, &ch.missing) {
                    self.fail(id, format!("{c} does not contain the host of {ch}"));
                }
            }
            Proof::Classified {
                pigeonhole,
                classify,
            } => {
                let edges = binom(c.n, 3) - c.missing.edge_count();
                let t = edges.div_ceil(c.r.max(1));
                if c.r == 0
                    || pigeonhole.edges != edges
                    || pigeonhole.colors != c.r
                    || pigeonhole.bound != t
                    || classify.class_size != t
                {
                    self.fail(id, "pigeonhole count is wrong".into());
                    return;
                }
                let s = classify.order;
                let top = FactKey::ordinary(&[PatternTag::P], s + 1, c.n);
                match self.value(id, &top) {
                    Some(Some(v)) if t <= v => {
                        self.fail(id, format!("class of {t} does not exceed {top} = {v}"));
                        return;
                    }
                    None => return,
                    _ => {}
                }
                // hosts of orders 1..=s from the registry, with multiplicity
                let mut expected = Vec::new();
                for o in 1..=s {
                    let k = FactKey::ordinary(&[PatternTag::P], o, c.n);
                    if self.value(id, &k).is_none() {
                        return;
                    }
                    let e = self.registry.get(&k).unwrap();
                    if !e.family_complete {
                        self.fail(id, format!("{k} has no complete family"));
                        return;
                    }
                    expected.extend(e.family.iter().map(|m| canonical_key(&m.graph)));
                }
                let mut got: Vec<_> = classify.cases.iter().map(|x| canonical_key(&x.host)).collect();
                expected.sort();
                got.sort();
                if expected != got {
                    self.fail(id, "cases do not match the extremal families".into());
                    return;
                }
                for case in &classify.cases {
                    self.case(l, t, &case.host, &case.step);
                }
            }
        }
    }

    fn case(&mut self, l: &Lemma, t: usize, host: &Hypergraph3, step: &CaseStep) {
        let id = l.id;
        let c = &l.claim;
        let n = c.n;
        match step {
            CaseStep::TooSmall => {
                if host.edge_count() >= t {
                    self.fail(id, format!("host with {} edges is not too small", host.edge_count()));
                }
            }
            CaseStep::DeleteStar { children } => {
                if !star_like(host) {
                    self.fail(id, "star case on a host that is not a star".into());
                    return;
                }
                let outs: Vec<_> = (0..n).map(|v| drop_vertex(&c.missing, v)).collect();
                self.cover(id, &outs, children, c.r - 1);
            }
            CaseStep::DeleteComet { children } => {
                if !comet_like(host) {
                    self.fail(id, "comet case on a host with no center".into());
                    return;
                }
                let mut outs = Vec::new();
                for x in 0..n {
                    for a in 0..n {
                        for b in a + 1..n {
                            for d in b + 1..n {
                                if [a, b, d].contains(&x) {
                                    continue;
                                }
                                let mut m = c.missing.clone();
                                m.insert(Edge::new(a, b, d).unwrap()).unwrap();
                                outs.push(drop_vertex(&m, x));
                            }
                        }
                    }
                }
                self.cover(id, &outs, children, c.r - 1);
            }
            CaseStep::Bipartite(b) => {
                if !two_k6(host) || n != 12 {
                    self.fail(id, "bipartite case needs K6 u K6 on 12 vertices".into());
                    return;
                }
                let report = bipartite::bipartite_check();
                if report != b.report || !report.passes() {
                    self.fail(id, "bipartite overlap data does not reproduce".into());
                    return;
                }
                let remaining = report.bip_edges.saturating_sub(c.missing.edge_count());
                let forced = remaining.saturating_sub((c.r - 1) * (report.max_overlap - 1));
                if b.remaining != remaining
                    || b.classes != c.r - 1
                    || b.per_class_max != report.max_overlap
                    || b.forced != forced
                    || forced < 3
                {
                    self.fail(id, "bipartite count is wrong".into());
                    return;
                }
                // classes of max_overlap edges must be confined to stars or
                // K6 u K6 copies
                let Some(top) = b.cited.last() else {
                    self.fail(id, "bipartite step cites nothing".into());
                    return;
                };
                match self.value(id, top) {
                    Some(Some(v)) if v >= report.max_overlap => {
                        self.fail(id, format!("{top} = {v} does not confine the classes"));
                        return;
                    }
                    None => return,
                    _ => {}
                }
                for k in &b.cited[..b.cited.len() - 1] {
                    if self.value(id, k).is_none() {
                        return;
                    }
                    let e = self.registry.get(k).unwrap();
                    if !e.family_complete {
                        self.fail(id, format!("{k} has no complete family"));
                        return;
                    }
                    for m in &e.family {
                        let g = &m.graph;
                        if g.edge_count() >= report.max_overlap && !star_like(g) && !two_k6(g) {
                            self.fail(id, format!("{} escapes the bipartite count", m.label));
                        }
                    }
                }
                let orders: Vec<usize> = b.cited.iter().map(|k| k.order).collect();
                if orders != (1..=b.cited.len()).collect::<Vec<_>>()
                    || b.cited.iter().any(|k| k.n != n || k.forbidden != [PatternTag::P])
                {
                    self.fail(id, "bipartite citations are not a full chain".into());
                }
                let outs: Vec<_> = (0..n).map(|v| drop_vertex(&c.missing, v)).collect();
                self.cover(id, &outs, &b.star_children, c.r - 1);
            }
        }
    }
}

/// Re-checks every lemma, the citation list against `registry`, and the
/// overall trust status.
pub fn verify_certificate(cert: &ArrowCertificate, registry: &Registry) -> VerifyReport {
    let mut ck = Checker {
        cert,
        registry,
        cited: cert.citations.iter().map(|c| c.key.clone()).collect(),
        report: VerifyReport {
            lemmas: cert.lemmas.len(),
            ..Default::default()
        },
    };
    if cert.lemmas.is_empty() {
        ck.report.failures.push("no lemmas".into());
        return ck.report;
    }
    for (i, l) in cert.lemmas.iter().enumerate() {
        if l.id != i {
            ck.report.failures.push(format!("lemma {i} has id {}", l.id));
            return ck.report;
        }
    }
    if cert.root().claim != cert.claim {
        ck.report.failures.push("last lemma is not the claim".into());
    }
    for c in &cert.citations {
        match registry.get(&c.key) {
            None => ck.report.failures.push(format!("{} not in registry", c.key)),
            Some(e) => {
                if e.value != c.value {
                    ck.report.failures.push(format!("{} value differs from registry", c.key));
                }
                if c.status < TrustStatus::PaperAsserted || e.status < TrustStatus::PaperAsserted {
                    ck.report.failures.push(format!("{} is not established", c.key));
                }
            }
        }
    }
    if cert.status != TrustStatus::weakest(cert.citations.iter().map(|c| c.status)) {
        ck.report.failures.push("overall status is not the weakest citation".into());
    }
    for l in &cert.lemmas {
        ck.lemma(l);
    }
    ck.report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embed_small_missing_graphs() {
        let one = Hypergraph3::from_triples(9, &[[0, 1, 2]]).unwrap();
        let two = Hypergraph3::from_triples(9, &[[0, 1, 2], [0, 3, 4]]).unwrap();
        let dis = Hypergraph3::from_triples(9, &[[0, 1, 2], [3, 4, 5]]).unwrap();
        let empty = Hypergraph3::empty(9).unwrap();
        assert!(edges_embed(&empty, &one));
        assert!(edges_embed(&one, &two));
        assert!(!edges_embed(&two, &dis));
        assert!(!edges_embed(&dis, &two));
        assert!(!edges_embed(&two, &one));
    }

    #[test]
    fn shapes() {
        use crate::constructions::{build, Tag};
        assert!(star_like(&build(Tag::Star, 9).unwrap()));
        assert!(!star_like(&build(Tag::Comet, 9).unwrap()));
        assert!(comet_like(&build(Tag::Comet, 9).unwrap()));
        assert!(two_k6(&build(Tag::K6UnionK, 12).unwrap()));
        assert!(!two_k6(&build(Tag::Comet, 12).unwrap()));
    }
}
