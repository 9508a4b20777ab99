//! Builds arrowing certificates: a pigeonhole count, a classification of
//! the large color class by the higher-order Turán facts, and one vertex
//! deletion per possible host, recursing on smaller complete graphs.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_key, CanonicalKey};
use crate::constructions::Tag;
use crate::error::{Error, Result};
use crate::graph::{binom, Edge, Hypergraph3};
use crate::patterns::{self, Host, HostShape, PatternTag};
use crate::turan::{FactKey, Registry, TrustStatus};

use super::bipartite::{self, BipartiteReport};

/// `K_n` minus the edges of `missing` arrows `(P; r)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowClaim {
    pub label: String,
    pub n: usize,
    pub r: usize,
    /// Missing edges, on `n` vertices.
    pub missing: Hypergraph3,
}

impl ArrowClaim {
    pub fn new(missing: Hypergraph3, r: usize) -> ArrowClaim {
        ArrowClaim {
            label: host_label(&missing),
            n: missing.n(),
            r,
            missing,
        }
    }

    pub fn from_tag(tag: Tag, n: usize, r: usize) -> Result<ArrowClaim> {
        let host = match tag {
            Tag::Complete | Tag::CompleteMinusEdge | Tag::CompleteMinusTwo(_) => tag.build(n)?,
            _ => {
                return Err(Error::InvalidSpec(format!(
                    "arrowing claims take K, K-e or K-2e hosts, not {tag}"
                )))
            }
        };
        Ok(ArrowClaim::new(host.complement(), r))
    }

    pub fn host(&self) -> Hypergraph3 {
        self.missing.complement()
    }

    pub fn edge_count(&self) -> usize {
        binom(self.n, 3) - self.missing.edge_count()
    }

    /// Pigeonhole lower bound on the largest color class.
    pub fn class_bound(&self) -> usize {
        self.edge_count().div_ceil(self.r.max(1))
    }

    fn memo_key(&self) -> (CanonicalKey, usize) {
        (canonical_key(&self.missing), self.r)
    }
}

impl std::fmt::Display for ArrowClaim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} -> (P; {})", self.label, self.r)
    }
}

/// Name of `K_n` minus `missing`, following the catalog's labels.
pub fn host_label(missing: &Hypergraph3) -> String {
    let n = missing.n();
    let m: Vec<u16> = missing.masks();
    match m.len() {
        0 => Tag::Complete.label(n),
        1 => Tag::CompleteMinusEdge.label(n),
        2 => {
            let v = match (m[0] & m[1]).count_ones() {
                2 => 1,
                1 => 2,
                _ => 3,
            };
            Tag::CompleteMinusTwo(v).label(n)
        }
        k => format!("K({n})-{k}e"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pigeonhole {
    pub edges: usize,
    pub colors: usize,
    /// Some color class has at least this many edges.
    pub bound: usize,
}

/// A registry fact used by the certificate, with the trust it had.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Citation {
    pub key: FactKey,
    pub value: Option<usize>,
    pub status: TrustStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteStep {
    /// Edges of the host left in the other colors, at least.
    pub remaining: usize,
    pub classes: usize,
    /// Largest share of the remaining edges one class can take without
    /// falling into a star.
    pub per_class_max: usize,
    /// Classes forced to take the maximum share.
    pub forced: usize,
    pub report: BipartiteReport,
    /// Facts that confine a class of at least `per_class_max` edges.
    pub cited: Vec<FactKey>,
    /// Lemmas covering the case where some class lies in a star.
    pub star_children: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CaseStep {
    /// The host has fewer edges than the class bound.
    TooSmall,
    /// The class lies in a star centered at some vertex `v`; deleting `v`
    /// leaves `r - 1` colors on the rest.
    DeleteStar { children: Vec<usize> },
    /// The class lies in a comet; deleting the center and the head edge
    /// leaves `r - 1` colors.
    DeleteComet { children: Vec<usize> },
    /// The class lies in `K6 ∪ K6` on 12 vertices.
    Bipartite(BipartiteStep),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case {
    pub host_label: String,
    pub host_order: usize,
    pub host: Hypergraph3,
    pub step: CaseStep,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classify {
    pub class_size: usize,
    /// The class avoids `P` and exceeds `ex^(s+1)`, so it lies in an
    /// extremal graph of order at most `s`.
    pub order: usize,
    pub cited: Vec<FactKey>,
    pub cases: Vec<Case>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Proof {
    Classified {
        pigeonhole: Pigeonhole,
        classify: Classify,
    },
    /// The host contains the host of `child`, with the same colors.
    Monotone { child: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma {
    pub id: usize,
    pub claim: ArrowClaim,
    pub proof: Proof,
}

/// A proof DAG; lemmas only reference earlier ids and the last one is the
/// claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowCertificate {
    pub claim: ArrowClaim,
    pub lemmas: Vec<Lemma>,
    pub citations: Vec<Citation>,
    /// Weakest status among the citations.
    pub status: TrustStatus,
}

impl ArrowCertificate {
    pub fn root(&self) -> &Lemma {
        self.lemmas.last().expect("certificate has lemmas")
    }

    pub fn paper_asserted(&self) -> Vec<&Citation> {
        self.citations
            .iter()
            .filter(|c| c.status == TrustStatus::PaperAsserted)
            .collect()
    }

    pub fn search_verified(&self) -> Vec<&Citation> {
        self.citations
            .iter()
            .filter(|c| c.status == TrustStatus::SearchVerified)
            .collect()
    }
}

/// Missing edges after deleting `v` from `K_n - missing`.
pub(crate) fn star_outcome(missing: &Hypergraph3, v: usize) -> Hypergraph3 {
    missing.delete_vertex(v).unwrap()
}

/// Missing edges after deleting center `x` and head edge `t`.
pub(crate) fn comet_outcome(missing: &Hypergraph3, x: usize, t: Edge) -> Hypergraph3 {
    let mut m = missing.clone();
    m.insert(t).unwrap();
    m.delete_vertex(x).unwrap()
}

/// Distinct (up to isomorphism) outcomes of a star deletion.
pub(crate) fn star_outcomes(missing: &Hypergraph3) -> Vec<Hypergraph3> {
    let mut seen = BTreeMap::new();
    for v in 0..missing.n() {
        let o = star_outcome(missing, v);
        seen.entry(canonical_key(&o)).or_insert(o);
    }
    seen.into_values().collect()
}

/// Distinct outcomes of a comet deletion over every center and head edge.
pub(crate) fn comet_outcomes(missing: &Hypergraph3) -> Vec<Hypergraph3> {
    let n = missing.n();
    let mut seen = BTreeMap::new();
    for x in 0..n {
        for e in Hypergraph3::complete(n).unwrap().edges() {
            if e.contains(x) {
                continue;
            }
            let o = comet_outcome(missing, x, e);
            seen.entry(canonical_key(&o)).or_insert(o);
        }
    }
    seen.into_values().collect()
}

fn is_two_k6(host: &Host) -> bool {
    matches!(&host.shape, HostShape::CliqueUnion(s) if s.as_slice() == [6, 6])
        && host.graph.n() == 12
}

/// Recursive certificate builder with a memo over claims (failures
/// included).
pub struct Prover<'a> {
    registry: &'a Registry,
    lemmas: Vec<Lemma>,
    memo: HashMap<(CanonicalKey, usize), std::result::Result<usize, String>>,
    citations: BTreeMap<FactKey, Citation>,
}

impl<'a> Prover<'a> {
    pub fn new(registry: &'a Registry) -> Prover<'a> {
        Prover {
            registry,
            lemmas: Vec::new(),
            memo: HashMap::new(),
            citations: BTreeMap::new(),
        }
    }

    fn cite(&mut self, key: &FactKey) -> std::result::Result<Option<usize>, String> {
        let e = self
            .registry
            .get(key)
            .ok_or_else(|| format!("registry lacks {key}"))?;
        if e.status < TrustStatus::PaperAsserted {
            return Err(format!("{key} is only {}", e.status));
        }
        self.citations.insert(
            key.clone(),
            Citation {
                key: key.clone(),
                value: e.value,
                status: e.status,
            },
        );
        Ok(e.value)
    }

    fn push(&mut self, claim: ArrowClaim, proof: Proof) -> usize {
        let id = self.lemmas.len();
        self.lemmas.push(Lemma { id, claim, proof });
        id
    }

    /// Proves `claim`, returning its lemma id or a description of the gap.
    pub fn prove(&mut self, claim: &ArrowClaim) -> std::result::Result<usize, String> {
        let key = claim.memo_key();
        if let Some(r) = self.memo.get(&key) {
            return r.clone();
        }
        let out = self.prove_uncached(claim);
        self.memo.insert(key, out.clone());
        out
    }

    fn prove_uncached(&mut self, claim: &ArrowClaim) -> std::result::Result<usize, String> {
        let n = claim.n;
        let r = claim.r;
        if r == 0 {
            return Err(format!("{claim}: no colors"));
        }
        let t = claim.class_bound();
        let pigeonhole = Pigeonhole {
            edges: claim.edge_count(),
            colors: r,
            bound: t,
        };
        // least s with t > ex^(s+1)(n;P); an undefined order counts as -inf
        let mut s = 0;
        let mut cited = Vec::new();
        loop {
            let k = FactKey::ordinary(&[PatternTag::P], s + 1, n);
            let v = self.cite(&k).map_err(|e| format!("{claim}: {e}"))?;
            cited.push(k);
            match v {
                Some(v) if t <= v => s += 1,
                _ => break,
            }
        }
        let hosts = if s == 0 {
            Vec::new()
        } else {
            self.registry
                .lower_order_hosts(&[PatternTag::P], n, s + 1)
                .map_err(|e| format!("{claim}: {e}"))?
        };
        let mut cases = Vec::new();
        for (label, order, graph) in hosts {
            let step = self.case(claim, t, &graph)?;
            cases.push(Case {
                host_label: label,
                host_order: order,
                host: graph,
                step,
            });
        }
        let proof = Proof::Classified {
            pigeonhole,
            classify: Classify {
                class_size: t,
                order: s,
                cited,
                cases,
            },
        };
        Ok(self.push(claim.clone(), proof))
    }

    fn case(
        &mut self,
        claim: &ArrowClaim,
        t: usize,
        graph: &Hypergraph3,
    ) -> std::result::Result<CaseStep, String> {
        if graph.edge_count() < t {
            return Ok(CaseStep::TooSmall);
        }
        let host = Host::new(graph.clone());
        match host.shape {
            HostShape::Star => Ok(CaseStep::DeleteStar {
                children: self.children(star_outcomes(&claim.missing), claim.r - 1)?,
            }),
            HostShape::Comet => Ok(CaseStep::DeleteComet {
                children: self.children(comet_outcomes(&claim.missing), claim.r - 1)?,
            }),
            _ if is_two_k6(&host) => self.bipartite(claim),
            _ => Err(format!(
                "{claim}: no deletion rule for a class inside {} edges of a {}-vertex host",
                graph.edge_count(),
                graph.n()
            )),
        }
    }

    /// The class lies in `K6 ∪ K6`, so the other `r - 1` colors cover the
    /// complementary bipartite 3-graph, less the missing edges. A class that
    /// is not inside a star takes at most `per_class_max` of those edges, and
    /// `forced` classes take exactly that many, which needs pairwise disjoint
    /// maximum overlaps.
    fn bipartite(&mut self, claim: &ArrowClaim) -> std::result::Result<CaseStep, String> {
        let report = bipartite::bipartite_check();
        if !report.passes() {
            return Err(format!("{claim}: bipartite overlap check failed"));
        }
        let classes = claim.r - 1;
        let remaining = report.bip_edges.saturating_sub(claim.missing.edge_count());
        let per_class_max = report.max_overlap;
        // least order s with ex^(s+1) < per_class_max: classes that large
        // lie in an extremal graph of order at most s
        let mut order = None;
        for s in 1..=3 {
            let k = FactKey::ordinary(&[PatternTag::P], s + 1, claim.n);
            match self.registry.get(&k).map(|e| e.value) {
                Some(Some(v)) if v >= per_class_max => continue,
                Some(_) => {
                    order = Some(s);
                    break;
                }
                None => break,
            }
        }
        let order =
            order.ok_or_else(|| format!("{claim}: no order confines classes of {per_class_max}"))?;
        let mut cited = Vec::new();
        for s in 1..=order + 1 {
            let k = FactKey::ordinary(&[PatternTag::P], s, claim.n);
            self.cite(&k).map_err(|e| format!("{claim}: {e}"))?;
            cited.push(k);
        }
        for (label, _, g) in self
            .registry
            .lower_order_hosts(&[PatternTag::P], claim.n, order + 1)
            .map_err(|e| format!("{claim}: {e}"))?
        {
            let h = Host::new(g.clone());
            let ok = g.edge_count() < per_class_max
                || matches!(h.shape, HostShape::Star)
                || is_two_k6(&h);
            if !ok {
                return Err(format!("{claim}: host {label} escapes the bipartite count"));
            }
        }
        let forced = remaining.saturating_sub(classes * (per_class_max - 1));
        if forced < 3 {
            return Err(format!(
                "{claim}: only {forced} classes forced to the maximum share"
            ));
        }
        let star_children = self.children(star_outcomes(&claim.missing), claim.r - 1)?;
        Ok(CaseStep::Bipartite(BipartiteStep {
            remaining,
            classes,
            per_class_max,
            forced,
            report,
            cited,
            star_children,
        }))
    }

    fn children(
        &mut self,
        outcomes: Vec<Hypergraph3>,
        r: usize,
    ) -> std::result::Result<Vec<usize>, String> {
        let mut ids = Vec::new();
        for o in outcomes {
            let id = self.cover(&o, r)?;
            if !ids.contains(&id) {
                ids.push(id);
            }
        }
        ids.sort_unstable();
        Ok(ids)
    }

    /// A proven claim on `outcome.n()` vertices whose missing graph contains
    /// a copy of `outcome`; larger missing graphs are tried first.
    fn cover(&mut self, outcome: &Hypergraph3, r: usize) -> std::result::Result<usize, String> {
        let n = outcome.n();
        let candidates = [
            Tag::CompleteMinusTwo(1),
            Tag::CompleteMinusTwo(2),
            Tag::CompleteMinusTwo(3),
            Tag::CompleteMinusEdge,
            Tag::Complete,
        ];
        let mut gaps = Vec::new();
        for tag in candidates {
            if !tag.is_valid(n) {
                continue;
            }
            let missing = tag.build(n).map_err(|e| e.to_string())?.complement();
            if missing.edge_count() < outcome.edge_count()
                || !patterns::is_sub_iso(outcome, &missing)
            {
                continue;
            }
            let c = ArrowClaim::new(missing, r);
            match self.prove(&c) {
                Ok(id) => return Ok(id),
                Err(e) => gaps.push(e),
            }
        }
        if outcome.edge_count() > 2 {
            gaps.push(format!(
                "K({n}) minus {} edges is not among the candidate hosts",
                outcome.edge_count()
            ));
        }
        Err(gaps.join("; "))
    }

    /// Adds a monotonicity lemma from a proven claim on a subhost.
    pub fn monotone(
        &mut self,
        claim: &ArrowClaim,
        child: usize,
    ) -> std::result::Result<usize, String> {
        let c = &self.lemmas[child].claim;
        if c.r != claim.r || c.n != claim.n || !patterns::is_sub_iso(&claim.missing, &c.missing) {
            return Err(format!("{claim} does not contain {c}"));
        }
        Ok(self.push(claim.clone(), Proof::Monotone { child }))
    }

    /// Keeps only the lemmas reachable from `root` and renumbers them.
    pub fn finish(self, root: usize) -> ArrowCertificate {
        let mut keep = vec![false; self.lemmas.len()];
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            if std::mem::replace(&mut keep[i], true) {
                continue;
            }
            stack.extend(lemma_children(&self.lemmas[i]));
        }
        let mut map = vec![usize::MAX; self.lemmas.len()];
        let mut lemmas = Vec::new();
        for (i, l) in self.lemmas.iter().enumerate() {
            if keep[i] {
                map[i] = lemmas.len();
                let mut l = l.clone();
                l.id = map[i];
                remap(&mut l.proof, &map);
                lemmas.push(l);
            }
        }
        // citations used by the kept lemmas only
        let mut used = std::collections::BTreeSet::new();
        for l in &lemmas {
            if let Proof::Classified { classify, .. } = &l.proof {
                used.extend(classify.cited.iter().cloned());
                for c in &classify.cases {
                    if let CaseStep::Bipartite(b) = &c.step {
                        used.extend(b.cited.iter().cloned());
                    }
                }
            }
        }
        let citations: Vec<Citation> = self
            .citations
            .into_values()
            .filter(|c| used.contains(&c.key))
            .collect();
        let status = TrustStatus::weakest(citations.iter().map(|c| c.status));
        ArrowCertificate {
            claim: lemmas.last().unwrap().claim.clone(),
            lemmas,
            citations,
            status,
        }
    }
}

pub(crate) fn lemma_children(l: &Lemma) -> Vec<usize> {
    match &l.proof {
        Proof::Monotone { child } => vec![*child],
        Proof::Classified { classify, .. } => classify
            .cases
            .iter()
            .flat_map(|c| match &c.step {
                CaseStep::TooSmall => Vec::new(),
                CaseStep::DeleteStar { children } | CaseStep::DeleteComet { children } => {
                    children.clone()
                }
                CaseStep::Bipartite(b) => b.star_children.clone(),
            })
            .collect(),
    }
}

fn remap(p: &mut Proof, map: &[usize]) {
    match p {
        Proof::Monotone { child } => *child = map[*child],
        Proof::Classified { classify, .. } => {
            for c in &mut classify.cases {
                match &mut c.step {
                    CaseStep::TooSmall => {}
                    CaseStep::DeleteStar { children } | CaseStep::DeleteComet { children } => {
                        for x in children.iter_mut() {
                            *x = map[*x];
                        }
                    }
                    CaseStep::Bipartite(b) => {
                        for x in b.star_children.iter_mut() {
                            *x = map[*x];
                        }
                    }
                }
            }
        }
    }
}

/// Builds a certificate for `claim`. A complete host is first tried through
/// the host missing one edge, then directly.
pub fn prove_arrowing(claim: &ArrowClaim, registry: &Registry) -> Result<ArrowCertificate> {
    let mut p = Prover::new(registry);
    if claim.missing.edge_count() == 0 && claim.n >= 3 {
        let sub = ArrowClaim::from_tag(Tag::CompleteMinusEdge, claim.n, claim.r)?;
        if let Ok(id) = p.prove(&sub) {
            let root = p.monotone(claim, id).map_err(Error::Prover)?;
            return Ok(p.finish(root));
        }
    }
    let root = p.prove(claim).map_err(Error::Prover)?;
    Ok(p.finish(root))
}
