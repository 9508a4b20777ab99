//! Known Turán-type values with trust labels.
//!
//! The default registry holds the published values as paper-asserted facts,
//! each with explicit extremal graphs. Search results upgrade entries to
//! search-verified; a search that disagrees with a stored value is rejected.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{FactKey, TrustStatus, TuranResult};
use crate::canon::{canonical_key, CanonicalKey};
use crate::constructions::{build, qualify_graph, QualificationReport, Tag};
use crate::error::{Error, Result};
use crate::graph::{binom, Hypergraph3, MAX_VERTICES};
use crate::patterns::PatternTag;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyMember {
    pub label: String,
    pub graph: Hypergraph3,
}

impl FamilyMember {
    pub fn key(&self) -> CanonicalKey {
        canonical_key(&self.graph)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegistryEntry {
    pub key: FactKey,
    /// `None`: no graph qualifies (the number is undefined).
    pub value: Option<usize>,
    /// Extremal graphs; a complete list when `family_complete`, otherwise
    /// witnesses of the value only.
    pub family: Vec<FamilyMember>,
    pub family_complete: bool,
    pub status: TrustStatus,
}

impl RegistryEntry {
    fn paper(key: FactKey, value: usize, family: Vec<FamilyMember>, complete: bool) -> Self {
        RegistryEntry {
            key,
            value: Some(value),
            family,
            family_complete: complete,
            status: TrustStatus::PaperAsserted,
        }
    }

    fn undefined(key: FactKey) -> Self {
        RegistryEntry {
            key,
            value: None,
            family: Vec::new(),
            family_complete: true,
            status: TrustStatus::PaperAsserted,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Registry {
    entries: BTreeMap<String, RegistryEntry>,
}

fn member(tag: Tag, n: usize) -> FamilyMember {
    FamilyMember {
        label: tag.label(n),
        graph: build(tag, n).expect("registry uses constructions inside their ranges"),
    }
}

fn union(label: &str, parts: &[Hypergraph3], n: usize) -> FamilyMember {
    let mut g = parts[0].clone();
    for p in &parts[1..] {
        g = g.disjoint_union(p).unwrap();
    }
    FamilyMember {
        label: label.to_string(),
        graph: g.pad_to(n).unwrap(),
    }
}

fn k(n: usize) -> Hypergraph3 {
    Hypergraph3::complete(n).unwrap()
}

/// Extremal graphs for `ex(n; {P,C} | M) = 2n - 4` and
/// `ex(n; {P,C,P2uK3} | M) = 2n - 4`: a K4 on `{0,1,2,3}` and the book of
/// edges `{0,1,v}`, `{2,3,v}` for every further vertex `v`.
pub fn double_book(n: usize) -> Hypergraph3 {
    let mut t = vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
    for v in 4..n {
        t.push([0, 1, v]);
        t.push([2, 3, v]);
    }
    Hypergraph3::from_triples(n, &t).unwrap()
}

impl Registry {
    pub fn empty() -> Registry {
        Registry::default()
    }

    /// Published values for `n <= 16`.
    pub fn paper() -> Registry {
        use PatternTag::*;
        let mut r = Registry::empty();
        let mut add = |e: RegistryEntry| {
            r.entries.insert(e.key.to_string(), e);
        };
        for n in 1..=MAX_VERTICES {
            // P, orders 1..4
            let key = |s| FactKey::ordinary(&[P], s, n);
            if n <= 6 {
                add(RegistryEntry::paper(key(1), binom(n, 3), vec![member(Tag::Complete, n)], true));
                for s in 2..=4 {
                    add(RegistryEntry::undefined(key(s)));
                }
                continue;
            }
            let e1 = match n {
                7 => RegistryEntry::paper(key(1), 20, vec![union("K6uK1", &[k(6)], 7)], true),
                _ => RegistryEntry::paper(key(1), binom(n - 1, 2), vec![member(Tag::Star, n)], true),
            };
            add(e1);
            let e2 = match n {
                7 => RegistryEntry::paper(key(2), 15, vec![member(Tag::Star, 7)], true),
                8..=12 => RegistryEntry::paper(
                    key(2),
                    20 + binom(n - 6, 3),
                    vec![member(Tag::K6UnionK, n)],
                    true,
                ),
                13 => RegistryEntry::paper(
                    key(2),
                    40,
                    vec![member(Tag::TwoK6UnionK1, 13), member(Tag::Comet, 13)],
                    true,
                ),
                _ => RegistryEntry::paper(key(2), 4 + binom(n - 4, 2), vec![member(Tag::Comet, n)], true),
            };
            add(e2);
            let e3 = match n {
                7..=10 => RegistryEntry::paper(
                    key(3),
                    3 * n - 8,
                    vec![member(Tag::G1, n), member(Tag::G2, n)],
                    true,
                ),
                11 => RegistryEntry::paper(
                    key(3),
                    25,
                    vec![member(Tag::G1, 11), member(Tag::G2, 11), member(Tag::Comet, 11)],
                    true,
                ),
                12 => RegistryEntry::paper(key(3), 32, vec![member(Tag::Comet, 12)], true),
                13 | 14 => RegistryEntry::paper(
                    key(3),
                    20 + binom(n - 7, 2),
                    vec![member(Tag::K6UnionStar, n)],
                    true,
                ),
                _ => RegistryEntry::paper(key(3), 4 + binom(n - 5, 2), vec![member(Tag::K4UnionStar, n)], true),
            };
            add(e3);
            let e4 = match n {
                7 => RegistryEntry::paper(
                    key(4),
                    12,
                    vec![member(Tag::G3, 7), member(Tag::K5Plus2, 7)],
                    true,
                ),
                8 | 9 | 11 => RegistryEntry::paper(key(4), 2 * n - 2, vec![member(Tag::G3, n)], true),
                10 => RegistryEntry::paper(key(4), 20, vec![union("K5uK5", &[k(5), k(5)], 10)], true),
                12 => RegistryEntry::paper(
                    key(4),
                    28,
                    vec![member(Tag::G1, 12), member(Tag::G2, 12)],
                    true,
                ),
                13 => RegistryEntry::paper(
                    key(4),
                    33,
                    vec![
                        union("K6uG1(7)", &[k(6), build(Tag::G1, 7).unwrap()], 13),
                        union("K6uG2(7)", &[k(6), build(Tag::G2, 7).unwrap()], 13),
                    ],
                    true,
                ),
                14 => RegistryEntry::paper(
                    key(4),
                    40,
                    vec![union("2K6u2K1", &[k(6), k(6)], 14), member(Tag::K4UnionStar, 14)],
                    true,
                ),
                15 => RegistryEntry::paper(
                    key(4),
                    48,
                    vec![member(Tag::Rocket, 15), member(Tag::K6UnionStar, 15)],
                    true,
                ),
                _ => RegistryEntry::paper(key(4), 3 + binom(n - 5, 2), vec![member(Tag::Rocket, n)], true),
            };
            add(e4);
        }
        for n in 6..=MAX_VERTICES {
            // M: EKR, Hilton-Milner, Han-Kohayakawa
            let key = |s| FactKey::ordinary(&[M], s, n);
            add(RegistryEntry::paper(key(1), binom(n - 1, 2), vec![member(Tag::Star, n)], n >= 7));
            if n >= 7 {
                add(RegistryEntry::paper(
                    key(2),
                    3 * n - 8,
                    vec![member(Tag::G1, n), member(Tag::G2, n)],
                    true,
                ));
                add(RegistryEntry::paper(key(3), 2 * n - 2, vec![member(Tag::G3, n)], true));
            }
            // C
            add(RegistryEntry::paper(
                FactKey::ordinary(&[C], 1, n),
                binom(n - 1, 2),
                vec![member(Tag::Star, n)],
                n >= 8,
            ));
            // conditional
            if n >= 7 {
                add(RegistryEntry::paper(
                    FactKey::conditional(&[P], n, C, true),
                    3 * n - 8,
                    vec![member(Tag::G1, n), member(Tag::G2, n)],
                    true,
                ));
            }
            let pcm = FactKey::conditional(&[P, C], n, M, false);
            add(match n {
                6..=9 => RegistryEntry::paper(
                    pcm,
                    2 * n - 4,
                    vec![FamilyMember {
                        label: format!("Book2({n})"),
                        graph: double_book(n),
                    }],
                    false,
                ),
                10 => RegistryEntry::paper(pcm, 20, vec![union("K5uK5", &[k(5), k(5)], 10)], false),
                _ => RegistryEntry::paper(pcm, 4 + binom(n - 4, 2), vec![member(Tag::Comet, n)], true),
            });
            add(RegistryEntry::paper(
                FactKey::conditional(&[P, C, P2uK3], n, M, false),
                2 * n - 4,
                vec![FamilyMember {
                    label: format!("Book2({n})"),
                    graph: double_book(n),
                }],
                false,
            ));
        }
        r
    }

    pub fn get(&self, key: &FactKey) -> Option<&RegistryEntry> {
        self.entries.get(&key.to_string())
    }

    pub fn entries(&self) -> impl Iterator<Item = &RegistryEntry> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Inserts or refines an entry. A differing value, or a differing
    /// complete family, is a conflict unless the new entry is the only one.
    pub fn put(&mut self, entry: RegistryEntry) -> Result<()> {
        let name = entry.key.to_string();
        if let Some(old) = self.entries.get(&name) {
            if entry.status == TrustStatus::LowerBoundOnly {
                if let (Some(lb), Some(v)) = (entry.value, old.value) {
                    if lb > v {
                        return Err(Error::Registry(format!(
                            "{name}: lower bound {lb} exceeds recorded value {v}"
                        )));
                    }
                }
                return Ok(());
            }
            if old.value != entry.value {
                return Err(Error::Registry(format!(
                    "{name}: conflicting values {:?} and {:?}",
                    old.value, entry.value
                )));
            }
            if old.family_complete && entry.family_complete {
                let mut a: Vec<CanonicalKey> = old.family.iter().map(FamilyMember::key).collect();
                let mut b: Vec<CanonicalKey> = entry.family.iter().map(FamilyMember::key).collect();
                a.sort_unstable();
                b.sort_unstable();
                if a != b {
                    return Err(Error::Registry(format!("{name}: conflicting extremal families")));
                }
            }
            if entry.status < old.status {
                return Ok(());
            }
        }
        self.entries.insert(name, entry);
        Ok(())
    }

    /// Records a search result, keeping the labels of matching paper graphs.
    pub fn put_result(&mut self, r: &TuranResult) -> Result<()> {
        let old_labels: BTreeMap<CanonicalKey, String> = self
            .get(&r.key)
            .map(|e| e.family.iter().map(|m| (m.key(), m.label.clone())).collect())
            .unwrap_or_default();
        let family = r
            .family
            .iter()
            .enumerate()
            .map(|(i, key)| FamilyMember {
                label: old_labels
                    .get(key)
                    .cloned()
                    .unwrap_or_else(|| format!("found#{i}")),
                graph: key.graph(),
            })
            .collect();
        self.put(RegistryEntry {
            key: r.key.clone(),
            value: r.value,
            family,
            family_complete: r.status == TrustStatus::SearchVerified,
            status: r.status,
        })
    }

    /// Extremal graphs of orders `1..order` as `(label, order, graph)`.
    pub fn lower_order_hosts(
        &self,
        forbidden: &[PatternTag],
        n: usize,
        order: usize,
    ) -> Result<Vec<(String, usize, Hypergraph3)>> {
        let mut out = Vec::new();
        for s in 1..order {
            let key = FactKey::ordinary(forbidden, s, n);
            let e = self
                .get(&key)
                .ok_or_else(|| Error::Registry(format!("missing entry {key}")))?;
            if !e.family_complete {
                return Err(Error::Registry(format!("{key}: extremal family not known")));
            }
            for m in &e.family {
                out.push((m.label.clone(), s, m.graph.clone()));
            }
        }
        Ok(out)
    }

    /// Re-checks every witness against its entry: forbidden-freeness, the
    /// requirement, connectivity, exact size, and non-containment in the
    /// lower-order extremal graphs.
    pub fn verify_lower_bounds(&self) -> Vec<LowerBoundCheck> {
        let mut out = Vec::new();
        for e in self.entries.values() {
            let Some(v) = e.value else { continue };
            let hosts = if e.key.is_ordinary() {
                match self.lower_order_hosts(&e.key.forbidden, e.key.n, e.key.order) {
                    Ok(h) => h,
                    Err(err) => {
                        out.push(LowerBoundCheck {
                            key: e.key.clone(),
                            witness: String::new(),
                            report: None,
                            extra: Some(err.to_string()),
                        });
                        continue;
                    }
                }
            } else {
                Vec::new()
            };
            for m in &e.family {
                let rep = qualify_graph(&m.label, &m.graph, e.key.order, &e.key.forbidden, &hosts, Some(v));
                let mut extra = None;
                if m.graph.n() != e.key.n {
                    extra = Some(format!("witness has {} vertices", m.graph.n()));
                }
                if let Some(g) = e.key.require {
                    if !crate::patterns::contains_tag(&m.graph, g) {
                        extra = Some(format!("witness lacks {g}"));
                    }
                }
                if e.key.connected && !m.graph.is_connected() {
                    extra = Some("witness is disconnected".into());
                }
                out.push(LowerBoundCheck {
                    key: e.key.clone(),
                    witness: m.label.clone(),
                    report: Some(rep),
                    extra,
                });
            }
        }
        out
    }

    /// Strict decrease of consecutive orders wherever both are recorded.
    pub fn check_decrease(&self) -> Vec<DecreaseCheck> {
        let mut out = Vec::new();
        for e in self.entries.values() {
            if !e.key.is_ordinary() {
                continue;
            }
            let next = e.key.with_order(e.key.order + 1);
            if let Some(f) = self.get(&next) {
                if let (Some(a), Some(b)) = (e.value, f.value) {
                    out.push(DecreaseCheck {
                        lower: e.key.clone(),
                        higher: next,
                        lower_value: a,
                        higher_value: b,
                    });
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Registry> {
        Ok(serde_json::from_str(s)?)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LowerBoundCheck {
    pub key: FactKey,
    pub witness: String,
    pub report: Option<QualificationReport>,
    pub extra: Option<String>,
}

impl LowerBoundCheck {
    pub fn passes(&self) -> bool {
        self.extra.is_none() && self.report.as_ref().is_some_and(QualificationReport::passes)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DecreaseCheck {
    pub lower: FactKey,
    pub higher: FactKey,
    pub lower_value: usize,
    pub higher_value: usize,
}

impl DecreaseCheck {
    pub fn passes(&self) -> bool {
        self.higher_value < self.lower_value
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use PatternTag::*;

    #[test]
    fn spot_entries() {
        let r = Registry::paper();
        let e = r.get(&FactKey::ordinary(&[P], 3, 12)).unwrap();
        assert_eq!(e.value, Some(32));
        assert_eq!(e.family[0].label, "Co(12)");
        let e = r.get(&FactKey::ordinary(&[P], 1, 13)).unwrap();
        assert_eq!(e.value, Some(66));
        assert_eq!(e.status, TrustStatus::PaperAsserted);
        let e = r.get(&FactKey::ordinary(&[P], 2, 13)).unwrap();
        assert_eq!(e.value, Some(40));
        assert_eq!(e.family.len(), 2);
        assert_eq!(r.get(&FactKey::ordinary(&[P], 2, 6)).unwrap().value, None);
    }

    #[test]
    fn double_book_is_a_witness() {
        for n in 6..=12 {
            let g = double_book(n);
            assert_eq!(g.edge_count(), 2 * n - 4);
            for t in [P, C, P2uK3] {
                assert!(!crate::patterns::contains_tag(&g, t), "n={n} {t}");
            }
            assert!(crate::patterns::contains_tag(&g, M));
        }
    }

    #[test]
    fn conflicting_value_rejected() {
        let mut r = Registry::paper();
        let key = FactKey::ordinary(&[P], 1, 7);
        let mut e = r.get(&key).unwrap().clone();
        e.value = Some(21);
        e.status = TrustStatus::SearchVerified;
        assert!(r.put(e).is_err());
        let mut e = r.get(&key).unwrap().clone();
        e.status = TrustStatus::SearchVerified;
        r.put(e).unwrap();
        assert_eq!(r.get(&key).unwrap().status, TrustStatus::SearchVerified);
    }

    #[test]
    fn json_round_trip() {
        let r = Registry::paper();
        let back = Registry::from_json(&r.to_json().unwrap()).unwrap();
        assert_eq!(back.len(), r.len());
    }
}
