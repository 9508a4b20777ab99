//! Generators for the named 3-graphs.
//!
//! Labeling conventions (distinguished vertices always come first):
//!
//! | tag        | roles                                                       |
//! |------------|-------------------------------------------------------------|
//! | `S`        | center 0                                                    |
//! | `Co`       | center 0, head {1,2,3}, tail 4..                            |
//! | `Ro`       | x = 0, a..d = 1..4, star leaves 5..                         |
//! | `G1`,`G2`  | x,y,z = 0,1,2 and v = 3                                     |
//! | `G3`       | x = 0, y1,y2 = 1,2, z1,z2 = 3,4                             |
//! | `K5+2`     | K5 on 0..4, a,b = 0,1, pendant c,d = 5,6                    |
//! | `K-e`      | missing {0,1,2}                                             |
//! | `K-2e-1/2/3` | missing {0,1,2} and {0,1,3} / {0,3,4} / {3,4,5}           |
//! | unions     | left part first                                             |
//! | `Bip6x6`   | sides {0..5} and {6..11}                                    |

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{binom, Edge, Hypergraph3, MAX_VERTICES};
use crate::patterns::{self, Host, PatternTag};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tag {
    Complete,
    CompleteMinusEdge,
    /// Two missing edges sharing 2, 1 or 0 vertices (variant 1, 2, 3).
    CompleteMinusTwo(u8),
    Star,
    Comet,
    Rocket,
    G1,
    G2,
    G3,
    K5Plus2,
    K6UnionK,
    TwoK6UnionK1,
    K6UnionStar,
    K4UnionStar,
    Bip6x6,
}

impl Tag {
    /// One entry per tag family; `K-2e` appears once.
    pub const FAMILIES: [Tag; 15] = [
        Tag::Complete,
        Tag::CompleteMinusEdge,
        Tag::CompleteMinusTwo(1),
        Tag::Star,
        Tag::Comet,
        Tag::Rocket,
        Tag::G1,
        Tag::G2,
        Tag::G3,
        Tag::K5Plus2,
        Tag::K6UnionK,
        Tag::TwoK6UnionK1,
        Tag::K6UnionStar,
        Tag::K4UnionStar,
        Tag::Bip6x6,
    ];

    /// Every concrete tag, with all three `K-2e` variants.
    pub fn all() -> Vec<Tag> {
        let mut v: Vec<Tag> = Tag::FAMILIES.to_vec();
        v.insert(3, Tag::CompleteMinusTwo(2));
        v.insert(4, Tag::CompleteMinusTwo(3));
        v
    }

    pub fn valid_range(self) -> (usize, usize) {
        match self {
            Tag::Complete => (1, MAX_VERTICES),
            Tag::CompleteMinusEdge => (3, MAX_VERTICES),
            Tag::CompleteMinusTwo(1) => (4, MAX_VERTICES),
            Tag::CompleteMinusTwo(2) => (5, MAX_VERTICES),
            Tag::CompleteMinusTwo(_) => (6, MAX_VERTICES),
            Tag::Star => (3, MAX_VERTICES),
            Tag::Comet => (4, MAX_VERTICES),
            Tag::Rocket => (5, MAX_VERTICES),
            Tag::G1 | Tag::G2 | Tag::G3 => (7, MAX_VERTICES),
            Tag::K5Plus2 => (7, 7),
            Tag::K6UnionK => (7, MAX_VERTICES),
            Tag::TwoK6UnionK1 => (13, 13),
            Tag::K6UnionStar => (9, MAX_VERTICES),
            Tag::K4UnionStar => (7, MAX_VERTICES),
            Tag::Bip6x6 => (12, 12),
        }
    }

    pub fn is_valid(self, n: usize) -> bool {
        if let Tag::CompleteMinusTwo(v) = self {
            if !(1..=3).contains(&v) {
                return false;
            }
        }
        let (lo, hi) = self.valid_range();
        (lo..=hi).contains(&n)
    }

    /// Closed-form edge count.
    pub fn size(self, n: usize) -> usize {
        match self {
            Tag::Complete => binom(n, 3),
            Tag::CompleteMinusEdge => binom(n, 3) - 1,
            Tag::CompleteMinusTwo(_) => binom(n, 3) - 2,
            Tag::Star => binom(n - 1, 2),
            Tag::Comet => 4 + binom(n - 4, 2),
            Tag::Rocket => 3 + binom(n - 5, 2),
            Tag::G1 | Tag::G2 => 3 * n - 8,
            Tag::G3 => 2 * n - 2,
            Tag::K5Plus2 => 12,
            Tag::K6UnionK => 20 + binom(n - 6, 3),
            Tag::TwoK6UnionK1 => 40,
            Tag::K6UnionStar => 20 + binom(n - 7, 2),
            Tag::K4UnionStar => 4 + binom(n - 5, 2),
            Tag::Bip6x6 => 180,
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            Tag::Complete => "C(n,3)",
            Tag::CompleteMinusEdge => "C(n,3)-1",
            Tag::CompleteMinusTwo(_) => "C(n,3)-2",
            Tag::Star => "C(n-1,2)",
            Tag::Comet => "4+C(n-4,2)",
            Tag::Rocket => "3+C(n-5,2)",
            Tag::G1 | Tag::G2 => "3n-8",
            Tag::G3 => "2n-2",
            Tag::K5Plus2 => "12",
            Tag::K6UnionK => "20+C(n-6,3)",
            Tag::TwoK6UnionK1 => "40",
            Tag::K6UnionStar => "20+C(n-7,2)",
            Tag::K4UnionStar => "4+C(n-5,2)",
            Tag::Bip6x6 => "180",
        }
    }

    /// Short display name with the vertex count filled in, e.g. `Co(13)`.
    pub fn label(self, n: usize) -> String {
        match self {
            Tag::Complete => format!("K({n})"),
            Tag::CompleteMinusEdge => format!("K({n})-e"),
            Tag::CompleteMinusTwo(v) => format!("K({n})-2e[{v}]"),
            Tag::Star => format!("S({n})"),
            Tag::Comet => format!("Co({n})"),
            Tag::Rocket => format!("Ro({n})"),
            Tag::G1 => format!("G1({n})"),
            Tag::G2 => format!("G2({n})"),
            Tag::G3 => format!("G3({n})"),
            Tag::K5Plus2 => "K5+2".to_string(),
            Tag::K6UnionK => format!("K6uK({})", n - 6),
            Tag::TwoK6UnionK1 => "2K6uK1".to_string(),
            Tag::K6UnionStar => format!("K6uS({})", n - 6),
            Tag::K4UnionStar => format!("K4uS({})", n - 4),
            Tag::Bip6x6 => "Bip6x6".to_string(),
        }
    }

    pub fn build(self, n: usize) -> Result<Hypergraph3> {
        Ok(construct(self, n)?.graph)
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tag::Complete => "K".to_string(),
            Tag::CompleteMinusEdge => "K-e".to_string(),
            Tag::CompleteMinusTwo(v) => format!("K-2e-{v}"),
            Tag::Star => "S".to_string(),
            Tag::Comet => "Co".to_string(),
            Tag::Rocket => "Ro".to_string(),
            Tag::G1 => "G1".to_string(),
            Tag::G2 => "G2".to_string(),
            Tag::G3 => "G3".to_string(),
            Tag::K5Plus2 => "K5+2".to_string(),
            Tag::K6UnionK => "K6uK".to_string(),
            Tag::TwoK6UnionK1 => "2K6uK1".to_string(),
            Tag::K6UnionStar => "K6uS".to_string(),
            Tag::K4UnionStar => "K4uS".to_string(),
            Tag::Bip6x6 => "Bip6x6".to_string(),
        };
        f.write_str(&s)
    }
}

impl FromStr for Tag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        Ok(match t {
            "K" => Tag::Complete,
            "K-e" => Tag::CompleteMinusEdge,
            "K-2e" | "K-2e-1" => Tag::CompleteMinusTwo(1),
            "K-2e-2" => Tag::CompleteMinusTwo(2),
            "K-2e-3" => Tag::CompleteMinusTwo(3),
            "S" => Tag::Star,
            "Co" => Tag::Comet,
            "Ro" => Tag::Rocket,
            "G1" => Tag::G1,
            "G2" => Tag::G2,
            "G3" => Tag::G3,
            "K5+2" | "K5plus2" => Tag::K5Plus2,
            "K6uK" => Tag::K6UnionK,
            "2K6uK1" => Tag::TwoK6UnionK1,
            "K6uS" => Tag::K6UnionStar,
            "K4uS" => Tag::K4UnionStar,
            "Bip6x6" => Tag::Bip6x6,
            _ => return Err(Error::UnknownName(t.to_string())),
        })
    }
}

/// A built construction with its distinguished vertices.
#[derive(Clone, Debug)]
pub struct NamedConstruction {
    pub tag: Tag,
    pub n: usize,
    pub graph: Hypergraph3,
    pub roles: Vec<(&'static str, Vec<usize>)>,
}

fn star_on(g: &mut Hypergraph3, center: usize, leaves: &[usize]) {
    for (i, &a) in leaves.iter().enumerate() {
        for &b in &leaves[i + 1..] {
            g.insert(Edge::new(center, a, b).unwrap()).unwrap();
        }
    }
}

fn clique_on(g: &mut Hypergraph3, vs: &[usize]) {
    for (i, &a) in vs.iter().enumerate() {
        for (j, &b) in vs.iter().enumerate().skip(i + 1) {
            for &c in &vs[j + 1..] {
                g.insert(Edge::new(a, b, c).unwrap()).unwrap();
            }
        }
    }
}

fn triples(n: usize) -> impl Iterator<Item = [usize; 3]> {
    (0..n).flat_map(move |c| (0..c).flat_map(move |b| (0..b).map(move |a| [a, b, c])))
}

pub fn construct(tag: Tag, n: usize) -> Result<NamedConstruction> {
    if !tag.is_valid(n) {
        return Err(Error::ConstructionRange {
            tag: tag.to_string(),
            n,
        });
    }
    let mut g = Hypergraph3::empty(n)?;
    let range = |a: usize, b: usize| (a..b).collect::<Vec<usize>>();
    let roles: Vec<(&'static str, Vec<usize>)> = match tag {
        Tag::Complete => {
            g = Hypergraph3::complete(n)?;
            vec![]
        }
        Tag::CompleteMinusEdge => {
            g = Hypergraph3::complete(n)?;
            g.remove(Edge::new(0, 1, 2)?)?;
            vec![("missing", vec![0, 1, 2])]
        }
        Tag::CompleteMinusTwo(v) => {
            g = Hypergraph3::complete(n)?;
            let second = match v {
                1 => [0, 1, 3],
                2 => [0, 3, 4],
                _ => [3, 4, 5],
            };
            g.remove(Edge::new(0, 1, 2)?)?;
            g.remove(Edge::new(second[0], second[1], second[2])?)?;
            vec![("missing", vec![0, 1, 2]), ("missing", second.to_vec())]
        }
        Tag::Star => {
            star_on(&mut g, 0, &range(1, n));
            vec![("center", vec![0])]
        }
        Tag::Comet => {
            clique_on(&mut g, &[0, 1, 2, 3]);
            star_on(&mut g, 0, &range(4, n));
            vec![("center", vec![0]), ("head", vec![1, 2, 3])]
        }
        Tag::Rocket => {
            let mut leaves = vec![];
            leaves.extend(5..n);
            star_on(&mut g, 0, &leaves);
            for t in [[0, 1, 2], [1, 2, 3], [1, 2, 4]] {
                g.insert(Edge::new(t[0], t[1], t[2])?)?;
            }
            vec![("x", vec![0]), ("abcd", vec![1, 2, 3, 4])]
        }
        Tag::G1 => {
            g.insert(Edge::new(0, 1, 2)?)?;
            for [a, b, c] in triples(n) {
                let h = [a, b, c];
                if h.contains(&3) && h.iter().any(|&u| u < 3) {
                    g.insert(Edge::new(a, b, c)?)?;
                }
            }
            vec![("xyz", vec![0, 1, 2]), ("v", vec![3])]
        }
        Tag::G2 => {
            g.insert(Edge::new(0, 1, 2)?)?;
            for [a, b, c] in triples(n) {
                if [a, b, c].iter().filter(|&&u| u < 3).count() == 2 {
                    g.insert(Edge::new(a, b, c)?)?;
                }
            }
            vec![("xyz", vec![0, 1, 2]), ("v", vec![3])]
        }
        Tag::G3 => {
            for [a, b, c] in triples(5) {
                let h = [a, b, c];
                if h == [1, 2, 3] || h == [1, 2, 4] {
                    continue;
                }
                g.insert(Edge::new(a, b, c)?)?;
            }
            for v in 5..n {
                g.insert(Edge::new(0, 3, v)?)?;
                g.insert(Edge::new(0, 4, v)?)?;
            }
            vec![("x", vec![0]), ("y", vec![1, 2]), ("z", vec![3, 4])]
        }
        Tag::K5Plus2 => {
            clique_on(&mut g, &[0, 1, 2, 3, 4]);
            g.insert(Edge::new(0, 1, 5)?)?;
            g.insert(Edge::new(0, 1, 6)?)?;
            vec![("ab", vec![0, 1]), ("cd", vec![5, 6])]
        }
        Tag::K6UnionK => {
            clique_on(&mut g, &range(0, 6));
            clique_on(&mut g, &range(6, n));
            vec![("K6", range(0, 6)), ("rest", range(6, n))]
        }
        Tag::TwoK6UnionK1 => {
            clique_on(&mut g, &range(0, 6));
            clique_on(&mut g, &range(6, 12));
            vec![("K6", range(0, 6)), ("K6", range(6, 12)), ("K1", vec![12])]
        }
        Tag::K6UnionStar => {
            clique_on(&mut g, &range(0, 6));
            star_on(&mut g, 6, &range(7, n));
            vec![("K6", range(0, 6)), ("center", vec![6])]
        }
        Tag::K4UnionStar => {
            clique_on(&mut g, &range(0, 4));
            star_on(&mut g, 4, &range(5, n));
            vec![("K4", range(0, 4)), ("center", vec![4])]
        }
        Tag::Bip6x6 => {
            for [a, b, c] in triples(12) {
                let left = [a, b, c].iter().filter(|&&u| u < 6).count();
                if left == 1 || left == 2 {
                    g.insert(Edge::new(a, b, c)?)?;
                }
            }
            vec![("left", range(0, 6)), ("right", range(6, 12))]
        }
    };
    Ok(NamedConstruction {
        tag,
        n,
        graph: g,
        roles,
    })
}

pub fn build(tag: Tag, n: usize) -> Result<Hypergraph3> {
    tag.build(n)
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub tag: String,
    pub min_n: usize,
    pub max_n: usize,
    pub size_formula: &'static str,
}

pub fn catalog() -> Vec<CatalogEntry> {
    Tag::FAMILIES
        .iter()
        .map(|&t| {
            let (min_n, max_n) = t.valid_range();
            let tag = match t {
                Tag::CompleteMinusTwo(_) => "K-2e-{1,2,3}".to_string(),
                other => other.to_string(),
            };
            CatalogEntry {
                tag,
                min_n,
                max_n,
                size_formula: t.formula(),
            }
        })
        .collect()
}

/// Outcome of checking a candidate against its claimed extremal role.
#[derive(Clone, Debug, Serialize)]
pub struct QualificationReport {
    pub label: String,
    pub n: usize,
    pub order: usize,
    pub edges: usize,
    pub claimed_edges: Option<usize>,
    pub forbidden_free: Vec<(PatternTag, bool)>,
    /// `(host label, host order, candidate contained in host)`.
    pub host_checks: Vec<(String, usize, bool)>,
}

impl QualificationReport {
    pub fn passes(&self) -> bool {
        self.forbidden_free.iter().all(|&(_, free)| free)
            && self.host_checks.iter().all(|(_, _, inside)| !inside)
            && self.claimed_edges.is_none_or(|c| c == self.edges)
    }
}

/// Checks `graph` against a forbidden family and a list of hosts of lower
/// orders: it must avoid every pattern and fit inside none of the hosts.
pub fn qualify_graph(
    label: &str,
    graph: &Hypergraph3,
    order: usize,
    forbidden: &[PatternTag],
    hosts: &[(String, usize, Hypergraph3)],
    claimed_edges: Option<usize>,
) -> QualificationReport {
    let masks = graph.masks();
    let forbidden_free = forbidden
        .iter()
        .map(|&t| (t, patterns::find_tag_masks(t, &masks).is_none()))
        .collect();
    let host_checks = hosts
        .iter()
        .map(|(hl, ho, h)| (hl.clone(), *ho, Host::new(h.clone()).contains_copy(graph)))
        .collect();
    QualificationReport {
        label: label.to_string(),
        n: graph.n(),
        order,
        edges: graph.edge_count(),
        claimed_edges,
        forbidden_free,
        host_checks,
    }
}

/// Qualifies a named construction as a member of `Ex^(order)(n; P)` using the
/// lower-order families recorded in `registry`.
pub fn qualify(
    tag: Tag,
    n: usize,
    order: usize,
    registry: &crate::turan::Registry,
) -> Result<QualificationReport> {
    let graph = build(tag, n)?;
    let forbidden = [PatternTag::P];
    let hosts = registry.lower_order_hosts(&forbidden, n, order)?;
    let claimed = registry
        .get(&crate::turan::FactKey::ordinary(&forbidden, order, n))
        .and_then(|e| e.value);
    Ok(qualify_graph(
        &tag.label(n),
        &graph,
        order,
        &forbidden,
        &hosts,
        claimed,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::{contains, Pattern};

    #[test]
    fn sizes_match_closed_forms() {
        for tag in Tag::all() {
            for n in 1..=MAX_VERTICES {
                if tag.is_valid(n) {
                    let g = build(tag, n).unwrap();
                    assert_eq!(g.edge_count(), tag.size(n), "{tag} n={n}");
                } else {
                    assert!(build(tag, n).is_err());
                }
            }
        }
    }

    #[test]
    fn spot_values() {
        assert_eq!(build(Tag::Comet, 13).unwrap().edge_count(), 40);
        assert_eq!(build(Tag::G3, 7).unwrap().edge_count(), 12);
        assert_eq!(build(Tag::Rocket, 16).unwrap().edge_count(), 58);
        for v in 1..=3 {
            assert_eq!(build(Tag::CompleteMinusTwo(v), 9).unwrap().edge_count(), 82);
        }
        assert_eq!(build(Tag::Bip6x6, 12).unwrap().edge_count(), 220 - 40);
        assert_eq!(build(Tag::Star, 8).unwrap().edge_count(), 21);
        assert_eq!(build(Tag::Comet, 8).unwrap().edge_count(), 10);
    }

    #[test]
    fn comet_head_and_center_induce_k4() {
        let co = build(Tag::Comet, 13).unwrap();
        assert_eq!(co.induced(&[0, 1, 2, 3]).unwrap(), Hypergraph3::complete(4).unwrap());
    }

    #[test]
    fn hilton_milner_graphs() {
        for n in 7..=12 {
            for tag in [Tag::G1, Tag::G2] {
                let g = build(tag, n).unwrap();
                assert!(contains(&g, &Pattern::C));
                assert!(!contains(&g, &Pattern::P));
                assert!(!contains(&g, &Pattern::M));
            }
            assert!(!contains(&build(Tag::G3, n).unwrap(), &Pattern::M));
        }
    }

    #[test]
    fn catalog_lists_fifteen_families() {
        let c = catalog();
        assert_eq!(c.len(), 15);
        let s = c.iter().find(|e| e.tag == "S").unwrap();
        assert_eq!(s.size_formula, "C(n-1,2)");
        let b = c.iter().find(|e| e.tag == "Bip6x6").unwrap();
        assert_eq!((b.min_n, b.max_n), (12, 12));
    }

    #[test]
    fn tag_names_round_trip() {
        for t in Tag::all() {
            assert_eq!(t.to_string().parse::<Tag>().unwrap(), t);
        }
        assert!("Q".parse::<Tag>().is_err());
    }

    #[test]
    fn out_of_range_is_an_error() {
        assert!(matches!(
            build(Tag::G1, 6),
            Err(Error::ConstructionRange { .. })
        ));
        assert!(build(Tag::K5Plus2, 8).is_err());
    }
}
