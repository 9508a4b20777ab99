//! Turán numbers of higher order, conditional variants, and the fact
//! registry consumed by the Ramsey prover.

mod registry;
mod search;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::canon::CanonicalKey;
use crate::error::{Error, Result};
use crate::graph::Hypergraph3;
use crate::patterns::PatternTag;

pub use registry::{DecreaseCheck, FamilyMember, LowerBoundCheck, Registry, RegistryEntry};
pub use search::{
    conditional, higher_order, higher_order_chain, max_f_free, reference_search, seeds,
    thresholds,
};

/// Environment variable holding the default per-claim budget in seconds.
pub const BUDGET_ENV: &str = "HYPERTURAN_BUDGET";
pub const DEFAULT_BUDGET_SECS: u64 = 600;
pub const DEFAULT_SEARCH_LIMIT: usize = 9;

pub fn default_budget() -> Duration {
    let secs = std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_BUDGET_SECS);
    Duration::from_secs(secs)
}

/// How much a stated value can be trusted. Ordered from weakest to strongest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrustStatus {
    Unknown,
    LowerBoundOnly,
    PaperAsserted,
    SearchVerified,
}

impl TrustStatus {
    pub fn weakest<I: IntoIterator<Item = TrustStatus>>(it: I) -> TrustStatus {
        it.into_iter().min().unwrap_or(TrustStatus::SearchVerified)
    }
}

impl fmt::Display for TrustStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TrustStatus::Unknown => "unknown",
            TrustStatus::LowerBoundOnly => "lower-bound-only",
            TrustStatus::PaperAsserted => "paper-asserted",
            TrustStatus::SearchVerified => "search-verified",
        })
    }
}

/// Identifies a Turán-type number: ordinary of order `s`, or conditional
/// (order 1 with a required subgraph), optionally restricted to connected
/// graphs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FactKey {
    pub forbidden: Vec<PatternTag>,
    pub n: usize,
    pub order: usize,
    pub require: Option<PatternTag>,
    pub connected: bool,
}

impl FactKey {
    pub fn ordinary(forbidden: &[PatternTag], order: usize, n: usize) -> FactKey {
        FactKey {
            forbidden: normalize(forbidden),
            n,
            order,
            require: None,
            connected: false,
        }
    }

    pub fn conditional(
        forbidden: &[PatternTag],
        n: usize,
        require: PatternTag,
        connected: bool,
    ) -> FactKey {
        FactKey {
            forbidden: normalize(forbidden),
            n,
            order: 1,
            require: Some(require),
            connected,
        }
    }

    pub fn with_order(&self, order: usize) -> FactKey {
        FactKey {
            order,
            ..self.clone()
        }
    }

    pub fn is_ordinary(&self) -> bool {
        self.require.is_none() && !self.connected
    }
}

pub(crate) fn normalize(f: &[PatternTag]) -> Vec<PatternTag> {
    let mut v = f.to_vec();
    v.sort();
    v.dedup();
    v
}

impl fmt::Display for FactKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam: Vec<String> = self.forbidden.iter().map(|t| t.to_string()).collect();
        let fam = if fam.len() == 1 {
            fam[0].clone()
        } else {
            format!("{{{}}}", fam.join(","))
        };
        let head = if self.connected { "ex_conn" } else { "ex" };
        match self.require {
            Some(g) => write!(f, "{head}({};{fam}|{g})", self.n),
            None => write!(f, "{head}^({})({};{fam})", self.order, self.n),
        }
    }
}

impl FromStr for FactKey {
    type Err = Error;

    /// Parses the `Display` form, e.g. `ex^(3)(12;P)` or `ex(8;{C,P}|M)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownName(s.to_string());
        let s = s.trim();
        let (connected, rest) = if let Some(r) = s.strip_prefix("ex_conn") {
            (true, r)
        } else {
            (false, s.strip_prefix("ex").ok_or_else(bad)?)
        };
        let (order, rest) = if let Some(r) = rest.strip_prefix("^(") {
            let (o, r) = r.split_once(')').ok_or_else(bad)?;
            (o.parse::<usize>().map_err(|_| bad())?, r)
        } else {
            (1, rest)
        };
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (n, rest) = inner.split_once(';').ok_or_else(bad)?;
        let n: usize = n.parse().map_err(|_| bad())?;
        let (fam, req) = match rest.split_once('|') {
            Some((a, b)) => (a, Some(b.parse::<PatternTag>()?)),
            None => (rest, None),
        };
        let fam = fam.trim_start_matches('{').trim_end_matches('}');
        let forbidden = fam
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<PatternTag>>>()?;
        Ok(FactKey {
            forbidden: normalize(&forbidden),
            n,
            order,
            require: req,
            connected,
        })
    }
}

/// A graph with a human-readable name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedGraph {
    pub label: String,
    pub graph: Hypergraph3,
}

impl NamedGraph {
    pub fn new(label: impl Into<String>, graph: Hypergraph3) -> NamedGraph {
        NamedGraph {
            label: label.into(),
            graph,
        }
    }
}

/// Input to the exact search.
#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub n: usize,
    pub forbidden: Vec<PatternTag>,
    pub order: usize,
    pub require: Option<PatternTag>,
    pub connected: bool,
    /// Extremal graphs of all lower orders.
    pub excluded: Vec<NamedGraph>,
    pub budget: Duration,
    /// Worker threads; 0 uses the global pool.
    pub jobs: usize,
    pub seed: u64,
    /// Largest n accepted without raising the limit explicitly.
    pub search_limit: usize,
}

impl SearchSpec {
    pub fn new(n: usize, forbidden: &[PatternTag]) -> SearchSpec {
        SearchSpec {
            n,
            forbidden: normalize(forbidden),
            order: 1,
            require: None,
            connected: false,
            excluded: Vec::new(),
            budget: default_budget(),
            jobs: 0,
            seed: 0,
            search_limit: DEFAULT_SEARCH_LIMIT,
        }
    }

    pub fn key(&self) -> FactKey {
        FactKey {
            forbidden: normalize(&self.forbidden),
            n: self.n,
            order: self.order,
            require: self.require,
            connected: self.connected,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.forbidden.is_empty() {
            return Err(Error::InvalidSpec("forbidden family is empty".into()));
        }
        if self.n == 0 || self.n > crate::graph::MAX_VERTICES {
            return Err(Error::VertexCount(self.n));
        }
        if self.n > self.search_limit {
            return Err(Error::InvalidSpec(format!(
                "n = {} exceeds the search limit {}",
                self.n, self.search_limit
            )));
        }
        if self.order == 0 {
            return Err(Error::InvalidSpec("order must be at least 1".into()));
        }
        if self.order >= 2 && self.excluded.is_empty() {
            return Err(Error::InvalidSpec(
                "orders above 1 need the lower-order extremal graphs".into(),
            ));
        }
        if self.require.is_some() && self.order != 1 {
            return Err(Error::InvalidSpec(
                "conditional numbers are only defined for order 1".into(),
            ));
        }
        if let Some(g) = self.require {
            let gg = g.graph();
            if gg.n() > self.n {
                return Err(Error::InvalidSpec(format!("{g} does not fit on {} vertices", self.n)));
            }
            let masks = gg.masks();
            if self
                .forbidden
                .iter()
                .any(|&t| crate::patterns::find_tag_masks(t, &masks).is_some())
            {
                return Err(Error::InvalidSpec(format!("required {g} is not F-free")));
            }
        }
        for h in &self.excluded {
            if h.graph.n() != self.n {
                return Err(Error::SizeMismatch(h.graph.n(), self.n));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Branch nodes visited (deterministic for a given spec).
    pub nodes: u64,
    pub prunes: u64,
    /// Non-isomorphic partial graphs kept per vertex count.
    pub level_sizes: Vec<usize>,
    /// Lower bound the search started from.
    pub seed_value: usize,
    /// Not part of any certificate.
    #[serde(skip)]
    pub wall_ms: u128,
}

#[derive(Clone, Debug)]
pub struct TuranResult {
    pub key: FactKey,
    pub excluded: Vec<String>,
    /// `None` when no graph qualifies.
    pub value: Option<usize>,
    pub family: Vec<CanonicalKey>,
    pub status: TrustStatus,
    pub stats: SearchStats,
}

impl TuranResult {
    pub fn family_graphs(&self) -> Vec<Hypergraph3> {
        self.family.iter().map(CanonicalKey::graph).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fact_key_text_round_trip() {
        let keys = [
            FactKey::ordinary(&[PatternTag::P], 3, 12),
            FactKey::conditional(&[PatternTag::P, PatternTag::C], 8, PatternTag::M, false),
            FactKey::conditional(&[PatternTag::P], 7, PatternTag::C, true),
        ];
        for k in keys {
            assert_eq!(k.to_string().parse::<FactKey>().unwrap(), k);
        }
        assert_eq!(keys_str(&FactKey::ordinary(&[PatternTag::P], 3, 12)), "ex^(3)(12;P)");
    }

    fn keys_str(k: &FactKey) -> String {
        k.to_string()
    }

    #[test]
    fn weakest_status() {
        use TrustStatus::*;
        assert_eq!(TrustStatus::weakest([SearchVerified, PaperAsserted]), PaperAsserted);
        assert_eq!(TrustStatus::weakest([]), SearchVerified);
        assert_eq!(TrustStatus::weakest([LowerBoundOnly, Unknown]), Unknown);
    }

    #[test]
    fn spec_validation() {
        let mut s = SearchSpec::new(7, &[PatternTag::P]);
        assert!(s.validate().is_ok());
        s.order = 2;
        assert!(s.validate().is_err());
        let mut s = SearchSpec::new(7, &[]);
        assert!(s.validate().is_err());
        s.forbidden = vec![PatternTag::P];
        s.n = 12;
        assert!(s.validate().is_err());
        let mut s = SearchSpec::new(7, &[PatternTag::M]);
        s.require = Some(PatternTag::M);
        assert!(s.validate().is_err());
    }
}
