//! Ramsey numbers for `P`: colorings, arrowing certificates and their
//! verification.

mod bipartite;
mod coloring;
mod prover;
mod verify;

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::constructions::Tag;
use crate::error::Result;
use crate::graph::Hypergraph3;
use crate::turan::{Registry, TrustStatus};

pub use bipartite::{bipartite_check, bipartite_host, overlaps, BipartiteReport};
pub use coloring::{
    arrows_exhaustive, find_proper_coloring, star_peeling, ColoringOutcome, ColoringWitness,
    ExhaustiveOutcome,
};
pub use prover::{
    host_label, prove_arrowing, ArrowCertificate, ArrowClaim, BipartiteStep, Case, CaseStep,
    Citation, Classify, Lemma, Pigeonhole, Proof, Prover,
};
pub use verify::{edges_embed, verify_certificate, VerifyReport};

/// Outcome of deciding `host -> (P; r)`.
#[derive(Clone, Debug)]
pub enum Arrowing {
    /// Proved by certificate.
    Certified(ArrowCertificate),
    /// Proved by exhausting all colorings.
    Exhaustive { nodes: u64 },
    /// A proper coloring exists.
    Fails(ColoringWitness),
    Unknown(String),
}

impl Arrowing {
    pub fn arrows(&self) -> Option<bool> {
        match self {
            Arrowing::Certified(_) | Arrowing::Exhaustive { .. } => Some(true),
            Arrowing::Fails(_) => Some(false),
            Arrowing::Unknown(_) => None,
        }
    }
}

/// Tries, in order: a certificate, a cheap proper coloring, and for small
/// hosts the exhaustive search.
pub fn arrows(claim: &ArrowClaim, registry: &Registry, budget: Duration) -> Arrowing {
    let gap = match prove_arrowing(claim, registry) {
        Ok(c) => return Arrowing::Certified(c),
        Err(e) => e.to_string(),
    };
    let host = claim.host();
    if claim.r > 0 && claim.n <= claim.r + 5 {
        if let Ok(w) = star_peeling(&host, claim.r) {
            return Arrowing::Fails(w);
        }
    }
    if claim.n <= 8 {
        let out = arrows_exhaustive(&host, claim.r, budget);
        return match (out.arrows, out.witness) {
            (Some(true), _) => Arrowing::Exhaustive { nodes: out.nodes },
            (Some(false), Some(w)) => Arrowing::Fails(w),
            _ => Arrowing::Unknown(format!("budget exhausted after {} nodes", out.nodes)),
        };
    }
    Arrowing::Unknown(gap)
}

/// `R(P; r) = r + 6`, as an upper-bound certificate on `K_{r+6}` and a
/// proper coloring of `K_{r+5}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RamseyResult {
    pub r: usize,
    /// Set when both bounds are established.
    pub value: Option<usize>,
    pub upper: Option<ArrowCertificate>,
    pub lower: Option<ColoringWitness>,
    pub status: TrustStatus,
    /// Why the upper bound is missing, if it is.
    pub gap: Option<String>,
}

pub fn ramsey(r: usize, registry: &Registry) -> Result<RamseyResult> {
    let n = r + 6;
    let lower = star_peeling(&Hypergraph3::complete(n - 1)?, r).ok();
    let claim = ArrowClaim::from_tag(Tag::Complete, n, r)?;
    let (upper, gap) = match prove_arrowing(&claim, registry) {
        Ok(c) => (Some(c), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let status = match (&upper, &lower) {
        (Some(c), Some(_)) => c.status,
        (None, Some(_)) => TrustStatus::LowerBoundOnly,
        _ => TrustStatus::Unknown,
    };
    Ok(RamseyResult {
        r,
        value: (upper.is_some() && lower.is_some()).then_some(n),
        upper,
        lower,
        status,
        gap,
    })
}
