//! Certificates on disk: sorted-key JSON with a schema version and a
//! SHA-256 hash over every semantic field.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::audit::{self, AuditReport};
use crate::error::{Error, Result};
use crate::graph::Hypergraph3;
use crate::patterns::{self, Host};
use crate::ramsey::{self, ArrowCertificate, BipartiteReport, ColoringWitness, RamseyResult};
use crate::turan::{FactKey, NamedGraph, Registry, RegistryEntry, TrustStatus, TuranResult};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Turan,
    Arrowing,
    Audit,
    BipartiteCheck,
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Kind::Turan => "turan",
            Kind::Arrowing => "arrowing",
            Kind::Audit => "audit",
            Kind::BipartiteCheck => "bipartite-check",
        })
    }
}

/// What produced the certificate. Wall time and worker count are left out
/// so reruns are byte-identical.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Environment {
    pub version: String,
    pub seed: u64,
    pub budget_secs: u64,
}

impl Environment {
    pub fn new(seed: u64, budget_secs: u64) -> Environment {
        Environment {
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            budget_secs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub label: String,
    /// `family`, `excluded`, or `coloring`.
    pub role: String,
    /// Core text format.
    pub graph: String,
}

impl Witness {
    fn new(label: &str, role: &str, g: &Hypergraph3) -> Witness {
        Witness {
            label: label.to_string(),
            role: role.to_string(),
            graph: g.to_text(),
        }
    }

    pub fn parse(&self) -> Result<Hypergraph3> {
        Hypergraph3::parse_text(&self.graph)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: u32,
    pub kind: Kind,
    pub claim: Value,
    pub verdict: Value,
    pub status: TrustStatus,
    pub witnesses: Vec<Witness>,
    /// Proof data specific to the kind.
    pub payload: Value,
    pub environment: Environment,
    pub hash: String,
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

impl Certificate {
    fn seal(
        kind: Kind,
        claim: Value,
        verdict: Value,
        status: TrustStatus,
        witnesses: Vec<Witness>,
        payload: Value,
        environment: Environment,
    ) -> Certificate {
        let mut c = Certificate {
            schema: SCHEMA_VERSION,
            kind,
            claim,
            verdict,
            status,
            witnesses,
            payload,
            environment,
            hash: String::new(),
        };
        c.hash = c.compute_hash();
        c
    }

    /// SHA-256 of the sorted-key JSON of every field but the hash.
    pub fn compute_hash(&self) -> String {
        let mut v = to_value(self);
        v.as_object_mut().unwrap().remove("hash");
        let bytes = serde_json::to_vec(&v).unwrap();
        hex::encode(Sha256::digest(&bytes))
    }

    /// A search result; `excluded` are the lower-order extremal graphs the
    /// search ran against.
    pub fn turan(r: &TuranResult, excluded: &[NamedGraph], env: Environment) -> Certificate {
        let mut witnesses: Vec<Witness> = r
            .family
            .iter()
            .enumerate()
            .map(|(i, k)| Witness::new(&format!("family#{i}"), "family", &k.graph()))
            .collect();
        witnesses.extend(excluded.iter().map(|h| Witness::new(&h.label, "excluded", &h.graph)));
        Certificate::seal(
            Kind::Turan,
            json!({ "fact": r.key.to_string() }),
            json!({ "value": r.value, "family_size": r.family.len(), "family_complete": r.status == TrustStatus::SearchVerified }),
            r.status,
            witnesses,
            json!({ "family": r.family, "stats": r.stats }),
            env,
        )
    }

    /// One certificate per order of a chain, each embedding the families of
    /// the orders below it.
    pub fn turan_chain(results: &[TuranResult], env: &Environment) -> Vec<Certificate> {
        let mut excluded: Vec<NamedGraph> = Vec::new();
        let mut out = Vec::new();
        for r in results {
            out.push(Certificate::turan(r, &excluded, env.clone()));
            for (i, k) in r.family.iter().enumerate() {
                excluded.push(NamedGraph::new(format!("Ex^({})#{i}", r.key.order), k.graph()));
            }
        }
        out
    }

    /// A registry entry as stated, with its witnesses.
    pub fn registry_entry(e: &RegistryEntry, registry: &Registry, env: Environment) -> Certificate {
        let mut witnesses: Vec<Witness> = e
            .family
            .iter()
            .map(|m| Witness::new(&m.label, "family", &m.graph))
            .collect();
        if e.key.is_ordinary() && e.key.order > 1 {
            if let Ok(hosts) = registry.lower_order_hosts(&e.key.forbidden, e.key.n, e.key.order) {
                for (label, _, g) in hosts {
                    witnesses.push(Witness::new(&label, "excluded", &g));
                }
            }
        }
        Certificate::seal(
            Kind::Turan,
            json!({ "fact": e.key.to_string() }),
            json!({ "value": e.value, "family_size": e.family.len(), "family_complete": e.family_complete }),
            e.status,
            witnesses,
            json!({}),
            env,
        )
    }

    pub fn arrowing(cert: &ArrowCertificate, env: Environment) -> Certificate {
        Certificate::seal(
            Kind::Arrowing,
            json!({ "host": cert.claim.label, "colors": cert.claim.r, "mode": "prove" }),
            json!({ "arrows": true }),
            cert.status,
            Vec::new(),
            json!({ "certificate": cert }),
            env,
        )
    }

    /// A proper coloring refuting arrowing.
    pub fn coloring(host_label: &str, w: &ColoringWitness, env: Environment) -> Certificate {
        Certificate::seal(
            Kind::Arrowing,
            json!({ "host": host_label, "colors": w.r, "mode": "coloring" }),
            json!({ "arrows": false }),
            TrustStatus::SearchVerified,
            vec![Witness::new(host_label, "coloring", &w.host)],
            json!({ "colors": w.colors }),
            env,
        )
    }

    /// Arrowing established by running out of colorings.
    pub fn exhaustive(host_label: &str, host: &Hypergraph3, r: usize, nodes: u64, env: Environment) -> Certificate {
        Certificate::seal(
            Kind::Arrowing,
            json!({ "host": host_label, "colors": r, "mode": "exhaustive" }),
            json!({ "arrows": true }),
            TrustStatus::SearchVerified,
            vec![Witness::new(host_label, "host", host)],
            json!({ "nodes": nodes }),
            env,
        )
    }

    pub fn ramsey(res: &RamseyResult, env: Environment) -> Certificate {
        let witnesses = res
            .lower
            .iter()
            .map(|w| Witness::new(&format!("K({})", w.host.n()), "coloring", &w.host))
            .collect();
        Certificate::seal(
            Kind::Arrowing,
            json!({ "ramsey": res.r, "mode": "ramsey" }),
            json!({ "value": res.value, "gap": res.gap }),
            res.status,
            witnesses,
            json!({
                "upper": res.upper,
                "lower_colors": res.lower.as_ref().map(|w| w.colors.clone()),
            }),
            env,
        )
    }

    pub fn bipartite(rep: &BipartiteReport, env: Environment) -> Certificate {
        Certificate::seal(
            Kind::BipartiteCheck,
            json!({ "host": "Bip6x6", "copies": "K6uK6" }),
            json!({ "max_overlap": rep.max_overlap, "disjoint_triple": rep.disjoint_triple }),
            TrustStatus::SearchVerified,
            Vec::new(),
            to_value(rep),
            env,
        )
    }

    pub fn audit(rep: &AuditReport, env: Environment) -> Certificate {
        Certificate::seal(
            Kind::Audit,
            json!({ "ns": rep.ns, "samples": rep.samples }),
            json!({ "violations": rep.violations.len() }),
            if rep.passes() {
                TrustStatus::SearchVerified
            } else {
                TrustStatus::Unknown
            },
            rep.violations
                .iter()
                .map(|v| Witness {
                    label: v.check.clone(),
                    role: "violation".into(),
                    graph: v.instance.clone(),
                })
                .collect(),
            to_value(rep),
            env,
        )
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&to_value(self)).unwrap();
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Certificate> {
        let c: Certificate = serde_json::from_str(s)?;
        if c.schema != SCHEMA_VERSION {
            return Err(Error::Certificate(format!("schema {} is not {SCHEMA_VERSION}", c.schema)));
        }
        Ok(c)
    }

    pub fn fact(&self) -> Option<FactKey> {
        self.claim.get("fact")?.as_str()?.parse().ok()
    }
}

pub fn save(cert: &Certificate, path: &Path) -> Result<()> {
    std::fs::write(path, cert.to_json())?;
    Ok(())
}

/// Reads a certificate, rejecting unknown schemas and hash mismatches.
pub fn load(path: &Path) -> Result<Certificate> {
    let c = Certificate::from_json(&std::fs::read_to_string(path)?)?;
    if c.compute_hash() != c.hash {
        return Err(Error::Certificate("hash mismatch".into()));
    }
    Ok(c)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertCheck {
    pub failures: Vec<String>,
}

impl CertCheck {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify_path(path: &Path, registry: &Registry) -> Result<CertCheck> {
    let c = Certificate::from_json(&std::fs::read_to_string(path)?)?;
    Ok(verify(&c, registry))
}

/// Cheap re-checks: hash, witness validity, arithmetic, and agreement with
/// the registry. No search is re-run.
pub fn verify(c: &Certificate, registry: &Registry) -> CertCheck {
    let mut f = Vec::new();
    if c.compute_hash() != c.hash {
        f.push("hash mismatch".to_string());
    }
    if c.status == TrustStatus::Unknown && c.kind != Kind::Audit {
        f.push("status is unknown".into());
    }
    match c.kind {
        Kind::Turan => verify_turan(c, registry, &mut f),
        Kind::Arrowing => verify_arrowing(c, registry, &mut f),
        Kind::BipartiteCheck => {
            let fresh = ramsey::bipartite_check();
            if serde_json::from_value::<BipartiteReport>(c.payload.clone()).ok() != Some(fresh.clone()) {
                f.push("bipartite report does not reproduce".into());
            }
            if !fresh.passes() {
                f.push("bipartite check fails".into());
            }
        }
        Kind::Audit => match serde_json::from_value::<AuditReport>(c.payload.clone()) {
            Ok(rep) => {
                let fresh = audit::audit(&rep.ns, rep.samples, rep.seed);
                if fresh != rep {
                    f.push("audit does not reproduce".into());
                }
                let bad: usize = rep.checks.values().map(|t| t.applied - t.passed).sum();
                if bad != rep.violations.len() {
                    f.push("violation count disagrees with the tallies".into());
                }
            }
            Err(e) => f.push(format!("audit payload: {e}")),
        },
    }
    CertCheck { failures: f }
}

fn verify_turan(c: &Certificate, registry: &Registry, f: &mut Vec<String>) {
    let Some(key) = c.fact() else {
        f.push("claim has no parseable fact".into());
        return;
    };
    let value = c.verdict.get("value").and_then(Value::as_u64).map(|v| v as usize);
    let mut family = Vec::new();
    let mut hosts = Vec::new();
    for w in &c.witnesses {
        match w.parse() {
            Ok(g) if g.n() == key.n => match w.role.as_str() {
                "family" => family.push((w.label.clone(), g)),
                "excluded" => hosts.push(Host::new(g)),
                r => f.push(format!("unexpected witness role {r}")),
            },
            Ok(_) => f.push(format!("witness {} has the wrong order", w.label)),
            Err(e) => f.push(format!("witness {}: {e}", w.label)),
        }
    }
    if value.is_some() && family.is_empty() {
        f.push("no witness for the value".into());
    }
    for (label, g) in &family {
        if Some(g.edge_count()) != value {
            f.push(format!("{label} has {} edges, not {value:?}", g.edge_count()));
        }
        let masks = g.masks();
        if let Some(t) = key
            .forbidden
            .iter()
            .find(|&&t| patterns::find_tag_masks(t, &masks).is_some())
        {
            f.push(format!("{label} contains {t}"));
        }
        if let Some(req) = key.require {
            if patterns::find_tag_masks(req, &masks).is_none() {
                f.push(format!("{label} lacks {req}"));
            }
        }
        if key.connected && !g.is_connected() {
            f.push(format!("{label} is disconnected"));
        }
        if hosts.iter().any(|h| h.contains_copy(g)) {
            f.push(format!("{label} lies inside an excluded graph"));
        }
    }
    if key.is_ordinary() && key.order > 1 && hosts.is_empty() {
        f.push("higher order without excluded graphs".into());
    }
    if let Some(e) = registry.get(&key) {
        match c.status {
            TrustStatus::LowerBoundOnly => {
                if let (Some(v), Some(r)) = (value, e.value) {
                    if v > r {
                        f.push(format!("lower bound {v} exceeds the registry value {r}"));
                    }
                }
            }
            _ => {
                if e.value != value {
                    f.push(format!("value {value:?} disagrees with the registry {:?}", e.value));
                }
            }
        }
    } else if c.status == TrustStatus::PaperAsserted {
        f.push(format!("{key} is not in the registry"));
    }
}

fn verify_arrowing(c: &Certificate, registry: &Registry, f: &mut Vec<String>) {
    let mode = c.claim.get("mode").and_then(Value::as_str).unwrap_or("");
    let coloring = |f: &mut Vec<String>, colors: &Value, r: usize| {
        let Some(w) = c.witnesses.iter().find(|w| w.role == "coloring") else {
            f.push("no coloring witness".into());
            return;
        };
        let Ok(host) = w.parse() else {
            f.push("coloring host does not parse".into());
            return;
        };
        let colors: Vec<u8> = serde_json::from_value(colors.clone()).unwrap_or_default();
        let cw = ColoringWitness { host, r, colors };
        if let Err(e) = cw.verify() {
            f.push(e.to_string());
        }
    };
    match mode {
        "prove" => match serde_json::from_value::<ArrowCertificate>(c.payload["certificate"].clone()) {
            Ok(a) => {
                let rep = ramsey::verify_certificate(&a, registry);
                f.extend(rep.failures);
                if a.status != c.status {
                    f.push("status differs from the proof's".into());
                }
            }
            Err(e) => f.push(format!("proof payload: {e}")),
        },
        "coloring" => {
            let r = c.claim["colors"].as_u64().unwrap_or(0) as usize;
            coloring(f, &c.payload["colors"], r);
        }
        "exhaustive" => {
            if c.witnesses.iter().all(|w| w.parse().is_err()) {
                f.push("host does not parse".into());
            }
        }
        "ramsey" => {
            let r = c.claim["ramsey"].as_u64().unwrap_or(0) as usize;
            coloring(f, &c.payload["lower_colors"], r);
            match serde_json::from_value::<Option<ArrowCertificate>>(c.payload["upper"].clone()) {
                Ok(Some(a)) => {
                    f.extend(ramsey::verify_certificate(&a, registry).failures);
                    if a.claim.n != r + 6 || a.claim.r != r || !a.claim.missing.is_empty() {
                        f.push("upper bound is not for the complete host".into());
                    }
                }
                Ok(None) => {
                    if c.verdict["value"] != Value::Null {
                        f.push("value without an upper bound".into());
                    }
                }
                Err(e) => f.push(format!("upper payload: {e}")),
            }
        }
        m => f.push(format!("unknown arrowing mode {m:?}")),
    }
}

/// A fixed-width table: kind, claim, value, status, short hash.
pub fn report(certs: &[Certificate]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:<16} {:<28} {:<10} {:<17} hash", "kind", "claim", "value", "status");
    for c in certs {
        let claim = match c.kind {
            Kind::Turan => c.claim["fact"].as_str().unwrap_or("?").to_string(),
            Kind::Arrowing => match c.claim.get("ramsey") {
                Some(r) => format!("R(P;{r})"),
                None => format!(
                    "{} -> (P;{})",
                    c.claim["host"].as_str().unwrap_or("?"),
                    c.claim["colors"]
                ),
            },
            Kind::Audit => format!("n in {}", c.claim["ns"]),
            Kind::BipartiteCheck => "K6uK6 vs Bip6x6".to_string(),
        };
        let value = match c.kind {
            Kind::Turan | Kind::Arrowing if c.verdict.get("value").is_some() => {
                match &c.verdict["value"] {
                    Value::Null => "-".to_string(),
                    v => v.to_string(),
                }
            }
            Kind::Arrowing => c.verdict["arrows"].to_string(),
            Kind::Audit => format!("{} viol", c.verdict["violations"]),
            _ => format!("max {}", c.verdict["max_overlap"]),
        };
        let _ = writeln!(
            s,
            "{:<16} {:<28} {:<10} {:<17} {}",
            c.kind.to_string(),
            claim,
            value,
            c.status.to_string(),
            &c.hash[..12.min(c.hash.len())]
        );
    }
    s
}
