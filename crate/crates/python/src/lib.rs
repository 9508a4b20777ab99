//! Python bindings. Graphs cross the boundary as `(n, [(a, b, c), ...])`;
//! results come back as certificate JSON strings.

use std::time::Duration;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use ::hyperturan as ht;
use ht::certstore::{Certificate, Environment};
use ht::ramsey::{ArrowClaim, Arrowing};
use ht::turan::SearchSpec;
use ht::{Hypergraph3, PatternTag, Registry, Tag};

type Triple = (usize, usize, usize);

fn err(e: ht::Error) -> PyErr {
    match e {
        ht::Error::Io(_) | ht::Error::Json(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn graph(n: usize, edges: Vec<Triple>) -> PyResult<Hypergraph3> {
    let t: Vec<[usize; 3]> = edges.into_iter().map(|(a, b, c)| [a, b, c]).collect();
    Hypergraph3::from_triples(n, &t).map_err(err)
}

fn triples(g: &Hypergraph3) -> Vec<Triple> {
    g.edges()
        .map(|e| {
            let [a, b, c] = e.vertices();
            (a, b, c)
        })
        .collect()
}

fn tags(names: &[String]) -> PyResult<Vec<PatternTag>> {
    names.iter().map(|s| s.parse().map_err(err)).collect()
}

/// Canonical key `"n:hex"`; equal keys mean isomorphic graphs.
#[pyfunction]
fn canonical_key(n: usize, edges: Vec<Triple>) -> PyResult<String> {
    Ok(ht::canonical_key(&graph(n, edges)?).to_string())
}

/// Edges of a copy of `pattern` (P, C, M, P2, P2uK3), or None.
#[pyfunction]
fn find(n: usize, edges: Vec<Triple>, pattern: &str) -> PyResult<Option<Vec<Triple>>> {
    let g = graph(n, edges)?;
    let tag: PatternTag = pattern.parse().map_err(err)?;
    Ok(ht::patterns::find(&g, &tag.pattern()).map(|w| {
        w.into_iter()
            .map(|e| {
                let [a, b, c] = e.vertices();
                (a, b, c)
            })
            .collect()
    }))
}

/// Edges of a named construction, e.g. `build("Co", 12)`.
#[pyfunction]
fn build(tag: &str, n: usize) -> PyResult<Vec<Triple>> {
    let t: Tag = tag.parse().map_err(err)?;
    Ok(triples(&t.build(n).map_err(err)?))
}

/// Exact `ex^(order)(n; forbid)` (or the conditional variant) as a
/// certificate.
#[pyfunction]
#[pyo3(signature = (n, forbid, order=1, require=None, connected=false, budget=600, seed=0))]
fn turan(
    py: Python<'_>,
    n: usize,
    forbid: Vec<String>,
    order: usize,
    require: Option<String>,
    connected: bool,
    budget: u64,
    seed: u64,
) -> PyResult<String> {
    let forbid = tags(&forbid)?;
    let require = require.map(|r| r.parse::<PatternTag>()).transpose().map_err(err)?;
    py.allow_threads(|| {
        let mut base = SearchSpec::new(n, &forbid);
        base.budget = Duration::from_secs(budget);
        base.seed = seed;
        let env = Environment::new(seed, budget);
        let cert = match require {
            Some(g) => {
                let r = ht::turan::conditional(n, &forbid, g, connected, &base)?;
                Certificate::turan(&r, &[], env)
            }
            None => {
                let chain = ht::turan::higher_order_chain(n, &forbid, order, &base)?;
                Certificate::turan_chain(&chain, &env).pop().unwrap()
            }
        };
        Ok(cert.to_json())
    })
    .map_err(err)
}

/// True, False, or None (undecided) for `host -> (P; colors)`; host names
/// look like `K14-e` or `K12-2e-2`.
#[pyfunction]
#[pyo3(signature = (host, colors, budget=600))]
fn arrows(py: Python<'_>, host: &str, colors: usize, budget: u64) -> PyResult<Option<bool>> {
    let rest = host
        .strip_prefix('K')
        .ok_or_else(|| PyValueError::new_err(format!("bad host {host}")))?;
    let digits: String = rest.chars().take_while(char::is_ascii_digit).collect();
    let n: usize = digits
        .parse()
        .map_err(|_| PyValueError::new_err(format!("bad host {host}")))?;
    let tag: Tag = format!("K{}", &rest[digits.len()..]).parse().map_err(err)?;
    let claim = ArrowClaim::from_tag(tag, n, colors).map_err(err)?;
    let reg = Registry::paper();
    let out = py.allow_threads(|| ht::ramsey::arrows(&claim, &reg, Duration::from_secs(budget)));
    Ok(match out {
        Arrowing::Unknown(_) => None,
        o => o.arrows(),
    })
}

/// `R(P; r)` certificate JSON.
#[pyfunction]
fn ramsey(r: usize) -> PyResult<String> {
    let res = ht::ramsey::ramsey(r, &Registry::paper()).map_err(err)?;
    Ok(Certificate::ramsey(&res, Environment::new(0, 0)).to_json())
}

/// `(max_overlap, splits, disjoint_triple)` for `K6 ∪ K6` against the 6+6
/// bipartite 3-graph.
#[pyfunction]
fn bipartite_check() -> (usize, usize, bool) {
    let r = ht::ramsey::bipartite_check();
    (r.max_overlap, r.splits, r.disjoint_triple)
}

/// Audit report JSON for the decomposition inequalities.
#[pyfunction]
#[pyo3(signature = (ns, samples=1000, seed=0))]
fn audit(py: Python<'_>, ns: Vec<usize>, samples: usize, seed: u64) -> String {
    let rep = py.allow_threads(|| ht::audit::audit(&ns, samples, seed));
    Certificate::audit(&rep, Environment::new(seed, 0)).to_json()
}

/// Registry value and status of a fact such as `ex^(3)(12;P)`.
#[pyfunction]
fn registry_value(fact: &str) -> PyResult<Option<(Option<usize>, String)>> {
    let key: ht::FactKey = fact.parse().map_err(err)?;
    Ok(Registry::paper()
        .get(&key)
        .map(|e| (e.value, e.status.to_string())))
}

/// Re-checks certificate JSON against the paper registry; returns the list of
/// failures (empty when valid).
#[pyfunction]
fn verify_certificate(json: &str) -> PyResult<Vec<String>> {
    let c = Certificate::from_json(json).map_err(err)?;
    Ok(ht::certstore::verify(&c, &Registry::paper()).failures)
}

#[pymodule]
#[pyo3(name = "hyperturan")]
fn hyperturan_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(canonical_key, m)?)?;
    m.add_function(wrap_pyfunction!(find, m)?)?;
    m.add_function(wrap_pyfunction!(build, m)?)?;
    m.add_function(wrap_pyfunction!(turan, m)?)?;
    m.add_function(wrap_pyfunction!(arrows, m)?)?;
    m.add_function(wrap_pyfunction!(ramsey, m)?)?;
    m.add_function(wrap_pyfunction!(bipartite_check, m)?)?;
    m.add_function(wrap_pyfunction!(audit, m)?)?;
    m.add_function(wrap_pyfunction!(registry_value, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
