//! Exact search and certificates for Turán numbers of higher order and
//! Ramsey arrowing of the loose 3-uniform path of length three.
//!
//! Graphs live on at most 16 vertices with edges stored as a bitset over the
//! colex-ordered triple slots; see [`graph`].

pub mod audit;
pub mod canon;
pub mod certstore;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod patterns;
pub mod ramsey;
pub mod turan;

pub use canon::{are_isomorphic, canonical_form, canonical_key, dedupe, CanonicalKey};
pub use constructions::{build, catalog, construct, NamedConstruction, Tag};
pub use error::{Error, Result};
pub use graph::{Edge, EdgeSet, Hypergraph3, LinkGraph};
pub use patterns::{contains, in_comet, in_star, is_sub_iso, Pattern, PatternTag};
pub use turan::{FactKey, Registry, SearchSpec, TrustStatus, TuranResult};
