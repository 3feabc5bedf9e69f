//! Super edge-connectivity of graphs defined by forbidden induced subgraphs.
//!
//! The crate provides a dense graph type for up to 64 vertices, graph6 and
//! edge-list I/O, exhaustive enumeration of small graphs (labeled and up to
//! isomorphism), max-flow based connectivity parameters with cut witnesses,
//! induced-subgraph pattern matching, named graph families, and a harness
//! that checks sufficiency statements over exhaustive graph sources.
//!
//! Data-parallel work runs on rayon when the `parallel` feature is enabled
//! (the default); every scan also has a sequential path selected by
//! [`Jobs::sequential`] or by building without the feature.

pub mod canon;
pub mod connectivity;
pub mod enumerate;
pub mod families;
pub mod graph;
pub mod harness;
pub mod io;
pub mod par;
pub mod patterns;

pub use canon::{canonical_code, canonical_form, is_isomorphic, CanonicalCode};
pub use connectivity::{
    analyze, edge_connectivity, is_maximally_edge_connected, is_super_edge_connected,
    max_flow_min_cut, restricted_edge_connectivity, vertex_connectivity, ConnectivityError,
    ConnectivityReport, CutWitness,
};
pub use graph::{Graph, GraphError};
pub use par::Jobs;
pub use patterns::{Catalog, PairSpec, Pattern};
