//! Edge and vertex connectivity, restricted edge connectivity and the
//! super-edge-connectedness decision.
//!
//! Conventions: `K1` and `K2` count as super-edge-connected (`K1` has no
//! edge cut at all, and the only cut of `K2` isolates a vertex), and
//! `kappa(K_n) = n - 1`. Among minimum cuts of equal size the witness is the
//! one with the lexicographically smallest side among those examined.

mod flow;
pub mod oracle;

use std::cmp::Ordering;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{mask_to_vec, Bits, Graph};

pub use oracle::{oracle_cut_scan, OracleProfile, ORACLE_MAX_ORDER};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConnectivityError {
    #[error("source and sink must differ (both are {0})")]
    SameVertex(usize),
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("needs at least two vertices")]
    TooFewVertices,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("brute-force cut scan is limited to {ORACLE_MAX_ORDER} vertices, got {0}")]
    TooLargeForOracle(usize),
}

/// An edge cut `∂(S)` described by its side `S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutWitness {
    pub side: Vec<usize>,
    pub boundary: Vec<(usize, usize)>,
    pub size: usize,
    /// `|S| = 1` or `|S| = n - 1`, i.e. the cut isolates a vertex.
    pub trivial: bool,
}

impl CutWitness {
    pub fn from_side(g: &Graph, side: u64) -> Self {
        let k = side.count_ones() as usize;
        let boundary = g.boundary_edges(side);
        CutWitness {
            side: mask_to_vec(side),
            size: boundary.len(),
            boundary,
            trivial: k == 1 || k + 1 == g.order(),
        }
    }

    pub fn side_mask(&self) -> u64 {
        self.side.iter().fold(0, |m, &v| m | 1 << v)
    }

    /// Whether deleting the boundary leaves no path between the side and
    /// the rest of the graph.
    pub fn separates(&self, g: &Graph) -> bool {
        let side = self.side_mask();
        let rest = g.vertex_mask() & !side;
        if side == 0 || rest == 0 {
            return false;
        }
        let h = g.without_edges(&self.boundary);
        h.reach(side, h.vertex_mask()) & rest == 0
    }
}

fn lex_cmp(a: u64, b: u64) -> Ordering {
    Bits(a).cmp(Bits(b))
}

fn check_vertex(g: &Graph, v: usize) -> Result<(), ConnectivityError> {
    if v >= g.order() {
        Err(ConnectivityError::VertexOutOfRange {
            vertex: v,
            n: g.order(),
        })
    } else {
        Ok(())
    }
}

fn require_connected(g: &Graph) -> Result<(), ConnectivityError> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(ConnectivityError::Disconnected)
    }
}

/// Maximum number of edge-disjoint `s`-`t` paths and a minimum cut whose
/// side is everything reachable from `s` in the final residual graph.
pub fn max_flow_min_cut(
    g: &Graph,
    s: usize,
    t: usize,
) -> Result<(usize, CutWitness), ConnectivityError> {
    check_vertex(g, s)?;
    check_vertex(g, t)?;
    if s == t {
        return Err(ConnectivityError::SameVertex(s));
    }
    let (value, side) = flow::edge_flow(g, 1 << s, 1 << t, usize::MAX);
    Ok((value, CutWitness::from_side(g, side)))
}

/// Smallest cut among `candidates`, breaking ties by side order.
fn keep_best(best: &mut Option<(usize, u64)>, value: usize, side: u64) {
    let better = match *best {
        None => true,
        Some((v, s)) => value < v || (value == v && lex_cmp(side, s) == Ordering::Less),
    };
    if better {
        *best = Some((value, side));
    }
}

/// `lambda(G)` with a minimum-cut witness whose side contains vertex 0.
pub fn edge_connectivity(g: &Graph) -> Result<(usize, CutWitness), ConnectivityError> {
    if g.order() < 2 {
        return Err(ConnectivityError::TooFewVertices);
    }
    let (value, side) = lambda_mask(g);
    Ok((value, CutWitness::from_side(g, side)))
}

fn lambda_mask(g: &Graph) -> (usize, u64) {
    let mut best: Option<(usize, u64)> = None;
    for t in 1..g.order() {
        // one above the incumbent so ties are resolved exactly
        let limit = best.map_or(usize::MAX, |(v, _)| v + 1);
        let (value, side) = flow::edge_flow(g, 1, 1 << t, limit);
        if value < limit {
            keep_best(&mut best, value, side);
        }
    }
    best.expect("n >= 2")
}

/// `kappa(G)`: minimum over non-adjacent pairs of vertex-disjoint path
/// counts, or `n - 1` for complete graphs.
pub fn vertex_connectivity(g: &Graph) -> Result<usize, ConnectivityError> {
    let n = g.order();
    if n < 2 {
        return Err(ConnectivityError::TooFewVertices);
    }
    let mut best = n - 1;
    for s in 0..n {
        for t in Bits(g.vertex_mask() & !g.neighbors(s) & !(1u64 << s)) {
            if t > s {
                best = best.min(flow::vertex_flow(g, s, t, best));
            }
        }
    }
    Ok(best)
}

/// Restricted edge connectivity `lambda'(G)`: the smallest cut whose removal
/// leaves no isolated vertex. `None` when `G` has no two vertex-disjoint
/// edges.
///
/// Every such cut separates some edge from a vertex-disjoint edge, and any
/// minimum cut separating two edges leaves no isolated vertex (an isolated
/// vertex could switch sides and shrink the cut). So the value is the
/// minimum over edge pairs of the flow between their contracted endpoints.
/// This costs one flow per pair, quadratic in the edge count.
pub fn restricted_edge_connectivity(
    g: &Graph,
) -> Result<Option<(usize, CutWitness)>, ConnectivityError> {
    if g.order() < 2 {
        return Err(ConnectivityError::TooFewVertices);
    }
    require_connected(g)?;
    Ok(restricted_mask(g, 0).map(|(v, side)| (v, CutWitness::from_side(g, side))))
}

/// Stops early once a pair achieves `floor` (a known lower bound such as
/// `lambda`).
fn restricted_mask(g: &Graph, floor: usize) -> Option<(usize, u64)> {
    let edges = g.edges();
    let masks: Vec<u64> = edges.iter().map(|&(u, v)| 1 << u | 1 << v).collect();
    let mut best: Option<(usize, u64)> = None;
    for (i, &a) in masks.iter().enumerate() {
        for &b in &masks[i + 1..] {
            if a & b != 0 {
                continue;
            }
            let limit = best.map_or(usize::MAX, |(v, _)| v + 1);
            let (value, side) = flow::edge_flow(g, a, b, limit);
            if value < limit {
                keep_best(&mut best, value, side);
                if value <= floor {
                    return best;
                }
            }
        }
    }
    best
}

/// Super-edge-connectedness of a connected graph, with a non-trivial
/// minimum cut as witness when the answer is no.
pub fn is_super_edge_connected(
    g: &Graph,
) -> Result<(bool, Option<CutWitness>), ConnectivityError> {
    require_connected(g)?;
    if g.order() <= 2 {
        return Ok((true, None));
    }
    let (lambda, side) = lambda_mask(g);
    Ok(super_decision(g, lambda, side))
}

fn super_decision(g: &Graph, lambda: usize, lambda_side: u64) -> (bool, Option<CutWitness>) {
    if lambda < g.min_degree() {
        return (false, Some(CutWitness::from_side(g, lambda_side)));
    }
    match restricted_mask(g, lambda) {
        Some((r, side)) if r <= lambda => (false, Some(CutWitness::from_side(g, side))),
        _ => (true, None),
    }
}

/// `lambda == delta`, with the minimum cut when it fails.
pub fn is_maximally_edge_connected(
    g: &Graph,
) -> Result<(bool, Option<CutWitness>), ConnectivityError> {
    if g.order() < 2 {
        return Ok((true, None));
    }
    let (lambda, side) = lambda_mask(g);
    if lambda == g.min_degree() {
        Ok((true, None))
    } else {
        Ok((false, Some(CutWitness::from_side(g, side))))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectivityReport {
    pub order: usize,
    pub size: usize,
    pub connected: bool,
    pub min_degree: usize,
    pub max_degree: usize,
    pub kappa: usize,
    pub lambda: usize,
    pub lambda_restricted: Option<usize>,
    pub maximally_edge_connected: bool,
    pub super_edge_connected: bool,
    /// Set when the verdict rests on the `K1`/`K2` convention.
    pub tiny_convention: bool,
    pub witness: Option<CutWitness>,
}

/// Every connectivity parameter of `g`. Disconnected graphs report
/// `kappa = lambda = 0` and are never super-edge-connected.
pub fn analyze(g: &Graph) -> ConnectivityReport {
    let profile = g.degree_profile();
    let n = g.order();
    let mut report = ConnectivityReport {
        order: n,
        size: g.edge_count(),
        connected: g.is_connected(),
        min_degree: profile.min_degree,
        max_degree: profile.max_degree,
        kappa: 0,
        lambda: 0,
        lambda_restricted: None,
        maximally_edge_connected: profile.min_degree == 0,
        super_edge_connected: false,
        tiny_convention: false,
        witness: None,
    };
    if n == 1 {
        report.super_edge_connected = true;
        report.tiny_convention = true;
        return report;
    }
    if !report.connected {
        let first = g.component_masks()[0];
        report.witness = Some(CutWitness::from_side(g, first));
        return report;
    }
    let (lambda, side) = lambda_mask(g);
    report.lambda = lambda;
    report.kappa = vertex_connectivity(g).expect("n >= 2");
    report.maximally_edge_connected = lambda == profile.min_degree;
    report.lambda_restricted = restricted_mask(g, lambda).map(|(v, _)| v);
    if n == 2 {
        report.super_edge_connected = true;
        report.tiny_convention = true;
        report.witness = Some(CutWitness::from_side(g, side));
        return report;
    }
    let (is_super, nontrivial) = super_decision(g, lambda, side);
    report.super_edge_connected = is_super;
    report.witness = Some(nontrivial.unwrap_or_else(|| CutWitness::from_side(g, side)));
    report
}
