//! Brute-force cut enumeration, used as ground truth for the flow routines.
//!
//! Every minimal edge cut of a connected graph splits it into exactly two
//! sides, so scanning all vertex subsets `S` (up to complement) and
//! counting crossing edges directly from the adjacency relation finds every
//! minimum cut.

use super::ConnectivityError;
use crate::graph::Graph;

pub const ORACLE_MAX_ORDER: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleProfile {
    pub lambda: usize,
    pub is_super: bool,
    /// Minimum cuts, counted once per unordered bipartition.
    pub min_cuts: usize,
    pub nontrivial_min_cuts: usize,
    /// Smallest cut leaving no isolated vertex on either side.
    pub lambda_restricted: Option<usize>,
    /// A minimizing side (the first one met in subset order).
    pub min_side: Vec<usize>,
}

fn crossing(g: &Graph, side: &[bool]) -> usize {
    let n = g.order();
    let mut count = 0;
    for u in 0..n {
        for v in u + 1..n {
            if side[u] != side[v] && g.is_adjacent(u, v) {
                count += 1;
            }
        }
    }
    count
}

/// True when some vertex has no neighbor on its own side.
fn leaves_isolated(g: &Graph, side: &[bool]) -> bool {
    let n = g.order();
    (0..n).any(|u| !(0..n).any(|v| v != u && side[v] == side[u] && g.is_adjacent(u, v)))
}

pub fn oracle_cut_scan(g: &Graph) -> Result<OracleProfile, ConnectivityError> {
    let n = g.order();
    if n < 2 {
        return Err(ConnectivityError::TooFewVertices);
    }
    if n > ORACLE_MAX_ORDER {
        return Err(ConnectivityError::TooLargeForOracle(n));
    }
    if !g.is_connected() {
        return Err(ConnectivityError::Disconnected);
    }
    let mut lambda = usize::MAX;
    let mut min_cuts = 0;
    let mut nontrivial = 0;
    let mut restricted: Option<usize> = None;
    let mut min_side = Vec::new();
    // sides never contain the last vertex, which fixes one per complement pair
    for mask in 1u64..(1u64 << (n - 1)) {
        let side: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        let size = crossing(g, &side);
        let k = mask.count_ones() as usize;
        let trivial = k == 1 || k == n - 1;
        match size.cmp(&lambda) {
            std::cmp::Ordering::Less => {
                lambda = size;
                min_cuts = 1;
                nontrivial = usize::from(!trivial);
                min_side = (0..n).filter(|&v| side[v]).collect();
            }
            std::cmp::Ordering::Equal => {
                min_cuts += 1;
                nontrivial += usize::from(!trivial);
            }
            std::cmp::Ordering::Greater => {}
        }
        if !leaves_isolated(g, &side) && restricted.is_none_or(|r| size < r) {
            restricted = Some(size);
        }
    }
    Ok(OracleProfile {
        lambda,
        is_super: nontrivial == 0,
        min_cuts,
        nontrivial_min_cuts: nontrivial,
        lambda_restricted: restricted,
        min_side,
    })
}
