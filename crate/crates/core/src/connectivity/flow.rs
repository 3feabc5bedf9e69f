//! Unit-capacity augmenting-path flows on dense graphs.

use crate::graph::{Bits, Graph};

/// Edge-disjoint path packing between two disjoint vertex sets.
///
/// Each undirected edge carries capacity one in both directions. Returns the
/// flow value, capped at `limit`, together with the set of vertices
/// reachable from `sources` in the final residual graph. When the value is
/// below `limit`, that set is the source side of a minimum cut.
pub(crate) fn edge_flow(g: &Graph, sources: u64, sinks: u64, limit: usize) -> (usize, u64) {
    debug_assert!(sources & sinks == 0 && sources != 0 && sinks != 0);
    let n = g.order();
    // flow_out[u] has bit v when one unit runs u -> v
    let mut flow_out = vec![0u64; n];
    let mut parent = vec![usize::MAX; n];
    let mut value = 0;
    loop {
        let mut seen = sources;
        let mut frontier = sources;
        let mut hit = None;
        'bfs: while frontier != 0 {
            let mut next = 0u64;
            for u in Bits(frontier) {
                let step = g.neighbors(u) & !flow_out[u] & !seen & !next;
                for w in Bits(step) {
                    parent[w] = u;
                    if sinks >> w & 1 == 1 {
                        hit = Some(w);
                        break 'bfs;
                    }
                }
                next |= step;
            }
            seen |= next;
            frontier = next;
        }
        let Some(mut w) = hit else {
            return (value, seen);
        };
        while sources >> w & 1 == 0 {
            let u = parent[w];
            if flow_out[w] >> u & 1 == 1 {
                flow_out[w] &= !(1 << u);
            } else {
                flow_out[u] |= 1 << w;
            }
            w = u;
        }
        value += 1;
        if value >= limit {
            return (value, 0);
        }
    }
}

/// Maximum number of internally vertex-disjoint `s`-`t` paths for
/// non-adjacent `s`, `t`, capped at `limit`.
///
/// Uses the split network: vertex `v` becomes `v_in -> v_out` with capacity
/// one (unbounded for `s` and `t`), and each edge `uv` becomes the arcs
/// `u_out -> v_in` and `v_out -> u_in`.
pub(crate) fn vertex_flow(g: &Graph, s: usize, t: usize, limit: usize) -> usize {
    let n = g.order();
    let nodes = 2 * n;
    let big = n as i32;
    let (vin, vout) = (|v: usize| 2 * v, |v: usize| 2 * v + 1);
    let mut cap = vec![0i32; nodes * nodes];
    let at = |a: usize, b: usize| a * nodes + b;
    for v in 0..n {
        cap[at(vin(v), vout(v))] = if v == s || v == t { big } else { 1 };
        for u in Bits(g.neighbors(v)) {
            cap[at(vout(v), vin(u))] = big;
        }
    }
    let (src, dst) = (vout(s), vin(t));
    let mut value = 0;
    let mut parent = vec![usize::MAX; nodes];
    let mut queue = Vec::with_capacity(nodes);
    while value < limit {
        parent.iter_mut().for_each(|p| *p = usize::MAX);
        parent[src] = src;
        queue.clear();
        queue.push(src);
        let mut head = 0;
        while head < queue.len() && parent[dst] == usize::MAX {
            let a = queue[head];
            head += 1;
            for b in 0..nodes {
                if parent[b] == usize::MAX && cap[at(a, b)] > 0 {
                    parent[b] = a;
                    queue.push(b);
                }
            }
        }
        if parent[dst] == usize::MAX {
            break;
        }
        let mut b = dst;
        while b != src {
            let a = parent[b];
            cap[at(a, b)] -= 1;
            cap[at(b, a)] += 1;
            b = a;
        }
        value += 1;
    }
    value
}
