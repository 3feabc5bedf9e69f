//! Dense simple undirected graphs with one machine word per adjacency row.

use std::fmt;

use thiserror::Error;

/// Largest vertex count a [`Graph`] can hold (one `u64` row per vertex).
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    NoVertices,
    #[error("{n} vertices exceeds the supported bound of {MAX_VERTICES}")]
    TooLarge { n: usize },
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex set is empty")]
    EmptyVertexSet,
    #[error("vertex {0} appears more than once in the vertex set")]
    RepeatedVertex(usize),
}

/// Iterator over the set bits of a `u64`, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Bits {}

/// Mask with the low `n` bits set.
#[inline]
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Converts a vertex mask into a sorted vertex list.
pub fn mask_to_vec(mask: u64) -> Vec<usize> {
    Bits(mask).collect()
}

/// A finite simple undirected graph on vertices `0..n`.
///
/// Values are immutable once built, so they can be shared freely between
/// worker threads.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
    edge_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    pub min_degree: usize,
    pub max_degree: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Repeated pairs collapse to one edge.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n)?;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.rows[u] |= 1 << v;
            g.rows[v] |= 1 << u;
        }
        g.recount();
        Ok(g)
    }

    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge { n });
        }
        Ok(Self {
            n,
            rows: vec![0; n],
            edge_count: 0,
        })
    }

    /// Builds a graph from raw adjacency rows. Rows must be symmetric,
    /// loop-free and confined to the low `rows.len()` bits.
    pub(crate) fn from_rows(rows: Vec<u64>) -> Self {
        debug_assert!(!rows.is_empty() && rows.len() <= MAX_VERTICES);
        let mut g = Self {
            n: rows.len(),
            rows,
            edge_count: 0,
        };
        g.recount();
        debug_assert!(g.check_rows());
        g
    }

    fn recount(&mut self) {
        let twice: u32 = self.rows.iter().map(|r| r.count_ones()).sum();
        self.edge_count = twice as usize / 2;
    }

    fn check_rows(&self) -> bool {
        let all = full_mask(self.n);
        (0..self.n).all(|u| {
            self.rows[u] & !all == 0
                && self.rows[u] & (1 << u) == 0
                && Bits(self.rows[u]).all(|v| self.rows[v] & (1 << u) != 0)
        })
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        let all = full_mask(n);
        for (v, row) in g.rows.iter_mut().enumerate() {
            *row = all & !(1 << v);
        }
        g.recount();
        Ok(g)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Mask of all vertices.
    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        full_mask(self.n)
    }

    #[inline]
    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    /// Neighborhood of `v` as a bit mask.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let degrees: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        DegreeProfile {
            min_degree: *degrees.iter().min().expect("n >= 1"),
            max_degree: *degrees.iter().max().expect("n >= 1"),
            degrees,
        }
    }

    #[inline]
    pub fn min_degree(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).min().unwrap_or(0)
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n {
            for v in Bits(self.rows[u] >> u >> 1) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// `G[S]`, relabeled by increasing original index.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::EmptyVertexSet);
        }
        let mut mask = 0u64;
        for &v in vertices {
            self.check_vertex(v)?;
            if mask >> v & 1 == 1 {
                return Err(GraphError::RepeatedVertex(v));
            }
            mask |= 1 << v;
        }
        Ok(self.induced_by_mask(mask))
    }

    /// `G[S]` for a non-empty vertex mask.
    pub fn induced_by_mask(&self, mask: u64) -> Graph {
        debug_assert!(mask != 0 && mask & !self.vertex_mask() == 0);
        let keep: Vec<usize> = Bits(mask).collect();
        let rows = keep
            .iter()
            .map(|&u| {
                let mut row = 0u64;
                for (j, &v) in keep.iter().enumerate() {
                    if self.is_adjacent(u, v) {
                        row |= 1 << j;
                    }
                }
                row
            })
            .collect();
        Graph::from_rows(rows)
    }

    /// Relabels vertices so that old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut rows = vec![0u64; self.n];
        for u in 0..self.n {
            for v in Bits(self.rows[u]) {
                rows[perm[u]] |= 1 << perm[v];
            }
        }
        Graph::from_rows(rows)
    }

    /// Vertices reachable from any vertex in `start` without leaving `within`.
    pub(crate) fn reach(&self, start: u64, within: u64) -> u64 {
        let mut seen = start & within;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            for v in Bits(frontier) {
                next |= self.rows[v];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    pub(crate) fn component_masks(&self) -> Vec<u64> {
        let mut left = self.vertex_mask();
        let mut out = Vec::new();
        while left != 0 {
            let comp = self.reach(left & left.wrapping_neg(), left);
            out.push(comp);
            left &= !comp;
        }
        out
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.component_masks().into_iter().map(mask_to_vec).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.reach(1, self.vertex_mask()) == self.vertex_mask()
    }

    /// Whether `G[mask]` is connected (an empty mask counts as connected).
    #[cfg(test)]
    pub(crate) fn is_connected_within(&self, mask: u64) -> bool {
        mask == 0 || self.reach(mask & mask.wrapping_neg(), mask) == mask
    }

    /// Shortest-path distance, `None` when `u` and `v` lie in different components.
    pub fn distance(&self, u: usize, v: usize) -> Result<Option<usize>, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let mut seen = 1u64 << u;
        let mut frontier = seen;
        let mut d = 0;
        while frontier != 0 {
            if frontier >> v & 1 == 1 {
                return Ok(Some(d));
            }
            let mut next = 0u64;
            for w in Bits(frontier) {
                next |= self.rows[w];
            }
            next &= !seen;
            seen |= next;
            frontier = next;
            d += 1;
        }
        Ok(None)
    }

    /// `G1 □ G2`; vertex `(x, y)` maps to index `x * n2 + y`.
    pub fn cartesian_product(&self, other: &Graph) -> Result<Graph, GraphError> {
        let (n1, n2) = (self.n, other.n);
        let n = n1 * n2;
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge { n });
        }
        let mut edges = Vec::new();
        for x in 0..n1 {
            for y in 0..n2 {
                let a = x * n2 + y;
                for y2 in Bits(other.rows[y]) {
                    edges.push((a, x * n2 + y2));
                }
                for x2 in Bits(self.rows[x]) {
                    edges.push((a, x2 * n2 + y));
                }
            }
        }
        Graph::new(n, edges)
    }

    /// Disjoint union, with `other`'s vertices shifted past this graph's.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge { n });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().map(|r| r << self.n));
        Ok(Graph::from_rows(rows))
    }

    /// Number of edges with exactly one endpoint in `side`.
    #[inline]
    pub fn boundary_size(&self, side: u64) -> usize {
        let outside = self.vertex_mask() & !side;
        Bits(side)
            .map(|v| (self.rows[v] & outside).count_ones() as usize)
            .sum()
    }

    /// Edges with exactly one endpoint in `side`, as `(u, v)` with `u < v`.
    pub fn boundary_edges(&self, side: u64) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        let outside = self.vertex_mask() & !side;
        for u in Bits(side) {
            for v in Bits(self.rows[u] & outside) {
                out.push((u.min(v), u.max(v)));
            }
        }
        out.sort_unstable();
        out
    }

    /// A copy of the graph with the given edges deleted.
    pub fn without_edges(&self, edges: &[(usize, usize)]) -> Graph {
        let mut rows = self.rows.clone();
        for &(u, v) in edges {
            rows[u] &= !(1 << v);
            rows[v] &= !(1 << u);
        }
        Graph::from_rows(rows)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> Graph {
        Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn build_examples() {
        assert_eq!(c4().edge_count(), 4);
        let k1 = Graph::new(1, []).unwrap();
        assert_eq!(k1.edge_count(), 0);
        let dup = Graph::new(4, [(0, 1), (0, 1), (1, 2)]).unwrap();
        assert_eq!(dup.edge_count(), 2);
        let flipped = Graph::new(4, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(flipped.edge_count(), 1);
    }

    #[test]
    fn build_errors() {
        assert_eq!(Graph::new(0, []), Err(GraphError::NoVertices));
        assert_eq!(
            Graph::new(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(Graph::new(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(Graph::empty(65), Err(GraphError::TooLarge { n: 65 }));
        assert!(Graph::complete(64).is_ok());
    }

    #[test]
    fn degree_profiles() {
        let p = c4().degree_profile();
        assert_eq!(p.degrees, vec![2, 2, 2, 2]);
        assert_eq!((p.min_degree, p.max_degree), (2, 2));

        let claw = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let p = claw.degree_profile();
        assert_eq!((p.min_degree, p.max_degree), (1, 3));

        // paw: triangle 0-1-2 with pendant 3 at 0
        let paw = Graph::new(4, [(0, 1), (1, 2), (2, 0), (0, 3)]).unwrap();
        let mut d = paw.degree_profile().degrees;
        d.sort_unstable();
        assert_eq!(d, vec![1, 2, 2, 3]);
    }

    #[test]
    fn induced_subgraphs() {
        assert_eq!(c4().induced_subgraph(&[0, 1, 2, 3]).unwrap(), c4());
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(
            k4.induced_subgraph(&[3, 0, 2]).unwrap(),
            Graph::complete(3).unwrap()
        );
        // 2x3 grid: a_i = (0, i) -> i, b_i = (1, i) -> 3 + i
        let grid = path(2).cartesian_product(&path(3)).unwrap();
        let claw = grid.induced_subgraph(&[1, 0, 2, 4]).unwrap();
        let mut d = claw.degree_profile().degrees;
        d.sort_unstable();
        assert_eq!(d, vec![1, 1, 1, 3]);
        assert_eq!(claw.edge_count(), 3);

        assert_eq!(c4().induced_subgraph(&[]), Err(GraphError::EmptyVertexSet));
        assert_eq!(
            c4().induced_subgraph(&[0, 4]),
            Err(GraphError::VertexOutOfRange { vertex: 4, n: 4 })
        );
        assert_eq!(
            c4().induced_subgraph(&[1, 1]),
            Err(GraphError::RepeatedVertex(1))
        );
    }

    #[test]
    fn components_and_connectivity() {
        let k1 = Graph::new(1, []).unwrap();
        assert!(k1.is_connected());
        assert_eq!(k1.components().len(), 1);

        let two_edges = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(!two_edges.is_connected());
        assert_eq!(two_edges.components(), vec![vec![0, 1], vec![2, 3]]);

        let split = c4().without_edges(&[(0, 1), (2, 3)]);
        assert_eq!(split.components(), vec![vec![0, 3], vec![1, 2]]);
    }

    #[test]
    fn distances() {
        let p4 = path(4);
        assert_eq!(p4.distance(0, 3).unwrap(), Some(3));
        assert_eq!(p4.distance(2, 2).unwrap(), Some(0));
        let two = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.distance(0, 3).unwrap(), None);
        assert!(p4.distance(0, 9).is_err());
    }

    #[test]
    fn products() {
        let k2 = Graph::complete(2).unwrap();
        let sq = k2.cartesian_product(&k2).unwrap();
        assert_eq!(sq.edge_count(), 4);
        assert!(sq.degree_profile().degrees.iter().all(|&d| d == 2));
        assert!(sq.is_connected());

        let grid = path(2).cartesian_product(&path(3)).unwrap();
        assert_eq!((grid.order(), grid.edge_count()), (6, 7));

        let prism = Graph::complete(3).unwrap().cartesian_product(&k2).unwrap();
        assert_eq!(prism.order(), 6);
        assert!(prism.degree_profile().degrees.iter().all(|&d| d == 3));

        let big = Graph::complete(9).unwrap();
        assert_eq!(
            big.cartesian_product(&big),
            Err(GraphError::TooLarge { n: 81 })
        );
    }

    #[test]
    fn product_degrees_add() {
        let factors = [path(3), c4(), Graph::complete(3).unwrap(), path(1)];
        for a in &factors {
            for b in &factors {
                let p = a.cartesian_product(b).unwrap();
                for x in 0..a.order() {
                    for y in 0..b.order() {
                        assert_eq!(p.degree(x * b.order() + y), a.degree(x) + b.degree(y));
                    }
                }
            }
        }
    }

    #[test]
    fn boundary() {
        let g = c4();
        assert_eq!(g.boundary_size(0b0011), 2);
        assert_eq!(g.boundary_edges(0b0011), vec![(0, 3), (1, 2)]);
        assert_eq!(g.boundary_size(0b0001), 2);
    }
}
