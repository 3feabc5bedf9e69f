//! Canonical codes for small graphs.
//!
//! Vertices are first split into cells by iterated degree refinement; the
//! code is then the lexicographically smallest upper-triangle bit string
//! (graph6 column order) over all labelings that list the cells in order.
//! The search picks, at each position, only the candidates producing the
//! smallest next column, and collapses twin candidates (vertices with equal
//! neighborhoods apart from each other), since swapping twins is an
//! automorphism.

use thiserror::Error;

use crate::graph::{Bits, Graph};

/// Largest order accepted by [`canonical_code`].
pub const MAX_CANON_ORDER: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("canonical codes are limited to {MAX_CANON_ORDER} vertices, got {0}")]
pub struct CanonError(pub usize);

/// Isomorphism-invariant key: equal codes iff isomorphic graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode {
    n: u8,
    /// Upper-triangle bits, first pair in the most significant position.
    bits: u64,
}

impl CanonicalCode {
    pub fn order(&self) -> usize {
        self.n as usize
    }

    /// Key bytes: the order followed by the big-endian bit string.
    pub fn to_bytes(&self) -> [u8; 9] {
        let mut out = [0u8; 9];
        out[0] = self.n;
        out[1..].copy_from_slice(&self.bits.to_be_bytes());
        out
    }

    /// The canonically labeled representative.
    pub fn to_graph(&self) -> Graph {
        let n = self.order();
        let total = n * n.saturating_sub(1) / 2;
        let mut rows = vec![0u64; n];
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if self.bits >> (total - 1 - k) & 1 == 1 {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
                k += 1;
            }
        }
        Graph::from_rows(rows)
    }
}

/// Stable vertex colors from iterated degree refinement. Colors are ranks of
/// isomorphism-invariant signatures.
fn refine(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut color: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut classes = count_distinct(&color);
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut around: Vec<usize> = Bits(g.neighbors(v)).map(|u| color[u]).collect();
                around.sort_unstable();
                (color[v], around)
            })
            .collect();
        let mut sorted = sigs.clone();
        sorted.sort();
        sorted.dedup();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| sorted.binary_search(s).expect("present"))
            .collect();
        let next_classes = sorted.len();
        color = next;
        if next_classes == classes {
            return color;
        }
        classes = next_classes;
    }
}

fn count_distinct(v: &[usize]) -> usize {
    let mut s = v.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len()
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    /// Vertex mask of the cell each position must draw from.
    slot_cell: Vec<u64>,
    order: Vec<usize>,
    best: Option<(u64, Vec<usize>)>,
}

impl Search<'_> {
    fn column(&self, v: usize, placed: usize) -> u64 {
        let mut col = 0u64;
        for &u in &self.order[..placed] {
            col = col << 1 | self.g.is_adjacent(u, v) as u64;
        }
        col
    }

    fn run(&mut self, pos: usize, used: u64, code: u64, bits: usize) {
        if pos == self.n {
            let better = match &self.best {
                None => true,
                Some((b, _)) => code < *b,
            };
            if better {
                self.best = Some((code, self.order.clone()));
            }
            return;
        }
        let total = self.n * (self.n - 1) / 2;
        let free = self.slot_cell[pos] & !used;
        let mut min_col = u64::MAX;
        for v in Bits(free) {
            min_col = min_col.min(self.column(v, pos));
        }
        let next_code = code << pos | min_col;
        let next_bits = bits + pos;
        if let Some((best, _)) = &self.best {
            let best_prefix = best >> (total - next_bits);
            if next_code > best_prefix {
                return;
            }
        }
        let mut tried = 0u64;
        for v in Bits(free) {
            if self.column(v, pos) != min_col {
                continue;
            }
            let twin_of_tried = Bits(tried).any(|w| {
                let both = (1u64 << v) | (1u64 << w);
                self.g.neighbors(v) & !both == self.g.neighbors(w) & !both
            });
            if twin_of_tried {
                continue;
            }
            tried |= 1 << v;
            self.order[pos] = v;
            self.run(pos + 1, used | 1 << v, next_code, next_bits);
        }
    }
}

/// Canonical code plus the labeling that realizes it: `order[i]` is the
/// original vertex placed at canonical position `i`.
pub fn canonical_form(g: &Graph) -> Result<(CanonicalCode, Vec<usize>), CanonError> {
    let n = g.order();
    if n > MAX_CANON_ORDER {
        return Err(CanonError(n));
    }
    let color = refine(g);
    let mut cells: Vec<usize> = color.clone();
    cells.sort_unstable();
    let slot_cell = cells
        .iter()
        .map(|&c| {
            (0..n)
                .filter(|&v| color[v] == c)
                .fold(0u64, |m, v| m | 1 << v)
        })
        .collect();
    let mut search = Search {
        g,
        n,
        slot_cell,
        order: vec![0; n],
        best: None,
    };
    search.run(0, 0, 0, 0);
    let (bits, order) = search.best.expect("at least one labeling");
    Ok((CanonicalCode { n: n as u8, bits }, order))
}

pub fn canonical_code(g: &Graph) -> Result<CanonicalCode, CanonError> {
    canonical_form(g).map(|(code, _)| code)
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool, CanonError> {
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(canonical_code(a)? == canonical_code(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn invariant_under_relabeling() {
        let c4 = cycle(4);
        let code = canonical_code(&c4).unwrap();
        for perm in [[1, 0, 2, 3], [3, 2, 1, 0], [2, 0, 3, 1]] {
            assert_eq!(canonical_code(&c4.permuted(&perm)).unwrap(), code);
        }
    }

    #[test]
    fn separates_trees() {
        let p4 = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let claw = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_ne!(canonical_code(&p4).unwrap(), canonical_code(&claw).unwrap());
    }

    #[test]
    fn representative_round_trips() {
        let g = Graph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4), (2, 5)]).unwrap();
        let (code, order) = canonical_form(&g).unwrap();
        let rep = code.to_graph();
        assert_eq!(canonical_code(&rep).unwrap(), code);
        let mut perm = vec![0; 6];
        for (pos, &v) in order.iter().enumerate() {
            perm[v] = pos;
        }
        assert_eq!(g.permuted(&perm), rep);
    }

    #[test]
    fn symmetric_graphs_finish() {
        assert!(canonical_code(&Graph::complete(10).unwrap()).is_ok());
        assert!(canonical_code(&cycle(10)).is_ok());
        assert_eq!(canonical_code(&Graph::complete(11).unwrap()), Err(CanonError(11)));
    }
}
