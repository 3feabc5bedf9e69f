//! Exhaustive generation of small graphs.
//!
//! Labeled graphs on `n` vertices are indexed by a mask over the
//! `n(n-1)/2` vertex pairs in graph6 column order; bit `k` is the pair
//! `(i, j)` with `k = j(j-1)/2 + i`. Enumeration walks masks in ascending
//! order. Isomorphism classes are built one vertex at a time: every graph on
//! `n` vertices is a class representative on `n - 1` vertices plus a vertex
//! with some neighborhood, so canonicalizing those extensions finds every
//! class. Deduplicating the full labeled walk is kept as a slower
//! cross-check.

use std::collections::BTreeSet;
use std::ops::Range;

use thiserror::Error;

use crate::canon::{canonical_code, CanonicalCode};
use crate::graph::Graph;
use crate::par::{self, Jobs};

/// Default bound for labeled enumeration.
pub const LABELED_MAX: usize = 7;
/// Bound for the opt-in extended labeled scan (2^28 masks at n = 8).
pub const LABELED_EXTENDED_MAX: usize = 8;
/// Bound for built-in isomorphism-class enumeration.
pub const CLASSES_MAX: usize = 7;

const CHUNK: u64 = 1 << 14;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("enumeration needs at least one vertex")]
    NoVertices,
    #[error(
        "{mode} enumeration supports n <= {max}, got n = {n}; \
         feed an externally generated graph6 file instead"
    )]
    TooLarge {
        mode: &'static str,
        n: usize,
        max: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumMode {
    /// Every labeled graph, in ascending mask order.
    Labeled,
    /// One representative per isomorphism class, ordered by canonical code.
    Classes,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumSpec {
    pub n: usize,
    pub mode: EnumMode,
    pub min_degree: Option<usize>,
    pub connected: bool,
    /// Permits the n = 8 labeled scan.
    pub extended: bool,
}

impl EnumSpec {
    pub fn labeled(n: usize) -> Self {
        EnumSpec {
            n,
            mode: EnumMode::Labeled,
            min_degree: None,
            connected: false,
            extended: false,
        }
    }

    pub fn classes(n: usize) -> Self {
        EnumSpec {
            mode: EnumMode::Classes,
            ..Self::labeled(n)
        }
    }

    pub fn connected(mut self) -> Self {
        self.connected = true;
        self
    }

    pub fn min_degree(mut self, d: usize) -> Self {
        self.min_degree = Some(d);
        self
    }

    pub fn extended(mut self) -> Self {
        self.extended = true;
        self
    }

    fn check(&self) -> Result<(), EnumError> {
        if self.n == 0 {
            return Err(EnumError::NoVertices);
        }
        let (mode, max) = match self.mode {
            EnumMode::Labeled if self.extended => ("labeled", LABELED_EXTENDED_MAX),
            EnumMode::Labeled => ("labeled", LABELED_MAX),
            EnumMode::Classes => ("isomorphism-class", CLASSES_MAX),
        };
        if self.n > max {
            return Err(EnumError::TooLarge { mode, n: self.n, max });
        }
        Ok(())
    }

    pub fn accepts(&self, g: &Graph) -> bool {
        self.min_degree.is_none_or(|d| g.min_degree() >= d) && (!self.connected || g.is_connected())
    }
}

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Number of labeled masks on `n` vertices.
pub fn labeled_count(n: usize) -> u64 {
    1u64 << pair_count(n)
}

/// The labeled graph encoded by `mask`.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut rows = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if mask >> k & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            k += 1;
        }
    }
    Graph::from_rows(rows)
}

/// Filtered labeled graphs for a sub-range of masks, in ascending order.
pub fn labeled_range(spec: &EnumSpec, masks: Range<u64>) -> impl Iterator<Item = Graph> + '_ {
    masks
        .map(move |m| graph_from_mask(spec.n, m))
        .filter(move |g| spec.accepts(g))
}

/// Lazily yields every labeled graph satisfying the spec's filters.
pub fn enumerate_labeled(spec: &EnumSpec) -> Result<impl Iterator<Item = Graph> + '_, EnumError> {
    let spec_ok = EnumSpec {
        mode: EnumMode::Labeled,
        ..spec.clone()
    };
    spec_ok.check()?;
    Ok(labeled_range(spec, 0..labeled_count(spec.n)))
}

/// Maps `f` over contiguous mask chunks of the labeled space in parallel,
/// returning chunk results in ascending mask order.
pub fn map_labeled_chunks<R, F>(jobs: Jobs, spec: &EnumSpec, f: F) -> Result<Vec<R>, EnumError>
where
    R: Send,
    F: Fn(&mut dyn Iterator<Item = Graph>) -> R + Sync + Send,
{
    EnumSpec {
        mode: EnumMode::Labeled,
        ..spec.clone()
    }
    .check()?;
    Ok(par::map_chunks(jobs, 0..labeled_count(spec.n), CHUNK, |r| {
        f(&mut labeled_range(spec, r))
    }))
}

fn check_classes(spec: &EnumSpec) -> Result<(), EnumError> {
    EnumSpec {
        mode: EnumMode::Classes,
        ..spec.clone()
    }
    .check()
}

/// Codes of every class on `n` vertices, unfiltered.
fn all_codes(n: usize, jobs: Jobs) -> BTreeSet<CanonicalCode> {
    let one = || canonical_code(&Graph::empty(1).expect("n = 1")).expect("n = 1");
    if n == 1 {
        return BTreeSet::from([one()]);
    }
    let smaller: Vec<Graph> = all_codes(n - 1, jobs).iter().map(|c| c.to_graph()).collect();
    let parts = par::map(jobs, &smaller, |base| {
        let edges = base.edges();
        (0..1u64 << (n - 1))
            .map(|nbrs| {
                let extra = (0..n - 1).filter(|&v| nbrs >> v & 1 == 1).map(|v| (v, n - 1));
                let g = Graph::new(n, edges.iter().copied().chain(extra)).expect("n <= 7");
                canonical_code(&g).expect("n within canonical bound")
            })
            .collect::<BTreeSet<_>>()
    });
    parts.into_iter().flatten().collect()
}

/// Canonical codes of all classes passing the filters.
pub fn class_codes(spec: &EnumSpec, jobs: Jobs) -> Result<BTreeSet<CanonicalCode>, EnumError> {
    check_classes(spec)?;
    Ok(all_codes(spec.n, jobs)
        .into_iter()
        .filter(|c| spec.accepts(&c.to_graph()))
        .collect())
}

/// Same result as [`class_codes`], by canonicalizing every labeled graph.
/// Exponentially slower; used to cross-check the extension walk.
pub fn class_codes_exhaustive(
    spec: &EnumSpec,
    jobs: Jobs,
) -> Result<BTreeSet<CanonicalCode>, EnumError> {
    check_classes(spec)?;
    let labeled = EnumSpec {
        mode: EnumMode::Labeled,
        ..spec.clone()
    };
    let parts = map_labeled_chunks(jobs, &labeled, |graphs| {
        graphs
            .map(|g| canonical_code(&g).expect("n within canonical bound"))
            .collect::<BTreeSet<_>>()
    })?;
    Ok(parts.into_iter().flatten().collect())
}

/// One representative per isomorphism class, ordered by canonical code.
pub fn enumerate_classes(spec: &EnumSpec, jobs: Jobs) -> Result<Vec<Graph>, EnumError> {
    Ok(class_codes(spec, jobs)?
        .into_iter()
        .map(|c| c.to_graph())
        .collect())
}

/// Connected class representatives for every order in `orders`.
pub fn connected_classes(
    orders: impl IntoIterator<Item = usize>,
    jobs: Jobs,
) -> Result<Vec<Graph>, EnumError> {
    let mut out = Vec::new();
    for n in orders {
        out.extend(enumerate_classes(&EnumSpec::classes(n).connected(), jobs)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mask_layout_matches_graph6() {
        // bit order x(0,1), x(0,2), x(1,2), x(0,3), ...
        let g = graph_from_mask(4, 0b001000);
        assert_eq!(g.edges(), vec![(0, 3)]);
        let g = graph_from_mask(4, 0b000100);
        assert_eq!(g.edges(), vec![(1, 2)]);
    }

    #[test]
    fn small_counts() {
        let count = |spec: EnumSpec| enumerate_labeled(&spec).unwrap().count();
        assert_eq!(count(EnumSpec::labeled(1)), 1);
        assert_eq!(count(EnumSpec::labeled(3).connected()), 4);
        assert_eq!(count(EnumSpec::labeled(4).connected()), 38);
        assert_eq!(count(EnumSpec::labeled(4)), 64);
        assert_eq!(count(EnumSpec::labeled(4).min_degree(3)), 1);
    }

    #[test]
    fn bounds() {
        assert_eq!(
            enumerate_labeled(&EnumSpec::labeled(8)).err(),
            Some(EnumError::TooLarge {
                mode: "labeled",
                n: 8,
                max: 7
            })
        );
        assert!(enumerate_labeled(&EnumSpec::labeled(8).extended()).is_ok());
        assert!(enumerate_classes(&EnumSpec::classes(8), Jobs::sequential()).is_err());
        assert_eq!(
            enumerate_labeled(&EnumSpec::labeled(0)).err(),
            Some(EnumError::NoVertices)
        );
    }

    #[test]
    fn extension_walk_matches_exhaustive_dedupe() {
        for n in 1..=5 {
            for spec in [EnumSpec::classes(n), EnumSpec::classes(n).connected()] {
                assert_eq!(
                    class_codes(&spec, Jobs::sequential()).unwrap(),
                    class_codes_exhaustive(&spec, Jobs::sequential()).unwrap()
                );
            }
        }
    }

    #[test]
    fn class_counts_small() {
        let counts: Vec<usize> = (1..=5)
            .map(|n| {
                enumerate_classes(&EnumSpec::classes(n).connected(), Jobs::sequential())
                    .unwrap()
                    .len()
            })
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21]);
    }
}
