//! Named graph families, the exception graphs excluded by the forbidden-pair
//! characterization, and a registry of families that are verified never to
//! be super-edge-connected.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::canon::canonical_code;
use crate::connectivity::{edge_connectivity, is_super_edge_connected, CutWitness};
use crate::graph::{Graph, GraphError};
use crate::io::{decode_graph6, encode_graph6};
use crate::par::{self, Jobs};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("{family} needs size in {min}..={max}, got {size}")]
    BadSize {
        family: &'static str,
        size: usize,
        min: usize,
        max: usize,
    },
    #[error("cannot parse family token {0:?} (expected family:size)")]
    Parse(String),
    #[error("unknown family {0:?}")]
    Unknown(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{0} is super-edge-connected and cannot serve as a non-super family instance")]
    Violation(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Path,
    Cycle,
    Complete,
    /// `K_{1,m}`; size counts leaves.
    Star,
    /// `K_{m,m}`, or `K_{a,b}` when both parts are given.
    CompleteBipartite(Option<(usize, usize)>),
    /// `K_m □ K_2`.
    Prism,
    /// `P_2 □ P_3`; size is ignored.
    Grid2x3,
    /// Two copies of `K_m` sharing exactly one vertex.
    TwoCliquesSharedVertex,
    /// Two disjoint copies of `K_m` joined by one edge.
    TwoCliquesBridge,
    Custom(Graph),
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::Star => "star",
            Family::CompleteBipartite(_) => "complete_bipartite",
            Family::Prism => "prism",
            Family::Grid2x3 => "grid_2x3",
            Family::TwoCliquesSharedVertex => "two_cliques_shared_vertex",
            Family::TwoCliquesBridge => "two_cliques_bridge",
            Family::Custom(_) => "custom",
        }
    }

    /// Valid sizes (inclusive) for the family's parameter.
    pub fn size_range(&self) -> (usize, usize) {
        match self {
            Family::Path => (1, 64),
            Family::Cycle => (3, 64),
            Family::Complete => (1, 64),
            Family::Star => (1, 63),
            Family::CompleteBipartite(_) => (1, 32),
            Family::Prism => (1, 32),
            Family::Grid2x3 => (0, usize::MAX),
            Family::TwoCliquesSharedVertex => (2, 32),
            Family::TwoCliquesBridge => (1, 32),
            Family::Custom(_) => (0, usize::MAX),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub size: usize,
}

impl FamilySpec {
    pub fn new(family: Family, size: usize) -> Self {
        FamilySpec { family, size }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Family::Grid2x3 => f.write_str("grid_2x3"),
            Family::Custom(g) => write!(f, "custom:{}", encode_graph6(g)),
            Family::CompleteBipartite(Some((a, b))) => write!(f, "complete_bipartite:{a},{b}"),
            other => write!(f, "{}:{}", other.name(), self.size),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    /// Parses `family:size` tokens such as `cycle:7`, `prism:3`,
    /// `complete_bipartite:2,3`, `grid_2x3` or `custom:<graph6>`.
    fn from_str(token: &str) -> Result<Self, FamilyError> {
        let (name, arg) = token.split_once(':').unwrap_or((token, ""));
        let size = || arg.parse::<usize>().map_err(|_| FamilyError::Parse(token.to_string()));
        let family = match name {
            "path" => Family::Path,
            "cycle" => Family::Cycle,
            "complete" => Family::Complete,
            "star" => Family::Star,
            "complete_bipartite" => {
                if let Some((a, b)) = arg.split_once(',') {
                    let a = a.parse().map_err(|_| FamilyError::Parse(token.to_string()))?;
                    let b = b.parse().map_err(|_| FamilyError::Parse(token.to_string()))?;
                    return Ok(FamilySpec::new(Family::CompleteBipartite(Some((a, b))), a + b));
                }
                Family::CompleteBipartite(None)
            }
            "prism" | "prism_family" => Family::Prism,
            "grid_2x3" => return Ok(FamilySpec::new(Family::Grid2x3, 6)),
            "two_cliques_shared_vertex" => Family::TwoCliquesSharedVertex,
            "two_cliques_bridge" => Family::TwoCliquesBridge,
            "custom" => {
                let g = decode_graph6(arg).map_err(|_| FamilyError::Parse(token.to_string()))?;
                let n = g.order();
                return Ok(FamilySpec::new(Family::Custom(g), n));
            }
            other => return Err(FamilyError::Unknown(other.to_string())),
        };
        Ok(FamilySpec::new(family, size()?))
    }
}

fn clique_edges(vertices: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, &u) in vertices.iter().enumerate() {
        for &v in &vertices[i + 1..] {
            out.push((u, v));
        }
    }
    out
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    Graph::new(n, (1..n).map(|i| (i - 1, i)))
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn grid_2x3() -> Graph {
    path(2)
        .and_then(|a| a.cartesian_product(&path(3)?))
        .expect("6 vertices")
}

/// Builds the graph named by `spec`.
pub fn make(spec: &FamilySpec) -> Result<Graph, FamilyError> {
    let m = spec.size;
    let (min, max) = spec.family.size_range();
    if !(min..=max).contains(&m) {
        return Err(FamilyError::BadSize {
            family: spec.family.name(),
            size: m,
            min,
            max,
        });
    }
    let g = match &spec.family {
        Family::Path => path(m)?,
        Family::Cycle => cycle(m)?,
        Family::Complete => Graph::complete(m)?,
        Family::Star => Graph::new(m + 1, (1..=m).map(|i| (0, i)))?,
        Family::CompleteBipartite(parts) => {
            let (a, b) = parts.unwrap_or((m, m));
            let mut edges = Vec::new();
            for u in 0..a {
                for v in 0..b {
                    edges.push((u, a + v));
                }
            }
            Graph::new(a + b, edges)?
        }
        Family::Prism => Graph::complete(m)?.cartesian_product(&Graph::complete(2)?)?,
        Family::Grid2x3 => grid_2x3(),
        Family::TwoCliquesSharedVertex => {
            // vertex 0 is shared
            let left: Vec<usize> = (0..m).collect();
            let right: Vec<usize> = std::iter::once(0).chain(m..2 * m - 1).collect();
            let mut edges = clique_edges(&left);
            edges.extend(clique_edges(&right));
            Graph::new(2 * m - 1, edges)?
        }
        Family::TwoCliquesBridge => {
            let left: Vec<usize> = (0..m).collect();
            let right: Vec<usize> = (m..2 * m).collect();
            let mut edges = clique_edges(&left);
            edges.extend(clique_edges(&right));
            edges.push((m - 1, m));
            Graph::new(2 * m, edges)?
        }
        Family::Custom(g) => g.clone(),
    };
    Ok(g)
}

/// Which exception list applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ExceptionMode {
    /// `{C4}`.
    #[serde(rename = "i")]
    CycleFour,
    /// `{P2□P3} ∪ {P_n, C_n : n >= 4}`.
    #[serde(rename = "ii")]
    PathsCyclesGrid,
    /// Union of both lists.
    #[serde(rename = "any")]
    Any,
}

fn is_two_regular(g: &Graph) -> bool {
    (0..g.order()).all(|v| g.degree(v) == 2)
}

/// Connected, acyclic, two leaves, all other degrees two.
fn is_path_graph(g: &Graph) -> bool {
    let n = g.order();
    let leaves = (0..n).filter(|&v| g.degree(v) == 1).count();
    n >= 2
        && g.edge_count() == n - 1
        && leaves == 2
        && (0..n).all(|v| matches!(g.degree(v), 1 | 2))
}

/// Membership in the exception list for `mode`. `G` must be connected.
pub fn is_exception(g: &Graph, mode: ExceptionMode) -> Result<bool, FamilyError> {
    if !g.is_connected() {
        return Err(FamilyError::Disconnected);
    }
    let n = g.order();
    let c4 = n == 4 && is_two_regular(g);
    let listed = || {
        (n >= 4 && is_path_graph(g))
            || (n >= 4 && is_two_regular(g))
            || (n == 6
                && g.edge_count() == 7
                && canonical_code(g).ok() == canonical_code(&grid_2x3()).ok())
    };
    Ok(match mode {
        ExceptionMode::CycleFour => c4,
        ExceptionMode::PathsCyclesGrid => listed(),
        ExceptionMode::Any => c4 || listed(),
    })
}

/// A family registered as never super-edge-connected, over a size range.
#[derive(Debug, Clone)]
pub struct RegisteredFamily {
    pub family: Family,
    pub sizes: RangeInclusive<usize>,
    /// The structural role the family plays.
    pub note: &'static str,
}

/// The built-in non-super registry.
pub fn registry() -> Vec<RegisteredFamily> {
    vec![
        RegisteredFamily {
            family: Family::Path,
            sizes: 4..=12,
            note: "a middle bridge is a non-trivial minimum cut; induced paths of every length",
        },
        RegisteredFamily {
            family: Family::Cycle,
            sizes: 4..=12,
            note: "two non-adjacent edges form a non-trivial minimum cut; induced paths of every length",
        },
        RegisteredFamily {
            family: Family::Prism,
            sizes: 2..=6,
            note: "the perfect matching between the cliques is a non-trivial minimum cut",
        },
        RegisteredFamily {
            family: Family::Grid2x3,
            sizes: 6..=6,
            note: "the two middle rungs form a non-trivial minimum cut",
        },
        RegisteredFamily {
            family: Family::TwoCliquesSharedVertex,
            sizes: 3..=6,
            note: "longest induced path P3; contains K_m; the edges from one clique to the shared vertex form a minimum cut",
        },
        RegisteredFamily {
            family: Family::TwoCliquesBridge,
            sizes: 2..=6,
            note: "the bridge is a non-trivial minimum cut",
        },
    ]
}

/// One verified registry instance.
#[derive(Debug, Clone, Serialize)]
pub struct RegistryEntry {
    pub instance: String,
    pub graph6: String,
    pub lambda: usize,
    pub min_degree: usize,
    pub witness: CutWitness,
}

/// Builds every size of `family` and confirms each instance is connected
/// and not super-edge-connected, with a non-trivial minimum cut.
pub fn registry_verify(
    family: &Family,
    sizes: RangeInclusive<usize>,
    jobs: Jobs,
) -> Result<Vec<RegistryEntry>, FamilyError> {
    let specs: Vec<FamilySpec> = sizes.map(|s| FamilySpec::new(family.clone(), s)).collect();
    let results = par::map(jobs, &specs, |spec| -> Result<RegistryEntry, FamilyError> {
        let g = make(spec)?;
        let label = spec.to_string();
        let (is_super, witness) =
            is_super_edge_connected(&g).map_err(|_| FamilyError::Disconnected)?;
        let witness = match witness {
            Some(w) if !is_super && !w.trivial => w,
            _ => return Err(FamilyError::Violation(label)),
        };
        let (lambda, _) = edge_connectivity(&g).map_err(|_| FamilyError::Disconnected)?;
        if witness.size != lambda || !witness.separates(&g) {
            return Err(FamilyError::Violation(label));
        }
        Ok(RegistryEntry {
            instance: label,
            graph6: encode_graph6(&g),
            lambda,
            min_degree: g.min_degree(),
            witness,
        })
    });
    results.into_iter().collect()
}

/// Every registered family instance, in registry order.
pub fn registry_instances() -> Vec<(FamilySpec, Graph)> {
    let mut out = Vec::new();
    for entry in registry() {
        for size in entry.sizes.clone() {
            let spec = FamilySpec::new(entry.family.clone(), size);
            let g = make(&spec).expect("registry sizes are valid");
            out.push((spec, g));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors() {
        let c4 = make(&"cycle:4".parse().unwrap()).unwrap();
        assert_eq!(c4, cycle(4).unwrap());
        let prism = make(&"prism:3".parse().unwrap()).unwrap();
        assert_eq!((prism.order(), prism.edge_count()), (6, 9));
        let glued = make(&"two_cliques_shared_vertex:4".parse().unwrap()).unwrap();
        assert_eq!((glued.order(), glued.edge_count()), (7, 12));
        let cut_vertices = (0..7)
            .filter(|&v| {
                let rest = glued.vertex_mask() & !(1 << v);
                !glued.is_connected_within(rest)
            })
            .count();
        assert_eq!(cut_vertices, 1);
        let bridged = make(&"two_cliques_bridge:3".parse().unwrap()).unwrap();
        assert_eq!((bridged.order(), bridged.edge_count()), (6, 7));
        let kab = make(&"complete_bipartite:2,3".parse().unwrap()).unwrap();
        assert_eq!((kab.order(), kab.edge_count()), (5, 6));
        let star = make(&"star:4".parse().unwrap()).unwrap();
        assert_eq!(star.degree(0), 4);
    }

    #[test]
    fn token_errors() {
        assert!(matches!("blob:3".parse::<FamilySpec>(), Err(FamilyError::Unknown(_))));
        assert!(matches!("cycle:x".parse::<FamilySpec>(), Err(FamilyError::Parse(_))));
        assert!(matches!(
            make(&"cycle:2".parse().unwrap()),
            Err(FamilyError::BadSize { .. })
        ));
        let spec: FamilySpec = "custom:C~".parse().unwrap();
        assert_eq!(make(&spec).unwrap(), Graph::complete(4).unwrap());
        assert_eq!(spec.to_string(), "custom:C~");
        assert_eq!("grid_2x3".parse::<FamilySpec>().unwrap().to_string(), "grid_2x3");
    }

    #[test]
    fn exceptions() {
        let c4 = cycle(4).unwrap();
        assert!(is_exception(&c4, ExceptionMode::CycleFour).unwrap());
        assert!(is_exception(&path(7).unwrap(), ExceptionMode::PathsCyclesGrid).unwrap());
        assert!(!is_exception(&path(7).unwrap(), ExceptionMode::CycleFour).unwrap());
        assert!(!is_exception(&path(3).unwrap(), ExceptionMode::PathsCyclesGrid).unwrap());
        assert!(!is_exception(&cycle(3).unwrap(), ExceptionMode::PathsCyclesGrid).unwrap());
        let prism = make(&"prism:3".parse().unwrap()).unwrap();
        assert!(!is_exception(&prism, ExceptionMode::PathsCyclesGrid).unwrap());
        let shuffled = grid_2x3().permuted(&[3, 5, 0, 1, 4, 2]);
        assert!(is_exception(&shuffled, ExceptionMode::PathsCyclesGrid).unwrap());
        assert!(!is_exception(&shuffled, ExceptionMode::CycleFour).unwrap());
        let two = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            is_exception(&two, ExceptionMode::Any),
            Err(FamilyError::Disconnected)
        );
    }

    #[test]
    fn registry_holds() {
        for entry in registry() {
            let rows = registry_verify(&entry.family, entry.sizes.clone(), Jobs::sequential())
                .unwrap_or_else(|e| panic!("{}: {e}", entry.family.name()));
            assert_eq!(rows.len(), entry.sizes.clone().count());
            for row in rows {
                assert!(!row.witness.trivial);
                assert_eq!(row.witness.size, row.lambda);
            }
        }
    }

    #[test]
    fn registry_rejects_super_family() {
        assert!(matches!(
            registry_verify(&Family::Complete, 3..=4, Jobs::sequential()),
            Err(FamilyError::Violation(_))
        ));
    }
}
