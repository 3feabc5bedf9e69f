//! Forbidden induced subgraphs: the built-in pattern atlas, an induced
//! subgraph matcher, freeness tests and the precedence relation on pattern
//! sets.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::canon::is_isomorphic;
use crate::graph::{Bits, Graph};

/// Host bound for [`oracle_contains_induced`].
pub const ORACLE_MAX_HOST: usize = 12;
/// Custom patterns above this order trigger a performance warning.
pub const PATTERN_WARN_ORDER: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("pattern {0} is not connected")]
    Disconnected(String),
    #[error("unknown pattern {0:?}")]
    Unknown(String),
    #[error("a pattern set needs one or two members, got {0}")]
    BadArity(usize),
    #[error("patterns {0} and {1} are isomorphic")]
    IsomorphicMembers(String, String),
    #[error("subset oracle is limited to hosts of {ORACLE_MAX_HOST} vertices, got {0}")]
    HostTooLarge(usize),
    #[error("pattern name {0:?} is already registered")]
    Duplicate(String),
}

/// A named connected graph used as a forbidden induced subgraph.
#[derive(Clone)]
pub struct Pattern {
    name: String,
    graph: Graph,
    description: String,
    /// Matching order: descending degree, ties by index.
    order: Vec<usize>,
}

impl Pattern {
    pub fn new(
        name: impl Into<String>,
        graph: Graph,
        description: impl Into<String>,
    ) -> Result<Self, PatternError> {
        let name = name.into();
        if !graph.is_connected() {
            return Err(PatternError::Disconnected(name));
        }
        if graph.order() > PATTERN_WARN_ORDER {
            log::warn!(
                "pattern {name} has {} vertices; induced matching may be slow",
                graph.order()
            );
        }
        let mut order: Vec<usize> = (0..graph.order()).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(graph.degree(v)), v));
        Ok(Pattern {
            name,
            graph,
            description: description.into(),
            order,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern({}, {:?})", self.name, self.graph)
    }
}

fn build(name: &str, n: usize, edges: &[(usize, usize)], description: &str) -> Pattern {
    let g = Graph::new(n, edges.iter().copied()).expect("atlas graphs are valid");
    Pattern::new(name, g, description).expect("atlas graphs are connected")
}

pub fn path_pattern(n: usize) -> Pattern {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    build(&format!("P{n}"), n, &edges, "induced path")
}

pub fn star_pattern(leaves: usize) -> Pattern {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    build(&format!("K1{leaves}"), leaves + 1, &edges, "star with center 0")
}

pub fn paw() -> Pattern {
    build(
        "Z1",
        4,
        &[(0, 1), (1, 2), (2, 0), (0, 3)],
        "paw: triangle 0-1-2 with pendant edge 0-3",
    )
}

pub fn triangle_with_tail() -> Pattern {
    build(
        "Z2",
        5,
        &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4)],
        "triangle 0-1-2 with pendant path 0-3-4",
    )
}

pub fn hourglass() -> Pattern {
    build(
        "H0",
        5,
        &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)],
        "hourglass: triangles 0-1-2 and 0-3-4 sharing vertex 0",
    )
}

pub fn chair() -> Pattern {
    build(
        "T112",
        5,
        &[(0, 1), (0, 2), (0, 3), (3, 4)],
        "chair: center 0 with leaves 1, 2 and leg 0-3-4",
    )
}

pub fn long_chair() -> Pattern {
    build(
        "T113",
        6,
        &[(0, 1), (0, 2), (0, 3), (3, 4), (4, 5)],
        "center 0 with leaves 1, 2 and leg 0-3-4-5",
    )
}

/// The eleven built-in patterns.
pub fn pattern_atlas() -> Vec<Pattern> {
    vec![
        path_pattern(3),
        path_pattern(4),
        path_pattern(5),
        path_pattern(6),
        star_pattern(3),
        star_pattern(4),
        paw(),
        triangle_with_tail(),
        hourglass(),
        chair(),
        long_chair(),
    ]
}

fn generic_pattern(name: &str) -> Option<Pattern> {
    let num = |s: &str| s.parse::<usize>().ok().filter(|&k| (1..=64).contains(&k));
    if let Some(rest) = name.strip_prefix("K1,").or_else(|| name.strip_prefix("K_{1,")) {
        let k = num(rest.trim_end_matches('}'))?;
        return (k < 64).then(|| star_pattern(k));
    }
    if let Some(rest) = name.strip_prefix('P') {
        return num(rest).map(path_pattern);
    }
    if let Some(rest) = name.strip_prefix('C') {
        let n = num(rest).filter(|&n| n >= 3)?;
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        return Some(build(&format!("C{n}"), n, &edges, "induced cycle"));
    }
    if let Some(rest) = name.strip_prefix('K') {
        let n = num(rest)?;
        let g = Graph::complete(n).ok()?;
        return Pattern::new(format!("K{n}"), g, "complete graph").ok();
    }
    None
}

/// Atlas plus user-registered patterns, addressed by name.
#[derive(Debug, Clone, Default)]
pub struct Catalog {
    custom: Vec<Pattern>,
}

impl Catalog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, pattern: Pattern) -> Result<(), PatternError> {
        if self.custom.iter().any(|p| p.name == pattern.name) {
            return Err(PatternError::Duplicate(pattern.name));
        }
        self.custom.push(pattern);
        Ok(())
    }

    pub fn custom(&self) -> &[Pattern] {
        &self.custom
    }

    pub fn contains_custom(&self, name: &str) -> bool {
        self.custom.iter().any(|p| p.name == name)
    }

    /// Resolves a custom name, an atlas name or alias (`Z1`, `paw`,
    /// `K1,3`, ...), or a generic `Pn`, `Cn`, `Kn`, `K1,n` name.
    pub fn lookup(&self, name: &str) -> Result<Pattern, PatternError> {
        if let Some(p) = self.custom.iter().find(|p| p.name == name) {
            return Ok(p.clone());
        }
        let canonical = match name {
            "claw" | "K13" | "K_{1,3}" => "K13",
            "K14" | "K_{1,4}" => "K14",
            "paw" | "Z1" | "Z_1" => "Z1",
            "Z2" | "Z_2" => "Z2",
            "hourglass" | "H0" | "H_0" => "H0",
            "chair" | "T112" | "T1,1,2" | "T_{1,1,2}" => "T112",
            "T113" | "T1,1,3" | "T_{1,1,3}" => "T113",
            other => other,
        };
        if let Some(p) = pattern_atlas().into_iter().find(|p| p.name == canonical) {
            return Ok(p);
        }
        generic_pattern(name).ok_or_else(|| PatternError::Unknown(name.to_string()))
    }

    /// Parses a comma-separated member list such as `Z1,T112`.
    pub fn pair(&self, list: &str) -> Result<PairSpec, PatternError> {
        let members = split_names(list)
            .iter()
            .map(|n| self.lookup(n))
            .collect::<Result<Vec<_>, _>>()?;
        PairSpec::new(members)
    }
}

/// Splits a member list on commas that are not inside a `K1,n`-style name.
fn split_names(list: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for piece in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let glue = out.last().is_some_and(|prev| {
            (prev == "K1" || prev == "T1" || prev == "T1,1" || prev == "K_{1")
                && piece.chars().next().is_some_and(|c| c.is_ascii_digit())
        });
        if glue {
            let prev = out.pop().expect("checked");
            out.push(format!("{prev},{piece}"));
        } else {
            out.push(piece.to_string());
        }
    }
    out
}

/// Injective map from pattern vertices to host vertices, indexed by
/// pattern vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    /// Whether the map is injective and preserves both adjacency and
    /// non-adjacency.
    pub fn is_induced(&self, host: &Graph, pattern: &Graph) -> bool {
        let k = pattern.order();
        if self.map.len() != k || self.map.iter().any(|&h| h >= host.order()) {
            return false;
        }
        for a in 0..k {
            for b in a + 1..k {
                if self.map[a] == self.map[b]
                    || pattern.is_adjacent(a, b) != host.is_adjacent(self.map[a], self.map[b])
                {
                    return false;
                }
            }
        }
        true
    }
}

struct Matcher<'a> {
    host: &'a Graph,
    pattern: &'a Pattern,
    map: Vec<usize>,
}

impl Matcher<'_> {
    fn extend(&mut self, depth: usize, used: u64) -> bool {
        let order = &self.pattern.order;
        if depth == order.len() {
            return true;
        }
        let p = order[depth];
        let pg = &self.pattern.graph;
        let mut cand = self.host.vertex_mask() & !used;
        for &q in &order[..depth] {
            let row = self.host.neighbors(self.map[q]);
            if pg.is_adjacent(p, q) {
                cand &= row;
            } else {
                cand &= !row;
            }
        }
        let need = pg.degree(p);
        for h in Bits(cand) {
            if self.host.degree(h) < need {
                continue;
            }
            self.map[p] = h;
            if self.extend(depth + 1, used | 1 << h) {
                return true;
            }
        }
        false
    }
}

/// First induced embedding of `pattern` in `host`, searching host vertices
/// in ascending order.
pub fn contains_induced(host: &Graph, pattern: &Pattern) -> Option<Embedding> {
    if pattern.order() > host.order() || pattern.graph.edge_count() > host.edge_count() {
        return None;
    }
    let mut m = Matcher {
        host,
        pattern,
        map: vec![0; pattern.order()],
    };
    m.extend(0, 0).then_some(Embedding { map: m.map })
}

/// Set of one or two forbidden patterns.
#[derive(Debug, Clone)]
pub struct PairSpec {
    members: Vec<Pattern>,
    label: String,
}

impl PairSpec {
    pub fn new(members: Vec<Pattern>) -> Result<Self, PatternError> {
        if members.is_empty() || members.len() > 2 {
            return Err(PatternError::BadArity(members.len()));
        }
        if let [a, b] = members.as_slice() {
            if is_isomorphic(&a.graph, &b.graph).unwrap_or(a.graph == b.graph) {
                return Err(PatternError::IsomorphicMembers(
                    a.name.clone(),
                    b.name.clone(),
                ));
            }
        }
        let names: Vec<&str> = members.iter().map(|p| p.name()).collect();
        let label = format!("{{{}}}", names.join(","));
        Ok(PairSpec { members, label })
    }

    pub fn single(p: Pattern) -> Self {
        Self::new(vec![p]).expect("one member")
    }

    pub fn members(&self) -> &[Pattern] {
        &self.members
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl fmt::Display for PairSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// `G` contains no member of `spec` as an induced subgraph.
pub fn is_free(g: &Graph, spec: &PairSpec) -> bool {
    spec.members.iter().all(|p| contains_induced(g, p).is_none())
}

/// `p` is isomorphic to an induced subgraph of `q`.
pub fn induced_subgraph_of(p: &Pattern, q: &Pattern) -> bool {
    contains_induced(&q.graph, p).is_some()
}

/// `h1 ⪯ h2`: every member of `h2` has some member of `h1` as an induced
/// subgraph, so `h1`-free graphs are `h2`-free.
pub fn pair_precedes(h1: &PairSpec, h2: &PairSpec) -> bool {
    h2.members
        .iter()
        .all(|b| h1.members.iter().any(|a| induced_subgraph_of(a, b)))
}

fn same_degree_multiset(a: &Graph, b: &Graph) -> bool {
    let mut da = a.degree_profile().degrees;
    let mut db = b.degree_profile().degrees;
    da.sort_unstable();
    db.sort_unstable();
    da == db
}

/// Plain permutation test, independent of the matcher and canonical codes.
fn isomorphic_by_permutation(a: &Graph, b: &Graph) -> bool {
    let k = a.order();
    let mut perm: Vec<usize> = (0..k).collect();
    let mut c = vec![0usize; k];
    let matches = |perm: &[usize]| {
        (0..k).all(|i| (i + 1..k).all(|j| a.is_adjacent(i, j) == b.is_adjacent(perm[i], perm[j])))
    };
    if matches(&perm) {
        return true;
    }
    // Heap's algorithm
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            if matches(&perm) {
                return true;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    false
}

/// Ground truth for [`contains_induced`]: tries every vertex subset of the
/// pattern's size and tests isomorphism by permutation.
pub fn oracle_contains_induced(host: &Graph, pattern: &Pattern) -> Result<bool, PatternError> {
    let n = host.order();
    if n > ORACLE_MAX_HOST {
        return Err(PatternError::HostTooLarge(n));
    }
    let k = pattern.order();
    if k > n {
        return Ok(false);
    }
    let pg = &pattern.graph;
    for mask in 1u64..(1u64 << n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let sub = host.induced_by_mask(mask);
        if sub.edge_count() == pg.edge_count()
            && same_degree_multiset(&sub, pg)
            && isomorphic_by_permutation(pg, &sub)
        {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn sorted_degrees(p: &Pattern) -> Vec<usize> {
        let mut d = p.graph().degree_profile().degrees;
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    fn set(names: &str) -> PairSpec {
        Catalog::new().pair(names).unwrap()
    }

    #[test]
    fn atlas_shapes() {
        let atlas = pattern_atlas();
        assert_eq!(atlas.len(), 11);
        assert_eq!(sorted_degrees(&paw()), vec![3, 2, 2, 1]);
        let h0 = hourglass();
        assert_eq!((h0.order(), h0.graph().edge_count()), (5, 6));
        assert_eq!(h0.graph().degree_profile().max_degree, 4);
        assert_eq!(sorted_degrees(&chair()), vec![3, 2, 1, 1, 1]);
        assert_eq!(sorted_degrees(&long_chair()), vec![3, 2, 2, 1, 1, 1]);
        assert_eq!(sorted_degrees(&triangle_with_tail()), vec![3, 2, 2, 2, 1]);
        assert!(atlas.iter().all(|p| p.graph().is_connected()));
        for (i, a) in atlas.iter().enumerate() {
            for b in &atlas[i + 1..] {
                assert!(!is_isomorphic(a.graph(), b.graph()).unwrap());
            }
        }
    }

    #[test]
    fn matcher_examples() {
        assert!(contains_induced(&cycle(5), &paw()).is_none());
        let p = paw();
        let e = contains_induced(p.graph(), &p).unwrap();
        assert!(e.is_induced(p.graph(), p.graph()));

        let path = |n| Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap();
        let grid = path(2).cartesian_product(&path(3)).unwrap();
        assert!(contains_induced(&grid, &chair()).is_none());

        let prism = Graph::complete(3)
            .unwrap()
            .cartesian_product(&Graph::complete(2).unwrap())
            .unwrap();
        let e = contains_induced(&prism, &paw()).unwrap();
        assert!(e.is_induced(&prism, paw().graph()));
    }

    #[test]
    fn freeness() {
        assert!(is_free(&cycle(4), &set("H0,P4")));
        let p5 = path_pattern(5);
        assert!(!is_free(p5.graph(), &set("H0,P4")));
        for n in 1..9 {
            assert!(is_free(&Graph::complete(n).unwrap(), &set("P3")));
        }
    }

    #[test]
    fn induced_relation() {
        assert!(induced_subgraph_of(&path_pattern(3), &path_pattern(4)));
        assert!(!induced_subgraph_of(&star_pattern(3), &hourglass()));
        assert!(!induced_subgraph_of(&chair(), &star_pattern(4)));
    }

    #[test]
    fn precedence() {
        assert!(pair_precedes(&set("H0,P4"), &set("H0,P5")));
        assert!(!pair_precedes(&set("Z1,T112"), &set("Z1,K14")));
        for s in ["H0,P4", "Z1,T112", "K4,K1,3", "P3"] {
            assert!(pair_precedes(&set(s), &set(s)));
        }
    }

    #[test]
    fn oracle_examples() {
        let k4 = Graph::complete(4).unwrap();
        assert!(!oracle_contains_induced(&k4, &paw()).unwrap());
        assert!(!oracle_contains_induced(hourglass().graph(), &path_pattern(4)).unwrap());
        assert!(oracle_contains_induced(&cycle(6), &path_pattern(5)).unwrap());
        assert_eq!(
            oracle_contains_induced(&Graph::complete(13).unwrap(), &paw()),
            Err(PatternError::HostTooLarge(13))
        );
    }

    #[test]
    fn catalog_lookup() {
        let cat = Catalog::new();
        assert_eq!(cat.lookup("paw").unwrap().name(), "Z1");
        assert_eq!(cat.lookup("K1,3").unwrap().name(), "K13");
        assert_eq!(cat.lookup("K4").unwrap().graph().edge_count(), 6);
        assert_eq!(cat.lookup("C5").unwrap().graph().edge_count(), 5);
        assert!(matches!(cat.lookup("H1"), Err(PatternError::Unknown(_))));
        let pair = cat.pair("K4,K1,3").unwrap();
        assert_eq!(pair.label(), "{K4,K13}");
        assert!(matches!(cat.pair("Z1,paw"), Err(PatternError::IsomorphicMembers(..))));
        assert!(matches!(cat.pair("P3,P4,P5"), Err(PatternError::BadArity(3))));
        let disconnected = Graph::new(3, [(0, 1)]).unwrap();
        assert!(matches!(
            Pattern::new("X", disconnected, ""),
            Err(PatternError::Disconnected(_))
        ));
    }

    #[test]
    fn custom_patterns() {
        let mut cat = Catalog::new();
        let bull = Graph::new(5, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 4)]).unwrap();
        cat.register(Pattern::new("bull", bull.clone(), "custom").unwrap())
            .unwrap();
        assert_eq!(cat.lookup("bull").unwrap().graph(), &bull);
        assert!(cat
            .register(Pattern::new("bull", bull, "again").unwrap())
            .is_err());
    }
}
