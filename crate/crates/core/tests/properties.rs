use proptest::prelude::*;
use proptest::sample::subsequence;

use superedge::canon::canonical_code;
use superedge::connectivity::oracle_cut_scan;
use superedge::io::{decode_graph6, encode_graph6};
use superedge::par;
use superedge::patterns::{is_free, pair_precedes, pattern_atlas, PairSpec};
use superedge::{
    analyze, edge_connectivity, is_super_edge_connected, max_flow_min_cut, vertex_connectivity,
    Graph, Jobs,
};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for j in 1..n {
                for i in 0..j {
                    if bits[k] {
                        edges.push((i, j));
                    }
                    k += 1;
                }
            }
            Graph::new(n, edges).unwrap()
        })
    })
}

fn connected(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    graph(max_n).prop_filter("connected with enough vertices", move |g| {
        g.order() >= min_n && g.is_connected()
    })
}

fn with_permutation(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

/// Minimum number of vertices whose removal disconnects `g`, by trying every
/// subset; `n - 1` for complete graphs.
fn kappa_oracle(g: &Graph) -> usize {
    let n = g.order();
    let mut best = n - 1;
    for mask in 0u64..1 << n {
        let k = mask.count_ones() as usize;
        if k >= best || n - k < 2 {
            continue;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 0).collect();
        if !g.induced_subgraph(&rest).unwrap().is_connected() {
            best = k;
        }
    }
    best
}

/// Brute-force minimum `s`-`t` edge cut.
fn st_cut_oracle(g: &Graph, s: usize, t: usize) -> usize {
    let n = g.order();
    let mut best = usize::MAX;
    for mask in 0u64..1 << n {
        if mask >> s & 1 == 1 && mask >> t & 1 == 0 {
            best = best.min(g.boundary_size(mask));
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn graph6_round_trip(g in graph(30)) {
        let s = encode_graph6(&g);
        prop_assert_eq!(s.len(), superedge::io::graph6::record_len(g.order()));
        prop_assert_eq!(decode_graph6(&s).unwrap(), g);
    }

    #[test]
    fn canonical_code_ignores_labels((g, perm) in with_permutation(8)) {
        let h = g.permuted(&perm);
        prop_assert_eq!(canonical_code(&g).unwrap(), canonical_code(&h).unwrap());
        prop_assert_eq!(canonical_code(&g).unwrap().to_graph().edge_count(), g.edge_count());
    }

    #[test]
    fn connectivity_is_label_invariant((g, perm) in with_permutation(8)) {
        prop_assume!(g.is_connected() && g.order() >= 2);
        let h = g.permuted(&perm);
        let (a, b) = (analyze(&g), analyze(&h));
        prop_assert_eq!(
            (a.kappa, a.lambda, a.lambda_restricted, a.super_edge_connected),
            (b.kappa, b.lambda, b.lambda_restricted, b.super_edge_connected)
        );
    }

    #[test]
    fn whitney_chain(g in connected(2, 10)) {
        let kappa = vertex_connectivity(&g).unwrap();
        let (lambda, _) = edge_connectivity(&g).unwrap();
        prop_assert!(kappa <= lambda && lambda <= g.min_degree());
    }

    #[test]
    fn vertex_connectivity_matches_subset_oracle(g in connected(2, 8)) {
        prop_assert_eq!(vertex_connectivity(&g).unwrap(), kappa_oracle(&g));
    }

    #[test]
    fn witnesses_are_valid_cuts(g in connected(2, 10)) {
        let (lambda, w) = edge_connectivity(&g).unwrap();
        prop_assert!(w.separates(&g));
        prop_assert_eq!(w.size, lambda);
        prop_assert_eq!(w.boundary.len(), lambda);
        prop_assert_eq!(g.boundary_size(w.side_mask()), lambda);
        prop_assert!(w.side.contains(&0));
        let (is_super, witness) = is_super_edge_connected(&g).unwrap();
        match witness {
            Some(w) => {
                prop_assert!(!is_super && !w.trivial && w.separates(&g));
                prop_assert_eq!(w.size, lambda);
            }
            None => prop_assert!(is_super),
        }
    }

    #[test]
    fn flow_matches_cut_oracle(g in connected(2, 10)) {
        let o = oracle_cut_scan(&g).unwrap();
        let (lambda, _) = edge_connectivity(&g).unwrap();
        prop_assert_eq!(lambda, o.lambda);
        prop_assert_eq!(is_super_edge_connected(&g).unwrap().0, o.is_super);
        prop_assert_eq!(analyze(&g).lambda_restricted, o.lambda_restricted);
    }

    #[test]
    fn st_flow_equals_min_st_cut(g in graph(9), s in 0usize..9, t in 0usize..9) {
        let n = g.order();
        prop_assume!(n >= 2);
        let (s, t) = (s % n, t % n);
        prop_assume!(s != t);
        let (value, w) = max_flow_min_cut(&g, s, t).unwrap();
        prop_assert_eq!(value, st_cut_oracle(&g, s, t));
        prop_assert!(w.side.contains(&s) && !w.side.contains(&t));
        prop_assert_eq!(w.size, value);
    }

    #[test]
    fn freeness_is_hereditary(g in graph(8), keep in any::<u64>()) {
        let mask = keep & g.vertex_mask();
        prop_assume!(mask != 0);
        let sub = g.induced_by_mask(mask);
        for p in pattern_atlas() {
            let pair = PairSpec::single(p);
            if is_free(&g, &pair) {
                prop_assert!(is_free(&sub, &pair));
            }
        }
    }

    #[test]
    fn precedence_is_monotone(
        g in graph(7),
        a in subsequence(pattern_atlas(), 1..=2),
        b in subsequence(pattern_atlas(), 1..=2),
    ) {
        let (Ok(h1), Ok(h2)) = (PairSpec::new(a), PairSpec::new(b)) else {
            return Ok(());
        };
        if pair_precedes(&h1, &h2) && is_free(&g, &h1) {
            prop_assert!(is_free(&g, &h2));
        }
    }

    #[test]
    fn product_degrees_add(a in connected(1, 4), b in connected(1, 4)) {
        let p = a.cartesian_product(&b).unwrap();
        prop_assert_eq!(p.order(), a.order() * b.order());
        prop_assert_eq!(
            p.edge_count(),
            a.edge_count() * b.order() + b.edge_count() * a.order()
        );
        for x in 0..a.order() {
            for y in 0..b.order() {
                prop_assert_eq!(p.degree(x * b.order() + y), a.degree(x) + b.degree(y));
            }
        }
        prop_assert!(p.is_connected());
    }

    #[test]
    fn sequential_and_parallel_maps_agree(items in prop::collection::vec(any::<u32>(), 0..200)) {
        let f = |x: &u32| x.wrapping_mul(2_654_435_761) >> 3;
        prop_assert_eq!(par::map(Jobs::sequential(), &items, f), par::map(Jobs::new(4), &items, f));
    }
}
