use std::collections::BTreeSet;

use proptest::prelude::*;
use statdim::dimension::{calibrated_dimension, degree_distribution, raw_dimension};
use statdim::io::{read_graph, write_graph};
use statdim::{
    ball_profile, quotient_by_partition, run_ensemble, EnsembleSpec, Graph, NodeId, SemanticType,
};

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..40).prop_flat_map(|n| {
        prop::collection::vec((0..n as u32, 0..n as u32), 0..120).prop_map(move |edges| {
            Graph::from_edges(n, edges, SemanticType::Lattice).unwrap().0
        })
    })
}

fn render(g: &Graph) -> Vec<u8> {
    let mut buf = Vec::new();
    write_graph(g, &mut buf).unwrap();
    buf
}

/// Same edge set with every node's neighbor list visited in reverse.
fn reversed_insertion(g: &Graph) -> Graph {
    let mut edges: Vec<(u32, u32)> = g.edges().map(|(u, v)| (v.0, u.0)).collect();
    edges.reverse();
    Graph::from_edges(g.node_count(), edges, SemanticType::Lattice).unwrap().0
}

proptest! {
    #[test]
    fn construction_is_canonical(g in arb_graph()) {
        g.validate().unwrap();
        let deg_sum: usize = g.nodes().map(|u| g.degree(u)).sum();
        prop_assert_eq!(deg_sum, 2 * g.edge_count());
    }

    #[test]
    fn save_load_is_identity(g in arb_graph()) {
        let bytes = render(&g);
        let (back, stats) = read_graph(&bytes[..], SemanticType::Lattice).unwrap();
        prop_assert_eq!(stats.dropped(), 0);
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(render(&back), bytes);
    }

    #[test]
    fn ball_profile_invariants(g in arb_graph(), origin in 0u32..40, r_max in 1u32..12, include in any::<bool>()) {
        let origin = NodeId(origin % g.node_count() as u32);
        let p = ball_profile(&g, origin, r_max, include).unwrap();
        prop_assert_eq!(p.cumulative.len(), r_max as usize + 1);
        prop_assert_eq!(p.cumulative[0], include as u64);
        prop_assert!(p.cumulative.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(*p.cumulative.last().unwrap() <= g.node_count() as u64);
        if let Some(i) = p.cumulative.windows(2).position(|w| w[0] == w[1]) {
            prop_assert!(p.cumulative[i..].iter().all(|&n| n == p.cumulative[i]));
        }
        // Never exceeds the size of the origin's component.
        let (labels, _) = g.components();
        let comp = labels.iter().filter(|&&l| l == labels[origin.index()]).count() as u64;
        prop_assert!(p.count(r_max) + (!include) as u64 <= comp);
        // Adjacency order does not matter.
        let q = ball_profile(&reversed_insertion(&g), origin, r_max, include).unwrap();
        prop_assert_eq!(p.cumulative, q.cumulative);
    }

    #[test]
    fn degree_handshake(g in arb_graph()) {
        let d = degree_distribution(&g).unwrap();
        prop_assert_eq!(d.histogram.values().sum::<u64>(), g.node_count() as u64);
        prop_assert_eq!(d.degree_sum(), 2 * g.edge_count() as u64);
        let total: f64 = d.probabilities().map(|(_, p)| p).sum();
        prop_assert!((total - 1.0).abs() < 1e-9);
    }

    #[test]
    fn quotient_counts(g in arb_graph(), labels in prop::collection::vec(prop::option::of(0u8..6), 40)) {
        let member_of: Vec<Option<u8>> = labels[..g.node_count()].to_vec();
        let distinct: BTreeSet<u8> = member_of.iter().flatten().copied().collect();
        match quotient_by_partition(&g, &member_of) {
            Err(_) => prop_assert!(distinct.is_empty()),
            Ok(q) => {
                prop_assert_eq!(q.graph.node_count(), distinct.len());
                prop_assert_eq!(q.excluded, member_of.iter().filter(|m| m.is_none()).count());
                q.graph.validate().unwrap();
                for (a, b) in q.graph.edges() {
                    let (la, lb) = (q.labels[a.index()], q.labels[b.index()]);
                    let witnessed = g.edges().any(|(u, v)| {
                        let (mu, mv) = (member_of[u.index()], member_of[v.index()]);
                        (mu == Some(la) && mv == Some(lb)) || (mu == Some(lb) && mv == Some(la))
                    });
                    prop_assert!(witnessed);
                }
            }
        }
    }

    #[test]
    fn power_law_self_consistency(h in 2u32..30, n in 0u32..8) {
        let nodes = (h as u64).pow(n);
        prop_assert!((raw_dimension(nodes, h).unwrap() - n as f64).abs() < 1e-9);
    }

    #[test]
    fn estimators_monotone_in_nodes(a in 1u64..1_000_000, b in 1u64..1_000_000, h in 2u32..40) {
        let (lo, hi) = (a.min(b), a.max(b));
        prop_assume!(lo < hi);
        prop_assert!(raw_dimension(lo, h).unwrap() < raw_dimension(hi, h).unwrap());
        prop_assert!(calibrated_dimension(lo, h).unwrap() < calibrated_dimension(hi, h).unwrap());
        prop_assert!(calibrated_dimension(hi, h).unwrap() >= raw_dimension(hi, h).unwrap());
    }
}

#[test]
fn quotient_of_connected_blocks_stays_connected() {
    // 6x6 grid partitioned into 3x3 blocks.
    let spec = statdim::LatticeSpec::new(2, 5).unwrap();
    let g = statdim::generate_hypercube(&spec).unwrap();
    let member_of: Vec<Option<u32>> = g
        .nodes()
        .map(|u| {
            let c = spec.coords(u);
            Some(c[0] / 3 + 2 * (c[1] / 3))
        })
        .collect();
    let q = quotient_by_partition(&g, &member_of).unwrap();
    assert_eq!(q.graph.node_count(), 4);
    assert_eq!(q.graph.components().1, 1);
    assert_eq!(q.graph.edge_count(), 4);
}

#[test]
fn exhaustive_ensemble_ignores_seed() {
    let spec = statdim::LatticeSpec::new(3, 3).unwrap();
    let g = statdim::generate_hypercube(&spec).unwrap();
    let a = run_ensemble(&g, &EnsembleSpec::new(64, 6, 1)).unwrap();
    let b = run_ensemble(&g, &EnsembleSpec::new(64, 6, 999)).unwrap();
    assert_eq!(a.rows, b.rows);
    assert_eq!(a.peak, b.peak);
}

#[test]
fn ensemble_is_thread_count_independent() {
    let spec = statdim::LatticeSpec::new(3, 10).unwrap();
    let g = statdim::generate_hypercube(&spec).unwrap();
    let es = EnsembleSpec::new(40, 12, 77);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| run_ensemble(&g, &es).unwrap())
    };
    let one = run(1);
    for t in [2, 3, 8] {
        assert_eq!(run(t), one);
    }
}
