//! Traversal and counting results checked against independent brute force.

use statdim::ball::BallProber;
use statdim::dimension::calibrated_dimension;
use statdim::lattice::{expected_counts, generate_hypercube, LatticeSpec};
use statdim::{ball_profile, run_ensemble, EnsembleSpec, NodeId};

/// Every lattice point of `{0..=side}^dim`, enumerated without any graph.
fn lattice_points(dim: usize, side: u32) -> Vec<Vec<u32>> {
    let mut points = vec![vec![]];
    for _ in 0..dim {
        points = points
            .into_iter()
            .flat_map(|p| {
                (0..=side).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    points
}

fn l1(a: &[u32], b: &[u32]) -> u32 {
    a.iter().zip(b).map(|(&x, &y)| x.abs_diff(y)).sum()
}

/// Clipped L1-ball sizes around `origin` for radii `0..=r_max`.
fn brute_ball(points: &[Vec<u32>], origin: &[u32], r_max: u32) -> Vec<u64> {
    (0..=r_max)
        .map(|r| points.iter().filter(|p| l1(p, origin) <= r).count() as u64)
        .collect()
}

#[test]
fn center_of_square_lattice() {
    let spec = LatticeSpec::new(2, 4).unwrap();
    let g = generate_hypercube(&spec).unwrap();
    let p = ball_profile(&g, spec.id(&[2, 2]), 4, true).unwrap();
    assert_eq!(p.cumulative, vec![1, 5, 13, 21, 25]);
    let points = lattice_points(2, 4);
    assert_eq!(brute_ball(&points, &[2, 2], 4), p.cumulative);
}

#[test]
fn bfs_matches_l1_enumeration_everywhere() {
    for (dim, side) in [(2, 3), (2, 6), (3, 2), (3, 5)] {
        let spec = LatticeSpec::new(dim, side).unwrap();
        let g = generate_hypercube(&spec).unwrap();
        let points = lattice_points(dim as usize, side);
        let r_max = dim * side + 1;
        let mut prober = BallProber::for_graph(&g);
        for point in &points {
            let bfs = prober.profile(&g, spec.id(point), r_max, true).unwrap();
            assert_eq!(bfs.cumulative, brute_ball(&points, point, r_max), "dim {dim} side {side} at {point:?}");
        }
    }
}

#[test]
fn enumerated_counts_match_closed_forms() {
    for (dim, side) in [(1, 7), (2, 5), (3, 20), (4, 3), (4, 20)] {
        let spec = LatticeSpec::new(dim, side).unwrap();
        let points = lattice_points(dim as usize, side);
        // Each edge joins a point to its +1 neighbour along one axis.
        let edges: u64 = points
            .iter()
            .map(|p| p.iter().filter(|&&c| c < side).count() as u64)
            .sum();
        assert_eq!(expected_counts(&spec).unwrap(), (points.len() as u64, edges));
        let g = generate_hypercube(&spec).unwrap();
        assert_eq!((g.node_count() as u64, g.edge_count() as u64), (points.len() as u64, edges));
    }
}

#[test]
fn closed_forms_by_induction_on_side() {
    // lambda (L+1) = n L nu ties the two closed forms together.
    for dim in 1..=5u32 {
        for side in 1..=20u32 {
            let (nodes, edges) = LatticeSpec::new(dim, side).unwrap().expected_counts().unwrap();
            assert_eq!(nodes, (side as u64 + 1).pow(dim));
            assert_eq!(edges * (side as u64 + 1), dim as u64 * side as u64 * nodes);
        }
    }
    let five = LatticeSpec::new(5, 20).unwrap().expected_counts().unwrap();
    assert_eq!(five, (4_084_101, 19_448_100));
}

/// Plain queue BFS distance, independent of the library's prober.
fn hop_distance(g: &statdim::Graph, a: NodeId, b: NodeId) -> Option<u32> {
    let mut dist = vec![u32::MAX; g.node_count()];
    let mut queue = std::collections::VecDeque::from([a]);
    dist[a.index()] = 0;
    while let Some(u) = queue.pop_front() {
        if u == b {
            return Some(dist[u.index()]);
        }
        for &v in g.neighbors(u) {
            if dist[v.index()] == u32::MAX {
                dist[v.index()] = dist[u.index()] + 1;
                queue.push_back(v);
            }
        }
    }
    None
}

#[test]
fn hop_distance_is_manhattan_distance() {
    let spec = LatticeSpec::new(3, 9).unwrap();
    let g = generate_hypercube(&spec).unwrap();
    // Deterministic pseudo-random pairs.
    let mut x = 0x2545_f491_4f6c_dd1du64;
    let mut next = || {
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        NodeId((x % g.node_count() as u64) as u32)
    };
    for _ in 0..200 {
        let (a, b) = (next(), next());
        let d = l1(&spec.coords(a), &spec.coords(b));
        assert_eq!(hop_distance(&g, a, b), Some(d), "{a} -> {b}");
    }
}

#[test]
fn square_center_plateau_near_two() {
    let spec = LatticeSpec::new(2, 20).unwrap();
    let g = generate_hypercube(&spec).unwrap();
    let p = ball_profile(&g, spec.id(&[10, 10]), 20, true).unwrap();
    let d = statdim::dimension_profile(&p).unwrap();
    // Whole 441-node square is inside 20 hops of the center.
    assert_eq!(p.count(20), 441);
    let expected = calibrated_dimension(441, 20).unwrap();
    assert_eq!(d.calibrated_at(20), Some(expected));
    assert!((expected - 2.05).abs() < 0.01, "{expected}");
    for r in 12..=20 {
        let v = d.calibrated_at(r).unwrap();
        assert!((1.9..2.5).contains(&v), "R={r}: {v}");
    }
}

#[test]
fn exhaustive_ensemble_matches_direct_average() {
    let spec = LatticeSpec::new(2, 5).unwrap();
    let g = generate_hypercube(&spec).unwrap();
    let stats = run_ensemble(&g, &EnsembleSpec::new(g.node_count(), 6, 11)).unwrap();
    let points = lattice_points(2, 5);
    for row in &stats.rows {
        let values: Vec<f64> = points
            .iter()
            .map(|o| {
                let n = points.iter().filter(|p| l1(p, o) <= row.radius).count() as u64;
                calibrated_dimension(n, row.radius).unwrap()
            })
            .collect();
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / values.len() as f64;
        assert!((row.mean_calibrated - mean).abs() < 1e-12);
        assert!((row.std_calibrated - var.sqrt()).abs() < 1e-12);
        let max = values.iter().cloned().fold(f64::MIN, f64::max);
        assert_eq!(row.max_calibrated, max);
    }
}
