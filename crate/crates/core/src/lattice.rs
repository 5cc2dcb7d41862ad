//! Hypercube lattice graphs on `{0..=side}^dim`.
//!
//! Node ids are row-major: coordinate `i` contributes `c_i * (side+1)^i`.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{check_node_count, prefix_offsets, Graph, NodeId, SemanticType};

/// An `dim`-dimensional cube with `side` links (`side + 1` nodes) per edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeSpec {
    dim: u32,
    side: u32,
}

impl LatticeSpec {
    pub fn new(dim: u32, side: u32) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidLattice("dimension must be at least 1".into()));
        }
        if side == 0 {
            return Err(Error::InvalidLattice("side must be at least 1".into()));
        }
        let spec = LatticeSpec { dim, side };
        let (nodes, _) = spec.expected_counts()?;
        check_node_count(nodes as usize).map_err(|_| Error::LatticeOverflow { dim, side })?;
        Ok(spec)
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn side(&self) -> u32 {
        self.side
    }

    /// Closed-form `(nodes, edges) = ((L+1)^n, n L (L+1)^(n-1))`.
    pub fn expected_counts(&self) -> Result<(u64, u64)> {
        let overflow = || Error::LatticeOverflow {
            dim: self.dim,
            side: self.side,
        };
        let width = self.side as u64 + 1;
        let face = width.checked_pow(self.dim - 1).ok_or_else(overflow)?;
        let nodes = face.checked_mul(width).ok_or_else(overflow)?;
        let edges = (self.dim as u64)
            .checked_mul(self.side as u64)
            .and_then(|x| x.checked_mul(face))
            .ok_or_else(overflow)?;
        Ok((nodes, edges))
    }

    fn node_count(&self) -> usize {
        (self.side as usize + 1).pow(self.dim)
    }

    fn strides(&self) -> Vec<u32> {
        let w = self.side + 1;
        (0..self.dim).map(|i| w.pow(i)).collect()
    }

    pub fn coords(&self, id: NodeId) -> Vec<u32> {
        let w = self.side + 1;
        let mut rest = id.0;
        (0..self.dim)
            .map(|_| {
                let c = rest % w;
                rest /= w;
                c
            })
            .collect()
    }

    pub fn id(&self, coords: &[u32]) -> NodeId {
        assert_eq!(coords.len(), self.dim as usize);
        let w = self.side + 1;
        NodeId(coords.iter().rev().fold(0, |acc, &c| {
            debug_assert!(c <= self.side);
            acc * w + c
        }))
    }

    /// Degree of the lattice point: `2n` minus one per extremal coordinate.
    pub fn expected_degree(&self, coords: &[u32]) -> usize {
        coords
            .iter()
            .map(|&c| (c > 0) as usize + (c < self.side) as usize)
            .sum()
    }
}

/// Free-function form of [`LatticeSpec::expected_counts`].
pub fn expected_counts(spec: &LatticeSpec) -> Result<(u64, u64)> {
    spec.expected_counts()
}

/// Builds the lattice straight into compressed adjacency, already canonical.
pub fn generate_hypercube(spec: &LatticeSpec) -> Result<Graph> {
    let n = spec.node_count();
    let dim = spec.dim as usize;
    let side = spec.side;
    let strides = spec.strides();

    let mut degree = Vec::with_capacity(n);
    let mut coords = vec![0u32; dim];
    for _ in 0..n {
        degree.push(spec.expected_degree(&coords));
        advance(&mut coords, side);
    }
    let offsets = prefix_offsets(&degree);
    drop(degree);

    let mut neighbors = Vec::with_capacity(offsets[n]);
    coords.iter_mut().for_each(|c| *c = 0);
    for id in 0..n as u32 {
        // Lower neighbors by descending stride, then upper ones ascending.
        for i in (0..dim).rev() {
            if coords[i] > 0 {
                neighbors.push(NodeId(id - strides[i]));
            }
        }
        for i in 0..dim {
            if coords[i] < side {
                neighbors.push(NodeId(id + strides[i]));
            }
        }
        advance(&mut coords, side);
    }
    debug_assert_eq!(neighbors.len(), offsets[n]);
    let graph = Graph::from_csr(offsets, neighbors, SemanticType::Lattice)?;
    Ok(graph)
}

/// Odometer increment in row-major order.
fn advance(coords: &mut [u32], side: u32) {
    for c in coords.iter_mut() {
        if *c < side {
            *c += 1;
            return;
        }
        *c = 0;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeMismatch {
    pub node: NodeId,
    pub expected: usize,
    pub actual: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeReport {
    pub spec: LatticeSpec,
    pub expected_nodes: u64,
    pub actual_nodes: u64,
    pub expected_edges: u64,
    pub actual_edges: u64,
    /// Total number of nodes whose degree disagrees with the boundary rule.
    pub degree_mismatch_count: usize,
    /// The first few mismatching nodes.
    pub degree_mismatches: Vec<DegreeMismatch>,
    /// Degree checks are skipped when the node counts disagree.
    pub degrees_checked: bool,
}

impl LatticeReport {
    pub fn nodes_ok(&self) -> bool {
        self.expected_nodes == self.actual_nodes
    }

    pub fn edges_ok(&self) -> bool {
        self.expected_edges == self.actual_edges
    }

    pub fn degrees_ok(&self) -> bool {
        self.degrees_checked && self.degree_mismatch_count == 0
    }

    pub fn passed(&self) -> bool {
        self.nodes_ok() && self.edges_ok() && self.degrees_ok()
    }

    /// Signed difference `actual - expected` in edge count.
    pub fn edge_deficit(&self) -> i64 {
        self.actual_edges as i64 - self.expected_edges as i64
    }
}

impl fmt::Display for LatticeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = |ok: bool| if ok { "ok" } else { "FAIL" };
        writeln!(f, "check,expected,actual,status")?;
        writeln!(
            f,
            "nodes,{},{},{}",
            self.expected_nodes,
            self.actual_nodes,
            verdict(self.nodes_ok())
        )?;
        writeln!(
            f,
            "edges,{},{},{}",
            self.expected_edges,
            self.actual_edges,
            verdict(self.edges_ok())
        )?;
        if self.degrees_checked {
            writeln!(
                f,
                "degree_mismatches,0,{},{}",
                self.degree_mismatch_count,
                verdict(self.degrees_ok())
            )?;
            for m in &self.degree_mismatches {
                writeln!(f, "# node {} degree {} expected {}", m.node, m.actual, m.expected)?;
            }
        } else {
            writeln!(f, "degree_mismatches,0,,skipped")?;
        }
        Ok(())
    }
}

const MAX_LISTED_MISMATCHES: usize = 16;

/// Compares a graph against the closed-form counts and boundary degree rule.
pub fn validate_lattice(g: &Graph, spec: &LatticeSpec) -> LatticeReport {
    let (expected_nodes, expected_edges) = spec
        .expected_counts()
        .expect("LatticeSpec::new rejects overflowing lattices");
    let mut report = LatticeReport {
        spec: *spec,
        expected_nodes,
        actual_nodes: g.node_count() as u64,
        expected_edges,
        actual_edges: g.edge_count() as u64,
        degree_mismatch_count: 0,
        degree_mismatches: Vec::new(),
        degrees_checked: false,
    };
    if !report.nodes_ok() {
        return report;
    }
    report.degrees_checked = true;
    let mut coords = vec![0u32; spec.dim as usize];
    for u in g.nodes() {
        let expected = spec.expected_degree(&coords);
        let actual = g.degree(u);
        if expected != actual {
            report.degree_mismatch_count += 1;
            if report.degree_mismatches.len() < MAX_LISTED_MISMATCHES {
                report.degree_mismatches.push(DegreeMismatch {
                    node: u,
                    expected,
                    actual,
                });
            }
        }
        advance(&mut coords, spec.side);
    }
    report
}
