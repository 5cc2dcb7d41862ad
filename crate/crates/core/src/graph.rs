//! Immutable undirected simple graph in compressed adjacency form.
//!
//! Node ids are dense `u32` indices. Every construction path produces the
//! canonical form: symmetric adjacency, no self-loops, no duplicate
//! neighbors, each neighbor list sorted ascending.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Dense index of a node inside its owning [`Graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(transparent)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for NodeId {
    fn from(v: u32) -> Self {
        NodeId(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SemanticType {
    Device,
    #[allow(clippy::upper_case_acronyms)]
    AS,
    /// Placeholder for unobservable tunnel nodes.
    Unknown,
    #[default]
    Lattice,
}

impl SemanticType {
    pub fn as_str(self) -> &'static str {
        match self {
            SemanticType::Device => "Device",
            SemanticType::AS => "AS",
            SemanticType::Unknown => "Unknown",
            SemanticType::Lattice => "Lattice",
        }
    }
}

impl fmt::Display for SemanticType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SemanticType {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "Device" => Ok(SemanticType::Device),
            "AS" => Ok(SemanticType::AS),
            "Unknown" => Ok(SemanticType::Unknown),
            "Lattice" => Ok(SemanticType::Lattice),
            other => Err(format!("unknown semantic type {other:?}")),
        }
    }
}

/// Bidirectional map between node ids and external names.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymbolTable {
    names: Vec<Option<String>>,
    index: HashMap<String, NodeId>,
}

impl SymbolTable {
    pub fn with_capacity(node_count: usize) -> Self {
        SymbolTable {
            names: vec![None; node_count],
            index: HashMap::new(),
        }
    }

    /// Binds `name` to `id`. Rebinding either side replaces the old entry.
    pub fn insert(&mut self, id: NodeId, name: impl Into<String>) {
        let name = name.into();
        if id.index() >= self.names.len() {
            self.names.resize(id.index() + 1, None);
        }
        if let Some(old) = self.names[id.index()].take() {
            self.index.remove(&old);
        }
        if let Some(prev) = self.index.insert(name.clone(), id) {
            if prev != id {
                self.names[prev.index()] = None;
            }
        }
        self.names[id.index()] = Some(name);
    }

    pub fn name(&self, id: NodeId) -> Option<&str> {
        self.names.get(id.index()).and_then(|n| n.as_deref())
    }

    pub fn id(&self, name: &str) -> Option<NodeId> {
        self.index.get(name).copied()
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    /// Named entries in ascending id order.
    pub fn iter(&self) -> impl Iterator<Item = (NodeId, &str)> {
        self.names
            .iter()
            .enumerate()
            .filter_map(|(i, n)| n.as_deref().map(|n| (NodeId(i as u32), n)))
    }
}

/// What canonicalization discarded while building a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BuildStats {
    pub self_loops_dropped: usize,
    pub duplicates_dropped: usize,
}

impl BuildStats {
    pub fn dropped(&self) -> usize {
        self.self_loops_dropped + self.duplicates_dropped
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<NodeId>,
    node_type: Vec<SemanticType>,
    names: Option<SymbolTable>,
}

impl Graph {
    /// Builds a canonical graph from an arbitrary edge list. Self-loops and
    /// repeated edges (in either orientation) are dropped and counted.
    pub fn from_edges<I>(node_count: usize, edges: I, default_type: SemanticType) -> Result<(Self, BuildStats)>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        check_node_count(node_count)?;
        let mut stats = BuildStats::default();
        let mut pairs = Vec::new();
        for (u, v) in edges {
            for id in [u, v] {
                if id as usize >= node_count {
                    return Err(Error::NodeOutOfRange {
                        id: id as u64,
                        node_count,
                    });
                }
            }
            if u == v {
                stats.self_loops_dropped += 1;
                continue;
            }
            pairs.push((u.min(v), u.max(v)));
        }
        pairs.sort_unstable();
        let before = pairs.len();
        pairs.dedup();
        stats.duplicates_dropped = before - pairs.len();

        let mut degree = vec![0usize; node_count];
        for &(u, v) in &pairs {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let offsets = prefix_offsets(&degree);
        let mut cursor = offsets[..node_count].to_vec();
        let mut neighbors = vec![NodeId(0); offsets[node_count]];
        // Pairs are sorted by (u, v), so for each node the smaller neighbors
        // arrive before the larger ones, each run ascending.
        for &(u, v) in &pairs {
            neighbors[cursor[u as usize]] = NodeId(v);
            cursor[u as usize] += 1;
            neighbors[cursor[v as usize]] = NodeId(u);
            cursor[v as usize] += 1;
        }
        let graph = Graph {
            offsets,
            neighbors,
            node_type: vec![default_type; node_count],
            names: None,
        };
        debug_assert!(graph.validate().is_ok());
        Ok((graph, stats))
    }

    /// Assembles a graph from already-canonical compressed adjacency.
    /// The invariants are checked and violations reported as errors.
    pub fn from_csr(offsets: Vec<usize>, neighbors: Vec<NodeId>, default_type: SemanticType) -> Result<Self> {
        if offsets.is_empty() || offsets[0] != 0 || *offsets.last().unwrap() != neighbors.len() {
            return Err(Error::Invariant("offsets do not frame the neighbor array".into()));
        }
        let node_count = offsets.len() - 1;
        check_node_count(node_count)?;
        let graph = Graph {
            offsets,
            neighbors,
            node_type: vec![default_type; node_count],
            names: None,
        };
        graph.validate()?;
        Ok(graph)
    }

    pub fn with_types(mut self, types: Vec<SemanticType>) -> Result<Self> {
        if types.len() != self.node_count() {
            return Err(Error::Invariant(format!(
                "{} type tags for {} nodes",
                types.len(),
                self.node_count()
            )));
        }
        self.node_type = types;
        Ok(self)
    }

    pub fn with_names(mut self, names: SymbolTable) -> Result<Self> {
        if let Some((id, _)) = names.iter().find(|(id, _)| id.index() >= self.node_count()) {
            return Err(Error::NodeOutOfRange {
                id: id.0 as u64,
                node_count: self.node_count(),
            });
        }
        self.names = Some(names);
        Ok(self)
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, u: NodeId) -> &[NodeId] {
        &self.neighbors[self.offsets[u.index()]..self.offsets[u.index() + 1]]
    }

    #[inline]
    pub fn degree(&self, u: NodeId) -> usize {
        self.offsets[u.index() + 1] - self.offsets[u.index()]
    }

    pub fn node_type(&self, u: NodeId) -> SemanticType {
        self.node_type[u.index()]
    }

    pub fn types(&self) -> &[SemanticType] {
        &self.node_type
    }

    pub fn names(&self) -> Option<&SymbolTable> {
        self.names.as_ref()
    }

    pub fn contains(&self, u: NodeId) -> bool {
        u.index() < self.node_count()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.node_count() as u32).map(NodeId)
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.contains(u) && self.contains(v) && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.nodes().flat_map(move |u| {
            let adj = self.neighbors(u);
            let start = adj.partition_point(|&v| v <= u);
            adj[start..].iter().map(move |&v| (u, v))
        })
    }

    /// Checks symmetry, simplicity, ordering and the handshake lemma.
    pub fn validate(&self) -> Result<()> {
        let n = self.node_count();
        if self.node_type.len() != n {
            return Err(Error::Invariant("type table length mismatch".into()));
        }
        if !self.neighbors.len().is_multiple_of(2) {
            return Err(Error::Invariant("odd degree sum".into()));
        }
        for u in self.nodes() {
            if self.offsets[u.index()] > self.offsets[u.index() + 1] {
                return Err(Error::Invariant(format!("offsets decrease at node {u}")));
            }
            let adj = self.neighbors(u);
            for w in adj.windows(2) {
                if w[0] >= w[1] {
                    return Err(Error::Invariant(format!("adjacency of {u} not strictly ascending")));
                }
            }
            for &v in adj {
                if v.index() >= n {
                    return Err(Error::NodeOutOfRange {
                        id: v.0 as u64,
                        node_count: n,
                    });
                }
                if v == u {
                    return Err(Error::Invariant(format!("self-loop at {u}")));
                }
                if self.neighbors(v).binary_search(&u).is_err() {
                    return Err(Error::Invariant(format!("edge {u}-{v} is not symmetric")));
                }
            }
        }
        Ok(())
    }

    /// Connected-component label per node, labels assigned in order of each
    /// component's smallest node id.
    pub fn components(&self) -> (Vec<u32>, usize) {
        const UNSEEN: u32 = u32::MAX;
        let mut label = vec![UNSEEN; self.node_count()];
        let mut stack = Vec::new();
        let mut next = 0u32;
        for s in self.nodes() {
            if label[s.index()] != UNSEEN {
                continue;
            }
            label[s.index()] = next;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &v in self.neighbors(u) {
                    if label[v.index()] == UNSEEN {
                        label[v.index()] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        (label, next as usize)
    }

    /// Nodes of the largest connected component, ascending. Ties go to the
    /// component containing the smallest node id.
    pub fn giant_component(&self) -> Vec<NodeId> {
        let (label, count) = self.components();
        if count == 0 {
            return Vec::new();
        }
        let mut sizes = vec![0usize; count];
        for &l in &label {
            sizes[l as usize] += 1;
        }
        let mut best = 0;
        for (i, &s) in sizes.iter().enumerate() {
            if s > sizes[best] {
                best = i;
            }
        }
        self.nodes().filter(|u| label[u.index()] == best as u32).collect()
    }
}

pub(crate) fn check_node_count(node_count: usize) -> Result<()> {
    // u32::MAX is reserved as a sentinel by traversal scratch arrays.
    if node_count >= u32::MAX as usize {
        return Err(Error::Invariant(format!(
            "{node_count} nodes exceeds the 32-bit id space"
        )));
    }
    Ok(())
}

pub(crate) fn prefix_offsets(degree: &[usize]) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(degree.len() + 1);
    let mut acc = 0usize;
    offsets.push(0);
    for &d in degree {
        acc += d;
        offsets.push(acc);
    }
    offsets
}

/// Result of collapsing a graph by a node partition.
#[derive(Debug, Clone)]
pub struct Quotient<L> {
    pub graph: Graph,
    /// Partition label of each quotient node, indexed by quotient id.
    pub labels: Vec<L>,
    /// Nodes of the source graph without a partition label.
    pub excluded: usize,
}

/// Collapses each partition block to a single node of type `AS`.
///
/// `member_of[u]` is the label of node `u`, or `None` to exclude it. Quotient
/// ids follow ascending label order and names are the labels' `Display`
/// form. Intra-block edges vanish and parallel block edges merge.
pub fn quotient_by_partition<L>(g: &Graph, member_of: &[Option<L>]) -> Result<Quotient<L>>
where
    L: Ord + Clone + fmt::Display,
{
    if member_of.len() != g.node_count() {
        return Err(Error::PartitionLength {
            expected: g.node_count(),
            got: member_of.len(),
        });
    }
    let mut labels: Vec<L> = member_of.iter().flatten().cloned().collect();
    if labels.is_empty() {
        return Err(Error::EmptyPartition);
    }
    labels.sort();
    labels.dedup();
    let block: Vec<Option<u32>> = member_of
        .iter()
        .map(|m| {
            m.as_ref()
                .map(|l| labels.binary_search(l).expect("label collected above") as u32)
        })
        .collect();
    let excluded = block.iter().filter(|b| b.is_none()).count();

    let edges = g.edges().filter_map(|(u, v)| match (block[u.index()], block[v.index()]) {
        (Some(a), Some(b)) if a != b => Some((a, b)),
        _ => None,
    });
    let (graph, _) = Graph::from_edges(labels.len(), edges, SemanticType::AS)?;
    let mut names = SymbolTable::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        names.insert(NodeId(i as u32), l.to_string());
    }
    let graph = graph.with_names(names)?;
    Ok(Quotient {
        graph,
        labels,
        excluded,
    })
}
