//! Reader for ITDK-style topology files and the two channels built from
//! them: the device graph and its AS quotient.
//!
//! ```text
//! nodes:    node N1:  1.2.3.4 5.6.7.8
//! links:    link L7:  N1:1.2.3.4 N2 N3
//! node.AS:  node.AS N1 7018 refinement
//! ```
//!
//! Node names match `N[0-9]+` and ids are assigned in order of first
//! appearance (nodes file, then links file). Addresses stay in the symbol
//! table and never become graph nodes.

use std::collections::HashMap;
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use log::warn;

use crate::error::{Error, Result};
use crate::graph::{quotient_by_partition, Graph, NodeId, SemanticType, SymbolTable};

/// Autonomous System number. Displays as `AS<number>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Asn(pub u32);

impl fmt::Display for Asn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AS{}", self.0)
    }
}

/// Paths of one ITDK snapshot. The node-to-AS file is optional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ItdkBundle {
    pub nodes_path: PathBuf,
    pub links_path: PathBuf,
    pub node_as_path: Option<PathBuf>,
}

impl ItdkBundle {
    pub fn new(nodes: impl Into<PathBuf>, links: impl Into<PathBuf>, node_as: Option<PathBuf>) -> Self {
        ItdkBundle {
            nodes_path: nodes.into(),
            links_path: links.into(),
            node_as_path: node_as,
        }
    }

    pub fn parse(&self) -> Result<ParsedItdk> {
        let mut parsed = ParsedItdk::default();
        with_file(&self.nodes_path, |r| parsed.read_nodes(r))?;
        with_file(&self.links_path, |r| parsed.read_links(r))?;
        if let Some(path) = &self.node_as_path {
            with_file(path, |r| parsed.read_node_as(r))?;
        }
        Ok(parsed)
    }
}

/// Free-function form of [`ItdkBundle::parse`].
pub fn parse_itdk(bundle: &ItdkBundle) -> Result<ParsedItdk> {
    bundle.parse()
}

fn with_file(path: &Path, f: impl FnOnce(BufReader<File>) -> Result<()>) -> Result<()> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    f(BufReader::new(file)).map_err(|e| match e {
        e @ Error::Io { .. } => e,
        other => Error::InFile {
            path: path.to_path_buf(),
            source: Box::new(other),
        },
    })
}

fn is_node_name(s: &str) -> bool {
    s.len() > 1 && s.starts_with('N') && s[1..].bytes().all(|b| b.is_ascii_digit())
}

fn each_line<R: BufRead>(reader: R, mut f: impl FnMut(usize, &str) -> Result<()>) -> Result<()> {
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        f(i + 1, t)?;
    }
    Ok(())
}

/// Parsed contents of an ITDK bundle.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParsedItdk {
    names: Vec<String>,
    index: HashMap<String, u32>,
    addresses: Vec<Vec<String>>,
    link_offsets: Vec<usize>,
    link_members: Vec<u32>,
    asn: Vec<Option<Asn>>,
    /// Non-fatal problems, e.g. conflicting AS assignments.
    pub warnings: Vec<String>,
}

impl ParsedItdk {
    fn intern(&mut self, name: &str) -> u32 {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = self.names.len() as u32;
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        self.addresses.push(Vec::new());
        self.asn.push(None);
        id
    }

    pub fn read_nodes<R: BufRead>(&mut self, reader: R) -> Result<()> {
        each_line(reader, |line, text| {
            let mut toks = text.split_whitespace();
            if toks.next() != Some("node") {
                return Err(Error::parse(line, format!("expected \"node <NAME>:\", got {text:?}")));
            }
            let raw = toks
                .next()
                .ok_or_else(|| Error::parse(line, "missing node name"))?;
            let name = raw.strip_suffix(':').unwrap_or(raw);
            if !is_node_name(name) {
                return Err(Error::parse(line, format!("malformed node name {raw:?}")));
            }
            let id = self.intern(name);
            self.addresses[id as usize].extend(toks.map(str::to_string));
            Ok(())
        })
    }

    pub fn read_links<R: BufRead>(&mut self, reader: R) -> Result<()> {
        if self.link_offsets.is_empty() {
            self.link_offsets.push(0);
        }
        let mut members = Vec::new();
        each_line(reader, |line, text| {
            let mut toks = text.split_whitespace();
            if toks.next() != Some("link") {
                return Err(Error::parse(line, format!("expected \"link <NAME>:\", got {text:?}")));
            }
            toks.next()
                .ok_or_else(|| Error::parse(line, "missing link name"))?;
            members.clear();
            for tok in toks {
                let name = tok.split_once(':').map_or(tok, |(n, _)| n);
                if !is_node_name(name) {
                    return Err(Error::parse(line, format!("malformed node name {tok:?}")));
                }
                members.push(self.intern(name));
            }
            members.sort_unstable();
            members.dedup();
            if members.len() < 2 {
                return Err(Error::parse(
                    line,
                    format!("link needs at least 2 distinct members, got {}", members.len()),
                ));
            }
            self.link_members.extend_from_slice(&members);
            self.link_offsets.push(self.link_members.len());
            Ok(())
        })
    }

    pub fn read_node_as<R: BufRead>(&mut self, reader: R) -> Result<()> {
        let mut warnings = Vec::new();
        each_line(reader, |line, text| {
            let mut toks = text.split_whitespace();
            if toks.next() != Some("node.AS") {
                return Err(Error::parse(
                    line,
                    format!("expected \"node.AS <NAME> <ASN>\", got {text:?}"),
                ));
            }
            let (Some(name), Some(asn)) = (toks.next(), toks.next()) else {
                return Err(Error::parse(line, format!("truncated node.AS line {text:?}")));
            };
            if !is_node_name(name) {
                return Err(Error::parse(line, format!("malformed node name {name:?}")));
            }
            let asn = match asn.parse::<u32>() {
                Ok(a) if a > 0 => Asn(a),
                _ => return Err(Error::parse(line, format!("invalid AS number {asn:?}"))),
            };
            let Some(&id) = self.index.get(name) else {
                warnings.push(format!("line {line}: AS assignment for unknown node {name} ignored"));
                return Ok(());
            };
            match self.asn[id as usize] {
                None => self.asn[id as usize] = Some(asn),
                Some(prev) if prev != asn => warnings.push(format!(
                    "line {line}: {name} already in {prev}, ignoring {asn}"
                )),
                Some(_) => {}
            }
            Ok(())
        })?;
        for w in &warnings {
            warn!("{w}");
        }
        self.warnings.extend(warnings);
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn link_count(&self) -> usize {
        self.link_offsets.len().saturating_sub(1)
    }

    /// Member ids of each link, ascending within a link.
    pub fn links(&self) -> impl Iterator<Item = &[u32]> + '_ {
        self.link_offsets
            .windows(2)
            .map(|w| &self.link_members[w[0]..w[1]])
    }

    pub fn id(&self, name: &str) -> Option<NodeId> {
        self.index.get(name).map(|&i| NodeId(i))
    }

    pub fn name(&self, id: NodeId) -> &str {
        &self.names[id.index()]
    }

    pub fn addresses(&self, id: NodeId) -> &[String] {
        &self.addresses[id.index()]
    }

    pub fn asn(&self, id: NodeId) -> Option<Asn> {
        self.asn[id.index()]
    }

    pub fn assignments(&self) -> &[Option<Asn>] {
        &self.asn
    }

    pub fn assigned_count(&self) -> usize {
        self.asn.iter().flatten().count()
    }

    fn symbol_table(&self) -> SymbolTable {
        let mut table = SymbolTable::with_capacity(self.names.len());
        for (i, n) in self.names.iter().enumerate() {
            table.insert(NodeId(i as u32), n.clone());
        }
        table
    }
}

/// Device channel: every link becomes a clique on its members.
pub fn build_device_graph(parsed: &ParsedItdk) -> Result<Graph> {
    let edges = parsed.links().flat_map(|members| {
        members
            .iter()
            .enumerate()
            .flat_map(move |(i, &u)| members[i + 1..].iter().map(move |&v| (u, v)))
    });
    let (graph, _) = Graph::from_edges(parsed.node_count(), edges, SemanticType::Device)?;
    graph.with_names(parsed.symbol_table())
}

/// AS channel of an ITDK snapshot.
#[derive(Debug, Clone)]
pub struct AsChannel {
    pub graph: Graph,
    /// AS number of each AS-graph node, ascending.
    pub asns: Vec<Asn>,
    /// Devices without an AS assignment, left out of the quotient.
    pub excluded: usize,
}

/// AS channel: the device graph collapsed by AS membership. Unassigned
/// devices are excluded rather than pooled.
pub fn build_as_graph(parsed: &ParsedItdk, device_graph: &Graph) -> Result<AsChannel> {
    let q = quotient_by_partition(device_graph, parsed.assignments())?;
    Ok(AsChannel {
        graph: q.graph,
        asns: q.labels,
        excluded: q.excluded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(nodes: &str, links: &str, node_as: &str) -> Result<ParsedItdk> {
        let mut p = ParsedItdk::default();
        p.read_nodes(nodes.as_bytes())?;
        p.read_links(links.as_bytes())?;
        p.read_node_as(node_as.as_bytes())?;
        Ok(p)
    }

    #[test]
    fn grammar_lines() {
        let p = parse(
            "# header\nnode N1:  1.2.3.4 5.6.7.8\n",
            "link L7:  N1:1.2.3.4 N2 N3\n",
            "node.AS N1 7018 refinement\n",
        )
        .unwrap();
        assert_eq!(p.node_count(), 3);
        assert_eq!(p.addresses(p.id("N1").unwrap()), ["1.2.3.4", "5.6.7.8"]);
        let links: Vec<&[u32]> = p.links().collect();
        assert_eq!(links, vec![&[0u32, 1, 2][..]]);
        assert_eq!(p.asn(p.id("N1").unwrap()), Some(Asn(7018)));
        assert_eq!(p.asn(p.id("N2").unwrap()), None);
    }

    #[test]
    fn two_member_links_are_edges() {
        let p = parse("", "link L1: N1 N2\nlink L2: N2 N3\n", "").unwrap();
        let g = build_device_graph(&p).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (3, 2));
        assert_eq!(g.degree(p.id("N2").unwrap()), 2);
        assert_eq!(g.names().unwrap().name(NodeId(2)), Some("N3"));
        assert_eq!(g.node_type(NodeId(0)), SemanticType::Device);
    }

    #[test]
    fn multi_member_link_is_clique() {
        let p = parse("", "link L1: N1 N2 N3\n", "").unwrap();
        let g = build_device_graph(&p).unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn repeated_links_dedupe() {
        let p = parse("", "link L1: N1 N2\nlink L2: N2:9.9.9.9 N1\n", "").unwrap();
        assert_eq!(build_device_graph(&p).unwrap().edge_count(), 1);
    }

    #[test]
    fn malformed_inputs() {
        let err = parse("node X1: 1.2.3.4\n", "", "").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
        let err = parse("", "link L1: N1 N1:1.1.1.1\n", "").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
        let err = parse("", "link L1: N1 N2 router\n", "").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
        let err = parse("node N1:\n", "", "node.AS N1 0 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
        let err = parse("node N1:\n", "", "\nnode.AS N1 -5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        assert!(parse("nodes N1:\n", "", "").is_err());
    }

    #[test]
    fn conflicting_assignment_first_wins() {
        let p = parse(
            "node N1:\n",
            "",
            "node.AS N1 100 a\nnode.AS N1 100 b\nnode.AS N1 200 c\nnode.AS N9 5\n",
        )
        .unwrap();
        assert_eq!(p.asn(NodeId(0)), Some(Asn(100)));
        assert_eq!(p.warnings.len(), 2);
        assert_eq!(p.node_count(), 1);
    }

    #[test]
    fn as_quotient() {
        let p = parse(
            "",
            "link L1: N1 N3\nlink L2: N1 N2\n",
            "node.AS N1 100\nnode.AS N2 100\nnode.AS N3 200\n",
        )
        .unwrap();
        let dev = build_device_graph(&p).unwrap();
        let as_ch = build_as_graph(&p, &dev).unwrap();
        assert_eq!(as_ch.graph.node_count(), 2);
        assert_eq!(as_ch.graph.edge_count(), 1);
        assert_eq!(as_ch.asns, vec![Asn(100), Asn(200)]);
        assert_eq!(as_ch.graph.names().unwrap().name(NodeId(1)), Some("AS200"));
        assert_eq!(as_ch.graph.node_type(NodeId(0)), SemanticType::AS);
        assert_eq!(as_ch.excluded, 0);
    }

    #[test]
    fn single_as_and_unassigned() {
        let p = parse("", "link L1: N1 N2\nlink L2: N3 N4\n", "node.AS N1 1\nnode.AS N2 1\n").unwrap();
        let dev = build_device_graph(&p).unwrap();
        let as_ch = build_as_graph(&p, &dev).unwrap();
        assert_eq!((as_ch.graph.node_count(), as_ch.graph.edge_count()), (1, 0));
        assert_eq!(as_ch.excluded, 2);

        let none = parse("", "link L1: N1 N2\n", "").unwrap();
        let dev = build_device_graph(&none).unwrap();
        assert!(matches!(build_as_graph(&none, &dev), Err(Error::EmptyPartition)));
    }
}
