//! Edge-list interchange format and its name/type sidecars.
//!
//! ```text
//! # optional comments
//! 4          <- node count
//! 0 1        <- one undirected edge per line
//! 0 3
//! ```
//!
//! The header may be omitted, in which case the node count is one more than
//! the largest id referenced. Output is always canonical: header, then
//! `u v` with `u < v` in lexicographic order, LF endings.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use log::warn;

use crate::error::{Error, Result};
use crate::graph::{BuildStats, Graph, NodeId, SemanticType, SymbolTable};

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines<R: BufRead>(reader: R) -> impl Iterator<Item = Result<(usize, String)>> {
    reader.lines().enumerate().filter_map(|(i, line)| match line {
        Err(e) => Some(Err(Error::Stream(e))),
        Ok(line) => {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                None
            } else {
                Some(Ok((i + 1, t.to_string())))
            }
        }
    })
}

fn parse_id(tok: &str, line: usize) -> Result<u32> {
    tok.parse::<u32>()
        .map_err(|_| Error::parse(line, format!("invalid node id {tok:?}")))
}

/// Reads an edge list, returning the graph and what canonicalization dropped.
pub fn read_graph<R: BufRead>(reader: R, default_type: SemanticType) -> Result<(Graph, BuildStats)> {
    let mut declared: Option<usize> = None;
    let mut seen_any = false;
    let mut max_id: Option<u32> = None;
    let mut edges = Vec::new();

    for item in content_lines(reader) {
        let (line, text) = item?;
        let toks: Vec<&str> = text.split_whitespace().collect();
        if !seen_any {
            seen_any = true;
            if toks.len() == 1 {
                let n = toks[0]
                    .parse::<usize>()
                    .map_err(|_| Error::parse(line, format!("invalid node count {:?}", toks[0])))?;
                declared = Some(n);
                continue;
            }
        }
        if toks.len() != 2 {
            return Err(Error::parse(line, format!("expected \"u v\", got {text:?}")));
        }
        let u = parse_id(toks[0], line)?;
        let v = parse_id(toks[1], line)?;
        if let Some(n) = declared {
            if let Some(&bad) = [u, v].iter().find(|&&id| id as usize >= n) {
                return Err(Error::parse(
                    line,
                    format!("node id {bad} out of declared range 0..{n}"),
                ));
            }
        }
        max_id = max_id.max(Some(u.max(v)));
        edges.push((u, v));
    }
    if !seen_any {
        return Err(Error::EmptyInput);
    }
    let node_count = declared.unwrap_or_else(|| max_id.map_or(0, |m| m as usize + 1));
    let (graph, stats) = Graph::from_edges(node_count, edges, default_type)?;
    if stats.dropped() > 0 {
        warn!(
            "dropped {} self-loop(s) and {} duplicate edge(s)",
            stats.self_loops_dropped, stats.duplicates_dropped
        );
    }
    Ok((graph, stats))
}

/// Loads a graph file. Nodes default to type `Lattice` unless a type
/// sidecar is applied afterwards with [`load_types`].
pub fn load_graph(path: impl AsRef<Path>) -> Result<Graph> {
    load_graph_with_stats(path).map(|(g, _)| g)
}

pub fn load_graph_with_stats(path: impl AsRef<Path>) -> Result<(Graph, BuildStats)> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_graph(BufReader::new(file), SemanticType::Lattice)
}

pub fn write_graph<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{}", g.node_count())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()
}

pub fn save_graph(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_graph(g, BufWriter::new(file)).map_err(|e| Error::io(path, e))
}

/// Reads `id name` lines.
pub fn read_names<R: BufRead>(reader: R, node_count: usize) -> Result<SymbolTable> {
    let mut table = SymbolTable::with_capacity(node_count);
    for item in content_lines(reader) {
        let (line, text) = item?;
        let mut toks = text.split_whitespace();
        let (Some(id), Some(name), None) = (toks.next(), toks.next(), toks.next()) else {
            return Err(Error::parse(line, format!("expected \"id name\", got {text:?}")));
        };
        let id = parse_id(id, line)?;
        if id as usize >= node_count {
            return Err(Error::parse(line, format!("node id {id} out of range 0..{node_count}")));
        }
        table.insert(NodeId(id), name);
    }
    Ok(table)
}

pub fn write_names<W: Write>(names: &SymbolTable, mut out: W) -> std::io::Result<()> {
    for (id, name) in names.iter() {
        writeln!(out, "{id} {name}")?;
    }
    out.flush()
}

/// Reads `id type` lines. Nodes not listed keep `default`.
pub fn read_types<R: BufRead>(
    reader: R,
    node_count: usize,
    default: SemanticType,
) -> Result<Vec<SemanticType>> {
    let mut types = vec![default; node_count];
    for item in content_lines(reader) {
        let (line, text) = item?;
        let mut toks = text.split_whitespace();
        let (Some(id), Some(tag), None) = (toks.next(), toks.next(), toks.next()) else {
            return Err(Error::parse(line, format!("expected \"id type\", got {text:?}")));
        };
        let id = parse_id(id, line)?;
        if id as usize >= node_count {
            return Err(Error::parse(line, format!("node id {id} out of range 0..{node_count}")));
        }
        types[id as usize] = tag.parse().map_err(|e: String| Error::parse(line, e))?;
    }
    Ok(types)
}

pub fn write_types<W: Write>(types: &[SemanticType], mut out: W) -> std::io::Result<()> {
    for (id, t) in types.iter().enumerate() {
        writeln!(out, "{id} {t}")?;
    }
    out.flush()
}

/// Attaches a name sidecar to a loaded graph.
pub fn load_names(g: Graph, path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let names = read_names(BufReader::new(file), g.node_count())?;
    g.with_names(names)
}

/// Attaches a type sidecar to a loaded graph; unlisted nodes become `Device`.
pub fn load_types(g: Graph, path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let types = read_types(BufReader::new(file), g.node_count(), SemanticType::Device)?;
    g.with_types(types)
}

pub fn save_names(names: &SymbolTable, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_names(names, BufWriter::new(file)).map_err(|e| Error::io(path, e))
}

pub fn save_types(types: &[SemanticType], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_types(types, BufWriter::new(file)).map_err(|e| Error::io(path, e))
}
