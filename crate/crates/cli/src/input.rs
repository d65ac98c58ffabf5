use std::path::Path;

use ramsey_lab::format::{parse_coloured_clique, parse_colouring, parse_f_table, parse_graph, parse_partial_colouring};
use ramsey_lab::{CopyHypergraph, EdgeColouring, Graph, PartialColouring};
use ramsey_lab::unavoidable::ColouredClique;

use crate::report::Failure;

pub fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::io(path, e))
}

pub fn graph(path: &Path) -> Result<Graph, Failure> {
    parse_graph(&read(path)?).map_err(|e| Failure::in_file(path, e))
}

pub fn colouring(host: &Graph, r: usize, path: &Path) -> Result<EdgeColouring, Failure> {
    parse_colouring(host, r, &read(path)?).map_err(|e| Failure::in_file(path, e))
}

pub fn partial_colouring(host: &Graph, r: usize, path: &Path) -> Result<PartialColouring, Failure> {
    parse_partial_colouring(host, r, &read(path)?).map_err(|e| Failure::in_file(path, e))
}

pub fn coloured_clique(path: &Path) -> Result<ColouredClique, Failure> {
    parse_coloured_clique(&read(path)?).map_err(|e| Failure::in_file(path, e))
}

pub fn f_table(path: &Path) -> Result<std::collections::BTreeMap<usize, usize>, Failure> {
    parse_f_table(&read(path)?).map_err(|e| Failure::in_file(path, e))
}

/// One hyperedge per line as vertex indices; the vertex count is one more
/// than the largest index.
pub fn hypergraph(path: &Path) -> Result<CopyHypergraph, Failure> {
    let text = read(path)?;
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let edge = line
            .split_whitespace()
            .map(str::parse::<usize>)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Failure::usage(format!("{}: line {}: {e}", path.display(), i + 1)))?;
        edges.push(edge);
    }
    let n = edges.iter().flatten().max().map_or(0, |&m| m + 1);
    CopyHypergraph::from_hyperedges(n, edges).map_err(|e| Failure::in_file(path, e))
}
