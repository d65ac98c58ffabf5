//! Plain-text file formats.
//!
//! * graphs: a header line `n m` followed by `m` lines `u v` (0-indexed), or
//!   a single graph6 line (optionally preceded by the `>>graph6<<` header);
//! * colourings: lines `u v c`; for total colourings every edge appears
//!   exactly once, for partial ones absent edges are uncoloured;
//! * `f` tables: lines `m f(m)`;
//! * coloured cliques: `k r`, then a line of `k` vertex colours, then the
//!   `k(k-1)/2` lines `u v c`;
//! * copy hypergraphs (output only): one hyperedge per line, as
//!   space-separated vertex indices.
//!
//! Blank lines and lines starting with `#` are ignored everywhere. Errors
//! carry the 1-based line number.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::colouring::{EdgeColouring, PartialColouring};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::CopyHypergraph;
use crate::unavoidable::ColouredClique;

const GRAPH6_HEADER: &str = ">>graph6<<";

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn numbers(line: usize, text: &str, expect: usize) -> Result<Vec<usize>> {
    let parts: Vec<&str> = text.split_whitespace().collect();
    if parts.len() != expect {
        return Err(parse_err(
            line,
            format!("expected {expect} integers, found {} fields", parts.len()),
        ));
    }
    parts
        .iter()
        .map(|p| {
            p.parse::<usize>()
                .map_err(|_| parse_err(line, format!("`{p}` is not a non-negative integer")))
        })
        .collect()
}

fn looks_like_graph6(line: &str) -> bool {
    line.starts_with(GRAPH6_HEADER) || line.as_bytes().first().is_some_and(|&b| (63..=126).contains(&b))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (first_no, first) = lines.next().ok_or_else(|| parse_err(1, "empty graph file"))?;
    if looks_like_graph6(first) {
        return graph6_decode(first.strip_prefix(GRAPH6_HEADER).unwrap_or(first))
            .map_err(|e| match e {
                Error::Parse { message, .. } => parse_err(first_no, message),
                other => other,
            });
    }
    let header = numbers(first_no, first, 2)?;
    let (n, m) = (header[0], header[1]);
    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::new();
    for (no, line) in lines {
        if edges.len() == m {
            return Err(parse_err(no, format!("more than the declared {m} edges")));
        }
        let uv = numbers(no, line, 2)?;
        let (u, v) = (uv[0], uv[1]);
        if u >= n || v >= n {
            return Err(parse_err(no, format!("vertex index out of range 0..{n}")));
        }
        if u == v {
            return Err(parse_err(no, format!("self-loop at vertex {u}")));
        }
        if !seen.insert(crate::graph::normalise(u, v)) {
            return Err(parse_err(no, format!("duplicate edge ({u}, {v})")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(parse_err(
            first_no,
            format!("header declares {m} edges but {} were listed", edges.len()),
        ));
    }
    Graph::new(n, edges)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn graph6_decode(s: &str) -> Result<Graph> {
    let bytes = s.trim().as_bytes();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(parse_err(1, "graph6 string contains a byte outside 63..=126"));
    }
    let (n, rest) = match bytes {
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(parse_err(1, "truncated graph6 size field"));
            }
            let n = rest[..6].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &rest[6..])
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(parse_err(1, "truncated graph6 size field"));
            }
            let n = rest[..3].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &rest[3..])
        }
        [b, rest @ ..] => ((b - 63) as usize, rest),
        [] => return Err(parse_err(1, "empty graph6 string")),
    };
    let bits_needed = n * n.saturating_sub(1) / 2;
    if rest.len() != bits_needed.div_ceil(6) {
        return Err(parse_err(
            1,
            format!("graph6 body has {} bytes, expected {}", rest.len(), bits_needed.div_ceil(6)),
        ));
    }
    let bit = |k: usize| (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::new(n, edges)
}

pub fn graph6_encode(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Parses `u v c` lines; every listed pair must be an edge of `host`, and no
/// edge may be listed twice.
pub fn parse_partial_colouring(host: &Graph, r: usize, text: &str) -> Result<PartialColouring> {
    let mut colours = vec![None; host.m()];
    for (no, line) in content_lines(text) {
        let f = numbers(no, line, 3)?;
        let (u, v, c) = (f[0], f[1], f[2]);
        if u >= host.n() || v >= host.n() {
            return Err(parse_err(no, format!("vertex index out of range 0..{}", host.n())));
        }
        let id = host
            .edge_id(u, v)
            .ok_or_else(|| parse_err(no, format!("({u}, {v}) is not an edge of the graph")))?;
        if c >= r {
            return Err(parse_err(no, format!("colour {c} out of range 0..{r}")));
        }
        if colours[id].replace(c as u8).is_some() {
            return Err(parse_err(no, format!("edge ({u}, {v}) coloured twice")));
        }
    }
    PartialColouring::new(host, r, colours)
}

pub fn parse_colouring(host: &Graph, r: usize, text: &str) -> Result<EdgeColouring> {
    let partial = parse_partial_colouring(host, r, text)?;
    if let Some(id) = partial.entries().iter().position(Option::is_none) {
        let (u, v) = host.edge(id);
        return Err(parse_err(
            text.lines().count().max(1),
            format!("edge ({u}, {v}) has no colour"),
        ));
    }
    partial.to_total(host)
}

pub fn write_colouring(host: &Graph, c: &EdgeColouring) -> String {
    let mut out = String::new();
    for (id, &(u, v)) in host.edges().iter().enumerate() {
        let _ = writeln!(out, "{u} {v} {}", c.get(id));
    }
    out
}

pub fn write_partial_colouring(host: &Graph, c: &PartialColouring) -> String {
    let mut out = String::new();
    for (id, &(u, v)) in host.edges().iter().enumerate() {
        if let Some(col) = c.get(id) {
            let _ = writeln!(out, "{u} {v} {col}");
        }
    }
    out
}

/// `m f(m)` lines.
pub fn parse_f_table(text: &str) -> Result<BTreeMap<usize, usize>> {
    let mut table = BTreeMap::new();
    for (no, line) in content_lines(text) {
        let f = numbers(no, line, 2)?;
        if table.insert(f[0], f[1]).is_some() {
            return Err(parse_err(no, format!("multiplicity {} listed twice", f[0])));
        }
    }
    Ok(table)
}

/// A single `u v` edge.
pub fn parse_edge(text: &str) -> Result<(usize, usize)> {
    let f = numbers(1, text, 2)?;
    Ok((f[0], f[1]))
}

pub fn parse_coloured_clique(text: &str) -> Result<ColouredClique> {
    let mut lines = content_lines(text);
    let (hno, header) = lines.next().ok_or_else(|| parse_err(1, "empty clique file"))?;
    let h = numbers(hno, header, 2)?;
    let (k, r) = (h[0], h[1]);
    if r == 0 || r > u8::MAX as usize {
        return Err(parse_err(hno, format!("colour count {r} out of range 1..=255")));
    }
    let vcol = if k == 0 {
        Vec::new()
    } else {
        let (vno, vline) = lines
            .next()
            .ok_or_else(|| parse_err(hno + 1, "missing vertex colour line"))?;
        let v = numbers(vno, vline, k)?;
        if let Some(c) = v.iter().find(|&&c| c >= r) {
            return Err(parse_err(vno, format!("vertex colour {c} out of range 0..{r}")));
        }
        v.into_iter().map(|c| c as u8).collect()
    };
    let mut ecol = vec![None; k * k.saturating_sub(1) / 2];
    for (no, line) in lines {
        let f = numbers(no, line, 3)?;
        let (u, v, c) = (f[0], f[1], f[2]);
        if u >= k || v >= k || u == v {
            return Err(parse_err(no, format!("pair ({u}, {v}) invalid for {k} vertices")));
        }
        if c >= r {
            return Err(parse_err(no, format!("colour {c} out of range 0..{r}")));
        }
        let idx = ColouredClique::pair_index(k, u, v);
        if ecol[idx].replace(c as u8).is_some() {
            return Err(parse_err(no, format!("pair ({u}, {v}) coloured twice")));
        }
    }
    let ecol = ecol
        .into_iter()
        .collect::<Option<Vec<u8>>>()
        .ok_or_else(|| parse_err(text.lines().count().max(1), "some pairs have no colour"))?;
    ColouredClique::new(r, vcol, ecol)
}

pub fn write_coloured_clique(p: &ColouredClique) -> String {
    let k = p.k();
    let mut out = format!("{k} {}\n", p.r());
    let vc: Vec<String> = p.vertex_colours().iter().map(u8::to_string).collect();
    if k > 0 {
        out.push_str(&vc.join(" "));
        out.push('\n');
    }
    for u in 0..k {
        for v in u + 1..k {
            let _ = writeln!(out, "{u} {v} {}", p.edge_colour(u, v));
        }
    }
    out
}

pub fn write_hypergraph(h: &CopyHypergraph) -> String {
    let mut out = String::new();
    for e in h.hyperedges() {
        let line: Vec<String> = e.iter().map(usize::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::friendship(2);
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn graph6_known_strings() {
        // K_4 is "C~", the 5-cycle is "Dhc"
        assert_eq!(graph6_encode(&Graph::complete(4)), "C~");
        assert_eq!(graph6_decode("C~").unwrap(), Graph::complete(4));
        assert_eq!(graph6_encode(&Graph::cycle(5)), "Dhc");
        assert_eq!(parse_graph(">>graph6<<Dhc\n").unwrap(), Graph::cycle(5));
    }

    #[test]
    fn graph6_large_size_field() {
        let g = Graph::path(70);
        assert_eq!(graph6_decode(&graph6_encode(&g)).unwrap(), g);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match parse_graph("3 2\n0 1\n1 5\n") {
            Err(Error::Parse { line: 3, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_graph("3 2\n0 1\n") {
            Err(Error::Parse { line: 1, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        let k3 = Graph::complete(3);
        match parse_colouring(&k3, 2, "0 1 0\n# note\n0 2 7\n1 2 0\n") {
            Err(Error::Parse { line: 3, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_colouring(&k3, 2, "0 1 0\n0 2 1\n").is_err());
        assert!(parse_partial_colouring(&Graph::path(3), 2, "0 2 1\n").is_err());
    }

    #[test]
    fn colourings_round_trip() {
        let k3 = Graph::complete(3);
        let c = EdgeColouring::new(&k3, 2, vec![1, 0, 1]).unwrap();
        assert_eq!(parse_colouring(&k3, 2, &write_colouring(&k3, &c)).unwrap(), c);
        let p = parse_partial_colouring(&k3, 2, "1 2 1\n").unwrap();
        assert_eq!(p.entries(), &[None, None, Some(1)]);
    }

    #[test]
    fn clique_format() {
        let p = ColouredClique::new(2, vec![0, 0], vec![1]).unwrap();
        let text = write_coloured_clique(&p);
        assert_eq!(text, "2 2\n0 0\n0 1 1\n");
        assert_eq!(parse_coloured_clique(&text).unwrap(), p);
        assert!(parse_coloured_clique("2 2\n0 0\n").is_err());
    }
}
