//! Simple undirected graphs on vertices `0..n`.
//!
//! Edges are stored as ordered pairs `(u, v)` with `u < v`, sorted
//! lexicographically. The position of an edge in that list is its *edge id*;
//! colourings and copy hypergraphs are indexed by edge id.

use std::collections::VecDeque;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An unordered edge, always normalised so that `.0 < .1`.
pub type Edge = (usize, usize);

const NO_EDGE: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "GraphRepr", try_from = "GraphRepr")]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
    /// `ids[u * n + v]` is the edge id of `{u, v}` or `NO_EDGE`.
    ids: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<Edge>,
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        Self { n: g.n, edges: g.edges }
    }
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;

    fn try_from(r: GraphRepr) -> Result<Self> {
        Graph::new(r.n, r.edges)
    }
}

#[inline]
pub fn normalise(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicates and out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            list.push(normalise(u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        Ok(Self::from_sorted(n, list))
    }

    fn from_sorted(n: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        let mut ids = vec![NO_EDGE; n * n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            adj[u].push(v);
            adj[v].push(u);
            ids[u * n + v] = id as u32;
            ids[v * n + u] = id as u32;
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Self { n, edges, adj, ids }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    pub fn complete(n: usize) -> Self {
        Self::from_sorted(n, (0..n).tuple_combinations().collect())
    }

    /// The cycle `0 - 1 - ... - (n-1) - 0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
    }

    /// The path on `n` vertices (so `n - 1` edges). `path(3)` is P_3.
    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
    }

    /// `k` triangles sharing the single vertex 0.
    pub fn friendship(k: usize) -> Self {
        let mut edges = Vec::with_capacity(3 * k);
        for i in 0..k {
            let (a, b) = (2 * i + 1, 2 * i + 2);
            edges.extend([(0, a), (0, b), (a, b)]);
        }
        Self::new(2 * k + 1, edges).expect("friendship graph is simple")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        Self::new(a + b, (0..a).cartesian_product(a..a + b)).expect("simple")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    #[inline]
    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        match self.ids[u * self.n + v] {
            NO_EDGE => None,
            id => Some(id as usize),
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_id(u, v).is_some()
    }

    #[inline]
    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Minimum degree together with the first vertex attaining it.
    pub fn min_degree(&self) -> Option<(usize, usize)> {
        (0..self.n).map(|v| (self.degree(v), v)).min()
    }

    pub fn without_edge(&self, id: usize) -> Self {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != id)
            .map(|(_, &e)| e)
            .collect();
        Self::from_sorted(self.n, edges)
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        Self::new(self.n, self.edges.iter().copied().chain([(u, v)]))
    }

    /// Subgraph induced by `keep` (listed in increasing order); vertex `i` of
    /// the result is `keep[i]`.
    pub fn induced(&self, keep: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|&(u, v)| normalise(pos[u], pos[v]))
            .collect();
        Self::new(keep.len(), edges).expect("induced subgraph of a simple graph")
    }

    /// Connectivity of the subgraph induced by vertices with `alive[v]`.
    /// Zero or one live vertex counts as connected.
    pub fn is_connected_on(&self, alive: &[bool]) -> bool {
        let Some(start) = (0..self.n).find(|&v| alive[v]) else {
            return true;
        };
        let mut seen = vec![false; self.n];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if alive[w] && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == alive.iter().filter(|&&a| a).count()
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_on(&vec![true; self.n])
    }

    /// Whether the subgraph induced by `members` is bipartite. Edgeless and
    /// empty vertex sets are bipartite.
    pub fn is_bipartite_on(&self, members: &[bool]) -> bool {
        let mut side = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if !members[s] || side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !members[w] {
                        continue;
                    }
                    if side[w] == u8::MAX {
                        side[w] = side[u] ^ 1;
                        queue.push_back(w);
                    } else if side[w] == side[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Trees are connected, acyclic and non-empty.
    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.m() + 1 == self.n && self.is_connected()
    }

    /// Canonical form under vertex relabelling: the lexicographically least
    /// sorted edge list over all relabellings that order vertices by
    /// non-increasing degree. Exponential; intended for graphs up to about
    /// ten vertices.
    pub fn canonical_form(&self) -> CanonicalGraph {
        let mut by_degree: Vec<usize> = (0..self.n).collect();
        by_degree.sort_by_key(|&v| std::cmp::Reverse(self.degree(v)));
        let classes: Vec<Vec<usize>> = by_degree
            .iter()
            .copied()
            .chunk_by(|&v| self.degree(v))
            .into_iter()
            .map(|(_, c)| c.collect())
            .collect();
        let mut best: Option<Vec<Edge>> = None;
        for_each_class_permutation(&classes, |order| {
            let mut label = vec![0; self.n];
            for (i, &v) in order.iter().enumerate() {
                label[v] = i;
            }
            let mut relabelled: Vec<Edge> = self
                .edges
                .iter()
                .map(|&(u, v)| normalise(label[u], label[v]))
                .collect();
            relabelled.sort_unstable();
            if best.as_ref().is_none_or(|b| relabelled < *b) {
                best = Some(relabelled);
            }
        });
        CanonicalGraph {
            n: self.n,
            edges: best.unwrap_or_default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalGraph {
    pub n: usize,
    pub edges: Vec<Edge>,
}

/// Calls `f` with every concatenation of permutations of the given classes.
pub(crate) fn for_each_class_permutation(classes: &[Vec<usize>], mut f: impl FnMut(&[usize])) {
    fn rec(classes: &[Vec<usize>], prefix: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        match classes.split_first() {
            None => f(prefix),
            Some((first, rest)) => {
                for perm in first.iter().copied().permutations(first.len()) {
                    let len = prefix.len();
                    prefix.extend(perm);
                    rec(rest, prefix, f);
                    prefix.truncate(len);
                }
            }
        }
    }
    rec(classes, &mut Vec::new(), &mut f);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::new(3, [(0, 0)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn edge_ids_follow_lexicographic_order() {
        let g = Graph::new(4, [(2, 3), (1, 0), (0, 2)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (2, 3)]);
        assert_eq!(g.edge_id(3, 2), Some(2));
        assert_eq!(g.edge_id(1, 2), None);
    }

    #[test]
    fn named_graphs() {
        assert_eq!(Graph::complete(6).m(), 15);
        assert_eq!(Graph::cycle(5).m(), 5);
        assert_eq!(Graph::path(3).m(), 2);
        let f2 = Graph::friendship(2);
        assert_eq!((f2.n(), f2.m()), (5, 6));
        assert!(Graph::path(4).is_tree());
        assert!(!Graph::cycle(4).is_tree());
    }

    #[test]
    fn canonical_form_identifies_relabellings() {
        let a = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let b = Graph::new(4, [(2, 0), (0, 3), (3, 1)]).unwrap();
        let c = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(a.canonical_form(), b.canonical_form());
        assert_ne!(a.canonical_form(), c.canonical_form());
    }

    #[test]
    fn bipartite_and_connectivity_on_subsets() {
        let c5 = Graph::cycle(5);
        assert!(!c5.is_bipartite_on(&[true; 5]));
        assert!(c5.is_bipartite_on(&[true, true, true, true, false]));
        assert!(c5.is_connected_on(&[true, true, true, false, false]));
        assert!(!c5.is_connected_on(&[false, true, false, true, true]));
        assert!(c5.is_connected_on(&[false; 5]));
    }
}
