//! The copy hypergraph `H(G)`, its girth, and 3-chromatic connectivity.
//!
//! Girth follows Berge's convention: a cycle of length `k >= 3` is a cyclic
//! sequence of pairwise distinct hyperedges `e_1..e_k` with pairwise distinct
//! link vertices `x_i ∈ e_i ∩ e_{i+1}`; two hyperedges sharing two or more
//! vertices form a cycle of length 2. Such cycles are exactly the cycles of
//! length `2k` in the bipartite vertex/hyperedge incidence graph, so the
//! girth is half the incidence girth, found by BFS from every node.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::copies::enumerate_copies;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CopyHypergraph {
    num_vertices: usize,
    /// For copy hypergraphs, vertex `i` is edge `i` of the host graph.
    labels: Option<Vec<Edge>>,
    hyperedges: Vec<Vec<usize>>,
}

impl CopyHypergraph {
    /// A hypergraph given directly by its hyperedges; checks uniformity,
    /// distinctness and range.
    pub fn from_hyperedges(num_vertices: usize, hyperedges: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        let size = hyperedges.first().map(Vec::len);
        let mut normalised = Vec::with_capacity(hyperedges.len());
        for (i, mut e) in hyperedges.into_iter().enumerate() {
            e.sort_unstable();
            if Some(e.len()) != size {
                return Err(Error::InvalidGraph(format!("hyperedge {i} breaks uniformity")));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!("hyperedge {i} repeats a vertex")));
            }
            if e.iter().any(|&x| x >= num_vertices) {
                return Err(Error::InvalidGraph(format!("hyperedge {i} has a vertex out of range")));
            }
            if !seen.insert(e.clone()) {
                return Err(Error::InvalidGraph(format!("hyperedge {i} is a duplicate")));
            }
            normalised.push(e);
        }
        Ok(Self {
            num_vertices,
            labels: None,
            hyperedges: normalised,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn hyperedges(&self) -> &[Vec<usize>] {
        &self.hyperedges
    }

    /// Host edges behind the vertices, for copy hypergraphs.
    pub fn labels(&self) -> Option<&[Edge]> {
        self.labels.as_deref()
    }

    pub fn is_linear(&self) -> bool {
        !matches!(girth(self), Girth::Finite(2))
    }
}

/// `H(G)` for pattern `h`: one hyperedge per copy, in copy order.
pub fn build_copy_hypergraph(h: &Graph, g: &Graph) -> Result<CopyHypergraph> {
    if h.m() == 0 {
        return Err(Error::Precondition("pattern graph has no edges".into()));
    }
    Ok(CopyHypergraph {
        num_vertices: g.m(),
        labels: Some(g.edges().to_vec()),
        hyperedges: enumerate_copies(h, g).into_iter().map(|c| c.edges).collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    /// Whether the girth exceeds `bound`.
    pub fn exceeds(self, bound: usize) -> bool {
        match self {
            Girth::Finite(g) => g > bound,
            Girth::Infinite => true,
        }
    }
}

impl std::fmt::Display for Girth {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("infinite"),
        }
    }
}

/// A Berge cycle: `links[i]` lies in `hyperedges[i]` and `hyperedges[i + 1]`
/// (indices mod the length).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BergeCycle {
    pub hyperedges: Vec<usize>,
    pub links: Vec<usize>,
}

impl BergeCycle {
    pub fn len(&self) -> usize {
        self.hyperedges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperedges.is_empty()
    }

    /// Checks the cycle against `hg` directly.
    pub fn is_valid_in(&self, hg: &CopyHypergraph) -> bool {
        let k = self.hyperedges.len();
        if k < 2 || self.links.len() != k {
            return false;
        }
        let distinct = |v: &[usize]| {
            let mut s = v.to_vec();
            s.sort_unstable();
            s.windows(2).all(|w| w[0] != w[1])
        };
        distinct(&self.hyperedges)
            && distinct(&self.links)
            && self.hyperedges.iter().all(|&e| e < hg.hyperedges.len())
            && (0..k).all(|i| {
                let x = self.links[i];
                hg.hyperedges[self.hyperedges[i]].binary_search(&x).is_ok()
                    && hg.hyperedges[self.hyperedges[(i + 1) % k]].binary_search(&x).is_ok()
            })
    }
}

pub fn girth(hg: &CopyHypergraph) -> Girth {
    match shortest_cycle(hg) {
        Some(c) => Girth::Finite(c.len()),
        None => Girth::Infinite,
    }
}

/// A shortest Berge cycle, if any. Deterministic: roots are tried in node
/// order and the first cycle of minimum length is kept.
pub fn shortest_cycle(hg: &CopyHypergraph) -> Option<BergeCycle> {
    let ne = hg.hyperedges.len();
    let nodes = ne + hg.num_vertices;
    // incidence graph: nodes 0..ne are hyperedges, ne.. are vertices
    let mut adj = vec![Vec::new(); nodes];
    for (e, members) in hg.hyperedges.iter().enumerate() {
        for &x in members {
            adj[e].push(ne + x);
            adj[ne + x].push(e);
        }
    }

    let mut best: Option<Vec<usize>> = None;
    let mut dist = vec![usize::MAX; nodes];
    let mut parent = vec![usize::MAX; nodes];
    for root in 0..ne {
        if best.as_ref().is_some_and(|b| b.len() == 4) {
            break;
        }
        dist.fill(usize::MAX);
        parent.fill(usize::MAX);
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        'bfs: while let Some(u) = queue.pop_front() {
            if best.as_ref().is_some_and(|b| 2 * dist[u] + 1 >= b.len()) {
                break;
            }
            for &w in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if w != parent[u] && dist[w] >= dist[u] {
                    let len = dist[u] + dist[w] + 1;
                    if best.as_ref().is_some_and(|b| len >= b.len()) {
                        continue;
                    }
                    if let Some(cycle) = close_cycle(&parent, root, u, w) {
                        best = Some(cycle);
                        break 'bfs;
                    }
                }
            }
        }
    }

    best.map(|cycle| {
        // rotate so the cycle starts at a hyperedge node
        let start = cycle.iter().position(|&x| x < ne).expect("cycle alternates");
        let rotated: Vec<usize> = cycle[start..].iter().chain(&cycle[..start]).copied().collect();
        BergeCycle {
            hyperedges: rotated.iter().step_by(2).copied().collect(),
            links: rotated.iter().skip(1).step_by(2).map(|&x| x - ne).collect(),
        }
    })
}

/// The cycle root -> .. -> u, w -> .. -> root, if the two tree paths meet
/// only at the root.
fn close_cycle(parent: &[usize], root: usize, u: usize, w: usize) -> Option<Vec<usize>> {
    let path = |mut x: usize| {
        let mut p = vec![x];
        while x != root {
            x = parent[x];
            p.push(x);
        }
        p.reverse();
        p
    };
    let (pu, pw) = (path(u), path(w));
    if pu[1..].iter().any(|x| pw[1..].contains(x)) {
        return None;
    }
    let mut cycle = pu;
    cycle.extend(pw[1..].iter().rev());
    Some(cycle)
}

/// True iff `h` has at least 3 vertices and deleting any vertex set that
/// induces a bipartite graph (including the empty set) leaves a connected
/// graph. Graphs with at most one vertex count as connected.
pub fn is_3_chromatically_connected(h: &Graph) -> bool {
    h.n() >= 3 && disconnecting_bipartite_set(h).is_none()
}

/// The first (in subset-bitmask order) vertex set inducing a bipartite
/// graph whose removal disconnects `h`.
pub fn disconnecting_bipartite_set(h: &Graph) -> Option<Vec<usize>> {
    let n = h.n();
    assert!(n < 32, "subset enumeration limited to graphs with fewer than 32 vertices");
    let mut members = vec![false; n];
    let mut alive = vec![false; n];
    for mask in 0u32..(1 << n) {
        for v in 0..n {
            members[v] = mask >> v & 1 == 1;
            alive[v] = !members[v];
        }
        if h.is_bipartite_on(&members) && !h.is_connected_on(&alive) {
            return Some((0..n).filter(|&v| members[v]).collect());
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreconditionReport {
    pub s: usize,
    pub girth: Girth,
    /// `g(H(G)) > 2s + 2`.
    pub girth_ok: bool,
    pub short_cycle: Option<BergeCycle>,
    /// Minimum degree of the pattern is at least 2.
    pub min_degree_ok: bool,
    /// A pattern vertex of degree below 2 and its degree.
    pub low_degree_vertex: Option<(usize, usize)>,
    /// Ramsey-minimality of the pattern is left to the arrowing module and
    /// always reported as unchecked here.
    pub minimality_checked: bool,
}

pub fn verify_recolouring_preconditions(g: &Graph, h: &Graph, s: usize) -> Result<PreconditionReport> {
    let hg = build_copy_hypergraph(h, g)?;
    let cycle = shortest_cycle(&hg);
    let girth = cycle.as_ref().map_or(Girth::Infinite, |c| Girth::Finite(c.len()));
    let girth_ok = girth.exceeds(2 * s + 2);
    let low = (0..h.n()).find(|&v| h.degree(v) < 2).map(|v| (v, h.degree(v)));
    Ok(PreconditionReport {
        s,
        girth,
        girth_ok,
        short_cycle: if girth_ok { None } else { cycle },
        min_degree_ok: low.is_none(),
        low_degree_vertex: low,
        minimality_checked: false,
    })
}
