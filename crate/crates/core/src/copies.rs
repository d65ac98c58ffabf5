//! Enumeration of copies of a pattern graph `H` inside a host graph `G`.
//!
//! A copy is a (not necessarily induced) subgraph of `G` isomorphic to `H`
//! and is identified by its edge set. Each copy keeps one injective vertex
//! map `V(H) -> V(G)` as a representative.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CopyEmbedding {
    /// Host edge ids, sorted.
    pub edges: Vec<usize>,
    /// `vertex_map[h]` is the host vertex playing pattern vertex `h`.
    pub vertex_map: Vec<usize>,
}

impl CopyEmbedding {
    pub fn vertices(&self) -> Vec<usize> {
        let mut v = self.vertex_map.clone();
        v.sort_unstable();
        v
    }
}

/// All copies of `pattern` in `host`, one per distinct edge set, sorted by
/// edge set.
pub fn enumerate_copies(pattern: &Graph, host: &Graph) -> Vec<CopyEmbedding> {
    let mut found: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for_each_embedding(pattern, host, |map| {
        let mut edges: Vec<usize> = pattern
            .edges()
            .iter()
            .map(|&(a, b)| host.edge_id(map[a], map[b]).expect("embedding preserves edges"))
            .collect();
        edges.sort_unstable();
        found.entry(edges).or_insert_with(|| map.to_vec());
    });
    found
        .into_iter()
        .map(|(edges, vertex_map)| CopyEmbedding { edges, vertex_map })
        .collect()
}

/// Calls `visit` with injective edge-preserving maps `V(pattern) -> V(host)`.
///
/// Isolated pattern vertices are placed on the smallest unused host vertices
/// only, so every edge set is reached but not every vertex map.
pub fn for_each_embedding(pattern: &Graph, host: &Graph, mut visit: impl FnMut(&[usize])) {
    let order = search_order(pattern);
    let isolated: Vec<usize> = (0..pattern.n()).filter(|&h| pattern.degree(h) == 0).collect();
    if order.len() + isolated.len() > host.n() {
        return;
    }
    // anchor[i]: an earlier-placed neighbour of order[i], if any
    let pos: Vec<usize> = {
        let mut pos = vec![usize::MAX; pattern.n()];
        for (i, &h) in order.iter().enumerate() {
            pos[h] = i;
        }
        pos
    };
    let back: Vec<Vec<usize>> = order
        .iter()
        .enumerate()
        .map(|(i, &h)| pattern.neighbours(h).iter().copied().filter(|&w| pos[w] < i).collect())
        .collect();

    let mut map = vec![usize::MAX; pattern.n()];
    let mut used = vec![false; host.n()];

    struct Ctx<'a, F> {
        pattern: &'a Graph,
        host: &'a Graph,
        order: &'a [usize],
        back: &'a [Vec<usize>],
        isolated: &'a [usize],
        visit: F,
    }

    fn rec<F: FnMut(&[usize])>(ctx: &mut Ctx<'_, F>, depth: usize, map: &mut [usize], used: &mut [bool]) {
        if depth == ctx.order.len() {
            let mut placed = Vec::new();
            let mut v = 0;
            for &h in ctx.isolated {
                while used[v] {
                    v += 1;
                }
                map[h] = v;
                used[v] = true;
                placed.push(v);
            }
            (ctx.visit)(map);
            for v in placed {
                used[v] = false;
            }
            return;
        }
        let h = ctx.order[depth];
        let need = ctx.pattern.degree(h);
        let candidates: Vec<usize> = match ctx.back[depth].first() {
            Some(&anchor) => ctx.host.neighbours(map[anchor]).to_vec(),
            None => (0..ctx.host.n()).collect(),
        };
        for g in candidates {
            if used[g] || ctx.host.degree(g) < need {
                continue;
            }
            if !ctx.back[depth].iter().all(|&w| ctx.host.has_edge(map[w], g)) {
                continue;
            }
            map[h] = g;
            used[g] = true;
            rec(ctx, depth + 1, map, used);
            used[g] = false;
        }
        map[h] = usize::MAX;
    }

    let mut ctx = Ctx {
        pattern,
        host,
        order: &order,
        back: &back,
        isolated: &isolated,
        visit: &mut visit,
    };
    rec(&mut ctx, 0, &mut map, &mut used);
}

/// Non-isolated pattern vertices, component by component, each component in
/// BFS order from its highest-degree vertex.
fn search_order(pattern: &Graph) -> Vec<usize> {
    let mut seen = vec![false; pattern.n()];
    let mut order = Vec::new();
    let mut roots: Vec<usize> = (0..pattern.n()).filter(|&h| pattern.degree(h) > 0).collect();
    roots.sort_by_key(|&h| (std::cmp::Reverse(pattern.degree(h)), h));
    for root in roots {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let start = order.len();
        order.push(root);
        let mut i = start;
        while i < order.len() {
            let u = order[i];
            for &w in pattern.neighbours(u) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
            i += 1;
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use std::collections::BTreeSet;

    /// Every injective map, deduplicated by edge set.
    fn naive_count(pattern: &Graph, host: &Graph) -> usize {
        let mut sets = BTreeSet::new();
        for map in (0..host.n()).permutations(pattern.n()) {
            let edges: Option<BTreeSet<usize>> = pattern
                .edges()
                .iter()
                .map(|&(a, b)| host.edge_id(map[a], map[b]))
                .collect();
            if let Some(e) = edges {
                sets.insert(e);
            }
        }
        sets.len()
    }

    #[test]
    fn triangles_in_k4() {
        let copies = enumerate_copies(&Graph::complete(3), &Graph::complete(4));
        assert_eq!(copies.len(), naive_count(&Graph::complete(3), &Graph::complete(4)));
        assert_eq!(copies.len(), 4);
        assert!(copies.windows(2).all(|w| w[0].edges < w[1].edges));
    }

    #[test]
    fn no_triangles_in_c5() {
        assert!(enumerate_copies(&Graph::complete(3), &Graph::cycle(5)).is_empty());
    }

    #[test]
    fn paths_of_length_two_in_k3() {
        let copies = enumerate_copies(&Graph::path(3), &Graph::complete(3));
        assert_eq!(copies.len(), naive_count(&Graph::path(3), &Graph::complete(3)));
        assert_eq!(copies.len(), 3);
        for c in &copies {
            assert_eq!(c.edges.len(), 2);
        }
    }

    #[test]
    fn isolated_pattern_vertices() {
        let pattern = Graph::new(3, [(0, 1)]).unwrap();
        assert_eq!(enumerate_copies(&pattern, &Graph::complete(3)).len(), 3);
        assert!(enumerate_copies(&pattern, &Graph::complete(2)).is_empty());
    }
}
