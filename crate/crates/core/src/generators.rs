//! Random graphs and colourings, and triangle-tree recolouring instances.
//!
//! A triangle tree grows from a fan of triangles around the pivot by
//! repeatedly gluing a triangle with one new vertex onto an existing edge.
//! The new vertex has degree 2, so no other triangle appears and the
//! incidence graph of the copy hypergraph stays a tree: `H(G)` has no Berge
//! cycle at all.

use rand::seq::index::sample;
use rand::Rng;

use crate::colouring::{EdgeColouring, BLUE, RED};
use crate::graph::{normalise, Edge, Graph};

/// `G(n, p)`.
pub fn gnp(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("pairs are distinct")
}

/// A uniformly random graph with exactly `m` edges.
pub fn gnm(n: usize, m: usize, rng: &mut impl Rng) -> Graph {
    let pairs: Vec<Edge> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let m = m.min(pairs.len());
    let picked = sample(rng, pairs.len(), m);
    Graph::new(n, picked.into_iter().map(|i| pairs[i])).expect("pairs are distinct")
}

pub fn random_colouring(g: &Graph, r: usize, rng: &mut impl Rng) -> EdgeColouring {
    let colours = (0..g.m()).map(|_| rng.gen_range(0..r) as u8).collect();
    EdgeColouring::new(g, r, colours).expect("colours in range")
}

#[derive(Clone, Debug)]
pub struct TriangleTreeInstance {
    pub graph: Graph,
    pub e: Edge,
    pub pivot: usize,
    pub c0: EdgeColouring,
    pub s: usize,
}

/// A fan `v a_0 a_1 .. a_chain` with `e = v a_0`, coloured so that Stage 1
/// walks along the fan one triangle per step, followed by `extra` random
/// triangles glued onto random edges with non-monochromatic colours.
pub fn triangle_tree_instance(s: usize, chain: usize, extra: usize, rng: &mut impl Rng) -> TriangleTreeInstance {
    let chain = chain.max(1);
    let v = 0;
    let mut colour: Vec<(Edge, u8)> = Vec::new();
    // a_i is vertex i + 1
    colour.push(((v, 1), RED));
    for i in 1..=chain {
        let spoke = if i % 2 == 1 { RED } else { BLUE };
        let rim = if (i - 1) % 2 == 0 { RED } else { BLUE };
        colour.push(((v, i + 1), spoke));
        colour.push((normalise(i, i + 1), rim));
    }
    let mut n = chain + 2;
    for _ in 0..extra {
        let (edge, c) = colour[rng.gen_range(0..colour.len())];
        let w = n;
        n += 1;
        let (a, b) = loop {
            let a = rng.gen_range(0..2) as u8;
            let b = rng.gen_range(0..2) as u8;
            if !(a == c && b == c) {
                break (a, b);
            }
        };
        colour.push(((edge.0, w), a));
        colour.push(((edge.1, w), b));
    }
    let graph = Graph::new(n, colour.iter().map(|&(e, _)| e)).expect("triangle tree is simple");
    let c0 = EdgeColouring::from_fn(&graph, 2, |x, y| {
        colour.iter().find(|&&(e, _)| e == (x, y)).map(|&(_, c)| c).expect("every edge coloured")
    })
    .expect("two colours");
    TriangleTreeInstance {
        graph,
        e: (v, 1),
        pivot: v,
        c0,
        s,
    }
}

/// A fan of four triangles at the pivot `v = 0`, with rim path
/// `x, y, u, w = 1, 2, 3, 4` and `e = vx`.
pub fn fan_instance(s: usize) -> TriangleTreeInstance {
    let graph = Graph::new(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4)]).expect("simple");
    let c0 = EdgeColouring::from_fn(&graph, 2, |x, y| match (x, y) {
        (0, 3) | (2, 3) => BLUE,
        _ => RED,
    })
    .expect("two colours");
    TriangleTreeInstance {
        graph,
        e: (0, 1),
        pivot: 0,
        c0,
        s,
    }
}
