//! Blowups `G[{m(x)}]`: every vertex `x` becomes an independent set `x̄` of
//! `m(x)` vertices and every edge `xy` becomes the complete bipartite graph
//! between `x̄` and `ȳ`.
//!
//! Blown vertices are numbered part by part in base-vertex order, so `x̄` is
//! the contiguous range [`BlownGraph::part`]. Within a part, copy `i`
//! (0-based) corresponds to `x_{i+1}` in the usual one-based notation.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::colouring::EdgeColouring;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlowupSpec {
    multiplicities: Vec<usize>,
}

impl BlowupSpec {
    pub fn new(multiplicities: Vec<usize>) -> Result<Self> {
        if let Some(x) = multiplicities.iter().position(|&m| m == 0) {
            return Err(Error::InvalidSpec(format!("vertex {x} has multiplicity 0")));
        }
        Ok(Self { multiplicities })
    }

    /// The uniform blowup `G[t]` of a graph on `n` vertices.
    pub fn uniform(n: usize, t: usize) -> Result<Self> {
        Self::new(vec![t; n])
    }

    #[inline]
    pub fn get(&self, x: usize) -> usize {
        self.multiplicities[x]
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn min(&self) -> usize {
        self.multiplicities.iter().copied().min().unwrap_or(0)
    }
}

#[derive(Clone, Debug)]
pub struct BlownGraph {
    base: Graph,
    spec: BlowupSpec,
    graph: Graph,
    offsets: Vec<usize>,
    origin: Vec<(usize, usize)>,
}

impl BlownGraph {
    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn spec(&self) -> &BlowupSpec {
        &self.spec
    }

    /// The blown vertices `x̄` of base vertex `x`.
    #[inline]
    pub fn part(&self, x: usize) -> Range<usize> {
        self.offsets[x]..self.offsets[x + 1]
    }

    /// `(base vertex, 0-based copy index)` of a blown vertex.
    #[inline]
    pub fn origin(&self, v: usize) -> (usize, usize) {
        self.origin[v]
    }

    #[inline]
    pub fn vertex(&self, x: usize, copy: usize) -> usize {
        debug_assert!(copy < self.spec.get(x));
        self.offsets[x] + copy
    }

    /// Base edge id lying under a blown edge id.
    pub fn base_edge(&self, blown_edge: usize) -> usize {
        let (a, b) = self.graph.edge(blown_edge);
        self.base
            .edge_id(self.origin[a].0, self.origin[b].0)
            .expect("blown edges project to base edges")
    }
}

pub fn blowup(base: &Graph, spec: &BlowupSpec) -> Result<BlownGraph> {
    if spec.multiplicities.len() != base.n() {
        return Err(Error::InvalidSpec(format!(
            "spec lists {} multiplicities for a graph on {} vertices",
            spec.multiplicities.len(),
            base.n()
        )));
    }
    let mut offsets = Vec::with_capacity(base.n() + 1);
    let mut origin = Vec::new();
    offsets.push(0);
    for x in 0..base.n() {
        origin.extend((0..spec.get(x)).map(|i| (x, i)));
        offsets.push(origin.len());
    }
    let mut edges = Vec::new();
    for &(x, y) in base.edges() {
        for a in offsets[x]..offsets[x + 1] {
            edges.extend((offsets[y]..offsets[y + 1]).map(|b| (a, b)));
        }
    }
    let graph = Graph::new(origin.len(), edges)?;
    Ok(BlownGraph {
        base: base.clone(),
        spec: spec.clone(),
        graph,
        offsets,
        origin,
    })
}

/// Colours every blown edge with the colour of the base edge beneath it.
pub fn lift_colouring(blown: &BlownGraph, c: &EdgeColouring) -> Result<EdgeColouring> {
    c.check_host(blown.base())?;
    let colours = (0..blown.graph().m()).map(|e| c.get(blown.base_edge(e))).collect();
    EdgeColouring::new(blown.graph(), c.r(), colours)
}
