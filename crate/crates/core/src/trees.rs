//! Trees in partially coloured graphs: possible monochromatic copies,
//! coherence of blowup colourings, the pair search for extending copies of
//! a subtree, and blowup Ramsey tables across ground graphs.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arrowing::{arrows_with, blowup_ramsey_with, BlowupRamseyQuery};
use crate::biclique::find_biclique;
use crate::blowup::{blowup, BlowupSpec};
use crate::colouring::{EdgeColouring, PartialColouring};
use crate::copies::{enumerate_copies, CopyEmbedding};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::search::SearchConfig;

fn require_tree(t: &Graph) -> Result<()> {
    if t.is_tree() {
        Ok(())
    } else {
        Err(Error::InvalidGraph("pattern is not a tree".into()))
    }
}

/// Whether every `c`-coloured edge among `edges` has colour `colour`.
pub fn is_possible_monochromatic(c: &PartialColouring, edges: &[usize], colour: u8) -> bool {
    edges.iter().all(|&e| c.get(e).is_none_or(|k| k == colour))
}

/// Copies of the tree `t` in `g` whose coloured edges all have `colour`.
pub fn possible_monochromatic_copies(t: &Graph, g: &Graph, c: &PartialColouring, colour: u8) -> Result<Vec<CopyEmbedding>> {
    require_tree(t)?;
    c.check_host(g)?;
    if colour as usize >= c.r() {
        return Err(Error::InvalidColouring(format!("colour {colour} out of range 0..{}", c.r())));
    }
    Ok(enumerate_copies(t, g)
        .into_iter()
        .filter(|copy| is_possible_monochromatic(c, &copy.edges, colour))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoherenceSpec {
    pub c: PartialColouring,
    pub spec: BlowupSpec,
    /// `f` at each multiplicity in use.
    pub f: BTreeMap<usize, usize>,
}

impl CoherenceSpec {
    pub fn new(g: &Graph, c: PartialColouring, spec: BlowupSpec, f: BTreeMap<usize, usize>) -> Result<Self> {
        c.check_host(g)?;
        if c.r() != 2 {
            return Err(Error::InvalidSpec("coherence is defined for 2 colours".into()));
        }
        if spec.multiplicities().len() != g.n() {
            return Err(Error::InvalidSpec(format!(
                "{} multiplicities for {} vertices",
                spec.multiplicities().len(),
                g.n()
            )));
        }
        for &m in spec.multiplicities() {
            match f.get(&m) {
                None => return Err(Error::InvalidSpec(format!("f has no value at multiplicity {m}"))),
                Some(&v) if v == 0 || v > m => {
                    return Err(Error::InvalidSpec(format!("f({m}) = {v} must lie in 1..={m}")))
                }
                Some(_) => {}
            }
        }
        if f.values().zip(f.values().skip(1)).any(|(a, b)| a > b) {
            return Err(Error::InvalidSpec("f must be non-decreasing".into()));
        }
        Ok(Self { c, spec, f })
    }

    fn f_at(&self, x: usize) -> usize {
        self.f[&self.spec.get(x)]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoherenceViolation {
    /// Base edge `xy`.
    pub edge: Edge,
    /// Colour of the offending biclique, opposite to `c(xy)`.
    pub colour: u8,
    /// Blown vertices in the part of `x`.
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoherenceResult {
    pub coherent: bool,
    pub violation: Option<CoherenceViolation>,
}

/// Checks every coloured base edge `xy`, in edge order, for a
/// `K_{f(m(x)), f(m(y))}` of the opposite colour between the parts of `x`
/// and `y`.
pub fn is_f_coherent(g: &Graph, cprime: &EdgeColouring, cs: &CoherenceSpec) -> Result<CoherenceResult> {
    cs.c.check_host(g)?;
    let blown = blowup(g, &cs.spec)?;
    let host = blown.graph();
    cprime.check_host(host)?;
    if cprime.r() != 2 {
        return Err(Error::InvalidColouring("coherence is defined for 2 colours".into()));
    }
    for (id, &(x, y)) in g.edges().iter().enumerate() {
        let Some(colour) = cs.c.get(id) else { continue };
        let opposite = 1 - colour;
        let left: Vec<usize> = blown.part(x).collect();
        let right: Vec<usize> = blown.part(y).collect();
        let found = find_biclique(&left, &right, cs.f_at(x), cs.f_at(y), |u, v| cprime.between(host, u, v) == opposite);
        if let Some((left, right)) = found {
            return Ok(CoherenceResult {
                coherent: false,
                violation: Some(CoherenceViolation {
                    edge: (x, y),
                    colour: opposite,
                    left,
                    right,
                }),
            });
        }
    }
    Ok(CoherenceResult {
        coherent: true,
        violation: None,
    })
}

/// A family of copies `T'_i` of a subtree, all placing `x` at `z`, each
/// extended to a copy `T_i` of the whole tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tree2Instance {
    pub t: Graph,
    /// Vertices of `T` spanning the subtree `T'`.
    pub sub: Vec<usize>,
    /// Attachment edge `xy` with `x` in `T'` and `y` outside.
    pub x: usize,
    pub y: usize,
    pub g: Graph,
    pub c: PartialColouring,
    pub z: usize,
    /// `copies[i]` maps every vertex of `T` into `G`; its restriction to
    /// `sub` is `T'_i`.
    pub copies: Vec<Vec<usize>>,
}

impl Tree2Instance {
    pub fn validate(&self) -> Result<()> {
        let t = &self.t;
        require_tree(t)?;
        let in_sub = self.membership();
        if self.sub.is_empty() || self.sub.iter().any(|&v| v >= t.n()) || BTreeSet::from_iter(&self.sub).len() != self.sub.len() {
            return Err(Error::InvalidSpec("subtree vertices must be distinct vertices of T".into()));
        }
        if !t.is_connected_on(&in_sub) {
            return Err(Error::InvalidSpec("subtree vertices do not induce a connected subtree".into()));
        }
        if self.x >= t.n() || self.y >= t.n() || !in_sub[self.x] || in_sub[self.y] || !t.has_edge(self.x, self.y) {
            return Err(Error::InvalidSpec("xy must be an edge of T leaving the subtree at x".into()));
        }
        self.c.check_host(&self.g)?;
        if self.c.r() != 2 {
            return Err(Error::InvalidSpec("the pair search is defined for 2 colours".into()));
        }
        if self.z >= self.g.n() {
            return Err(Error::InvalidSpec(format!("z = {} is not a vertex of G", self.z)));
        }
        let mut seen = BTreeSet::new();
        for (i, map) in self.copies.iter().enumerate() {
            if map.len() != t.n() || !is_embedding(t, &self.g, map) {
                return Err(Error::InvalidSpec(format!("copy {} is not a copy of T in G", i + 1)));
            }
            if map[self.x] != self.z {
                return Err(Error::InvalidSpec(format!("copy {} does not place x at z", i + 1)));
            }
            if !seen.insert(self.inner_key(map)) {
                return Err(Error::InvalidSpec(format!("copy {} repeats an earlier subtree copy", i + 1)));
            }
            if self.possible_colours(&self.edge_ids(map)) == [false, false] {
                return Err(Error::InvalidSpec(format!("copy {} is not a possible monochromatic copy", i + 1)));
            }
        }
        Ok(())
    }

    fn membership(&self) -> Vec<bool> {
        let mut in_sub = vec![false; self.t.n()];
        for &v in &self.sub {
            if v < in_sub.len() {
                in_sub[v] = true;
            }
        }
        in_sub
    }

    /// The subtree copy as a subgraph: its vertex set and edge set.
    fn inner_key(&self, map: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let in_sub = self.membership();
        let mut vs: Vec<usize> = self.sub.iter().map(|&v| map[v]).collect();
        vs.sort_unstable();
        let mut es: Vec<usize> = self
            .t
            .edges()
            .iter()
            .filter(|&&(a, b)| in_sub[a] && in_sub[b])
            .map(|&(a, b)| self.g.edge_id(map[a], map[b]).expect("embedding"))
            .collect();
        es.sort_unstable();
        (vs, es)
    }

    fn edge_ids(&self, map: &[usize]) -> Vec<usize> {
        self.t
            .edges()
            .iter()
            .map(|&(a, b)| self.g.edge_id(map[a], map[b]).expect("embedding"))
            .collect()
    }

    fn possible_colours(&self, edges: &[usize]) -> [bool; 2] {
        [0, 1].map(|k| is_possible_monochromatic(&self.c, edges, k))
    }

    /// `T'_i ∪ (T_j \ T'_j)` as a map on `V(T)`, if it is a copy of `T`.
    pub fn combine(&self, i: usize, j: usize) -> Option<Vec<usize>> {
        let in_sub = self.membership();
        let map: Vec<usize> = (0..self.t.n())
            .map(|v| if in_sub[v] { self.copies[i][v] } else { self.copies[j][v] })
            .collect();
        is_embedding(&self.t, &self.g, &map).then_some(map)
    }
}

fn is_embedding(pattern: &Graph, host: &Graph, map: &[usize]) -> bool {
    map.iter().all(|&v| v < host.n())
        && BTreeSet::from_iter(map).len() == map.len()
        && pattern.edges().iter().all(|&(a, b)| host.has_edge(map[a], map[b]))
}

/// The first pair `i < j` (1-based, lexicographic) for which the combined
/// copy, `T_i` and `T_j` are possible monochromatic copies of one colour.
pub fn lemma_tree2_witness(inst: &Tree2Instance) -> Result<Option<(usize, usize)>> {
    inst.validate()?;
    let k = inst.copies.len();
    for i in 0..k {
        let ci = inst.possible_colours(&inst.edge_ids(&inst.copies[i]));
        for j in i + 1..k {
            let Some(map) = inst.combine(i, j) else { continue };
            let cj = inst.possible_colours(&inst.edge_ids(&inst.copies[j]));
            let cu = inst.possible_colours(&inst.edge_ids(&map));
            if (0..2).any(|col| ci[col] && cj[col] && cu[col]) {
                return Ok(Some((i + 1, j + 1)));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    /// The scan finished; `value` is `None` when nothing up to `n_max` forces.
    Computed,
    /// The ground graph does not arrow the tree.
    NotApplicable,
    /// The search budget ran out.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub index: usize,
    pub vertices: usize,
    pub edges: usize,
    pub status: RowStatus,
    pub value: Option<usize>,
    pub nodes_explored: u64,
}

/// Blowup Ramsey numbers of one tree over several ground graphs, rows in
/// input order.
pub fn tree_blowup_ramsey_table(
    gs: &[Graph],
    t: &Graph,
    r: usize,
    tt: usize,
    n_max: usize,
    cfg: &SearchConfig,
) -> Result<Vec<TableRow>> {
    require_tree(t)?;
    crate::colouring::check_r(r)?;
    if tt == 0 || n_max == 0 {
        return Err(Error::Config("t and n_max must be at least 1".into()));
    }
    gs.par_iter()
        .enumerate()
        .map(|(index, g)| {
            let mut row = TableRow {
                index,
                vertices: g.n(),
                edges: g.m(),
                status: RowStatus::Computed,
                value: None,
                nodes_explored: 0,
            };
            match arrows_with(g, t, r, cfg) {
                Ok(a) if !a.arrows => {
                    row.status = RowStatus::NotApplicable;
                    row.nodes_explored = a.nodes_explored;
                    return Ok(row);
                }
                Err(Error::Inconclusive { .. }) => {
                    row.status = RowStatus::Inconclusive;
                    return Ok(row);
                }
                Err(e) => return Err(e),
                Ok(_) => {}
            }
            let q = BlowupRamseyQuery::new(g.clone(), t.clone(), r, tt, n_max)?;
            match blowup_ramsey_with(&q, cfg) {
                Ok(res) => {
                    row.value = res.value;
                    row.nodes_explored = res.nodes_explored;
                }
                Err(Error::Inconclusive { .. }) => row.status = RowStatus::Inconclusive,
                Err(e) => return Err(e),
            }
            Ok(row)
        })
        .collect()
}
