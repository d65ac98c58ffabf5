//! Arrowing `G -> H`, Ramsey-minimality and blowup Ramsey numbers.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::blowup::{blowup, BlownGraph, BlowupSpec};
use crate::canonical::find_mono_canonical;
use crate::colouring::{check_r, EdgeColouring};
use crate::copies::enumerate_copies;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::search::{has_monochromatic_block, Avoidance, SearchConfig};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowingResult {
    pub arrows: bool,
    /// A colouring without a monochromatic copy; present iff `!arrows`.
    pub witness: Option<EdgeColouring>,
    pub nodes_explored: u64,
}

pub fn arrows(g: &Graph, h: &Graph, r: usize) -> Result<ArrowingResult> {
    arrows_with(g, h, r, &SearchConfig::default())
}

pub fn arrows_with(g: &Graph, h: &Graph, r: usize, cfg: &SearchConfig) -> Result<ArrowingResult> {
    check_r(r)?;
    if h.m() == 0 {
        return Err(Error::Precondition("pattern graph has no edges".into()));
    }
    let blocks: Vec<Vec<usize>> = enumerate_copies(h, g).into_iter().map(|c| c.edges).collect();
    decide(g, &blocks, r, cfg)
}

fn decide(host: &Graph, blocks: &[Vec<usize>], r: usize, cfg: &SearchConfig) -> Result<ArrowingResult> {
    let out = Avoidance::new(host.m(), blocks, r).solve(cfg)?;
    let witness = match out.colouring {
        Some(colours) => {
            if has_monochromatic_block(blocks, &colours) {
                return Err(Error::Invariant("search returned a colouring with a monochromatic copy".into()));
            }
            Some(EdgeColouring::new(host, r, colours)?)
        }
        None => None,
    };
    Ok(ArrowingResult {
        arrows: witness.is_none(),
        witness,
        nodes_explored: out.nodes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityResult {
    pub minimal: bool,
    pub arrows: bool,
    /// An edge whose deletion still leaves an arrowing graph.
    pub removable_edge: Option<(usize, usize)>,
    pub nodes_explored: u64,
}

pub fn is_ramsey_minimal(g: &Graph, h: &Graph, r: usize) -> Result<bool> {
    Ok(ramsey_minimality(g, h, r, &SearchConfig::default())?.minimal)
}

/// `G` is Ramsey-minimal iff it arrows `H` and no single-edge deletion
/// does; arrowing is monotone, so deleting more (or isolated vertices)
/// cannot help.
pub fn ramsey_minimality(g: &Graph, h: &Graph, r: usize, cfg: &SearchConfig) -> Result<MinimalityResult> {
    let whole = arrows_with(g, h, r, cfg)?;
    let mut nodes = whole.nodes_explored;
    if !whole.arrows {
        return Ok(MinimalityResult {
            minimal: false,
            arrows: false,
            removable_edge: None,
            nodes_explored: nodes,
        });
    }
    for id in 0..g.m() {
        let sub = arrows_with(&g.without_edge(id), h, r, cfg)?;
        nodes += sub.nodes_explored;
        if sub.arrows {
            return Ok(MinimalityResult {
                minimal: false,
                arrows: true,
                removable_edge: Some(g.edge(id)),
                nodes_explored: nodes,
            });
        }
    }
    Ok(MinimalityResult {
        minimal: true,
        arrows: true,
        removable_edge: None,
        nodes_explored: nodes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupRamseyQuery {
    pub g: Graph,
    pub h: Graph,
    pub r: usize,
    pub t: usize,
    pub n_max: usize,
}

impl BlowupRamseyQuery {
    pub fn new(g: Graph, h: Graph, r: usize, t: usize, n_max: usize) -> Result<Self> {
        check_r(r)?;
        if t == 0 || n_max == 0 {
            return Err(Error::Config("t and n_max must be at least 1".into()));
        }
        Ok(Self { g, h, r, t, n_max })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupLevel {
    pub n: usize,
    pub arrows: bool,
    pub nodes_explored: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupRamseyResult {
    /// The least `n <= n_max` forcing a monochromatic canonical `H[t]`.
    pub value: Option<usize>,
    pub levels: Vec<BlowupLevel>,
    /// An avoiding colouring of `G[n]` for the largest `n` that avoids.
    pub witness: Option<(usize, EdgeColouring)>,
    pub nodes_explored: u64,
}

pub fn blowup_ramsey_number(q: &BlowupRamseyQuery) -> Result<Option<usize>> {
    Ok(blowup_ramsey_with(q, &SearchConfig::default())?.value)
}

/// Scans `n = t, t+1, .., n_max`; canonical copies of `H[t]` in `G[n]`
/// persist in `G[n+1]`, so the first forcing `n` is the minimum.
pub fn blowup_ramsey_with(q: &BlowupRamseyQuery, cfg: &SearchConfig) -> Result<BlowupRamseyResult> {
    let base = arrows_with(&q.g, &q.h, q.r, cfg)?;
    if !base.arrows {
        return Err(Error::Precondition("the ground graph does not arrow the pattern".into()));
    }
    let mut result = BlowupRamseyResult {
        value: None,
        levels: Vec::new(),
        witness: None,
        nodes_explored: base.nodes_explored,
    };
    for n in q.t..=q.n_max {
        let level = arrows_canonical(&q.g, &q.h, q.r, q.t, n, cfg)?;
        result.nodes_explored += level.nodes_explored;
        result.levels.push(BlowupLevel {
            n,
            arrows: level.arrows,
            nodes_explored: level.nodes_explored,
        });
        match level.witness {
            None => {
                result.value = Some(n);
                break;
            }
            Some(w) => result.witness = Some((n, w)),
        }
    }
    Ok(result)
}

/// Whether every `r`-colouring of `G[n]` has a monochromatic canonical
/// `H[t]`; the witness is a colouring of `G[n]` without one.
pub fn arrows_canonical(g: &Graph, h: &Graph, r: usize, t: usize, n: usize, cfg: &SearchConfig) -> Result<ArrowingResult> {
    check_r(r)?;
    if h.m() == 0 {
        return Err(Error::Precondition("pattern graph has no edges".into()));
    }
    let blown = blowup(g, &BlowupSpec::uniform(g.n(), n)?)?;
    let blocks = canonical_blocks(&blown, h, t);
    let res = decide(blown.graph(), &blocks, r, cfg)?;
    if let Some(w) = &res.witness {
        if t <= n && find_mono_canonical(&blown, w, h, t)?.is_some() {
            return Err(Error::Invariant("avoiding colouring failed the canonical-copy re-check".into()));
        }
    }
    Ok(res)
}

/// Edge sets of all canonical copies of `H[t]` in a blowup, sorted.
pub fn canonical_blocks(blown: &BlownGraph, h: &Graph, t: usize) -> Vec<Vec<usize>> {
    let g = blown.graph();
    let mut blocks = Vec::new();
    for copy in enumerate_copies(h, blown.base()) {
        let choices: Vec<Vec<Vec<usize>>> = copy
            .vertex_map
            .iter()
            .map(|&x| blown.part(x).combinations(t).collect())
            .collect();
        if choices.iter().any(Vec::is_empty) {
            continue;
        }
        for pick in choices.iter().map(|c| c.iter()).multi_cartesian_product() {
            let mut edges = Vec::with_capacity(h.m() * t * t);
            for &(a, b) in h.edges() {
                for &x in pick[a] {
                    for &y in pick[b] {
                        edges.push(g.edge_id(x, y).expect("blown edge"));
                    }
                }
            }
            edges.sort_unstable();
            blocks.push(edges);
        }
    }
    blocks.sort();
    blocks.dedup();
    blocks
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_free(g: &Graph, c: &EdgeColouring) -> bool {
        enumerate_copies(&Graph::complete(3), g)
            .iter()
            .all(|t| c.monochromatic(&t.edges).is_none())
    }

    #[test]
    fn classical_r33() {
        for n in 3..=5 {
            let res = arrows(&Graph::complete(n), &Graph::complete(3), 2).unwrap();
            assert!(!res.arrows);
            assert!(triangle_free(&Graph::complete(n), res.witness.as_ref().unwrap()));
        }
        assert!(arrows(&Graph::complete(6), &Graph::complete(3), 2).unwrap().arrows);
        assert!(arrows(&Graph::complete(3), &Graph::complete(3), 1).unwrap().arrows);
    }

    #[test]
    fn edgeless_pattern_is_rejected() {
        assert!(arrows(&Graph::complete(3), &Graph::empty(2), 2).is_err());
    }

    #[test]
    fn minimality() {
        assert!(is_ramsey_minimal(&Graph::complete(6), &Graph::complete(3), 2).unwrap());
        assert!(!is_ramsey_minimal(&Graph::complete(7), &Graph::complete(3), 2).unwrap());
        assert!(is_ramsey_minimal(&Graph::complete(3), &Graph::complete(3), 1).unwrap());
    }

    #[test]
    fn blowup_number_small_cases() {
        let q = BlowupRamseyQuery::new(Graph::complete(3), Graph::path(3), 2, 1, 4).unwrap();
        assert_eq!(blowup_ramsey_number(&q).unwrap(), Some(1));
        let q = BlowupRamseyQuery::new(Graph::complete(5), Graph::complete(3), 2, 2, 3).unwrap();
        assert!(matches!(blowup_ramsey_number(&q), Err(Error::Precondition(_))));
    }

    #[test]
    fn canonical_block_count() {
        let blown = blowup(&Graph::complete(3), &BlowupSpec::uniform(3, 3).unwrap()).unwrap();
        // 3 base copies of P_3, C(3,2)^3 choices each
        assert_eq!(canonical_blocks(&blown, &Graph::path(3), 2).len(), 3 * 27);
    }
}
