//! Monochromatic canonical copies of `H[t]` inside a coloured blowup.
//!
//! A canonical copy is the `t`-blowup of a copy of `H` in the base graph:
//! pick a base copy, then `t` blown vertices in the part of every vertex of
//! that copy. It is monochromatic when all bipartite blocks along the edges
//! of `H` carry one colour.

use std::ops::ControlFlow;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::biclique::find_biclique;
use crate::blowup::BlownGraph;
use crate::colouring::EdgeColouring;
use crate::copies::{enumerate_copies, CopyEmbedding};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalWitness {
    pub colour: u8,
    /// The base copy of `H`.
    pub copy: CopyEmbedding,
    /// `parts[h]`: the `t` blown vertices chosen above pattern vertex `h`.
    pub parts: Vec<Vec<usize>>,
}

/// First monochromatic canonical `H[t]`, scanning base copies in edge-set
/// order and colours in increasing order.
pub fn find_mono_canonical(
    blown: &BlownGraph,
    c: &EdgeColouring,
    pattern: &Graph,
    t: usize,
) -> Result<Option<CanonicalWitness>> {
    let mut first = None;
    for_each_mono_canonical(blown, c, pattern, t, true, |w| {
        first = Some(w.clone());
        ControlFlow::Break(())
    })?;
    Ok(first)
}

/// Every monochromatic canonical `H[t]` (all choices of `t`-subsets).
pub fn list_mono_canonical(
    blown: &BlownGraph,
    c: &EdgeColouring,
    pattern: &Graph,
    t: usize,
) -> Result<Vec<CanonicalWitness>> {
    let mut all = Vec::new();
    for_each_mono_canonical(blown, c, pattern, t, false, |w| {
        all.push(w.clone());
        ControlFlow::Continue(())
    })?;
    Ok(all)
}

fn for_each_mono_canonical(
    blown: &BlownGraph,
    c: &EdgeColouring,
    pattern: &Graph,
    t: usize,
    first_per_copy: bool,
    mut visit: impl FnMut(&CanonicalWitness) -> ControlFlow<()>,
) -> Result<()> {
    check_args(blown, c, t)?;
    for copy in enumerate_copies(pattern, blown.base()) {
        for colour in 0..c.r() as u8 {
            let mut flow = ControlFlow::Continue(());
            search_copy(blown, c, pattern, &copy, t, colour, &mut |parts| {
                let w = CanonicalWitness {
                    colour,
                    copy: copy.clone(),
                    parts: parts.to_vec(),
                };
                flow = visit(&w);
                if first_per_copy {
                    ControlFlow::Break(())
                } else {
                    flow
                }
            });
            if flow.is_break() {
                return Ok(());
            }
        }
    }
    Ok(())
}

/// Monochromatic canonical `H[t]` above one fixed base copy, any colour.
pub fn mono_canonical_in_copy(
    blown: &BlownGraph,
    c: &EdgeColouring,
    pattern: &Graph,
    copy: &CopyEmbedding,
    t: usize,
) -> Result<Option<CanonicalWitness>> {
    check_args(blown, c, t)?;
    for colour in 0..c.r() as u8 {
        let mut found = None;
        search_copy(blown, c, pattern, copy, t, colour, &mut |parts| {
            found = Some(parts.to_vec());
            ControlFlow::Break(())
        });
        if let Some(parts) = found {
            return Ok(Some(CanonicalWitness {
                colour,
                copy: copy.clone(),
                parts,
            }));
        }
    }
    Ok(None)
}

fn check_args(blown: &BlownGraph, c: &EdgeColouring, t: usize) -> Result<()> {
    c.check_host(blown.graph())?;
    if t == 0 {
        return Err(Error::Precondition("blowup size t must be positive".into()));
    }
    if t > blown.spec().min() {
        return Err(Error::Precondition(format!(
            "t = {t} exceeds the smallest multiplicity {}",
            blown.spec().min()
        )));
    }
    Ok(())
}

fn search_copy(
    blown: &BlownGraph,
    c: &EdgeColouring,
    pattern: &Graph,
    copy: &CopyEmbedding,
    t: usize,
    colour: u8,
    visit: &mut dyn FnMut(&[Vec<usize>]) -> ControlFlow<()>,
) {
    let g = blown.graph();
    let same = |a: usize, b: usize| g.edge_id(a, b).is_some_and(|e| c.get(e) == colour);
    let part = |h: usize| -> Vec<usize> { blown.part(copy.vertex_map[h]).collect() };

    // every block must at least contain a K_{t,t} in this colour
    for &(a, b) in pattern.edges() {
        if find_biclique(&part(a), &part(b), t, t, same).is_none() {
            return;
        }
    }

    let order: Vec<usize> = (0..pattern.n()).collect();
    let mut chosen: Vec<Vec<usize>> = vec![Vec::new(); pattern.n()];

    fn rec(
        depth: usize,
        order: &[usize],
        pattern: &Graph,
        t: usize,
        part: &dyn Fn(usize) -> Vec<usize>,
        same: &dyn Fn(usize, usize) -> bool,
        chosen: &mut Vec<Vec<usize>>,
        visit: &mut dyn FnMut(&[Vec<usize>]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if depth == order.len() {
            return visit(chosen);
        }
        let h = order[depth];
        let placed: Vec<usize> = pattern
            .neighbours(h)
            .iter()
            .copied()
            .filter(|&w| !chosen[w].is_empty())
            .collect();
        let candidates: Vec<usize> = part(h)
            .into_iter()
            .filter(|&x| placed.iter().all(|&w| chosen[w].iter().all(|&y| same(x, y))))
            .collect();
        for subset in candidates.into_iter().combinations(t) {
            chosen[h] = subset;
            rec(depth + 1, order, pattern, t, part, same, chosen, visit)?;
        }
        chosen[h].clear();
        ControlFlow::Continue(())
    }

    let _ = rec(0, &order, pattern, t, &part, &same, &mut chosen, visit);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::{blowup, lift_colouring, BlowupSpec};

    #[test]
    fn all_red_lift_of_triangle() {
        let k3 = Graph::complete(3);
        let b = blowup(&k3, &BlowupSpec::uniform(3, 2).unwrap()).unwrap();
        let c = lift_colouring(&b, &EdgeColouring::uniform(&k3, 2, 0)).unwrap();
        let w = find_mono_canonical(&b, &c, &k3, 2).unwrap().unwrap();
        assert_eq!(w.colour, 0);
        assert_eq!(w.parts, vec![vec![0, 1], vec![2, 3], vec![4, 5]]);
        assert_eq!(list_mono_canonical(&b, &c, &k3, 2).unwrap().len(), 1);
    }

    #[test]
    fn t_exceeding_multiplicity_is_an_error() {
        let k3 = Graph::complete(3);
        let b = blowup(&k3, &BlowupSpec::new(vec![2, 2, 1]).unwrap()).unwrap();
        let c = EdgeColouring::uniform(b.graph(), 2, 0);
        assert!(find_mono_canonical(&b, &c, &k3, 2).is_err());
    }

    #[test]
    fn t_one_is_a_monochromatic_base_copy() {
        let k3 = Graph::complete(3);
        let b = blowup(&k3, &BlowupSpec::uniform(3, 2).unwrap()).unwrap();
        // colour blown edge by parity of the endpoint sum: (0,2,4) is all even
        let c = EdgeColouring::from_fn(b.graph(), 2, |u, v| ((u + v) % 2) as u8).unwrap();
        let w = find_mono_canonical(&b, &c, &k3, 1).unwrap().unwrap();
        let verts: Vec<usize> = w.parts.iter().map(|p| p[0]).collect();
        assert_eq!(verts, vec![0, 2, 4]);
        assert!(find_mono_canonical(&b, &c, &k3, 2).unwrap().is_none());
    }
}
