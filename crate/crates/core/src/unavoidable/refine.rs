//! Paired Ramsey refinement: monochromatic cliques inside two disjoint
//! vertex sets with a monochromatic complete bipartite graph between them.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{Bits, ColourMatrix};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiRamsey {
    /// Subset of the first set, sorted.
    pub a: Vec<usize>,
    /// Subset of the second set, sorted.
    pub b: Vec<usize>,
    /// Colour inside `a`; `None` when `a` has fewer than two vertices.
    pub colour_a: Option<u8>,
    pub colour_b: Option<u8>,
    /// Colour between `a` and `b`; `None` when either side is empty.
    pub colour_ab: Option<u8>,
}

impl BiRamsey {
    /// Re-checks all three parts against the colouring.
    pub fn verify(&self, m: &ColourMatrix) -> bool {
        m.clique_colour(&self.a) == Some(self.colour_a)
            && m.clique_colour(&self.b) == Some(self.colour_b)
            && m.cross_colour(&self.a, &self.b) == Some(self.colour_ab)
    }
}

/// Exact search for a monochromatic `K_s` in `first` and `K_t` in `second`
/// with all edges between them of one colour. The sets must be disjoint.
pub fn bi_ramsey_refine(m: &ColourMatrix, first: &[usize], second: &[usize], s: usize, t: usize) -> Result<Option<BiRamsey>> {
    if s > t {
        return Err(Error::Config(format!("need s <= t, got s = {s}, t = {t}")));
    }
    check_disjoint(m, first, second)?;
    Ok(refine(m, first, second, s, s, t).map(|mut out| {
        out.b.truncate(t);
        if out.b.len() < 2 {
            out.colour_b = None;
        }
        out
    }))
}

pub(crate) fn check_disjoint(m: &ColourMatrix, first: &[usize], second: &[usize]) -> Result<()> {
    let mut seen = vec![0u8; m.n()];
    for (tag, set) in [(1u8, first), (2, second)] {
        for &v in set {
            if v >= m.n() {
                return Err(Error::Precondition(format!("vertex {v} outside the host")));
            }
            if seen[v] != 0 {
                return Err(Error::Precondition(format!("vertex {v} repeated or in both sets")));
            }
            seen[v] = tag;
        }
    }
    Ok(())
}

/// Picks `A ⊆ first` with `min_a <= |A| <= max_a` and `B ⊆ second` with
/// `|B| >= min_b`, maximising `|A|` and then `|B|`. Ties go to the first
/// candidate in lexicographic order of `A`, then by colour.
pub(crate) fn refine(
    m: &ColourMatrix,
    first: &[usize],
    second: &[usize],
    min_a: usize,
    max_a: usize,
    min_b: usize,
) -> Option<BiRamsey> {
    let mut first = first.to_vec();
    first.sort_unstable();
    let mut second = second.to_vec();
    second.sort_unstable();
    let top = max_a.min(first.len());
    if top < min_a {
        return None;
    }
    for a in (min_a..=top).rev() {
        let mut best: Option<BiRamsey> = None;
        for_each_mono_clique(m, &first, a, |set, colour_a| {
            if let Some(found) = best_partner(m, set, &second) {
                if found.b.len() >= min_b && best.as_ref().is_none_or(|b| found.b.len() > b.b.len()) {
                    best = Some(BiRamsey { colour_a, ..found });
                }
            }
        });
        if best.is_some() {
            return best;
        }
    }
    None
}

/// Largest monochromatic clique in `second` joined monochromatically to `a`.
fn best_partner(m: &ColourMatrix, a: &[usize], second: &[usize]) -> Option<BiRamsey> {
    let n = m.n();
    let mut groups: Vec<(Option<u8>, Vec<usize>)> = Vec::new();
    if a.is_empty() {
        groups.push((None, second.to_vec()));
    } else {
        for cb in 0..m.r() as u8 {
            let members: Vec<usize> = second.iter().copied().filter(|&v| a.iter().all(|&u| m.get(u, v) == cb)).collect();
            groups.push((Some(cb), members));
        }
    }
    let mut best: Option<BiRamsey> = None;
    for (colour_ab, members) in groups {
        if members.is_empty() {
            continue;
        }
        let pool = Bits::from_iter(n, members.iter().copied());
        for cc in 0..m.r() as u8 {
            let clique = max_clique(m, cc, &pool);
            if best.as_ref().is_none_or(|b| clique.len() > b.b.len()) {
                let colour_b = (clique.len() >= 2).then_some(cc);
                best = Some(BiRamsey {
                    a: a.to_vec(),
                    b: clique,
                    colour_a: None,
                    colour_b,
                    colour_ab,
                });
            }
        }
    }
    best
}

/// Calls `f` on every monochromatic clique of size `a` inside `set`
/// (sorted input, lexicographic output per colour).
fn for_each_mono_clique(m: &ColourMatrix, set: &[usize], a: usize, mut f: impl FnMut(&[usize], Option<u8>)) {
    if a <= 1 {
        for sub in set.iter().copied().combinations(a) {
            f(&sub, None);
        }
        return;
    }
    fn rec(m: &ColourMatrix, colour: u8, cand: &[usize], need: usize, chosen: &mut Vec<usize>, f: &mut dyn FnMut(&[usize], Option<u8>)) {
        if need == 0 {
            f(chosen, Some(colour));
            return;
        }
        for (i, &v) in cand.iter().enumerate() {
            if cand.len() - i < need {
                break;
            }
            let next: Vec<usize> = cand[i + 1..].iter().copied().filter(|&w| m.get(v, w) == colour).collect();
            chosen.push(v);
            rec(m, colour, &next, need - 1, chosen, f);
            chosen.pop();
        }
    }
    for colour in 0..m.r() as u8 {
        rec(m, colour, set, a, &mut Vec::with_capacity(a), &mut f);
    }
}

/// Maximum clique of one colour class inside `pool`; the least one in
/// lexicographic order among those of maximum size, sorted.
pub(crate) fn max_clique(m: &ColourMatrix, colour: u8, pool: &Bits) -> Vec<usize> {
    fn rec(m: &ColourMatrix, colour: u8, cand: Bits, chosen: &mut Vec<usize>, best: &mut Vec<usize>) {
        if chosen.len() > best.len() {
            *best = chosen.clone();
        }
        let mut cand = cand;
        loop {
            let size = cand.count();
            if size == 0 || chosen.len() + size <= best.len() {
                return;
            }
            let v = cand.iter().next().expect("nonempty");
            cand.remove(v);
            let next = cand.and(m.class(colour, v));
            chosen.push(v);
            rec(m, colour, next, chosen, best);
            chosen.pop();
        }
    }
    let mut best = Vec::new();
    rec(m, colour, pool.clone(), &mut Vec::new(), &mut best);
    best
}
