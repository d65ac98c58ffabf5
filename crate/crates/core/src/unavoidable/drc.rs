//! Dependent random choice: a `K`-set whose `t`-subsets all have large
//! common neighbourhoods, with pairwise disjoint neighbourhood pieces.

use itertools::Itertools;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::Bits;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::stream;

/// Default number of sampling rounds.
pub const DEFAULT_TRIALS: usize = 200;

/// Backtracking nodes allowed per round when choosing `S` inside `U`.
const SUBSET_BUDGET: u64 = 200_000;

/// Larger candidate pools are cut to their best vertices before
/// backtracking; keeps the poor-subset count affordable.
const POOL_CAP: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RichSet {
    /// The set `S`, sorted.
    pub s: Vec<usize>,
    /// `(X, C(X))` for every `t`-subset `X` of `S`, in lexicographic order.
    pub neighbourhoods: Vec<(Vec<usize>, Vec<usize>)>,
}

pub fn drc_rich_set(g: &Graph, k: usize, t: usize, seed: u64) -> Result<Option<RichSet>> {
    drc_rich_set_with(g, k, t, seed, DEFAULT_TRIALS)
}

/// Samples `t` vertices with repetition, keeps their common neighbourhood
/// `U`, and looks for `K` vertices of `U` whose `t`-subsets each have at
/// least `K * C(K, t) + K` common neighbours, which is enough to carve
/// disjoint pieces of size `K` greedily. Round `i` uses stream `(seed, i)`.
pub fn drc_rich_set_with(g: &Graph, k: usize, t: usize, seed: u64, trials: usize) -> Result<Option<RichSet>> {
    if t == 0 || k < t {
        return Err(Error::Config(format!("need K >= t >= 1, got K = {k}, t = {t}")));
    }
    let n = g.n();
    let adj = adjacency(g);
    let allowed = Bits::full(n);
    let subsets = crate::biclique::binomial(k, t);
    let threshold = usize::try_from(subsets).ok().and_then(|c| c.checked_mul(k)).and_then(|c| c.checked_add(k));
    let Some(threshold) = threshold else {
        return Ok(None);
    };
    for trial in 0..trials {
        let mut rng = stream(seed, trial as u64);
        let Some(s) = find_rich_subset(&adj, &allowed, k, t, threshold, &mut rng) else {
            continue;
        };
        if let Some(neighbourhoods) = carve(&adj, &allowed, &s, t, k, &Bits::from_iter(n, s.iter().copied())) {
            let rich = RichSet { s, neighbourhoods };
            if !verify_rich_set(g, &rich, k, t) {
                return Err(Error::Invariant("dependent random choice produced an invalid rich set".into()));
            }
            return Ok(Some(rich));
        }
    }
    Ok(None)
}

/// Exhaustive check: `|S| = K`, every `t`-subset listed once in order,
/// each `C(X)` of size at least `K` inside the common neighbourhood of `X`,
/// and all pieces pairwise disjoint and disjoint from `S`.
pub fn verify_rich_set(g: &Graph, rich: &RichSet, k: usize, t: usize) -> bool {
    let n = g.n();
    if rich.s.len() != k || !rich.s.windows(2).all(|w| w[0] < w[1]) || rich.s.iter().any(|&v| v >= n) {
        return false;
    }
    let expected: Vec<Vec<usize>> = rich.s.iter().copied().combinations(t).collect();
    if expected.len() != rich.neighbourhoods.len() {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in &rich.s {
        seen[v] = true;
    }
    for (want, (x, c)) in expected.iter().zip(&rich.neighbourhoods) {
        if want != x || c.len() < k {
            return false;
        }
        for &v in c {
            if v >= n || seen[v] || !x.iter().all(|&u| g.has_edge(u, v)) {
                return false;
            }
            seen[v] = true;
        }
    }
    true
}

pub(crate) fn adjacency(g: &Graph) -> Vec<Bits> {
    (0..g.n())
        .map(|v| Bits::from_iter(g.n(), g.neighbours(v).iter().copied()))
        .collect()
}

/// Common neighbourhood of `xs` inside `allowed`.
pub(crate) fn common(adj: &[Bits], allowed: &Bits, xs: &[usize]) -> Bits {
    let mut out = allowed.clone();
    for &x in xs {
        out.and_assign(&adj[x]);
    }
    out
}

/// One dependent-random-choice round: a sorted `K`-set inside the common
/// neighbourhood of `t` sampled vertices whose `t`-subsets all have at
/// least `threshold` common neighbours in `allowed`.
pub(crate) fn find_rich_subset(
    adj: &[Bits],
    allowed: &Bits,
    k: usize,
    t: usize,
    threshold: usize,
    rng: &mut impl Rng,
) -> Option<Vec<usize>> {
    let pool: Vec<usize> = allowed.iter().collect();
    if pool.is_empty() {
        return None;
    }
    let sample: Vec<usize> = (0..t).map(|_| pool[rng.gen_range(0..pool.len())]).collect();
    let u: Vec<usize> = common(adj, allowed, &sample).iter().collect();
    if u.len() < k {
        return None;
    }
    let rich = |xs: &[usize]| common(adj, allowed, xs).count() >= threshold;
    // order U by how many poor t-subsets each vertex lies in
    let mut u = u;
    if u.len() > POOL_CAP {
        let mut scored: Vec<(usize, usize)> = u.iter().map(|&v| (usize::MAX - adj[v].and(allowed).count(), v)).collect();
        scored.sort_unstable();
        u = scored.into_iter().take(POOL_CAP).map(|(_, v)| v).collect();
        u.sort_unstable();
    }
    let mut poor = vec![0usize; u.len()];
    for idx in (0..u.len()).combinations(t) {
        let xs: Vec<usize> = idx.iter().map(|&i| u[i]).collect();
        if !rich(&xs) {
            for &i in &idx {
                poor[i] += 1;
            }
        }
    }
    let mut order: Vec<usize> = (0..u.len()).collect();
    order.sort_by_key(|&i| (poor[i], u[i]));
    let cand: Vec<usize> = order.into_iter().map(|i| u[i]).collect();

    fn rec(
        cand: &[usize],
        from: usize,
        chosen: &mut Vec<usize>,
        k: usize,
        t: usize,
        rich: &dyn Fn(&[usize]) -> bool,
        nodes: &mut u64,
    ) -> bool {
        if chosen.len() == k {
            return true;
        }
        if cand.len() - from < k - chosen.len() || *nodes >= SUBSET_BUDGET {
            return false;
        }
        for i in from..cand.len() {
            *nodes += 1;
            let v = cand[i];
            let ok = t == 0
                || chosen.len() + 1 < t
                || chosen.iter().copied().combinations(t - 1).all(|mut xs| {
                    xs.push(v);
                    rich(&xs)
                });
            if ok {
                chosen.push(v);
                if rec(cand, i + 1, chosen, k, t, rich, nodes) {
                    return true;
                }
                chosen.pop();
            }
            if *nodes >= SUBSET_BUDGET {
                return false;
            }
        }
        false
    }

    let mut chosen = Vec::with_capacity(k);
    let mut nodes = 0;
    if rec(&cand, 0, &mut chosen, k, t, &rich, &mut nodes) {
        chosen.sort_unstable();
        Some(chosen)
    } else {
        None
    }
}

/// Greedily assigns each `t`-subset `X` of `s` (lexicographic order)
/// `size` vertices of its common neighbourhood in `allowed`, avoiding
/// `blocked` and every earlier piece.
pub(crate) fn carve(
    adj: &[Bits],
    allowed: &Bits,
    s: &[usize],
    t: usize,
    size: usize,
    blocked: &Bits,
) -> Option<Vec<(Vec<usize>, Vec<usize>)>> {
    let mut used = blocked.clone();
    let mut out = Vec::new();
    for x in s.iter().copied().combinations(t) {
        let mut avail = common(adj, allowed, &x);
        avail.and_not_assign(&used);
        let piece: Vec<usize> = avail.iter().take(size).collect();
        if piece.len() < size {
            return None;
        }
        for &v in &piece {
            used.insert(v);
        }
        out.push((x, piece));
    }
    Some(out)
}
