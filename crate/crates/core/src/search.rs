//! Backtracking search for an `r`-colouring of a ground set that leaves no
//! listed block monochromatic.
//!
//! Arrowing questions reduce to this: the ground set is `E(G)` and the
//! blocks are the edge sets of the copies of `H` (or of the canonical copies
//! of `H[t]` in a blowup). `G -> H` holds iff no such colouring exists.
//!
//! Items are assigned in a fixed order: descending number of blocks through
//! the item, ties by index. A partial colouring is cut as soon as a block is
//! complete and monochromatic, and forward checking forbids colour `c` on
//! the last free item of a block whose other items are all `c`. Colours are
//! introduced canonically (colour `j` only once `j - 1` is in use), which
//! quotients out colour permutations.
//!
//! Before backtracking, a seeded single-threaded local search (flip one
//! item of a random monochromatic block, greedily with some noise) looks
//! for an avoiding colouring; it can only ever report success, which the
//! caller re-verifies, and an unsuccessful run falls through to the exact
//! search.
//!
//! The search tree is split at a fixed depth into prefix branches that are
//! solved independently (in parallel under rayon) and reduced in DFS order,
//! so the witness and the reported node count do not depend on the number
//! of worker threads.

use std::sync::atomic::{AtomicUsize, Ordering};

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

const FREE: u8 = u8::MAX;

const LOCAL_MIN_ITEMS: usize = 32;
const FLIPS_PER_ITEM: u64 = 20_000;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Maximum number of search nodes (colour trials) before giving up.
    pub node_budget: u64,
    /// Depth at which the tree is cut into independently solved branches.
    pub split_depth: usize,
    /// Flips allowed to the local search; 0 disables it.
    pub local_flips: u64,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            node_budget: 2_000_000_000,
            split_depth: 10,
            local_flips: 2_000_000,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    /// A colouring of the ground set avoiding monochromatic blocks, if any.
    pub colouring: Option<Vec<u8>>,
    pub nodes: u64,
    /// Local-search flips spent.
    pub flips: u64,
}

pub struct Avoidance<'a> {
    items: usize,
    blocks: &'a [Vec<usize>],
    r: usize,
    order: Vec<usize>,
    incidence: Vec<Vec<u32>>,
}

impl<'a> Avoidance<'a> {
    pub fn new(items: usize, blocks: &'a [Vec<usize>], r: usize) -> Self {
        assert!(r >= 1 && r < FREE as usize);
        let mut incidence = vec![Vec::new(); items];
        for (b, block) in blocks.iter().enumerate() {
            for &i in block {
                incidence[i].push(b as u32);
            }
        }
        let mut order: Vec<usize> = (0..items).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(incidence[i].len()), i));
        Self {
            items,
            blocks,
            r,
            order,
            incidence,
        }
    }

    /// The assignment order of items.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn solve(&self, cfg: &SearchConfig) -> Result<SearchOutcome> {
        if self.blocks.iter().any(Vec::is_empty) {
            // an empty block is monochromatic under every colouring
            return Ok(SearchOutcome {
                colouring: None,
                nodes: 0,
                flips: 0,
            });
        }
        let (found, flips) = self.local_search(self.flip_budget(cfg.local_flips), cfg.seed);
        if let Some(colouring) = found {
            return Ok(SearchOutcome {
                colouring: Some(colouring),
                nodes: 0,
                flips,
            });
        }
        let depth = cfg.split_depth.min(self.items);
        let mut prefixes = Vec::new();
        let mut prefix_nodes = 0u64;
        {
            let mut st = State::new(self);
            st.collect_prefixes(0, depth, -1, &mut Vec::new(), &mut prefixes, &mut prefix_nodes);
        }

        let best = AtomicUsize::new(usize::MAX);
        let results: Vec<Branch> = prefixes
            .par_iter()
            .enumerate()
            .map(|(idx, prefix)| {
                if best.load(Ordering::Relaxed) < idx {
                    return Branch::Cancelled;
                }
                let mut st = State::new(self);
                let mut max_used = -1i32;
                for (d, &c) in prefix.iter().enumerate() {
                    let ok = st.assign(self.order[d], c);
                    debug_assert!(ok, "prefixes are consistent");
                    max_used = max_used.max(c as i32);
                }
                let mut ctl = Control {
                    nodes: 0,
                    budget: cfg.node_budget,
                    idx,
                    best: &best,
                };
                match st.dfs(depth, max_used, &mut ctl) {
                    Step::Found => {
                        best.fetch_min(idx, Ordering::Relaxed);
                        Branch::Found(st.colour.clone(), ctl.nodes)
                    }
                    Step::Exhausted => Branch::Empty(ctl.nodes),
                    Step::OutOfBudget => Branch::OutOfBudget,
                    Step::Cancelled => Branch::Cancelled,
                }
            })
            .collect();

        let mut nodes = prefix_nodes;
        for branch in results {
            match branch {
                Branch::Found(colouring, n) => {
                    nodes += n;
                    if nodes > cfg.node_budget {
                        return Err(Error::Inconclusive {
                            budget: cfg.node_budget,
                        });
                    }
                    return Ok(SearchOutcome {
                        colouring: Some(colouring),
                        nodes,
                        flips,
                    });
                }
                Branch::Empty(n) => {
                    nodes += n;
                    if nodes > cfg.node_budget {
                        return Err(Error::Inconclusive {
                            budget: cfg.node_budget,
                        });
                    }
                }
                Branch::OutOfBudget => {
                    return Err(Error::Inconclusive {
                        budget: cfg.node_budget,
                    })
                }
                Branch::Cancelled => unreachable!("only branches after a success are cancelled"),
            }
        }
        Ok(SearchOutcome {
            colouring: None,
            nodes,
            flips,
        })
    }

    /// Small ground sets go straight to the exact search; larger ones get a
    /// flip budget proportional to their size, capped at `limit`.
    fn flip_budget(&self, limit: u64) -> u64 {
        if self.items < LOCAL_MIN_ITEMS {
            0
        } else {
            limit.min(FLIPS_PER_ITEM * self.items as u64)
        }
    }

    /// Returns an avoiding colouring if one turns up within `max_flips`.
    fn local_search(&self, max_flips: u64, seed: u64) -> (Option<Vec<u8>>, u64) {
        let r = self.r;
        if max_flips == 0 || self.items == 0 {
            return (None, 0);
        }
        let mut rng = crate::rng::stream(seed, 0);
        let mut colour: Vec<u8> = (0..self.items).map(|_| rng.gen_range(0..r) as u8).collect();
        let nb = self.blocks.len();
        let mut counts = vec![0u32; nb * r];
        for (b, block) in self.blocks.iter().enumerate() {
            for &i in block {
                counts[b * r + colour[i] as usize] += 1;
            }
        }
        // violated blocks with their positions for O(1) removal
        let mut violated: Vec<u32> = Vec::new();
        let mut pos = vec![u32::MAX; nb];
        let is_mono = |counts: &[u32], b: usize| (0..r).any(|c| counts[b * r + c] as usize == self.blocks[b].len());
        for b in 0..nb {
            if is_mono(&counts, b) {
                pos[b] = violated.len() as u32;
                violated.push(b as u32);
            }
        }
        let mut flips = 0;
        while flips < max_flips {
            if violated.is_empty() {
                return (Some(colour), flips);
            }
            let b = violated[rng.gen_range(0..violated.len())] as usize;
            let block = &self.blocks[b];
            let (item, to) = if rng.gen_bool(0.2) {
                let item = block[rng.gen_range(0..block.len())];
                let shift = rng.gen_range(1..r.max(2)) as u8;
                (item, ((colour[item] + shift) as usize % r) as u8)
            } else {
                let mut best = (i64::MAX, 0usize, 0u8);
                for &item in block {
                    for to in 0..r as u8 {
                        if to == colour[item] {
                            continue;
                        }
                        // blocks made monochromatic minus blocks repaired
                        let mut delta = 0i64;
                        for &ob in &self.incidence[item] {
                            let ob = ob as usize;
                            let size = self.blocks[ob].len() as u32;
                            if counts[ob * r + colour[item] as usize] == size {
                                delta -= 1;
                            }
                            if counts[ob * r + to as usize] + 1 == size {
                                delta += 1;
                            }
                        }
                        if delta < best.0 {
                            best = (delta, item, to);
                        }
                    }
                }
                (best.1, best.2)
            };
            if r == 1 {
                return (None, flips);
            }
            flips += 1;
            let from = colour[item];
            colour[item] = to;
            for &ob in &self.incidence[item] {
                let ob = ob as usize;
                let was = is_mono(&counts, ob);
                counts[ob * r + from as usize] -= 1;
                counts[ob * r + to as usize] += 1;
                let now = is_mono(&counts, ob);
                if was && !now {
                    let p = pos[ob] as usize;
                    let last = *violated.last().expect("nonempty");
                    violated[p] = last;
                    pos[last as usize] = p as u32;
                    violated.pop();
                    pos[ob] = u32::MAX;
                } else if now && !was {
                    pos[ob] = violated.len() as u32;
                    violated.push(ob as u32);
                }
            }
        }
        (None, flips)
    }
}

enum Branch {
    Found(Vec<u8>, u64),
    Empty(u64),
    OutOfBudget,
    Cancelled,
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
    Cancelled,
}

struct Control<'b> {
    nodes: u64,
    budget: u64,
    idx: usize,
    best: &'b AtomicUsize,
}

enum Trail {
    Block(u32, u8),
    Forbid(u32, u8),
}

struct State<'p, 'a> {
    p: &'p Avoidance<'a>,
    colour: Vec<u8>,
    assigned: Vec<u32>,
    counts: Vec<u32>,
    forbid: Vec<u32>,
    forbidden_colours: Vec<u32>,
    trail: Vec<Trail>,
}

impl<'p, 'a> State<'p, 'a> {
    fn new(p: &'p Avoidance<'a>) -> Self {
        Self {
            p,
            colour: vec![FREE; p.items],
            assigned: vec![0; p.blocks.len()],
            counts: vec![0; p.blocks.len() * p.r],
            forbid: vec![0; p.items * p.r],
            forbidden_colours: vec![0; p.items],
            trail: Vec::new(),
        }
    }

    #[inline]
    fn is_forbidden(&self, item: usize, c: u8) -> bool {
        self.forbid[item * self.p.r + c as usize] > 0
    }

    /// Colours `item`; returns false if that completes a monochromatic block
    /// or leaves some free item without an admissible colour. Call `undo`
    /// with the returned trail mark either way.
    fn assign(&mut self, item: usize, c: u8) -> bool {
        let r = self.p.r;
        self.colour[item] = c;
        let mut ok = true;
        for &b in &self.p.incidence[item] {
            let bi = b as usize;
            let size = self.p.blocks[bi].len() as u32;
            self.assigned[bi] += 1;
            self.counts[bi * r + c as usize] += 1;
            self.trail.push(Trail::Block(b, c));
            let same = self.counts[bi * r + c as usize];
            if same == size {
                ok = false;
            } else if same == size - 1 && self.assigned[bi] == size - 1 {
                let last = *self.p.blocks[bi]
                    .iter()
                    .find(|&&i| self.colour[i] == FREE)
                    .expect("one free item remains");
                let slot = last * r + c as usize;
                self.forbid[slot] += 1;
                if self.forbid[slot] == 1 {
                    self.forbidden_colours[last] += 1;
                    if self.forbidden_colours[last] as usize == r {
                        ok = false;
                    }
                }
                self.trail.push(Trail::Forbid(last as u32, c));
            }
        }
        ok
    }

    fn undo(&mut self, item: usize, mark: usize) {
        let r = self.p.r;
        while self.trail.len() > mark {
            match self.trail.pop().expect("trail above mark") {
                Trail::Block(b, c) => {
                    self.assigned[b as usize] -= 1;
                    self.counts[b as usize * r + c as usize] -= 1;
                }
                Trail::Forbid(i, c) => {
                    let slot = i as usize * r + c as usize;
                    self.forbid[slot] -= 1;
                    if self.forbid[slot] == 0 {
                        self.forbidden_colours[i as usize] -= 1;
                    }
                }
            }
        }
        self.colour[item] = FREE;
    }

    fn admissible(&self, item: usize, max_used: i32) -> impl Iterator<Item = u8> + '_ {
        let top = ((max_used + 1) as usize).min(self.p.r - 1);
        (0..=top as u8).filter(move |&c| !self.is_forbidden(item, c))
    }

    fn collect_prefixes(
        &mut self,
        depth: usize,
        target: usize,
        max_used: i32,
        prefix: &mut Vec<u8>,
        out: &mut Vec<Vec<u8>>,
        nodes: &mut u64,
    ) {
        if depth == target {
            out.push(prefix.clone());
            return;
        }
        let item = self.p.order[depth];
        let colours: Vec<u8> = self.admissible(item, max_used).collect();
        for c in colours {
            *nodes += 1;
            let mark = self.trail.len();
            if self.assign(item, c) {
                prefix.push(c);
                self.collect_prefixes(depth + 1, target, max_used.max(c as i32), prefix, out, nodes);
                prefix.pop();
            }
            self.undo(item, mark);
        }
    }

    fn dfs(&mut self, depth: usize, max_used: i32, ctl: &mut Control<'_>) -> Step {
        if depth == self.p.order.len() {
            return Step::Found;
        }
        if ctl.nodes & 0xfff == 0 && ctl.best.load(Ordering::Relaxed) < ctl.idx {
            return Step::Cancelled;
        }
        let item = self.p.order[depth];
        let colours: Vec<u8> = self.admissible(item, max_used).collect();
        for c in colours {
            ctl.nodes += 1;
            if ctl.nodes > ctl.budget {
                return Step::OutOfBudget;
            }
            let mark = self.trail.len();
            if self.assign(item, c) {
                match self.dfs(depth + 1, max_used.max(c as i32), ctl) {
                    Step::Exhausted => {}
                    other => return other,
                }
            }
            self.undo(item, mark);
        }
        Step::Exhausted
    }
}

/// Whether some block is monochromatic under `colouring`.
pub fn has_monochromatic_block(blocks: &[Vec<usize>], colouring: &[u8]) -> bool {
    blocks.iter().any(|b| match b.split_first() {
        None => true,
        Some((&first, rest)) => rest.iter().all(|&i| colouring[i] == colouring[first]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_avoidable(items: usize, blocks: &[Vec<usize>], r: usize) -> bool {
        let total = (r as u64).pow(items as u32);
        (0..total).any(|mut code| {
            let colouring: Vec<u8> = (0..items)
                .map(|_| {
                    let c = (code % r as u64) as u8;
                    code /= r as u64;
                    c
                })
                .collect();
            !has_monochromatic_block(blocks, &colouring)
        })
    }

    #[test]
    fn matches_naive_enumeration_on_small_systems() {
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        let mut next = || {
            state ^= state << 7;
            state ^= state >> 9;
            state
        };
        for _ in 0..300 {
            let items = 3 + (next() % 6) as usize;
            let nblocks = 1 + (next() % 8) as usize;
            let blocks: Vec<Vec<usize>> = (0..nblocks)
                .map(|_| {
                    let size = 2 + (next() % 2) as usize;
                    let mut b: Vec<usize> = (0..size).map(|_| (next() % items as u64) as usize).collect();
                    b.sort_unstable();
                    b.dedup();
                    b
                })
                .collect();
            for r in 1..=3 {
                for split in [0, 2, 20] {
                    let cfg = SearchConfig {
                        node_budget: u64::MAX,
                        split_depth: split,
                        local_flips: if split == 2 { 0 } else { 1000 },
                        seed: 0,
                    };
                    let out = Avoidance::new(items, &blocks, r).solve(&cfg).unwrap();
                    assert_eq!(out.colouring.is_some(), naive_avoidable(items, &blocks, r));
                    if let Some(c) = out.colouring {
                        assert!(!has_monochromatic_block(&blocks, &c));
                        assert!(c.iter().all(|&x| (x as usize) < r));
                    }
                }
            }
        }
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        // triangles of K_6 as blocks over its 15 edges: unavoidable with two colours
        let k6 = crate::graph::Graph::complete(6);
        let blocks: Vec<Vec<usize>> = crate::copies::enumerate_copies(&crate::graph::Graph::complete(3), &k6)
            .into_iter()
            .map(|c| c.edges)
            .collect();
        let cfg = SearchConfig {
            node_budget: 10,
            split_depth: 4,
            ..SearchConfig::default()
        };
        assert!(matches!(
            Avoidance::new(15, &blocks, 2).solve(&cfg),
            Err(Error::Inconclusive { budget: 10 })
        ));
    }
}
