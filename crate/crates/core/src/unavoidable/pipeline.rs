//! The constructive search for an unavoidable pattern: rich sets per
//! colour, four rounds of paired refinement, assembly of a blown-up
//! coloured clique on `2r` blocks and reduction to an `r`-minimal pattern.
//!
//! Colours are 0-based here: colour `i` owns `A_i`, `C_i(T)`, `D_i`, `F_i`.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::drc::{carve, common, find_rich_subset};
use super::refine::refine;
use super::{detect_in_matrix, is_r_minimal, unavoidable_family, Bits, ColourMatrix, ColouredClique, UnavoidableFamily};
use crate::colouring::EdgeColouring;
use crate::error::{Error, Result};
use crate::graph::{for_each_class_permutation, Graph};
use crate::rng::substream;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineConfig {
    /// Rich-set size per colour.
    pub m: Vec<usize>,
    /// Size each `A_i` except the last is cut to in the first round.
    pub keep: usize,
    /// Size of each carved neighbourhood piece `C_i(T)`.
    pub ell: usize,
    /// Largest `C_i(T)` kept in the second round.
    pub cap: usize,
    pub drc_trials: usize,
    /// Independent restarts before giving up.
    pub attempts: usize,
}

impl PipelineConfig {
    /// `m_i = 4t(r - i)` for 0-based colour `i`, `ell = 4t`. The rich-set
    /// ladder shrinks any `m_i` the colouring cannot support.
    pub fn defaults(r: usize, t: usize) -> Self {
        Self {
            m: (0..r).map(|i| 4 * t * (r - i)).collect(),
            keep: t,
            ell: 4 * t,
            cap: 3 * t,
            drc_trials: 50,
            attempts: 8,
        }
    }

    fn validate(&self, r: usize, t: usize) -> Result<()> {
        if self.m.len() != r {
            return Err(Error::Config(format!("{} rich-set sizes given for {r} colours", self.m.len())));
        }
        if self.m.iter().any(|&m| m < t) || self.keep < t || self.ell < t || self.cap < t {
            return Err(Error::Config(format!("all pipeline sizes must be at least t = {t}")));
        }
        if self.drc_trials == 0 || self.attempts == 0 {
            return Err(Error::Config("drc_trials and attempts must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineFailure {
    pub stage: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineFind {
    /// Index into the family's member list.
    pub member: usize,
    pub base: ColouredClique,
    /// `embedding[i]` is the host vertex playing blown vertex `i` of the
    /// member.
    pub embedding: Vec<usize>,
    /// The final blocks `D_0, F_0, D_1, F_1, ..`, each of size `t`.
    pub blocks: Vec<Vec<usize>>,
    /// Blocks kept after reduction to an `r`-minimal pattern.
    pub kept_blocks: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineOutcome {
    pub found: Option<PipelineFind>,
    /// Why the last attempt stopped; `None` on success.
    pub failure: Option<PipelineFailure>,
    pub attempts_used: usize,
}

pub fn constructive_find(host: &Graph, c: &EdgeColouring, r: usize, t: usize, seed: u64) -> Result<PipelineOutcome> {
    constructive_find_with(host, c, r, t, seed, &PipelineConfig::defaults(r, t))
}

pub fn constructive_find_with(
    host: &Graph,
    c: &EdgeColouring,
    r: usize,
    t: usize,
    seed: u64,
    cfg: &PipelineConfig,
) -> Result<PipelineOutcome> {
    if c.r() != r {
        return Err(Error::Precondition(format!("colouring has {} colours, expected {r}", c.r())));
    }
    let m = ColourMatrix::from_colouring(host, c)?;
    let family = unavoidable_family(r, t)?;
    find_in_matrix(&m, &family, seed, cfg)
}

pub fn find_in_matrix(m: &ColourMatrix, family: &UnavoidableFamily, seed: u64, cfg: &PipelineConfig) -> Result<PipelineOutcome> {
    let (r, t) = (family.r, family.t);
    if m.r() != r {
        return Err(Error::Precondition(format!("colouring has {} colours, expected {r}", m.r())));
    }
    cfg.validate(r, t)?;
    let mut failure = None;
    for attempt in 0..cfg.attempts {
        match Run::new(m, r, t, cfg, seed, attempt as u64).execute(family)? {
            Ok(find) => {
                return Ok(PipelineOutcome {
                    found: Some(find),
                    failure: None,
                    attempts_used: attempt + 1,
                })
            }
            Err(f) => {
                let terminal = f.stage == "drc";
                failure = Some(f);
                if terminal {
                    // the ladder already went down to the smallest sizes
                    return Ok(PipelineOutcome {
                        found: None,
                        failure,
                        attempts_used: attempt + 1,
                    });
                }
            }
        }
    }
    Ok(PipelineOutcome {
        found: None,
        failure,
        attempts_used: cfg.attempts,
    })
}

type Step<T> = std::result::Result<T, PipelineFailure>;

fn fail<T>(stage: &str, reason: String) -> Result<Step<T>> {
    Ok(Err(PipelineFailure {
        stage: stage.into(),
        reason,
    }))
}

fn broken(property: &str, detail: String) -> Error {
    Error::Invariant(format!("property ({property}) failed: {detail}"))
}

struct Run<'a> {
    m: &'a ColourMatrix,
    r: usize,
    t: usize,
    cfg: &'a PipelineConfig,
    seed: u64,
    attempt: u64,
    a: Vec<Vec<usize>>,
    c: Vec<BTreeMap<Vec<usize>, Vec<usize>>>,
    used: Bits,
}

impl<'a> Run<'a> {
    fn new(m: &'a ColourMatrix, r: usize, t: usize, cfg: &'a PipelineConfig, seed: u64, attempt: u64) -> Self {
        Self {
            m,
            r,
            t,
            cfg,
            seed,
            attempt,
            a: Vec::new(),
            c: vec![BTreeMap::new(); r],
            used: Bits::empty(m.n()),
        }
    }

    fn adj(&self, colour: usize) -> Vec<Bits> {
        (0..self.m.n()).map(|v| self.m.class(colour as u8, v).clone()).collect()
    }

    fn execute(mut self, family: &UnavoidableFamily) -> Result<Step<PipelineFind>> {
        let (r, t) = (self.r, self.t);
        let n = self.m.n();

        // rich sets, shrinking toward t when a colour is too sparse
        for i in 0..r {
            let adj = self.adj(i);
            let mut allowed = Bits::full(n);
            allowed.and_not_assign(&self.used);
            let mut rng = substream(self.seed, self.attempt, i as u64);
            let mut chosen = None;
            'ladder: for size in (t..=self.cfg.m[i]).rev() {
                for _ in 0..self.cfg.drc_trials {
                    if let Some(s) = find_rich_subset(&adj, &allowed, size, t, self.cfg.ell, &mut rng) {
                        chosen = Some(s);
                        break 'ladder;
                    }
                }
            }
            let Some(s) = chosen else {
                return fail("drc", format!("insufficient density: no rich set in colour {i}"));
            };
            // (i)
            if s.len() < t || s.iter().any(|&v| self.used.contains(v)) {
                return Err(broken("i", format!("rich set {s:?} for colour {i}")));
            }
            for &v in &s {
                self.used.insert(v);
            }
            self.a.push(s);
        }

        // round 1: pairs (A_i, A_j)
        for i in 0..r {
            for j in i + 1..r {
                let min_b = if j + 1 < r { self.cfg.keep } else { t };
                let Some(out) = refine(self.m, &self.a[i], &self.a[j], t, self.cfg.keep, min_b) else {
                    return fail("step1", format!("no refinement of (A_{i}, A_{j})"));
                };
                self.a[i] = out.a;
                self.a[j] = out.b;
            }
        }
        self.check_iii()?;

        // carve C_i(T) for every colour but the last; the last colour only
        // ever needs C(D_last)
        for i in 0..r.saturating_sub(1) {
            match self.carve_for(i, &self.a[i].clone())? {
                Ok(()) => {}
                Err(f) => return Ok(Err(f)),
            }
        }

        // round 2: (C_i(T), A_j) for i < j
        for j in 1..r {
            for i in 0..j {
                let subsets: Vec<Vec<usize>> = self.a[i].iter().copied().combinations(t).collect();
                for x in subsets {
                    let piece = self.c[i][&x].clone();
                    let Some(out) = refine(self.m, &piece, &self.a[j], t, self.cfg.cap, t) else {
                        return fail("step2", format!("no refinement of (C_{i}({x:?}), A_{j})"));
                    };
                    self.c[i].insert(x, out.a);
                    self.a[j] = out.b;
                }
            }
        }
        self.check_iv()?;

        // round 3: fix D_j from the top down
        let mut d = vec![Vec::new(); r];
        let mut f = vec![Vec::new(); r];
        for j in (0..r).rev() {
            d[j] = self.a[j][..t].to_vec();
            if j + 1 == r {
                match self.carve_for(j, &d[j].clone())? {
                    Ok(()) => {}
                    Err(fl) => return Ok(Err(fl)),
                }
            }
            f[j] = self.c[j][&d[j]].clone();
            // (v), (vi)
            if !matches!(self.m.clique_colour(&d[j]), Some(Some(_))) {
                return Err(broken("v", format!("D_{j} = {:?} is not monochromatic", d[j])));
            }
            if self.m.cross_colour(&d[j], &f[j]) != Some(Some(j as u8)) {
                return Err(broken("vi", format!("(D_{j}, F_{j}) is not in colour {j}")));
            }
            for i in 0..j {
                let Some(out) = refine(self.m, &self.a[i], &f[j], t, self.a[i].len(), t) else {
                    return fail("step3", format!("no refinement of (A_{i}, F_{j})"));
                };
                self.a[i] = out.a;
                f[j] = out.b;
            }
        }
        for j in 0..r {
            for i in 0..j {
                // (vii)
                if !matches!(self.m.cross_colour(&d[j], &f[i]), Some(Some(_))) {
                    return Err(broken("vii", format!("(D_{j}, F_{i}) is not monochromatic")));
                }
            }
            for k in j + 1..r {
                // (viii)
                if !matches!(self.m.cross_colour(&d[j], &f[k]), Some(Some(_))) {
                    return Err(broken("viii", format!("(D_{j}, F_{k}) is not monochromatic")));
                }
            }
        }

        // round 4: (F_i, F_j)
        for i in 0..r {
            for j in i + 1..r {
                let Some(out) = refine(self.m, &f[i], &f[j], t, f[i].len(), t) else {
                    return fail("step4", format!("no refinement of (F_{i}, F_{j})"));
                };
                f[i] = out.a;
                f[j] = out.b;
            }
        }
        for i in 0..r {
            f[i].truncate(t);
            // (ix)
            if !matches!(self.m.clique_colour(&f[i]), Some(Some(_))) && !(r == 1 && f[i].len() == t) {
                return Err(broken("ix", format!("F_{i} is not monochromatic")));
            }
            for j in i + 1..r {
                // (x)
                if !matches!(self.m.cross_colour(&f[i], &f[j]), Some(Some(_))) {
                    return Err(broken("x", format!("(F_{i}, F_{j}) is not monochromatic")));
                }
            }
        }

        let blocks: Vec<Vec<usize>> = (0..r).flat_map(|i| [d[i].clone(), f[i].clone()]).collect();
        self.assemble(family, blocks).map(Ok)
    }

    fn carve_for(&mut self, i: usize, within: &[usize]) -> Result<Step<()>> {
        let adj = self.adj(i);
        let all = Bits::full(self.m.n());
        let Some(pieces) = carve(&adj, &all, within, self.t, self.cfg.ell, &self.used) else {
            return fail("carve", format!("not enough disjoint common neighbours for colour {i}"));
        };
        for (x, piece) in pieces {
            // (ii)
            let reach = common(&adj, &all, &x);
            if piece.len() != self.cfg.ell || piece.iter().any(|&v| !reach.contains(v) || self.used.contains(v)) {
                return Err(broken("ii", format!("C_{i}({x:?}) = {piece:?}")));
            }
            for &v in &piece {
                self.used.insert(v);
            }
            self.c[i].insert(x, piece);
        }
        Ok(Ok(()))
    }

    fn check_iii(&self) -> Result<()> {
        for i in 0..self.r {
            for j in i + 1..self.r {
                if self.m.cross_colour(&self.a[i], &self.a[j]).is_none() {
                    return Err(broken("iii", format!("(A_{i}, A_{j}) is not monochromatic")));
                }
            }
        }
        Ok(())
    }

    fn check_iv(&self) -> Result<()> {
        for j in 0..self.r {
            for i in 0..j {
                for x in self.a[i].iter().copied().combinations(self.t) {
                    if self.m.cross_colour(&self.a[j], &self.c[i][&x]).is_none() {
                        return Err(broken("iv", format!("(A_{j}, C_{i}({x:?})) is not monochromatic")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Reads off the coloured clique `J` on the blocks, deletes blocks
    /// while all colours survive and maps the result onto a family member.
    fn assemble(&self, family: &UnavoidableFamily, blocks: Vec<Vec<usize>>) -> Result<PipelineFind> {
        let (r, t, m) = (self.r, self.t, self.m);
        let q = blocks.len();
        let inner = |b: usize| m.clique_colour(&blocks[b]).flatten().unwrap_or(0);
        let between = |a: usize, b: usize| m.cross_colour(&blocks[a], &blocks[b]).flatten().expect("checked monochromatic");
        let j = ColouredClique::from_fn(q, r, inner, between)?;
        let all = (1u64 << r) - 1;
        let mut kept: Vec<usize> = (0..q).collect();
        let mut i = 0;
        while i < kept.len() {
            let mut rest = kept.clone();
            rest.remove(i);
            if j.colours_spanned(&rest) == all {
                kept = rest;
                i = 0;
            } else {
                i += 1;
            }
        }
        let pattern = j.induced(&kept);
        if !is_r_minimal(&pattern, r) {
            return Err(Error::Invariant("reduced pattern is not r-minimal".into()));
        }
        let Some(member) = family.position_of(&pattern) else {
            return Err(Error::Invariant("reduced pattern is missing from the family".into()));
        };
        let base = family.members[member].base.clone();
        let iso = isomorphism(&base, &pattern).ok_or_else(|| Error::Invariant("canonical keys agree without an isomorphism".into()))?;
        let embedding: Vec<usize> = (0..base.k() * t).map(|v| blocks[kept[iso[v / t]]][v % t]).collect();
        let blown = &family.members[member].blowup;
        for a in 0..embedding.len() {
            for b in a + 1..embedding.len() {
                if m.get(embedding[a], embedding[b]) != blown.edge_colour(a, b) {
                    return Err(Error::Invariant("assembled embedding does not preserve colours".into()));
                }
            }
        }
        if detect_in_matrix(m, family).is_none() {
            return Err(Error::Invariant("detection missed a pattern the pipeline found".into()));
        }
        Ok(PipelineFind {
            member,
            base,
            embedding,
            blocks,
            kept_blocks: kept,
        })
    }
}

/// `iso[v]` is the vertex of `target` playing vertex `v` of `source`.
fn isomorphism(source: &ColouredClique, target: &ColouredClique) -> Option<Vec<usize>> {
    let k = source.k();
    if target.k() != k {
        return None;
    }
    let mut classes: BTreeMap<u8, Vec<usize>> = BTreeMap::new();
    for v in 0..k {
        classes.entry(target.vertex_colour(v)).or_default().push(v);
    }
    let mut src: Vec<usize> = (0..k).collect();
    src.sort_by_key(|&v| source.vertex_colour(v));
    let classes: Vec<Vec<usize>> = classes.into_values().collect();
    let mut found = None;
    for_each_class_permutation(&classes, |perm| {
        if found.is_some() {
            return;
        }
        let mut map = vec![0; k];
        for (i, &v) in src.iter().enumerate() {
            map[v] = perm[i];
        }
        let ok = (0..k).all(|u| source.vertex_colour(u) == target.vertex_colour(map[u]))
            && (0..k).tuple_combinations().all(|(u, v)| source.edge_colour(u, v) == target.edge_colour(map[u], map[v]));
        if ok {
            found = Some(map);
        }
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unavoidable::coloured_blowup;

    #[test]
    fn sparse_colour_reports_insufficient_density() {
        let host = Graph::complete(30);
        let c = EdgeColouring::from_fn(&host, 2, |u, v| u8::from((u, v) == (0, 1))).unwrap();
        let out = constructive_find(&host, &c, 2, 2, 0).unwrap();
        assert!(out.found.is_none());
        let failure = out.failure.unwrap();
        assert_eq!(failure.stage, "drc");
        assert!(failure.reason.contains("insufficient density"));
    }

    #[test]
    fn isomorphism_between_relabelled_cliques() {
        let p = ColouredClique::new(2, vec![0, 1, 1], vec![0, 1, 0]).unwrap();
        let q = p.induced(&[2, 0, 1]);
        let iso = isomorphism(&p, &q).unwrap();
        for u in 0..3 {
            for v in u + 1..3 {
                assert_eq!(p.edge_colour(u, v), q.edge_colour(iso[u], iso[v]));
            }
        }
        let blown = coloured_blowup(&p, 2).unwrap();
        assert!(isomorphism(&p, &blown).is_none());
    }

    #[test]
    fn bad_config() {
        let host = Graph::complete(10);
        let c = EdgeColouring::uniform(&host, 2, 0);
        let mut cfg = PipelineConfig::defaults(2, 2);
        cfg.m = vec![4];
        assert!(constructive_find_with(&host, &c, 2, 2, 0, &cfg).is_err());
    }
}
