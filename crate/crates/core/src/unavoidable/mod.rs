//! Coloured cliques, `r`-minimal patterns and the unavoidable family
//! `F^r_t`, with detection inside edge-coloured complete graphs.
//!
//! A coloured clique carries a colour on every vertex and every pair. It is
//! `r`-minimal when it spans all `r` colours and no proper induced
//! sub-clique does. Its `t`-blowup turns each vertex into a `t`-clique of
//! the vertex colour and each pair into a `K_{t,t}` of the pair colour.
//! Isomorphisms never permute colours.

mod bits;
pub mod drc;
pub mod experiment;
pub mod pipeline;
pub mod refine;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::colouring::EdgeColouring;
use crate::error::{Error, Result};
use crate::graph::{for_each_class_permutation, Graph};

pub(crate) use bits::Bits;
pub use drc::{drc_rich_set, verify_rich_set, RichSet};
pub use experiment::{density_experiment, ExperimentConfig, ExperimentReport};
pub use pipeline::{constructive_find, PipelineConfig, PipelineOutcome};
pub use refine::{bi_ramsey_refine, BiRamsey};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColouredClique {
    k: usize,
    r: usize,
    vcol: Vec<u8>,
    ecol: Vec<u8>,
}

impl ColouredClique {
    pub fn new(r: usize, vcol: Vec<u8>, ecol: Vec<u8>) -> Result<Self> {
        crate::colouring::check_r(r)?;
        let k = vcol.len();
        if ecol.len() != k * k.saturating_sub(1) / 2 {
            return Err(Error::InvalidColouring(format!(
                "{} pair colours given for {k} vertices",
                ecol.len()
            )));
        }
        if vcol.iter().chain(&ecol).any(|&c| c as usize >= r) {
            return Err(Error::InvalidColouring(format!("colour out of range 0..{r}")));
        }
        Ok(Self { k, r, vcol, ecol })
    }

    /// Builds a clique from colour functions.
    pub fn from_fn(k: usize, r: usize, vertex: impl Fn(usize) -> u8, pair: impl Fn(usize, usize) -> u8) -> Result<Self> {
        let vcol = (0..k).map(vertex).collect();
        let ecol = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))).map(|(u, v)| pair(u, v)).collect();
        Self::new(r, vcol, ecol)
    }

    /// Index of the pair `{u, v}` in the upper-triangle order.
    pub fn pair_index(k: usize, u: usize, v: usize) -> usize {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        debug_assert!(v < k && u != v);
        u * (2 * k - u - 1) / 2 + (v - u - 1)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn vertex_colours(&self) -> &[u8] {
        &self.vcol
    }

    pub fn vertex_colour(&self, v: usize) -> u8 {
        self.vcol[v]
    }

    pub fn edge_colour(&self, u: usize, v: usize) -> u8 {
        self.ecol[Self::pair_index(self.k, u, v)]
    }

    /// Bitmask of the colours on the vertices and pairs inside `subset`.
    pub fn colours_spanned(&self, subset: &[usize]) -> u64 {
        let mut mask = 0u64;
        for (i, &u) in subset.iter().enumerate() {
            mask |= 1 << self.vcol[u];
            for &v in &subset[i + 1..] {
                mask |= 1 << self.edge_colour(u, v);
            }
        }
        mask
    }

    /// Bitmask of the colours on pairs only.
    pub fn edge_colours_spanned(&self) -> u64 {
        self.ecol.iter().fold(0, |m, &c| m | 1 << c)
    }

    pub fn induced(&self, keep: &[usize]) -> Self {
        Self::from_fn(keep.len(), self.r, |i| self.vcol[keep[i]], |i, j| self.edge_colour(keep[i], keep[j]))
            .expect("colours already valid")
    }

    /// Canonical form up to vertex relabelling (colours fixed): the least
    /// `(vertex colours, pair colours)` over relabellings that sort vertex
    /// colours. Exponential in the class sizes; meant for small patterns.
    pub fn canonical_key(&self) -> CliqueKey {
        let mut order: Vec<usize> = (0..self.k).collect();
        order.sort_by_key(|&v| self.vcol[v]);
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for v in order {
            match classes.last_mut() {
                Some(c) if self.vcol[c[0]] == self.vcol[v] => c.push(v),
                _ => classes.push(vec![v]),
            }
        }
        let mut best: Option<Vec<u8>> = None;
        for_each_class_permutation(&classes, |perm| {
            let key: Vec<u8> = (0..self.k)
                .flat_map(|i| (i + 1..self.k).map(move |j| (i, j)))
                .map(|(i, j)| self.edge_colour(perm[i], perm[j]))
                .collect();
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        });
        let mut vcol = self.vcol.clone();
        vcol.sort_unstable();
        CliqueKey {
            k: self.k,
            vertex: vcol.into_iter().map(Some).collect(),
            sizes: vec![1; self.k],
            pairs: best.unwrap_or_default(),
        }
    }

    /// Canonical form of the edge colouring alone, through the quotient by
    /// twin classes (vertices with identical colours to all others). For a
    /// `t`-blowup with `t >= 2` of a pattern without twins this is the
    /// pattern itself with class sizes `t`.
    pub fn edge_canonical_key(&self) -> CliqueKey {
        let mut class_of = vec![usize::MAX; self.k];
        let mut reps: Vec<usize> = Vec::new();
        for x in 0..self.k {
            let found = reps.iter().position(|&y| {
                (0..self.k).all(|z| z == x || z == y || self.edge_colour(x, z) == self.edge_colour(y, z))
            });
            class_of[x] = match found {
                Some(c) => c,
                None => {
                    reps.push(x);
                    reps.len() - 1
                }
            };
        }
        let q = reps.len();
        let mut size = vec![0usize; q];
        let mut inner: Vec<Option<u8>> = vec![None; q];
        for x in 0..self.k {
            let c = class_of[x];
            size[c] += 1;
            if x != reps[c] {
                inner[c] = Some(self.edge_colour(x, reps[c]));
            }
        }
        let label = |c: usize| (size[c], inner[c]);
        let mut order: Vec<usize> = (0..q).collect();
        order.sort_by_key(|&c| label(c));
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for c in order {
            match classes.last_mut() {
                Some(cl) if label(cl[0]) == label(c) => cl.push(c),
                _ => classes.push(vec![c]),
            }
        }
        let mut best: Option<Vec<u8>> = None;
        for_each_class_permutation(&classes, |perm| {
            let key: Vec<u8> = (0..q)
                .flat_map(|i| (i + 1..q).map(move |j| (i, j)))
                .map(|(i, j)| self.edge_colour(reps[perm[i]], reps[perm[j]]))
                .collect();
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        });
        let mut labels: Vec<(usize, Option<u8>)> = (0..q).map(label).collect();
        labels.sort_unstable();
        CliqueKey {
            k: self.k,
            vertex: labels.iter().map(|l| l.1).collect(),
            sizes: labels.iter().map(|l| l.0).collect(),
            pairs: best.unwrap_or_default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CliqueKey {
    pub k: usize,
    pub vertex: Vec<Option<u8>>,
    pub sizes: Vec<usize>,
    pub pairs: Vec<u8>,
}

/// The canonical key with colour permutations also quotiented out.
pub fn colour_free_key(p: &ColouredClique) -> CliqueKey {
    let colours: Vec<u8> = (0..p.r() as u8).collect();
    let mut best: Option<CliqueKey> = None;
    for_each_class_permutation(&[colours.iter().map(|&c| c as usize).collect()], |perm| {
        let q = ColouredClique::from_fn(
            p.k(),
            p.r(),
            |v| perm[p.vertex_colour(v) as usize] as u8,
            |u, v| perm[p.edge_colour(u, v) as usize] as u8,
        )
        .expect("permuted colours stay in range");
        let key = q.canonical_key();
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    });
    best.expect("at least the identity permutation")
}

/// Spans all `r` colours while no proper induced sub-clique does. Spanning
/// is monotone under taking sub-cliques, so single-vertex deletions decide
/// it.
pub fn is_r_minimal(p: &ColouredClique, r: usize) -> bool {
    if r == 0 || r > 64 || p.r() > r {
        return false;
    }
    let all = if r == 64 { u64::MAX } else { (1u64 << r) - 1 };
    let vertices: Vec<usize> = (0..p.k()).collect();
    if p.colours_spanned(&vertices) != all {
        return false;
    }
    (0..p.k()).all(|v| {
        let rest: Vec<usize> = vertices.iter().copied().filter(|&u| u != v).collect();
        p.colours_spanned(&rest) != all
    })
}

/// All `r`-minimal coloured cliques up to colour-preserving isomorphism,
/// sorted by canonical key.
///
/// Generation: in a minimal clique every vertex `v` owns a colour `φ(v)`
/// that only occurs at `v` or on pairs at `v`. A colour owned by two
/// vertices occurs only on their pair, and no colour has three owners, so
/// there are at most `2r` vertices. For each profile of owner counts the
/// generator tries every colouring in which owned colours stay at their
/// owners, then filters and deduplicates.
pub fn enumerate_r_minimal(r: usize) -> Result<Vec<ColouredClique>> {
    if r == 0 || r > 4 {
        return Err(Error::Config(format!("r = {r}: enumeration supports 1 <= r <= 4")));
    }
    let mut found: BTreeMap<CliqueKey, ColouredClique> = BTreeMap::new();
    let mut profiles = Vec::new();
    for_each_choice(&vec![vec![0usize, 1, 2]; r], |sizes| profiles.push(sizes.to_vec()));
    for sizes in profiles {
        let k: usize = sizes.iter().sum();
        if k == 0 {
            continue;
        }
        // owners[c]: the vertices owning colour c
        let mut owners: Vec<Vec<usize>> = Vec::with_capacity(r);
        let mut next = 0;
        for &s in &sizes {
            owners.push((next..next + s).collect());
            next += s;
        }
        let allowed = |members: &[usize]| -> Vec<u8> {
            (0..r)
                .filter(|&c| owners[c].iter().all(|o| members.contains(o)))
                .map(|c| c as u8)
                .collect()
        };
        let mut slots: Vec<Vec<u8>> = (0..k).map(|v| allowed(&[v])).collect();
        for u in 0..k {
            for v in u + 1..k {
                slots.push(allowed(&[u, v]));
            }
        }
        for_each_choice(&slots, |choice| {
            let p = ColouredClique::new(r, choice[..k].to_vec(), choice[k..].to_vec()).expect("valid colours");
            if is_r_minimal(&p, r) {
                found.entry(p.canonical_key()).or_insert(p);
            }
        });
    }
    Ok(found.into_values().collect())
}

/// Calls `f` on every choice of one entry from each list, in
/// lexicographic order of positions.
fn for_each_choice<T: Copy>(lists: &[Vec<T>], mut f: impl FnMut(&[T])) {
    if lists.iter().any(Vec::is_empty) {
        return;
    }
    let mut pos = vec![0usize; lists.len()];
    let mut current: Vec<T> = lists.iter().map(|l| l[0]).collect();
    loop {
        f(&current);
        let mut i = lists.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            pos[i] += 1;
            if pos[i] < lists[i].len() {
                current[i] = lists[i][pos[i]];
                break;
            }
            pos[i] = 0;
            current[i] = lists[i][0];
        }
    }
}

/// The `t`-blowup; blown vertex `x * t + i` is copy `i` of `x`.
pub fn coloured_blowup(p: &ColouredClique, t: usize) -> Result<ColouredClique> {
    if t == 0 {
        return Err(Error::Config("blowup size t must be positive".into()));
    }
    ColouredClique::from_fn(
        p.k() * t,
        p.r(),
        |v| p.vertex_colour(v / t),
        |a, b| {
            let (x, y) = (a / t, b / t);
            if x == y {
                p.vertex_colour(x)
            } else {
                p.edge_colour(x, y)
            }
        },
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyMember {
    /// The `r`-minimal pattern.
    pub base: ColouredClique,
    /// Its `t`-blowup.
    pub blowup: ColouredClique,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnavoidableFamily {
    pub r: usize,
    pub t: usize,
    pub members: Vec<FamilyMember>,
}

impl UnavoidableFamily {
    /// Position of the member whose base pattern is isomorphic to `p`.
    pub fn position_of(&self, p: &ColouredClique) -> Option<usize> {
        let key = p.canonical_key();
        self.members.iter().position(|m| m.base.canonical_key() == key)
    }
}

pub fn unavoidable_family(r: usize, t: usize) -> Result<UnavoidableFamily> {
    if t < 2 {
        return Err(Error::Config(format!("t = {t}: unavoidable patterns need t >= 2")));
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut members = Vec::new();
    for base in enumerate_r_minimal(r)? {
        let blown = coloured_blowup(&base, t)?;
        if seen.insert(blown.edge_canonical_key()) {
            members.push(FamilyMember { base, blowup: blown });
        }
    }
    Ok(UnavoidableFamily { r, t, members })
}

/// The colour of every pair of a complete graph, as a dense matrix.
#[derive(Clone, Debug)]
pub struct ColourMatrix {
    n: usize,
    r: usize,
    cells: Vec<u8>,
    classes: Vec<Vec<Bits>>,
}

impl ColourMatrix {
    pub fn from_colouring(host: &Graph, c: &EdgeColouring) -> Result<Self> {
        c.check_host(host)?;
        let n = host.n();
        if host.m() != n * n.saturating_sub(1) / 2 {
            return Err(Error::Precondition("host graph is not complete".into()));
        }
        Ok(Self::from_fn(n, c.r(), |u, v| c.between(host, u, v)))
    }

    pub fn from_clique(p: &ColouredClique) -> Self {
        Self::from_fn(p.k(), p.r(), |u, v| p.edge_colour(u, v))
    }

    pub fn from_fn(n: usize, r: usize, f: impl Fn(usize, usize) -> u8) -> Self {
        let mut cells = vec![u8::MAX; n * n];
        let mut classes = vec![vec![Bits::empty(n); n]; r];
        for u in 0..n {
            for v in u + 1..n {
                let c = f(u, v);
                cells[u * n + v] = c;
                cells[v * n + u] = c;
                classes[c as usize][u].insert(v);
                classes[c as usize][v].insert(u);
            }
        }
        Self { n, r, cells, classes }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u8 {
        self.cells[u * self.n + v]
    }

    pub(crate) fn class(&self, colour: u8, v: usize) -> &Bits {
        &self.classes[colour as usize][v]
    }

    pub fn class_size(&self, colour: u8) -> usize {
        self.classes[colour as usize].iter().map(Bits::count).sum::<usize>() / 2
    }

    /// The colour graph of one colour class.
    pub fn class_graph(&self, colour: u8) -> Graph {
        let edges = (0..self.n).flat_map(|u| (u + 1..self.n).map(move |v| (u, v)));
        Graph::new(self.n, edges.filter(|&(u, v)| self.get(u, v) == colour).collect::<Vec<_>>())
            .expect("simple")
    }

    /// Common colour of all pairs inside `set`; `Some(None)` when `set`
    /// has fewer than two vertices.
    pub fn clique_colour(&self, set: &[usize]) -> Option<Option<u8>> {
        let mut colour = None;
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                let c = self.get(u, v);
                if *colour.get_or_insert(c) != c {
                    return None;
                }
            }
        }
        Some(colour)
    }

    /// Common colour of all pairs between `a` and `b` (assumed disjoint).
    pub fn cross_colour(&self, a: &[usize], b: &[usize]) -> Option<Option<u8>> {
        let mut colour = None;
        for &u in a {
            for &v in b {
                let c = self.get(u, v);
                if *colour.get_or_insert(c) != c {
                    return None;
                }
            }
        }
        Some(colour)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Detection {
    /// Index into the family's member list.
    pub member: usize,
    pub base: ColouredClique,
    /// `embedding[i]` is the host vertex playing blown vertex `i`.
    pub embedding: Vec<usize>,
}

/// The first family member (in family order) whose edge colouring embeds
/// into `c`, with its first embedding in lexicographic order.
pub fn detect_unavoidable(host: &Graph, c: &EdgeColouring, r: usize, t: usize) -> Result<Option<Detection>> {
    if c.r() != r {
        return Err(Error::Precondition(format!("colouring has {} colours, expected {r}", c.r())));
    }
    let m = ColourMatrix::from_colouring(host, c)?;
    let family = unavoidable_family(r, t)?;
    Ok(detect_in_matrix(&m, &family))
}

pub fn detect_in_matrix(m: &ColourMatrix, family: &UnavoidableFamily) -> Option<Detection> {
    family.members.par_iter().enumerate().find_map_first(|(i, member)| {
        embed_blowup(m, &member.blowup, family.t).map(|embedding| Detection {
            member: i,
            base: member.base.clone(),
            embedding,
        })
    })
}

/// Embeds the edge colouring of `pattern` into `m`, where consecutive runs
/// of `part` vertices are interchangeable twins (a `part`-blowup), so their
/// images are taken in increasing order.
pub fn embed_blowup(m: &ColourMatrix, pattern: &ColouredClique, part: usize) -> Option<Vec<usize>> {
    let q = pattern.k();
    let n = m.n();
    if q > n {
        return None;
    }
    if q == 0 {
        return Some(Vec::new());
    }
    let part = part.max(1);
    let r = m.r().max(pattern.r());
    // colour-degree filter
    let mut need = vec![vec![0usize; r]; q];
    for u in 0..q {
        for v in 0..q {
            if u != v {
                need[u][pattern.edge_colour(u, v) as usize] += 1;
            }
        }
    }
    let have: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..r).map(|c| if c < m.r() { m.class(c as u8, x).count() } else { 0 }).collect())
        .collect();
    let initial: Vec<Bits> = (0..q)
        .map(|u| Bits::from_iter(n, (0..n).filter(|&x| (0..r).all(|c| have[x][c] >= need[u][c]))))
        .collect();
    if pattern.edge_colours_spanned() >> m.r() != 0 {
        return None;
    }

    fn rec(
        i: usize,
        m: &ColourMatrix,
        pattern: &ColouredClique,
        part: usize,
        initial: &[Bits],
        img: &mut Vec<usize>,
        used: &mut Bits,
    ) -> bool {
        let q = pattern.k();
        if i == q {
            return true;
        }
        let mut cand = initial[i].clone();
        cand.and_not_assign(used);
        for (j, &x) in img.iter().enumerate() {
            cand.and_assign(m.class(pattern.edge_colour(i, j), x));
        }
        if i % part != 0 {
            cand.clear_through(img[i - 1]);
        }
        let list: Vec<usize> = cand.iter().collect();
        for x in list {
            img.push(x);
            used.insert(x);
            if rec(i + 1, m, pattern, part, initial, img, used) {
                return true;
            }
            used.remove(x);
            img.pop();
        }
        false
    }

    let mut img = Vec::with_capacity(q);
    let mut used = Bits::empty(n);
    rec(0, m, pattern, part, &initial, &mut img, &mut used).then_some(img)
}
