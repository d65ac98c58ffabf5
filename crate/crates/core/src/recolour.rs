//! The two-stage recolouring that turns a colouring of `G` with all
//! monochromatic triangles through one edge `e` into a colouring of `G[s]`
//! with no monochromatic canonical `K_3[2]`.
//!
//! Stage 1 works in `G`: starting from `c_0`, step `i` takes every
//! monochromatic triangle of `c_{i-1}` and recolours its edge at the pivot
//! `v` that was not recoloured in step `i - 1`. Stage 2 replays the steps in
//! the blowup `G[s]`, where step `i` only touches the blown edges at
//! `v_{i+1}, .., v_s`.
//!
//! With two colours a recoloured edge is flipped; with `r > 2` it moves to
//! the cyclically next colour.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::blowup::{blowup, lift_colouring, BlowupSpec};
use crate::canonical::{list_mono_canonical, mono_canonical_in_copy, CanonicalWitness};
use crate::colouring::EdgeColouring;
use crate::copies::{enumerate_copies, CopyEmbedding};
use crate::error::{Error, Result};
use crate::graph::{normalise, Edge, Graph};

/// A triangle as its sorted vertex triple.
pub type Triangle = [usize; 3];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleRef {
    pub step: usize,
    pub triangle: Triangle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub first: TriangleRef,
    pub second: Option<TriangleRef>,
    pub shared: Vec<Edge>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisjointnessCertificate {
    pub ok: bool,
    pub violation: Option<Violation>,
}

impl std::fmt::Display for DisjointnessCertificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.violation {
            None => f.write_str("ok"),
            Some(v) => {
                write!(f, "{}: {:?} at step {}", v.reason, v.first.triangle, v.first.step)?;
                if let Some(s) = &v.second {
                    write!(f, " and {:?} at step {}", s.triangle, s.step)?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageOneTrace {
    pub graph: Graph,
    pub e: Edge,
    pub pivot: usize,
    pub s: usize,
    /// `c_0, .., c_s`.
    pub colourings: Vec<EdgeColouring>,
    /// `E_0 = {e}, E_1, .., E_s` as sorted edge ids.
    pub recoloured: Vec<Vec<usize>>,
    /// `T_0, .., T_s`: the monochromatic triangles of each `c_i`, sorted.
    pub triangles: Vec<Vec<Triangle>>,
    pub certificate: DisjointnessCertificate,
}

struct Triangles {
    vertices: Vec<Triangle>,
    edges: Vec<[usize; 3]>,
}

impl Triangles {
    fn of(g: &Graph) -> Self {
        let copies = enumerate_copies(&Graph::complete(3), g);
        let mut list: Vec<(Triangle, [usize; 3])> = copies
            .iter()
            .map(|c| {
                let v = c.vertices();
                ([v[0], v[1], v[2]], [c.edges[0], c.edges[1], c.edges[2]])
            })
            .collect();
        list.sort_unstable();
        Self {
            vertices: list.iter().map(|x| x.0).collect(),
            edges: list.iter().map(|x| x.1).collect(),
        }
    }

    fn monochromatic(&self, c: &EdgeColouring) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&i| c.monochromatic(&self.edges[i]).is_some())
            .collect()
    }
}

pub fn stage_one(g: &Graph, e: Edge, v: usize, c0: &EdgeColouring, s: usize) -> Result<StageOneTrace> {
    c0.check_host(g)?;
    let r = c0.r();
    if r < 2 {
        return Err(Error::Precondition("recolouring needs at least two colours".into()));
    }
    let e = normalise(e.0, e.1);
    let e_id = g
        .edge_id(e.0, e.1)
        .ok_or_else(|| Error::Precondition(format!("{e:?} is not an edge")))?;
    if v != e.0 && v != e.1 {
        return Err(Error::Precondition(format!("pivot {v} is not incident to {e:?}")));
    }
    let tri = Triangles::of(g);
    let mono0 = tri.monochromatic(c0);
    if let Some(&bad) = mono0.iter().find(|&&i| !tri.edges[i].contains(&e_id)) {
        return Err(Error::Precondition(format!(
            "c0 has the monochromatic triangle {:?} avoiding e",
            tri.vertices[bad]
        )));
    }

    let mut colourings = vec![c0.clone()];
    let mut recoloured = vec![vec![e_id]];
    let mut sets: Vec<Vec<usize>> = vec![mono0];
    let mut cert = Certifier::new(g, v);
    cert.check_step(0, &sets, &recoloured, &tri)?;

    for i in 1..=s {
        let prev = &sets[i - 1];
        let prev_e = &recoloured[i - 1];
        let mut targets = BTreeSet::new();
        for &t in prev {
            // the structural check of step i - 1 guarantees exactly one such edge
            let target = tri.edges[t]
                .iter()
                .copied()
                .find(|&id| {
                    let (a, b) = g.edge(id);
                    (a == v || b == v) && !prev_e.contains(&id)
                })
                .ok_or_else(|| Error::Invariant(format!("triangle {:?} has no edge to recolour", tri.vertices[t])))?;
            targets.insert(target);
        }
        let mut c = colourings[i - 1].clone();
        for &id in &targets {
            c.set(id, ((c.get(id) as usize + 1) % r) as u8);
        }
        let e_i: Vec<usize> = targets.into_iter().collect();
        let mono = tri.monochromatic(&c);
        if let Some(&bad) = mono.iter().find(|&&t| !tri.edges[t].iter().any(|id| e_i.contains(id))) {
            return Err(Error::Invariant(format!(
                "step {i}: monochromatic triangle {:?} avoids the recoloured edges",
                tri.vertices[bad]
            )));
        }
        colourings.push(c);
        recoloured.push(e_i);
        sets.push(mono);
        cert.check_step(i, &sets, &recoloured, &tri)?;
    }

    Ok(StageOneTrace {
        graph: g.clone(),
        e,
        pivot: v,
        s,
        colourings,
        recoloured,
        triangles: sets
            .iter()
            .map(|set| set.iter().map(|&t| tri.vertices[t]).collect())
            .collect(),
        certificate: DisjointnessCertificate { ok: true, violation: None },
    })
}

struct Certifier<'g> {
    g: &'g Graph,
    v: usize,
}

impl<'g> Certifier<'g> {
    fn new(g: &'g Graph, v: usize) -> Self {
        Self { g, v }
    }

    /// Checks the triangles of step `i` against each other and against all
    /// earlier steps. Allowed overlaps: a triangle of `T_i` may share one
    /// `E_i` edge with at most one triangle of `T_{i-1}`, and triangles of
    /// `T_i` may share `E_i` edges with each other. Also checks that every
    /// triangle of `T_i` contains the pivot and exactly one `E_i` edge.
    fn check_step(&mut self, i: usize, sets: &[Vec<usize>], recoloured: &[Vec<usize>], tri: &Triangles) -> Result<()> {
        let fail = |first: TriangleRef, second: Option<TriangleRef>, shared: Vec<usize>, reason: &str| {
            Err(Error::Disjointness(Box::new(DisjointnessCertificate {
                ok: false,
                violation: Some(Violation {
                    first,
                    second,
                    shared: shared.into_iter().map(|id| self.g.edge(id)).collect(),
                    reason: reason.to_string(),
                }),
            })))
        };
        let e_i = &recoloured[i];
        for &a in &sets[i] {
            let here = || TriangleRef {
                step: i,
                triangle: tri.vertices[a],
            };
            let mut parents = 0;
            for (j, set) in sets.iter().enumerate().take(i + 1) {
                for &b in set {
                    if j == i && b <= a {
                        continue;
                    }
                    let shared: Vec<usize> = tri.edges[a]
                        .iter()
                        .copied()
                        .filter(|id| tri.edges[b].contains(id))
                        .collect();
                    if shared.is_empty() {
                        continue;
                    }
                    let other = Some(TriangleRef {
                        step: j,
                        triangle: tri.vertices[b],
                    });
                    let single_recoloured = shared.len() == 1 && e_i.contains(&shared[0]);
                    if j + 1 == i && single_recoloured {
                        parents += 1;
                        if parents > 1 {
                            return fail(here(), other, shared, "triangle shares recoloured edges with two earlier triangles");
                        }
                    } else if !(j == i && single_recoloured) {
                        return fail(here(), other, shared, "triangles overlap outside the permitted pattern");
                    }
                }
            }
            let own: Vec<usize> = tri.edges[a].iter().copied().filter(|id| e_i.contains(id)).collect();
            if !tri.vertices[a].contains(&self.v) || own.len() != 1 {
                return fail(here(), None, own, "triangle must contain the pivot and exactly one recoloured edge");
            }
        }
        Ok(())
    }
}

/// The colourings `c'_0, .., c'_s` of `G[s]`.
pub fn stage_two_steps(trace: &StageOneTrace) -> Result<Vec<EdgeColouring>> {
    let g = &trace.graph;
    let s = trace.s;
    let blown = blowup(g, &BlowupSpec::uniform(g.n(), s.max(1))?)?;
    let bg = blown.graph();
    let mut current = lift_colouring(&blown, &trace.colourings[0])?;
    let mut steps = vec![current.clone()];
    let v = trace.pivot;
    for i in 1..=s {
        for &id in &trace.recoloured[i] {
            let (a, b) = g.edge(id);
            let u = if a == v { b } else { a };
            let colour = trace.colourings[i].get(id);
            for k in i..s {
                let vk = blown.vertex(v, k);
                for uu in blown.part(u) {
                    let blown_id = bg.edge_id(vk, uu).expect("blown edge");
                    current.set(blown_id, colour);
                }
            }
        }
        steps.push(current.clone());
    }
    Ok(steps)
}

pub fn stage_two(trace: &StageOneTrace) -> Result<EdgeColouring> {
    Ok(stage_two_steps(trace)?.pop().expect("at least c'_0"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecolouringReport {
    pub ok: bool,
    pub copies: Vec<CanonicalWitness>,
}

/// Lists every monochromatic canonical `K_3[2]` of `c` on `G[s]`.
pub fn verify_recolouring(g: &Graph, s: usize, c: &EdgeColouring) -> Result<RecolouringReport> {
    let blown = blowup(g, &BlowupSpec::uniform(g.n(), s)?)?;
    c.check_host(blown.graph())?;
    let copies = if s < 2 {
        Vec::new()
    } else {
        list_mono_canonical(&blown, c, &Graph::complete(3), 2)?
    };
    Ok(RecolouringReport {
        ok: copies.is_empty(),
        copies,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimStep {
    pub step: usize,
    pub triangles_checked: usize,
    pub ok: bool,
    pub witness: Option<CanonicalWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub ok: bool,
    pub steps: Vec<ClaimStep>,
}

/// For each step `i`, checks that no triangle of `T_{i-1}` has a
/// monochromatic canonical `K_3[2]` inside its blowup under `c'_i`.
pub fn verify_claim_per_step(trace: &StageOneTrace) -> Result<ClaimReport> {
    let g = &trace.graph;
    let s = trace.s;
    let steps_c = stage_two_steps(trace)?;
    let blown = blowup(g, &BlowupSpec::uniform(g.n(), s.max(1))?)?;
    let k3 = Graph::complete(3);
    let mut steps = Vec::with_capacity(s);
    for i in 1..=s {
        let mut witness = None;
        for tri in &trace.triangles[i - 1] {
            if s < 2 {
                break;
            }
            let copy = triangle_copy(g, tri);
            if let Some(w) = mono_canonical_in_copy(&blown, &steps_c[i], &k3, &copy, 2)? {
                witness = Some(w);
                break;
            }
        }
        steps.push(ClaimStep {
            step: i,
            triangles_checked: trace.triangles[i - 1].len(),
            ok: witness.is_none(),
            witness,
        });
    }
    Ok(ClaimReport {
        ok: steps.iter().all(|s| s.ok),
        steps,
    })
}

pub(crate) fn triangle_copy(g: &Graph, t: &Triangle) -> CopyEmbedding {
    let mut edges: Vec<usize> = [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])]
        .iter()
        .map(|&(a, b)| g.edge_id(a, b).expect("triangle edge"))
        .collect();
    edges.sort_unstable();
    CopyEmbedding {
        edges,
        vertex_map: t.to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::{BLUE, RED};

    fn k3_colouring(uw: u8, vw: u8, uv: u8) -> (Graph, EdgeColouring) {
        // u = 0, v = 1, w = 2, e = uv
        let g = Graph::complete(3);
        let c = EdgeColouring::from_fn(&g, 2, |a, b| match (a, b) {
            (0, 1) => uv,
            (0, 2) => uw,
            _ => vw,
        })
        .unwrap();
        (g, c)
    }

    #[test]
    fn flat_trace() {
        let (g, c) = k3_colouring(RED, BLUE, RED);
        let tr = stage_one(&g, (0, 1), 1, &c, 3).unwrap();
        assert!(tr.triangles.iter().all(Vec::is_empty));
        assert!(tr.recoloured[1..].iter().all(Vec::is_empty));
        let out = stage_two(&tr).unwrap();
        let blown = blowup(&g, &BlowupSpec::uniform(3, 3).unwrap()).unwrap();
        assert_eq!(out, lift_colouring(&blown, &c).unwrap());
        assert!(verify_claim_per_step(&tr).unwrap().ok);
    }

    #[test]
    fn single_red_triangle() {
        let (g, c) = k3_colouring(RED, RED, RED);
        let tr = stage_one(&g, (0, 1), 1, &c, 2).unwrap();
        assert_eq!(tr.triangles[0], vec![[0, 1, 2]]);
        let vw = g.edge_id(1, 2).unwrap();
        assert_eq!(tr.recoloured[1], vec![vw]);
        assert_eq!(tr.colourings[1].get(vw), BLUE);
        assert!(tr.triangles[1].is_empty());
        let claim = verify_claim_per_step(&tr).unwrap();
        assert!(claim.ok && claim.steps[0].triangles_checked == 1);
        assert!(verify_recolouring(&g, 2, &stage_two(&tr).unwrap()).unwrap().ok);
    }

    #[test]
    fn rejects_bad_initial_colouring() {
        let g = Graph::friendship(2);
        let c = EdgeColouring::uniform(&g, 2, RED);
        assert!(matches!(stage_one(&g, (0, 1), 0, &c, 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn overlapping_triangles_are_reported() {
        // K_4 with e = 01, pivot 0: T_0 = {012, 013}, step 1 turns 02 and 03
        // blue and completes 023, which meets both triangles of T_0
        let g = Graph::complete(4);
        let c = EdgeColouring::from_fn(&g, 2, |a, b| if (a, b) == (2, 3) { BLUE } else { RED }).unwrap();
        match stage_one(&g, (0, 1), 0, &c, 2) {
            Err(Error::Disjointness(cert)) => {
                let v = cert.violation.unwrap();
                assert!(!cert.ok);
                assert_eq!(v.first.triangle, [0, 2, 3]);
                assert_eq!(v.second.unwrap().triangle, [0, 1, 3]);
            }
            other => panic!("expected a disjointness error, got {other:?}"),
        }
    }
}
