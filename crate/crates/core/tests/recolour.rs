use itertools::Itertools;
use ramsey_lab::generators::{fan_instance, triangle_tree_instance};
use ramsey_lab::hypergraph::verify_recolouring_preconditions;
use ramsey_lab::recolour::{stage_one, stage_two, stage_two_steps, verify_claim_per_step, verify_recolouring};
use ramsey_lab::rng::stream;
use ramsey_lab::*;

/// Whether any canonical `K_3[2]` above the triangle `xyz` of `G` is
/// monochromatic under `c` on `G[s]`; blown vertex of `(x, i)` is `x*s + i`.
fn naive_mono_k32(g: &Graph, s: usize, blown: &Graph, c: &EdgeColouring, tri: [usize; 3]) -> bool {
    let _ = g;
    let parts: Vec<Vec<Vec<usize>>> = tri.iter().map(|&x| (x * s..(x + 1) * s).combinations(2).collect()).collect();
    for a in &parts[0] {
        for b in &parts[1] {
            for d in &parts[2] {
                let cols: Vec<u8> = [(a, b), (a, d), (b, d)]
                    .iter()
                    .flat_map(|(p, q)| p.iter().flat_map(move |&x| q.iter().map(move |&y| (x, y))))
                    .map(|(x, y)| c.between(blown, x, y))
                    .collect();
                if cols.iter().all_equal() {
                    return true;
                }
            }
        }
    }
    false
}

#[test]
fn generated_triangle_trees_recolour_cleanly() {
    for i in 0..20u64 {
        let s = 2 + (i % 3) as usize;
        let inst = triangle_tree_instance(s, 1 + (i % 4) as usize, (i % 5) as usize, &mut stream(23, i));
        let pre = verify_recolouring_preconditions(&inst.graph, &Graph::complete(3), s).unwrap();
        assert!(pre.girth_ok);
        let trace = stage_one(&inst.graph, inst.e, inst.pivot, &inst.c0, s).unwrap();
        assert!(trace.certificate.ok);
        let out = stage_two(&trace).unwrap();
        let report = verify_recolouring(&inst.graph, s, &out).unwrap();
        assert!(report.ok, "instance {i}: {:?}", report.copies.first());
        assert!(verify_claim_per_step(&trace).unwrap().ok);

        // independent re-check of every base triangle
        let blown = blowup(&inst.graph, &BlowupSpec::uniform(inst.graph.n(), s).unwrap()).unwrap();
        for cp in enumerate_copies(&Graph::complete(3), &inst.graph) {
            let v = cp.vertices();
            assert!(!naive_mono_k32(&inst.graph, s, blown.graph(), &out, [v[0], v[1], v[2]]));
        }
    }
}

#[test]
fn trace_invariants_hold() {
    for i in 0..20u64 {
        let s = 4;
        let inst = triangle_tree_instance(s, 3, 4, &mut stream(31, i));
        let g = &inst.graph;
        let tr = stage_one(g, inst.e, inst.pivot, &inst.c0, s).unwrap();
        let v = inst.pivot;
        assert_eq!(tr.recoloured[0], vec![g.edge_id(inst.e.0, inst.e.1).unwrap()]);
        for step in 1..=s {
            let changed: Vec<usize> = (0..g.m())
                .filter(|&id| tr.colourings[step].get(id) != tr.colourings[step - 1].get(id))
                .collect();
            assert_eq!(changed, tr.recoloured[step]);
            for &id in &tr.recoloured[step] {
                let (a, b) = g.edge(id);
                assert!(a == v || b == v);
            }
        }
        for (step, tris) in tr.triangles.iter().enumerate() {
            let colours: Vec<u8> = tris
                .iter()
                .map(|t| {
                    assert!(t.contains(&v));
                    let ids: Vec<usize> = [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])]
                        .iter()
                        .map(|&(a, b)| g.edge_id(a, b).unwrap())
                        .collect();
                    assert_eq!(ids.iter().filter(|id| tr.recoloured[step].contains(id)).count(), 1);
                    tr.colourings[step].monochromatic(&ids).unwrap()
                })
                .collect();
            assert!(colours.iter().all_equal());
            // with two colours the monochromatic colour alternates
            if step > 0 && !colours.is_empty() && !tr.triangles[step - 1].is_empty() {
                let prev_ids: Vec<usize> = {
                    let t = tr.triangles[step - 1][0];
                    vec![g.edge_id(t[0], t[1]).unwrap(), g.edge_id(t[0], t[2]).unwrap(), g.edge_id(t[1], t[2]).unwrap()]
                };
                assert_ne!(tr.colourings[step - 1].monochromatic(&prev_ids), Some(colours[0]));
            }
        }
    }
}

#[test]
fn stage_two_recolours_s_minus_i_times_s_edges_per_base_edge() {
    for i in 0..10u64 {
        let s = 2 + (i % 4) as usize;
        let inst = triangle_tree_instance(s, 4, 3, &mut stream(41, i));
        let g = &inst.graph;
        let tr = stage_one(g, inst.e, inst.pivot, &inst.c0, s).unwrap();
        let steps = stage_two_steps(&tr).unwrap();
        let blown = blowup(g, &BlowupSpec::uniform(g.n(), s).unwrap()).unwrap();
        for step in 1..=s {
            for &id in &tr.recoloured[step] {
                let differing = (0..blown.graph().m())
                    .filter(|&b| blown.base_edge(b) == id)
                    .filter(|&b| steps[step].get(b) != steps[step - 1].get(b))
                    .count();
                assert_eq!(differing, (s - step) * s);
            }
        }
    }
}

#[test]
fn fan_step_three() {
    let (v, y, u, w) = (0, 2, 3, 4);
    let s = 5;
    let inst = fan_instance(s);
    let g = &inst.graph;
    let tr = stage_one(g, inst.e, inst.pivot, &inst.c0, s).unwrap();
    assert!(tr.certificate.ok);
    assert_eq!(tr.triangles[2], vec![[v, u, w]]);
    assert_eq!(tr.recoloured[1], vec![g.edge_id(v, y).unwrap()]);
    assert_eq!(tr.recoloured[2], vec![g.edge_id(v, u).unwrap()]);
    assert_eq!(tr.recoloured[3], vec![g.edge_id(v, w).unwrap()]);

    let steps = stage_two_steps(&tr).unwrap();
    let blown = blowup(g, &BlowupSpec::uniform(g.n(), s).unwrap()).unwrap();
    let bg = blown.graph();
    for k in 0..s {
        for x in blown.part(w) {
            let expected = if k >= 3 { BLUE } else { RED };
            assert_eq!(steps[3].between(bg, blown.vertex(v, k), x), expected);
        }
        for x in blown.part(u) {
            assert_eq!(steps[2].between(bg, blown.vertex(v, k), x), if k >= 2 { RED } else { BLUE });
        }
        for x in blown.part(y) {
            assert_eq!(steps[1].between(bg, blown.vertex(v, k), x), if k >= 1 { BLUE } else { RED });
        }
    }
    // no monochromatic canonical copy with parts in u, v, w after step 3
    assert!(!naive_mono_k32(g, s, bg, &steps[3], [v, u, w]));
    let claim = verify_claim_per_step(&tr).unwrap();
    assert!(claim.steps[2].ok && claim.ok);
    assert!(verify_recolouring(g, s, &stage_two(&tr).unwrap()).unwrap().ok);
}

#[test]
fn stage_two_edge_cases() {
    let inst = fan_instance(1);
    let tr = stage_one(&inst.graph, inst.e, inst.pivot, &inst.c0, 1).unwrap();
    let blown = blowup(&inst.graph, &BlowupSpec::uniform(inst.graph.n(), 1).unwrap()).unwrap();
    assert_eq!(stage_two(&tr).unwrap(), lift_colouring(&blown, &inst.c0).unwrap());
}

#[test]
fn all_red_k3_blowup_fails_verification() {
    let g = Graph::complete(3);
    let blown = blowup(&g, &BlowupSpec::uniform(3, 2).unwrap()).unwrap();
    let red = EdgeColouring::uniform(blown.graph(), 2, RED);
    let rep = verify_recolouring(&g, 2, &red).unwrap();
    assert!(!rep.ok);
    assert_eq!(rep.copies.len(), 1);
}
