use std::collections::BTreeSet;

use rand::Rng;
use ramsey_lab::arrowing::{arrows_with, blowup_ramsey_with, ramsey_minimality};
use ramsey_lab::format::{parse_edge, write_colouring, write_hypergraph};
use ramsey_lab::hypergraph::{disconnecting_bipartite_set, shortest_cycle, verify_recolouring_preconditions};
use ramsey_lab::recolour::{stage_one, stage_two, verify_claim_per_step, verify_recolouring};
use ramsey_lab::rng::stream;
use ramsey_lab::trees::{
    is_f_coherent, lemma_tree2_witness, possible_monochromatic_copies, tree_blowup_ramsey_table, CoherenceSpec,
    Tree2Instance,
};
use ramsey_lab::unavoidable::pipeline::find_in_matrix;
use ramsey_lab::unavoidable::{
    colour_free_key, density_experiment, detect_in_matrix, drc::drc_rich_set_with, enumerate_r_minimal, unavoidable_family,
    verify_rich_set, ColourMatrix, ColouredClique, ExperimentConfig, PipelineConfig,
};
use ramsey_lab::*;
use serde_json::{json, Value};

use crate::args::*;
use crate::input;
use crate::report::{to_value, write_text_file, Failure, Outcome};

fn search_config(search: &SearchArgs, seed: u64) -> SearchConfig {
    let mut cfg = SearchConfig {
        seed,
        ..SearchConfig::default()
    };
    if let Some(b) = search.node_budget {
        cfg.node_budget = b;
    }
    cfg
}

/// A colouring as `[u, v, c]` triples in edge order.
fn triples(host: &Graph, c: &EdgeColouring) -> Vec<(usize, usize, u8)> {
    host.edges().iter().zip(c.colours()).map(|(&(u, v), &k)| (u, v, k)).collect()
}

fn edge_pairs(host: &Graph, ids: &[usize]) -> Vec<(usize, usize)> {
    ids.iter().map(|&id| host.edge(id)).collect()
}

pub fn arrows(a: &ArrowsArgs, seed: u64) -> Outcome {
    let g = input::graph(&a.pair.graph)?;
    let h = input::graph(&a.pair.target)?;
    let res = arrows_with(&g, &h, a.pair.r, &search_config(&a.pair.search, seed))?;
    if let (Some(path), Some(w)) = (&a.witness_out, &res.witness) {
        write_text_file(path, &write_colouring(&g, w))?;
    }
    Ok(json!({
        "arrows": res.arrows,
        "witness": res.witness.as_ref().map(|w| triples(&g, w)),
        "nodes": res.nodes_explored,
    }))
}

pub fn minimal(a: &PairArgs, seed: u64) -> Outcome {
    let g = input::graph(&a.graph)?;
    let h = input::graph(&a.target)?;
    let res = ramsey_minimality(&g, &h, a.r, &search_config(&a.search, seed))?;
    Ok(json!({
        "minimal": res.minimal,
        "arrows": res.arrows,
        "removable_edge": res.removable_edge,
        "nodes": res.nodes_explored,
    }))
}

pub fn blowup_ramsey(a: &BlowupRamseyArgs, seed: u64) -> Outcome {
    let g = input::graph(&a.pair.graph)?;
    let h = input::graph(&a.pair.target)?;
    let q = BlowupRamseyQuery::new(g.clone(), h, a.pair.r, a.t, a.n_max)?;
    let res = blowup_ramsey_with(&q, &search_config(&a.pair.search, seed))?;
    let witness = match &res.witness {
        Some((n, c)) => {
            let blown = blowup(&g, &BlowupSpec::uniform(g.n(), *n)?)?;
            Some(json!({ "n": n, "colouring": triples(blown.graph(), c) }))
        }
        None => None,
    };
    Ok(json!({
        "value": res.value,
        "levels": res.levels,
        "witness": witness,
        "nodes": res.nodes_explored,
    }))
}

pub fn girth_cmd(a: &GirthArgs) -> Outcome {
    let (hg, pre) = match (&a.graph, &a.target, &a.hypergraph) {
        (Some(gp), Some(hp), _) => {
            let g = input::graph(gp)?;
            let h = input::graph(hp)?;
            let hg = build_copy_hypergraph(&h, &g)?;
            let pre = match a.s {
                Some(s) => Some(verify_recolouring_preconditions(&g, &h, s)?),
                None => None,
            };
            (hg, pre)
        }
        (_, _, Some(path)) => (input::hypergraph(path)?, None),
        _ => return Err(Failure::usage("give --graph with --target, or --hypergraph")),
    };
    if let Some(path) = &a.hypergraph_out {
        write_text_file(path, &write_hypergraph(&hg))?;
    }
    let cycle = shortest_cycle(&hg);
    Ok(json!({
        "vertices": hg.num_vertices(),
        "hyperedges": hg.hyperedges().len(),
        "girth": girth(&hg),
        "linear": hg.is_linear(),
        "cycle": cycle,
        "preconditions": pre,
    }))
}

pub fn check_3cc(a: &GraphArg) -> Outcome {
    let g = input::graph(&a.graph)?;
    if g.n() >= 32 {
        return Err(Error::Config("subset enumeration is limited to fewer than 32 vertices".into()).into());
    }
    let cut = disconnecting_bipartite_set(&g);
    Ok(json!({
        "three_chromatically_connected": g.n() >= 3 && cut.is_none(),
        "disconnecting_set": cut,
    }))
}

pub fn recolour(a: &RecolourArgs) -> Outcome {
    let g = input::graph(&a.graph)?;
    let e = parse_edge(&a.edge)?;
    let c0 = input::colouring(&g, a.r, &a.colouring)?;
    let trace = stage_one(&g, e, a.pivot, &c0, a.s)?;
    let out = stage_two(&trace)?;
    let blown = blowup(&g, &BlowupSpec::uniform(g.n(), a.s.max(1))?)?;
    if let Some(path) = &a.blown_out {
        write_text_file(path, &write_colouring(blown.graph(), &out))?;
    }
    let verification = verify_recolouring(&g, a.s.max(1), &out)?;
    let claim = verify_claim_per_step(&trace)?;
    let steps: Vec<Value> = (0..=a.s)
        .map(|i| {
            json!({
                "step": i,
                "recoloured": edge_pairs(&g, &trace.recoloured[i]),
                "monochromatic_triangles": trace.triangles[i],
            })
        })
        .collect();
    Ok(json!({
        "certificate": trace.certificate,
        "steps": steps,
        "verification": verification,
        "claim": claim,
    }))
}

pub fn verify(a: &VerifyArgs) -> Outcome {
    let g = input::graph(&a.graph)?;
    let blown = blowup(&g, &BlowupSpec::uniform(g.n(), a.s)?)?;
    let c = input::colouring(blown.graph(), a.r, &a.colouring)?;
    Ok(to_value(&verify_recolouring(&g, a.s, &c)?))
}

pub fn enumerate(a: &EnumerateArgs) -> Outcome {
    let patterns = enumerate_r_minimal(a.r)?;
    let classes = a
        .quotient_colours
        .then(|| patterns.iter().map(colour_free_key).collect::<BTreeSet<_>>().len());
    Ok(json!({
        "count": patterns.len(),
        "patterns": patterns,
        "colour_free_classes": classes,
    }))
}

pub fn family(a: &FamilyArgs) -> Outcome {
    let fam = unavoidable_family(a.r, a.t)?;
    Ok(json!({
        "count": fam.members.len(),
        "max_vertices": fam.members.iter().map(|m| m.blowup.k()).max(),
        "members": fam.members,
    }))
}

fn coloured_matrix(a: &ColouredInput, seed: u64) -> Result<ColourMatrix, Failure> {
    if let Some(path) = &a.clique {
        let p = input::coloured_clique(path)?;
        if p.r() != a.r {
            return Err(Failure::usage(format!("clique has {} colours, expected {}", p.r(), a.r)));
        }
        return Ok(ColourMatrix::from_clique(&p));
    }
    if let (Some(gp), Some(cp)) = (&a.graph, &a.colouring) {
        let g = input::graph(gp)?;
        let c = input::colouring(&g, a.r, cp)?;
        return Ok(ColourMatrix::from_colouring(&g, &c)?);
    }
    if let Some(n) = a.random {
        let mut rng = stream(seed, 0);
        let cells: Vec<u8> = (0..n * n.saturating_sub(1) / 2).map(|_| rng.gen_range(0..a.r) as u8).collect();
        return Ok(ColourMatrix::from_fn(n, a.r, |u, v| cells[ColouredClique::pair_index(n, u, v)]));
    }
    Err(Failure::usage("give --clique, --graph with --colouring, or --random"))
}

pub fn detect(a: &ColouredInput, seed: u64) -> Outcome {
    let m = coloured_matrix(a, seed)?;
    let fam = unavoidable_family(a.r, a.t)?;
    let d = detect_in_matrix(&m, &fam);
    Ok(json!({ "found": d.is_some(), "detection": d }))
}

pub fn pipeline(a: &ColouredInput, seed: u64) -> Outcome {
    let m = coloured_matrix(a, seed)?;
    let fam = unavoidable_family(a.r, a.t)?;
    let cfg = PipelineConfig::defaults(a.r, a.t);
    let out = find_in_matrix(&m, &fam, seed, &cfg)?;
    let confirmed = out.found.as_ref().map(|_| detect_in_matrix(&m, &fam).is_some());
    Ok(json!({
        "found": out.found.is_some(),
        "outcome": out,
        "detection_confirms": confirmed,
        "config": cfg,
    }))
}

pub fn drc(a: &DrcArgs, seed: u64) -> Outcome {
    let g = input::graph(&a.graph)?;
    let rich = drc_rich_set_with(&g, a.k, a.t, seed, a.trials)?;
    let verified = rich.as_ref().map(|r| verify_rich_set(&g, r, a.k, a.t));
    Ok(json!({ "found": rich.is_some(), "rich_set": rich, "verified": verified }))
}

pub fn experiment(a: &ExperimentArgs, seed: u64) -> Outcome {
    let cfg = ExperimentConfig {
        n: a.n,
        r: a.r,
        t: a.t,
        min_edges: a.min_edges,
        trials: a.trials,
        seed,
    };
    Ok(to_value(&density_experiment(&cfg)?))
}

pub fn copies(a: &CopiesArgs) -> Outcome {
    let t = input::graph(&a.tree)?;
    let g = input::graph(&a.graph)?;
    let c = match &a.colouring {
        Some(path) => input::partial_colouring(&g, 2, path)?,
        None => PartialColouring::uncoloured(&g, 2),
    };
    let found = possible_monochromatic_copies(&t, &g, &c, a.colour)?;
    let listed: Vec<Value> = found
        .iter()
        .map(|cp| json!({ "edges": edge_pairs(&g, &cp.edges), "vertex_map": cp.vertex_map }))
        .collect();
    Ok(json!({ "count": found.len(), "copies": listed }))
}

pub fn coherent(a: &CoherentArgs) -> Outcome {
    let g = input::graph(&a.graph)?;
    let c = input::partial_colouring(&g, 2, &a.colouring)?;
    let spec = BlowupSpec::new(a.multiplicities.clone())?;
    let cs = CoherenceSpec::new(&g, c, spec.clone(), input::f_table(&a.f_table)?)?;
    let blown = blowup(&g, &spec)?;
    let cprime = input::colouring(blown.graph(), 2, &a.blown_colouring)?;
    Ok(to_value(&is_f_coherent(&g, &cprime, &cs)?))
}

pub fn lemma32(a: &Lemma32Args) -> Outcome {
    let text = input::read(&a.instance)?;
    let inst: Tree2Instance = serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("{}: {e}", a.instance.display())))?;
    let witness = lemma_tree2_witness(&inst)?;
    let combined = witness.and_then(|(i, j)| inst.combine(i - 1, j - 1));
    Ok(json!({ "copies": inst.copies.len(), "witness": witness, "combined": combined }))
}

pub fn table(a: &TableArgs, seed: u64) -> Outcome {
    let gs = a.graphs.iter().map(|p| input::graph(p)).collect::<Result<Vec<_>, _>>()?;
    let t = input::graph(&a.tree)?;
    let rows = tree_blowup_ramsey_table(&gs, &t, a.r, a.t, a.n_max, &search_config(&a.search, seed))?;
    Ok(json!({ "rows": rows }))
}
