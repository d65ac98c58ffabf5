use itertools::Itertools;
use ramsey_lab::arrowing::{arrows_canonical, arrows_with, blowup_ramsey_with, canonical_blocks};
use ramsey_lab::search::has_monochromatic_block;
use ramsey_lab::*;

fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    (0u32..1 << pairs.len()).map(move |mask| {
        Graph::new(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e)).unwrap()
    })
}

/// Every 2-colouring of `E(G)` has a monochromatic copy of `H`.
fn naive_arrows(g: &Graph, h: &Graph) -> bool {
    let copies: Vec<Vec<usize>> = enumerate_copies(h, g).into_iter().map(|c| c.edges).collect();
    (0u32..1 << g.m()).all(|mask| {
        let colouring: Vec<u8> = (0..g.m()).map(|i| (mask >> i & 1) as u8).collect();
        has_monochromatic_block(&copies, &colouring)
    })
}

/// Independent check that no canonical `H[t]` in `G[n]` is monochromatic:
/// recomputes the blown vertices from the part layout directly.
fn avoids_canonical(g: &Graph, h: &Graph, n: usize, t: usize, c: &EdgeColouring, blown: &Graph) -> bool {
    let colour = |a: usize, b: usize| c.between(blown, a, b);
    for copy in enumerate_copies(h, g) {
        let parts: Vec<Vec<Vec<usize>>> = copy
            .vertex_map
            .iter()
            .map(|&x| (x * n..(x + 1) * n).combinations(t).collect())
            .collect();
        for pick in parts.iter().map(|p| p.iter()).multi_cartesian_product() {
            let pick = &pick;
            let cols: Vec<u8> = h
                .edges()
                .iter()
                .flat_map(|&(a, b)| pick[a].iter().flat_map(move |&x| pick[b].iter().map(move |&y| (x, y))))
                .map(|(x, y)| colour(x, y))
                .collect();
            if cols.iter().all_equal() {
                return false;
            }
        }
    }
    true
}

#[test]
fn arrows_matches_naive_oracle_on_small_graphs() {
    let patterns = [Graph::complete(3), Graph::path(3)];
    for n in 2..=5 {
        for g in all_graphs(n).filter(|g| g.m() <= 9) {
            for h in &patterns {
                let got = arrows(&g, h, 2).unwrap();
                assert_eq!(got.arrows, naive_arrows(&g, h), "{g:?} {h:?}");
                if let Some(w) = &got.witness {
                    assert!(enumerate_copies(h, &g).iter().all(|cp| w.monochromatic(&cp.edges).is_none()));
                }
            }
        }
    }
}

#[test]
fn arrowing_is_monotone_under_adding_edges() {
    for g in all_graphs(5).step_by(37) {
        if !arrows(&g, &Graph::path(3), 2).unwrap().arrows {
            continue;
        }
        for (u, v) in (0..5).tuple_combinations() {
            if let Ok(bigger) = g.with_edge(u, v) {
                assert!(arrows(&bigger, &Graph::path(3), 2).unwrap().arrows);
            }
        }
    }
}

#[test]
fn witnesses_do_not_depend_on_split_or_threads() {
    let g = Graph::complete(5);
    let h = Graph::complete(3);
    let base = arrows(&g, &h, 2).unwrap();
    for split in [0, 3, 30] {
        let cfg = SearchConfig {
            split_depth: split,
            local_flips: 0,
            ..SearchConfig::default()
        };
        let exact = arrows_with(&g, &h, 2, &cfg).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let single = pool.install(|| arrows_with(&g, &h, 2, &cfg).unwrap());
        assert_eq!(exact, single);
        assert!(!exact.arrows);
    }
    assert!(!base.arrows);
}

#[test]
fn unit_blowup_number_is_one() {
    for (g, h, r) in [
        (Graph::complete(6), Graph::complete(3), 2),
        (Graph::complete(3), Graph::path(3), 2),
        (Graph::cycle(5), Graph::path(3), 2),
        (Graph::path(3), Graph::path(3), 1),
    ] {
        let q = BlowupRamseyQuery::new(g, h, r, 1, 3).unwrap();
        assert_eq!(blowup_ramsey_number(&q).unwrap(), Some(1));
    }
}

#[test]
fn one_colour_blowup_number_is_t() {
    for t in 1..=3 {
        let q = BlowupRamseyQuery::new(Graph::path(3), Graph::path(3), 1, t, 4).unwrap();
        assert_eq!(blowup_ramsey_number(&q).unwrap(), Some(t));
    }
}

#[test]
fn blowup_number_is_monotone_in_t() {
    // the star K_{1,3} arrows P_3 in two colours by pigeonhole
    let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
    let cfg = SearchConfig::default();
    let mut last = Some(0);
    for t in 1..=2 {
        let q = BlowupRamseyQuery::new(star.clone(), Graph::path(3), 2, t, 4).unwrap();
        let value = blowup_ramsey_with(&q, &cfg).unwrap().value;
        match (last, value) {
            (Some(a), Some(b)) => assert!(b >= a),
            (None, Some(_)) => panic!("value reappeared for larger t"),
            _ => {}
        }
        last = value;
    }
}

#[test]
fn k3_blowup_levels_agree_with_exhaustive_enumeration_at_n2() {
    // K_3[2] has 12 edges: all 4096 colourings
    let g = Graph::complete(3);
    let h = Graph::path(3);
    let blown = blowup(&g, &BlowupSpec::uniform(3, 2).unwrap()).unwrap();
    let blocks = canonical_blocks(&blown, &h, 2);
    let avoidable = (0u32..1 << 12).any(|mask| {
        let colouring: Vec<u8> = (0..12).map(|i| (mask >> i & 1) as u8).collect();
        !has_monochromatic_block(&blocks, &colouring)
    });
    let res = arrows_canonical(&g, &h, 2, 2, 2, &SearchConfig::default()).unwrap();
    assert_eq!(res.arrows, !avoidable);
}

#[test]
fn avoiding_witnesses_pass_an_independent_check() {
    let cfg = SearchConfig::default();
    for g in [Graph::complete(3), Graph::cycle(5)] {
        for n in 2..=6 {
            let res = arrows_canonical(&g, &Graph::path(3), 2, 2, n, &cfg).unwrap();
            let w = res.witness.expect("avoidable up to n = 6");
            let blown = blowup(&g, &BlowupSpec::uniform(g.n(), n).unwrap()).unwrap();
            assert!(avoids_canonical(&g, &Graph::path(3), n, 2, &w, blown.graph()));
        }
    }
}

#[test]
fn precondition_and_config_errors() {
    let q = BlowupRamseyQuery::new(Graph::complete(5), Graph::complete(3), 2, 2, 3).unwrap();
    assert!(matches!(blowup_ramsey_number(&q), Err(Error::Precondition(_))));
    assert!(BlowupRamseyQuery::new(Graph::complete(3), Graph::path(3), 2, 0, 3).is_err());
    assert!(BlowupRamseyQuery::new(Graph::complete(3), Graph::path(3), 0, 1, 3).is_err());
    let cfg = SearchConfig {
        node_budget: 5,
        local_flips: 0,
        ..SearchConfig::default()
    };
    assert!(matches!(
        arrows_with(&Graph::complete(6), &Graph::complete(3), 2, &cfg),
        Err(Error::Inconclusive { .. })
    ));
}
