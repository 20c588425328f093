//! Module-level invariants: property tests over random structures and
//! seeded cross-checks against the independent reference algorithms.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use asbg_core::colouring::{decide_difference1, decide_unicyclic, verify_difference1_parts};
use asbg_core::flow::{decide_difference_k, max_flow};
use asbg_core::generate;
use asbg_core::graph::{Colour, Graph};
use asbg_core::oracle::{all_cycles, oracle_cycle_relation, OracleBudget};
use asbg_core::structure::{
    bfs_layers, common_cycle_classes, limbs, reduce, skeleton, VertexType,
};
use asbg_core::{asm, gallery, Error};
use rand::Rng;

/// Strategy: a simple graph on up to `max_n` vertices named g0, g1, ...
fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let m = pairs.len();
        proptest::collection::vec(proptest::bool::ANY, m).prop_map(move |mask| {
            let vertices: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
            let edges: Vec<(String, String)> = pairs
                .iter()
                .zip(&mask)
                .filter(|(_, keep)| **keep)
                .map(|(&(i, j), _)| (format!("g{i}"), format!("g{j}")))
                .collect();
            let v: Vec<&str> = vertices.iter().map(|s| s.as_str()).collect();
            let e: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
            Graph::new(&v, &e).expect("generated graph is simple")
        })
    })
}

proptest! {
    #[test]
    fn json_round_trip_is_identity(g in small_graph(8)) {
        let parsed = Graph::from_json(&g.to_json()).unwrap();
        prop_assert_eq!(parsed, g);
    }

    /// Two independent routes: below the cycle-enumeration budget, an odd
    /// cycle must exist exactly when bipartition fails; on anything up to 10
    /// vertices, an exhaustive scan of all 2-colourings must agree.
    #[test]
    fn bipartition_succeeds_iff_no_odd_cycle(g in small_graph(10)) {
        if g.edge_count() <= 14 {
            let has_odd_cycle = all_cycles(&g, &OracleBudget::default())
                .unwrap()
                .iter()
                .any(|c| c.len() % 2 == 1);
            prop_assert_eq!(g.bipartition().is_err(), has_odd_cycle);
        }
        let n = g.vertex_count();
        let some_proper = (0u32..(1 << n)).any(|mask| {
            g.edges().iter().all(|e| {
                let (a, b) = e.endpoints();
                let (i, j) = (g.index_of(a).unwrap(), g.index_of(b).unwrap());
                (mask >> i & 1) != (mask >> j & 1)
            })
        });
        prop_assert_eq!(g.bipartition().is_ok(), some_proper);
    }

    #[test]
    fn colourable_components_are_balanced(g in small_graph(8)) {
        if let Some(c) = decide_difference1(&g).colouring() {
            prop_assert!(verify_difference1_parts(&g, c));
            for comp in g.components() {
                let bp = comp.bipartition().unwrap();
                prop_assert!(bp.is_balanced());
            }
        }
    }

    /// Total-behaviour check on arbitrary shapes: disconnected and
    /// non-bipartite graphs included.
    #[test]
    fn pipeline_matches_oracle_on_arbitrary_small_graphs(g in small_graph(7)) {
        prop_assume!(g.edge_count() <= 14);
        let oracle = !asbg_core::oracle::oracle_difference_k(&g, 1, &OracleBudget::default())
            .unwrap()
            .is_empty();
        prop_assert_eq!(decide_difference1(&g).is_colourable(), oracle);
    }

    #[test]
    fn permutation_matrices_round_trip(perm in proptest::sample::subsequence((0..6usize).collect::<Vec<_>>(), 6)) {
        // Any permutation matrix is an ASM; push it through both conversions.
        prop_assume!(!perm.is_empty());
        let n = perm.len();
        let mut rows = vec![vec![0i8; n]; n];
        // subsequence keeps order; rotate it into a permutation by ranking.
        for (i, &p) in perm.iter().enumerate() {
            rows[i][p % n] = 1;
        }
        // Repair duplicate columns by shifting; build an honest permutation.
        let mut seen = vec![false; n];
        for row in rows.iter_mut() {
            let j = row.iter().position(|&x| x == 1).unwrap();
            let mut k = j;
            while seen[k % n] {
                k += 1;
            }
            row[j] = 0;
            row[k % n] = 1;
            seen[k % n] = true;
        }
        let m = asm::SignMatrix::new(rows).unwrap();
        prop_assert!(asm::is_asm(&m));
        let cg = asm::asm_to_asbg(&m).unwrap();
        for v in cg.graph.vertex_names() {
            prop_assert_eq!(cg.colouring.weight_at(&cg.graph, v), 1);
        }
        let rows_order: Vec<String> = (1..=n).map(|i| format!("r{i}")).collect();
        let cols_order: Vec<String> = (1..=n).map(|i| format!("c{i}")).collect();
        let back = asm::asbg_to_asm(&cg, &rows_order, &cols_order).unwrap();
        prop_assert_eq!(back, m);
    }
}

#[test]
fn max_flow_equals_min_cut_on_1000_random_networks() {
    let mut rng = generate::rng(0xF10);
    for i in 0..1000 {
        let net = generate::random_flow_network(&mut rng, 8);
        let (value, flow) = max_flow(&net);
        let cut = common::exhaustive_min_cut(&net);
        assert_eq!(value, cut, "network {i} flow/cut mismatch");
        // Conservation and capacity of the returned flow.
        for ((from, to), f) in &flow {
            assert!(*f <= net.capacity(from, to));
        }
    }
}

#[test]
fn bfs_layers_match_all_pairs_distances() {
    let mut rng = generate::rng(0xBA7A);
    for _ in 0..100 {
        let g = generate::random_balanced_bipartite(&mut rng, 16);
        let dist = common::all_pairs_distances(&g);
        let root = g.vertex_names()[0].clone();
        let layers = bfs_layers(&g, &root).unwrap();
        for (i, layer) in layers.iter().enumerate() {
            for v in layer {
                assert_eq!(dist.get(&(root.clone(), v.clone())), Some(&i));
            }
        }
        let total: usize = layers.iter().map(|l| l.len()).sum();
        assert_eq!(total, g.vertex_count(), "layers partition the vertex set");
    }
}

#[test]
fn cactus_layers_satisfy_the_structure_lemma() {
    let mut rng = generate::rng(0xCADE);
    for _ in 0..150 {
        let g = generate::random_cactus(&mut rng, 12);
        let root = g.vertex_names()[0].clone();
        let layers = bfs_layers(&g, &root).unwrap();
        for i in 1..layers.len() {
            for x in &layers[i] {
                let back = g
                    .neighbours(x)
                    .into_iter()
                    .filter(|w| layers[i - 1].contains(*w))
                    .count();
                assert!(back <= 2, "{x} has {back} neighbours one layer back");
                if i + 1 < layers.len() {
                    let forward: BTreeSet<&str> = g
                        .neighbours(x)
                        .into_iter()
                        .filter(|w| layers[i + 1].contains(*w))
                        .collect();
                    let sharers = layers[i]
                        .iter()
                        .filter(|y| {
                            *y != x
                                && g.neighbours(y)
                                    .into_iter()
                                    .any(|w| forward.contains(w))
                        })
                        .count();
                    assert!(sharers <= 1, "{x} shares forward neighbours with {sharers}");
                    if sharers == 1 {
                        assert_eq!(back, 1, "{x} must then have one back neighbour");
                    }
                }
            }
        }
    }
}

#[test]
fn skeleton_is_invariant_under_reduction() {
    let mut rng = generate::rng(0x5CE1);
    let mut with_cycles = 0;
    for _ in 0..200 {
        let g = generate::random_cactus(&mut rng, 12);
        if !g.has_cycle() {
            continue;
        }
        with_cycles += 1;
        let before: BTreeSet<_> = skeleton(&g).unwrap().edges().into_iter().collect();
        let after: BTreeSet<_> = skeleton(&reduce(&g)).unwrap().edges().into_iter().collect();
        assert_eq!(before, after);
    }
    assert!(with_cycles >= 100);
}

#[test]
fn cycle_classes_match_the_definitional_oracle() {
    let mut rng = generate::rng(0xC1A);
    let budget = OracleBudget::default();
    let mut checked = 0;
    while checked < 300 {
        // Random simple graphs, bipartite or not; the relation does not care.
        let n = rng.gen_range(3..=7usize);
        let vertices: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(0.4) {
                    edges.push((vertices[i].clone(), vertices[j].clone()));
                }
            }
        }
        let v: Vec<&str> = vertices.iter().map(|s| s.as_str()).collect();
        let e: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let g = Graph::new(&v, &e).unwrap();
        if g.edge_count() > 14 {
            continue;
        }
        let by_blocks: BTreeSet<Vec<_>> = common_cycle_classes(&g)
            .into_iter()
            .map(|class| class.into_iter().collect::<Vec<_>>())
            .collect();
        let by_definition: BTreeSet<Vec<_>> = oracle_cycle_relation(&g, &budget)
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(by_blocks, by_definition, "classes differ on {}", g.to_json());
        checked += 1;
    }
}

#[test]
fn limbs_partition_the_skeleton() {
    let mut rng = generate::rng(0x11B);
    let mut checked = 0;
    for _ in 0..300 {
        let g = generate::random_cactus(&mut rng, 12);
        if !g.has_cycle() {
            continue;
        }
        let sk_edges: BTreeSet<_> = skeleton(&g).unwrap().edges().into_iter().collect();
        match limbs(&g) {
            Ok(found) => {
                let mut covered = BTreeSet::new();
                for limb in &found {
                    for e in limb.edges() {
                        assert!(covered.insert(e), "limb overlap in {}", g.to_json());
                    }
                    let (a, b) = limb.endpoints();
                    let types = asbg_core::structure::classify_vertices(&g).unwrap();
                    assert_ne!(types[a], VertexType::LeafType);
                    assert_ne!(types[b], VertexType::LeafType);
                }
                assert_eq!(covered, sk_edges, "limbs must cover the skeleton");
                checked += 1;
            }
            Err(Error::AllLeafType) => {
                checked += 1;
            }
            Err(other) => panic!("unexpected limb error: {other}"),
        }
    }
    assert!(checked >= 150);
}

/// Random unicyclic graph: an even cycle with random pendant trees, no
/// parity patching, so colourable and uncolourable instances both appear.
fn random_unicyclic(rng: &mut rand_chacha::ChaCha8Rng) -> Graph {
    let mut counter = 0;
    let fresh = |counter: &mut usize| {
        *counter += 1;
        format!("u{:02}", *counter)
    };
    let len = [4usize, 6][rng.gen_range(0..2)];
    let mut vertices: Vec<String> = Vec::new();
    let mut edges: Vec<(String, String)> = Vec::new();
    for _ in 0..len {
        let v = fresh(&mut counter);
        vertices.push(v);
    }
    for i in 0..len {
        edges.push((vertices[i].clone(), vertices[(i + 1) % len].clone()));
    }
    for _ in 0..rng.gen_range(0..=4usize) {
        let anchor = vertices[rng.gen_range(0..vertices.len())].clone();
        match rng.gen_range(0..3) {
            0 => {
                let leaf = fresh(&mut counter);
                vertices.push(leaf.clone());
                edges.push((anchor, leaf));
            }
            1 => {
                let base = fresh(&mut counter);
                let l1 = fresh(&mut counter);
                let l2 = fresh(&mut counter);
                vertices.extend([base.clone(), l1.clone(), l2.clone()]);
                edges.push((anchor, base.clone()));
                edges.push((base.clone(), l1));
                edges.push((base, l2));
            }
            _ => {
                let mid = fresh(&mut counter);
                let end = fresh(&mut counter);
                vertices.extend([mid.clone(), end.clone()]);
                edges.push((anchor, mid.clone()));
                edges.push((mid, end));
            }
        }
    }
    // Half the draws get a parity patch so colourable instances appear; the
    // other half stay raw and mostly fail on even degrees.
    if rng.gen_bool(0.5) {
        let v: Vec<&str> = vertices.iter().map(|s| s.as_str()).collect();
        let e: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let g = Graph::new(&v, &e).unwrap();
        for v in g.vertex_names() {
            if g.degree(v).is_multiple_of(2) {
                let leaf = fresh(&mut counter);
                vertices.push(leaf.clone());
                edges.push((v.clone(), leaf));
            }
        }
    }
    let v: Vec<&str> = vertices.iter().map(|s| s.as_str()).collect();
    let e: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    Graph::new(&v, &e).unwrap()
}

#[test]
fn unicyclic_construction_agrees_with_the_pipeline_and_oracle() {
    let mut rng = generate::rng(0x1C1C);
    let budget = OracleBudget::default();
    let mut colourable = 0;
    for _ in 0..300 {
        let g = random_unicyclic(&mut rng);
        assert!(g.is_unicyclic());
        let special = decide_unicyclic(&g).unwrap();
        let general = decide_difference1(&g);
        assert_eq!(
            special.is_colourable(),
            general.is_colourable(),
            "routes disagree on {}",
            g.to_json()
        );
        if g.edge_count() <= 18 {
            let oracle = !asbg_core::oracle::oracle_difference_k(&g, 1, &budget)
                .unwrap()
                .is_empty();
            assert_eq!(special.is_colourable(), oracle, "oracle disagrees on {}", g.to_json());
        }
        if let Some(c) = special.colouring() {
            assert!(verify_difference1_parts(&g, c));
            colourable += 1;
        }
    }
    assert!(colourable >= 20, "only {colourable} colourable unicyclic draws");
}

/// The two independent deciders for k = 1: structural pipeline vs the exact
/// degree-constrained subgraph route. Exercised beyond oracle scale.
#[test]
fn structural_and_flow_routes_agree_on_difference_1() {
    let mut graphs: Vec<Graph> = common::curated_suite().into_iter().map(|(_, g)| g).collect();
    graphs.push(gallery::junction_sum_violator());
    graphs.push(gallery::surplus_parity_ring());
    graphs.extend(common::random_suite(300, 0xD0D0));
    graphs.extend(
        common::cactus_suite(100, 0xD1D1)
            .into_iter()
            .map(|(g, _)| g),
    );
    for g in &graphs {
        let structural = decide_difference1(g).is_colourable();
        let flow = decide_difference_k(g, 1).unwrap().is_some();
        assert_eq!(structural, flow, "routes disagree on {}", g.to_json());
    }
}

#[test]
fn vertex_type_counts_follow_the_reduced_degrees() {
    // Classification sanity on the gallery: every typed vertex has the
    // degree its type dictates in the reduced form.
    for (_, g) in common::curated_suite() {
        if !g.has_cycle() {
            continue;
        }
        let reduced = reduce(&g);
        let types = asbg_core::structure::classify_vertices(&g).unwrap();
        for (v, t) in &types {
            match t {
                VertexType::LeafType | VertexType::TwigType => {
                    assert_eq!(reduced.degree(v), 3, "{v} should have degree 3");
                }
                VertexType::TripleType => {
                    assert_eq!(reduced.degree(v), 5, "{v} should have degree 5");
                }
                VertexType::Junction | VertexType::Unclassifiable => {}
            }
        }
    }
}

#[test]
fn difference_k_outputs_satisfy_their_definition() {
    let mut rng = generate::rng(0xD1F);
    for _ in 0..200 {
        let g = generate::random_balanced_bipartite(&mut rng, 18);
        for k in 0..=3u64 {
            if let Some(c) = decide_difference_k(&g, k).unwrap() {
                for v in g.vertex_names() {
                    let blues = g
                        .edges_at(v)
                        .filter(|e| c.get(e) == Some(Colour::Blue))
                        .count() as i64;
                    let reds = g.degree(v) as i64 - blues;
                    assert_eq!(blues - reds, k as i64);
                }
            }
        }
    }
}
