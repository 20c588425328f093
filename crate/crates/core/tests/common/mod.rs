//! Shared helpers for the integration suites: independent reference
//! algorithms (kept free of the crate's own flow/structure machinery) and
//! the deterministic test corpora.

// Each test binary uses its own subset of these helpers.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use asbg_core::flow::{FlowNetwork, NodeId};
use asbg_core::gallery;
use asbg_core::generate;
use asbg_core::graph::{Bipartition, Colouring, Graph};
use asbg_core::oracle::{oracle_difference_k, OracleBudget};

/// The named instances every suite exercises.
pub fn curated_suite() -> Vec<(&'static str, Graph)> {
    vec![
        ("p2", gallery::p2()),
        ("c6", gallery::cycle(6)),
        ("k33", gallery::k33()),
        ("double_star_2_2", gallery::double_star(2, 2)),
        ("double_star_4_4", gallery::double_star(4, 4)),
        ("pinwheel", gallery::pinwheel()),
        ("bowtie", gallery::bowtie()),
        ("theta", gallery::theta()),
        ("betweenness_conflict", gallery::betweenness_conflict()),
        ("double_twig_bowtie", gallery::double_twig_bowtie()),
        ("domino_with_triples", gallery::domino_with_triples()),
    ]
}

/// Deterministic random suite of connected balanced bipartite graphs with at
/// most 18 edges.
pub fn random_suite(count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = generate::rng(seed);
    (0..count)
        .map(|_| generate::random_balanced_bipartite(&mut rng, 18))
        .collect()
}

/// Random cacti small enough for the permutation oracle, together with all
/// their difference-1 colourings (empty when not colourable).
pub fn cactus_suite(minimum_colourable: usize, seed: u64) -> Vec<(Graph, Vec<Colouring>)> {
    let budget = OracleBudget::default();
    let mut rng = generate::rng(seed);
    let mut out = Vec::new();
    let mut colourable = 0usize;
    let mut attempts = 0usize;
    while colourable < minimum_colourable {
        attempts += 1;
        assert!(
            attempts < 20_000,
            "cactus generation stalled at {colourable} colourable instances"
        );
        let g = generate::random_cactus(&mut rng, 12);
        if g.edge_count() > 18 || g.vertex_count() > 16 {
            continue;
        }
        let bp = g.bipartition().expect("cacti are bipartite");
        if bp.part1.len() > 8 || bp.part2.len() > 8 {
            continue;
        }
        let colourings = oracle_difference_k(&g, 1, &budget).expect("within budget");
        if !colourings.is_empty() {
            colourable += 1;
        }
        out.push((g, colourings));
    }
    out
}

/// Kuhn's augmenting-path maximum matching; true iff part1 is saturated.
pub fn kuhn_saturates_part1(g: &Graph, bp: &Bipartition) -> bool {
    let part1: Vec<&String> = bp.part1.iter().collect();
    let mut matched_to: BTreeMap<&str, &str> = BTreeMap::new(); // part2 -> part1

    fn try_augment<'a>(
        g: &'a Graph,
        u: &'a str,
        visited: &mut BTreeSet<&'a str>,
        matched_to: &mut BTreeMap<&'a str, &'a str>,
    ) -> bool {
        for w in g.neighbours(u) {
            if visited.insert(w) {
                let free = match matched_to.get(w) {
                    None => true,
                    Some(prev) => try_augment(g, prev, visited, matched_to),
                };
                if free {
                    matched_to.insert(w, u);
                    return true;
                }
            }
        }
        false
    }

    for u in part1 {
        let mut visited = BTreeSet::new();
        if !try_augment(g, u, &mut visited, &mut matched_to) {
            return false;
        }
    }
    true
}

/// All-pairs shortest paths by Floyd-Warshall over vertex names.
pub fn all_pairs_distances(g: &Graph) -> BTreeMap<(String, String), usize> {
    let names = g.vertex_names();
    let n = names.len();
    const INF: usize = usize::MAX / 4;
    let mut dist = vec![vec![INF; n]; n];
    for (i, row) in dist.iter_mut().enumerate() {
        row[i] = 0;
        for &j in g.neighbour_indices(i) {
            row[j] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let through = dist[i][k] + dist[k][j];
                if through < dist[i][j] {
                    dist[i][j] = through;
                }
            }
        }
    }
    let mut out = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            if dist[i][j] < INF {
                out.insert((names[i].clone(), names[j].clone()), dist[i][j]);
            }
        }
    }
    out
}

/// Minimum cut capacity by exhausting every source-side subset.
pub fn exhaustive_min_cut(net: &FlowNetwork) -> u64 {
    let mut middles: BTreeSet<NodeId> = BTreeSet::new();
    for ((from, to), _) in net.arcs() {
        for node in [from, to] {
            if let NodeId::Vertex(_) = node {
                middles.insert(node.clone());
            }
        }
    }
    let middles: Vec<NodeId> = middles.into_iter().collect();
    assert!(middles.len() <= 12, "cut enumeration budget");
    let mut best = u64::MAX;
    for mask in 0u32..(1 << middles.len()) {
        let mut side_x: BTreeSet<&NodeId> = BTreeSet::new();
        for (i, node) in middles.iter().enumerate() {
            if mask >> i & 1 == 1 {
                side_x.insert(node);
            }
        }
        let in_x = |node: &NodeId| match node {
            NodeId::Source => true,
            NodeId::Sink => false,
            v => side_x.contains(v),
        };
        let capacity: u64 = net
            .arcs()
            .filter(|((from, to), _)| in_x(from) && !in_x(to))
            .map(|(_, c)| c)
            .sum();
        best = best.min(capacity);
    }
    best
}
