//! Deterministic instance generators and small-graph utilities used by the
//! test suites and benches.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::flow::{DegreeDemand, FlowNetwork, NodeId};
use crate::graph::{Bipartition, Graph};

/// Seeded RNG for reproducible suites.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn graph_from_owned(vertices: &[String], edges: &[(String, String)]) -> Graph {
    let v: Vec<&str> = vertices.iter().map(|s| s.as_str()).collect();
    let e: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    Graph::new(&v, &e).expect("generated graphs are valid")
}

/// AHU encoding of a rooted tree.
fn encode_rooted(g: &Graph, root: &str, parent: Option<&str>) -> String {
    let mut children: Vec<String> = g
        .neighbours(root)
        .into_iter()
        .filter(|w| Some(*w) != parent)
        .map(|w| encode_rooted(g, w, Some(root)))
        .collect();
    children.sort();
    format!("({})", children.concat())
}

/// Canonical form of a free tree: encode at the centre, or at both centres
/// of a bicentral tree with the halves sorted.
pub fn tree_canonical_form(g: &Graph) -> String {
    assert!(g.is_tree(), "canonical form is defined for trees");
    let mut alive: BTreeSet<String> = g.vertex_names().iter().cloned().collect();
    while alive.len() > 2 {
        let current = g.induced(&alive);
        for v in current.vertex_names() {
            if current.degree(v) <= 1 {
                alive.remove(v);
            }
        }
    }
    let centres: Vec<String> = alive.into_iter().collect();
    match centres.as_slice() {
        [c] => encode_rooted(g, c, None),
        [c1, c2] => {
            let mut halves = [
                encode_rooted(g, c1, Some(c2)),
                encode_rooted(g, c2, Some(c1)),
            ];
            halves.sort();
            format!("[{}{}]", halves[0], halves[1])
        }
        _ => unreachable!("a tree has one or two centres"),
    }
}

/// Every free tree with up to `max_vertices` vertices, one representative
/// per isomorphism class, grown by leaf extension with canonical-form
/// deduplication.
pub fn all_trees(max_vertices: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    if max_vertices == 0 {
        return out;
    }
    let single = graph_from_owned(&["t1".to_string()], &[]);
    let mut frontier = vec![single.clone()];
    out.push(single);
    for n in 2..=max_vertices {
        let mut seen: BTreeSet<String> = BTreeSet::new();
        let mut next = Vec::new();
        for tree in &frontier {
            for v in tree.vertex_names() {
                let mut vertices: Vec<String> = tree.vertex_names().to_vec();
                let new_name = format!("t{n}");
                vertices.push(new_name.clone());
                let mut edges: Vec<(String, String)> = tree
                    .edges()
                    .iter()
                    .map(|e| {
                        let (a, b) = e.endpoints();
                        (a.to_string(), b.to_string())
                    })
                    .collect();
                edges.push((v.clone(), new_name));
                let candidate = graph_from_owned(&vertices, &edges);
                if seen.insert(tree_canonical_form(&candidate)) {
                    next.push(candidate);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Backtracking isomorphism test for small graphs (degree-pruned).
pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut degs_a: Vec<usize> = a.vertex_names().iter().map(|v| a.degree(v)).collect();
    let mut degs_b: Vec<usize> = b.vertex_names().iter().map(|v| b.degree(v)).collect();
    degs_a.sort_unstable();
    degs_b.sort_unstable();
    if degs_a != degs_b {
        return false;
    }
    let n = a.vertex_count();
    // Map vertices of a in descending-degree order to same-degree vertices
    // of b, checking adjacency against everything already mapped.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(a.neighbour_indices(i).len()));
    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn rec(
        a: &Graph,
        b: &Graph,
        order: &[usize],
        depth: usize,
        mapping: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let va = order[depth];
        'candidates: for vb in 0..used.len() {
            if used[vb] || a.neighbour_indices(va).len() != b.neighbour_indices(vb).len() {
                continue;
            }
            for &earlier in &order[..depth] {
                let adjacent_a = a.neighbour_indices(va).binary_search(&earlier).is_ok();
                let adjacent_b = b
                    .neighbour_indices(vb)
                    .binary_search(&mapping[earlier])
                    .is_ok();
                if adjacent_a != adjacent_b {
                    continue 'candidates;
                }
            }
            mapping[va] = vb;
            used[vb] = true;
            if rec(a, b, order, depth + 1, mapping, used) {
                return true;
            }
            used[vb] = false;
            mapping[va] = usize::MAX;
        }
        false
    }

    rec(a, b, &order, 0, &mut mapping, &mut used)
}

/// Random connected balanced bipartite graph with at most `max_edges` edges.
/// Half the draws are plain random bipartite graphs, half are unions of
/// random perfect matchings (odd-degree-rich, so difference-1 colourable
/// instances show up often).
pub fn random_balanced_bipartite(rng: &mut ChaCha8Rng, max_edges: usize) -> Graph {
    loop {
        let p = rng.gen_range(1..=5usize);
        let a_names: Vec<String> = (1..=p).map(|i| format!("a{i}")).collect();
        let b_names: Vec<String> = (1..=p).map(|i| format!("b{i}")).collect();
        let mut edges: BTreeSet<(String, String)> = BTreeSet::new();
        if rng.gen_bool(0.5) {
            let density = rng.gen_range(0.3..0.9);
            for a in &a_names {
                for b in &b_names {
                    if rng.gen_bool(density) {
                        edges.insert((a.clone(), b.clone()));
                    }
                }
            }
        } else {
            let layers = *[1usize, 3].choose(rng).expect("nonempty");
            for _ in 0..layers {
                let mut perm: Vec<usize> = (0..p).collect();
                perm.shuffle(rng);
                for (i, &j) in perm.iter().enumerate() {
                    edges.insert((a_names[i].clone(), b_names[j].clone()));
                }
            }
        }
        // Join components with random cross edges.
        let mut vertices = a_names.clone();
        vertices.extend(b_names.clone());
        let mut g = graph_from_owned(
            &vertices,
            &edges.iter().cloned().collect::<Vec<_>>(),
        );
        let mut guard = 0;
        while !g.is_connected() && guard < 100 {
            guard += 1;
            let a = a_names[rng.gen_range(0..p)].clone();
            let b = b_names[rng.gen_range(0..p)].clone();
            edges.insert((a, b));
            g = graph_from_owned(&vertices, &edges.iter().cloned().collect::<Vec<_>>());
        }
        if g.is_connected() && g.edge_count() <= max_edges && g.edge_count() > 0 {
            return g;
        }
    }
}

/// Random connected cactus: even cycles, twigs, and leaves grown from a
/// root, then a pendant leaf added at every even-degree vertex so the
/// degree condition holds everywhere.
pub fn random_cactus(rng: &mut ChaCha8Rng, max_vertices: usize) -> Graph {
    let mut counter = 0usize;
    let mut fresh = || {
        counter += 1;
        format!("v{counter:02}")
    };
    let mut vertices = vec![fresh()];
    let mut edges: Vec<(String, String)> = Vec::new();

    let cycles = rng.gen_range(1..=2usize);
    for _ in 0..cycles {
        if vertices.len() + 3 > max_vertices {
            break;
        }
        let anchor = vertices[rng.gen_range(0..vertices.len())].clone();
        let len = *[4usize, 6].choose(rng).expect("nonempty");
        let mut prev = anchor.clone();
        for i in 1..len {
            if i == len - 1 && vertices.len() >= max_vertices {
                break;
            }
            let v = fresh();
            vertices.push(v.clone());
            edges.push((prev.clone(), v.clone()));
            prev = v;
        }
        edges.push((prev, anchor));
    }
    // A few pendant twigs or leaves.
    for _ in 0..rng.gen_range(0..=2usize) {
        if vertices.len() + 3 > max_vertices {
            break;
        }
        let anchor = vertices[rng.gen_range(0..vertices.len())].clone();
        if rng.gen_bool(0.5) {
            let base = fresh();
            let l1 = fresh();
            let l2 = fresh();
            vertices.extend([base.clone(), l1.clone(), l2.clone()]);
            edges.push((anchor, base.clone()));
            edges.push((base.clone(), l1));
            edges.push((base, l2));
        } else {
            let leaf = fresh();
            vertices.push(leaf.clone());
            edges.push((anchor, leaf));
        }
    }
    // Parity patch: a pendant leaf on every even-degree vertex.
    let g = graph_from_owned(&vertices, &edges);
    for v in g.vertex_names() {
        if g.degree(v).is_multiple_of(2) {
            let leaf = fresh();
            vertices.push(leaf.clone());
            edges.push((v.clone(), leaf));
        }
    }
    let g = graph_from_owned(&vertices, &edges);
    debug_assert!(crate::structure::is_cactus(&g));
    g
}

/// Random flow network on at most `max_middle` internal nodes with integer
/// capacities in 1..=4.
pub fn random_flow_network(rng: &mut ChaCha8Rng, max_middle: usize) -> FlowNetwork {
    let m = rng.gen_range(1..=max_middle);
    let middles: Vec<NodeId> = (1..=m).map(|i| NodeId::Vertex(format!("n{i}"))).collect();
    let mut net = FlowNetwork::new();
    let mut arcs: BTreeSet<(NodeId, NodeId)> = BTreeSet::new();
    let arc_count = rng.gen_range(m..=3 * m + 2);
    for _ in 0..arc_count {
        let from = match rng.gen_range(0..m + 1) {
            0 => NodeId::Source,
            i => middles[i - 1].clone(),
        };
        let to = match rng.gen_range(0..m + 1) {
            0 => NodeId::Sink,
            i => middles[i - 1].clone(),
        };
        if from == to {
            continue;
        }
        if arcs.insert((from.clone(), to.clone())) {
            net.add_arc(from, to, rng.gen_range(1..=4))
                .expect("generated arcs are valid");
        }
    }
    net
}

/// Random demand with r(v) uniform in 0..=deg(v).
pub fn random_demand(rng: &mut ChaCha8Rng, g: &Graph) -> DegreeDemand {
    let demand: BTreeMap<String, u64> = g
        .vertex_names()
        .iter()
        .map(|v| (v.clone(), rng.gen_range(0..=g.degree(v) as u64)))
        .collect();
    DegreeDemand::new(g, demand).expect("demand within degree bounds")
}

/// Random demand whose part1 sum does not exceed its part2 sum, matching the
/// hypothesis of the subgraph existence theorem.
pub fn random_oriented_demand(
    rng: &mut ChaCha8Rng,
    g: &Graph,
    bp: &Bipartition,
) -> (Bipartition, DegreeDemand) {
    let demand = random_demand(rng, g);
    let sum1 = demand.sum_over(bp.part1.iter());
    let sum2 = demand.sum_over(bp.part2.iter());
    if sum1 <= sum2 {
        (bp.clone(), demand)
    } else {
        (
            Bipartition {
                part1: bp.part2.clone(),
                part2: bp.part1.clone(),
            },
            demand,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;

    #[test]
    fn tree_counts_match_the_known_sequence() {
        // Numbers of free trees on 1..=10 vertices.
        let expected = [1usize, 1, 1, 2, 3, 6, 11, 23, 47, 106];
        let trees = all_trees(10);
        for (i, &want) in expected.iter().enumerate() {
            let n = i + 1;
            let got = trees.iter().filter(|t| t.vertex_count() == n).count();
            assert_eq!(got, want, "trees on {n} vertices");
        }
    }

    #[test]
    fn isomorphism_checker_basics() {
        let a = Graph::new(&["x", "y", "z"], &[("x", "y"), ("y", "z")]).unwrap();
        let b = Graph::new(&["p", "q", "r"], &[("q", "p"), ("p", "r")]).unwrap();
        assert!(are_isomorphic(&a, &b));
        let c = Graph::new(&["p", "q", "r"], &[("q", "p")]).unwrap();
        assert!(!are_isomorphic(&a, &c));
        assert!(are_isomorphic(&gallery::cycle(6), &gallery::cycle(6)));
        assert!(!are_isomorphic(&gallery::cycle(6), &gallery::k33()));
    }

    #[test]
    fn reduction_order_does_not_change_the_reduced_form() {
        // Remove a random leaf-twig configuration instead of the canonical
        // one; the reduced forms must be isomorphic. Covers all small trees
        // plus random cacti, whose cycles survive into the reduced form.
        let mut r = rng(7);
        let mut instances = all_trees(9);
        for _ in 0..60 {
            instances.push(random_cactus(&mut r, 12));
        }
        for tree in instances {
            let canonical = crate::structure::reduce(&tree);
            let mut current = tree.clone();
            loop {
                let mut candidates = Vec::new();
                for anchor in current.vertex_names() {
                    let leaves: Vec<String> = current
                        .neighbours(anchor)
                        .into_iter()
                        .filter(|w| current.degree(w) == 1)
                        .map(|s| s.to_string())
                        .collect();
                    let bases: Vec<String> = current
                        .neighbours(anchor)
                        .into_iter()
                        .filter(|w| {
                            current.degree(w) == 3
                                && current
                                    .neighbours(w)
                                    .iter()
                                    .filter(|x| **x != anchor.as_str())
                                    .all(|x| current.degree(x) == 1)
                        })
                        .map(|s| s.to_string())
                        .collect();
                    for leaf in &leaves {
                        for base in &bases {
                            candidates.push((anchor.clone(), leaf.clone(), base.clone()));
                        }
                    }
                }
                if candidates.is_empty() {
                    break;
                }
                let (anchor, leaf, base) =
                    candidates[r.gen_range(0..candidates.len())].clone();
                let mut drop: BTreeSet<String> = BTreeSet::from([leaf, base.clone()]);
                for w in current.neighbours(&base) {
                    if w != anchor {
                        drop.insert(w.to_string());
                    }
                }
                current = current.without_vertices(&drop);
            }
            assert!(
                are_isomorphic(&canonical, &current),
                "reduction order changed the reduced form of {}",
                tree.to_json()
            );
        }
    }

    #[test]
    fn random_bipartite_instances_are_connected_and_balanced() {
        let mut r = rng(11);
        for _ in 0..50 {
            let g = random_balanced_bipartite(&mut r, 18);
            assert!(g.is_connected());
            assert!(g.edge_count() <= 18);
            let bp = g.bipartition().unwrap();
            assert!(bp.is_balanced());
        }
    }

    #[test]
    fn random_cacti_are_cacti_with_odd_degrees() {
        let mut r = rng(13);
        for _ in 0..50 {
            let g = random_cactus(&mut r, 12);
            assert!(crate::structure::is_cactus(&g));
            assert!(g.bipartition().is_ok());
            assert!(g.vertex_names().iter().all(|v| g.degree(v) % 2 == 1));
        }
    }
}
