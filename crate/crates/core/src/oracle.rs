//! Brute-force reference implementations.
//!
//! These are the ground truth in cross-module tests: written definition-first,
//! sharing no code with the algorithms they check, and guarded by explicit
//! budgets so an accidental large input fails fast instead of hanging.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::{Colour, ColouredGraph, Colouring, Edge, Graph};

/// Budgets enforced before (and during) the exponential scans.
#[derive(Debug, Clone)]
pub struct OracleBudget {
    /// Cap for 2^|E| colouring scans.
    pub max_edges: usize,
    /// Cap for all-cycle enumeration.
    pub max_cycle_edges: usize,
    /// Cap on each bipartition part for permutation scans.
    pub max_part: usize,
    pub time_limit: Duration,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_edges: 24,
            max_cycle_edges: 14,
            max_part: 8,
            time_limit: Duration::from_secs(120),
        }
    }
}

struct Deadline {
    started: Instant,
    limit: Duration,
    ticks: u64,
}

impl Deadline {
    fn new(limit: Duration) -> Deadline {
        Deadline {
            started: Instant::now(),
            limit,
            ticks: 0,
        }
    }

    fn check(&mut self) -> Result<()> {
        self.ticks += 1;
        if self.ticks.is_multiple_of(4096) && self.started.elapsed() > self.limit {
            return Err(Error::BudgetExceeded("time limit".into()));
        }
        Ok(())
    }
}

/// Every difference-k colouring, by scanning all 2^|E| assignments for
/// deg_B(v) - deg_R(v) = k at all vertices. A difference-k colouring is
/// defined only for bipartite graphs, so non-bipartite inputs have none.
/// Results in canonical order.
pub fn oracle_difference_k(g: &Graph, k: i64, budget: &OracleBudget) -> Result<Vec<Colouring>> {
    if g.bipartition().is_err() {
        return Ok(Vec::new());
    }
    let edges = g.edges();
    if edges.len() > budget.max_edges {
        return Err(Error::BudgetExceeded(format!(
            "{} edges exceed the {}-edge scan budget",
            edges.len(),
            budget.max_edges
        )));
    }
    // Bitmask per vertex over edge indices; bit set = edge incident.
    let vertex_masks: Vec<u64> = g
        .vertex_names()
        .iter()
        .map(|v| {
            edges
                .iter()
                .enumerate()
                .filter(|(_, e)| e.touches(v))
                .fold(0u64, |m, (i, _)| m | (1 << i))
        })
        .collect();
    // A vertex of degree d needs (d + k) / 2 blue edges.
    let mut targets = Vec::with_capacity(vertex_masks.len());
    for mask in &vertex_masks {
        let d = mask.count_ones() as i64;
        if (d + k) % 2 != 0 || d + k < 0 || k > d {
            return Ok(Vec::new());
        }
        targets.push(((d + k) / 2) as u32);
    }

    let mut deadline = Deadline::new(budget.time_limit);
    let mut found = Vec::new();
    for blue_mask in 0u64..(1u64 << edges.len()) {
        deadline.check()?;
        let ok = vertex_masks
            .iter()
            .zip(&targets)
            .all(|(mask, &target)| (blue_mask & mask).count_ones() == target);
        if ok {
            let mut colouring = Colouring::default();
            for (i, e) in edges.iter().enumerate() {
                let colour = if blue_mask >> i & 1 == 1 {
                    Colour::Blue
                } else {
                    Colour::Red
                };
                colouring.set(e.clone(), colour);
            }
            found.push(colouring);
        }
    }
    Ok(found)
}

/// Enumerates every simple cycle as a vertex sequence. Each cycle is reported
/// once, rooted at its smallest vertex with its smaller neighbour second.
pub fn all_cycles(g: &Graph, budget: &OracleBudget) -> Result<Vec<Vec<String>>> {
    if g.edge_count() > budget.max_cycle_edges {
        return Err(Error::BudgetExceeded(format!(
            "{} edges exceed the {}-edge cycle enumeration budget",
            g.edge_count(),
            budget.max_cycle_edges
        )));
    }
    let n = g.vertex_count();
    let mut deadline = Deadline::new(budget.time_limit);
    let mut cycles = Vec::new();
    let mut path: Vec<usize> = Vec::new();
    let mut on_path = vec![false; n];

    // Depth-first search for cycles whose minimum vertex is `root`, visiting
    // only vertices greater than root; direction deduped by requiring the
    // second vertex to be smaller than the last.
    fn dfs(
        g: &Graph,
        root: usize,
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
        cycles: &mut Vec<Vec<String>>,
        deadline: &mut Deadline,
    ) -> Result<()> {
        let here = *path.last().expect("path holds at least the root");
        for &next in g.neighbour_indices(here) {
            deadline.check()?;
            if next == root && path.len() >= 3 {
                if path[1] < *path.last().unwrap() {
                    cycles.push(path.iter().map(|&i| g.name(i).to_string()).collect());
                }
            } else if next > root && !on_path[next] {
                path.push(next);
                on_path[next] = true;
                dfs(g, root, path, on_path, cycles, deadline)?;
                on_path[next] = false;
                path.pop();
            }
        }
        Ok(())
    }

    for root in 0..n {
        path.push(root);
        on_path[root] = true;
        dfs(g, root, &mut path, &mut on_path, &mut cycles, &mut deadline)?;
        on_path[root] = false;
        path.pop();
    }
    Ok(cycles)
}

/// The common cycle classes computed from the definition: enumerate all
/// cycles, link edges that share a cycle, take the transitive closure.
pub fn oracle_cycle_relation(g: &Graph, budget: &OracleBudget) -> Result<Vec<Vec<Edge>>> {
    let cycles = all_cycles(g, budget)?;
    let mut class_of: BTreeMap<Edge, usize> = BTreeMap::new();
    let mut parents: Vec<usize> = Vec::new();

    fn find(parents: &mut [usize], mut x: usize) -> usize {
        while parents[x] != x {
            parents[x] = parents[parents[x]];
            x = parents[x];
        }
        x
    }

    for cycle in &cycles {
        let edges: Vec<Edge> = (0..cycle.len())
            .map(|i| Edge::new(cycle[i].as_str(), cycle[(i + 1) % cycle.len()].as_str()))
            .collect();
        let mut first: Option<usize> = None;
        for e in edges {
            let id = *class_of.entry(e).or_insert_with(|| {
                parents.push(parents.len());
                parents.len() - 1
            });
            let root = find(&mut parents, id);
            match first {
                None => first = Some(root),
                Some(f) => {
                    let f = find(&mut parents, f);
                    parents[root] = f;
                    first = Some(f);
                }
            }
        }
    }

    let mut classes: BTreeMap<usize, Vec<Edge>> = BTreeMap::new();
    for (e, id) in &class_of {
        let root = find(&mut parents, *id);
        classes.entry(root).or_default().push(e.clone());
    }
    let mut out: Vec<Vec<Edge>> = classes.into_values().collect();
    for class in &mut out {
        class.sort();
    }
    out.sort();
    Ok(out)
}

fn part_orders_exist(
    fixed_part: &[String],
    constrained_part: &[String],
    cg: &ColouredGraph,
    deadline: &mut Deadline,
) -> Result<bool> {
    // Search over all orders of `fixed_part`; each vertex of
    // `constrained_part` must see its neighbours alternate blue, red, ...,
    // blue in that order.
    let k = fixed_part.len();
    for perm in fixed_part.iter().permutations(k) {
        deadline.check()?;
        let position: BTreeMap<&str, usize> = perm
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let ok = constrained_part.iter().all(|u| {
            let mut nbrs: Vec<(&usize, Colour)> = cg
                .graph
                .neighbours(u)
                .into_iter()
                .map(|w| {
                    (
                        &position[w],
                        cg.colouring
                            .get(&Edge::new(u.as_str(), w))
                            .expect("total colouring"),
                    )
                })
                .collect();
            nbrs.sort_by_key(|(p, _)| **p);
            if nbrs.is_empty() {
                return false; // isolated vertices never alternate blue..blue
            }
            nbrs.iter().enumerate().all(|(i, (_, c))| {
                let want = if i % 2 == 0 { Colour::Blue } else { Colour::Red };
                *c == want
            }) && nbrs.len() % 2 == 1
        });
        if ok {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Exhaustive configurability check straight from the definition: some order
/// of each part makes every opposite vertex's incident edges alternate blue,
/// red, ..., blue. A vertex's condition constrains only the opposite part's
/// order, so the two parts are searched independently.
pub fn oracle_configurable(cg: &ColouredGraph, budget: &OracleBudget) -> Result<bool> {
    let part1: Vec<String> = cg.bipartition.part1.iter().cloned().collect();
    let part2: Vec<String> = cg.bipartition.part2.iter().cloned().collect();
    for part in [&part1, &part2] {
        if part.len() > budget.max_part {
            return Err(Error::BudgetExceeded(format!(
                "part of {} vertices exceeds the {}-vertex permutation budget",
                part.len(),
                budget.max_part
            )));
        }
    }
    let mut deadline = Deadline::new(budget.time_limit);
    Ok(part_orders_exist(&part2, &part1, cg, &mut deadline)?
        && part_orders_exist(&part1, &part2, cg, &mut deadline)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;

    fn budget() -> OracleBudget {
        OracleBudget::default()
    }

    #[test]
    fn p2_has_one_difference_1_colouring() {
        let g = gallery::p2();
        let list = oracle_difference_k(&g, 1, &budget()).unwrap();
        assert_eq!(list.len(), 1);
        assert_eq!(
            list[0].get(&Edge::new("u", "v")),
            Some(Colour::Blue)
        );
    }

    #[test]
    fn k33_has_six_difference_1_colourings() {
        let list = oracle_difference_k(&gallery::k33(), 1, &budget()).unwrap();
        assert_eq!(list.len(), 6);
    }

    #[test]
    fn c6_has_no_difference_1_colouring() {
        assert!(oracle_difference_k(&gallery::cycle(6), 1, &budget())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn pinwheel_has_two_and_bowtie_four() {
        assert_eq!(
            oracle_difference_k(&gallery::pinwheel(), 1, &budget()).unwrap().len(),
            2
        );
        assert_eq!(
            oracle_difference_k(&gallery::bowtie(), 1, &budget()).unwrap().len(),
            4
        );
    }

    #[test]
    fn budget_rejects_large_edge_sets() {
        let g = gallery::surplus_parity_ring();
        assert!(matches!(
            oracle_difference_k(&g, 1, &budget()),
            Err(Error::BudgetExceeded(_))
        ));
    }

    /// Strips degree-1 vertices so the cycle enumeration budget is spent on
    /// edges that can actually lie on cycles.
    fn without_leaves(g: &Graph) -> Graph {
        let keep: std::collections::BTreeSet<String> = g
            .vertex_names()
            .iter()
            .filter(|v| g.degree(v) > 1)
            .cloned()
            .collect();
        g.induced(&keep)
    }

    #[test]
    fn cycle_relation_examples() {
        let bow = without_leaves(&gallery::bowtie());
        let classes = oracle_cycle_relation(&bow, &budget()).unwrap();
        assert_eq!(classes.len(), 2);
        assert!(classes.iter().all(|c| c.len() == 4));

        let theta = without_leaves(&gallery::theta());
        let classes = oracle_cycle_relation(&theta, &budget()).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].len(), 9);

        let tree = gallery::double_star(2, 2);
        assert!(oracle_cycle_relation(&tree, &budget()).unwrap().is_empty());
    }

    #[test]
    fn all_cycles_of_k33() {
        // K33 has nine 4-cycles and six 6-cycles.
        let cycles = all_cycles(&gallery::k33(), &budget()).unwrap();
        let fours = cycles.iter().filter(|c| c.len() == 4).count();
        let sixes = cycles.iter().filter(|c| c.len() == 6).count();
        assert_eq!((fours, sixes), (9, 6));
        assert_eq!(cycles.len(), 15);
    }

    #[test]
    fn p2_is_configurable() {
        let g = gallery::p2();
        let c = oracle_difference_k(&g, 1, &budget()).unwrap().remove(0);
        let cg = ColouredGraph::new(g, c).unwrap();
        assert!(oracle_configurable(&cg, &budget()).unwrap());
    }

    #[test]
    fn no_k33_colouring_is_configurable() {
        let g = gallery::k33();
        for c in oracle_difference_k(&g, 1, &budget()).unwrap() {
            let cg = ColouredGraph::new(g.clone(), c).unwrap();
            assert!(!oracle_configurable(&cg, &budget()).unwrap());
        }
    }

    #[test]
    fn pinwheel_colourings_are_configurable() {
        let g = gallery::pinwheel();
        for c in oracle_difference_k(&g, 1, &budget()).unwrap() {
            let cg = ColouredGraph::new(g.clone(), c).unwrap();
            assert!(oracle_configurable(&cg, &budget()).unwrap());
        }
    }

    #[test]
    fn betweenness_conflict_is_never_configurable() {
        let g = gallery::betweenness_conflict();
        let colourings = oracle_difference_k(&g, 1, &budget()).unwrap();
        assert_eq!(colourings.len(), 2);
        for c in colourings {
            let cg = ColouredGraph::new(g.clone(), c).unwrap();
            assert!(!oracle_configurable(&cg, &budget()).unwrap());
        }
    }
}
