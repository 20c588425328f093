//! Configurations and the rotation structure of colouring spaces.
//!
//! A configuration is a pair of per-part vertex orders under which every
//! vertex's incident edges, read in the opposite part's order, alternate
//! blue, red, ..., blue. Every difference-1 colouring of a cactus graph is
//! configurable by a layer-by-layer construction. Distinct difference-1
//! colourings of one graph differ exactly by edge-disjoint alternating cycle
//! rotations, which makes the whole colouring space reachable from any seed.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::colouring::{decide_difference1, verify_difference1, verify_difference1_parts, Decision};
use crate::error::{Error, Result};
use crate::graph::{Colour, ColouredGraph, Colouring, Edge, Graph};
use crate::structure::{bfs_layers, is_cactus};

/// A witness to configurability: one total order per bipartition part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Configuration {
    pub order1: Vec<String>,
    pub order2: Vec<String>,
}

/// A cycle whose edge colours strictly alternate, stored as a cyclic vertex
/// sequence with the colour of each edge (vertices[i], vertices[i+1]).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternatingCycle {
    pub vertices: Vec<String>,
    pub colours: Vec<Colour>,
}

impl AlternatingCycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> Vec<Edge> {
        (0..self.vertices.len())
            .map(|i| {
                Edge::new(
                    self.vertices[i].as_str(),
                    self.vertices[(i + 1) % self.vertices.len()].as_str(),
                )
            })
            .collect()
    }

    /// True when the vertex cycle is simple, even, of length >= 4, and its
    /// edge colours under `c` strictly alternate around the wrap. The stored
    /// colour sequence is not consulted, so a cycle stays valid for the
    /// colouring produced by rotating it.
    pub fn is_alternating_under(&self, g: &Graph, c: &Colouring) -> bool {
        let n = self.vertices.len();
        if n < 4 || !n.is_multiple_of(2) {
            return false;
        }
        let distinct: BTreeSet<&String> = self.vertices.iter().collect();
        if distinct.len() != n {
            return false;
        }
        let edges = self.edges();
        for (i, e) in edges.iter().enumerate() {
            if !g.has_edge(e.endpoints().0, e.endpoints().1) {
                return false;
            }
            let here = c.get(e);
            let next = c.get(&edges[(i + 1) % n]);
            match (here, next) {
                (Some(a), Some(b)) if a != b => {}
                _ => return false,
            }
        }
        true
    }
}

fn required_colour(slot: usize) -> Colour {
    if slot.is_multiple_of(2) {
        Colour::Blue
    } else {
        Colour::Red
    }
}

/// True iff for every vertex, its neighbours sorted by the opposite part's
/// order carry colours blue, red, ..., blue.
pub fn is_configuration_valid(cg: &ColouredGraph, cfg: &Configuration) -> Result<bool> {
    let as_set = |v: &[String]| v.iter().cloned().collect::<BTreeSet<String>>();
    let (o1, o2) = (as_set(&cfg.order1), as_set(&cfg.order2));
    let matches_parts = (o1 == cg.bipartition.part1 && o2 == cg.bipartition.part2)
        || (o1 == cg.bipartition.part2 && o2 == cg.bipartition.part1);
    if !matches_parts
        || cfg.order1.len() != o1.len()
        || cfg.order2.len() != o2.len()
    {
        return Err(Error::OrderMismatch(
            "orders are not permutations of the parts".into(),
        ));
    }
    let mut position: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, v) in cfg.order1.iter().enumerate() {
        position.insert(v, i);
    }
    for (i, v) in cfg.order2.iter().enumerate() {
        position.insert(v, i);
    }
    for u in cg.graph.vertex_names() {
        let mut nbrs: Vec<(usize, Colour)> = cg
            .graph
            .neighbours(u)
            .into_iter()
            .map(|w| {
                (
                    position[w],
                    cg.colouring
                        .get(&Edge::new(u.as_str(), w))
                        .expect("total colouring"),
                )
            })
            .collect();
        nbrs.sort_by_key(|(p, _)| *p);
        if nbrs.is_empty() || nbrs.len().is_multiple_of(2) {
            return Ok(false);
        }
        if nbrs
            .iter()
            .enumerate()
            .any(|(i, (_, c))| *c != required_colour(i))
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One line of the two-line embedding; vertices in left-to-right order.
struct Line(Vec<String>);

impl Line {
    fn position(&self, v: &str) -> Option<usize> {
        self.0.iter().position(|x| x == v)
    }

    fn insert_all(&mut self, at: usize, names: Vec<String>) {
        for (k, name) in names.into_iter().enumerate() {
            self.0.insert(at + k, name);
        }
    }
}

/// Assigns the unplaced neighbours (sorted) to the free colour slots in slot
/// order: blues fill blue slots left to right, reds likewise.
fn fill_slots(
    slots: &[usize],
    unplaced: &[(String, Colour)],
) -> Vec<String> {
    let mut blues: VecDeque<&String> = unplaced
        .iter()
        .filter(|(_, c)| *c == Colour::Blue)
        .map(|(v, _)| v)
        .collect();
    let mut reds: VecDeque<&String> = unplaced
        .iter()
        .filter(|(_, c)| *c == Colour::Red)
        .map(|(v, _)| v)
        .collect();
    let mut out = Vec::with_capacity(slots.len());
    for &slot in slots {
        let pick = match required_colour(slot) {
            Colour::Blue => blues.pop_front(),
            Colour::Red => reds.pop_front(),
        };
        out.push(pick.expect("slot counts match colour counts").clone());
    }
    out
}

/// Builds a configuration for a cactus graph with a verified difference-1
/// colouring by the breadth-first layer construction: the root goes on one
/// line, and each processed vertex inserts its still-unplaced neighbours
/// around its at most two pre-placed ones so its incident edges alternate
/// blue, red, ..., blue.
pub fn configure_cactus(cg: &ColouredGraph) -> Result<Configuration> {
    if !is_cactus(&cg.graph) {
        return Err(Error::NotCactus);
    }
    if !verify_difference1(cg) {
        return Err(Error::NotDifference1);
    }
    let g = &cg.graph;
    let root = g.vertex_names()[0].clone();
    let layers = bfs_layers(g, &root)?;
    let mut lines = [Line(vec![root.clone()]), Line(Vec::new())];

    for (r, layer) in layers.iter().enumerate() {
        for x in layer {
            let target = (r + 1) % 2;
            let colour_at = |w: &str| {
                cg.colouring
                    .get(&Edge::new(x.as_str(), w))
                    .expect("total colouring")
            };
            let mut placed: Vec<(usize, Colour)> = Vec::new();
            let mut unplaced: Vec<(String, Colour)> = Vec::new();
            for w in g.neighbours(x) {
                match lines[target].position(w) {
                    Some(p) => placed.push((p, colour_at(w))),
                    None => unplaced.push((w.to_string(), colour_at(w))),
                }
            }
            placed.sort();
            if unplaced.is_empty() {
                continue;
            }
            let d = placed.len() + unplaced.len();
            let all_slots: Vec<usize> = (0..d).collect();
            match placed.as_slice() {
                [] => {
                    let block = fill_slots(&all_slots, &unplaced);
                    let at = lines[target].0.len();
                    lines[target].insert_all(at, block);
                }
                [(p, c)] => {
                    let s = all_slots
                        .iter()
                        .copied()
                        .find(|&s| required_colour(s) == *c)
                        .ok_or_else(|| {
                            Error::Precondition(format!("no slot for placed neighbour of {x}"))
                        })?;
                    let left: Vec<usize> = (0..s).collect();
                    let right: Vec<usize> = (s + 1..d).collect();
                    let left_block = fill_slots(&left, &unplaced);
                    let taken: BTreeSet<&String> = left_block.iter().collect();
                    let rest: Vec<(String, Colour)> = unplaced
                        .iter()
                        .filter(|(v, _)| !taken.contains(v))
                        .cloned()
                        .collect();
                    let right_block = fill_slots(&right, &rest);
                    let p = *p;
                    lines[target].insert_all(p, left_block);
                    let p_now = p + left.len();
                    lines[target].insert_all(p_now + 1, right_block);
                }
                [(p1, c1), (p2, c2)] => {
                    // Find slots s1 < s2 matching the placed colours; counts
                    // always suffice because the colouring satisfies the
                    // degree condition at x.
                    let mut chosen = None;
                    'outer: for &s1 in &all_slots {
                        if required_colour(s1) != *c1 {
                            continue;
                        }
                        for &s2 in &all_slots {
                            if s2 > s1 && required_colour(s2) == *c2 {
                                chosen = Some((s1, s2));
                                break 'outer;
                            }
                        }
                    }
                    let (s1, s2) = chosen.ok_or_else(|| {
                        Error::Precondition(format!("no slot pair for neighbours of {x}"))
                    })?;
                    let left: Vec<usize> = (0..s1).collect();
                    let middle: Vec<usize> = (s1 + 1..s2).collect();
                    let right: Vec<usize> = (s2 + 1..d).collect();
                    let left_block = fill_slots(&left, &unplaced);
                    let mut taken: BTreeSet<String> = left_block.iter().cloned().collect();
                    let rest: Vec<(String, Colour)> = unplaced
                        .iter()
                        .filter(|(v, _)| !taken.contains(v))
                        .cloned()
                        .collect();
                    let middle_block = fill_slots(&middle, &rest);
                    taken.extend(middle_block.iter().cloned());
                    let rest: Vec<(String, Colour)> = unplaced
                        .iter()
                        .filter(|(v, _)| !taken.contains(v))
                        .cloned()
                        .collect();
                    let right_block = fill_slots(&right, &rest);
                    let (p1, p2) = (*p1, *p2);
                    lines[target].insert_all(p1, left_block);
                    let p1_now = p1 + left.len();
                    lines[target].insert_all(p1_now + 1, middle_block);
                    let p2_now = p2 + left.len() + middle.len();
                    lines[target].insert_all(p2_now + 1, right_block);
                }
                more => {
                    return Err(Error::Precondition(format!(
                        "{x} has {} pre-placed neighbours; a cactus allows at most two",
                        more.len()
                    )))
                }
            }
        }
    }

    // The root's line holds part1 (the root is the least vertex of the
    // graph, and part1 contains the least vertex of each component).
    let cfg = if cg.bipartition.part1.contains(&root) {
        Configuration {
            order1: lines[0].0.clone(),
            order2: lines[1].0.clone(),
        }
    } else {
        Configuration {
            order1: lines[1].0.clone(),
            order2: lines[0].0.clone(),
        }
    };
    debug_assert_eq!(is_configuration_valid(cg, &cfg), Ok(true));
    Ok(cfg)
}

const BRUTE_FORCE_PART_LIMIT: usize = 8;

/// Backtracking search for an order of `fixed_part` under which every vertex
/// of the opposite part sees its neighbours alternate blue, red, ..., blue.
/// Returns the lexicographically least such order.
fn search_part_order(
    cg: &ColouredGraph,
    fixed_part: &[String],
    constrained_part: &BTreeSet<String>,
) -> Option<Vec<String>> {
    // seen[u] counts the placed neighbours of the constrained vertex u.
    let mut seen: BTreeMap<&str, usize> = constrained_part
        .iter()
        .map(|u| (u.as_str(), 0))
        .collect();
    // Degree precheck: alternation blue..blue forces odd degree with one
    // more blue than red.
    for u in constrained_part {
        let d = cg.graph.degree(u);
        let blues = cg
            .graph
            .edges_at(u)
            .filter(|e| cg.colouring.get(e) == Some(Colour::Blue))
            .count();
        if d == 0 || d.is_multiple_of(2) || blues != d / 2 + 1 {
            return None;
        }
    }
    let mut order: Vec<String> = Vec::with_capacity(fixed_part.len());
    let mut used = vec![false; fixed_part.len()];

    fn rec(
        cg: &ColouredGraph,
        fixed_part: &[String],
        order: &mut Vec<String>,
        used: &mut Vec<bool>,
        seen: &mut BTreeMap<&str, usize>,
    ) -> bool {
        if order.len() == fixed_part.len() {
            return true;
        }
        'candidates: for i in 0..fixed_part.len() {
            if used[i] {
                continue;
            }
            let w = &fixed_part[i];
            // Placing w next gives each of its neighbours u one more edge:
            // slot seen[u], which dictates the colour.
            for u in cg.graph.neighbours(w) {
                let slot = seen[u];
                let colour = cg
                    .colouring
                    .get(&Edge::new(w.as_str(), u))
                    .expect("total colouring");
                if colour != required_colour(slot) {
                    continue 'candidates;
                }
            }
            used[i] = true;
            order.push(w.clone());
            for u in cg.graph.neighbours(w) {
                *seen.get_mut(u).expect("constrained vertex") += 1;
            }
            if rec(cg, fixed_part, order, used, seen) {
                return true;
            }
            for u in cg.graph.neighbours(w) {
                *seen.get_mut(u).expect("constrained vertex") -= 1;
            }
            order.pop();
            used[i] = false;
        }
        false
    }

    if rec(cg, fixed_part, &mut order, &mut used, &mut seen) {
        Some(order)
    } else {
        None
    }
}

/// Searches all order pairs (with prefix pruning) for a valid configuration.
/// A vertex's alternation condition constrains only the opposite part's
/// order, so the two searches are independent. Parts are capped at 8.
pub fn brute_force_configuration(cg: &ColouredGraph) -> Result<Option<Configuration>> {
    let part1: Vec<String> = cg.bipartition.part1.iter().cloned().collect();
    let part2: Vec<String> = cg.bipartition.part2.iter().cloned().collect();
    if part1.len() > BRUTE_FORCE_PART_LIMIT || part2.len() > BRUTE_FORCE_PART_LIMIT {
        return Err(Error::PartTooLarge(
            part1.len().max(part2.len()),
            BRUTE_FORCE_PART_LIMIT,
        ));
    }
    let set1: BTreeSet<String> = part1.iter().cloned().collect();
    let set2: BTreeSet<String> = part2.iter().cloned().collect();
    let order2 = search_part_order(cg, &part2, &set1);
    let order1 = search_part_order(cg, &part1, &set2);
    Ok(match (order1, order2) {
        (Some(order1), Some(order2)) => Some(Configuration { order1, order2 }),
        _ => None,
    })
}

/// Flips the colours of an alternating cycle. Preserves the difference
/// condition at every vertex.
pub fn rotate(g: &Graph, c: &Colouring, cycle: &AlternatingCycle) -> Result<Colouring> {
    if !cycle.is_alternating_under(g, c) {
        return Err(Error::CycleNotAlternating);
    }
    let mut out = c.clone();
    for e in cycle.edges() {
        let flipped = c.get(&e).expect("cycle edge is coloured").opposite();
        out.set(e, flipped);
    }
    Ok(out)
}

/// All alternating simple cycles of the coloured graph, each rooted at its
/// least vertex with the smaller-neighbour direction.
pub fn alternating_cycles(g: &Graph, c: &Colouring) -> Vec<AlternatingCycle> {
    struct Search<'a> {
        g: &'a Graph,
        c: &'a Colouring,
        root: usize,
        first_colour: Colour,
    }

    impl Search<'_> {
        fn dfs(
            &self,
            last_colour: Colour,
            path: &mut Vec<usize>,
            on_path: &mut [bool],
            cycles: &mut Vec<AlternatingCycle>,
        ) {
            let here = *path.last().expect("path holds the root");
            for &next in self.g.neighbour_indices(here) {
                let e = Edge::new(self.g.name(here), self.g.name(next));
                let colour = self.c.get(&e).expect("total colouring");
                if colour == last_colour {
                    continue; // must alternate along the trail
                }
                if next == self.root {
                    // Closing edge must also alternate against the first edge.
                    if path.len() >= 4
                        && colour != self.first_colour
                        && path[1] < *path.last().unwrap()
                    {
                        let vertices: Vec<String> =
                            path.iter().map(|&i| self.g.name(i).to_string()).collect();
                        let colours: Vec<Colour> = (0..vertices.len())
                            .map(|i| {
                                self.c
                                    .get(&Edge::new(
                                        vertices[i].as_str(),
                                        vertices[(i + 1) % vertices.len()].as_str(),
                                    ))
                                    .expect("total colouring")
                            })
                            .collect();
                        cycles.push(AlternatingCycle { vertices, colours });
                    }
                } else if next > self.root && !on_path[next] {
                    path.push(next);
                    on_path[next] = true;
                    self.dfs(colour, path, on_path, cycles);
                    on_path[next] = false;
                    path.pop();
                }
            }
        }
    }

    let n = g.vertex_count();
    let mut cycles = Vec::new();
    let mut path: Vec<usize> = Vec::new();
    let mut on_path = vec![false; n];
    for root in 0..n {
        // Branch on the first edge's colour so `last_colour` is defined; the
        // two passes cannot duplicate a cycle because the first edge differs.
        for first in [Colour::Blue, Colour::Red] {
            path.push(root);
            on_path[root] = true;
            let search = Search {
                g,
                c,
                root,
                first_colour: first,
            };
            // Seed with the opposite of the first colour, so only
            // first-coloured edges can start the trail.
            search.dfs(first.opposite(), &mut path, &mut on_path, &mut cycles);
            on_path[root] = false;
            path.pop();
        }
    }
    cycles
}

/// Decomposes the difference between two difference-1 colourings into
/// edge-disjoint cycles, each alternating under `c1`, whose sequential
/// rotation maps `c1` to `c2`. Empty iff the colourings agree.
pub fn rotation_decomposition(
    g: &Graph,
    c1: &Colouring,
    c2: &Colouring,
) -> Result<Vec<AlternatingCycle>> {
    if !verify_difference1_parts(g, c1) || !verify_difference1_parts(g, c2) {
        return Err(Error::NotDifference1);
    }
    let mut remaining: BTreeSet<Edge> = g
        .edges()
        .into_iter()
        .filter(|e| c1.get(e) != c2.get(e))
        .collect();
    let mut cycles = Vec::new();

    while let Some(seed) = remaining.iter().next().cloned() {
        // Walk a trail of alternating (under c1) difference edges until a
        // vertex repeats; the loop is an alternating cycle because every
        // cycle here is even. Then cut it out and restart.
        let (a, b) = seed.endpoints();
        let mut trail: Vec<(String, Colour)> = Vec::new(); // (vertex, arrival colour)
        let mut at: BTreeMap<String, usize> = BTreeMap::new();
        let seed_colour = c1.get(&seed).expect("total colouring");
        trail.push((a.to_string(), seed_colour.opposite())); // fake arrival
        at.insert(a.to_string(), 0);
        remaining.remove(&seed);
        trail.push((b.to_string(), seed_colour));
        at.insert(b.to_string(), 1);

        loop {
            let (here, arrived) = trail.last().expect("trail is nonempty").clone();
            let next_edge = g
                .edges_at(&here)
                .find(|e| {
                    remaining.contains(e) && c1.get(e) != Some(arrived)
                })
                .expect("balanced colour degrees guarantee a continuation");
            remaining.remove(&next_edge);
            let next = next_edge.other(&here).to_string();
            let colour = c1.get(&next_edge).expect("total colouring");
            if let Some(&start) = at.get(&next) {
                // Loop found: vertices trail[start..] close a cycle at `next`.
                let vertices: Vec<String> =
                    trail[start..].iter().map(|(v, _)| v.clone()).collect();
                let colours: Vec<Colour> = (0..vertices.len())
                    .map(|i| {
                        c1.get(&Edge::new(
                            vertices[i].as_str(),
                            vertices[(i + 1) % vertices.len()].as_str(),
                        ))
                        .expect("total colouring")
                    })
                    .collect();
                let cycle = AlternatingCycle { vertices, colours };
                debug_assert!(cycle.is_alternating_under(g, c1));
                // Un-walk the prefix bookkeeping and restart fresh.
                cycles.push(cycle);
                for (v, _) in trail.drain(..) {
                    at.remove(&v);
                }
                break;
            }
            at.insert(next.clone(), trail.len());
            trail.push((next, colour));
        }
    }
    Ok(cycles)
}

const ENUMERATION_EDGE_LIMIT: usize = 24;

/// Every difference-1 colouring of `g`, as the closure of the constructed
/// colouring under alternating-cycle rotations. Errors when the graph is not
/// colourable or exceeds the closure budget.
pub fn enumerate_colourings(g: &Graph) -> Result<Vec<Colouring>> {
    if g.edge_count() > ENUMERATION_EDGE_LIMIT {
        return Err(Error::BudgetExceeded(format!(
            "{} edges exceed the {ENUMERATION_EDGE_LIMIT}-edge closure budget",
            g.edge_count()
        )));
    }
    let seed = match decide_difference1(g) {
        Decision::Colourable(c) => c,
        Decision::NotColourable(_) => {
            return Err(Error::Precondition(
                "graph has no difference-1 colouring".into(),
            ))
        }
    };
    let mut seen: BTreeSet<Colouring> = BTreeSet::from([seed.clone()]);
    let mut queue = VecDeque::from([seed]);
    while let Some(current) = queue.pop_front() {
        for cycle in alternating_cycles(g, &current) {
            let rotated = rotate(g, &current, &cycle)?;
            if seen.insert(rotated.clone()) {
                queue.push_back(rotated);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;
    use crate::oracle::{oracle_configurable, oracle_difference_k, OracleBudget};

    fn coloured(g: &Graph) -> Vec<ColouredGraph> {
        oracle_difference_k(g, 1, &OracleBudget::default())
            .unwrap()
            .into_iter()
            .map(|c| ColouredGraph::new(g.clone(), c).unwrap())
            .collect()
    }

    #[test]
    fn p2_trivial_configuration() {
        let cg = coloured(&gallery::p2()).remove(0);
        let cfg = Configuration {
            order1: vec!["u".into()],
            order2: vec!["v".into()],
        };
        assert_eq!(is_configuration_valid(&cg, &cfg), Ok(true));
    }

    #[test]
    fn central_minus_natural_orders_are_valid() {
        let m = crate::asm::SignMatrix::parse("0 1 0\n1 -1 1\n0 1 0").unwrap();
        let cg = crate::asm::asm_to_asbg(&m).unwrap();
        let cfg = Configuration {
            order1: vec!["c1".into(), "c2".into(), "c3".into()],
            order2: vec!["r1".into(), "r2".into(), "r3".into()],
        };
        let swapped = Configuration {
            order1: vec!["c2".into(), "c1".into(), "c3".into()],
            order2: cfg.order2.clone(),
        };
        assert_eq!(is_configuration_valid(&cg, &cfg), Ok(true));
        assert_eq!(is_configuration_valid(&cg, &swapped), Ok(false));

        let mismatched = Configuration {
            order1: vec!["c1".into()],
            order2: vec!["r1".into(), "r2".into(), "r3".into()],
        };
        assert!(matches!(
            is_configuration_valid(&cg, &mismatched),
            Err(Error::OrderMismatch(_))
        ));
    }

    #[test]
    fn configure_cactus_handles_gallery_cacti() {
        for g in [gallery::p2(), gallery::pinwheel(), gallery::bowtie()] {
            for cg in coloured(&g) {
                let cfg = configure_cactus(&cg).unwrap();
                assert_eq!(is_configuration_valid(&cg, &cfg), Ok(true));
            }
        }
    }

    #[test]
    fn configure_cactus_rejects_non_cacti() {
        let cg = coloured(&gallery::k33()).remove(0);
        assert!(matches!(configure_cactus(&cg), Err(Error::NotCactus)));
    }

    #[test]
    fn brute_force_agrees_with_cactus_construction() {
        for g in [gallery::p2(), gallery::pinwheel(), gallery::bowtie()] {
            for cg in coloured(&g) {
                let cfg = brute_force_configuration(&cg).unwrap().unwrap();
                assert_eq!(is_configuration_valid(&cg, &cfg), Ok(true));
            }
        }
    }

    #[test]
    fn k33_colourings_are_unconfigurable() {
        for cg in coloured(&gallery::k33()) {
            assert_eq!(brute_force_configuration(&cg).unwrap(), None);
        }
    }

    #[test]
    fn betweenness_conflict_is_unconfigurable_both_ways() {
        for cg in coloured(&gallery::betweenness_conflict()) {
            assert_eq!(brute_force_configuration(&cg).unwrap(), None);
            assert!(!oracle_configurable(&cg, &OracleBudget::default()).unwrap());
        }
    }

    #[test]
    fn rotation_is_an_involution() {
        let g = gallery::pinwheel();
        let colourings = oracle_difference_k(&g, 1, &OracleBudget::default()).unwrap();
        assert_eq!(colourings.len(), 2);
        let c = &colourings[0];
        let cycles = alternating_cycles(&g, c);
        assert_eq!(cycles.len(), 1, "the pinwheel cycle alternates");
        let once = rotate(&g, c, &cycles[0]).unwrap();
        assert_eq!(&once, &colourings[1]);
        let twice = rotate(&g, &once, &cycles[0]).unwrap();
        assert_eq!(&twice, c);
    }

    #[test]
    fn rotation_preserves_the_difference_condition() {
        let g = gallery::bowtie();
        for c in oracle_difference_k(&g, 1, &OracleBudget::default()).unwrap() {
            for cycle in alternating_cycles(&g, &c) {
                let rotated = rotate(&g, &c, &cycle).unwrap();
                assert!(verify_difference1_parts(&g, &rotated));
            }
        }
    }

    #[test]
    fn decomposition_maps_between_colourings() {
        for g in [gallery::pinwheel(), gallery::bowtie(), gallery::k33()] {
            let colourings = oracle_difference_k(&g, 1, &OracleBudget::default()).unwrap();
            for c1 in &colourings {
                for c2 in &colourings {
                    let cycles = rotation_decomposition(&g, c1, c2).unwrap();
                    if c1 == c2 {
                        assert!(cycles.is_empty());
                    }
                    // Edge-disjointness.
                    let mut used = BTreeSet::new();
                    for cyc in &cycles {
                        assert!(cyc.is_alternating_under(&g, c1));
                        for e in cyc.edges() {
                            assert!(used.insert(e), "cycles share an edge");
                        }
                    }
                    // Applying them maps c1 to c2 exactly.
                    let mut current = c1.clone();
                    for cyc in &cycles {
                        current = rotate(&g, &current, cyc).unwrap();
                    }
                    assert_eq!(&current, c2);
                }
            }
        }
    }

    #[test]
    fn two_pinwheel_colourings_differ_by_one_cycle() {
        let g = gallery::pinwheel();
        let cs = oracle_difference_k(&g, 1, &OracleBudget::default()).unwrap();
        let cycles = rotation_decomposition(&g, &cs[0], &cs[1]).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 4);
    }

    #[test]
    fn enumeration_matches_the_oracle() {
        for g in [
            gallery::p2(),
            gallery::double_star(2, 2),
            gallery::pinwheel(),
            gallery::bowtie(),
            gallery::k33(),
            gallery::theta(),
        ] {
            let enumerated = enumerate_colourings(&g).unwrap();
            let oracle: BTreeSet<Colouring> = oracle_difference_k(&g, 1, &OracleBudget::default())
                .unwrap()
                .into_iter()
                .collect();
            let enumerated: BTreeSet<Colouring> = enumerated.into_iter().collect();
            assert_eq!(enumerated, oracle);
        }
    }

    #[test]
    fn counted_instances() {
        assert_eq!(enumerate_colourings(&gallery::pinwheel()).unwrap().len(), 2);
        assert_eq!(enumerate_colourings(&gallery::bowtie()).unwrap().len(), 4);
        assert_eq!(enumerate_colourings(&gallery::k33()).unwrap().len(), 6);
        assert_eq!(enumerate_colourings(&gallery::double_star(2, 2)).unwrap().len(), 1);
    }

    #[test]
    fn enumeration_rejects_uncolourable_graphs() {
        assert!(matches!(
            enumerate_colourings(&gallery::cycle(6)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn enumeration_spans_products_over_components() {
        // Two disjoint pinwheels: 2 x 2 colourings, reached one rotation at
        // a time.
        let base = gallery::pinwheel();
        let mut vertices: Vec<String> = Vec::new();
        let mut edges: Vec<(String, String)> = Vec::new();
        for prefix in ["x", "y"] {
            for v in base.vertex_names() {
                vertices.push(format!("{prefix}{v}"));
            }
            for e in base.edges() {
                let (a, b) = e.endpoints();
                edges.push((format!("{prefix}{a}"), format!("{prefix}{b}")));
            }
        }
        let v: Vec<&str> = vertices.iter().map(|s| s.as_str()).collect();
        let e: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let g = Graph::new(&v, &e).unwrap();
        let enumerated: BTreeSet<Colouring> =
            enumerate_colourings(&g).unwrap().into_iter().collect();
        let oracle: BTreeSet<Colouring> = oracle_difference_k(&g, 1, &OracleBudget::default())
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(enumerated.len(), 4);
        assert_eq!(enumerated, oracle);
    }
}
