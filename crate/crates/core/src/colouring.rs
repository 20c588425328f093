//! The difference-1 decision and construction pipeline.
//!
//! A connected graph has a difference-1 colouring iff it survives, in order:
//! validation (bipartite, balanced, all degrees odd), leaf-twig reduction
//! (trees must reduce to P2), vertex classification, limb parity, the
//! junction weight assignment (every junction's incident weights must sum to
//! one), and redistribution of surplus and zero weights within common cycle
//! classes via exact degree-constrained subgraphs. Failures come back as
//! structured certificates rather than errors.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::{degree_constrained_subgraph, DegreeDemand, DemandMode};
use crate::graph::{Colour, ColouredGraph, Colouring, Edge, Graph};
use crate::structure::{analyze, is_cactus, Limb, StructureReport, VertexType};

/// Weights assigned to edges: +1 forces blue, -1 forces red, 0 and
/// magnitudes above 1 are settled by redistribution.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightAssignment {
    pub weights: BTreeMap<Edge, i64>,
    pub junction_sums: BTreeMap<String, i64>,
}

impl WeightAssignment {
    pub fn weight(&self, e: &Edge) -> Option<i64> {
        self.weights.get(e).copied()
    }

    pub fn vertex_sum(&self, g: &Graph, v: &str) -> i64 {
        g.edges_at(v).filter_map(|e| self.weight(&e)).sum()
    }
}

/// Structured evidence that no difference-1 colouring exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    NotBipartite { odd_cycle: Vec<String> },
    Unbalanced { part1: usize, part2: usize },
    EvenDegreeVertex { vertex: String },
    ReducedTreeNotP2 { reduced_order: usize },
    UnclassifiableVertex { vertex: String },
    LimbParityViolation { limb: Vec<String> },
    JunctionSumViolation { junction: String, sum: i64 },
    RedistributionFailure { edges: Vec<Edge> },
}

impl Certificate {
    /// Short stable label used in JSON output.
    pub fn label(&self) -> &'static str {
        match self {
            Certificate::NotBipartite { .. } => "not-bipartite",
            Certificate::Unbalanced { .. } => "unbalanced",
            Certificate::EvenDegreeVertex { .. } => "even-degree-vertex",
            Certificate::ReducedTreeNotP2 { .. } => "reduced-tree-not-p2",
            Certificate::UnclassifiableVertex { .. } => "unclassifiable-vertex",
            Certificate::LimbParityViolation { .. } => "limb-parity-violation",
            Certificate::JunctionSumViolation { .. } => "junction-sum-violation",
            Certificate::RedistributionFailure { .. } => "redistribution-failure",
        }
    }
}

impl std::fmt::Display for Certificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Certificate::NotBipartite { odd_cycle } => {
                write!(f, "not-bipartite: odd cycle {}", odd_cycle.join("-"))
            }
            Certificate::Unbalanced { part1, part2 } => {
                write!(f, "unbalanced: parts of sizes {part1} and {part2}")
            }
            Certificate::EvenDegreeVertex { vertex } => {
                write!(f, "even-degree-vertex: {vertex}")
            }
            Certificate::ReducedTreeNotP2 { reduced_order } => {
                write!(f, "reduced-tree-not-p2: reduced form has {reduced_order} vertices")
            }
            Certificate::UnclassifiableVertex { vertex } => {
                write!(f, "unclassifiable-vertex: {vertex}")
            }
            Certificate::LimbParityViolation { limb } => {
                write!(f, "limb-parity-violation: {}", limb.join("-"))
            }
            Certificate::JunctionSumViolation { junction, sum } => {
                write!(f, "junction-sum-violation: w({junction}) = {sum}")
            }
            Certificate::RedistributionFailure { edges } => {
                write!(f, "redistribution-failure: class of {} edges", edges.len())
            }
        }
    }
}

/// Outcome of the decision pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Colourable(Colouring),
    NotColourable(Certificate),
}

impl Decision {
    pub fn is_colourable(&self) -> bool {
        matches!(self, Decision::Colourable(_))
    }

    pub fn colouring(&self) -> Option<&Colouring> {
        match self {
            Decision::Colourable(c) => Some(c),
            Decision::NotColourable(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Decision::Colourable(_) => None,
            Decision::NotColourable(c) => Some(c),
        }
    }
}

/// True iff deg_B(v) - deg_R(v) = 1 at every vertex.
pub fn verify_difference1(cg: &ColouredGraph) -> bool {
    verify_difference1_parts(&cg.graph, &cg.colouring)
}

/// [`verify_difference1`] for a graph and colouring held separately.
pub fn verify_difference1_parts(g: &Graph, c: &Colouring) -> bool {
    c.is_total_for(g) && g.vertex_names().iter().all(|v| c.weight_at(g, v) == 1)
}

/// Replays removed leaf-twig configurations onto a colouring of the reduced
/// form: the leaf edge blue, the twig base edge red, the twig's leaf edges
/// blue.
fn replay_removals(colouring: &mut Colouring, removals: &[crate::structure::LeafTwigConfiguration]) {
    for cfg in removals.iter().rev() {
        colouring.set(Edge::new(cfg.anchor.as_str(), cfg.leaf.as_str()), Colour::Blue);
        colouring.set(
            Edge::new(cfg.anchor.as_str(), cfg.twig_base.as_str()),
            Colour::Red,
        );
        colouring.set(
            Edge::new(cfg.twig_base.as_str(), cfg.twig_leaves.0.as_str()),
            Colour::Blue,
        );
        colouring.set(
            Edge::new(cfg.twig_base.as_str(), cfg.twig_leaves.1.as_str()),
            Colour::Blue,
        );
    }
}

/// Validation stage shared by every decider. Returns the certificate of the
/// first failing necessary condition, in the order bipartite, balanced,
/// odd degrees.
fn validate_component(g: &Graph) -> Option<Certificate> {
    let bp = match g.bipartition() {
        Ok(bp) => bp,
        Err(Error::OddCycle(cycle)) => {
            return Some(Certificate::NotBipartite { odd_cycle: cycle })
        }
        Err(_) => unreachable!("bipartition only fails with an odd cycle"),
    };
    if !bp.is_balanced() {
        return Some(Certificate::Unbalanced {
            part1: bp.part1.len(),
            part2: bp.part2.len(),
        });
    }
    if let Some(v) = g.vertex_names().iter().find(|v| g.degree(v).is_multiple_of(2)) {
        return Some(Certificate::EvenDegreeVertex { vertex: v.clone() });
    }
    None
}

/// The limb parity rule: a limb whose endpoints are both twig- or
/// triple-type must have odd length when the types agree and even length
/// when they differ. Junction endpoints impose nothing.
fn limb_parity_violation(report: &StructureReport) -> Option<&Limb> {
    report.limbs.iter().find(|limb| {
        let (a, b) = limb.endpoints();
        let (ta, tb) = (report.vertex_type(a), report.vertex_type(b));
        let both_typed = matches!(ta, Some(t) if t.is_typed_degree_two())
            && matches!(tb, Some(t) if t.is_typed_degree_two());
        if !both_typed {
            return false;
        }
        let want_odd = ta == tb;
        (limb.length() % 2 == 1) != want_odd
    })
}

/// Processing order of the weight assignment. The boolean outcome is
/// independent of the order; the weights themselves may differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderPolicy {
    /// Lexicographic junctions, canonical adjacency.
    Canonical,
    /// Deterministically shuffled by the given seed.
    Seeded(u64),
}

struct LimbIndex {
    /// (endpoint, end edge) -> (limb index, walks forward from vertices[0]).
    by_end: BTreeMap<(String, Edge), (usize, bool)>,
}

impl LimbIndex {
    fn build(limbs: &[Limb]) -> LimbIndex {
        let mut by_end = BTreeMap::new();
        for (i, limb) in limbs.iter().enumerate() {
            let vs = &limb.vertices;
            let first = Edge::new(vs[0].as_str(), vs[1].as_str());
            let last = Edge::new(vs[vs.len() - 2].as_str(), vs[vs.len() - 1].as_str());
            by_end.insert((vs[0].clone(), first), (i, true));
            by_end.insert((vs[vs.len() - 1].clone(), last), (i, false));
        }
        LimbIndex { by_end }
    }

    /// The limb leaving `v` along `e`, with the far endpoint, the far-end
    /// edge, and the limb length.
    fn leave<'a>(
        &self,
        limbs: &'a [Limb],
        v: &str,
        e: &Edge,
    ) -> (&'a Limb, String, Edge, usize) {
        let &(idx, forward) = self
            .by_end
            .get(&(v.to_string(), e.clone()))
            .expect("skeleton edge at a non-leaf-type vertex starts a limb");
        let limb = &limbs[idx];
        let vs = &limb.vertices;
        let (far, far_edge) = if forward {
            (
                vs[vs.len() - 1].clone(),
                Edge::new(vs[vs.len() - 2].as_str(), vs[vs.len() - 1].as_str()),
            )
        } else {
            (vs[0].clone(), Edge::new(vs[0].as_str(), vs[1].as_str()))
        };
        (limb, far, far_edge, limb.length())
    }
}

fn sign_pow(exponent: usize) -> i64 {
    if exponent.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

struct WeightContext<'a> {
    reduced: &'a Graph,
    report: &'a StructureReport,
    skeleton_edges: BTreeSet<Edge>,
    limb_index: LimbIndex,
    rng: Option<ChaCha8Rng>,
}

impl WeightContext<'_> {
    fn order_edges(&mut self, v: &str) -> Vec<Edge> {
        let mut edges: Vec<Edge> = self.reduced.edges_at(v).collect();
        if let Some(rng) = self.rng.as_mut() {
            edges.shuffle(rng);
        }
        edges
    }

    fn assign(
        &mut self,
        j: &str,
        skip: Option<&Edge>,
        visited: &mut BTreeSet<String>,
        weights: &mut BTreeMap<Edge, i64>,
    ) {
        for e in self.order_edges(j) {
            if Some(&e) == skip || weights.contains_key(&e) {
                continue;
            }
            if !self.skeleton_edges.contains(&e) {
                // Local-tree edge: leaf forces blue, twig base forces red.
                let w = if self.reduced.degree(e.other(j)) == 1 { 1 } else { -1 };
                weights.insert(e, w);
                continue;
            }
            let (_, far, far_edge, len) =
                self.limb_index.leave(&self.report.limbs, j, &e);
            match self.report.vertex_type(&far) {
                Some(VertexType::TwigType) => {
                    weights.insert(e, sign_pow(len + 1));
                }
                Some(VertexType::TripleType) => {
                    weights.insert(e, sign_pow(len));
                }
                Some(VertexType::Junction) => {
                    if visited.contains(&far) {
                        weights.insert(e, 0);
                    } else {
                        visited.insert(far.clone());
                        self.assign(&far, Some(&far_edge), visited, weights);
                        let balance: i64 = self
                            .reduced
                            .edges_at(&far)
                            .filter(|f| *f != far_edge)
                            .map(|f| weights[&f])
                            .sum();
                        let w1 = 1 - balance;
                        weights.insert(far_edge.clone(), w1);
                        if e != far_edge {
                            weights.insert(e, sign_pow(len - 1) * w1);
                        }
                    }
                }
                other => unreachable!("limb ends at a non-leaf-type vertex, found {other:?}"),
            }
        }
    }
}

/// The junction weight assignment. Iteratively picks an unvisited junction,
/// weights its incident edges (leaf +1, twig base -1, limbs into twig- or
/// triple-type ends by sign of the limb length, limbs back to visited
/// junctions 0, limbs to new junctions recursively, balancing each newly
/// visited junction's incident sum to one). Returns false iff some junction's
/// incident weights do not sum to one; on success the weights are extended to
/// every edge by alternating propagation along limbs, zero on all-leaf-type
/// cycles, and forced values on local trees.
pub fn assign_weights(g: &Graph, report: &StructureReport) -> Result<(bool, WeightAssignment)> {
    assign_weights_with_order(g, report, OrderPolicy::Canonical)
}

/// [`assign_weights`] with an explicit junction and edge processing order.
pub fn assign_weights_with_order(
    g: &Graph,
    report: &StructureReport,
    policy: OrderPolicy,
) -> Result<(bool, WeightAssignment)> {
    if let Some((v, _)) = report
        .classification
        .iter()
        .find(|(_, t)| **t == VertexType::Unclassifiable)
    {
        return Err(Error::Precondition(format!(
            "vertex {v:?} is unclassifiable"
        )));
    }
    if let Some(limb) = limb_parity_violation(report) {
        return Err(Error::Precondition(format!(
            "limb {:?} violates the parity rule",
            limb.vertices
        )));
    }
    let reduced = &report.reduced;
    debug_assert_eq!(
        reduced.edges(),
        g.edges(),
        "assign_weights expects the reduced graph"
    );

    let mut junctions: Vec<String> = report
        .classification
        .iter()
        .filter(|(_, t)| **t == VertexType::Junction)
        .map(|(v, _)| v.clone())
        .collect();
    let rng = match policy {
        OrderPolicy::Canonical => None,
        OrderPolicy::Seeded(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            junctions.shuffle(&mut rng);
            Some(rng)
        }
    };
    let mut ctx = WeightContext {
        reduced,
        report,
        skeleton_edges: report.skeleton_edges(),
        limb_index: LimbIndex::build(&report.limbs),
        rng,
    };

    let mut weights: BTreeMap<Edge, i64> = BTreeMap::new();
    let mut visited: BTreeSet<String> = BTreeSet::new();
    for j in &junctions {
        if !visited.contains(j) {
            visited.insert(j.clone());
            ctx.assign(j, None, &mut visited, &mut weights);
        }
    }

    let mut junction_sums = BTreeMap::new();
    let mut ok = true;
    for j in &junctions {
        let sum: i64 = reduced.edges_at(j).map(|e| weights[&e]).sum();
        if sum != 1 {
            ok = false;
        }
        junction_sums.insert(j.clone(), sum);
    }

    if ok {
        extend_weights(reduced, report, &ctx.skeleton_edges, &mut weights);
        debug_assert!(reduced.vertex_names().iter().all(|v| {
            reduced.edges_at(v).map(|e| weights[&e]).sum::<i64>() == 1
                || report.vertex_type(v) == Some(VertexType::Junction)
        }));
    }

    Ok((
        ok,
        WeightAssignment {
            weights,
            junction_sums,
        },
    ))
}

/// Totalizes a successful junction assignment: forced values on local-tree
/// edges, alternating propagation along limbs from any determined end, zero
/// on all-leaf-type cycles.
fn extend_weights(
    reduced: &Graph,
    report: &StructureReport,
    skeleton_edges: &BTreeSet<Edge>,
    weights: &mut BTreeMap<Edge, i64>,
) {
    // Local-tree edges: anything touching a degree-1 vertex is a (twig) leaf
    // edge, the rest are anchor-to-twig-base edges.
    for e in reduced.edges() {
        if skeleton_edges.contains(&e) || weights.contains_key(&e) {
            continue;
        }
        let (a, b) = e.endpoints();
        let w = if reduced.degree(a) == 1 || reduced.degree(b) == 1 {
            1
        } else {
            -1
        };
        weights.insert(e, w);
    }
    // Limbs: propagate from a determined end edge, or from a forced typed
    // endpoint (twig-type skeleton edges are blue, triple-type red).
    for limb in &report.limbs {
        let edges = limb.edges();
        let len = edges.len();
        let start_known = weights.contains_key(&edges[0]);
        let end_known = weights.contains_key(&edges[len - 1]);
        let (order, first_value, far): (Vec<Edge>, i64, &str) = if start_known {
            (edges.clone(), weights[&edges[0]], limb.endpoints().1)
        } else if end_known {
            let mut rev = edges.clone();
            rev.reverse();
            let v = weights[&rev[0]];
            (rev, v, limb.endpoints().0)
        } else {
            let forced = match report.vertex_type(limb.endpoints().0) {
                Some(VertexType::TwigType) => 1,
                Some(VertexType::TripleType) => -1,
                other => unreachable!("undetermined limb end must be typed, found {other:?}"),
            };
            (edges.clone(), forced, limb.endpoints().1)
        };
        let mut value = first_value;
        for e in &order {
            match weights.get(e) {
                Some(&w) => debug_assert_eq!(
                    w, value,
                    "limb propagation must agree with assigned weights"
                ),
                None => {
                    weights.insert(e.clone(), value);
                }
            }
            value = -value;
        }
        // A typed far endpoint must receive its forced colour; the limb
        // parity precondition guarantees it.
        if let Some(t) = report.vertex_type(far) {
            if t.is_typed_degree_two() && t != VertexType::LeafType {
                let far_edge = order.last().expect("limb has at least one edge");
                let want = if t == VertexType::TwigType { 1 } else { -1 };
                debug_assert_eq!(weights[far_edge], want, "typed limb end colour");
            }
        }
    }
    // Whatever skeleton edges remain belong to all-leaf-type cycles.
    for e in skeleton_edges {
        weights.entry(e.clone()).or_insert(0);
    }
}

enum RedistributeOutcome {
    Colouring(Colouring),
    Failed(Vec<Edge>),
}

fn redistribute_impl(
    g: &Graph,
    wa: &WeightAssignment,
    report: &StructureReport,
) -> Result<RedistributeOutcome> {
    let mut class_of: BTreeMap<&Edge, usize> = BTreeMap::new();
    for (i, class) in report.cycle_classes.iter().enumerate() {
        for e in class {
            class_of.insert(e, i);
        }
    }
    // Zero or surplus weight outside every class cannot be redistributed.
    for e in g.edges() {
        let w = wa.weight(&e).ok_or(Error::Precondition(
            "weight assignment does not cover the graph".into(),
        ))?;
        if !class_of.contains_key(&e) && w != 1 && w != -1 {
            return Ok(RedistributeOutcome::Failed(vec![e]));
        }
    }

    let mut red: BTreeSet<Edge> = g
        .edges()
        .into_iter()
        .filter(|e| !class_of.contains_key(e) && wa.weight(e) == Some(-1))
        .collect();

    for class in &report.cycle_classes {
        let class_graph = g.edge_subgraph(class, false);
        let mut demand = BTreeMap::new();
        let mut feasible = true;
        for v in class_graph.vertex_names() {
            let deg = class_graph.degree(v) as i64;
            let class_weight_sum: i64 = class_graph
                .edges_at(v)
                .map(|e| wa.weight(&e).unwrap_or(0))
                .sum();
            let r = match report.vertex_type(v) {
                Some(VertexType::LeafType) => 1,
                Some(VertexType::TwigType) => 0,
                Some(VertexType::TripleType) => 2,
                Some(VertexType::Junction) => {
                    let numerator = deg - class_weight_sum;
                    if numerator < 0 || numerator % 2 != 0 {
                        feasible = false;
                        break;
                    }
                    numerator / 2
                }
                other => unreachable!("class vertex must be typed, found {other:?}"),
            };
            debug_assert_eq!(
                (deg - class_weight_sum) % 2,
                0,
                "class weight parity at {v}"
            );
            if r > deg {
                feasible = false;
                break;
            }
            demand.insert(v.to_string(), r as u64);
        }
        if !feasible {
            return Ok(RedistributeOutcome::Failed(class.iter().cloned().collect()));
        }
        let demand = match DegreeDemand::new(&class_graph, demand) {
            Ok(d) => d,
            Err(Error::DemandOutOfRange(_)) => {
                return Ok(RedistributeOutcome::Failed(class.iter().cloned().collect()))
            }
            Err(other) => return Err(other),
        };
        let bp = class_graph.bipartition()?;
        match degree_constrained_subgraph(&class_graph, &bp, &demand, DemandMode::Exact)? {
            Some(edges) => red.extend(edges),
            None => {
                return Ok(RedistributeOutcome::Failed(class.iter().cloned().collect()))
            }
        }
    }

    let mut colouring = Colouring::default();
    for e in g.edges() {
        let colour = if red.contains(&e) {
            Colour::Red
        } else {
            Colour::Blue
        };
        colouring.set(e, colour);
    }
    Ok(RedistributeOutcome::Colouring(colouring))
}

/// Settles zero and surplus weights class by class: r(v) is 1, 0, 2 at leaf-,
/// twig-, triple-type vertices and half of (class degree minus incident class
/// weight) at junctions; each class needs an exact degree-constrained
/// subgraph, which is coloured red together with every forced red edge.
/// Returns `None` when some class is unsolvable.
pub fn redistribute(
    g: &Graph,
    wa: &WeightAssignment,
    report: &StructureReport,
) -> Result<Option<Colouring>> {
    Ok(match redistribute_impl(g, wa, report)? {
        RedistributeOutcome::Colouring(c) => Some(c),
        RedistributeOutcome::Failed(_) => None,
    })
}

/// The cactus redistribution criterion, evaluated directly: for every cycle,
/// the incident class weights w_C(v) must lie in {-2, 0, 2}, and every path
/// along the cycle between consecutive nonzero marks (all-zero interior) must
/// have an even vertex count for equal marks and odd for opposite marks.
pub fn redistribute_cactus_check(g: &Graph, wa: &WeightAssignment) -> Result<bool> {
    if !is_cactus(g) {
        return Err(Error::NotCactus);
    }
    for class in crate::structure::common_cycle_classes(g) {
        // In a cactus every class is a single cycle; walk it.
        let class_graph = g.edge_subgraph(&class, false);
        let start = class_graph.vertex_names()[0].clone();
        let mut order = vec![start.clone()];
        let mut prev = start.clone();
        let mut here = class_graph.neighbours(&start)[0].to_string();
        while here != start {
            order.push(here.clone());
            let next = class_graph
                .neighbours(&here)
                .into_iter()
                .find(|w| *w != prev.as_str())
                .expect("cycle vertex has two cycle neighbours")
                .to_string();
            prev = here;
            here = next;
        }
        let len = order.len();
        let sums: Vec<i64> = order
            .iter()
            .map(|v| {
                class_graph
                    .edges_at(v)
                    .map(|e| wa.weight(&e).unwrap_or(0))
                    .sum()
            })
            .collect();
        if sums.iter().any(|s| ![-2, 0, 2].contains(s)) {
            return Ok(false);
        }
        let marks: Vec<usize> = (0..len).filter(|&i| sums[i] != 0).collect();
        if marks.is_empty() {
            continue;
        }
        if marks.len() == 1 {
            // The only all-zero path runs all the way around: k = len + 1
            // vertices with equal endpoint marks, so len must be odd, which
            // an even cycle never is.
            if (len + 1) % 2 != 0 {
                return Ok(false);
            }
            continue;
        }
        for (i, &p) in marks.iter().enumerate() {
            let q = marks[(i + 1) % marks.len()];
            let gap = (q + len - p) % len; // edges between consecutive marks
            let vertex_count = gap + 1;
            let same_sign = sums[p] == sums[q];
            if same_sign != vertex_count.is_multiple_of(2) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Decides a single connected component.
fn decide_component(g: &Graph) -> Result<Decision> {
    if let Some(cert) = validate_component(g) {
        return Ok(Decision::NotColourable(cert));
    }
    let report = analyze(g)?;
    if !report.reduced.has_cycle() {
        // Tree: colourable iff the reduced form is P2.
        if report.reduced.vertex_count() == 2 && report.reduced.edge_count() == 1 {
            let mut colouring = Colouring::default();
            colouring.set(report.reduced.edges().remove(0), Colour::Blue);
            replay_removals(&mut colouring, &report.removals);
            debug_assert!(verify_difference1_parts(g, &colouring));
            return Ok(Decision::Colourable(colouring));
        }
        return Ok(Decision::NotColourable(Certificate::ReducedTreeNotP2 {
            reduced_order: report.reduced.vertex_count(),
        }));
    }
    if let Some((v, _)) = report
        .classification
        .iter()
        .find(|(_, t)| **t == VertexType::Unclassifiable)
    {
        return Ok(Decision::NotColourable(Certificate::UnclassifiableVertex {
            vertex: v.clone(),
        }));
    }
    if let Some(limb) = limb_parity_violation(&report) {
        return Ok(Decision::NotColourable(Certificate::LimbParityViolation {
            limb: limb.vertices.clone(),
        }));
    }
    let (ok, wa) = assign_weights(&report.reduced, &report)?;
    if !ok {
        let (junction, sum) = wa
            .junction_sums
            .iter()
            .find(|(_, s)| **s != 1)
            .map(|(j, s)| (j.clone(), *s))
            .expect("failed assignment names a junction");
        return Ok(Decision::NotColourable(Certificate::JunctionSumViolation {
            junction,
            sum,
        }));
    }
    match redistribute_impl(&report.reduced, &wa, &report)? {
        RedistributeOutcome::Failed(edges) => {
            Ok(Decision::NotColourable(Certificate::RedistributionFailure {
                edges,
            }))
        }
        RedistributeOutcome::Colouring(mut colouring) => {
            replay_removals(&mut colouring, &report.removals);
            debug_assert!(verify_difference1_parts(g, &colouring));
            Ok(Decision::Colourable(colouring))
        }
    }
}

/// Full difference-1 decision: validates, reduces, dispatches trees to the
/// reduction criterion and cyclic graphs through classification, limb
/// parity, the weight assignment, and redistribution. Disconnected inputs
/// are decided per component and the answers conjoined. All failures are
/// certificates; errors cannot occur.
pub fn decide_difference1(g: &Graph) -> Decision {
    let mut combined = Colouring::default();
    for comp in g.components() {
        match decide_component(&comp).expect("component decision is total") {
            Decision::Colourable(c) => {
                for (e, colour) in c.iter() {
                    combined.set(e.clone(), colour);
                }
            }
            not => return not,
        }
    }
    Decision::Colourable(combined)
}

/// Tree decider: colourable iff the reduced form is P2, with the unique
/// colouring built by replaying removals (leaf edges blue, base edge red).
pub fn decide_tree(t: &Graph) -> Result<Decision> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    decide_component(t)
}

/// Unicyclic decider following the junction-free construction: twig-type
/// vertices take blue skeleton edges and a red base edge, triple-type red
/// skeleton edges and blue leaf edges, limbs alternate between their typed
/// ends, and every remaining leaf edge is blue. Kept separate from the
/// general pipeline as an independent cross-check path.
pub fn decide_unicyclic(g: &Graph) -> Result<Decision> {
    if !g.is_unicyclic() {
        return Err(Error::NotUnicyclic);
    }
    if let Some(cert) = validate_component(g) {
        return Ok(Decision::NotColourable(cert));
    }
    let report = analyze(g)?;
    if let Some((v, _)) = report
        .classification
        .iter()
        .find(|(_, t)| **t == VertexType::Unclassifiable)
    {
        return Ok(Decision::NotColourable(Certificate::UnclassifiableVertex {
            vertex: v.clone(),
        }));
    }
    if let Some(limb) = limb_parity_violation(&report) {
        return Ok(Decision::NotColourable(Certificate::LimbParityViolation {
            limb: limb.vertices.clone(),
        }));
    }

    let reduced = &report.reduced;
    let skeleton_edges = report.skeleton_edges();
    let mut colour_of: BTreeMap<Edge, Colour> = BTreeMap::new();
    // Local trees first: leaves blue, twig bases red, twig leaves blue.
    for e in reduced.edges() {
        if skeleton_edges.contains(&e) {
            continue;
        }
        let (a, b) = e.endpoints();
        let c = if reduced.degree(a) == 1 || reduced.degree(b) == 1 {
            Colour::Blue
        } else {
            Colour::Red
        };
        colour_of.insert(e, c);
    }
    if report.all_leaf_type {
        // Bare alternating cycle: start at the least skeleton vertex, walk
        // towards its least neighbour, first edge blue.
        let sk = report.skeleton.as_ref().expect("unicyclic graph has a skeleton");
        let start = sk.vertex_names()[0].clone();
        let mut prev = start.clone();
        let mut here = sk.neighbours(&start)[0].to_string();
        let mut colour = Colour::Blue;
        colour_of.insert(Edge::new(start.as_str(), here.as_str()), colour);
        while here != start {
            let next = sk
                .neighbours(&here)
                .into_iter()
                .find(|w| *w != prev.as_str())
                .expect("cycle vertex has two skeleton neighbours")
                .to_string();
            colour = colour.opposite();
            colour_of.insert(Edge::new(here.as_str(), next.as_str()), colour);
            prev = here;
            here = next;
        }
    } else {
        for limb in &report.limbs {
            let mut colour = match report.vertex_type(limb.endpoints().0) {
                Some(VertexType::TwigType) => Colour::Blue,
                Some(VertexType::TripleType) => Colour::Red,
                other => unreachable!("unicyclic limb ends are typed, found {other:?}"),
            };
            let edges = limb.edges();
            for e in &edges {
                colour_of.insert(e.clone(), colour);
                colour = colour.opposite();
            }
            // Parity makes the far end consistent with its own type.
            let far_colour = colour_of[edges.last().expect("limb has an edge")];
            let want = match report.vertex_type(limb.endpoints().1) {
                Some(VertexType::TwigType) => Colour::Blue,
                Some(VertexType::TripleType) => Colour::Red,
                other => unreachable!("unicyclic limb ends are typed, found {other:?}"),
            };
            debug_assert_eq!(far_colour, want);
        }
    }
    let mut colouring = Colouring(colour_of);
    replay_removals(&mut colouring, &report.removals);
    debug_assert!(verify_difference1_parts(g, &colouring));
    Ok(Decision::Colourable(colouring))
}
