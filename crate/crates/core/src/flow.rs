//! Integer max-flow and degree-constrained subgraphs of bipartite graphs.
//!
//! A subgraph H with deg_H(v) = r(v) on one part and deg_H(v) <= r(v) on the
//! other exists iff every subset S of the first part satisfies
//! sum_{v in S} r(v) <= sum_{n in N(S)} min(r(n), |N(n) /\ S|). The flow side
//! solves the network with source arcs of capacity r(u), unit arcs across
//! the bipartition, and sink arcs of capacity r(v); the subset inequality is
//! kept as an independent exponential check for cross-testing.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Bipartition, Colour, Colouring, Edge, Graph};

/// Subset scans are capped at this part size.
pub const SUBSET_SCAN_LIMIT: usize = 20;

/// Node of a flow network: the distinguished source and sink plus one node
/// per graph vertex. `Source < Vertex(_) < Sink` so canonical arc order puts
/// source arcs first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum NodeId {
    Source,
    Vertex(String),
    Sink,
}

impl std::fmt::Display for NodeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NodeId::Source => write!(f, "s"),
            NodeId::Vertex(v) => write!(f, "{v}"),
            NodeId::Sink => write!(f, "t"),
        }
    }
}

/// Directed network with positive integer capacities and distinguished
/// source/sink. The source has indegree zero and the sink outdegree zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    arcs: BTreeMap<(NodeId, NodeId), u64>,
}

impl FlowNetwork {
    pub fn new() -> FlowNetwork {
        FlowNetwork {
            arcs: BTreeMap::new(),
        }
    }

    /// Adds an arc. Arcs into the source, out of the sink, self-arcs, and
    /// zero capacities are rejected.
    pub fn add_arc(&mut self, from: NodeId, to: NodeId, capacity: u64) -> Result<()> {
        if capacity == 0 {
            return Err(Error::Precondition("arc capacity must be positive".into()));
        }
        if to == NodeId::Source || from == NodeId::Sink || from == to {
            return Err(Error::Precondition(format!(
                "invalid arc {from} -> {to}"
            )));
        }
        if self.arcs.insert((from.clone(), to.clone()), capacity).is_some() {
            return Err(Error::Precondition(format!(
                "duplicate arc {from} -> {to}"
            )));
        }
        Ok(())
    }

    pub fn arcs(&self) -> impl Iterator<Item = (&(NodeId, NodeId), u64)> {
        self.arcs.iter().map(|(k, v)| (k, *v))
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn capacity(&self, from: &NodeId, to: &NodeId) -> u64 {
        self.arcs
            .get(&(from.clone(), to.clone()))
            .copied()
            .unwrap_or(0)
    }

    fn nodes(&self) -> BTreeSet<NodeId> {
        let mut nodes = BTreeSet::from([NodeId::Source, NodeId::Sink]);
        for (from, to) in self.arcs.keys() {
            nodes.insert(from.clone());
            nodes.insert(to.clone());
        }
        nodes
    }
}

impl Default for FlowNetwork {
    fn default() -> Self {
        FlowNetwork::new()
    }
}

/// Maximum integral s-t flow by shortest augmenting paths (BFS over the
/// residual graph in canonical node order), plus the per-arc flow.
pub fn max_flow(net: &FlowNetwork) -> (u64, BTreeMap<(NodeId, NodeId), u64>) {
    let nodes: Vec<NodeId> = net.nodes().into_iter().collect();
    let index: BTreeMap<&NodeId, usize> = nodes.iter().enumerate().map(|(i, n)| (n, i)).collect();
    let n = nodes.len();
    let source = index[&NodeId::Source];
    let sink = index[&NodeId::Sink];

    let mut cap = vec![vec![0u64; n]; n];
    for ((from, to), c) in net.arcs() {
        cap[index[from]][index[to]] = c;
    }
    let mut flow = vec![vec![0i64; n]; n];

    loop {
        // BFS over residual capacities; neighbours scanned in index order,
        // which is canonical node order.
        let mut parent = vec![usize::MAX; n];
        parent[source] = source;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            if u == sink {
                break;
            }
            for v in 0..n {
                let residual = cap[u][v] as i64 - flow[u][v];
                if residual > 0 && parent[v] == usize::MAX {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[sink] == usize::MAX {
            break;
        }
        let mut bottleneck = i64::MAX;
        let mut v = sink;
        while v != source {
            let u = parent[v];
            bottleneck = bottleneck.min(cap[u][v] as i64 - flow[u][v]);
            v = u;
        }
        let mut v = sink;
        while v != source {
            let u = parent[v];
            flow[u][v] += bottleneck;
            flow[v][u] -= bottleneck;
            v = u;
        }
    }

    let value: i64 = (0..n).map(|v| flow[source][v]).sum();
    let mut assignment = BTreeMap::new();
    for ((from, to), _) in net.arcs() {
        let f = flow[index[from]][index[to]];
        if f > 0 {
            assignment.insert((from.clone(), to.clone()), f as u64);
        }
    }
    (value as u64, assignment)
}

/// Per-vertex degree demand, validated to lie within 0..=deg(v).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeDemand(BTreeMap<String, u64>);

impl DegreeDemand {
    /// Builds a demand map; every graph vertex must be covered and every
    /// value bounded by the vertex degree.
    pub fn new(g: &Graph, demand: BTreeMap<String, u64>) -> Result<DegreeDemand> {
        for v in g.vertex_names() {
            match demand.get(v) {
                None => return Err(Error::DemandOutOfRange(v.clone())),
                Some(&r) if r > g.degree(v) as u64 => {
                    return Err(Error::DemandOutOfRange(v.clone()))
                }
                Some(_) => {}
            }
        }
        for v in demand.keys() {
            if !g.contains_vertex(v) {
                return Err(Error::DemandOutOfRange(v.clone()));
            }
        }
        Ok(DegreeDemand(demand))
    }

    /// Uniform demand r(v) = value for every vertex (still degree-checked).
    pub fn uniform(g: &Graph, value: u64) -> Result<DegreeDemand> {
        DegreeDemand::new(
            g,
            g.vertex_names().iter().map(|v| (v.clone(), value)).collect(),
        )
    }

    pub fn get(&self, v: &str) -> u64 {
        self.0.get(v).copied().unwrap_or(0)
    }

    pub fn sum_over<'a>(&self, part: impl Iterator<Item = &'a String>) -> u64 {
        part.map(|v| self.get(v)).sum()
    }
}

/// Builds the network with arcs (s, u) of capacity r(u) for u in part1, unit
/// arcs (u, v) per edge, and (v, t) of capacity r(v) for v in part2. Arcs of
/// capacity zero are omitted.
pub fn build_network(g: &Graph, bp: &Bipartition, demand: &DegreeDemand) -> Result<FlowNetwork> {
    let mut net = FlowNetwork::new();
    for u in &bp.part1 {
        if demand.get(u) > 0 {
            net.add_arc(NodeId::Source, NodeId::Vertex(u.clone()), demand.get(u))?;
        }
    }
    for e in g.edges() {
        let (a, b) = e.endpoints();
        let (u, v) = if bp.part1.contains(a) { (a, b) } else { (b, a) };
        net.add_arc(NodeId::Vertex(u.to_string()), NodeId::Vertex(v.to_string()), 1)?;
    }
    for v in &bp.part2 {
        if demand.get(v) > 0 {
            net.add_arc(NodeId::Vertex(v.clone()), NodeId::Sink, demand.get(v))?;
        }
    }
    Ok(net)
}

/// How the demand must be met on the two parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DemandMode {
    /// deg_H(v) = r(v) on part1, deg_H(v) <= r(v) on part2.
    Saturate,
    /// deg_H(v) = r(v) on both parts; requires equal demand sums.
    Exact,
}

/// Solves for a subgraph meeting the demand, returning its edge set, or
/// `None` when no such subgraph exists. Part1 is always the saturated side;
/// when its demand sum exceeds part2's the answer is `None`, matching the
/// subset condition failing at S = part1. The result is deterministic (fixed
/// arc order), not canonical.
pub fn degree_constrained_subgraph(
    g: &Graph,
    bp: &Bipartition,
    demand: &DegreeDemand,
    mode: DemandMode,
) -> Result<Option<BTreeSet<Edge>>> {
    let sum1 = demand.sum_over(bp.part1.iter());
    let sum2 = demand.sum_over(bp.part2.iter());
    if mode == DemandMode::Exact && sum1 != sum2 {
        return Ok(None);
    }
    let target = sum1;
    let net = build_network(g, bp, demand)?;
    let (value, flow) = max_flow(&net);
    debug_assert!(value <= target);
    if value < target {
        return Ok(None);
    }
    let mut edges = BTreeSet::new();
    for ((from, to), f) in flow {
        if let (NodeId::Vertex(u), NodeId::Vertex(v)) = (from, to) {
            debug_assert_eq!(f, 1);
            edges.insert(Edge::new(u, v));
        }
    }
    Ok(Some(edges))
}

/// Evaluates the subset inequality over every S subset of part1 (including
/// part1 itself). Exponential; part1 is capped at [`SUBSET_SCAN_LIMIT`].
pub fn multimatching_condition(
    g: &Graph,
    bp: &Bipartition,
    demand: &DegreeDemand,
) -> Result<bool> {
    let p1: Vec<&String> = bp.part1.iter().collect();
    let p2: Vec<&String> = bp.part2.iter().collect();
    if p1.len() > SUBSET_SCAN_LIMIT {
        return Err(Error::PartTooLarge(p1.len(), SUBSET_SCAN_LIMIT));
    }
    // Adjacency of each part2 vertex as a bitmask over part1 indices.
    let p1_index: BTreeMap<&str, usize> = p1
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i))
        .collect();
    let masks: Vec<u32> = p2
        .iter()
        .map(|v| {
            g.neighbours(v)
                .into_iter()
                .filter_map(|u| p1_index.get(u))
                .fold(0u32, |m, &i| m | (1 << i))
        })
        .collect();
    let r1: Vec<u64> = p1.iter().map(|v| demand.get(v)).collect();
    let r2: Vec<u64> = p2.iter().map(|v| demand.get(v)).collect();

    for s in 0u32..(1u32 << p1.len()) {
        let left: u64 = (0..p1.len()).filter(|&i| s >> i & 1 == 1).map(|i| r1[i]).sum();
        let right: u64 = masks
            .iter()
            .zip(&r2)
            .map(|(&mask, &r)| r.min(u64::from((mask & s).count_ones())))
            .sum();
        if left > right {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Hall's condition |S| <= |N(S)| for every S subset of part1: the
/// multimatching condition specialized to r = 1.
pub fn hall_check(g: &Graph, bp: &Bipartition) -> Result<bool> {
    let demand = DegreeDemand::new(
        g,
        g.vertex_names().iter().map(|v| (v.clone(), 1)).collect(),
    );
    let demand = match demand {
        Ok(d) => d,
        // Isolated vertices cannot carry demand 1; they fail Hall trivially
        // when in part1 and are irrelevant otherwise.
        Err(_) => return Ok(bp.part1.iter().all(|v| g.degree(v) > 0) && {
            let filtered: BTreeMap<String, u64> = g
                .vertex_names()
                .iter()
                .map(|v| (v.clone(), u64::from(g.degree(v) > 0)))
                .collect();
            multimatching_condition(g, bp, &DegreeDemand::new(g, filtered)?)?
        }),
    };
    multimatching_condition(g, bp, &demand)
}

/// Decides difference-k colourability by the exact degree-constrained
/// subgraph with r(v) = (deg(v) - k) / 2: the subgraph is coloured red, the
/// rest blue. Returns `None` when no difference-k colouring exists.
pub fn decide_difference_k(g: &Graph, k: u64) -> Result<Option<Colouring>> {
    let bp = g.bipartition()?;
    let mut demand = BTreeMap::new();
    for v in g.vertex_names() {
        let d = g.degree(v) as u64;
        if d < k || !(d - k).is_multiple_of(2) {
            return Ok(None);
        }
        demand.insert(v.clone(), (d - k) / 2);
    }
    let demand = DegreeDemand::new(g, demand)?;
    let red = match degree_constrained_subgraph(g, &bp, &demand, DemandMode::Exact)? {
        Some(edges) => edges,
        None => return Ok(None),
    };
    let mut colouring = Colouring::default();
    for e in g.edges() {
        let colour = if red.contains(&e) {
            Colour::Red
        } else {
            Colour::Blue
        };
        colouring.set(e, colour);
    }
    debug_assert!(g
        .vertex_names()
        .iter()
        .all(|v| colouring.weight_at(g, v) == k as i64));
    Ok(Some(colouring))
}

/// Decides difference-0 colourability: possible iff every degree is even, in
/// which case the edges decompose into cycles, each coloured alternately.
pub fn decide_difference_0(g: &Graph) -> Result<Option<Colouring>> {
    g.bipartition()?;
    if g.vertex_names().iter().any(|v| !g.degree(v).is_multiple_of(2)) {
        return Ok(None);
    }
    let mut colouring = Colouring::default();
    for cycle in eulerian_cycle_decomposition(g) {
        let mut colour = Colour::Blue;
        for i in 0..cycle.len() {
            let j = (i + 1) % cycle.len();
            colouring.set(Edge::new(cycle[i].as_str(), cycle[j].as_str()), colour);
            colour = colour.opposite();
        }
    }
    debug_assert!(colouring.is_total_for(g));
    debug_assert!(g
        .vertex_names()
        .iter()
        .all(|v| colouring.weight_at(g, v) == 0));
    Ok(Some(colouring))
}

/// Decomposes an even-degree graph into edge-disjoint cycles, each returned
/// as its vertex sequence.
pub fn eulerian_cycle_decomposition(g: &Graph) -> Vec<Vec<String>> {
    let mut unused: BTreeSet<Edge> = g.edges().into_iter().collect();
    let mut cycles = Vec::new();
    while let Some(start_edge) = unused.iter().next().cloned() {
        // Walk unused edges until a vertex repeats, then cut out that loop.
        let mut walk: Vec<String> = vec![start_edge.endpoints().0.to_string()];
        let mut position: BTreeMap<String, usize> = BTreeMap::new();
        position.insert(walk[0].clone(), 0);
        loop {
            let here = walk.last().expect("walk is nonempty").clone();
            let next_edge = g
                .edges_at(&here)
                .find(|e| unused.contains(e))
                .expect("even degrees guarantee a continuation");
            unused.remove(&next_edge);
            let next = next_edge.other(&here).to_string();
            if let Some(&at) = position.get(&next) {
                let cycle: Vec<String> = walk.drain(at..).collect();
                for v in &cycle {
                    position.remove(v);
                }
                cycles.push(cycle);
                if walk.is_empty() {
                    break;
                }
            } else {
                position.insert(next.clone(), walk.len());
                walk.push(next);
            }
        }
    }
    cycles
}
