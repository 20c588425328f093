//! Structural analysis of candidate graphs.
//!
//! The decision pipeline works on a graph's *reduced form* (leaf-twig
//! configurations exhaustively removed) and its *skeleton* (the maximal
//! subgraph of minimum degree two, obtained by repeatedly stripping leaves).
//! Skeleton vertices of skeleton-degree two are classified by the local tree
//! hanging off them in the reduced form; the skeleton decomposes into *limbs*,
//! maximal trails through leaf-type vertices. Edges lying on cycles partition
//! into *common cycle classes*: the equivalence classes of "occur together in
//! some cycle", which coincide with the non-bridge edge sets of biconnected
//! blocks.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

/// A leaf plus a twig attached at a common anchor vertex. Removing the four
/// non-anchor vertices and their four edges preserves difference-1
/// colourability in both directions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LeafTwigConfiguration {
    pub anchor: String,
    pub leaf: String,
    pub twig_base: String,
    pub twig_leaves: (String, String),
}

impl LeafTwigConfiguration {
    /// The four removed vertices.
    pub fn removed_vertices(&self) -> BTreeSet<String> {
        BTreeSet::from([
            self.leaf.clone(),
            self.twig_base.clone(),
            self.twig_leaves.0.clone(),
            self.twig_leaves.1.clone(),
        ])
    }
}

/// Classification of skeleton vertices in the reduced form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VertexType {
    /// Skeleton-degree 2, one leaf attached.
    LeafType,
    /// Skeleton-degree 2, one twig attached.
    TwigType,
    /// Skeleton-degree 2, three leaves attached.
    TripleType,
    /// Skeleton-degree >= 3 with a local tree of only leaves or only twigs.
    Junction,
    /// Local tree of a shape that rules out any difference-1 colouring.
    Unclassifiable,
}

impl VertexType {
    pub fn is_typed_degree_two(self) -> bool {
        matches!(
            self,
            VertexType::LeafType | VertexType::TwigType | VertexType::TripleType
        )
    }
}

/// A maximal skeleton trail whose interior vertices are all leaf-type.
/// Endpoints may coincide (closed limb).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limb {
    /// Trail v0, v1, ..., vk; v0 and vk are the (possibly equal) endpoints.
    pub vertices: Vec<String>,
}

impl Limb {
    pub fn length(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn endpoints(&self) -> (&str, &str) {
        (
            self.vertices.first().expect("limb is nonempty"),
            self.vertices.last().expect("limb is nonempty"),
        )
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.vertices
            .windows(2)
            .map(|w| Edge::new(w[0].as_str(), w[1].as_str()))
            .collect()
    }
}

/// Everything the colouring pipeline needs to know about one graph.
#[derive(Debug, Clone)]
pub struct StructureReport {
    /// The reduced form of the input.
    pub reduced: Graph,
    /// Leaf-twig configurations removed to reach the reduced form, in order.
    pub removals: Vec<LeafTwigConfiguration>,
    /// Skeleton of the input (equal to the skeleton of the reduced form);
    /// `None` for forests.
    pub skeleton: Option<Graph>,
    /// Type of every skeleton vertex, computed on the reduced form.
    pub classification: BTreeMap<String, VertexType>,
    /// Limbs covering the skeleton; empty when every skeleton vertex is
    /// leaf-type.
    pub limbs: Vec<Limb>,
    /// True when the skeleton is nonempty and all its vertices are leaf-type.
    pub all_leaf_type: bool,
    /// Common cycle classes of the reduced form (equal to those of the input).
    pub cycle_classes: Vec<BTreeSet<Edge>>,
    pub is_cactus: bool,
}

impl StructureReport {
    pub fn vertex_type(&self, v: &str) -> Option<VertexType> {
        self.classification.get(v).copied()
    }

    pub fn skeleton_edges(&self) -> BTreeSet<Edge> {
        self.skeleton
            .as_ref()
            .map(|sk| sk.edges().into_iter().collect())
            .unwrap_or_default()
    }

    /// Serializable view for the CLI `classify` output.
    pub fn to_summary(&self) -> StructureSummary {
        StructureSummary {
            reduced_vertices: self.reduced.vertex_names().to_vec(),
            reduced_edges: self.reduced.edges(),
            skeleton_edges: self.skeleton_edges().into_iter().collect(),
            classification: self
                .classification
                .iter()
                .map(|(v, t)| (v.clone(), *t))
                .collect(),
            limbs: self.limbs.clone(),
            cycle_classes: self
                .cycle_classes
                .iter()
                .map(|class| class.iter().cloned().collect())
                .collect(),
            is_cactus: self.is_cactus,
        }
    }
}

/// JSON-facing projection of a [`StructureReport`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StructureSummary {
    pub reduced_vertices: Vec<String>,
    pub reduced_edges: Vec<Edge>,
    pub skeleton_edges: Vec<Edge>,
    pub classification: BTreeMap<String, VertexType>,
    pub limbs: Vec<Limb>,
    pub cycle_classes: Vec<Vec<Edge>>,
    pub is_cactus: bool,
}

/// Finds the lexicographically first leaf-twig configuration, ordering
/// candidates by (leaf, twig base, anchor).
pub fn find_leaf_twig(g: &Graph) -> Option<LeafTwigConfiguration> {
    let mut best: Option<LeafTwigConfiguration> = None;
    for anchor in g.vertex_names() {
        let mut leaf = None;
        let mut twig = None;
        for nb in g.neighbours(anchor) {
            if leaf.is_none() && g.degree(nb) == 1 {
                leaf = Some(nb.to_string());
            }
            if twig.is_none() && g.degree(nb) == 3 {
                let hanging: Vec<&str> = g
                    .neighbours(nb)
                    .into_iter()
                    .filter(|w| *w != anchor.as_str())
                    .collect();
                if hanging.len() == 2 && hanging.iter().all(|w| g.degree(w) == 1) {
                    twig = Some((
                        nb.to_string(),
                        (hanging[0].to_string(), hanging[1].to_string()),
                    ));
                }
            }
            if leaf.is_some() && twig.is_some() {
                break;
            }
        }
        if let (Some(leaf), Some((twig_base, twig_leaves))) = (leaf, twig) {
            let candidate = LeafTwigConfiguration {
                anchor: anchor.clone(),
                leaf,
                twig_base,
                twig_leaves,
            };
            let key = |c: &LeafTwigConfiguration| {
                (c.leaf.clone(), c.twig_base.clone(), c.anchor.clone())
            };
            if best.as_ref().is_none_or(|b| key(&candidate) < key(b)) {
                best = Some(candidate);
            }
        }
    }
    best
}

/// Deletes leaf-twig configurations until none remain, always removing the
/// lexicographically first. The result is unique up to isomorphism regardless
/// of removal order.
pub fn reduce(g: &Graph) -> Graph {
    reduce_with_trace(g).0
}

/// Like [`reduce`], also returning the removed configurations in removal
/// order so colourings can be replayed back onto the original graph.
pub fn reduce_with_trace(g: &Graph) -> (Graph, Vec<LeafTwigConfiguration>) {
    let mut current = g.clone();
    let mut removals = Vec::new();
    while let Some(cfg) = find_leaf_twig(&current) {
        current = current.without_vertices(&cfg.removed_vertices());
        removals.push(cfg);
    }
    (current, removals)
}

/// The maximal subgraph of minimum degree two, obtained by repeatedly
/// deleting leaves. Errors on forests, where the result would be empty.
pub fn skeleton(g: &Graph) -> Result<Graph> {
    if !g.has_cycle() {
        return Err(Error::AcyclicGraph);
    }
    let mut keep: BTreeSet<String> = g.vertex_names().iter().cloned().collect();
    loop {
        let current = g.induced(&keep);
        let peel: Vec<String> = current
            .vertex_names()
            .iter()
            .filter(|v| current.degree(v) <= 1)
            .cloned()
            .collect();
        if peel.is_empty() {
            return Ok(current);
        }
        for v in peel {
            keep.remove(&v);
        }
    }
}

/// The connected component containing `v` after deleting all skeleton edges
/// from `g`. Always a tree.
pub fn local_tree(g: &Graph, v: &str) -> Result<Graph> {
    let sk = skeleton(g)?;
    if !sk.contains_vertex(v) {
        return Err(Error::NotInSkeleton(v.to_string()));
    }
    let sk_edges: BTreeSet<Edge> = sk.edges().into_iter().collect();
    let non_sk: BTreeSet<Edge> = g
        .edges()
        .into_iter()
        .filter(|e| !sk_edges.contains(e))
        .collect();
    // Component of v in the graph (V(g), E(g) \ E(sk)).
    let mut comp = BTreeSet::from([v.to_string()]);
    let mut queue = VecDeque::from([v.to_string()]);
    while let Some(u) = queue.pop_front() {
        for e in &non_sk {
            if e.touches(&u) {
                let w = e.other(&u).to_string();
                if comp.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
    }
    let pairs: Vec<(&str, &str)> = non_sk
        .iter()
        .filter(|e| comp.contains(e.endpoints().0))
        .map(|e| e.endpoints())
        .collect();
    let vertices: Vec<&str> = comp.iter().map(|s| s.as_str()).collect();
    Ok(Graph::new(&vertices, &pairs).expect("local tree is a valid subgraph"))
}

/// Shape of a local tree: how many bare leaves and how many twigs hang off
/// the root. `None` when the tree is not of that form.
fn local_tree_shape(tree: &Graph, root: &str) -> Option<(usize, usize)> {
    let mut leaves = 0;
    let mut twigs = 0;
    let mut accounted = 1; // the root
    for nb in tree.neighbours(root) {
        match tree.degree(nb) {
            1 => {
                leaves += 1;
                accounted += 1;
            }
            3 => {
                let hanging: Vec<&str> = tree
                    .neighbours(nb)
                    .into_iter()
                    .filter(|w| *w != root)
                    .collect();
                if hanging.len() != 2 || hanging.iter().any(|w| tree.degree(w) != 1) {
                    return None;
                }
                twigs += 1;
                accounted += 3;
            }
            _ => return None,
        }
    }
    // Reject anything deeper than leaves and twigs off the root.
    if accounted != tree.vertex_count() {
        return None;
    }
    Some((leaves, twigs))
}

fn classify_on_reduced(reduced: &Graph, sk: &Graph) -> BTreeMap<String, VertexType> {
    let mut out = BTreeMap::new();
    for v in sk.vertex_names() {
        let sk_degree = sk.degree(v);
        let tree = local_tree(reduced, v).expect("skeleton vertex has a local tree");
        let shape = local_tree_shape(&tree, v);
        let vtype = match (sk_degree, shape) {
            (2, Some((1, 0))) => VertexType::LeafType,
            (2, Some((0, 1))) => VertexType::TwigType,
            (2, Some((3, 0))) => VertexType::TripleType,
            (d, Some((leaves, twigs))) if d >= 3 && (leaves == 0 || twigs == 0) => {
                VertexType::Junction
            }
            _ => VertexType::Unclassifiable,
        };
        out.insert(v.clone(), vtype);
    }
    out
}

/// Classifies every skeleton vertex, using the reduced form of `g` but
/// reporting against the original vertex names. Errors on forests.
pub fn classify_vertices(g: &Graph) -> Result<BTreeMap<String, VertexType>> {
    let reduced = reduce(g);
    let sk = skeleton(&reduced)?;
    Ok(classify_on_reduced(&reduced, &sk))
}

fn limbs_on_skeleton(
    sk: &Graph,
    classification: &BTreeMap<String, VertexType>,
) -> Result<Vec<Limb>> {
    let is_leaf_type = |v: &str| classification.get(v) == Some(&VertexType::LeafType);
    let anchors: Vec<&String> = sk
        .vertex_names()
        .iter()
        .filter(|v| !is_leaf_type(v))
        .collect();
    if anchors.is_empty() {
        return Err(Error::AllLeafType);
    }
    let mut used: BTreeSet<Edge> = BTreeSet::new();
    let mut limbs = Vec::new();
    for start in anchors {
        for first in sk.neighbours(start) {
            let first_edge = Edge::new(start.as_str(), first);
            if used.contains(&first_edge) {
                continue;
            }
            used.insert(first_edge);
            let mut trail = vec![start.clone(), first.to_string()];
            let mut prev = start.as_str().to_string();
            let mut cur = first.to_string();
            while is_leaf_type(&cur) {
                // A leaf-type vertex has skeleton degree exactly 2.
                let next = sk
                    .neighbours(&cur)
                    .into_iter()
                    .find(|w| *w != prev.as_str())
                    .expect("leaf-type vertex has two skeleton neighbours")
                    .to_string();
                used.insert(Edge::new(cur.as_str(), next.as_str()));
                trail.push(next.clone());
                prev = cur;
                cur = next;
            }
            limbs.push(Limb { vertices: trail });
        }
    }
    Ok(limbs)
}

/// Decomposes the skeleton into edge-disjoint limbs. Errors with
/// [`Error::AllLeafType`] when no non-leaf-type skeleton vertex exists, in
/// which case limb conditions are vacuous.
pub fn limbs(g: &Graph) -> Result<Vec<Limb>> {
    let reduced = reduce(g);
    let sk = skeleton(&reduced)?;
    let classification = classify_on_reduced(&reduced, &sk);
    limbs_on_skeleton(&sk, &classification)
}

/// Biconnected blocks as edge sets (Tarjan low-link over an iterative DFS).
fn biconnected_blocks(g: &Graph) -> Vec<BTreeSet<Edge>> {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0usize;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut blocks = Vec::new();

    // Iterative DFS frames: (vertex, parent, neighbour cursor).
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        let mut frames: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some((u, parent, cursor)) = frames.last().copied() {
            let neighbours = g.neighbour_indices(u);
            if cursor < neighbours.len() {
                frames.last_mut().unwrap().2 += 1;
                let w = neighbours[cursor];
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    edge_stack.push((u, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    frames.push((w, u, 0));
                } else if disc[w] < disc[u] {
                    edge_stack.push((u, w));
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                frames.pop();
                if let Some(&mut (p, _, _)) = frames.last_mut() {
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        // Pop one block: everything above and including the
                        // tree edge (p, u).
                        let mut block = BTreeSet::new();
                        while let Some((x, y)) = edge_stack.pop() {
                            block.insert(Edge::new(g.name(x), g.name(y)));
                            if (x, y) == (p, u) {
                                break;
                            }
                        }
                        if !block.is_empty() {
                            blocks.push(block);
                        }
                    }
                }
            }
        }
    }
    blocks
}

/// Common cycle classes: the equivalence classes of "e1 and e2 occur together
/// in a cycle", computed as the non-bridge edge sets of biconnected blocks.
pub fn common_cycle_classes(g: &Graph) -> Vec<BTreeSet<Edge>> {
    biconnected_blocks(g)
        .into_iter()
        .filter(|block| block.len() >= 2)
        .collect()
}

/// True iff every edge lies on at most one cycle and the graph is connected,
/// i.e. every biconnected block is a single edge or a single cycle.
pub fn is_cactus(g: &Graph) -> bool {
    if !g.is_connected() {
        return false;
    }
    biconnected_blocks(g).iter().all(|block| {
        if block.len() <= 1 {
            return true;
        }
        let mut vertices = BTreeSet::new();
        for e in block {
            let (a, b) = e.endpoints();
            vertices.insert(a);
            vertices.insert(b);
        }
        block.len() == vertices.len()
    })
}

/// Breadth-first distance layers from `v`: `V_i` is the set of vertices at
/// distance exactly `i`. Errors when some vertex is unreachable.
pub fn bfs_layers(g: &Graph, v: &str) -> Result<Vec<BTreeSet<String>>> {
    let start = g
        .index_of(v)
        .ok_or_else(|| Error::UnknownVertex(v.to_string()))?;
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[start] = 0;
    let mut queue = VecDeque::from([start]);
    let mut layers: Vec<BTreeSet<String>> = vec![BTreeSet::from([v.to_string()])];
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbour_indices(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                if layers.len() <= dist[w] {
                    layers.push(BTreeSet::new());
                }
                layers[dist[w]].insert(g.name(w).to_string());
                queue.push_back(w);
            }
        }
    }
    if dist.contains(&usize::MAX) {
        return Err(Error::Disconnected);
    }
    Ok(layers)
}

/// Runs the full structural analysis used by the decision pipeline.
pub fn analyze(g: &Graph) -> Result<StructureReport> {
    let (reduced, removals) = reduce_with_trace(g);
    let is_cactus_flag = is_cactus(g);
    if !reduced.has_cycle() {
        return Ok(StructureReport {
            cycle_classes: common_cycle_classes(&reduced),
            reduced,
            removals,
            skeleton: None,
            classification: BTreeMap::new(),
            limbs: Vec::new(),
            all_leaf_type: false,
            is_cactus: is_cactus_flag,
        });
    }
    let sk = skeleton(&reduced)?;
    let classification = classify_on_reduced(&reduced, &sk);
    let (limbs, all_leaf_type) = match limbs_on_skeleton(&sk, &classification) {
        Ok(limbs) => (limbs, false),
        Err(Error::AllLeafType) => (Vec::new(), true),
        Err(other) => return Err(other),
    };
    Ok(StructureReport {
        cycle_classes: common_cycle_classes(&reduced),
        reduced,
        removals,
        skeleton: Some(sk),
        classification,
        limbs,
        all_leaf_type,
        is_cactus: is_cactus_flag,
    })
}
