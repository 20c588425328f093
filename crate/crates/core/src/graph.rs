//! Core graph model: simple undirected bipartite graphs with string vertex
//! identifiers, canonical (lexicographic) adjacency order, and JSON
//! serialization.
//!
//! All iteration orders are lexicographic in vertex names, so every algorithm
//! built on top of this module is deterministic.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An undirected edge, stored with endpoints in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    a: String,
    b: String,
}

impl Edge {
    /// Canonicalizes the endpoint order. Panics on self-loops, which the
    /// graph model rejects before edges are ever built.
    pub fn new(x: impl Into<String>, y: impl Into<String>) -> Edge {
        let (x, y) = (x.into(), y.into());
        assert_ne!(x, y, "self-loops are not representable");
        if x < y {
            Edge { a: x, b: y }
        } else {
            Edge { a: y, b: x }
        }
    }

    pub fn endpoints(&self) -> (&str, &str) {
        (&self.a, &self.b)
    }

    /// The endpoint that is not `v`. Panics if `v` is not an endpoint.
    pub fn other(&self, v: &str) -> &str {
        if v == self.a {
            &self.b
        } else {
            assert_eq!(v, self.b, "vertex {v:?} is not an endpoint of {self}");
            &self.a
        }
    }

    pub fn touches(&self, v: &str) -> bool {
        v == self.a || v == self.b
    }

    /// Stable string key, used for JSON colour maps.
    pub fn key(&self) -> String {
        format!("{}--{}", self.a, self.b)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}--{}", self.a, self.b)
    }
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (&self.a, &self.b).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (a, b): (String, String) = Deserialize::deserialize(d)?;
        if a == b {
            return Err(D::Error::custom(format!("self-loop at {a:?}")));
        }
        Ok(Edge::new(a, b))
    }
}

/// Edge colour of a 2-edge colouring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Colour {
    Blue,
    Red,
}

impl Colour {
    pub fn opposite(self) -> Colour {
        match self {
            Colour::Blue => Colour::Red,
            Colour::Red => Colour::Blue,
        }
    }

    /// Signed weight of the colour: blue = +1, red = -1.
    pub fn weight(self) -> i64 {
        match self {
            Colour::Blue => 1,
            Colour::Red => -1,
        }
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Colour::Blue => write!(f, "blue"),
            Colour::Red => write!(f, "red"),
        }
    }
}

/// A total 2-edge colouring: every edge of the graph it belongs to is mapped
/// to blue or red.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Colouring(pub BTreeMap<Edge, Colour>);

impl Colouring {
    pub fn get(&self, e: &Edge) -> Option<Colour> {
        self.0.get(e).copied()
    }

    pub fn set(&mut self, e: Edge, c: Colour) {
        self.0.insert(e, c);
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Edge, Colour)> {
        self.0.iter().map(|(e, c)| (e, *c))
    }

    /// Checks the colouring covers exactly the edge set of `g`.
    pub fn is_total_for(&self, g: &Graph) -> bool {
        self.0.len() == g.edge_count() && g.edges().iter().all(|e| self.0.contains_key(e))
    }

    /// deg^B(v) - deg^R(v) of `v` under this colouring.
    pub fn weight_at(&self, g: &Graph, v: &str) -> i64 {
        g.edges_at(v)
            .map(|e| self.get(&e).map(Colour::weight).unwrap_or(0))
            .sum()
    }

    /// JSON object form keyed `"u--v"`, values `"blue"`/`"red"`.
    pub fn to_json_map(&self) -> BTreeMap<String, String> {
        self.0
            .iter()
            .map(|(e, c)| (e.key(), c.to_string()))
            .collect()
    }

    /// Resolves a JSON colour map against the edge set of `g`.
    pub fn from_json_map(g: &Graph, map: &BTreeMap<String, String>) -> Result<Colouring> {
        let mut by_key: BTreeMap<String, Edge> = BTreeMap::new();
        for e in g.edges() {
            if by_key.insert(e.key(), e.clone()).is_some() {
                return Err(Error::Malformed(format!("ambiguous edge key {}", e.key())));
            }
        }
        let mut colouring = Colouring::default();
        for (key, value) in map {
            let edge = by_key
                .get(key)
                .ok_or_else(|| Error::Malformed(format!("colour entry {key:?} matches no edge")))?;
            let colour = match value.as_str() {
                "blue" => Colour::Blue,
                "red" => Colour::Red,
                other => return Err(Error::Malformed(format!("unknown colour {other:?}"))),
            };
            colouring.set(edge.clone(), colour);
        }
        if !colouring.is_total_for(g) {
            return Err(Error::ColouringDomain(format!(
                "{} of {} edges coloured",
                colouring.len(),
                g.edge_count()
            )));
        }
        Ok(colouring)
    }
}

/// A bipartition of the vertex set. Every edge has one endpoint in each part;
/// `part1` holds the lexicographically smallest vertex of each component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    pub part1: BTreeSet<String>,
    pub part2: BTreeSet<String>,
}

impl Bipartition {
    pub fn side_of(&self, v: &str) -> Option<u8> {
        if self.part1.contains(v) {
            Some(0)
        } else if self.part2.contains(v) {
            Some(1)
        } else {
            None
        }
    }

    pub fn is_balanced(&self) -> bool {
        self.part1.len() == self.part2.len()
    }
}

/// Report of the four necessary conditions for a graph to admit a difference-1
/// colouring. All four true is necessary, not sufficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateReport {
    pub bipartite: bool,
    /// Every connected component has equal part sizes. False when not bipartite.
    pub balanced: bool,
    pub connected: bool,
    pub all_degrees_odd: bool,
}

impl CandidateReport {
    pub fn all_pass(&self) -> bool {
        self.bipartite && self.balanced && self.connected && self.all_degrees_odd
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    colours: Option<BTreeMap<String, String>>,
}

/// Simple undirected graph over string vertex identifiers.
///
/// Immutable after construction. Vertices are kept sorted, so internal indices
/// follow lexicographic order and adjacency lists sorted by index are also
/// sorted by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    adj: Vec<Vec<usize>>,
    edge_list: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from vertex names and edge pairs, validating the
    /// simple-graph invariants.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Graph> {
        let mut names: Vec<String> = Vec::with_capacity(vertices.len());
        let mut seen = BTreeSet::new();
        for v in vertices {
            let v = v.as_ref().to_string();
            if !seen.insert(v.clone()) {
                return Err(Error::DuplicateVertex(v));
            }
            names.push(v);
        }
        names.sort();

        let index: BTreeMap<&str, usize> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();

        let mut edge_set = BTreeSet::new();
        for (x, y) in edges {
            let (x, y) = (x.as_ref(), y.as_ref());
            if x == y {
                return Err(Error::SelfLoop(x.to_string()));
            }
            let &xi = index
                .get(x)
                .ok_or_else(|| Error::UnknownVertex(x.to_string()))?;
            let &yi = index
                .get(y)
                .ok_or_else(|| Error::UnknownVertex(y.to_string()))?;
            let pair = (xi.min(yi), xi.max(yi));
            if !edge_set.insert(pair) {
                return Err(Error::DuplicateEdge(
                    names[pair.0].clone(),
                    names[pair.1].clone(),
                ));
            }
        }

        let edge_list: Vec<(usize, usize)> = edge_set.into_iter().collect();
        let mut adj = vec![Vec::new(); names.len()];
        for &(u, v) in &edge_list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            names,
            adj,
            edge_list,
        })
    }

    /// Parses the graph JSON schema:
    /// `{"vertices": [...], "edges": [["u","v"], ...]}`.
    pub fn from_json(text: &str) -> Result<Graph> {
        let doc: GraphJson =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        Graph::new(&doc.vertices, &doc.edges)
    }

    /// Serializes to the graph JSON schema with vertices sorted and edges
    /// sorted by (min endpoint, max endpoint).
    pub fn to_json(&self) -> String {
        let doc = GraphJson {
            vertices: self.names.clone(),
            edges: self
                .edge_list
                .iter()
                .map(|&(u, v)| (self.names[u].clone(), self.names[v].clone()))
                .collect(),
            colours: None,
        };
        serde_json::to_string(&doc).expect("graph serialization cannot fail")
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_list.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, v: &str) -> Option<usize> {
        self.names.binary_search_by(|n| n.as_str().cmp(v)).ok()
    }

    pub fn contains_vertex(&self, v: &str) -> bool {
        self.index_of(v).is_some()
    }

    pub fn neighbour_indices(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    /// Neighbours of `v` in lexicographic order.
    pub fn neighbours(&self, v: &str) -> Vec<&str> {
        match self.index_of(v) {
            Some(i) => self.adj[i].iter().map(|&j| self.names[j].as_str()).collect(),
            None => Vec::new(),
        }
    }

    pub fn degree(&self, v: &str) -> usize {
        self.index_of(v).map_or(0, |i| self.adj[i].len())
    }

    pub fn has_edge(&self, u: &str, v: &str) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(i), Some(j)) => self.adj[i].binary_search(&j).is_ok(),
            _ => false,
        }
    }

    /// All edges in canonical order.
    pub fn edges(&self) -> Vec<Edge> {
        self.edge_list
            .iter()
            .map(|&(u, v)| Edge::new(self.names[u].as_str(), self.names[v].as_str()))
            .collect()
    }

    /// Edges incident with `v`.
    pub fn edges_at<'a>(&'a self, v: &'a str) -> impl Iterator<Item = Edge> + 'a {
        self.neighbours(v).into_iter().map(move |u| Edge::new(v, u))
    }

    /// Induced subgraph on the given vertices (all edges with both endpoints
    /// retained). Unknown names are ignored.
    pub fn induced(&self, keep: &BTreeSet<String>) -> Graph {
        let vertices: Vec<&String> = self.names.iter().filter(|n| keep.contains(*n)).collect();
        let edges: Vec<(&str, &str)> = self
            .edge_list
            .iter()
            .map(|&(u, v)| (self.names[u].as_str(), self.names[v].as_str()))
            .filter(|(u, v)| keep.contains(*u) && keep.contains(*v))
            .collect();
        Graph::new(
            &vertices.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
            &edges,
        )
        .expect("induced subgraph of a valid graph is valid")
    }

    /// The graph with the given vertices (and their incident edges) deleted.
    pub fn without_vertices(&self, drop: &BTreeSet<String>) -> Graph {
        let keep: BTreeSet<String> = self
            .names
            .iter()
            .filter(|n| !drop.contains(*n))
            .cloned()
            .collect();
        self.induced(&keep)
    }

    /// Subgraph on the same vertex set restricted to the given edges
    /// (vertices left isolated are dropped unless `keep_isolated`).
    pub fn edge_subgraph(&self, edges: &BTreeSet<Edge>, keep_isolated: bool) -> Graph {
        let pairs: Vec<(&str, &str)> = edges.iter().map(|e| e.endpoints()).collect();
        let vertices: Vec<&str> = if keep_isolated {
            self.names.iter().map(|s| s.as_str()).collect()
        } else {
            let mut touched = BTreeSet::new();
            for (u, v) in &pairs {
                touched.insert(*u);
                touched.insert(*v);
            }
            touched.into_iter().collect()
        };
        Graph::new(&vertices, &pairs).expect("edge subgraph of a valid graph is valid")
    }

    /// Vertex sets of connected components, each sorted, ordered by smallest
    /// member.
    pub fn component_vertex_sets(&self) -> Vec<BTreeSet<String>> {
        let n = self.names.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(u) = queue.pop_front() {
                comp.insert(self.names[u].clone());
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Connected components as vertex-disjoint subgraphs in canonical order.
    pub fn components(&self) -> Vec<Graph> {
        self.component_vertex_sets()
            .iter()
            .map(|set| self.induced(set))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.component_vertex_sets().len() <= 1
    }

    /// A connected graph with `|E| = |V| - 1`.
    pub fn is_tree(&self) -> bool {
        !self.names.is_empty()
            && self.is_connected()
            && self.edge_count() + 1 == self.vertex_count()
    }

    /// A connected graph with exactly one cycle (`|E| = |V|`).
    pub fn is_unicyclic(&self) -> bool {
        self.is_connected() && self.edge_count() == self.vertex_count() && !self.names.is_empty()
    }

    /// True if some component contains a cycle.
    pub fn has_cycle(&self) -> bool {
        // Per component: a cycle exists iff |E| >= |V|.
        self.component_vertex_sets().iter().any(|set| {
            let edges = self
                .edge_list
                .iter()
                .filter(|&&(u, v)| set.contains(&self.names[u]) && set.contains(&self.names[v]))
                .count();
            edges >= set.len()
        })
    }

    /// 2-colours every component by BFS. Fails with an odd-cycle witness iff
    /// the graph is not bipartite. `part1` receives the side containing the
    /// lexicographically smallest vertex of each component.
    pub fn bipartition(&self) -> Result<Bipartition> {
        let n = self.names.len();
        let mut colour: Vec<Option<bool>> = vec![None; n];
        let mut parent: Vec<usize> = (0..n).collect();
        let mut part1 = BTreeSet::new();
        let mut part2 = BTreeSet::new();
        for start in 0..n {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!colour[u].unwrap());
                            parent[w] = u;
                            queue.push_back(w);
                        }
                        Some(c) if c == colour[u].unwrap() => {
                            return Err(Error::OddCycle(self.odd_cycle_witness(&parent, u, w)));
                        }
                        Some(_) => {}
                    }
                }
            }
            // start is the smallest vertex of its component and has colour
            // false, so side false goes to part1.
            for (side, name) in colour.iter().zip(&self.names).skip(start) {
                if let Some(c) = side {
                    if part1.contains(name) || part2.contains(name) {
                        continue;
                    }
                    if *c {
                        part2.insert(name.clone());
                    } else {
                        part1.insert(name.clone());
                    }
                }
            }
        }
        Ok(Bipartition { part1, part2 })
    }

    /// Reconstructs an odd cycle through the conflicting BFS edge (u, w).
    fn odd_cycle_witness(&self, parent: &[usize], u: usize, w: usize) -> Vec<String> {
        let path_to_root = |mut x: usize| {
            let mut path = vec![x];
            while parent[x] != x {
                x = parent[x];
                path.push(x);
            }
            path
        };
        let pu = path_to_root(u);
        let pw = path_to_root(w);
        let set_u: BTreeSet<usize> = pu.iter().copied().collect();
        let meet = *pw.iter().find(|x| set_u.contains(x)).expect("common root");
        let mut cycle: Vec<usize> = pu.iter().take_while(|&&x| x != meet).copied().collect();
        cycle.push(meet);
        let tail: Vec<usize> = pw.iter().take_while(|&&x| x != meet).copied().collect();
        cycle.extend(tail.into_iter().rev());
        debug_assert!(cycle.len() % 2 == 1, "witness cycle must be odd");
        cycle.into_iter().map(|i| self.names[i].clone()).collect()
    }

    /// Reports the four necessary conditions for ASBG-colourability.
    pub fn validate_candidate(&self) -> CandidateReport {
        let bipartition = self.bipartition();
        let balanced = match &bipartition {
            Ok(_) => self.components().iter().all(|c| {
                c.bipartition()
                    .map(|bp| bp.is_balanced())
                    .unwrap_or(false)
            }),
            Err(_) => false,
        };
        CandidateReport {
            bipartite: bipartition.is_ok(),
            balanced,
            connected: self.is_connected(),
            all_degrees_odd: !self.names.is_empty()
                && self.adj.iter().all(|list| list.len() % 2 == 1),
        }
    }
}

/// A graph together with a total colouring and its bipartition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColouredGraph {
    pub graph: Graph,
    pub colouring: Colouring,
    pub bipartition: Bipartition,
}

impl ColouredGraph {
    /// Validates that the colouring covers exactly `E(graph)` and that the
    /// graph is bipartite.
    pub fn new(graph: Graph, colouring: Colouring) -> Result<ColouredGraph> {
        if !colouring.is_total_for(&graph) {
            return Err(Error::ColouringDomain(format!(
                "{} colours for {} edges",
                colouring.len(),
                graph.edge_count()
            )));
        }
        let bipartition = graph.bipartition()?;
        Ok(ColouredGraph {
            graph,
            colouring,
            bipartition,
        })
    }

    /// Parses the extended JSON schema carrying a `"colours"` object.
    pub fn from_json(text: &str) -> Result<ColouredGraph> {
        let doc: GraphJson =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        let graph = Graph::new(&doc.vertices, &doc.edges)?;
        let colours = doc
            .colours
            .ok_or_else(|| Error::Malformed("missing \"colours\" object".into()))?;
        let colouring = Colouring::from_json_map(&graph, &colours)?;
        ColouredGraph::new(graph, colouring)
    }

    pub fn to_json(&self) -> String {
        let doc = GraphJson {
            vertices: self.graph.vertex_names().to_vec(),
            edges: self
                .graph
                .edges()
                .iter()
                .map(|e| {
                    let (a, b) = e.endpoints();
                    (a.to_string(), b.to_string())
                })
                .collect(),
            colours: Some(self.colouring.to_json_map()),
        };
        serde_json::to_string(&doc).expect("coloured graph serialization cannot fail")
    }
}
