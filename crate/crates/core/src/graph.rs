//! Finite simple directed graphs.
//!
//! All iteration is in ascending vertex id so that every derived quantity
//! (coverings, reports, traces) is reproducible.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::GraphError;
use crate::flow::UnitFlow;

/// A vertex label. Labels are positive integers, matching the 1-based
/// numbering used for network signals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn get(self) -> u32 {
        self.0
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A directed edge `tail -> head`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub tail: VertexId,
    pub head: VertexId,
}

impl Edge {
    pub fn new(tail: impl Into<VertexId>, head: impl Into<VertexId>) -> Self {
        Edge {
            tail: tail.into(),
            head: head.into(),
        }
    }

    pub fn reversed(self) -> Self {
        Edge {
            tail: self.head,
            head: self.tail,
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.tail, self.head)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Adjacency {
    ins: BTreeSet<VertexId>,
    outs: BTreeSet<VertexId>,
}

/// A simple directed graph: no self-loops, at most one edge per ordered pair.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiGraph {
    adj: BTreeMap<VertexId, Adjacency>,
    edge_count: usize,
}

impl DiGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from an explicit vertex list and edge list.
    pub fn from_parts<V, E>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator,
        V::Item: Into<VertexId>,
        E: IntoIterator<Item = Edge>,
    {
        let mut g = DiGraph::new();
        for v in vertices {
            g.add_vertex(v);
        }
        for e in edges {
            g.add_edge(e)?;
        }
        Ok(g)
    }

    /// Builds a graph whose vertex set is exactly the endpoints of `edges`.
    pub fn from_edges<E>(edges: E) -> Result<Self, GraphError>
    where
        E: IntoIterator<Item = Edge>,
    {
        let mut g = DiGraph::new();
        for e in edges {
            g.add_vertex(e.tail);
            g.add_vertex(e.head);
            g.add_edge(e)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: impl Into<VertexId>) {
        self.adj.entry(v.into()).or_default();
    }

    pub fn add_edge(&mut self, e: Edge) -> Result<(), GraphError> {
        if e.tail == e.head {
            return Err(GraphError::SelfLoop(e.tail));
        }
        for v in [e.tail, e.head] {
            if !self.adj.contains_key(&v) {
                return Err(GraphError::UnknownVertex(v));
            }
        }
        if !self.adj.get_mut(&e.tail).unwrap().outs.insert(e.head) {
            return Err(GraphError::DuplicateEdge(e));
        }
        self.adj.get_mut(&e.head).unwrap().ins.insert(e.tail);
        self.edge_count += 1;
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.adj
            .get(&e.tail)
            .is_some_and(|a| a.outs.contains(&e.head))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    /// Edges in lexicographic `(tail, head)` order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .flat_map(|(&t, a)| a.outs.iter().map(move |&h| Edge { tail: t, head: h }))
    }

    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.edges().collect()
    }

    fn adjacency(&self, j: VertexId) -> Result<&Adjacency, GraphError> {
        self.adj.get(&j).ok_or(GraphError::UnknownVertex(j))
    }

    pub fn in_neighbors(&self, j: VertexId) -> Result<&BTreeSet<VertexId>, GraphError> {
        Ok(&self.adjacency(j)?.ins)
    }

    pub fn out_neighbors(&self, j: VertexId) -> Result<&BTreeSet<VertexId>, GraphError> {
        Ok(&self.adjacency(j)?.outs)
    }

    /// Returns `(sources, sinks)`. An isolated vertex is in both.
    pub fn sources_and_sinks(&self) -> (BTreeSet<VertexId>, BTreeSet<VertexId>) {
        let sources = self
            .adj
            .iter()
            .filter(|(_, a)| a.ins.is_empty())
            .map(|(&v, _)| v)
            .collect();
        let sinks = self
            .adj
            .iter()
            .filter(|(_, a)| a.outs.is_empty())
            .map(|(&v, _)| v)
            .collect();
        (sources, sinks)
    }

    /// Weak connectivity: the underlying undirected graph has one component.
    pub fn is_connected(&self) -> Result<bool, GraphError> {
        let start = *self.adj.keys().next().ok_or(GraphError::EmptyGraph)?;
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let a = &self.adj[&v];
            for &w in a.ins.iter().chain(a.outs.iter()) {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        Ok(seen.len() == self.adj.len())
    }

    /// Same vertices, every edge flipped.
    pub fn reverse(&self) -> DiGraph {
        let adj = self
            .adj
            .iter()
            .map(|(&v, a)| {
                (
                    v,
                    Adjacency {
                        ins: a.outs.clone(),
                        outs: a.ins.clone(),
                    },
                )
            })
            .collect();
        DiGraph {
            adj,
            edge_count: self.edge_count,
        }
    }

    /// Vertices reachable from `start` by directed paths (including `start`).
    pub fn reachable_from(&self, start: VertexId) -> Result<BTreeSet<VertexId>, GraphError> {
        self.adjacency(start)?;
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[&v].outs {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        Ok(seen)
    }

    /// Returns true if the graph has a directed cycle.
    pub fn has_cycle(&self) -> bool {
        // Kahn's algorithm: a cycle remains iff not every vertex is peeled.
        let mut indeg: BTreeMap<VertexId, usize> =
            self.adj.iter().map(|(&v, a)| (v, a.ins.len())).collect();
        let mut queue: VecDeque<VertexId> = indeg
            .iter()
            .filter(|(_, &d)| d == 0)
            .map(|(&v, _)| v)
            .collect();
        let mut peeled = 0;
        while let Some(v) = queue.pop_front() {
            peeled += 1;
            for w in &self.adj[&v].outs {
                let d = indeg.get_mut(w).unwrap();
                *d -= 1;
                if *d == 0 {
                    queue.push_back(*w);
                }
            }
        }
        peeled != self.adj.len()
    }

    /// Maximum number of pairwise vertex-disjoint directed paths from `from`
    /// to `to`. Endpoints count as path vertices; a vertex in both sets is a
    /// zero-length path that occupies only itself.
    pub fn max_vertex_disjoint_paths(
        &self,
        from: &BTreeSet<VertexId>,
        to: &BTreeSet<VertexId>,
    ) -> Result<usize, GraphError> {
        for &v in from.iter().chain(to.iter()) {
            self.adjacency(v)?;
        }
        if from.is_empty() || to.is_empty() {
            return Ok(0);
        }
        // Vertex k is split into 2k (in) and 2k+1 (out) joined by a unit arc.
        let index: BTreeMap<VertexId, usize> =
            self.adj.keys().enumerate().map(|(k, &v)| (v, k)).collect();
        let n = self.adj.len();
        let source = 2 * n;
        let sink = 2 * n + 1;
        let mut net = UnitFlow::new(2 * n + 2);
        for k in 0..n {
            net.add_arc(2 * k, 2 * k + 1);
        }
        for e in self.edges() {
            net.add_arc(2 * index[&e.tail] + 1, 2 * index[&e.head]);
        }
        for v in from {
            net.add_arc(source, 2 * index[v]);
        }
        for v in to {
            net.add_arc(2 * index[v] + 1, sink);
        }
        Ok(net.max_flow(source, sink))
    }
}
