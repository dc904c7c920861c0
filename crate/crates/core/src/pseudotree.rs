//! Pseudotrees, disjointness, mergeability and disjoint coverings.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::CoverError;
use crate::graph::{DiGraph, Edge, VertexId};
use crate::model::ExtendedGraph;

/// A connected edge set on at least two vertices where every vertex has at
/// most one in-edge. It contains at most one directed cycle.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pseudotree {
    vertices: BTreeSet<VertexId>,
    edges: BTreeSet<Edge>,
    roots: BTreeSet<VertexId>,
}

/// Roots of the edge set if it forms a pseudotree, `None` otherwise.
fn pseudotree_roots(edges: &BTreeSet<Edge>) -> Option<BTreeSet<VertexId>> {
    let mut pred: BTreeMap<VertexId, Option<VertexId>> = BTreeMap::new();
    for e in edges {
        pred.entry(e.tail).or_insert(None);
        match pred.entry(e.head).or_insert(None) {
            Some(_) => return None,
            slot => *slot = Some(e.tail),
        }
    }
    if pred.len() < 2 {
        return None;
    }
    let g = DiGraph::from_edges(edges.iter().copied()).ok()?;
    if !g.is_connected().ok()? {
        return None;
    }
    let sources: Vec<VertexId> = pred
        .iter()
        .filter(|(_, p)| p.is_none())
        .map(|(&v, _)| v)
        .collect();
    match sources.as_slice() {
        [root] => Some(BTreeSet::from([*root])),
        [] => {
            // Every vertex has one in-edge, so walking predecessors from any
            // vertex ends on the unique cycle.
            let mut seen = BTreeSet::new();
            let mut v = *pred.keys().next()?;
            while seen.insert(v) {
                v = pred[&v]?;
            }
            let mut cycle = BTreeSet::from([v]);
            let mut w = pred[&v]?;
            while w != v {
                cycle.insert(w);
                w = pred[&w]?;
            }
            Some(cycle)
        }
        // More than one source in a connected graph with in-degree <= 1
        // would need more edges than vertices allow.
        _ => None,
    }
}

impl Pseudotree {
    /// Builds a pseudotree from its edges, or `None` if they do not form one.
    pub fn from_edges<I: IntoIterator<Item = Edge>>(edges: I) -> Option<Self> {
        let edges: BTreeSet<Edge> = edges.into_iter().collect();
        let roots = pseudotree_roots(&edges)?;
        let vertices = edges.iter().flat_map(|e| [e.tail, e.head]).collect();
        Some(Pseudotree {
            vertices,
            edges,
            roots,
        })
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    /// Vertices with a directed path to every other vertex of the tree.
    pub fn roots(&self) -> &BTreeSet<VertexId> {
        &self.roots
    }

    /// Lowest-id root.
    pub fn root(&self) -> VertexId {
        *self.roots.iter().next().expect("a pseudotree has a root")
    }

    pub fn shares_vertex(&self, other: &Pseudotree) -> bool {
        !self.vertices.is_disjoint(&other.vertices)
    }

    fn union_edges(&self, other: &Pseudotree) -> BTreeSet<Edge> {
        self.edges.union(&other.edges).copied().collect()
    }
}

/// Checks whether the edge subset `sub` of `g` is a pseudotree, returning
/// its roots when it is.
pub fn is_pseudotree(g: &DiGraph, sub: &BTreeSet<Edge>) -> Option<BTreeSet<VertexId>> {
    if !sub.iter().all(|&e| g.contains_edge(e)) {
        return None;
    }
    pseudotree_roots(sub)
}

/// No shared edge, and no vertex has out-edges in both trees.
pub fn are_disjoint(t1: &Pseudotree, t2: &Pseudotree) -> bool {
    if !t1.edges.is_disjoint(&t2.edges) {
        return false;
    }
    let tails1: BTreeSet<VertexId> = t1.edges.iter().map(|e| e.tail).collect();
    t2.edges.iter().all(|e| !tails1.contains(&e.tail))
}

/// Whether `t1` can be merged into `t2`: they overlap, their union is a
/// pseudotree and every root of `t2` reaches all of `t1` inside the union.
pub fn is_mergeable(t1: &Pseudotree, t2: &Pseudotree) -> bool {
    if !t1.shares_vertex(t2) {
        return false;
    }
    let union = t1.union_edges(t2);
    if pseudotree_roots(&union).is_none() {
        return false;
    }
    let g = DiGraph::from_edges(union.iter().copied()).expect("pseudotree edges are simple");
    t2.roots.iter().all(|&r| {
        let reach = g.reachable_from(r).expect("root is a vertex of the union");
        t1.vertices.is_subset(&reach)
    })
}

/// An ordered family of pairwise-disjoint pseudotrees covering a target
/// edge set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Covering {
    trees: Vec<Pseudotree>,
    target_edges: BTreeSet<Edge>,
}

impl Covering {
    /// Checks pairwise disjointness and coverage of the target edges.
    pub fn new(trees: Vec<Pseudotree>, target_edges: BTreeSet<Edge>) -> Result<Self, CoverError> {
        for (a, t1) in trees.iter().enumerate() {
            for (b, t2) in trees.iter().enumerate().skip(a + 1) {
                if !are_disjoint(t1, t2) {
                    return Err(CoverError::InvalidCovering(format!(
                        "trees {} and {} are not disjoint",
                        a + 1,
                        b + 1
                    )));
                }
            }
        }
        let covered: BTreeSet<Edge> = trees.iter().flat_map(|t| t.edges.iter().copied()).collect();
        if let Some(e) = target_edges.difference(&covered).next() {
            return Err(CoverError::InvalidCovering(format!(
                "edge {e} is not covered"
            )));
        }
        Ok(Covering {
            trees,
            target_edges,
        })
    }

    /// One star per vertex with outgoing target edges, ordered by root.
    pub fn stars(target_edges: &BTreeSet<Edge>) -> Result<Self, CoverError> {
        if target_edges.is_empty() {
            return Err(CoverError::EmptyTarget);
        }
        let mut by_tail: BTreeMap<VertexId, Vec<Edge>> = BTreeMap::new();
        for &e in target_edges {
            by_tail.entry(e.tail).or_default().push(e);
        }
        let trees = by_tail
            .into_values()
            .map(|es| Pseudotree::from_edges(es).expect("a star is a pseudotree"))
            .collect();
        Ok(Covering {
            trees,
            target_edges: target_edges.clone(),
        })
    }

    pub fn trees(&self) -> &[Pseudotree] {
        &self.trees
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn target_edges(&self) -> &BTreeSet<Edge> {
        &self.target_edges
    }

    /// Checks the covering against a host graph: every tree edge must be a
    /// host edge.
    pub fn validate(&self, host: &DiGraph) -> Result<(), CoverError> {
        for (k, t) in self.trees.iter().enumerate() {
            if let Some(e) = t.edges.iter().find(|&&e| !host.contains_edge(e)) {
                return Err(CoverError::InvalidCovering(format!(
                    "tree {} uses edge {e} missing from the host graph",
                    k + 1
                )));
            }
        }
        Covering::new(self.trees.clone(), self.target_edges.clone()).map(|_| ())
    }

    /// The same covering with every edge reversed. Trees that stop being
    /// pseudotrees are reported as an error.
    pub fn reversed(&self) -> Result<Covering, CoverError> {
        let trees = self
            .trees
            .iter()
            .enumerate()
            .map(|(k, t)| {
                Pseudotree::from_edges(t.edges.iter().map(|e| e.reversed())).ok_or_else(|| {
                    CoverError::InvalidCovering(format!(
                        "reversed tree {} is not a pseudotree",
                        k + 1
                    ))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let target = self.target_edges.iter().map(|e| e.reversed()).collect();
        Covering::new(trees, target)
    }
}

/// The star covering of the extended graph's parameterized edges.
pub fn initial_covering(eg: &ExtendedGraph) -> Result<Covering, CoverError> {
    Covering::stars(eg.parameterized_edges())
}

/// Merges tree `i` into tree `j` (0-based). Tree `j` becomes the union with
/// recomputed roots and tree `i` is removed, so later indices shift down.
pub fn merge_trees(c: &Covering, i: usize, j: usize) -> Result<Covering, CoverError> {
    let len = c.trees.len();
    for index in [i, j] {
        if index >= len {
            return Err(CoverError::Index { index, len });
        }
    }
    if i == j || !is_mergeable(&c.trees[i], &c.trees[j]) {
        return Err(CoverError::NotMergeable { from: i, into: j });
    }
    let merged = Pseudotree::from_edges(c.trees[i].union_edges(&c.trees[j]))
        .expect("mergeable trees form a pseudotree");
    let mut trees = c.trees.clone();
    trees[j] = merged;
    trees.remove(i);
    Ok(Covering {
        trees,
        target_edges: c.target_edges.clone(),
    })
}
