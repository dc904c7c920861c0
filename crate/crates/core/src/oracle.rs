//! Exhaustive reference implementations for cross-checking on small graphs.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::OracleError;
use crate::graph::{DiGraph, Edge, VertexId};
use crate::model::ExtendedGraph;
use crate::pseudotree::{Covering, Pseudotree};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub max_nodes_explored: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_vertices: 7,
            max_edges: 12,
            max_nodes_explored: 5_000_000,
        }
    }
}

impl OracleBudget {
    fn admit(&self, vertices: usize, edges: usize) -> Result<(), OracleError> {
        if vertices > self.max_vertices {
            return Err(OracleError::BudgetExceeded(format!(
                "{vertices} vertices exceed the limit of {}",
                self.max_vertices
            )));
        }
        if edges > self.max_edges {
            return Err(OracleError::BudgetExceeded(format!(
                "{edges} edges exceed the limit of {}",
                self.max_edges
            )));
        }
        Ok(())
    }
}

struct Counter {
    explored: u64,
    cap: u64,
}

impl Counter {
    fn tick(&mut self) -> Result<(), OracleError> {
        self.explored += 1;
        if self.explored > self.cap {
            return Err(OracleError::BudgetExceeded(format!(
                "search explored more than {} nodes",
                self.cap
            )));
        }
        Ok(())
    }
}

/// Maximum number of vertex-disjoint paths from `from` to `to`, found by
/// listing every simple path and searching for the largest disjoint family.
pub fn brute_disjoint_paths(
    g: &DiGraph,
    from: &BTreeSet<VertexId>,
    to: &BTreeSet<VertexId>,
    budget: &OracleBudget,
) -> Result<usize, OracleError> {
    budget.admit(g.vertex_count(), g.edge_count())?;
    for &v in from.iter().chain(to) {
        g.out_neighbors(v)?;
    }
    let index: BTreeMap<VertexId, u32> = g.vertices().zip(0..).collect();
    let mut counter = Counter {
        explored: 0,
        cap: budget.max_nodes_explored,
    };

    // Each path is stored as the bitmask of the vertices it uses.
    let mut paths: Vec<u64> = Vec::new();
    for &u in from {
        let mut stack = vec![(u, 1u64 << index[&u])];
        while let Some((v, used)) = stack.pop() {
            counter.tick()?;
            if to.contains(&v) {
                paths.push(used);
            }
            for &w in g.out_neighbors(v)? {
                let bit = 1u64 << index[&w];
                if used & bit == 0 {
                    stack.push((w, used | bit));
                }
            }
        }
    }
    paths.sort_unstable();
    paths.dedup();

    fn pack(
        paths: &[u64],
        used: u64,
        count: usize,
        best: &mut usize,
        counter: &mut Counter,
    ) -> Result<(), OracleError> {
        counter.tick()?;
        *best = (*best).max(count);
        if count + paths.len() <= *best {
            return Ok(());
        }
        for (k, &p) in paths.iter().enumerate() {
            if p & used == 0 {
                pack(&paths[k + 1..], used | p, count + 1, best, counter)?;
            }
        }
        Ok(())
    }

    let mut best = 0;
    pack(&paths, 0, 0, &mut best, &mut counter)?;
    Ok(best)
}

/// Exact minimum number of disjoint pseudotrees covering `target`, with one
/// optimal covering as witness.
///
/// A vertex's out-edges in the target always end up in a single tree, so the
/// search assigns each such out-edge block a tree label and checks that
/// every label class is a pseudotree.
pub fn brute_min_covering(
    g: &DiGraph,
    target: &BTreeSet<Edge>,
    budget: &OracleBudget,
) -> Result<(usize, Covering), OracleError> {
    budget.admit(g.vertex_count(), target.len())?;
    if let Some(&e) = target.iter().find(|&&e| !g.contains_edge(e)) {
        return Err(OracleError::EdgeNotInGraph(e));
    }
    if target.is_empty() {
        return Ok((
            0,
            Covering::new(Vec::new(), BTreeSet::new()).expect("empty covering"),
        ));
    }
    let mut blocks: BTreeMap<VertexId, Vec<Edge>> = BTreeMap::new();
    for &e in target {
        blocks.entry(e.tail).or_default().push(e);
    }
    let blocks: Vec<Vec<Edge>> = blocks.into_values().collect();

    struct Search<'a> {
        blocks: &'a [Vec<Edge>],
        labels: Vec<usize>,
        // heads already given an in-edge, per label
        heads: Vec<BTreeSet<VertexId>>,
        best: Option<(usize, Vec<usize>)>,
        counter: Counter,
    }

    impl Search<'_> {
        fn classes(&self, used: usize) -> Option<Vec<Pseudotree>> {
            (0..used)
                .map(|l| {
                    Pseudotree::from_edges(
                        self.blocks
                            .iter()
                            .zip(&self.labels)
                            .filter(|(_, &bl)| bl == l)
                            .flat_map(|(b, _)| b.iter().copied()),
                    )
                })
                .collect()
        }

        fn run(&mut self, k: usize, used: usize) -> Result<(), OracleError> {
            self.counter.tick()?;
            if self.best.as_ref().is_some_and(|(b, _)| used >= *b) {
                return Ok(());
            }
            if k == self.blocks.len() {
                if self.classes(used).is_some() {
                    self.best = Some((used, self.labels.clone()));
                }
                return Ok(());
            }
            // New labels are opened in order, so label sets are never
            // explored twice under a permutation.
            for l in 0..=used {
                if l == self.heads.len() {
                    self.heads.push(BTreeSet::new());
                }
                let clash = self.blocks[k]
                    .iter()
                    .any(|e| self.heads[l].contains(&e.head));
                if clash {
                    continue;
                }
                for e in &self.blocks[k] {
                    self.heads[l].insert(e.head);
                }
                self.labels.push(l);
                self.run(k + 1, used.max(l + 1))?;
                self.labels.pop();
                for e in &self.blocks[k] {
                    self.heads[l].remove(&e.head);
                }
            }
            Ok(())
        }
    }

    let mut search = Search {
        blocks: &blocks,
        labels: Vec::new(),
        heads: Vec::new(),
        best: None,
        counter: Counter {
            explored: 0,
            cap: budget.max_nodes_explored,
        },
    };
    search.run(0, 0)?;
    let (kappa, labels) = search
        .best
        .take()
        .expect("the star covering is always found");
    search.labels = labels;
    let trees = search.classes(kappa).expect("best assignment is valid");
    let covering = Covering::new(trees, target.clone())
        .expect("label classes partition the target into disjoint trees");
    Ok((kappa, covering))
}

/// The path test for every internal vertex, using exhaustive path counting.
pub fn brute_identifiability(
    eg: &ExtendedGraph,
    budget: &OracleBudget,
) -> Result<bool, OracleError> {
    let stimulated = eg.stimulated();
    for j in eg.internal_vertices() {
        let targets = eg.extended_in_neighbors(j).expect("internal vertex");
        if targets.is_empty() {
            continue;
        }
        if brute_disjoint_paths(eg.graph(), &stimulated, &targets, budget)? != targets.len() {
            return Ok(false);
        }
    }
    Ok(true)
}
