//! Structural description of a network model set and its extended graph.
//!
//! A model set is reduced to its parameterization pattern: for every module
//! `G_jl` (edge `l -> j`) and every noise-model entry `H_jc` we only record
//! whether the entry is zero, parameterized, or a known nonzero transfer.
//! Excitations are one signal per excited vertex.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{GraphError, ModelError};
use crate::graph::{DiGraph, Edge, VertexId};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EntryStatus {
    #[default]
    Zero,
    Parameterized,
    Known,
}

impl EntryStatus {
    pub fn is_nonzero(self) -> bool {
        self != EntryStatus::Zero
    }
}

/// One structural rule broken by a model set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    SelfLoopModule(VertexId),
    ExcitedOutOfRange(VertexId),
    RepeatedExcitation(VertexId),
    ExcitedNoiseDriven(VertexId),
    NoiseRowMixed(VertexId),
    NoiseColumnMixed(usize),
    EmptyNoiseColumn(usize),
    FeedthroughNotModule(Edge),
    AlgebraicLoop,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SelfLoopModule(v) => write!(f, "self-loop module at vertex {v}"),
            Violation::ExcitedOutOfRange(v) => write!(f, "excited vertex {v} is out of range"),
            Violation::RepeatedExcitation(v) => {
                write!(f, "vertex {v} is driven by more than one excitation signal")
            }
            Violation::ExcitedNoiseDriven(v) => write!(
                f,
                "vertex {v} is excited and also driven by a nonparameterized noise column"
            ),
            Violation::NoiseRowMixed(v) => write!(
                f,
                "noise row {v} breaks the row rule: a known entry must be the only nonzero"
            ),
            Violation::NoiseColumnMixed(c) => write!(
                f,
                "noise column {} breaks the column rule: a known entry must be the only nonzero",
                c + 1
            ),
            Violation::EmptyNoiseColumn(c) => write!(f, "noise column {} is all zero", c + 1),
            Violation::FeedthroughNotModule(e) => {
                write!(f, "feedthrough edge {e} is not a nonzero module")
            }
            Violation::AlgebraicLoop => {
                write!(f, "modules with direct feedthrough form an algebraic loop")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Parameterization pattern of `(G, H, R)` for a network of `size` vertices
/// and `noise_columns` white-noise channels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSet {
    size: usize,
    noise_columns: usize,
    // g[j-1][l-1] describes G_jl, i.e. the edge l -> j.
    g: Vec<Vec<EntryStatus>>,
    // h[j-1][c] describes H_jc.
    h: Vec<Vec<EntryStatus>>,
    excited: Vec<VertexId>,
    strictly_proper: bool,
    feedthrough: Option<Vec<Edge>>,
}

impl ModelSet {
    /// An all-zero pattern with no excitations and strictly proper modules.
    pub fn new(size: usize, noise_columns: usize) -> Self {
        ModelSet {
            size,
            noise_columns,
            g: vec![vec![EntryStatus::Zero; size]; size],
            h: vec![vec![EntryStatus::Zero; noise_columns]; size],
            excited: Vec::new(),
            strictly_proper: true,
            feedthrough: None,
        }
    }

    /// Builds a model set from full pattern matrices. `g` must be
    /// `size x size` and `h` must be `size x p` for a common `p`.
    pub fn from_patterns(
        g: Vec<Vec<EntryStatus>>,
        h: Vec<Vec<EntryStatus>>,
        excited: Vec<VertexId>,
    ) -> Result<Self, ModelError> {
        let size = g.len();
        if let Some(row) = g.iter().position(|r| r.len() != size) {
            return Err(ModelError::Dimension(format!(
                "G row {} has {} entries, expected {size}",
                row + 1,
                g[row].len()
            )));
        }
        if h.len() != size {
            return Err(ModelError::Dimension(format!(
                "H has {} rows, expected {size}",
                h.len()
            )));
        }
        let p = h.first().map_or(0, Vec::len);
        if let Some(row) = h.iter().position(|r| r.len() != p) {
            return Err(ModelError::Dimension(format!(
                "H row {} has {} entries, expected {p}",
                row + 1,
                h[row].len()
            )));
        }
        Ok(ModelSet {
            size,
            noise_columns: p,
            g,
            h,
            excited,
            strictly_proper: true,
            feedthrough: None,
        })
    }

    /// All edges of `graph` become parameterized modules; no noise. The graph
    /// must use the vertex labels `1..=n`.
    pub fn from_graph(graph: &DiGraph, excited: &[u32]) -> Result<Self, ModelError> {
        let size = graph.vertex_count();
        let mut m = ModelSet::new(size, 0);
        for e in graph.edges() {
            m.set_module(e, EntryStatus::Parameterized)?;
        }
        m.excited = excited.iter().map(|&v| VertexId(v)).collect();
        Ok(m)
    }

    fn check_vertex(&self, v: VertexId) -> Result<usize, ModelError> {
        let k = v.0 as usize;
        if k == 0 || k > self.size {
            return Err(ModelError::Dimension(format!(
                "vertex {v} outside 1..={}",
                self.size
            )));
        }
        Ok(k - 1)
    }

    /// Sets the status of module `G_jl` for the edge `l -> j`. Diagonal
    /// entries are accepted here and reported by [`ModelSet::validate`].
    pub fn set_module(&mut self, edge: Edge, status: EntryStatus) -> Result<(), ModelError> {
        let l = self.check_vertex(edge.tail)?;
        let j = self.check_vertex(edge.head)?;
        self.g[j][l] = status;
        Ok(())
    }

    pub fn set_noise(
        &mut self,
        row: VertexId,
        column: usize,
        status: EntryStatus,
    ) -> Result<(), ModelError> {
        let j = self.check_vertex(row)?;
        if column >= self.noise_columns {
            return Err(ModelError::Dimension(format!(
                "noise column {} outside 1..={}",
                column + 1,
                self.noise_columns
            )));
        }
        self.h[j][column] = status;
        Ok(())
    }

    pub fn set_excited(&mut self, excited: Vec<VertexId>) {
        self.excited = excited;
    }

    pub fn set_strictly_proper(&mut self, strictly_proper: bool) {
        self.strictly_proper = strictly_proper;
    }

    pub fn set_feedthrough(&mut self, edges: Option<Vec<Edge>>) {
        self.feedthrough = edges;
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn noise_columns(&self) -> usize {
        self.noise_columns
    }

    pub fn module_status(&self, edge: Edge) -> EntryStatus {
        match (self.check_vertex(edge.tail), self.check_vertex(edge.head)) {
            (Ok(l), Ok(j)) => self.g[j][l],
            _ => EntryStatus::Zero,
        }
    }

    pub fn noise_status(&self, row: VertexId, column: usize) -> EntryStatus {
        match self.check_vertex(row) {
            Ok(j) if column < self.noise_columns => self.h[j][column],
            _ => EntryStatus::Zero,
        }
    }

    /// Nonzero modules as `(edge, status)`, ordered by `(tail, head)`.
    pub fn modules(&self) -> Vec<(Edge, EntryStatus)> {
        let mut out = Vec::new();
        for l in 0..self.size {
            for j in 0..self.size {
                let s = self.g[j][l];
                if s.is_nonzero() {
                    out.push((Edge::new(l as u32 + 1, j as u32 + 1), s));
                }
            }
        }
        out
    }

    /// Nonzero entries of noise column `c` as `(row, status)`.
    pub fn noise_column(&self, c: usize) -> Vec<(VertexId, EntryStatus)> {
        (0..self.size)
            .filter(|&j| c < self.noise_columns && self.h[j][c].is_nonzero())
            .map(|j| (VertexId(j as u32 + 1), self.h[j][c]))
            .collect()
    }

    pub fn excited(&self) -> &[VertexId] {
        &self.excited
    }

    pub fn strictly_proper(&self) -> bool {
        self.strictly_proper
    }

    pub fn feedthrough(&self) -> Option<&[Edge]> {
        self.feedthrough.as_deref()
    }

    /// A noise column is nonparameterized when its nonzero entries are known
    /// transfers (for a valid model: exactly one known entry).
    fn column_is_known(&self, c: usize) -> bool {
        let col = self.noise_column(c);
        !col.is_empty() && col.iter().all(|(_, s)| *s == EntryStatus::Known)
    }

    /// Checks simpleness, single-signal excitations, the row and column rule
    /// on the noise pattern and the algebraic-loop condition.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();

        for j in 0..self.size {
            if self.g[j][j].is_nonzero() {
                violations.push(Violation::SelfLoopModule(VertexId(j as u32 + 1)));
            }
        }

        let mut seen = BTreeSet::new();
        for &v in &self.excited {
            if self.check_vertex(v).is_err() {
                violations.push(Violation::ExcitedOutOfRange(v));
            } else if !seen.insert(v) {
                violations.push(Violation::RepeatedExcitation(v));
            }
        }

        for j in 0..self.size {
            let row = &self.h[j];
            let nonzero = row.iter().filter(|s| s.is_nonzero()).count();
            if nonzero > 1 && row.contains(&EntryStatus::Known) {
                violations.push(Violation::NoiseRowMixed(VertexId(j as u32 + 1)));
            }
        }
        for c in 0..self.noise_columns {
            let col = self.noise_column(c);
            if col.is_empty() {
                violations.push(Violation::EmptyNoiseColumn(c));
            } else if col.len() > 1 && col.iter().any(|(_, s)| *s == EntryStatus::Known) {
                violations.push(Violation::NoiseColumnMixed(c));
            } else if self.column_is_known(c) && seen.contains(&col[0].0) {
                violations.push(Violation::ExcitedNoiseDriven(col[0].0));
            }
        }

        if !self.strictly_proper {
            let nonzero: BTreeSet<Edge> = self.modules().into_iter().map(|(e, _)| e).collect();
            let feed: Vec<Edge> = match &self.feedthrough {
                Some(edges) => edges.clone(),
                None => nonzero.iter().copied().collect(),
            };
            let mut loop_graph = DiGraph::from_parts(1..=self.size as u32, []).unwrap();
            let mut well_formed = true;
            for e in feed {
                if !nonzero.contains(&e) {
                    violations.push(Violation::FeedthroughNotModule(e));
                    well_formed = false;
                } else if let Err(GraphError::DuplicateEdge(_)) = loop_graph.add_edge(e) {
                    // listed twice; harmless
                }
            }
            if well_formed && loop_graph.has_cycle() {
                violations.push(Violation::AlgebraicLoop);
            }
        }

        ValidationReport { violations }
    }

    /// Builds the extended graph: one noise vertex per parameterized noise
    /// column, with edges from that vertex to every internal vertex the
    /// column parameterizes.
    pub fn build_extended_graph(&self) -> Result<ExtendedGraph, ModelError> {
        let report = self.validate();
        if !report.is_ok() {
            return Err(ModelError::Invalid(report));
        }
        let l = self.size as u32;
        let mut graph = DiGraph::from_parts(1..=l, [])?;
        let mut parameterized = BTreeSet::new();
        for (e, s) in self.modules() {
            graph.add_edge(e)?;
            if s == EntryStatus::Parameterized {
                parameterized.insert(e);
            }
        }

        let mut noise = BTreeSet::new();
        let mut noise_driven = BTreeSet::new();
        let mut p0 = 0;
        let mut next = l + 1;
        for c in 0..self.noise_columns {
            if self.column_is_known(c) {
                p0 += 1;
                for (row, _) in self.noise_column(c) {
                    noise_driven.insert(row);
                }
                continue;
            }
            let nv = VertexId(next);
            next += 1;
            graph.add_vertex(nv);
            noise.insert(nv);
            noise_driven.insert(nv);
            for (row, s) in self.noise_column(c) {
                if s == EntryStatus::Parameterized {
                    let e = Edge {
                        tail: nv,
                        head: row,
                    };
                    graph.add_edge(e)?;
                    parameterized.insert(e);
                }
            }
        }

        Ok(ExtendedGraph {
            graph,
            internal: self.size,
            noise,
            noise_driven,
            excited: self.excited.iter().copied().collect(),
            parameterized,
            p: self.noise_columns,
            p0,
        })
    }
}

/// The network graph augmented with noise vertices, together with the set
/// of stimulated vertices and the parameterized edges that must be covered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedGraph {
    graph: DiGraph,
    internal: usize,
    noise: BTreeSet<VertexId>,
    noise_driven: BTreeSet<VertexId>,
    excited: BTreeSet<VertexId>,
    parameterized: BTreeSet<Edge>,
    p: usize,
    p0: usize,
}

impl ExtendedGraph {
    pub fn graph(&self) -> &DiGraph {
        &self.graph
    }

    /// Internal vertices `1..=L`.
    pub fn internal_vertices(&self) -> impl Iterator<Item = VertexId> {
        (1..=self.internal as u32).map(VertexId)
    }

    pub fn internal_count(&self) -> usize {
        self.internal
    }

    pub fn is_internal(&self, v: VertexId) -> bool {
        (1..=self.internal as u32).contains(&v.0)
    }

    pub fn noise_vertices(&self) -> &BTreeSet<VertexId> {
        &self.noise
    }

    /// Vertices driven by white noise: the noise vertices plus the internal
    /// targets of nonparameterized noise columns. Its size is `p`.
    pub fn noise_driven(&self) -> &BTreeSet<VertexId> {
        &self.noise_driven
    }

    pub fn excited(&self) -> &BTreeSet<VertexId> {
        &self.excited
    }

    /// The stimulated set: excitations plus all noise-driven vertices.
    pub fn stimulated(&self) -> BTreeSet<VertexId> {
        self.stimulated_with(&self.excited)
    }

    /// The stimulated set obtained when `excited` replaces the model's own
    /// excitations.
    pub fn stimulated_with(&self, excited: &BTreeSet<VertexId>) -> BTreeSet<VertexId> {
        excited.union(&self.noise_driven).copied().collect()
    }

    pub fn parameterized_edges(&self) -> &BTreeSet<Edge> {
        &self.parameterized
    }

    /// Number of noise channels (columns of `H`).
    pub fn p(&self) -> usize {
        self.p
    }

    /// Number of nonparameterized noise columns.
    pub fn p0(&self) -> usize {
        self.p0
    }

    /// Tails of the parameterized in-edges of internal vertex `j`.
    pub fn extended_in_neighbors(&self, j: VertexId) -> Result<BTreeSet<VertexId>, ModelError> {
        if !self.is_internal(j) {
            return Err(ModelError::NotInternal(j));
        }
        Ok(self
            .graph
            .in_neighbors(j)?
            .iter()
            .copied()
            .filter(|&i| self.parameterized.contains(&Edge { tail: i, head: j }))
            .collect())
    }

    /// The subgraph spanned by the parameterized edges.
    pub fn target_graph(&self) -> DiGraph {
        DiGraph::from_edges(self.parameterized.iter().copied())
            .expect("parameterized edges form a simple graph")
    }
}
