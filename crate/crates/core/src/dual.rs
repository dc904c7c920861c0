//! Measurement selection when every vertex is excited and there is no
//! noise. The excitation pipeline runs on the reversed network; its trees,
//! reversed back, are anti-pseudotrees whose roots get measured.

use std::collections::BTreeSet;

use crate::allocation::{allocate, AllocationResult};
use crate::error::{AllocationError, ModelError};
use crate::graph::{DiGraph, Edge, VertexId};
use crate::merge::MergeStep;
use crate::model::{EntryStatus, ModelSet};
use crate::pseudotree::{Covering, Pseudotree};

/// A network without noise where every vertex carries an excitation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualModelSet {
    model: ModelSet,
}

impl DualModelSet {
    /// Rejects models with noise columns or structural violations. The
    /// excitations listed in `m` are irrelevant here.
    pub fn new(m: &ModelSet) -> Result<Self, ModelError> {
        if m.noise_columns() > 0 {
            return Err(ModelError::NoiseNotAllowed(m.noise_columns()));
        }
        let mut model = m.clone();
        model.set_excited(Vec::new());
        let report = model.validate();
        if !report.is_ok() {
            return Err(ModelError::Invalid(report));
        }
        Ok(DualModelSet { model })
    }

    pub fn from_graph(g: &DiGraph) -> Result<Self, ModelError> {
        DualModelSet::new(&ModelSet::from_graph(g, &[])?)
    }

    pub fn model(&self) -> &ModelSet {
        &self.model
    }

    /// The same network with every module reversed.
    pub fn reversed_model(&self) -> ModelSet {
        let mut r = ModelSet::new(self.model.size(), 0);
        for (e, s) in self.model.modules() {
            r.set_module(e.reversed(), s).expect("same vertex range");
        }
        r.set_strictly_proper(self.model.strictly_proper());
        r.set_feedthrough(
            self.model
                .feedthrough()
                .map(|f| f.iter().map(|e| e.reversed()).collect()),
        );
        r
    }

    /// All modules, known ones included.
    pub fn graph(&self) -> DiGraph {
        let mut g = DiGraph::from_parts(1..=self.model.size() as u32, []).expect("no edges");
        for (e, _) in self.model.modules() {
            g.add_edge(e).expect("modules form a simple graph");
        }
        g
    }

    /// Heads of the parameterized out-edges of `j`.
    pub fn parameterized_out_neighbors(&self, j: VertexId) -> BTreeSet<VertexId> {
        self.model
            .modules()
            .into_iter()
            .filter(|(e, s)| e.tail == j && *s == EntryStatus::Parameterized)
            .map(|(e, _)| e.head)
            .collect()
    }
}

/// Reversed pseudotree: every vertex has at most one out-edge, and every
/// vertex reaches each root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntiPseudotree {
    pub edges: BTreeSet<Edge>,
    pub roots: BTreeSet<VertexId>,
}

impl AntiPseudotree {
    fn from_tree(t: &Pseudotree) -> Self {
        AntiPseudotree {
            edges: t.edges().iter().map(|e| e.reversed()).collect(),
            roots: t.roots().clone(),
        }
    }

    /// The pseudotree obtained by reversing every edge back.
    pub fn to_pseudotree(&self) -> Option<Pseudotree> {
        Pseudotree::from_edges(self.edges.iter().map(|e| e.reversed()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasurementResult {
    pub measured: BTreeSet<VertexId>,
    pub anti_pseudotrees: Vec<AntiPseudotree>,
    pub merge_trace: Vec<MergeStep>,
    pub pruned: Vec<VertexId>,
    pub verified: bool,
    pub lower: usize,
    pub upper: usize,
}

impl MeasurementResult {
    /// Maps the anti-pseudotrees back to a pseudotree covering of the
    /// reversed network.
    pub fn reversed_covering(&self) -> Option<Covering> {
        let trees = self
            .anti_pseudotrees
            .iter()
            .map(AntiPseudotree::to_pseudotree)
            .collect::<Option<Vec<_>>>()?;
        let target = trees
            .iter()
            .flat_map(|t| t.edges().iter().copied())
            .collect();
        Covering::new(trees, target).ok()
    }
}

fn lower_bound(m: &DualModelSet) -> usize {
    let param: Vec<Edge> = m
        .model
        .modules()
        .into_iter()
        .filter(|(_, s)| *s == EntryStatus::Parameterized)
        .map(|(e, _)| e)
        .collect();
    let (_, sinks) = m.graph().sources_and_sinks();
    let heads: BTreeSet<VertexId> = param.iter().map(|e| e.head).collect();
    let relevant_sinks = sinks.intersection(&heads).count();
    let max_out = (1..=m.model.size() as u32)
        .map(|j| m.parameterized_out_neighbors(VertexId(j)).len())
        .max()
        .unwrap_or(0);
    relevant_sinks.max(max_out)
}

/// Picks measured vertices as the kept roots of the reversed pipeline.
pub fn select_measurements(m: &DualModelSet) -> Result<MeasurementResult, AllocationError> {
    let AllocationResult {
        excited,
        covering,
        merge_trace,
        pruned,
        verified,
        ..
    } = allocate(&m.reversed_model())?;
    Ok(MeasurementResult {
        measured: excited,
        anti_pseudotrees: covering
            .trees()
            .iter()
            .map(AntiPseudotree::from_tree)
            .collect(),
        merge_trace,
        pruned,
        verified,
        lower: lower_bound(m),
        upper: covering.len(),
    })
}

/// `(lower, upper)` on the number of measured vertices, where the upper
/// bound is the size of the heuristic anti-pseudotree covering.
pub fn measurement_bounds(m: &DualModelSet) -> Result<(usize, usize), AllocationError> {
    let r = select_measurements(m)?;
    Ok((r.lower, r.upper))
}

/// Whether every vertex's parameterized out-neighbors have disjoint paths
/// to the measured set in the original orientation.
pub fn measurements_suffice(m: &DualModelSet, measured: &BTreeSet<VertexId>) -> bool {
    let g = m.graph();
    (1..=m.model.size() as u32).map(VertexId).all(|j| {
        let outs = m.parameterized_out_neighbors(j);
        outs.is_empty()
            || g.max_vertex_disjoint_paths(&outs, measured)
                .expect("vertices belong to the graph")
                == outs.len()
    })
}
