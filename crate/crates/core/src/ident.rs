//! Path-based generic identifiability test and excitation-count bounds.

use std::collections::BTreeSet;

use crate::graph::VertexId;
use crate::model::ExtendedGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCheck {
    pub vertex: VertexId,
    /// Number of parameterized in-edges of the vertex.
    pub required: usize,
    /// Vertex-disjoint paths from the stimulated set to those in-neighbors.
    pub achieved: usize,
}

impl VertexCheck {
    pub fn passes(&self) -> bool {
        self.achieved == self.required
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentReport {
    pub identifiable: bool,
    /// One entry per internal vertex, ascending.
    pub per_vertex: Vec<VertexCheck>,
    pub failing_vertices: Vec<VertexId>,
}

fn vertex_check(eg: &ExtendedGraph, stimulated: &BTreeSet<VertexId>, j: VertexId) -> VertexCheck {
    let targets = eg
        .extended_in_neighbors(j)
        .expect("caller passes internal vertices");
    let achieved = if targets.is_empty() {
        0
    } else {
        eg.graph()
            .max_vertex_disjoint_paths(stimulated, &targets)
            .expect("stimulated and target vertices belong to the graph")
    };
    VertexCheck {
        vertex: j,
        required: targets.len(),
        achieved,
    }
}

fn report(eg: &ExtendedGraph, stimulated: &BTreeSet<VertexId>) -> IdentReport {
    let per_vertex: Vec<VertexCheck> = eg
        .internal_vertices()
        .map(|j| vertex_check(eg, stimulated, j))
        .collect();
    let failing_vertices: Vec<VertexId> = per_vertex
        .iter()
        .filter(|c| !c.passes())
        .map(|c| c.vertex)
        .collect();
    IdentReport {
        identifiable: failing_vertices.is_empty(),
        per_vertex,
        failing_vertices,
    }
}

/// Checks every internal vertex with the model's own stimulated set.
pub fn check_generic_identifiability(eg: &ExtendedGraph) -> IdentReport {
    report(eg, &eg.stimulated())
}

/// Same test with `trial_excited` in place of the model's excitations.
/// Noise-driven vertices stay stimulated.
pub fn check_with_excitations(
    eg: &ExtendedGraph,
    trial_excited: &BTreeSet<VertexId>,
) -> IdentReport {
    report(eg, &eg.stimulated_with(trial_excited))
}

/// True when every internal vertex of `vertices` passes the path test for
/// the given stimulated set. Non-internal vertices are skipped.
pub fn vertices_pass<I>(eg: &ExtendedGraph, stimulated: &BTreeSet<VertexId>, vertices: I) -> bool
where
    I: IntoIterator<Item = VertexId>,
{
    vertices
        .into_iter()
        .filter(|&j| eg.is_internal(j))
        .all(|j| vertex_check(eg, stimulated, j).passes())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExcitationBounds {
    pub lower: usize,
    /// Covering size minus `p`. Not clamped, so it can be negative.
    pub upper: i64,
}

/// Bounds on the number of excitation signals needed for identifiability.
///
/// The source count only includes sources that are tails of a parameterized
/// edge: an isolated vertex or a source with only known out-edges never has
/// to be excited.
pub fn excitation_bounds(eg: &ExtendedGraph, covering_size: usize) -> ExcitationBounds {
    let g = eg.graph();
    let (sources, _) = g.sources_and_sinks();
    let tails: BTreeSet<VertexId> = eg.parameterized_edges().iter().map(|e| e.tail).collect();
    let relevant_sources = sources.intersection(&tails).count();
    let max_in = eg
        .internal_vertices()
        .map(|j| eg.extended_in_neighbors(j).map_or(0, |s| s.len()))
        .max()
        .unwrap_or(0);
    ExcitationBounds {
        lower: relevant_sources.max(max_in).saturating_sub(eg.p()),
        upper: covering_size as i64 - eg.p() as i64,
    }
}
