//! Excitation allocation: excite one root per tree that white noise does not
//! already reach, then drop roots that turn out to be unnecessary.

use std::collections::BTreeSet;

use crate::error::AllocationError;
use crate::graph::VertexId;
use crate::ident::{check_with_excitations, excitation_bounds, vertices_pass, ExcitationBounds};
use crate::merge::{greedy_merge, MergeStep};
use crate::model::{ExtendedGraph, ModelSet};
use crate::pseudotree::{Covering, Pseudotree};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AllocationResult {
    pub excited: BTreeSet<VertexId>,
    pub covering: Covering,
    pub merge_trace: Vec<MergeStep>,
    /// Roots removed by pruning and kept removed, in removal order.
    pub pruned: Vec<VertexId>,
    pub verified: bool,
    pub bounds: ExcitationBounds,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PruneOutcome {
    pub excited: BTreeSet<VertexId>,
    pub pruned: Vec<VertexId>,
    pub verified: bool,
}

/// Splits off the trees with a noise-driven root. Returns the remaining
/// trees in covering order together with the noise-driven vertex set.
pub fn noise_rooted_filter(
    c: &Covering,
    eg: &ExtendedGraph,
) -> (Vec<Pseudotree>, BTreeSet<VertexId>) {
    let v_e = eg.noise_driven().clone();
    let pi_s = c
        .trees()
        .iter()
        .filter(|t| t.roots().is_disjoint(&v_e))
        .cloned()
        .collect();
    (pi_s, v_e)
}

/// The lowest-id root of every tree.
pub fn select_roots(pi_s: &[Pseudotree]) -> BTreeSet<VertexId> {
    pi_s.iter().map(Pseudotree::root).collect()
}

/// Walks the trees in order and drops a tree's root when every vertex of
/// that tree still passes the path test without it. A final full check
/// undoes the latest removals until the whole model passes.
pub fn prune(eg: &ExtendedGraph, pi_s: &[Pseudotree], r0: &BTreeSet<VertexId>) -> PruneOutcome {
    let mut excited = r0.clone();
    let mut pruned = Vec::new();
    for t in pi_s {
        let tau = t.root();
        if !excited.contains(&tau) {
            continue;
        }
        let mut trial = excited.clone();
        trial.remove(&tau);
        if vertices_pass(
            eg,
            &eg.stimulated_with(&trial),
            t.vertices().iter().copied(),
        ) {
            excited = trial;
            pruned.push(tau);
        }
    }
    let verified = loop {
        if check_with_excitations(eg, &excited).identifiable {
            break true;
        }
        match pruned.pop() {
            Some(v) => {
                excited.insert(v);
            }
            None => break false,
        }
    };
    PruneOutcome {
        excited,
        pruned,
        verified,
    }
}

/// Full pipeline on an extended graph. Its own excitations are ignored.
pub fn allocate_extended(eg: &ExtendedGraph) -> Result<AllocationResult, AllocationError> {
    if eg.parameterized_edges().is_empty() {
        let covering = Covering::new(Vec::new(), BTreeSet::new())?;
        return Ok(AllocationResult {
            excited: BTreeSet::new(),
            bounds: excitation_bounds(eg, 0),
            covering,
            merge_trace: Vec::new(),
            pruned: Vec::new(),
            verified: true,
        });
    }
    let (covering, merge_trace) = greedy_merge(eg)?;
    let (pi_s, _) = noise_rooted_filter(&covering, eg);
    let r0 = select_roots(&pi_s);
    let outcome = prune(eg, &pi_s, &r0);
    if !outcome.verified {
        let all: BTreeSet<VertexId> = eg.internal_vertices().collect();
        let report = check_with_excitations(eg, &all);
        return Err(AllocationError::Unsatisfiable(if report.identifiable {
            "exciting one root per tree does not make the model identifiable".to_string()
        } else {
            format!(
                "not identifiable even with every vertex excited; failing vertices {:?}",
                report
                    .failing_vertices
                    .iter()
                    .map(|v| v.0)
                    .collect::<Vec<_>>()
            )
        }));
    }
    Ok(AllocationResult {
        excited: outcome.excited,
        bounds: excitation_bounds(eg, covering.len()),
        covering,
        merge_trace,
        pruned: outcome.pruned,
        verified: true,
    })
}

/// Validates the model, builds its extended graph and allocates excitations.
pub fn allocate(m: &ModelSet) -> Result<AllocationResult, AllocationError> {
    let eg = m.build_extended_graph()?;
    allocate_extended(&eg)
}
