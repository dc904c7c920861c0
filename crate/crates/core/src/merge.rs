//! The greedy two-phase merging loop over the characteristic matrix.

use crate::charmatrix::{CharEntry, CharMatrix};
use crate::error::CoverError;
use crate::model::ExtendedGraph;
use crate::pseudotree::{initial_covering, merge_trees, Covering};

/// Tree `from` merged into tree `into`, as 0-based indices into the
/// covering at the time of the merge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MergeStep {
    pub from: usize,
    pub into: usize,
}

impl MergeStep {
    pub fn one_based(self) -> (usize, usize) {
        (self.from + 1, self.into + 1)
    }
}

fn ones(m: &CharMatrix, i: usize) -> impl Iterator<Item = usize> + '_ {
    m.row(i)
        .iter()
        .enumerate()
        .filter(|(_, &e)| e == CharEntry::One)
        .map(|(j, _)| j)
}

/// Among rows accepted by `eligible`, the one with the most `Empty` entries,
/// lowest index on ties.
fn pick_row(m: &CharMatrix, eligible: impl Fn(usize) -> bool) -> Option<usize> {
    let mut best: Option<(usize, usize)> = None;
    for i in (0..m.size()).filter(|&i| eligible(i)) {
        let empties = m.count_in_row(i, CharEntry::Empty);
        if best.is_none_or(|(_, b)| empties > b) {
            best = Some((i, empties));
        }
    }
    best.map(|(i, _)| i)
}

/// Selection state of the merging loop. The first phase only takes rows
/// with a single `One`; once none is left the loop stays in the second
/// phase, which takes any row with a `One`.
#[derive(Debug, Default)]
struct Selector {
    second_phase: bool,
}

impl Selector {
    fn next(&mut self, m: &CharMatrix) -> Option<MergeStep> {
        if !self.second_phase {
            let row = pick_row(m, |i| ones(m, i).count() == 1);
            if let Some(i) = row {
                let into = ones(m, i).next().expect("row has a One");
                return Some(MergeStep { from: i, into });
            }
            self.second_phase = true;
        }
        let i = pick_row(m, |i| ones(m, i).next().is_some())?;
        let into = ones(m, i).next().expect("row has a One");
        Some(MergeStep { from: i, into })
    }
}

/// Runs the selection policy on a bare matrix using reduction only.
pub fn matrix_only_merge(m: CharMatrix) -> (CharMatrix, Vec<MergeStep>) {
    let mut m = m;
    let mut trace = Vec::new();
    let mut selector = Selector::default();
    while let Some(step) = selector.next(&m) {
        m = m
            .reduce(step.from, step.into)
            .expect("selected entry is a One");
        trace.push(step);
    }
    (m, trace)
}

/// Merges a covering until no mergeable pair remains.
///
/// The matrix is recomputed from the merged trees after every step rather
/// than reduced. A merged tree can gain a path to a third tree that closes a
/// cycle, and reduction keeps that pair at 0 although it is now mergeable
/// (see `reduction_misses_a_closed_cycle`).
pub fn merge_covering(c: Covering) -> Result<(Covering, Vec<MergeStep>), CoverError> {
    let mut c = c;
    let mut m = CharMatrix::from_covering(&c);
    let mut trace = Vec::new();
    let mut selector = Selector::default();
    while let Some(step) = selector.next(&m) {
        c = merge_trees(&c, step.from, step.into)?;
        m = CharMatrix::from_covering(&c);
        trace.push(step);
    }
    Ok((c, trace))
}

/// Star covering of the parameterized edges, then the merging loop.
pub fn greedy_merge(eg: &ExtendedGraph) -> Result<(Covering, Vec<MergeStep>), CoverError> {
    merge_covering(initial_covering(eg)?)
}

/// Replays a trace on `n` singleton groups and returns, for every final
/// tree, the original (0-based) indices merged into it.
pub fn groups_from_trace(n: usize, trace: &[MergeStep]) -> Result<Vec<Vec<usize>>, CoverError> {
    let mut groups: Vec<Vec<usize>> = (0..n).map(|k| vec![k]).collect();
    for step in trace {
        let len = groups.len();
        for index in [step.from, step.into] {
            if index >= len {
                return Err(CoverError::Index { index, len });
            }
        }
        if step.from == step.into {
            return Err(CoverError::NotMergeable {
                from: step.from,
                into: step.into,
            });
        }
        let moved = std::mem::take(&mut groups[step.from]);
        groups[step.into].extend(moved);
        groups[step.into].sort_unstable();
        groups.remove(step.from);
    }
    Ok(groups)
}
