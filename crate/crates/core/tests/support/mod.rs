#![allow(dead_code)]

use std::collections::BTreeSet;

use netexcite::{DiGraph, Edge, EntryStatus, ModelSet, VertexId};
use proptest::prelude::*;

pub fn set(vs: &[u32]) -> BTreeSet<VertexId> {
    vs.iter().map(|&v| VertexId(v)).collect()
}

/// All ordered pairs `(a, b)` with `a != b` over `1..=n`.
pub fn pairs(n: u32) -> Vec<(u32, u32)> {
    (1..=n)
        .flat_map(|a| (1..=n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect()
}

/// A graph on `1..=n` keeping the chosen pairs, at most `max_edges` of them.
pub fn build_graph(n: u32, keep: &[bool], max_edges: usize) -> DiGraph {
    let edges = pairs(n)
        .into_iter()
        .zip(keep)
        .filter(|(_, &k)| k)
        .take(max_edges)
        .map(|((a, b), _)| Edge::new(a, b));
    DiGraph::from_parts(1..=n, edges).unwrap()
}

/// Random simple digraphs with up to `max_n` vertices and `max_edges` edges.
pub fn graphs(max_n: u32, max_edges: usize) -> impl Strategy<Value = DiGraph> {
    (2..=max_n).prop_flat_map(move |n| {
        let m = (n * (n - 1)) as usize;
        proptest::collection::vec(proptest::bool::weighted(0.35), m)
            .prop_map(move |keep| build_graph(n, &keep, max_edges))
    })
}

/// Random vertex subsets of `1..=n`.
pub fn subset(n: u32, mask: u32) -> BTreeSet<VertexId> {
    (1..=n)
        .filter(|v| mask & (1 << (v - 1)) != 0)
        .map(VertexId)
        .collect()
}

#[derive(Clone, Debug)]
pub struct NoiseSpec {
    pub known_row: Option<u32>,
    pub rows: Vec<u32>,
}

/// Builds a model: the graph's edges become modules (every `known_every`-th
/// one known when nonzero), noise columns as given. Returns `None` if the
/// noise pattern breaks the row/column rule.
pub fn build_model(g: &DiGraph, known_every: usize, noise: &[NoiseSpec]) -> Option<ModelSet> {
    let n = g.vertex_count();
    let mut m = ModelSet::new(n, noise.len());
    for (k, e) in g.edges().enumerate() {
        let status = if known_every > 0 && k % known_every == known_every - 1 {
            EntryStatus::Known
        } else {
            EntryStatus::Parameterized
        };
        m.set_module(e, status).unwrap();
    }
    for (c, col) in noise.iter().enumerate() {
        match col.known_row {
            Some(r) => m.set_noise(VertexId(r), c, EntryStatus::Known).ok()?,
            None => {
                for &r in &col.rows {
                    m.set_noise(VertexId(r), c, EntryStatus::Parameterized)
                        .ok()?;
                }
            }
        }
    }
    m.validate().is_ok().then_some(m)
}

pub fn noise_specs(
    n: u32,
    max_cols: usize,
    allow_known: bool,
) -> impl Strategy<Value = Vec<NoiseSpec>> {
    let col = (
        proptest::bool::weighted(if allow_known { 0.4 } else { 0.0 }),
        1..=n,
        proptest::collection::btree_set(1..=n, 1..=2usize),
    )
        .prop_map(|(known, r, rows)| NoiseSpec {
            known_row: known.then_some(r),
            rows: rows.into_iter().collect(),
        });
    proptest::collection::vec(col, 0..=max_cols)
}

/// Random valid model sets.
pub fn models(
    max_n: u32,
    max_edges: usize,
    max_cols: usize,
    allow_known: bool,
) -> impl Strategy<Value = ModelSet> {
    (graphs(max_n, max_edges), 0usize..5)
        .prop_flat_map(move |(g, known_every)| {
            let n = g.vertex_count() as u32;
            (
                Just(g),
                Just(known_every),
                noise_specs(n, max_cols, allow_known),
            )
        })
        .prop_filter_map(
            "noise pattern breaks the row/column rule",
            |(g, k, noise)| build_model(&g, k, &noise),
        )
}
