//! DOT export of an extended graph with its covering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use netexcite::{Covering, Edge, ExtendedGraph};

/// Covered edges get one color per tree, spread evenly over the hue circle.
/// Edges outside the covering are drawn dotted and carry no color.
pub fn covering_dot(eg: &ExtendedGraph, c: &Covering) -> String {
    let n = c.len();
    let mut owner: BTreeMap<Edge, usize> = BTreeMap::new();
    for (k, t) in c.trees().iter().enumerate() {
        for &e in t.edges() {
            owner.insert(e, k);
        }
    }
    let noise: Vec<_> = eg.noise_vertices().iter().copied().collect();

    let mut s = String::from("digraph extended {\n  node [shape=circle];\n");
    for v in eg.graph().vertices() {
        match noise.iter().position(|&w| w == v) {
            Some(c) => writeln!(s, "  {v} [shape=box, label=\"e{}\"];", c + 1),
            None => writeln!(s, "  {v};"),
        }
        .unwrap();
    }
    for e in eg.graph().edges() {
        match owner.get(&e) {
            Some(&k) => {
                let hue = k as f64 / n as f64;
                writeln!(
                    s,
                    "  {} -> {} [color=\"{hue:.3} 0.850 0.750\", label=\"T{}\"];",
                    e.tail,
                    e.head,
                    k + 1
                )
            }
            None => writeln!(s, "  {} -> {} [style=dotted];", e.tail, e.head),
        }
        .unwrap();
    }
    s.push_str("}\n");
    s
}
