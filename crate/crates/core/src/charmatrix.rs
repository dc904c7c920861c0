//! The three-valued characteristic matrix of a covering and its reduction.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::error::CoverError;
use crate::graph::{DiGraph, VertexId};
use crate::model::ExtendedGraph;
use crate::pseudotree::{initial_covering, is_mergeable, Covering};

/// `One`: tree i is mergeable to tree j. `Empty`: the trees share no vertex.
/// `Zero`: anything else.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CharEntry {
    One,
    Zero,
    Empty,
}

impl CharEntry {
    pub const ALL: [CharEntry; 3] = [CharEntry::One, CharEntry::Zero, CharEntry::Empty];

    fn symbol(self) -> &'static str {
        match self {
            CharEntry::One => "1",
            CharEntry::Zero => "0",
            CharEntry::Empty => "∅",
        }
    }
}

impl fmt::Display for CharEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Combines two entries when their trees are merged. Zero absorbs, Empty is
/// neutral, One survives only against One or Empty.
pub fn odot(a: CharEntry, b: CharEntry) -> CharEntry {
    use CharEntry::*;
    match (a, b) {
        (Zero, _) | (_, Zero) => Zero,
        (Empty, Empty) => Empty,
        _ => One,
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CharMatrix {
    n: usize,
    data: Vec<CharEntry>,
}

impl CharMatrix {
    pub fn from_rows(rows: Vec<Vec<CharEntry>>) -> Result<Self, CoverError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(CoverError::Matrix(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            if row[i] != CharEntry::Zero {
                return Err(CoverError::Matrix(format!(
                    "diagonal entry {} is not 0",
                    i + 1
                )));
            }
            data.extend(row);
        }
        Ok(CharMatrix { n, data })
    }

    /// Entry `(i, j)` by direct mergeability and overlap checks on the trees.
    pub fn from_covering(c: &Covering) -> Self {
        let trees = c.trees();
        let n = trees.len();
        let mut data = Vec::with_capacity(n * n);
        for (i, ti) in trees.iter().enumerate() {
            for (j, tj) in trees.iter().enumerate() {
                data.push(if i == j {
                    CharEntry::Zero
                } else if !ti.shares_vertex(tj) {
                    CharEntry::Empty
                } else if is_mergeable(ti, tj) {
                    CharEntry::One
                } else {
                    CharEntry::Zero
                });
            }
        }
        CharMatrix { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Entry at 0-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> CharEntry {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[CharEntry] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[CharEntry]> {
        self.data.chunks(self.n.max(1)).take(self.n)
    }

    pub fn count_in_row(&self, i: usize, entry: CharEntry) -> usize {
        self.row(i).iter().filter(|&&e| e == entry).count()
    }

    pub fn has_one(&self) -> bool {
        self.data.contains(&CharEntry::One)
    }

    /// Merges row/column `i` into row/column `j` (0-based) with `odot`, then
    /// deletes row and column `i`.
    pub fn reduce(&self, i: usize, j: usize) -> Result<CharMatrix, CoverError> {
        let n = self.n;
        for index in [i, j] {
            if index >= n {
                return Err(CoverError::Index { index, len: n });
            }
        }
        if self.get(i, j) != CharEntry::One {
            return Err(CoverError::NotMergeable { from: i, into: j });
        }
        let mut full = self.data.clone();
        for k in 0..n {
            full[j * n + k] = odot(self.get(i, k), self.get(j, k));
        }
        for k in 0..n {
            full[k * n + j] = odot(self.get(k, i), full[k * n + j]);
        }
        full[j * n + j] = CharEntry::Zero;
        let data = (0..n)
            .filter(|&r| r != i)
            .flat_map(|r| {
                let full = &full;
                (0..n)
                    .filter(move |&c| c != i)
                    .map(move |c| full[r * n + c])
            })
            .collect();
        Ok(CharMatrix { n: n - 1, data })
    }
}

impl fmt::Display for CharMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<&str> = row.iter().map(|e| e.symbol()).collect();
            f.write_str(&cells.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for CharMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CharMatrix({}x{})\n{self}", self.n, self.n)
    }
}

/// Parses whitespace-separated entries, one row per line or `;`-separated.
/// `1`, `0` and `∅` (or `e`, `-`) are accepted.
impl FromStr for CharMatrix {
    type Err = CoverError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rows = s
            .split(['\n', ';'])
            .map(str::trim)
            .filter(|line| !line.is_empty())
            .map(|line| {
                line.split_whitespace()
                    .map(|tok| match tok {
                        "1" => Ok(CharEntry::One),
                        "0" => Ok(CharEntry::Zero),
                        "∅" | "e" | "-" => Ok(CharEntry::Empty),
                        other => Err(CoverError::Matrix(format!("unknown entry {other:?}"))),
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        CharMatrix::from_rows(rows)
    }
}

/// Characteristic matrix of the star covering, by direct checks.
pub fn char_matrix_initial(eg: &ExtendedGraph) -> Result<CharMatrix, CoverError> {
    Ok(CharMatrix::from_covering(&initial_covering(eg)?))
}

/// Characteristic matrix of the star covering of `g`'s edges, computed from
/// products of columns of `A + iI`, where `A[r][c] = 1` for an edge `c -> r`.
/// Columns are ordered by vertex with the sinks moved last, so the first
/// `n` columns line up with the stars.
pub fn char_matrix_from_adjacency(g: &DiGraph) -> CharMatrix {
    let (_, sinks) = g.sources_and_sinks();
    let order: Vec<VertexId> = g
        .vertices()
        .filter(|v| !sinks.contains(v))
        .chain(sinks.iter().copied())
        .collect();
    let size = order.len();
    let n = size - sinks.len();
    let a = |r: usize, c: usize| -> i64 {
        i64::from(g.contains_edge(crate::graph::Edge {
            tail: order[c],
            head: order[r],
        }))
    };
    let shifted = |r: usize, c: usize| Complex::new(a(r, c), i64::from(r == c));

    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                data.push(CharEntry::Zero);
                continue;
            }
            let aij: Complex<i64> = (0..size).map(|k| shifted(k, i) * shifted(k, j)).sum();
            data.push(if aij == Complex::new(0, 0) {
                CharEntry::Empty
            } else if aij.re == 0 && aij.im != 0 && a(i, j) != 0 {
                CharEntry::One
            } else {
                CharEntry::Zero
            });
        }
    }
    CharMatrix { n, data }
}
