//! Integral max-flow on unit-capacity networks (Dinic).

use std::collections::VecDeque;

#[derive(Clone, Copy, Debug)]
struct Arc {
    to: usize,
    cap: u8,
    rev: usize,
}

/// A residual network where every arc has capacity one.
#[derive(Debug)]
pub(crate) struct UnitFlow {
    arcs: Vec<Vec<Arc>>,
    level: Vec<usize>,
    cursor: Vec<usize>,
}

impl UnitFlow {
    pub(crate) fn new(nodes: usize) -> Self {
        UnitFlow {
            arcs: vec![Vec::new(); nodes],
            level: vec![usize::MAX; nodes],
            cursor: vec![0; nodes],
        }
    }

    pub(crate) fn add_arc(&mut self, from: usize, to: usize) {
        let fwd = self.arcs[from].len();
        let back = self.arcs[to].len() + usize::from(from == to);
        self.arcs[from].push(Arc {
            to,
            cap: 1,
            rev: back,
        });
        self.arcs[to].push(Arc {
            to: from,
            cap: 0,
            rev: fwd,
        });
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = usize::MAX);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for a in &self.arcs[v] {
                if a.cap > 0 && self.level[a.to] == usize::MAX {
                    self.level[a.to] = self.level[v] + 1;
                    queue.push_back(a.to);
                }
            }
        }
        self.level[t] != usize::MAX
    }

    fn dfs(&mut self, v: usize, t: usize) -> bool {
        if v == t {
            return true;
        }
        while self.cursor[v] < self.arcs[v].len() {
            let Arc { to, cap, rev } = self.arcs[v][self.cursor[v]];
            if cap > 0 && self.level[to] == self.level[v] + 1 && self.dfs(to, t) {
                let i = self.cursor[v];
                self.arcs[v][i].cap -= 1;
                self.arcs[to][rev].cap += 1;
                return true;
            }
            self.cursor[v] += 1;
        }
        false
    }

    pub(crate) fn max_flow(&mut self, s: usize, t: usize) -> usize {
        let mut flow = 0;
        while self.bfs(s, t) {
            self.cursor.iter_mut().for_each(|c| *c = 0);
            while self.dfs(s, t) {
                flow += 1;
            }
        }
        flow
    }
}
