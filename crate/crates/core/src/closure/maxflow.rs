//! Dinic's maximum flow on real capacities, with min-cut extraction.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Edge {
    to: usize,
    cap: f64,
}

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    adj: Vec<Vec<usize>>,
    edges: Vec<Edge>,
    eps: f64,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            adj: vec![Vec::new(); nodes],
            edges: Vec::new(),
            eps: 1e-12,
        }
    }

    /// Residual capacities at or below `eps` count as saturated.
    pub fn set_eps(&mut self, eps: f64) {
        self.eps = eps;
    }

    pub fn add_edge(&mut self, from: usize, to: usize, cap: f64) {
        self.adj[from].push(self.edges.len());
        self.edges.push(Edge { to, cap });
        self.adj[to].push(self.edges.len());
        self.edges.push(Edge { to: from, cap: 0.0 });
    }

    fn levels(&self, s: usize) -> Vec<i64> {
        let mut level = vec![-1; self.adj.len()];
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.adj[v] {
                let edge = &self.edges[e];
                if edge.cap > self.eps && level[edge.to] < 0 {
                    level[edge.to] = level[v] + 1;
                    queue.push_back(edge.to);
                }
            }
        }
        level
    }

    fn augment(
        &mut self,
        v: usize,
        t: usize,
        pushed: f64,
        level: &[i64],
        next: &mut [usize],
    ) -> f64 {
        if v == t {
            return pushed;
        }
        while next[v] < self.adj[v].len() {
            let e = self.adj[v][next[v]];
            let (to, cap) = (self.edges[e].to, self.edges[e].cap);
            if cap > self.eps && level[to] == level[v] + 1 {
                let got = self.augment(to, t, pushed.min(cap), level, next);
                if got > 0.0 {
                    self.edges[e].cap -= got;
                    self.edges[e ^ 1].cap += got;
                    return got;
                }
            }
            next[v] += 1;
        }
        0.0
    }

    /// Total flow value from `s` to `t`.
    pub fn max_flow(&mut self, s: usize, t: usize) -> f64 {
        let mut total = 0.0;
        loop {
            let level = self.levels(s);
            if level[t] < 0 {
                return total;
            }
            let mut next = vec![0; self.adj.len()];
            loop {
                let pushed = self.augment(s, t, f64::INFINITY, &level, &mut next);
                if pushed <= 0.0 {
                    break;
                }
                total += pushed;
            }
        }
    }

    /// Nodes reachable from `s` in the residual graph (call after
    /// [`FlowNetwork::max_flow`]): the minimal min-cut source side.
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        self.levels(s).into_iter().map(|l| l >= 0).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_network() {
        let mut g = FlowNetwork::new(4);
        g.add_edge(0, 1, 3.0);
        g.add_edge(0, 2, 2.0);
        g.add_edge(1, 2, 1.0);
        g.add_edge(1, 3, 2.0);
        g.add_edge(2, 3, 3.0);
        assert_eq!(g.max_flow(0, 3), 5.0);
        let side = g.source_side(0);
        assert!(side[0] && !side[3]);
    }

    #[test]
    fn disconnected_sink() {
        let mut g = FlowNetwork::new(3);
        g.add_edge(0, 1, 1.0);
        assert_eq!(g.max_flow(0, 2), 0.0);
        assert_eq!(g.source_side(0), vec![true, true, false]);
    }
}
