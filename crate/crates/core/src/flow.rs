//! Dinic's max-flow with integral capacities.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

#[derive(Debug, Clone)]
struct Edge {
    to: usize,
    cap: u64,
}

#[derive(Debug, Clone)]
pub(crate) struct FlowNetwork {
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
    level: Vec<i64>,
    iter: Vec<usize>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            edges: Vec::new(),
            adj: vec![Vec::new(); nodes],
            level: vec![-1; nodes],
            iter: vec![0; nodes],
        }
    }

    /// Adds `from → to` with capacity `cap`; returns the edge id.
    pub fn add_edge(&mut self, from: usize, to: usize, cap: u64) -> usize {
        let id = self.edges.len();
        self.edges.push(Edge { to, cap });
        self.adj[from].push(id);
        self.edges.push(Edge { to: from, cap: 0 });
        self.adj[to].push(id + 1);
        id
    }

    /// Flow currently carried by edge `id`.
    pub fn flow_on(&self, id: usize) -> u64 {
        self.edges[id ^ 1].cap
    }

    fn bfs(&mut self, s: usize) {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &id in &self.adj[u] {
                let e = &self.edges[id];
                if e.cap > 0 && self.level[e.to] < 0 {
                    self.level[e.to] = self.level[u] + 1;
                    queue.push_back(e.to);
                }
            }
        }
    }

    fn dfs(&mut self, u: usize, t: usize, limit: u64) -> u64 {
        if u == t {
            return limit;
        }
        while self.iter[u] < self.adj[u].len() {
            let id = self.adj[u][self.iter[u]];
            let (to, cap) = (self.edges[id].to, self.edges[id].cap);
            if cap > 0 && self.level[to] == self.level[u] + 1 {
                let pushed = self.dfs(to, t, limit.min(cap));
                if pushed > 0 {
                    self.edges[id].cap -= pushed;
                    self.edges[id ^ 1].cap += pushed;
                    return pushed;
                }
            }
            self.iter[u] += 1;
        }
        0
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let mut total = 0;
        loop {
            self.bfs(s);
            if self.level[t] < 0 {
                return total;
            }
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let f = self.dfs(s, t, u64::MAX);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
    }

    /// Nodes reachable from `s` in the residual network (source side of a
    /// minimum cut once `max_flow` has run).
    pub fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &id in &self.adj[u] {
                let e = &self.edges[id];
                if e.cap > 0 && !seen[e.to] {
                    seen[e.to] = true;
                    queue.push_back(e.to);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_network() {
        // s=0, t=3; two disjoint paths of capacity 2 and 3 plus a cross edge.
        let mut net = FlowNetwork::new(4);
        net.add_edge(0, 1, 2);
        net.add_edge(0, 2, 3);
        net.add_edge(1, 3, 3);
        net.add_edge(2, 3, 2);
        net.add_edge(2, 1, 5);
        assert_eq!(net.max_flow(0, 3), 5);
        let side = net.residual_reachable(0);
        assert!(side[0] && !side[3]);
    }
}
