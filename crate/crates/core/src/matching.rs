//! Maximum-cardinality matchings: Edmonds' blossom algorithm for general
//! graphs and Hopcroft–Karp for bipartite graphs.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

const NONE: usize = usize::MAX;

/// Maximum matching of the general graph given by sorted adjacency lists.
///
/// Starts from the greedy matching that pairs each vertex with its smallest
/// free neighbour, then grows it by augmenting paths (roots and neighbours
/// scanned in increasing id order), so the result is deterministic.
/// Returns `mate[v]`.
pub fn max_matching(adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    let n = adj.len();
    let mut mate = vec![NONE; n];
    for v in 0..n {
        if mate[v] == NONE {
            if let Some(&u) = adj[v].iter().find(|&&u| u != v && mate[u] == NONE) {
                mate[v] = u;
                mate[u] = v;
            }
        }
    }
    let mut search = Blossom::new(adj, mate);
    for root in 0..n {
        if search.mate[root] == NONE {
            if let Some(end) = search.find_augmenting_path(root) {
                search.augment(end);
            }
        }
    }
    search
        .mate
        .into_iter()
        .map(|m| (m != NONE).then_some(m))
        .collect()
}

/// Matched pairs `(u, v)` with `u < v`, sorted.
pub fn matching_pairs(mate: &[Option<usize>]) -> Vec<(usize, usize)> {
    mate.iter()
        .enumerate()
        .filter_map(|(u, m)| m.filter(|&v| u < v).map(|v| (u, v)))
        .collect()
}

struct Blossom<'a> {
    adj: &'a [Vec<usize>],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(adj: &'a [Vec<usize>], mate: Vec<usize>) -> Self {
        let n = adj.len();
        Blossom {
            adj,
            mate,
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_augmenting_path(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in &self.adj[v] {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }
}

/// Maximum bipartite matching; `left_adj[u]` lists right-side neighbours of
/// left vertex `u`. Returns `mate_left[u]`.
pub fn hopcroft_karp(left_adj: &[Vec<usize>], n_right: usize) -> Vec<Option<usize>> {
    let n_left = left_adj.len();
    let mut mate_l = vec![NONE; n_left];
    let mut mate_r = vec![NONE; n_right];
    let mut dist = vec![0usize; n_left];
    loop {
        // Layered BFS from free left vertices.
        let mut queue = VecDeque::new();
        for u in 0..n_left {
            if mate_l[u] == NONE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = NONE;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &left_adj[u] {
                let w = mate_r[v];
                if w == NONE {
                    found = true;
                } else if dist[w] == NONE {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }
        let mut it = vec![0usize; n_left];
        for u in 0..n_left {
            if mate_l[u] == NONE {
                hk_dfs(u, left_adj, &mut mate_l, &mut mate_r, &mut dist, &mut it);
            }
        }
    }
    mate_l
        .into_iter()
        .map(|m| (m != NONE).then_some(m))
        .collect()
}

fn hk_dfs(
    u: usize,
    adj: &[Vec<usize>],
    mate_l: &mut [usize],
    mate_r: &mut [usize],
    dist: &mut [usize],
    it: &mut [usize],
) -> bool {
    while it[u] < adj[u].len() {
        let v = adj[u][it[u]];
        it[u] += 1;
        let w = mate_r[v];
        if w == NONE || (dist[w] == dist[u] + 1 && hk_dfs(w, adj, mate_l, mate_r, dist, it)) {
            mate_l[u] = v;
            mate_r[v] = u;
            return true;
        }
    }
    dist[u] = NONE;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_matching_size(n: usize, edges: &[(usize, usize)]) -> usize {
        fn rec(i: usize, edges: &[(usize, usize)], used: &mut [bool]) -> usize {
            if i == edges.len() {
                return 0;
            }
            let mut best = rec(i + 1, edges, used);
            let (u, v) = edges[i];
            if !used[u] && !used[v] {
                used[u] = true;
                used[v] = true;
                best = best.max(1 + rec(i + 1, edges, used));
                used[u] = false;
                used[v] = false;
            }
            best
        }
        rec(0, edges, &mut vec![false; n])
    }

    fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj.iter_mut().for_each(|l| l.sort_unstable());
        adj
    }

    fn check_valid(adj: &[Vec<usize>], mate: &[Option<usize>]) {
        for (u, m) in mate.iter().enumerate() {
            if let Some(v) = *m {
                assert_eq!(mate[v], Some(u));
                assert!(adj[u].contains(&v));
            }
        }
    }

    #[test]
    fn blossom_on_odd_cycles() {
        // Two triangles joined by a path: greedy alone gets stuck.
        let edges = [
            (0, 1),
            (1, 2),
            (2, 0),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 6),
            (6, 4),
        ];
        let adj = adjacency(7, &edges);
        let mate = max_matching(&adj);
        check_valid(&adj, &mate);
        assert_eq!(matching_pairs(&mate).len(), 3);

        // Petersen graph has a perfect matching.
        let mut pe = Vec::new();
        for i in 0..5 {
            pe.push((i, (i + 1) % 5));
            pe.push((i, i + 5));
            pe.push((5 + i, 5 + (i + 2) % 5));
        }
        let adj = adjacency(10, &pe);
        let mate = max_matching(&adj);
        check_valid(&adj, &mate);
        assert_eq!(matching_pairs(&mate).len(), 5);
    }

    #[test]
    fn matches_brute_force_on_pseudo_random_graphs() {
        let mut state = 12345u64;
        for _ in 0..60 {
            let n = 9;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    state = state
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    if (state >> 33).is_multiple_of(3) {
                        edges.push((u, v));
                    }
                }
            }
            let adj = adjacency(n, &edges);
            let mate = max_matching(&adj);
            check_valid(&adj, &mate);
            assert_eq!(
                matching_pairs(&mate).len(),
                brute_force_matching_size(n, &edges)
            );
        }
    }

    #[test]
    fn hopcroft_karp_regular_bipartite() {
        // 3-regular bipartite circulant: u -> u, u+1, u+3 (mod 7).
        let adj: Vec<Vec<usize>> = (0..7).map(|u| vec![u, (u + 1) % 7, (u + 3) % 7]).collect();
        let mate = hopcroft_karp(&adj, 7);
        assert!(mate.iter().all(Option::is_some));
        let mut seen = [false; 7];
        for m in mate.iter().flatten() {
            assert!(!seen[*m]);
            seen[*m] = true;
        }
    }
}
