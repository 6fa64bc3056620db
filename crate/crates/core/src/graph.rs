//! Simple graphs, digraphs and oriented graphs on the dense vertex set `0..n`.
//!
//! All three types are immutable once built. Adjacency lists are kept sorted,
//! so iteration order (and therefore every algorithm built on top) is
//! deterministic.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Deref;

use thiserror::Error;

/// Structural errors raised while building a graph from an edge list.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("not an oriented graph: both ({0}, {1}) and ({1}, {0}) present")]
    NotOriented(usize, usize),
}

fn check_pair(n: usize, u: usize, v: usize) -> Result<(), GraphError> {
    for x in [u, v] {
        if x >= n {
            return Err(GraphError::VertexOutOfRange { vertex: x, n });
        }
    }
    if u == v {
        return Err(GraphError::Loop(u));
    }
    Ok(())
}

/// Simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph, rejecting loops, duplicates (in either orientation)
    /// and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            check_pair(n, u, v)?;
            adj[u].push(v);
            adj[v].push(u);
            edge_count += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let v = w[0];
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
        }
        Ok(Graph { adj, edge_count })
    }

    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<usize>>) -> Self {
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph { adj, edge_count }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n)
            .map(|u| (0..n).filter(|&v| v != u).collect())
            .collect();
        Self::from_sorted_adjacency(adj)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// The common degree if the graph is regular (the empty graph on zero
    /// vertices counts as 0-regular).
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|l| l.len() == d).then_some(d)
    }

    pub fn degree_stats(&self) -> DegreeStats {
        DegreeStats {
            min: self.min_degree(),
            max: self.max_degree(),
            degrees: self.degrees(),
        }
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let adj = (0..n)
            .map(|u| {
                (0..n)
                    .filter(|&v| v != u && self.adj[u].binary_search(&v).is_err())
                    .collect()
            })
            .collect();
        Self::from_sorted_adjacency(adj)
    }

    /// Copy of the graph with the given edges removed; pairs that are not
    /// edges are ignored.
    pub fn without_edges<I>(&self, edges: I) -> Graph
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = self.adj.clone();
        for (u, v) in edges {
            if let Ok(i) = adj[u].binary_search(&v) {
                adj[u].remove(i);
                if let Ok(j) = adj[v].binary_search(&u) {
                    adj[v].remove(j);
                }
            }
        }
        Self::from_sorted_adjacency(adj)
    }

    /// Edge union of two graphs on the same vertex set.
    pub fn union(&self, other: &Graph) -> Graph {
        assert_eq!(self.n(), other.n(), "vertex counts differ");
        let adj = self
            .adj
            .iter()
            .zip(&other.adj)
            .map(|(a, b)| {
                let mut l: Vec<usize> = a.iter().chain(b).copied().collect();
                l.sort_unstable();
                l.dedup();
                l
            })
            .collect();
        Self::from_sorted_adjacency(adj)
    }

    /// Digraph with both arcs `uv` and `vu` for every edge `uv`.
    pub fn to_symmetric_digraph(&self) -> Digraph {
        Digraph {
            out: self.adj.clone(),
            inn: self.adj.clone(),
            arc_count: 2 * self.edge_count,
        }
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Whether `sub` is a spanning subgraph of `self`.
    pub fn contains_subgraph(&self, sub: &Graph) -> bool {
        sub.n() == self.n() && sub.edges().all(|(u, v)| self.has_edge(u, v))
    }
}

/// Digraph with at most one arc per ordered pair (2-cycles allowed).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    arc_count: usize,
}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        Digraph {
            out: vec![Vec::new(); n],
            inn: vec![Vec::new(); n],
            arc_count: 0,
        }
    }

    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        let mut arc_count = 0;
        for (u, v) in arcs {
            check_pair(n, u, v)?;
            out[u].push(v);
            inn[v].push(u);
            arc_count += 1;
        }
        for (u, list) in out.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u, w[0]));
            }
        }
        for list in &mut inn {
            list.sort_unstable();
        }
        Ok(Digraph {
            out,
            inn,
            arc_count,
        })
    }

    pub(crate) fn from_out_lists(out: Vec<Vec<usize>>) -> Self {
        let n = out.len();
        let mut inn = vec![Vec::new(); n];
        let mut arc_count = 0;
        for (u, list) in out.iter().enumerate() {
            for &v in list {
                inn[v].push(u);
                arc_count += 1;
            }
        }
        // u increases monotonically, so every in-list is already sorted.
        Digraph {
            out,
            inn,
            arc_count,
        }
    }

    pub fn complete(n: usize) -> Self {
        Self::from_out_lists(
            (0..n)
                .map(|u| (0..n).filter(|&v| v != u).collect())
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].len()
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.out[u].binary_search(&v).is_ok()
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |&v| (u, v)))
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        self.out.iter().map(Vec::len).collect()
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        self.inn.iter().map(Vec::len).collect()
    }

    pub fn min_out_degree(&self) -> usize {
        self.out.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn min_in_degree(&self) -> usize {
        self.inn.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Minimum semidegree: min over vertices of min(d⁺, d⁻).
    pub fn min_semidegree(&self) -> usize {
        self.min_out_degree().min(self.min_in_degree())
    }

    /// Maximum semidegree: max over vertices of max(d⁺, d⁻).
    pub fn max_semidegree(&self) -> usize {
        let a = self.out.iter().map(Vec::len).max().unwrap_or(0);
        let b = self.inn.iter().map(Vec::len).max().unwrap_or(0);
        a.max(b)
    }

    /// `r` if every vertex has in- and outdegree `r`.
    pub fn regular_degree(&self) -> Option<usize> {
        let r = self.out.first().map_or(0, Vec::len);
        (self.out.iter().all(|l| l.len() == r) && self.inn.iter().all(|l| l.len() == r))
            .then_some(r)
    }

    pub fn degree_stats(&self) -> SemidegreeStats {
        SemidegreeStats {
            min_out: self.min_out_degree(),
            min_in: self.min_in_degree(),
            min_semidegree: self.min_semidegree(),
            max_semidegree: self.max_semidegree(),
            out_degrees: self.out_degrees(),
            in_degrees: self.in_degrees(),
        }
    }

    /// Edge `{u, v}` present iff at least one of `uv`, `vu` is an arc.
    pub fn underlying_graph(&self) -> Graph {
        let adj = (0..self.n())
            .map(|u| {
                let mut l: Vec<usize> = self.out[u].iter().chain(&self.inn[u]).copied().collect();
                l.sort_unstable();
                l.dedup();
                l
            })
            .collect();
        Graph::from_sorted_adjacency(adj)
    }

    pub fn reversed(&self) -> Digraph {
        Digraph {
            out: self.inn.clone(),
            inn: self.out.clone(),
            arc_count: self.arc_count,
        }
    }

    /// Copy with the arc `uv` replaced by `vu`. Panics if `uv` is absent or
    /// `vu` already present.
    pub fn with_arc_reversed(&self, u: usize, v: usize) -> Digraph {
        assert!(self.has_arc(u, v) && !self.has_arc(v, u));
        let mut out = self.out.clone();
        out[u].retain(|&x| x != v);
        let pos = out[v].binary_search(&u).unwrap_err();
        out[v].insert(pos, u);
        Self::from_out_lists(out)
    }

    /// Copy with the given arcs removed; absent arcs are ignored.
    pub fn without_arcs<I>(&self, arcs: I) -> Digraph
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut out = self.out.clone();
        for (u, v) in arcs {
            if let Ok(i) = out[u].binary_search(&v) {
                out[u].remove(i);
            }
        }
        Self::from_out_lists(out)
    }

    /// Arc union of two digraphs on the same vertex set.
    pub fn union(&self, other: &Digraph) -> Digraph {
        assert_eq!(self.n(), other.n(), "vertex counts differ");
        let out = self
            .out
            .iter()
            .zip(&other.out)
            .map(|(a, b)| {
                let mut l: Vec<usize> = a.iter().chain(b).copied().collect();
                l.sort_unstable();
                l.dedup();
                l
            })
            .collect();
        Self::from_out_lists(out)
    }

    /// Whether `sub` is a spanning subdigraph of `self`.
    pub fn contains_subdigraph(&self, sub: &Digraph) -> bool {
        sub.n() == self.n() && sub.arcs().all(|(u, v)| self.has_arc(u, v))
    }

    /// At most one arc per unordered pair.
    pub fn is_oriented(&self) -> bool {
        self.arcs().all(|(u, v)| !self.has_arc(v, u))
    }

    pub fn is_tournament(&self) -> bool {
        let n = self.n();
        self.is_oriented() && self.arc_count == n * n.saturating_sub(1) / 2
    }

    /// Breadth-first distances from `s`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, s: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.out[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_strongly_connected(&self) -> bool {
        let n = self.n();
        if n <= 1 {
            return true;
        }
        self.bfs_distances(0).iter().all(Option::is_some)
            && self.reversed().bfs_distances(0).iter().all(Option::is_some)
    }
}

/// Digraph with at most one arc between any pair of vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrientedGraph(Digraph);

impl OrientedGraph {
    pub fn new(d: Digraph) -> Result<Self, GraphError> {
        if let Some((u, v)) = d.arcs().find(|&(u, v)| u < v && d.has_arc(v, u)) {
            return Err(GraphError::NotOriented(u, v));
        }
        Ok(OrientedGraph(d))
    }

    pub fn into_digraph(self) -> Digraph {
        self.0
    }

    pub fn as_digraph(&self) -> &Digraph {
        &self.0
    }
}

impl Deref for OrientedGraph {
    type Target = Digraph;

    fn deref(&self) -> &Digraph {
        &self.0
    }
}

impl TryFrom<Digraph> for OrientedGraph {
    type Error = GraphError;

    fn try_from(d: Digraph) -> Result<Self, GraphError> {
        Self::new(d)
    }
}

/// Minimum/maximum degree and the full degree sequence of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DegreeStats {
    pub min: usize,
    pub max: usize,
    pub degrees: Vec<usize>,
}

/// δ⁺, δ⁻, δ⁰, Δ⁰ and the degree sequences of a digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SemidegreeStats {
    pub min_out: usize,
    pub min_in: usize,
    pub min_semidegree: usize,
    pub max_semidegree: usize,
    pub out_degrees: Vec<usize>,
    pub in_degrees: Vec<usize>,
}

/// Either kind of graph, as read from an edge-list document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyGraph {
    Undirected(Graph),
    Directed(Digraph),
}

impl AnyGraph {
    pub fn n(&self) -> usize {
        match self {
            AnyGraph::Undirected(g) => g.n(),
            AnyGraph::Directed(d) => d.n(),
        }
    }

    pub fn is_directed(&self) -> bool {
        matches!(self, AnyGraph::Directed(_))
    }

    /// Edges (undirected, `u < v`) or arcs, lexicographically sorted.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        match self {
            AnyGraph::Undirected(g) => g.edges().collect(),
            AnyGraph::Directed(d) => d.arcs().collect(),
        }
    }
}

impl From<Graph> for AnyGraph {
    fn from(g: Graph) -> Self {
        AnyGraph::Undirected(g)
    }
}

impl From<Digraph> for AnyGraph {
    fn from(d: Digraph) -> Self {
        AnyGraph::Directed(d)
    }
}

/// JSON shape `{"n", "directed", "edges": [[u, v], ...]}` with sorted edges;
/// deserialization re-validates simplicity.
#[cfg(feature = "serde")]
mod wire {
    use super::*;
    use alloc::format;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Wire {
        n: usize,
        directed: bool,
        edges: Vec<[usize; 2]>,
    }

    impl Wire {
        fn of(g: &AnyGraph) -> Self {
            Wire {
                n: g.n(),
                directed: g.is_directed(),
                edges: g.edge_list().into_iter().map(|(u, v)| [u, v]).collect(),
            }
        }

        fn build<E: serde::de::Error>(self) -> Result<AnyGraph, E> {
            let pairs = self.edges.into_iter().map(|[u, v]| (u, v));
            let g = if self.directed {
                Digraph::from_arcs(self.n, pairs).map(AnyGraph::Directed)
            } else {
                Graph::from_edges(self.n, pairs).map(AnyGraph::Undirected)
            };
            g.map_err(|e| E::custom(format!("{e}")))
        }
    }

    impl Serialize for AnyGraph {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            Wire::of(self).serialize(s)
        }
    }

    impl<'de> Deserialize<'de> for AnyGraph {
        fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
            Wire::deserialize(d)?.build()
        }
    }

    impl Serialize for Graph {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            Wire::of(&AnyGraph::Undirected(self.clone())).serialize(s)
        }
    }

    impl<'de> Deserialize<'de> for Graph {
        fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
            match AnyGraph::deserialize(d)? {
                AnyGraph::Undirected(g) => Ok(g),
                AnyGraph::Directed(_) => Err(D::Error::custom("expected an undirected graph")),
            }
        }
    }

    impl Serialize for Digraph {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            Wire::of(&AnyGraph::Directed(self.clone())).serialize(s)
        }
    }

    impl<'de> Deserialize<'de> for Digraph {
        fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
            match AnyGraph::deserialize(d)? {
                AnyGraph::Directed(g) => Ok(g),
                AnyGraph::Undirected(_) => Err(D::Error::custom("expected a directed graph")),
            }
        }
    }

    impl Serialize for OrientedGraph {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            self.0.serialize(s)
        }
    }

    impl<'de> Deserialize<'de> for OrientedGraph {
        fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
            OrientedGraph::new(Digraph::deserialize(d)?)
                .map_err(|e| D::Error::custom(format!("{e}")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rotational5() -> Digraph {
        Digraph::from_arcs(5, (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, (i + 2) % 5)])).unwrap()
    }

    #[test]
    fn rejects_loops_duplicates_and_range() {
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(GraphError::Loop(1)));
        assert_eq!(
            Graph::from_edges(2, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Digraph::from_arcs(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert!(Digraph::from_arcs(2, [(0, 1), (1, 0)]).is_ok());
        assert_eq!(
            Digraph::from_arcs(2, [(0, 1), (0, 1)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
    }

    #[test]
    fn underlying_graph_examples() {
        let two_cycle = Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(
            two_cycle.underlying_graph(),
            Graph::from_edges(2, [(0, 1)]).unwrap()
        );
        let c5 = Digraph::from_arcs(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let u = c5.underlying_graph();
        assert_eq!(u.edge_count(), 5);
        assert_eq!(u.regular_degree(), Some(2));
        assert_eq!(Digraph::empty(4).underlying_graph(), Graph::empty(4));
    }

    #[test]
    fn degree_stats_examples() {
        let k5 = Digraph::complete(5);
        assert_eq!(k5.min_semidegree(), 4);
        assert_eq!(k5.max_semidegree(), 4);

        let t = rotational5();
        let s = t.degree_stats();
        assert_eq!((s.min_semidegree, s.min_out, s.min_in), (2, 2, 2));
        assert!(t.is_tournament());

        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let s = star.degree_stats();
        assert_eq!((s.min, s.max), (1, 3));
    }

    #[test]
    fn degree_sums_match_edge_counts() {
        let t = rotational5();
        assert_eq!(t.out_degrees().iter().sum::<usize>(), t.arc_count());
        assert_eq!(t.in_degrees().iter().sum::<usize>(), t.arc_count());
        let g = Graph::complete(6);
        assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
    }

    #[test]
    fn oriented_graph_rejects_two_cycles() {
        let two_cycle = Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(
            OrientedGraph::new(two_cycle),
            Err(GraphError::NotOriented(0, 1))
        );
        assert!(OrientedGraph::new(rotational5()).is_ok());
    }

    #[test]
    fn reversing_an_arc() {
        let d = Digraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
        let r = d.with_arc_reversed(0, 1);
        assert!(r.has_arc(1, 0) && !r.has_arc(0, 1));
        assert_eq!(r.arc_count(), 2);
    }
}
