//! Orientations of undirected graphs and degree balancing.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use thiserror::Error;

use crate::factors::{prescribed_subdigraph, DegreeSpec, FactorError, FactorOutcome};
use crate::graph::{Digraph, Graph, OrientedGraph};
use crate::seed::Seed;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OrientError {
    #[error("vertex {0} has odd degree")]
    OddDegree(usize),
    #[error("underlying graph must be regular of even degree")]
    NotEvenRegular,
    #[error("split probability {0} outside (0, 1)")]
    LambdaOutOfRange(f64),
    #[error("slice density {0} outside (0, 1/2)")]
    XiOutOfRange(f64),
    #[error("no directed path from surplus vertex {from} to any deficit vertex")]
    PathNotFound { from: usize },
    #[error(
        "slice target negative at vertex {vertex}: first part already has degree {degree} > {k}"
    )]
    SliceTargetNegative {
        vertex: usize,
        degree: usize,
        k: usize,
    },
    #[error("slice completion is infeasible (cut capacity {capacity} < {required})")]
    SliceInfeasible { capacity: u64, required: u64 },
    #[error(transparent)]
    Factor(#[from] FactorError),
}

/// An orientation of an undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OrientationResult {
    pub digraph: Digraph,
    /// `(edge, arc)` for every edge `u < v` of the source graph, in edge order.
    pub edge_arcs: Vec<((usize, usize), (usize, usize))>,
    pub out_degrees: Vec<usize>,
    pub in_degrees: Vec<usize>,
}

impl OrientationResult {
    fn from_arcs(n: usize, edge_arcs: Vec<((usize, usize), (usize, usize))>) -> Self {
        let digraph = Digraph::from_arcs(n, edge_arcs.iter().map(|&(_, a)| a))
            .expect("one arc per edge of a simple graph");
        OrientationResult {
            out_degrees: digraph.out_degrees(),
            in_degrees: digraph.in_degrees(),
            digraph,
            edge_arcs,
        }
    }

    fn from_oriented(d: Digraph) -> Self {
        let edge_arcs = d
            .arcs()
            .map(|(u, v)| ((u.min(v), u.max(v)), (u, v)))
            .collect::<Vec<_>>();
        let mut edge_arcs = edge_arcs;
        edge_arcs.sort_unstable();
        OrientationResult {
            out_degrees: d.out_degrees(),
            in_degrees: d.in_degrees(),
            digraph: d,
            edge_arcs,
        }
    }

    pub fn oriented(&self) -> OrientedGraph {
        OrientedGraph::new(self.digraph.clone()).expect("orientations are oriented graphs")
    }
}

/// Directs each edge independently and uniformly.
pub fn random_orientation(g: &Graph, seed: Seed) -> OrientationResult {
    let mut rng = seed.rng();
    let edge_arcs = g
        .edges()
        .map(|(u, v)| ((u, v), if rng.random::<bool>() { (u, v) } else { (v, u) }))
        .collect();
    OrientationResult::from_arcs(g.n(), edge_arcs)
}

/// Sends each arc to the first part with probability `lambda`, independently.
pub fn split_edges(
    d: &Digraph,
    lambda: f64,
    seed: Seed,
) -> Result<(Digraph, Digraph), OrientError> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(OrientError::LambdaOutOfRange(lambda));
    }
    let mut rng = seed.rng();
    let (mut first, mut second) = (Vec::new(), Vec::new());
    for arc in d.arcs() {
        if rng.random_bool(lambda) {
            first.push(arc);
        } else {
            second.push(arc);
        }
    }
    let n = d.n();
    Ok((
        Digraph::from_arcs(n, first).expect("subset of arcs"),
        Digraph::from_arcs(n, second).expect("subset of arcs"),
    ))
}

/// Orients every edge along an Euler circuit of its component, so that
/// `d⁺(x) = d⁻(x) = d(x)/2`.
pub fn euler_orientation(g: &Graph) -> Result<OrientationResult, OrientError> {
    let n = g.n();
    if let Some(v) = (0..n).find(|&v| g.degree(v) % 2 == 1) {
        return Err(OrientError::OddDegree(v));
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut incident = vec![Vec::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(i);
        incident[v].push(i);
    }
    let mut used = vec![false; edges.len()];
    let mut next = vec![0usize; n];
    let mut arc = vec![(0, 0); edges.len()];
    // Iterative Hierholzer: every maximal walk closes up at its start because
    // all degrees are even, so orienting along traversal balances each vertex.
    for start in 0..n {
        let mut stack = vec![start];
        while let Some(&v) = stack.last() {
            while next[v] < incident[v].len() && used[incident[v][next[v]]] {
                next[v] += 1;
            }
            if next[v] == incident[v].len() {
                stack.pop();
                continue;
            }
            let e = incident[v][next[v]];
            used[e] = true;
            let (a, b) = edges[e];
            let w = if a == v { b } else { a };
            arc[e] = (v, w);
            stack.push(w);
        }
    }
    Ok(OrientationResult::from_arcs(
        n,
        edges.into_iter().zip(arc).collect(),
    ))
}

/// `Σ_x |d⁺(x) − d⁻(x)|`.
pub fn disc(d: &Digraph) -> usize {
    (0..d.n()).map(|x| disc_vertex(d, x)).sum()
}

/// `|d⁺(x) − d⁻(x)|`.
pub fn disc_vertex(d: &Digraph, x: usize) -> usize {
    d.out_degree(x).abs_diff(d.in_degree(x))
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SwitchStep {
    /// Directed path `x = p_0 → … → p_k = y` before reversal.
    pub path: Vec<usize>,
    pub disc_before: usize,
    pub disc_after: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SwitchTrace {
    pub initial_disc: usize,
    pub steps: Vec<SwitchStep>,
    /// `path_length_histogram[k]` counts reversed paths with `k` arcs.
    pub path_length_histogram: Vec<usize>,
    /// Total number of reversed arcs.
    pub reversed_arcs: usize,
}

impl SwitchTrace {
    /// Every step lowered `disc` by at least 2.
    pub fn strictly_decreasing(&self) -> bool {
        let mut prev = self.initial_disc;
        self.steps.iter().all(|s| {
            let ok = s.disc_before == prev && s.disc_after + 2 <= s.disc_before;
            prev = s.disc_after;
            ok
        })
    }
}

/// Balances an orientation of an even-regular graph by reversing shortest
/// directed paths from surplus (`d⁺ > d⁻`) to deficit (`d⁻ > d⁺`) vertices.
///
/// The surplus vertex is the lowest id; the deficit vertex is the nearest
/// one, ties broken by lowest id. On success the result is `r/2`-regular.
pub fn path_switch_balance(
    g: &OrientedGraph,
) -> Result<(OrientationResult, SwitchTrace), OrientError> {
    let n = g.n();
    match g.underlying_graph().regular_degree() {
        Some(r) if r % 2 == 0 => {}
        _ => return Err(OrientError::NotEvenRegular),
    }
    let mut out: Vec<Vec<usize>> = (0..n).map(|v| g.out_neighbors(v).to_vec()).collect();
    let mut excess: Vec<i64> = (0..n)
        .map(|v| g.out_degree(v) as i64 - g.in_degree(v) as i64)
        .collect();
    let current_disc = |excess: &[i64]| excess.iter().map(|e| e.unsigned_abs() as usize).sum();
    let initial_disc = current_disc(&excess);
    let mut trace = SwitchTrace {
        initial_disc,
        ..SwitchTrace::default()
    };
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for _ in 0..initial_disc / 2 {
        let Some(x) = (0..n).find(|&v| excess[v] > 0) else {
            break;
        };
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[x] = 0;
        let mut queue = VecDeque::from([x]);
        let mut target: Option<usize> = None;
        while let Some(u) = queue.pop_front() {
            if let Some(y) = target {
                if dist[u] > dist[y] {
                    break;
                }
            }
            if excess[u] < 0 && target.is_none_or(|y| (dist[u], u) < (dist[y], y)) {
                target = Some(u);
            }
            for &w in &out[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        let y = target.ok_or(OrientError::PathNotFound { from: x })?;
        let mut path = vec![y];
        while *path.last().unwrap() != x {
            path.push(parent[*path.last().unwrap()]);
        }
        path.reverse();
        let before = current_disc(&excess);
        for w in path.windows(2) {
            let (a, b) = (w[0], w[1]);
            let i = out[a].binary_search(&b).expect("path arc");
            out[a].remove(i);
            let j = out[b].binary_search(&a).unwrap_err();
            out[b].insert(j, a);
        }
        excess[x] -= 2;
        excess[y] += 2;
        let after = current_disc(&excess);
        let len = path.len() - 1;
        if trace.path_length_histogram.len() <= len {
            trace.path_length_histogram.resize(len + 1, 0);
        }
        trace.path_length_histogram[len] += 1;
        trace.reversed_arcs += len;
        trace.steps.push(SwitchStep {
            path,
            disc_before: before,
            disc_after: after,
        });
    }
    let d = Digraph::from_out_lists(out);
    Ok((OrientationResult::from_oriented(d), trace))
}

/// An `r/2`-regular orientation of an `r`-regular graph (`r` even), via
/// [`euler_orientation`].
pub fn regular_orientation(g: &Graph) -> Result<OrientationResult, OrientError> {
    match g.regular_degree() {
        Some(r) if r % 2 == 0 => euler_orientation(g),
        _ => Err(OrientError::NotEvenRegular),
    }
}

/// Regular orientation built around a sparse regular slice.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SlicedOrientation {
    pub orientation: OrientationResult,
    /// The `k`-regular slice `G₁ ∪ G₂'` with `k = ⌊ξn⌋`.
    pub slice: Digraph,
    pub slice_degree: usize,
    /// Splits drawn until `G₁` fit under `k` and `G₂'` existed.
    pub split_attempts: u32,
}

/// Splits tried before [`slice_orientation`] gives up.
pub const SLICE_SPLIT_ATTEMPTS: u32 = 64;

/// `r/2`-regular orientation of an `r`-regular graph that contains a
/// `⌊ξn⌋`-regular slice of a random orientation:
///
/// 1. orient `G` at random;
/// 2. split the arcs with probability `λ = 2ξ` into `G₁` and `G₂`;
/// 3. complete `G₁` to a `⌊ξn⌋`-regular slice with a subdigraph `G₂'` of `G₂`
///    of degrees `⌊ξn⌋ − d^±_{G₁}(x)`, redrawing the split when some
///    `G₁` degree exceeds `⌊ξn⌋` or no `G₂'` exists;
/// 4. Euler-orient the remaining edges of `G` and add them.
pub fn slice_orientation(g: &Graph, xi: f64, seed: Seed) -> Result<SlicedOrientation, OrientError> {
    if !(xi > 0.0 && xi < 0.5) {
        return Err(OrientError::XiOutOfRange(xi));
    }
    let r = match g.regular_degree() {
        Some(r) if r % 2 == 0 => r,
        _ => return Err(OrientError::NotEvenRegular),
    };
    let n = g.n();
    let k = libm::floor(xi * n as f64) as usize;
    if 2 * k > r {
        return Err(OrientError::XiOutOfRange(xi));
    }
    let oriented = random_orientation(g, seed).digraph;
    let mut attempt = 0;
    let (g1, g2_prime) = loop {
        attempt += 1;
        let split_seed = seed.with_trial(seed.trial ^ 1 << 63 ^ u64::from(attempt - 1) << 32);
        match slice_split(&oriented, xi, k, split_seed) {
            Ok(parts) => break parts,
            Err(e) if attempt >= SLICE_SPLIT_ATTEMPTS => return Err(e),
            Err(OrientError::SliceTargetNegative { .. } | OrientError::SliceInfeasible { .. }) => {}
            Err(e) => return Err(e),
        }
    };
    let slice = g1.union(&g2_prime);
    let rest = g.without_edges(slice.underlying_graph().edges());
    let rest_oriented = euler_orientation(&rest)?.digraph;
    let full = slice.union(&rest_oriented);
    debug_assert_eq!(full.regular_degree(), Some(r / 2));
    Ok(SlicedOrientation {
        orientation: OrientationResult::from_oriented(full),
        slice,
        slice_degree: k,
        split_attempts: attempt,
    })
}

/// Splits off `G₁` with `λ = 2ξ` and completes it to a `k`-regular slice.
fn slice_split(
    oriented: &Digraph,
    xi: f64,
    k: usize,
    seed: Seed,
) -> Result<(Digraph, Digraph), OrientError> {
    let n = oriented.n();
    let (g1, g2) = split_edges(oriented, 2.0 * xi, seed)?;
    let mut out_t = Vec::with_capacity(n);
    let mut in_t = Vec::with_capacity(n);
    for v in 0..n {
        for degree in [g1.out_degree(v), g1.in_degree(v)] {
            if degree > k {
                return Err(OrientError::SliceTargetNegative {
                    vertex: v,
                    degree,
                    k,
                });
            }
        }
        out_t.push(k - g1.out_degree(v));
        in_t.push(k - g1.in_degree(v));
    }
    let spec = DegreeSpec::new(out_t, in_t)?;
    match prescribed_subdigraph(&g2, &spec)? {
        FactorOutcome::Found(f) => Ok((g1, f.subgraph)),
        FactorOutcome::Infeasible(w) => Err(OrientError::SliceInfeasible {
            capacity: w.capacity,
            required: w.required,
        }),
    }
}

/// Largest shortest-path distance over ordered pairs, or `None` when `d` is
/// not strongly connected.
pub fn diameter(d: &Digraph) -> Option<usize> {
    let mut best = 0;
    for s in 0..d.n() {
        for dist in d.bfs_distances(s) {
            best = best.max(dist?);
        }
    }
    Some(best)
}
