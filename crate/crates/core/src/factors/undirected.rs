//! Undirected degree-constrained subgraphs via Tutte's gadget.
//!
//! Each edge `uv` becomes two gadget vertices `e_u – e_v` joined by an edge;
//! each vertex `x` gets `d(x) − target(x)` inner vertices adjacent to every
//! `e_x`. Perfect matchings of the gadget correspond to subgraphs meeting the
//! targets: an edge is kept iff its two gadget vertices are matched together.

use alloc::vec;
use alloc::vec::Vec;

use super::{Factor, FactorError};
use crate::graph::Graph;
use crate::matching::max_matching;

/// Vertex cap for undirected factor search.
pub const UNDIRECTED_FACTOR_CAP: usize = 300;

/// Spanning subgraph with `d(x) = target[x]`, or `None` if there is none.
pub fn degree_constrained_subgraph(g: &Graph, target: &[usize]) -> Option<Graph> {
    let n = g.n();
    assert_eq!(target.len(), n, "one target per vertex");
    if (0..n).any(|v| target[v] > g.degree(v)) || target.iter().sum::<usize>() % 2 == 1 {
        return None;
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    // endpoint[v] lists the gadget vertices e_v of edges at v.
    let mut endpoint = vec![Vec::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        endpoint[u].push(2 * i);
        endpoint[v].push(2 * i + 1);
    }
    let mut size = 2 * edges.len();
    let mut inner_start = vec![0; n];
    for v in 0..n {
        inner_start[v] = size;
        size += g.degree(v) - target[v];
    }
    let mut adj = vec![Vec::new(); size];
    for i in 0..edges.len() {
        adj[2 * i].push(2 * i + 1);
        adj[2 * i + 1].push(2 * i);
    }
    for v in 0..n {
        for k in inner_start[v]..inner_start[v] + g.degree(v) - target[v] {
            for &e in &endpoint[v] {
                adj[k].push(e);
                adj[e].push(k);
            }
        }
    }
    adj.iter_mut().for_each(|l| l.sort_unstable());
    let mate = max_matching(&adj);
    if mate.iter().any(Option::is_none) {
        return None;
    }
    let kept = (0..edges.len())
        .filter(|&i| mate[2 * i] == Some(2 * i + 1))
        .map(|i| edges[i]);
    Some(Graph::from_edges(n, kept).expect("subgraph of a simple graph"))
}

/// An `r`-factor of `g` for even `r`, or `None` if there is none.
pub fn find_r_factor_graph(g: &Graph, r: usize) -> Result<Option<Factor<Graph>>, FactorError> {
    if r % 2 == 1 {
        return Err(FactorError::OddDegree(r));
    }
    if g.n() > UNDIRECTED_FACTOR_CAP {
        return Err(FactorError::TooLarge {
            n: g.n(),
            cap: UNDIRECTED_FACTOR_CAP,
        });
    }
    let target = vec![r; g.n()];
    Ok(degree_constrained_subgraph(g, &target).map(|sub| Factor::regular_graph(sub, &target, g)))
}

/// Largest even `r` such that `g` has an `r`-factor.
///
/// Feasibility is monotone over even `r`: a `2k`-regular graph splits into
/// `k` edge-disjoint 2-factors.
pub fn reg_even_undir(g: &Graph) -> Result<usize, FactorError> {
    if g.n() > UNDIRECTED_FACTOR_CAP {
        return Err(FactorError::TooLarge {
            n: g.n(),
            cap: UNDIRECTED_FACTOR_CAP,
        });
    }
    // Search over k with r = 2k.
    let (mut lo, mut hi) = (0, g.min_degree() / 2);
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if find_r_factor_graph(g, 2 * mid)?.is_some() {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    Ok(2 * lo)
}
