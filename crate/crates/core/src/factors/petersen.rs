use alloc::vec::Vec;

use super::FactorError;
use crate::graph::Graph;
use crate::matching::hopcroft_karp;
use crate::orient::euler_orientation;

/// Splits an `r`-regular graph (`r` even, `r ≥ 2`) into `r/2` edge-disjoint
/// 2-factors.
///
/// An Euler orientation gives `d⁺ = d⁻ = r/2`; its bipartite out/in double
/// cover is `r/2`-regular, so perfect matchings can be peeled off one at a
/// time. Each matching `u ↦ v` is a 1-factor of the digraph, i.e. a 2-factor
/// of the underlying graph.
pub fn petersen_2_factorization(g: &Graph) -> Result<Vec<Graph>, FactorError> {
    let r = match g.regular_degree() {
        Some(r) if r >= 2 && r % 2 == 0 => r,
        _ => return Err(FactorError::NotEvenRegular),
    };
    let d = euler_orientation(g)
        .map_err(|_| FactorError::NotEvenRegular)?
        .digraph;
    let n = g.n();
    let mut left: Vec<Vec<usize>> = (0..n).map(|u| d.out_neighbors(u).to_vec()).collect();
    let mut factors = Vec::with_capacity(r / 2);
    for _ in 0..r / 2 {
        let mate = hopcroft_karp(&left, n);
        let mut edges = Vec::with_capacity(n);
        for (u, m) in mate.iter().enumerate() {
            let v = m.ok_or(FactorError::InternalMatchingFailure(
                "regular bipartite double cover lacks a perfect matching",
            ))?;
            edges.push((u, v));
            left[u].retain(|&w| w != v);
        }
        factors.push(Graph::from_edges(n, edges).expect("matching arcs are distinct edges"));
    }
    Ok(factors)
}
