//! Graph generators and seeded experiment suites.

mod experiments;

pub use experiments::{
    erdos_experiment, erdos_tournament, erdos_trial, gnp_h_property, gnp_h_trial,
    tourn_edges_suite, tourn_edges_trial, ErdosSummary, ErdosTrial, ExtractionKind, GnpHSummary,
    GnpHTrial, TournEdgesTrial, TrialReport, ERDOS_PACK_CAP, GNP_H_CAP, TOURN_PAIRS,
};

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Roots;
use rand::{Rng, RngCore};
use thiserror::Error;

use crate::graph::{Digraph, Graph, OrientedGraph};
use crate::seed::Seed;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("probability {0} outside [0, 1]")]
    ProbabilityOutOfRange(f64),
    #[error("minimum semidegree {delta} outside [n/2, n-1] for n = {n}")]
    DegreeOutOfRange { n: usize, delta: usize },
    #[error("{0} must be odd")]
    NotOdd(usize),
    #[error(
        "k-partite tournaments need k >= 2 and an even positive class size, got k = {k}, m = {m}"
    )]
    KPartite { k: usize, m: usize },
    #[error("{0} is not a prime congruent to 1 mod 4")]
    NotPaleyPrime(usize),
    #[error("n = {n} exceeds the cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("shift {shift} invalid for n = {n} (zero, out of range, or repeated up to sign)")]
    BadShift { n: usize, shift: usize },
}

/// Random tournament: each pair `i < j` is oriented by one fair bit, pairs in
/// lexicographic order, 64 bits drawn per generator call.
pub fn random_tournament(n: usize, seed: Seed) -> OrientedGraph {
    let mut rng = seed.rng();
    let mut out = vec![Vec::new(); n];
    let (mut word, mut left) = (0u64, 0u32);
    for i in 0..n {
        for j in i + 1..n {
            if left == 0 {
                word = rng.next_u64();
                left = 64;
            }
            if word & 1 == 1 {
                out[i].push(j);
            } else {
                out[j].push(i);
            }
            word >>= 1;
            left -= 1;
        }
    }
    out.iter_mut().for_each(|l| l.sort_unstable());
    OrientedGraph::new(Digraph::from_out_lists(out)).expect("one arc per pair")
}

fn check_p(p: f64) -> Result<(), ModelError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(ModelError::ProbabilityOutOfRange(p))
    }
}

/// Binomial random graph: pairs `i < j` in lexicographic order, each kept with
/// probability `p`.
pub fn gnp(n: usize, p: f64, seed: Seed) -> Result<Graph, ModelError> {
    check_p(p)?;
    let mut rng = seed.rng();
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    Ok(Graph::from_sorted_adjacency(adj))
}

/// Random digraph: each ordered pair `(i, j)`, `i ≠ j`, kept with probability
/// `p`, pairs in lexicographic order.
pub fn random_digraph(n: usize, p: f64, seed: Seed) -> Result<Digraph, ModelError> {
    check_p(p)?;
    let mut rng = seed.rng();
    let out = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && rng.random_bool(p)).collect())
        .collect();
    Ok(Digraph::from_out_lists(out))
}

/// Parameters of the extremal digraph for given `n` and `δ`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExtremalConstruction {
    pub n: usize,
    pub delta: usize,
    /// `Δ`, the size of `B` and the maximum semidegree.
    pub big_delta: usize,
    /// `A = {0, …, n − Δ − 1}`, independent.
    pub a_size: usize,
    pub b_size: usize,
    /// Regular degree of the circulant on `B`.
    pub b_degree: usize,
    /// `true` when the closed form gave `Δ = δ` (only at `n = 2δ`, `δ` even)
    /// and `Δ = δ + 1` was used instead.
    pub adjusted: bool,
}

/// `⌈(n + √(n(2δ − n) + 𝟙))/2⌉` with `𝟙 = 1` iff `n ≢ δ (mod 2)`.
fn extremal_big_delta(n: usize, delta: usize) -> usize {
    let m = n * (2 * delta - n) + (n + delta) % 2;
    let s = m.sqrt();
    if s * s == m {
        (n + s).div_ceil(2)
    } else {
        (n + s) / 2 + 1
    }
}

/// Digraph with `δ⁰ = δ` and no regular spanning subdigraph of degree above
/// `f(n, δ)`: an independent set `A` of size `n − Δ`, a circulant
/// `(δ + Δ − n)`-regular digraph on `B` of size `Δ`, and every arc between
/// `A` and `B` in both directions. `δ = n − 1` gives the complete digraph.
pub fn extremal_digraph(
    n: usize,
    delta: usize,
) -> Result<(Digraph, ExtremalConstruction), ModelError> {
    if 2 * delta < n || delta >= n {
        return Err(ModelError::DegreeOutOfRange { n, delta });
    }
    if delta == n - 1 {
        return Ok((
            Digraph::complete(n),
            ExtremalConstruction {
                n,
                delta,
                big_delta: n - 1,
                a_size: 0,
                b_size: n,
                b_degree: n - 1,
                adjusted: false,
            },
        ));
    }
    let formula = extremal_big_delta(n, delta);
    let big_delta = formula.max(delta + 1);
    let a_size = n - big_delta;
    let b_degree = delta + big_delta - n;
    let mut out = vec![Vec::new(); n];
    for list in out.iter_mut().take(a_size) {
        list.extend(a_size..n);
    }
    for i in 0..big_delta {
        let list = &mut out[a_size + i];
        list.extend(0..a_size);
        list.extend((1..=b_degree).map(|s| a_size + (i + s) % big_delta));
        list.sort_unstable();
    }
    let g = Digraph::from_out_lists(out);
    Ok((
        g,
        ExtremalConstruction {
            n,
            delta,
            big_delta,
            a_size,
            b_size: big_delta,
            b_degree,
            adjusted: big_delta != formula,
        },
    ))
}

/// `i → i + j (mod n)` for `j = 1, …, (n−1)/2`.
pub fn rotational_tournament(n: usize) -> Result<OrientedGraph, ModelError> {
    if n.is_multiple_of(2) {
        return Err(ModelError::NotOdd(n));
    }
    let out = (0..n)
        .map(|i| {
            let mut l: Vec<usize> = (1..=(n - 1) / 2).map(|j| (i + j) % n).collect();
            l.sort_unstable();
            l
        })
        .collect();
    Ok(OrientedGraph::new(Digraph::from_out_lists(out)).expect("rotational tournament"))
}

/// `i → j` for all `i < j`.
pub fn transitive_tournament(n: usize) -> OrientedGraph {
    let out = (0..n).map(|i| (i + 1..n).collect()).collect();
    OrientedGraph::new(Digraph::from_out_lists(out)).expect("transitive tournament")
}

/// Regular orientation of the complete `k`-partite graph with classes of
/// even size `m`: vertex `i` of class `a` sends an arc to vertex `j` of a
/// later class `b` iff `(j − i) mod m < m/2`.
pub fn k_partite_tournament(k: usize, m: usize) -> Result<OrientedGraph, ModelError> {
    if k < 2 || m == 0 || m % 2 == 1 {
        return Err(ModelError::KPartite { k, m });
    }
    let mut out = vec![Vec::new(); k * m];
    for a in 0..k {
        for b in a + 1..k {
            for i in 0..m {
                for j in 0..m {
                    let (u, v) = (a * m + i, b * m + j);
                    if (j + m - i) % m < m / 2 {
                        out[u].push(v);
                    } else {
                        out[v].push(u);
                    }
                }
            }
        }
    }
    out.iter_mut().for_each(|l| l.sort_unstable());
    Ok(OrientedGraph::new(Digraph::from_out_lists(out)).expect("k-partite orientation"))
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Paley graph on `Z_q`: `a ~ b` iff `a − b` is a nonzero square.
pub fn paley(q: usize) -> Result<Graph, ModelError> {
    if !is_prime(q) || q % 4 != 1 {
        return Err(ModelError::NotPaleyPrime(q));
    }
    let mut square = vec![false; q];
    (1..q).for_each(|x| square[x * x % q] = true);
    let adj = (0..q)
        .map(|a| (0..q).filter(|&b| square[(a + q - b) % q]).collect())
        .collect();
    Ok(Graph::from_sorted_adjacency(adj))
}

fn check_shifts(n: usize, shifts: &[usize], directed: bool) -> Result<(), ModelError> {
    let mut seen = vec![false; n];
    for &s in shifts {
        if s == 0 || s >= n || seen[s] {
            return Err(ModelError::BadShift { n, shift: s });
        }
        seen[s] = true;
        if !directed {
            seen[n - s] = true;
        }
    }
    Ok(())
}

/// `i ~ i ± s (mod n)` for each shift `s`; `s` and `n − s` may not both occur.
pub fn circulant_graph(n: usize, shifts: &[usize]) -> Result<Graph, ModelError> {
    check_shifts(n, shifts, false)?;
    let adj = (0..n)
        .map(|i| {
            let mut l: Vec<usize> = shifts
                .iter()
                .flat_map(|&s| [(i + s) % n, (i + n - s) % n])
                .collect();
            l.sort_unstable();
            l.dedup();
            l
        })
        .collect();
    Ok(Graph::from_sorted_adjacency(adj))
}

/// `i → i + s (mod n)` for each shift `s`.
pub fn circulant_digraph(n: usize, shifts: &[usize]) -> Result<Digraph, ModelError> {
    check_shifts(n, shifts, true)?;
    let out = (0..n)
        .map(|i| {
            let mut l: Vec<usize> = shifts.iter().map(|&s| (i + s) % n).collect();
            l.sort_unstable();
            l
        })
        .collect();
    Ok(Digraph::from_out_lists(out))
}

/// The cycle `0 – 1 – … – (n−1) – 0`; `n ≥ 3`.
pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least 3 vertices");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle")
}

/// The directed cycle `0 → 1 → … → (n−1) → 0`; `n ≥ 2`.
pub fn directed_cycle(n: usize) -> Digraph {
    assert!(n >= 2, "directed cycles need at least 2 vertices");
    Digraph::from_arcs(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle")
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i – i+5`.
pub fn petersen_graph() -> Graph {
    let edges = (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (5 + i, 5 + (i + 2) % 5)]);
    Graph::from_edges(10, edges).expect("Petersen graph")
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::from_edges(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j)))).expect("K_{a,b}")
}

/// Disjoint union; vertices of `h` are shifted by `g.n()`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let k = g.n();
    Graph::from_edges(
        k + h.n(),
        g.edges().chain(h.edges().map(|(u, v)| (u + k, v + k))),
    )
    .expect("disjoint union")
}

/// Disjoint union of digraphs; vertices of `h` are shifted by `g.n()`.
pub fn disjoint_union_digraph(g: &Digraph, h: &Digraph) -> Digraph {
    let k = g.n();
    Digraph::from_arcs(
        k + h.n(),
        g.arcs().chain(h.arcs().map(|(u, v)| (u + k, v + k))),
    )
    .expect("disjoint union")
}
