//! Exact degree-constrained spanning subgraphs.
//!
//! Directed factors come from an integral max-flow on the bipartite doubling
//! of the digraph: a source feeds every out-copy `a ∈ A` with its out-target,
//! each arc `ab` becomes a unit edge `a → b`, and every in-copy `b ∈ B` drains
//! its in-target into the sink. A flow saturating the source is exactly a
//! spanning subdigraph with the prescribed degrees; otherwise the residual
//! graph yields a cut `(U, W)` of capacity below the target, which
//! [`CutWitness::verify`] re-checks independently of the flow.

mod matchings;
mod petersen;
mod undirected;

pub use matchings::{
    matchings_extract, matchings_hypothesis, HypothesisCheck, MatchingsOutcome, MatchingsReport,
    ReductionStep,
};
pub use petersen::petersen_2_factorization;
pub use undirected::{
    degree_constrained_subgraph, find_r_factor_graph, reg_even_undir, UNDIRECTED_FACTOR_CAP,
};

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::flow::FlowNetwork;
use crate::graph::{Digraph, Graph, OrientedGraph};
use crate::matching::hopcroft_karp;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("degree specification is unbalanced: out-targets sum to {out}, in-targets to {inn}")]
    Unbalanced { out: usize, inn: usize },
    #[error("degree specification has {got} entries, graph has {n} vertices")]
    SpecLength { got: usize, n: usize },
    #[error("undirected factor degree must be even, got {0}")]
    OddDegree(usize),
    #[error("graph has {n} vertices, above the cap of {cap} for this operation")]
    TooLarge { n: usize, cap: usize },
    #[error("input is not a tournament")]
    NotTournament,
    #[error("input must be regular of positive even degree")]
    NotEvenRegular,
    #[error(
        "hypothesis n >= s + 3t + 2t(max - min) fails: n = {n}, s = {s}, t = {t}, required {required}"
    )]
    HypothesisNotMet {
        n: usize,
        s: usize,
        t: usize,
        required: usize,
    },
    #[error("internal matching failure: {0}")]
    InternalMatchingFailure(&'static str),
}

/// Per-vertex out- and in-degree targets.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DegreeSpec {
    out: Vec<usize>,
    inn: Vec<usize>,
}

impl DegreeSpec {
    pub fn new(out: Vec<usize>, inn: Vec<usize>) -> Result<Self, FactorError> {
        if out.len() != inn.len() {
            return Err(FactorError::SpecLength {
                got: inn.len(),
                n: out.len(),
            });
        }
        let (so, si) = (out.iter().sum(), inn.iter().sum());
        if so != si {
            return Err(FactorError::Unbalanced { out: so, inn: si });
        }
        Ok(DegreeSpec { out, inn })
    }

    pub fn regular(n: usize, r: usize) -> Self {
        DegreeSpec {
            out: vec![r; n],
            inn: vec![r; n],
        }
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn out_target(&self, v: usize) -> usize {
        self.out[v]
    }

    pub fn in_target(&self, v: usize) -> usize {
        self.inn[v]
    }

    pub fn total(&self) -> usize {
        self.out.iter().sum()
    }

    /// Whether `d` meets every target exactly.
    pub fn is_met_by(&self, d: &Digraph) -> bool {
        d.n() == self.n()
            && (0..d.n()).all(|v| d.out_degree(v) == self.out[v] && d.in_degree(v) == self.inn[v])
    }
}

/// A spanning subgraph meeting its degree targets.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Factor<G> {
    pub subgraph: G,
    /// Common degree when the targets are regular.
    pub regular_degree: Option<usize>,
    pub verified: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case", tag = "kind"))]
pub enum InfeasibleReason {
    /// Some vertex has fewer out-arcs than its out-target.
    OutDegreeBelowTarget { vertex: usize },
    /// Some vertex has fewer in-arcs than its in-target.
    InDegreeBelowTarget { vertex: usize },
    /// The maximum flow fell short; the cut comes from the residual network.
    MinimumCut,
}

/// A cut of the flow network with capacity below the required flow.
///
/// `out_side` is the set `U` of out-copies whose source edge is not cut,
/// `in_side` the set `W` of in-copies whose sink edge is not cut. The
/// capacity is `Σ_{a∉U} n⁺_a + e(U, W) + Σ_{b∉W} n⁻_b`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CutWitness {
    pub out_side: Vec<usize>,
    pub in_side: Vec<usize>,
    pub capacity: u64,
    pub required: u64,
    pub reason: InfeasibleReason,
}

impl CutWitness {
    /// Recomputes the cut capacity directly from `g` and `spec`.
    pub fn capacity_in(&self, g: &Digraph, spec: &DegreeSpec) -> u64 {
        let n = g.n();
        let mut in_u = vec![false; n];
        let mut in_w = vec![false; n];
        self.out_side.iter().for_each(|&a| in_u[a] = true);
        self.in_side.iter().for_each(|&b| in_w[b] = true);
        let mut cap = 0u64;
        for v in 0..n {
            if !in_u[v] {
                cap += spec.out_target(v) as u64;
            }
            if !in_w[v] {
                cap += spec.in_target(v) as u64;
            }
        }
        cap + self
            .out_side
            .iter()
            .map(|&a| g.out_neighbors(a).iter().filter(|&&b| in_w[b]).count() as u64)
            .sum::<u64>()
    }

    /// The witness certifies infeasibility: its recomputed capacity matches
    /// and is strictly below the required flow.
    pub fn verify(&self, g: &Digraph, spec: &DegreeSpec) -> bool {
        let cap = self.capacity_in(g, spec);
        cap == self.capacity && cap < self.required && self.required == spec.total() as u64
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case", tag = "status"))]
pub enum FactorOutcome {
    Found(Factor<Digraph>),
    Infeasible(CutWitness),
}

impl FactorOutcome {
    pub fn factor(&self) -> Option<&Factor<Digraph>> {
        match self {
            FactorOutcome::Found(f) => Some(f),
            FactorOutcome::Infeasible(_) => None,
        }
    }

    pub fn into_factor(self) -> Option<Factor<Digraph>> {
        match self {
            FactorOutcome::Found(f) => Some(f),
            FactorOutcome::Infeasible(_) => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, FactorOutcome::Found(_))
    }
}

fn trivial_witness(g: &Digraph, spec: &DegreeSpec) -> Option<CutWitness> {
    let n = g.n();
    let all: Vec<usize> = (0..n).collect();
    let required = spec.total() as u64;
    for v in 0..n {
        if g.out_degree(v) < spec.out_target(v) {
            let mut w = CutWitness {
                out_side: vec![v],
                in_side: all.clone(),
                capacity: 0,
                required,
                reason: InfeasibleReason::OutDegreeBelowTarget { vertex: v },
            };
            w.capacity = w.capacity_in(g, spec);
            return Some(w);
        }
        if g.in_degree(v) < spec.in_target(v) {
            let mut w = CutWitness {
                out_side: all.clone(),
                in_side: vec![v],
                capacity: 0,
                required,
                reason: InfeasibleReason::InDegreeBelowTarget { vertex: v },
            };
            w.capacity = w.capacity_in(g, spec);
            return Some(w);
        }
    }
    None
}

/// Spanning subdigraph with `d⁺(x) = n⁺_x` and `d⁻(x) = n⁻_x` for every `x`,
/// or a cut witness proving none exists.
pub fn prescribed_subdigraph(g: &Digraph, spec: &DegreeSpec) -> Result<FactorOutcome, FactorError> {
    let n = g.n();
    if spec.n() != n {
        return Err(FactorError::SpecLength { got: spec.n(), n });
    }
    if let Some(w) = trivial_witness(g, spec) {
        return Ok(FactorOutcome::Infeasible(w));
    }
    let required = spec.total() as u64;
    // Nodes: source 0, out-copies 1..=n, in-copies n+1..=2n, sink 2n+1.
    let (source, sink) = (0, 2 * n + 1);
    let mut net = FlowNetwork::new(2 * n + 2);
    for v in 0..n {
        net.add_edge(source, 1 + v, spec.out_target(v) as u64);
        net.add_edge(1 + n + v, sink, spec.in_target(v) as u64);
    }
    let arc_edges: Vec<((usize, usize), usize)> = g
        .arcs()
        .map(|(u, v)| ((u, v), net.add_edge(1 + u, 1 + n + v, 1)))
        .collect();
    let flow = net.max_flow(source, sink);
    if flow == required {
        let chosen = arc_edges
            .iter()
            .filter(|&&(_, id)| net.flow_on(id) == 1)
            .map(|&(arc, _)| arc);
        let sub = Digraph::from_arcs(n, chosen).expect("subdigraph of a valid digraph");
        let verified = spec.is_met_by(&sub) && g.contains_subdigraph(&sub);
        let regular_degree = sub.regular_degree().filter(|_| verified);
        return Ok(FactorOutcome::Found(Factor {
            subgraph: sub,
            regular_degree,
            verified,
        }));
    }
    let side = net.residual_reachable(source);
    let out_side: Vec<usize> = (0..n).filter(|&v| side[1 + v]).collect();
    let in_side: Vec<usize> = (0..n).filter(|&v| !side[1 + n + v]).collect();
    let mut w = CutWitness {
        out_side,
        in_side,
        capacity: 0,
        required,
        reason: InfeasibleReason::MinimumCut,
    };
    w.capacity = w.capacity_in(g, spec);
    debug_assert_eq!(w.capacity, flow);
    Ok(FactorOutcome::Infeasible(w))
}

/// An `r`-factor of `g`, or a cut witness. For `r > δ⁰(g)` the witness is the
/// trivial one at a vertex of too small semidegree.
pub fn find_r_factor_digraph(g: &Digraph, r: usize) -> FactorOutcome {
    prescribed_subdigraph(g, &DegreeSpec::regular(g.n(), r)).expect("regular spec is balanced")
}

/// Largest `r` such that `g` has an `r`-factor.
///
/// Binary search is valid because an `r`-regular digraph contains an
/// `(r − 1)`-factor (remove one perfect matching of its bipartite double
/// cover; see [`peel_one_factor`]).
pub fn reg_dir(g: &Digraph) -> usize {
    let (mut lo, mut hi) = (0, g.min_semidegree());
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if find_r_factor_digraph(g, mid).is_found() {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

/// `reg_dir` together with a witnessing factor.
pub fn reg_dir_with_factor(g: &Digraph) -> (usize, Factor<Digraph>) {
    let r = reg_dir(g);
    let f = find_r_factor_digraph(g, r)
        .into_factor()
        .expect("factor of degree reg(G) exists");
    (r, f)
}

/// Removes a 1-factor from an `r`-regular digraph (`r ≥ 1`), leaving an
/// `(r − 1)`-regular one. `None` if `g` is not regular of positive degree.
pub fn peel_one_factor(g: &Digraph) -> Option<Digraph> {
    let r = g.regular_degree()?;
    if r == 0 {
        return None;
    }
    let left: Vec<Vec<usize>> = (0..g.n()).map(|u| g.out_neighbors(u).to_vec()).collect();
    let mate = hopcroft_karp(&left, g.n());
    let arcs: Option<Vec<(usize, usize)>> = mate
        .iter()
        .enumerate()
        .map(|(u, m)| m.map(|v| (u, v)))
        .collect();
    Some(g.without_arcs(arcs?))
}

/// A `δ⁰(T)`-factor of the tournament `T`, or a cut witness.
pub fn tournament_factor(t: &OrientedGraph) -> Result<FactorOutcome, FactorError> {
    if !t.is_tournament() {
        return Err(FactorError::NotTournament);
    }
    Ok(find_r_factor_digraph(t, t.min_semidegree()))
}

impl Factor<Graph> {
    pub(crate) fn regular_graph(sub: Graph, target: &[usize], parent: &Graph) -> Self {
        let verified = sub.n() == target.len()
            && (0..sub.n()).all(|v| sub.degree(v) == target[v])
            && parent.contains_subgraph(&sub);
        let regular_degree = sub.regular_degree().filter(|_| verified);
        Factor {
            subgraph: sub,
            regular_degree,
            verified,
        }
    }
}
