//! Seeded Monte-Carlo trials. Trial `t` of a suite draws from
//! `seed.with_trial(t)`, so suites can be split across threads and merged by
//! trial index without changing any report.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use super::{gnp, random_tournament, ModelError};
use crate::factors::{
    matchings_extract, matchings_hypothesis, tournament_factor, HypothesisCheck, MatchingsOutcome,
};
use crate::graph::OrientedGraph;
use crate::hamilton::{pack_hamilton, PackStatus, SearchBudget};
use crate::orient::regular_orientation;
use crate::seed::Seed;

/// Largest tournament order for which packings are attempted.
pub const ERDOS_PACK_CAP: usize = 13;
/// Largest `n` accepted by the G(n,p) suite.
pub const GNP_H_CAP: usize = 300;
/// Sampled `(A, B)` pairs per tournament trial.
pub const TOURN_PAIRS: usize = 200;

/// One line of a JSON-lines experiment report.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "model", rename_all = "snake_case"))]
pub enum TrialReport {
    TournEdges(TournEdgesTrial),
    Erdos(ErdosTrial),
    GnpH(GnpHTrial),
}

/// Semidegree window and edge discrepancy of one random tournament.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TournEdgesTrial {
    pub n: usize,
    pub epsilon: f64,
    pub seed: Seed,
    pub min_semidegree: usize,
    /// `n/2 − (1+ε)√(n ln n / 2)`.
    pub lower: f64,
    /// `n/2 − (1−ε)√(n ln n / 2)`.
    pub upper: f64,
    pub cond_i: bool,
    pub cond_ii: bool,
    pub pairs_checked: usize,
    /// Largest `|e(A,B) − |A||B|/2|` over the sampled pairs.
    pub max_discrepancy: f64,
    /// `9 n^{3/2}`.
    pub bound_iii: f64,
    pub cond_iii: bool,
}

fn bitset(members: impl IntoIterator<Item = usize>, words: usize) -> Vec<u64> {
    let mut s = vec![0u64; words];
    for v in members {
        s[v / 64] |= 1 << (v % 64);
    }
    s
}

/// Arcs from `a` to `b`, given out-neighbourhood bitsets.
fn arcs_between(out: &[Vec<u64>], a: &[usize], b: &[u64]) -> u64 {
    a.iter()
        .map(|&x| {
            out[x]
                .iter()
                .zip(b)
                .map(|(p, q)| (p & q).count_ones() as u64)
                .sum::<u64>()
        })
        .sum()
}

/// Checks, on `random_tournament(n, seed)`:
/// (i) `δ⁰ ≥ lower`, (ii) `δ⁰ ≤ upper`, and (iii) `|e(A,B) − |A||B|/2| ≤ 9n^{3/2}`
/// on [`TOURN_PAIRS`] pairs: `A = B = V`, then alternately uniform random
/// pairs and pairs where `B` collects the vertices most dominated by a
/// random `A`.
pub fn tourn_edges_trial(n: usize, epsilon: f64, seed: Seed) -> TournEdgesTrial {
    let t = random_tournament(n, seed);
    let delta0 = t.min_semidegree();
    let nf = n as f64;
    let root = if n > 1 {
        libm::sqrt(nf * libm::log(nf) / 2.0)
    } else {
        0.0
    };
    let (lower, upper) = (
        nf / 2.0 - (1.0 + epsilon) * root,
        nf / 2.0 - (1.0 - epsilon) * root,
    );

    let words = n.div_ceil(64).max(1);
    let out: Vec<Vec<u64>> = (0..n)
        .map(|v| bitset(t.out_neighbors(v).iter().copied(), words))
        .collect();
    let mut rng = seed.with_trial(seed.trial ^ 1 << 62).rng();
    let mut max_disc = 0.0f64;
    let mut check = |a: &[usize], b: &[usize]| {
        let e = arcs_between(&out, a, &bitset(b.iter().copied(), words)) as f64;
        max_disc = max_disc.max(libm::fabs(e - (a.len() * b.len()) as f64 / 2.0));
    };
    let all: Vec<usize> = (0..n).collect();
    check(&all, &all);
    for i in 1..TOURN_PAIRS {
        let a: Vec<usize> = (0..n).filter(|_| rng.random::<bool>()).collect();
        let b: Vec<usize> = if i % 2 == 1 {
            (0..n).filter(|_| rng.random::<bool>()).collect()
        } else {
            let mut indeg = vec![0usize; n];
            for &x in &a {
                for &y in t.out_neighbors(x) {
                    indeg[y] += 1;
                }
            }
            let mut order = all.clone();
            order.sort_by_key(|&v| (core::cmp::Reverse(indeg[v]), v));
            order.truncate(n / 2);
            order
        };
        check(&a, &b);
    }
    let bound_iii = 9.0 * libm::pow(nf, 1.5);
    TournEdgesTrial {
        n,
        epsilon,
        seed,
        min_semidegree: delta0,
        lower,
        upper,
        cond_i: delta0 as f64 >= lower,
        cond_ii: delta0 as f64 <= upper,
        pairs_checked: TOURN_PAIRS,
        max_discrepancy: max_disc,
        bound_iii,
        cond_iii: max_disc <= bound_iii,
    }
}

/// `trials` tournament trials on `seed.with_trial(0..trials)`.
pub fn tourn_edges_suite(
    n: usize,
    trials: usize,
    epsilon: f64,
    seed: Seed,
) -> Vec<TournEdgesTrial> {
    (0..trials as u64)
        .map(|t| tourn_edges_trial(n, epsilon, seed.with_trial(t)))
        .collect()
}

/// Factor extraction and Hamilton packing on one tournament.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ErdosTrial {
    pub n: usize,
    pub seed: Seed,
    pub min_semidegree: usize,
    /// A verified `δ⁰`-factor was found.
    pub factor_found: bool,
    /// Euler orientation of the factor's underlying graph is `δ⁰`-regular.
    pub orientation_ok: bool,
    /// Packing runs only for `n ≤ 13`.
    pub packing_attempted: bool,
    pub cycles: usize,
    pub packing_status: Option<PackStatus>,
    pub full_packing: bool,
}

/// Runs the factor → orientation → packing chain on `t`.
pub fn erdos_tournament(t: &OrientedGraph, seed: Seed, budget: SearchBudget) -> ErdosTrial {
    let n = t.n();
    let delta0 = t.min_semidegree();
    let factor = tournament_factor(t)
        .ok()
        .and_then(|o| o.into_factor())
        .filter(|f| f.verified && f.regular_degree == Some(delta0));
    let orientation_ok = factor.as_ref().is_some_and(|f| {
        let u = f.subgraph.underlying_graph();
        regular_orientation(&u).is_ok_and(|o| {
            o.digraph.regular_degree() == Some(delta0) && o.digraph.underlying_graph() == u
        })
    });
    let mut report = ErdosTrial {
        n,
        seed,
        min_semidegree: delta0,
        factor_found: factor.is_some(),
        orientation_ok,
        packing_attempted: false,
        cycles: 0,
        packing_status: None,
        full_packing: false,
    };
    if let Some(f) = factor.filter(|_| (3..=ERDOS_PACK_CAP).contains(&n)) {
        let packed = pack_hamilton(&f.subgraph, delta0, budget)
            .expect("δ⁰ is within the trivial bound of a δ⁰-factor");
        report.packing_attempted = true;
        report.cycles = packed.packing.cycles.len();
        report.packing_status = Some(packed.status);
        report.full_packing = packed.status == PackStatus::TargetReached;
    }
    report
}

/// One random tournament trial.
pub fn erdos_trial(n: usize, budget: SearchBudget, seed: Seed) -> ErdosTrial {
    erdos_tournament(&random_tournament(n, seed), seed, budget)
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ErdosSummary {
    pub n: usize,
    pub trials: usize,
    pub factor_found: usize,
    pub packing_attempted: usize,
    pub full_packing: usize,
    pub budget_exhausted: usize,
}

impl ErdosSummary {
    pub fn of(n: usize, trials: &[ErdosTrial]) -> Self {
        let count = |f: &dyn Fn(&ErdosTrial) -> bool| trials.iter().filter(|t| f(t)).count();
        ErdosSummary {
            n,
            trials: trials.len(),
            factor_found: count(&|t| t.factor_found),
            packing_attempted: count(&|t| t.packing_attempted),
            full_packing: count(&|t| t.full_packing),
            budget_exhausted: count(&|t| t.packing_status == Some(PackStatus::BudgetExhausted)),
        }
    }
}

pub fn erdos_experiment(
    n: usize,
    trials: usize,
    budget: SearchBudget,
    seed: Seed,
) -> (Vec<ErdosTrial>, ErdosSummary) {
    let runs: Vec<ErdosTrial> = (0..trials as u64)
        .map(|t| erdos_trial(n, budget, seed.with_trial(t)))
        .collect();
    let summary = ErdosSummary::of(n, &runs);
    (runs, summary)
}

/// Which structure the extraction produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ExtractionKind {
    /// A `δ`-factor.
    Factor,
    /// An optimal matching plus a `(δ−1)`-factor.
    MatchingAndFactor,
}

/// Regular-factor extraction on one dense random graph.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GnpHTrial {
    pub n: usize,
    pub p: f64,
    pub seed: Seed,
    pub hypothesis: HypothesisCheck,
    /// `matchings_extract` ran and its output verified.
    pub extracted: bool,
    /// Absent when the hypothesis fails.
    pub outcome: Option<ExtractionKind>,
    pub complement_max_degree: usize,
    /// `2 n^{1/3}`.
    pub complement_bound: f64,
    pub complement_ok: bool,
}

fn check_gnp_range(n: usize, p: f64) -> Result<(), ModelError> {
    if !(2.0 / 3.0..=1.0).contains(&p) {
        return Err(ModelError::ProbabilityOutOfRange(p));
    }
    if n > GNP_H_CAP {
        return Err(ModelError::TooLarge { n, cap: GNP_H_CAP });
    }
    Ok(())
}

pub fn gnp_h_trial(n: usize, p: f64, seed: Seed) -> Result<GnpHTrial, ModelError> {
    check_gnp_range(n, p)?;
    let g = gnp(n, p, seed)?;
    let hypothesis = matchings_hypothesis(&g);
    let (extracted, outcome) = if hypothesis.holds {
        match matchings_extract(&g) {
            Ok(r) => (
                r.verified,
                Some(match r.outcome {
                    MatchingsOutcome::Factor { .. } => ExtractionKind::Factor,
                    MatchingsOutcome::MatchingAndFactor { .. } => ExtractionKind::MatchingAndFactor,
                }),
            ),
            Err(_) => (false, None),
        }
    } else {
        (false, None)
    };
    let complement_max_degree = n.saturating_sub(1) - g.min_degree();
    let complement_bound = 2.0 * libm::cbrt(n as f64);
    Ok(GnpHTrial {
        n,
        p,
        seed,
        hypothesis,
        extracted,
        outcome,
        complement_max_degree,
        complement_bound,
        complement_ok: complement_max_degree as f64 <= complement_bound,
    })
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GnpHSummary {
    pub n: usize,
    pub p: f64,
    pub trials: usize,
    pub hypothesis_held: usize,
    /// Trials where the hypothesis held and the extraction verified.
    pub extracted: usize,
    pub complement_ok: usize,
}

pub fn gnp_h_property(
    n: usize,
    p: f64,
    trials: usize,
    seed: Seed,
) -> Result<(Vec<GnpHTrial>, GnpHSummary), ModelError> {
    check_gnp_range(n, p)?;
    let runs = (0..trials as u64)
        .map(|t| gnp_h_trial(n, p, seed.with_trial(t)))
        .collect::<Result<Vec<_>, _>>()?;
    let summary = GnpHSummary {
        n,
        p,
        trials,
        hypothesis_held: runs.iter().filter(|t| t.hypothesis.holds).count(),
        extracted: runs
            .iter()
            .filter(|t| t.hypothesis.holds && t.extracted)
            .count(),
        complement_ok: runs.iter().filter(|t| t.complement_ok).count(),
    };
    Ok((runs, summary))
}

/// Arcs of `d` as out-neighbourhood bitsets (used by the discrepancy oracle
/// in tests).
#[cfg(test)]
fn out_bitsets(d: &crate::graph::Digraph) -> Vec<Vec<u64>> {
    let words = d.n().div_ceil(64).max(1);
    (0..d.n())
        .map(|v| bitset(d.out_neighbors(v).iter().copied(), words))
        .collect()
}
