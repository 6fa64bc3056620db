//! Near-complete graphs: a `δ`-factor, or an optimal matching plus a
//! `(δ−1)`-factor of the rest.
//!
//! With `t = n − δ`, `s` the number of minimum-degree vertices and
//! `n ≥ s + 3t + 2t(Δ − δ)`, the procedure is:
//!
//! 1. order vertices by degree (descending, ties by id), let `d = d(x_{2t})`
//!    and trim each `x_i`, `i < 2t`, down to degree `d` by deleting edges to a
//!    set `N_i` of fresh neighbours (outside the minimum-degree class, the
//!    first `2t` vertices and earlier `N_j`);
//! 2. repeatedly delete an optimal matching of the current maximum-degree
//!    class `X` (plus one edge at the uncovered vertex when `|X|` is odd), which
//!    lowers the maximum degree by one and keeps the minimum at `δ`;
//! 3. at the last level, finish with a perfect (or near-perfect) matching
//!    when `δ` is odd.
//!
//! Every induced subgraph on `≥ 2t` vertices has minimum degree at least half
//! its order, so the matchings required in steps 2 and 3 always exist.

use alloc::vec;
use alloc::vec::Vec;

use super::FactorError;
use crate::graph::Graph;
use crate::matching::{matching_pairs, max_matching};

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HypothesisCheck {
    pub n: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    /// Number of vertices of minimum degree.
    pub s: usize,
    /// `n − δ`.
    pub t: usize,
    /// `s + 3t + 2t(Δ − δ)`.
    pub required: usize,
    pub regular: bool,
    /// Regular inputs are handled directly: they qualify when `δ` is even or
    /// `2δ ≥ n` (which guarantees a perfect matching).
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ReductionStep {
    pub iteration: usize,
    /// Size of the maximum-degree class before the step.
    pub max_class: usize,
    /// Size of the minimum-degree class before the step.
    pub min_class: usize,
    pub matching_size: usize,
    /// Extra edge `yy'` deleted when the maximum-degree class is odd.
    pub extra_edge: Option<(usize, usize)>,
    pub max_degree_after: usize,
    pub min_degree_after: usize,
    pub max_class_after: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case", tag = "kind"))]
pub enum MatchingsOutcome {
    /// `δ` even: a `δ`-factor.
    Factor { factor: Graph },
    /// `δ` odd: an optimal matching `M` and a `(δ−1)`-factor of `G − M`.
    MatchingAndFactor {
        matching: Vec<(usize, usize)>,
        factor: Graph,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MatchingsReport {
    pub hypothesis: HypothesisCheck,
    /// Common degree `d` after trimming (absent for regular inputs).
    pub trimmed_degree: Option<usize>,
    pub trace: Vec<ReductionStep>,
    pub outcome: MatchingsOutcome,
    pub verified: bool,
}

impl MatchingsReport {
    /// Re-checks the outcome against `g`: degrees, containment, disjointness
    /// and optimality of the matching.
    pub fn verify(&self, g: &Graph) -> bool {
        let delta = g.min_degree();
        match &self.outcome {
            MatchingsOutcome::Factor { factor } => {
                delta.is_multiple_of(2)
                    && g.contains_subgraph(factor)
                    && (0..g.n()).all(|v| factor.degree(v) == delta)
            }
            MatchingsOutcome::MatchingAndFactor { matching, factor } => {
                let mut covered = vec![false; g.n()];
                for &(u, v) in matching {
                    if covered[u] || covered[v] || !g.has_edge(u, v) || factor.has_edge(u, v) {
                        return false;
                    }
                    covered[u] = true;
                    covered[v] = true;
                }
                delta % 2 == 1
                    && covered.iter().filter(|&&c| !c).count() <= 1
                    && g.contains_subgraph(factor)
                    && (0..g.n()).all(|v| factor.degree(v) + 1 == delta)
            }
        }
    }

    /// Each reduction step lowers the maximum degree by exactly one, keeps
    /// the minimum degree and leaves at least `2t` vertices of maximum
    /// degree. The last step ends at a regular graph, except that an odd
    /// final class also drops one endpoint of the extra edge to `δ − 1`.
    pub fn trace_is_consistent(&self) -> bool {
        let (delta, two_t) = (self.hypothesis.min_degree, 2 * self.hypothesis.t);
        let Some(d) = self.trimmed_degree else {
            return self.trace.is_empty();
        };
        let steps = self.trace.len();
        steps == d - delta
            && self.trace.iter().enumerate().all(|(i, st)| {
                let odd_final = i + 1 == steps && st.extra_edge.is_some();
                st.iteration == i
                    && st.max_class >= two_t
                    && st.max_degree_after == d - i - 1
                    && (st.min_degree_after == delta
                        || odd_final && st.min_degree_after + 1 == delta)
                    && (st.max_degree_after == delta || st.max_class_after >= two_t)
            })
    }
}

/// Evaluates `n ≥ s + 3t + 2t(Δ − δ)` with the smallest admissible `t = n − δ`.
pub fn matchings_hypothesis(g: &Graph) -> HypothesisCheck {
    let n = g.n();
    let (min, max) = (g.min_degree(), g.max_degree());
    let s = (0..n).filter(|&v| g.degree(v) == min).count();
    let t = n - min;
    let required = s + 3 * t + 2 * t * (max - min);
    let regular = min == max;
    let holds = if regular {
        min % 2 == 0 || 2 * min >= n
    } else {
        n >= required
    };
    HypothesisCheck {
        n,
        min_degree: min,
        max_degree: max,
        s,
        t,
        required,
        regular,
        holds,
    }
}

/// Mutable simple graph with an adjacency matrix.
struct Work {
    adj: Vec<Vec<bool>>,
    deg: Vec<usize>,
}

impl Work {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut adj = vec![vec![false; n]; n];
        for (u, v) in g.edges() {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        Work {
            adj,
            deg: g.degrees(),
        }
    }

    fn remove(&mut self, u: usize, v: usize) {
        debug_assert!(self.adj[u][v]);
        self.adj[u][v] = false;
        self.adj[v][u] = false;
        self.deg[u] -= 1;
        self.deg[v] -= 1;
    }

    fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v]
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(u, _)| u)
    }

    fn max_degree(&self) -> usize {
        self.deg.iter().copied().max().unwrap_or(0)
    }

    fn min_degree(&self) -> usize {
        self.deg.iter().copied().min().unwrap_or(0)
    }

    fn class(&self, degree: usize) -> Vec<usize> {
        (0..self.deg.len())
            .filter(|&v| self.deg[v] == degree)
            .collect()
    }

    /// Maximum matching of the subgraph induced by `verts` (sorted).
    fn induced_matching(&self, verts: &[usize]) -> Vec<(usize, usize)> {
        let adj: Vec<Vec<usize>> = verts
            .iter()
            .map(|&u| {
                (0..verts.len())
                    .filter(|&j| self.adj[u][verts[j]])
                    .collect()
            })
            .collect();
        matching_pairs(&max_matching(&adj))
            .into_iter()
            .map(|(a, b)| (verts[a], verts[b]))
            .collect()
    }

    fn to_graph(&self) -> Graph {
        let n = self.deg.len();
        Graph::from_edges(
            n,
            (0..n).flat_map(|u| {
                (u + 1..n)
                    .filter(move |&v| self.adj[u][v])
                    .map(move |v| (u, v))
            }),
        )
        .expect("work graph is simple")
    }
}

/// Runs the extraction procedure; fails closed when the hypothesis does not
/// hold.
pub fn matchings_extract(g: &Graph) -> Result<MatchingsReport, FactorError> {
    let hypothesis = matchings_hypothesis(g);
    if !hypothesis.holds {
        return Err(FactorError::HypothesisNotMet {
            n: hypothesis.n,
            s: hypothesis.s,
            t: hypothesis.t,
            required: hypothesis.required,
        });
    }
    let n = g.n();
    let delta = hypothesis.min_degree;
    let mut work = Work::new(g);
    let mut trace = Vec::new();
    let trimmed_degree;

    let outcome = if hypothesis.regular {
        trimmed_degree = None;
        finish(&mut work, delta, None)?
    } else {
        let t = hypothesis.t;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (core::cmp::Reverse(g.degree(v)), v));
        let d = g.degree(order[2 * t - 1]);
        trimmed_degree = Some(d);

        // Trim x_1, ..., x_{2t-1} to degree d.
        let mut blocked: Vec<bool> = (0..n).map(|v| g.degree(v) == delta).collect();
        order[..2 * t].iter().for_each(|&x| blocked[x] = true);
        for &x in &order[..2 * t - 1] {
            let need = g.degree(x) - d;
            let picked: Vec<usize> = g
                .neighbors(x)
                .iter()
                .copied()
                .filter(|&u| !blocked[u])
                .take(need)
                .collect();
            if picked.len() < need {
                return Err(FactorError::InternalMatchingFailure(
                    "not enough fresh neighbours to trim a high-degree vertex",
                ));
            }
            for u in picked {
                blocked[u] = true;
                work.remove(x, u);
            }
        }
        if work.max_degree() != d || work.min_degree() != delta {
            return Err(FactorError::InternalMatchingFailure(
                "trimming missed its target",
            ));
        }

        let mut result = None;
        for i in 0..d - delta {
            let x_max = work.class(d - i);
            let x_min_len = work.class(delta).len();
            let m = work.induced_matching(&x_max);
            if 2 * m.len() + 1 < x_max.len() {
                return Err(FactorError::InternalMatchingFailure(
                    "maximum-degree class has no optimal matching",
                ));
            }
            m.iter().for_each(|&(u, v)| work.remove(u, v));
            let last = i + 1 == d - delta;
            let mut extra = None;
            if x_max.len() % 2 == 1 {
                let mut covered = vec![false; n];
                m.iter().for_each(|&(u, v)| {
                    covered[u] = true;
                    covered[v] = true;
                });
                let y = *x_max.iter().find(|&&v| !covered[v]).expect("odd class");
                let y2 = if last {
                    work.neighbors(y).next()
                } else {
                    let avoid_max = x_max.len() == 2 * t;
                    let in_max = |v: usize| x_max.binary_search(&v).is_ok();
                    // Degrees of X^min are untouched by M', so `work.deg`
                    // still identifies the class.
                    work.neighbors(y)
                        .find(|&u| work.deg[u] != delta && !(avoid_max && in_max(u)))
                };
                let y2 = y2.ok_or(FactorError::InternalMatchingFailure(
                    "uncovered vertex has no admissible neighbour",
                ))?;
                work.remove(y, y2);
                extra = Some((y.min(y2), y.max(y2)));
            }
            if last {
                // Either a δ-factor, or (δ odd) a graph with one vertex of
                // degree δ−1 that the final matching must avoid.
                trace.push(step(i, &x_max, x_min_len, m.len(), extra, &work));
                let skip = extra.map(|(a, b)| if work.deg[a] + 1 == delta { a } else { b });
                result = Some(finish(&mut work, delta, skip)?);
            } else {
                trace.push(step(i, &x_max, x_min_len, m.len(), extra, &work));
            }
        }
        result.expect("at least one reduction step")
    };

    let mut report = MatchingsReport {
        hypothesis,
        trimmed_degree,
        trace,
        outcome,
        verified: false,
    };
    report.verified = report.verify(g) && report.trace_is_consistent();
    Ok(report)
}

fn step(
    iteration: usize,
    x_max: &[usize],
    min_class: usize,
    matching_size: usize,
    extra_edge: Option<(usize, usize)>,
    work: &Work,
) -> ReductionStep {
    let max_degree_after = work.max_degree();
    ReductionStep {
        iteration,
        max_class: x_max.len(),
        min_class,
        matching_size,
        extra_edge,
        max_degree_after,
        min_degree_after: work.min_degree(),
        max_class_after: work.class(max_degree_after).len(),
    }
}

/// Final step on a graph where every vertex has degree `δ`, except possibly
/// `skip`, which has degree `δ − 1` (only when `δ` is odd).
fn finish(
    work: &mut Work,
    delta: usize,
    skip: Option<usize>,
) -> Result<MatchingsOutcome, FactorError> {
    if delta.is_multiple_of(2) && skip.is_none() {
        return Ok(MatchingsOutcome::Factor {
            factor: work.to_graph(),
        });
    }
    let verts: Vec<usize> = (0..work.deg.len()).filter(|&v| Some(v) != skip).collect();
    let m = work.induced_matching(&verts);
    if 2 * m.len() != verts.len() {
        return Err(FactorError::InternalMatchingFailure(
            "final graph has no perfect matching",
        ));
    }
    m.iter().for_each(|&(u, v)| work.remove(u, v));
    Ok(MatchingsOutcome::MatchingAndFactor {
        matching: m,
        factor: work.to_graph(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::gnp;
    use crate::Seed;

    #[test]
    fn complete_graphs() {
        let k7 = Graph::complete(7);
        let r = matchings_extract(&k7).unwrap();
        assert_eq!(r.outcome, MatchingsOutcome::Factor { factor: k7.clone() });
        assert!(r.trace.is_empty() && r.verified);

        let k8 = Graph::complete(8);
        let r = matchings_extract(&k8).unwrap();
        assert!(r.verified);
        match r.outcome {
            MatchingsOutcome::MatchingAndFactor { matching, factor } => {
                assert_eq!(matching.len(), 4);
                assert_eq!(factor.regular_degree(), Some(6));
            }
            _ => panic!("odd minimum degree"),
        }
    }

    #[test]
    fn k30_minus_two_edge_matching() {
        let g = Graph::complete(30).without_edges([(0, 1), (2, 3)]);
        let h = matchings_hypothesis(&g);
        assert_eq!((h.min_degree, h.s, h.t, h.required), (28, 4, 2, 14));
        let r = matchings_extract(&g).unwrap();
        assert!(r.verified);
        assert_eq!(r.trimmed_degree, Some(29));
        assert_eq!(r.trace.len(), 1);
        match &r.outcome {
            MatchingsOutcome::Factor { factor } => assert_eq!(factor.regular_degree(), Some(28)),
            _ => panic!("even minimum degree"),
        }
    }

    #[test]
    fn k6_minus_edge_fails_hypothesis() {
        let g = Graph::complete(6).without_edges([(0, 1)]);
        assert_eq!(
            matchings_extract(&g),
            Err(FactorError::HypothesisNotMet {
                n: 6,
                s: 2,
                t: 2,
                required: 12
            })
        );
    }

    #[test]
    fn odd_minimum_degree_with_odd_class() {
        // K_31 minus a 3-edge matching: δ = 29 odd, 25 vertices of degree 30.
        let g = Graph::complete(31).without_edges([(0, 1), (2, 3), (4, 5)]);
        assert!(matchings_hypothesis(&g).holds);
        let r = matchings_extract(&g).unwrap();
        assert!(r.verified, "{r:?}");
        assert!(matches!(
            r.outcome,
            MatchingsOutcome::MatchingAndFactor { .. }
        ));
    }

    #[test]
    fn dense_random_graphs() {
        let mut ran = 0;
        for trial in 0..60 {
            let g = gnp(80, 0.985, Seed::new(17).with_trial(trial)).unwrap();
            if !matchings_hypothesis(&g).holds {
                continue;
            }
            ran += 1;
            let r = matchings_extract(&g).unwrap();
            assert!(r.verified, "trial {trial}");
            assert!(r.trace_is_consistent());
        }
        assert!(ran > 0);
    }
}
