//! Robust expansion.
//!
//! For `S ⊆ V` the robust `ν`-outneighbourhood `RN_ν(S)` is the set of
//! vertices with at least `νn` inneighbours in `S` (neighbours, for graphs).
//! `G` is a robust `(ν, τ)`-outexpander if `|RN_ν(S)| ≥ |S| + νn` whenever
//! `τn ≤ |S| ≤ (1 − τ)n`.
//!
//! Since counts are integers, `count ≥ νn` is evaluated as
//! `count ≥ ⌈νn⌉` with `ν` an exact rational, and `|RN| ≥ |S| + νn` as
//! `|RN| ≥ |S| + ⌈νn⌉`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::graph::{Digraph, Graph, OrientedGraph};
use crate::rational::{ceil_nonneg, floor_nonneg, to_f64, Frac};
use crate::seed::Seed;

/// Vertex cap for exhaustive subset enumeration.
pub const EXACT_CAP: usize = 22;

/// Default tolerance on eigenpair residuals.
pub const EIGEN_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExpansionError {
    #[error("need 0 < nu <= tau < 1, got nu = {nu}, tau = {tau}")]
    InvalidParams { nu: String, tau: String },
    #[error("exact check enumerates subsets; n = {0} exceeds the cap of {EXACT_CAP}")]
    TooLarge(usize),
    #[error("graph is not regular")]
    NotRegular,
    #[error("eigen-solve residual {0:e} exceeds tolerance")]
    Residual(f64),
}

/// Robust expansion parameters `0 < ν ≤ τ < 1`, held exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExpansionParams {
    #[cfg_attr(feature = "serde", serde(with = "crate::rational::serde_frac"))]
    nu: Frac,
    #[cfg_attr(feature = "serde", serde(with = "crate::rational::serde_frac"))]
    tau: Frac,
}

impl ExpansionParams {
    pub fn new(nu: Frac, tau: Frac) -> Result<Self, ExpansionError> {
        if nu > Frac::zero() && nu <= tau && tau < Frac::one() {
            Ok(ExpansionParams { nu, tau })
        } else {
            Err(ExpansionError::InvalidParams {
                nu: alloc::format!("{nu}"),
                tau: alloc::format!("{tau}"),
            })
        }
    }

    pub fn nu(&self) -> Frac {
        self.nu
    }

    pub fn tau(&self) -> Frac {
        self.tau
    }

    /// `⌈νn⌉`: the in-count threshold and the required surplus.
    pub fn threshold(&self, n: usize) -> usize {
        ceil_nonneg(self.nu * Frac::from_integer(n as i64))
    }

    /// Admissible sizes `⌈τn⌉ ..= ⌊(1 − τ)n⌋` (possibly empty).
    pub fn size_range(&self, n: usize) -> core::ops::RangeInclusive<usize> {
        let nn = Frac::from_integer(n as i64);
        ceil_nonneg(self.tau * nn)..=floor_nonneg((Frac::one() - self.tau) * nn)
    }
}

/// In-neighbourhoods as used by robust expansion (neighbourhoods for graphs).
pub trait InNeighbourhoods {
    fn order(&self) -> usize;
    fn in_nbrs(&self, v: usize) -> &[usize];
    /// `δ⁰` for digraphs, `δ` for graphs.
    fn degree_floor(&self) -> usize;
}

impl InNeighbourhoods for Digraph {
    fn order(&self) -> usize {
        self.n()
    }
    fn in_nbrs(&self, v: usize) -> &[usize] {
        self.in_neighbors(v)
    }
    fn degree_floor(&self) -> usize {
        self.min_semidegree()
    }
}

impl InNeighbourhoods for OrientedGraph {
    fn order(&self) -> usize {
        self.n()
    }
    fn in_nbrs(&self, v: usize) -> &[usize] {
        self.in_neighbors(v)
    }
    fn degree_floor(&self) -> usize {
        self.min_semidegree()
    }
}

impl InNeighbourhoods for Graph {
    fn order(&self) -> usize {
        self.n()
    }
    fn in_nbrs(&self, v: usize) -> &[usize] {
        self.neighbors(v)
    }
    fn degree_floor(&self) -> usize {
        self.min_degree()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Method {
    Exact,
    Degree,
    Spectral,
}

/// A set `S` in the admissible size range whose robust neighbourhood is too
/// small.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Witness {
    pub set: Vec<usize>,
    pub robust_size: usize,
    /// `|S| + νn`.
    #[cfg_attr(feature = "serde", serde(with = "crate::rational::serde_frac"))]
    pub required: Frac,
}

impl Witness {
    /// Recomputes `RN_ν(S)` and confirms the violation and the size range.
    pub fn verify<G: InNeighbourhoods + ?Sized>(&self, g: &G, p: &ExpansionParams) -> bool {
        let n = g.order();
        let mut sorted = self.set.clone();
        sorted.sort_unstable();
        sorted.dedup();
        let rn = robust_outneighbourhood(g, &self.set, p.nu);
        sorted.len() == self.set.len()
            && self.set.iter().all(|&v| v < n)
            && p.size_range(n).contains(&self.set.len())
            && rn.len() == self.robust_size
            && Frac::from_integer(rn.len() as i64) < self.required
            && self.required
                == Frac::from_integer(self.set.len() as i64) + p.nu * Frac::from_integer(n as i64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case", tag = "verdict"))]
pub enum ExpansionVerdict {
    Certified {
        method: Method,
        params: ExpansionParams,
    },
    Refuted {
        witness: Witness,
        params: ExpansionParams,
    },
    NoViolationFound {
        trials: usize,
        params: ExpansionParams,
    },
    /// A sufficient condition did not apply; says nothing about expansion.
    NotApplicable {
        method: Method,
        params: ExpansionParams,
        reason: String,
    },
}

impl ExpansionVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, ExpansionVerdict::Certified { .. })
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, ExpansionVerdict::Refuted { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            ExpansionVerdict::Refuted { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

/// `{x : |N⁻(x) ∩ S| ≥ νn}`, sorted.
pub fn robust_outneighbourhood<G: InNeighbourhoods + ?Sized>(
    g: &G,
    s: &[usize],
    nu: Frac,
) -> Vec<usize> {
    let n = g.order();
    let k = ceil_nonneg(nu * Frac::from_integer(n as i64));
    let mut in_s = vec![false; n];
    s.iter().for_each(|&v| in_s[v] = true);
    (0..n)
        .filter(|&x| g.in_nbrs(x).iter().filter(|&&u| in_s[u]).count() >= k)
        .collect()
}

fn witness(set: Vec<usize>, robust_size: usize, p: &ExpansionParams, n: usize) -> Witness {
    let required = Frac::from_integer(set.len() as i64) + p.nu * Frac::from_integer(n as i64);
    Witness {
        set,
        robust_size,
        required,
    }
}

/// Exhaustive check over every admissible `S`, by size and then
/// lexicographically; the first violation found is the witness.
pub fn check_exact<G: InNeighbourhoods + ?Sized>(
    g: &G,
    p: &ExpansionParams,
) -> Result<ExpansionVerdict, ExpansionError> {
    let n = g.order();
    if n > EXACT_CAP {
        return Err(ExpansionError::TooLarge(n));
    }
    let k = p.threshold(n) as u32;
    let in_mask: Vec<u32> = (0..n)
        .map(|x| g.in_nbrs(x).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect();
    for size in p.size_range(n) {
        if size == 0 || size > n {
            continue;
        }
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let mask = idx.iter().fold(0u32, |m, &v| m | 1 << v);
            let rn = in_mask
                .iter()
                .filter(|&&m| (m & mask).count_ones() >= k)
                .count();
            if rn < size + k as usize {
                return Ok(ExpansionVerdict::Refuted {
                    witness: witness(idx, rn, p, n),
                    params: *p,
                });
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    Ok(ExpansionVerdict::Certified {
        method: Method::Exact,
        params: *p,
    })
}

/// Advances a sorted index set to its lexicographic successor.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
        return false;
    };
    idx[i] += 1;
    for j in i + 1..k {
        idx[j] = idx[j - 1] + 1;
    }
    true
}

/// Searches for a violating `S` among random candidates. Even trials draw
/// `S` uniformly of a uniform admissible size; odd trials grow `S` from a
/// random vertex by repeatedly adding a random outneighbour of the current
/// set (uniform vertex when the frontier is empty), which finds sparse cuts
/// such as disjoint dense blocks.
pub fn refute_sampled<G: InNeighbourhoods + ?Sized>(
    g: &G,
    p: &ExpansionParams,
    trials: usize,
    seed: Seed,
) -> ExpansionVerdict {
    let n = g.order();
    let range = p.size_range(n);
    let (lo, hi) = (*range.start().max(&1), *range.end());
    if lo > hi || hi > n {
        return ExpansionVerdict::NoViolationFound {
            trials: 0,
            params: *p,
        };
    }
    let mut out_adj = vec![Vec::new(); n];
    for x in 0..n {
        for &u in g.in_nbrs(x) {
            out_adj[u].push(x);
        }
    }
    let k = p.threshold(n);
    let mut rng = seed.rng();
    let mut verts: Vec<usize> = (0..n).collect();
    for trial in 0..trials {
        let size = rng.random_range(lo..=hi);
        let mut set = if trial % 2 == 0 {
            verts.sort_unstable();
            let (chosen, _) = verts.partial_shuffle(&mut rng, size);
            chosen.to_vec()
        } else {
            grow(&out_adj, size, &mut rng)
        };
        set.sort_unstable();
        let rn = robust_outneighbourhood(g, &set, p.nu).len();
        if rn < size + k {
            return ExpansionVerdict::Refuted {
                witness: witness(set, rn, p, n),
                params: *p,
            };
        }
    }
    ExpansionVerdict::NoViolationFound { trials, params: *p }
}

fn grow<R: Rng>(out_adj: &[Vec<usize>], size: usize, rng: &mut R) -> Vec<usize> {
    let n = out_adj.len();
    let mut in_set = vec![false; n];
    let mut frontier = Vec::new();
    let mut on_frontier = vec![false; n];
    let mut set = Vec::with_capacity(size);
    while set.len() < size {
        let v = if frontier.is_empty() {
            let free: Vec<usize> = (0..n).filter(|&v| !in_set[v]).collect();
            free[rng.random_range(0..free.len())]
        } else {
            let i = rng.random_range(0..frontier.len());
            frontier.swap_remove(i)
        };
        in_set[v] = true;
        set.push(v);
        for &w in &out_adj[v] {
            if !in_set[w] && !on_frontier[w] {
                on_frontier[w] = true;
                frontier.push(w);
            }
        }
        frontier.retain(|&w| !in_set[w]);
    }
    set
}

/// Sufficient minimum-degree condition: with `ε = δ/n − 1/2`, certified iff
/// `ε > 0`, `ν ≤ τ ≤ ε` and `ε ≥ 2ν/τ`. Otherwise not applicable.
pub fn certify_degree<G: InNeighbourhoods + ?Sized>(
    g: &G,
    p: &ExpansionParams,
) -> ExpansionVerdict {
    let n = g.order().max(1) as i64;
    let eps = Frac::new(g.degree_floor() as i64, n) - Frac::new(1, 2);
    let two_nu_over_tau = Frac::from_integer(2) * p.nu / p.tau;
    let reason = if eps <= Frac::zero() {
        Some("minimum degree is at most n/2")
    } else if p.tau > eps {
        Some("tau exceeds the degree surplus epsilon")
    } else if eps < two_nu_over_tau {
        Some("epsilon is below 2 nu / tau")
    } else {
        None
    };
    match reason {
        None => ExpansionVerdict::Certified {
            method: Method::Degree,
            params: *p,
        },
        Some(r) => ExpansionVerdict::NotApplicable {
            method: Method::Degree,
            params: *p,
            reason: r.into(),
        },
    }
}

/// Second eigenvalue data of a regular graph.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpectralData {
    pub n: usize,
    pub d: usize,
    /// `max_{i≥2} |λ_i|`.
    pub lambda: f64,
    /// `‖Av − λ_i v‖ / ‖v‖` for the reported eigenpair.
    pub residual: f64,
    pub tolerance: f64,
}

/// `λ(G) = max_{i≥2} |λ_i|`, from a symmetric eigen-solve of `A − (d/n)J`,
/// which maps the all-ones eigenvector to 0 and fixes its complement.
pub fn second_eigenvalue(g: &Graph) -> Result<SpectralData, ExpansionError> {
    let d = g.regular_degree().ok_or(ExpansionError::NotRegular)?;
    let n = g.n();
    if n < 2 {
        return Ok(SpectralData {
            n,
            d,
            lambda: 0.0,
            residual: 0.0,
            tolerance: EIGEN_TOLERANCE,
        });
    }
    let shift = d as f64 / n as f64;
    let a = DMatrix::from_fn(n, n, |i, j| {
        let adj = if g.has_edge(i, j) { 1.0 } else { 0.0 };
        adj - shift
    });
    let eig = SymmetricEigen::new(a.clone());
    let (idx, value) = eig
        .eigenvalues
        .iter()
        .copied()
        .enumerate()
        .max_by(|x, y| libm::fabs(x.1).total_cmp(&libm::fabs(y.1)))
        .expect("n >= 2");
    let v: DVector<f64> = eig.eigenvectors.column(idx).into_owned();
    let residual = (&a * &v - &v * value).norm() / v.norm();
    if residual > EIGEN_TOLERANCE {
        return Err(ExpansionError::Residual(residual));
    }
    Ok(SpectralData {
        n,
        d,
        lambda: libm::fabs(value),
        residual,
        tolerance: EIGEN_TOLERANCE,
    })
}

/// Which pairs `(A, B)` to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSource {
    /// `pairs` random pairs: each set has a uniform size in `1..=n` and is
    /// uniform of that size.
    Sampled { pairs: usize, seed: Seed },
    /// Every pair of nonempty sets; `n ≤ 16`.
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MixingReport {
    pub pairs_checked: u64,
    pub violations: u64,
    /// Smallest `λ n √(|A||B|) − |e'(A,B) n − d|A||B||` seen, divided by `n`.
    pub min_slack: f64,
    pub first_violation: Option<(Vec<usize>, Vec<usize>)>,
}

impl MixingReport {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

/// Checks `|e'(A,B)/(|A||B|) − d/n| ≤ λ/√(|A||B|)`, where `e'(A,B)` counts
/// ordered pairs `(a, b) ∈ A × B` with `ab ∈ E`. Evaluated as
/// `|e'n − d|A||B|| ≤ λn√(|A||B|)` with a relative tolerance of `1e−9`.
pub fn verify_mixing(g: &Graph, spectral: &SpectralData, pairs: PairSource) -> MixingReport {
    let n = g.n();
    let d = spectral.d as f64;
    let lam = spectral.lambda;
    let mut report = MixingReport {
        pairs_checked: 0,
        violations: 0,
        min_slack: f64::INFINITY,
        first_violation: None,
    };
    let mut record = |e: u64, a: u64, b: u64, sets: &dyn Fn() -> (Vec<usize>, Vec<usize>)| {
        let lhs = libm::fabs(e as f64 * n as f64 - d * (a * b) as f64);
        let rhs = lam * n as f64 * libm::sqrt((a * b) as f64);
        let slack = (rhs - lhs) / n as f64;
        report.pairs_checked += 1;
        if slack < report.min_slack {
            report.min_slack = slack;
        }
        if lhs > rhs + 1e-9 * rhs.max(1.0) {
            report.violations += 1;
            if report.first_violation.is_none() {
                report.first_violation = Some(sets());
            }
        }
    };
    match pairs {
        PairSource::Sampled { pairs, seed } => {
            let mut rng = seed.rng();
            let mut verts: Vec<usize> = (0..n).collect();
            for _ in 0..pairs {
                let mut pick = |rng: &mut crate::seed::SeedRng| {
                    let size = rng.random_range(1..=n);
                    verts.sort_unstable();
                    let mut s = verts.partial_shuffle(rng, size).0.to_vec();
                    s.sort_unstable();
                    s
                };
                let a = pick(&mut rng);
                let b = pick(&mut rng);
                let mut in_b = vec![false; n];
                b.iter().for_each(|&v| in_b[v] = true);
                let e: usize = a
                    .iter()
                    .map(|&x| g.neighbors(x).iter().filter(|&&y| in_b[y]).count())
                    .sum();
                record(e as u64, a.len() as u64, b.len() as u64, &|| {
                    (a.clone(), b.clone())
                });
            }
        }
        PairSource::Exhaustive => {
            assert!(n <= 16, "exhaustive mixing check is limited to n <= 16");
            let nbr: Vec<u32> = (0..n)
                .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
                .collect();
            let full = 1u32 << n;
            let to_set = |m: u32| (0..n).filter(|&v| m >> v & 1 == 1).collect::<Vec<_>>();
            // Gray code over B maintains c[a] = |N(a) ∩ B|; Gray code over A
            // maintains e'(A, B) = Σ_{a∈A} c[a].
            let mut c = vec![0u64; n];
            let mut b_mask = 0u32;
            for bi in 1..full {
                let flip = bi.trailing_zeros() as usize;
                let add = b_mask >> flip & 1 == 0;
                b_mask ^= 1 << flip;
                for (a, ca) in c.iter_mut().enumerate() {
                    if nbr[a] >> flip & 1 == 1 {
                        if add {
                            *ca += 1;
                        } else {
                            *ca -= 1;
                        }
                    }
                }
                let bsize = u64::from(b_mask.count_ones());
                let (mut a_mask, mut e, mut asize) = (0u32, 0u64, 0u64);
                for ai in 1..full {
                    let f = ai.trailing_zeros() as usize;
                    if a_mask >> f & 1 == 0 {
                        e += c[f];
                        asize += 1;
                    } else {
                        e -= c[f];
                        asize -= 1;
                    }
                    a_mask ^= 1 << f;
                    if asize > 0 {
                        let (am, bm) = (a_mask, b_mask);
                        record(e, asize, bsize, &|| (to_set(am), to_set(bm)));
                    }
                }
            }
        }
    }
    report
}

/// Evaluation of the spectral sufficient condition.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpectralCertificate {
    pub spectral: SpectralData,
    /// `σ = λ / √(τn·d/2)`.
    pub sigma: f64,
    /// `νn² ≤ (τ/4)·τn·d`.
    pub edge_loss_ok: bool,
    /// `(d/n + σ)(1 − τ) ≤ (1 − τ/2)·d/n`.
    pub mixing_ok: bool,
    /// `τ²/4 ≥ ν`.
    pub growth_ok: bool,
    /// Whether the size-by-size scan ruled out every violation.
    pub scan_ok: bool,
    pub verdict: ExpansionVerdict,
}

/// Spectral certificate for a regular graph.
///
/// The closed chain argues: for admissible `S` with `RN = RN_ν(S)`,
/// `e'(S, RN) ≥ |S|d − νn² ≥ (1 − τ/4)|S|d`, hence `|RN| ≥ d/2`; mixing
/// gives `e'(S, RN) ≤ (d/n + σ)|S||RN| ≤ (1 − τ/2)d|RN|`, so
/// `|RN| ≥ (1 + τ/4)|S| ≥ |S| + νn`.
///
/// When the chain fails, a scan tries each admissible size `s` and each
/// `R < s + νn`: a violation would need
/// `sd − (n − R)(⌈νn⌉ − 1) ≤ e'(S, RN) ≤ min(sR, (d/n)sR + λ√(sR))`.
/// If no `(s, R)` satisfies this, no violation exists.
pub fn spectral_certificate(
    g: &Graph,
    p: &ExpansionParams,
) -> Result<SpectralCertificate, ExpansionError> {
    let spectral = second_eigenvalue(g)?;
    let n = g.n() as f64;
    let d = spectral.d as f64;
    let (nu, tau) = (to_f64(p.nu), to_f64(p.tau));
    let lam = spectral.lambda + 1e-9;
    let sigma = lam / libm::sqrt(tau * n * d / 2.0);
    let edge_loss_ok = nu * n * n <= tau / 4.0 * tau * n * d;
    let mixing_ok = (d / n + sigma) * (1.0 - tau) <= (1.0 - tau / 2.0) * d / n;
    let growth_ok = tau * tau / 4.0 >= nu;
    let chain = edge_loss_ok && mixing_ok && growth_ok;
    let scan_ok = chain || scan(g.n(), spectral.d, lam, p);
    let verdict = if scan_ok {
        ExpansionVerdict::Certified {
            method: Method::Spectral,
            params: *p,
        }
    } else {
        ExpansionVerdict::NotApplicable {
            method: Method::Spectral,
            params: *p,
            reason: "second eigenvalue too large for the mixing bound to force expansion".into(),
        }
    };
    Ok(SpectralCertificate {
        spectral,
        sigma,
        edge_loss_ok,
        mixing_ok,
        growth_ok,
        scan_ok,
        verdict,
    })
}

fn scan(n: usize, d: usize, lam: f64, p: &ExpansionParams) -> bool {
    let k = p.threshold(n);
    let slack = k.saturating_sub(1) as f64;
    let (nf, df) = (n as f64, d as f64);
    p.size_range(n).filter(|&s| s > 0).all(|s| {
        (0..(s + k).min(n + 1)).all(|r| {
            let (sf, rf) = (s as f64, r as f64);
            let lower = sf * df - (nf - rf) * slack;
            let upper = (sf * rf).min(df / nf * sf * rf + lam * libm::sqrt(sf * rf));
            lower > upper + 1e-9
        })
    })
}

/// Verdict of [`spectral_certificate`].
pub fn certify_spectral(
    g: &Graph,
    p: &ExpansionParams,
) -> Result<ExpansionVerdict, ExpansionError> {
    Ok(spectral_certificate(g, p)?.verdict)
}
