//! Exact Hamilton cycle search and edge-disjoint packing for `n ≤ 64`.
//!
//! Cycles are written as vertex sequences starting at vertex 0. Undirected
//! cycles are canonical: the second vertex is smaller than the last, so each
//! cycle is generated once.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::Cell;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::factors::{find_r_factor_graph, reg_dir_with_factor, reg_even_undir, FactorError};
use crate::graph::{AnyGraph, Digraph, Graph, OrientedGraph};
use crate::seed::{Seed, SeedRng};

/// Largest supported vertex count (adjacency is kept in `u64` masks).
pub const HAMILTON_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HamiltonError {
    #[error("n = {0} outside the supported range 3..=64")]
    Size(usize),
    #[error("target {target} exceeds the trivial bound {bound}")]
    TargetAboveBound { target: usize, bound: usize },
    #[error(transparent)]
    Factor(#[from] FactorError),
}

/// Search limits. All counts are DFS node expansions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SearchBudget {
    /// Cap on nodes per packing attempt.
    pub max_nodes: u64,
    /// Cap on nodes for a single-cycle search.
    pub per_cycle_nodes: u64,
    /// Extra packing attempts with relabelled vertices after a budget
    /// exhaustion.
    pub restarts: u32,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 50_000_000,
            per_cycle_nodes: 10_000_000,
            restarts: 2,
        }
    }
}

impl SearchBudget {
    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget {
            max_nodes,
            per_cycle_nodes: max_nodes,
            restarts: 0,
        }
    }
}

/// Graphs and digraphs searchable for Hamilton cycles.
pub trait CycleHost {
    fn host_n(&self) -> usize;
    fn host_directed(&self) -> bool;
    /// Arcs (directed) or edges `u < v` (undirected).
    fn host_pairs(&self) -> Vec<(usize, usize)>;
}

impl CycleHost for Graph {
    fn host_n(&self) -> usize {
        self.n()
    }
    fn host_directed(&self) -> bool {
        false
    }
    fn host_pairs(&self) -> Vec<(usize, usize)> {
        self.edges().collect()
    }
}

impl CycleHost for Digraph {
    fn host_n(&self) -> usize {
        self.n()
    }
    fn host_directed(&self) -> bool {
        true
    }
    fn host_pairs(&self) -> Vec<(usize, usize)> {
        self.arcs().collect()
    }
}

impl CycleHost for OrientedGraph {
    fn host_n(&self) -> usize {
        self.n()
    }
    fn host_directed(&self) -> bool {
        true
    }
    fn host_pairs(&self) -> Vec<(usize, usize)> {
        self.arcs().collect()
    }
}

impl CycleHost for AnyGraph {
    fn host_n(&self) -> usize {
        self.n()
    }
    fn host_directed(&self) -> bool {
        self.is_directed()
    }
    fn host_pairs(&self) -> Vec<(usize, usize)> {
        self.edge_list()
    }
}

/// `⌊δ/2⌋` for graphs, `δ⁰` for digraphs.
pub fn trivial_bound<G: CycleHost + ?Sized>(g: &G) -> usize {
    let a = Arcs::new(g);
    let min = (0..a.n)
        .map(|v| a.out[v].count_ones().min(a.inn[v].count_ones()) as usize)
        .min()
        .unwrap_or(0);
    if a.directed {
        min
    } else {
        min / 2
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(
    feature = "serde",
    serde(rename_all = "snake_case", tag = "status", content = "cycle")
)]
pub enum HamiltonOutcome {
    Found(Vec<usize>),
    /// The search space was exhausted: no Hamilton cycle exists.
    None,
    BudgetExhausted,
}

/// Edge-disjoint Hamilton cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HamiltonPacking {
    pub n: usize,
    pub directed: bool,
    pub cycles: Vec<Vec<usize>>,
    /// The cycles partition the edge set.
    pub complete: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum PackStatus {
    /// `target` cycles found.
    TargetReached,
    /// The search space was exhausted below `target`: the packing is maximum.
    Exhausted,
    /// Every attempt ran out of nodes; the packing is a lower bound.
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PackResult {
    pub packing: HamiltonPacking,
    pub target: usize,
    pub status: PackStatus,
    pub nodes: u64,
    pub attempts: u32,
}

/// Dense bitmask adjacency; undirected graphs have `out == inn`.
#[derive(Clone)]
struct Arcs {
    n: usize,
    directed: bool,
    out: Vec<u64>,
    inn: Vec<u64>,
}

impl Arcs {
    fn new<G: CycleHost + ?Sized>(g: &G) -> Self {
        let n = g.host_n();
        let directed = g.host_directed();
        let mut out = vec![0u64; n];
        let mut inn = vec![0u64; n];
        for (u, v) in g.host_pairs() {
            out[u] |= 1 << v;
            inn[v] |= 1 << u;
            if !directed {
                out[v] |= 1 << u;
                inn[u] |= 1 << v;
            }
        }
        Arcs {
            n,
            directed,
            out,
            inn,
        }
    }

    fn relabel(&self, perm: &[usize]) -> Self {
        let map = |m: u64| {
            (0..self.n)
                .filter(|&v| m >> v & 1 == 1)
                .fold(0u64, |acc, v| acc | 1 << perm[v])
        };
        let mut out = vec![0u64; self.n];
        let mut inn = vec![0u64; self.n];
        for v in 0..self.n {
            out[perm[v]] = map(self.out[v]);
            inn[perm[v]] = map(self.inn[v]);
        }
        Arcs { out, inn, ..*self }
    }

    fn all(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    fn toggle_cycle(&mut self, cyc: &[usize]) {
        for i in 0..cyc.len() {
            let (u, v) = (cyc[i], cyc[(i + 1) % cyc.len()]);
            self.out[u] ^= 1 << v;
            self.inn[v] ^= 1 << u;
            if !self.directed {
                self.out[v] ^= 1 << u;
                self.inn[u] ^= 1 << v;
            }
        }
    }

    fn min_degree(&self) -> usize {
        (0..self.n)
            .map(|v| self.out[v].count_ones().min(self.inn[v].count_ones()) as usize)
            .min()
            .unwrap_or(0)
    }

    fn edge_total(&self) -> usize {
        let s: usize = self.out.iter().map(|m| m.count_ones() as usize).sum();
        if self.directed {
            s
        } else {
            s / 2
        }
    }

    /// Every vertex reaches and is reached from vertex 0.
    fn strongly_connected(&self) -> bool {
        let all = self.all();
        let reach = |adj: &[u64]| {
            let (mut seen, mut frontier) = (1u64, 1u64);
            while frontier != 0 {
                let mut next = 0;
                let mut f = frontier;
                while f != 0 {
                    let v = f.trailing_zeros() as usize;
                    f &= f - 1;
                    next |= adj[v];
                }
                frontier = next & !seen;
                seen |= next;
            }
            seen & all == all
        };
        reach(&self.out) && (!self.directed || reach(&self.inn))
    }
}

/// Constraint on the vertex following 0.
#[derive(Clone, Copy)]
enum First {
    Any,
    Exactly(usize),
    Above(usize),
}

enum Flow {
    Continue,
    Stop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum End {
    Exhausted,
    Stopped,
    Budget,
}

struct Dfs<'a> {
    a: &'a Arcs,
    first: First,
    /// Nodes expanded by this search alone, capped by `limit`.
    nodes: u64,
    limit: u64,
    /// Nodes expanded across nested searches, capped by `shared_limit`.
    shared: &'a Cell<u64>,
    shared_limit: u64,
    path: Vec<usize>,
}

impl Dfs<'_> {
    fn run(&mut self, f: &mut dyn FnMut(&[usize]) -> Flow) -> End {
        self.path.clear();
        self.path.push(0);
        self.step(1, f)
    }

    fn step(&mut self, visited: u64, f: &mut dyn FnMut(&[usize]) -> Flow) -> End {
        self.nodes += 1;
        self.shared.set(self.shared.get() + 1);
        if self.nodes > self.limit || self.shared.get() > self.shared_limit {
            return End::Budget;
        }
        let a = self.a;
        let last = *self.path.last().unwrap();
        let rest = a.all() & !visited;
        if rest == 0 {
            if a.out[last] & 1 == 0 {
                return End::Exhausted;
            }
            if !a.directed && self.path[1] > last {
                return End::Exhausted;
            }
            return match f(&self.path) {
                Flow::Continue => End::Exhausted,
                Flow::Stop => End::Stopped,
            };
        }
        if !self.feasible(rest, last) {
            return End::Exhausted;
        }
        let mut cand = a.out[last] & rest;
        if self.path.len() == 1 {
            cand &= match self.first {
                First::Any => u64::MAX,
                First::Exactly(v) => 1 << v,
                First::Above(v) => above(v),
            };
        }
        if a.directed {
            // A vertex whose only remaining in-option is `last` must come next.
            let mut forced = 0u64;
            let mut r = rest;
            while r != 0 {
                let v = r.trailing_zeros() as usize;
                r &= r - 1;
                if a.inn[v] & (rest | 1 << last) == 1 << last {
                    forced |= 1 << v;
                }
            }
            if forced.count_ones() > 1 {
                return End::Exhausted;
            }
            if forced != 0 {
                cand &= forced;
            }
        }
        let mut order: Vec<(u32, usize)> = Vec::with_capacity(cand.count_ones() as usize);
        while cand != 0 {
            let w = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            order.push(((a.out[w] & rest).count_ones(), w));
        }
        order.sort_unstable();
        for (_, w) in order {
            self.path.push(w);
            let end = self.step(visited | 1 << w, f);
            self.path.pop();
            if end != End::Exhausted {
                return end;
            }
        }
        End::Exhausted
    }

    /// Degree and reachability conditions for completing the path.
    fn feasible(&self, rest: u64, last: usize) -> bool {
        let a = self.a;
        let ends = 1u64 << last | 1;
        let mut r = rest;
        while r != 0 {
            let v = r.trailing_zeros() as usize;
            r &= r - 1;
            if a.directed {
                if a.inn[v] & (rest | 1 << last) == 0 || a.out[v] & (rest | 1) == 0 {
                    return false;
                }
            } else if (a.out[v] & (rest | ends)).count_ones() < 2 {
                return false;
            }
        }
        if !a.directed && self.path.len() >= 2 {
            // The closing vertex must exceed the second vertex.
            if a.inn[0] & rest & above(self.path[1]) == 0 {
                return false;
            }
        }
        // All remaining vertices reachable from `last` inside `rest`.
        let (mut seen, mut frontier) = (0u64, a.out[last] & rest);
        while frontier != 0 {
            seen |= frontier;
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= a.out[v];
            }
            frontier = next & rest & !seen;
        }
        seen == rest
    }
}

/// Mask of the vertices strictly above `v`.
fn above(v: usize) -> u64 {
    if v >= 63 {
        0
    } else {
        !((2u64 << v) - 1)
    }
}

fn check_size(n: usize) -> Result<(), HamiltonError> {
    if (3..=HAMILTON_CAP).contains(&n) {
        Ok(())
    } else {
        Err(HamiltonError::Size(n))
    }
}

/// Rotates `cyc` to start at 0; undirected cycles are also reflected so the
/// second vertex is below the last.
fn canonical(mut cyc: Vec<usize>, directed: bool) -> Vec<usize> {
    if let Some(p) = cyc.iter().position(|&v| v == 0) {
        cyc.rotate_left(p);
    }
    if !directed && cyc.len() > 2 && cyc[1] > cyc[cyc.len() - 1] {
        cyc[1..].reverse();
    }
    cyc
}

/// The arcs relabelled for restart `attempt` (identity for attempt 0), with
/// the inverse permutation.
fn labelled(base: &Arcs, attempt: u32) -> (Arcs, Vec<usize>) {
    let mut perm: Vec<usize> = (0..base.n).collect();
    if attempt > 0 {
        let mut rng = Seed::new(0).with_trial(u64::from(attempt)).rng();
        perm.shuffle(&mut rng);
    }
    let mut inv = vec![0; base.n];
    for (v, &p) in perm.iter().enumerate() {
        inv[p] = v;
    }
    (base.relabel(&perm), inv)
}

fn unmap(cyc: &[usize], inv: &[usize], directed: bool) -> Vec<usize> {
    canonical(cyc.iter().map(|&v| inv[v]).collect(), directed)
}

fn random_bit(mask: u64, rng: &mut SeedRng) -> usize {
    let k = rng.random_range(0..mask.count_ones());
    let mut m = mask;
    for _ in 0..k {
        m &= m - 1;
    }
    m.trailing_zeros() as usize
}

/// Rotation-extension: grow a path greedily; when stuck, rotate at a
/// neighbour of the endpoint; when the path closes into a non-spanning
/// cycle, reopen it next to an outside neighbour.
fn rotation_extension(a: &Arcs, max_steps: u64, rng: &mut SeedRng) -> Option<Vec<usize>> {
    let mut path = vec![0usize];
    let mut inside = 1u64;
    for _ in 0..max_steps {
        let end = *path.last().unwrap();
        let fresh = a.out[end] & !inside;
        if fresh != 0 {
            let w = random_bit(fresh, rng);
            path.push(w);
            inside |= 1 << w;
            continue;
        }
        if a.out[end] >> path[0] & 1 == 1 {
            if path.len() == a.n {
                return Some(path);
            }
            // Path vertices induce a cycle; reopen it beside an exit.
            let j = (0..path.len()).find(|&j| a.out[path[j]] & !inside != 0)?;
            path.rotate_left(j + 1);
            continue;
        }
        let len = path.len();
        let pivots: Vec<usize> = (0..len.saturating_sub(2))
            .filter(|&i| a.out[end] >> path[i] & 1 == 1)
            .collect();
        if pivots.is_empty() {
            return None;
        }
        let i = pivots[rng.random_range(0..pivots.len())];
        path[i + 1..].reverse();
    }
    None
}

/// A Hamilton cycle, a proof that none exists, or budget exhaustion.
///
/// Dense undirected inputs (`2δ ≥ n`) first try rotation-extension; the
/// exact search runs whenever that fails. `None` is returned only after the
/// exact search has exhausted its space.
pub fn find_hamilton<G: CycleHost + ?Sized>(
    g: &G,
    budget: SearchBudget,
) -> Result<HamiltonOutcome, HamiltonError> {
    let base = Arcs::new(g);
    check_size(base.n)?;
    if !base.directed && 2 * base.min_degree() >= base.n {
        let steps = budget.per_cycle_nodes.min(16 * (base.n * base.n) as u64);
        if let Some(c) = rotation_extension(&base, steps, &mut Seed::new(0).rng()) {
            return Ok(HamiltonOutcome::Found(canonical(c, false)));
        }
    }
    for attempt in 0..=budget.restarts {
        let (a, inv) = labelled(&base, attempt);
        let shared = Cell::new(0);
        let mut found = Vec::new();
        let mut dfs = Dfs {
            a: &a,
            first: First::Any,
            nodes: 0,
            limit: budget.per_cycle_nodes,
            shared: &shared,
            shared_limit: budget.max_nodes,
            path: Vec::with_capacity(a.n),
        };
        match dfs.run(&mut |p| {
            found = p.to_vec();
            Flow::Stop
        }) {
            End::Stopped => return Ok(HamiltonOutcome::Found(unmap(&found, &inv, a.directed))),
            End::Exhausted => return Ok(HamiltonOutcome::None),
            End::Budget => {}
        }
    }
    Ok(HamiltonOutcome::BudgetExhausted)
}

/// Upper bound on further cycles in `a` when the next cycle starts with
/// `first`.
fn remaining_bound(a: &Arcs, first: First) -> usize {
    let per = if a.directed { 1 } else { 2 };
    let mut b = a.min_degree() / per;
    if b > 0 && !a.strongly_connected() {
        b = 0;
    }
    if let First::Above(p) = first {
        // Later cycles leave 0 through distinct neighbours above `p`.
        b = b.min((a.out[0] & above(p)).count_ones() as usize / per);
    }
    b
}

/// Exhaustive search over sets of edge-disjoint cycles, listed by
/// increasing second vertex (or, in complete mode, always through the
/// smallest remaining neighbour of 0).
struct Packer<'a> {
    target: usize,
    complete: bool,
    per_cycle: u64,
    shared: &'a Cell<u64>,
    shared_limit: u64,
    current: Vec<Vec<usize>>,
    best: Vec<Vec<usize>>,
}

impl Packer<'_> {
    fn level(&mut self, a: &Arcs, prev: Option<usize>) -> End {
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        if self.current.len() == self.target {
            return End::Stopped;
        }
        let first = if self.complete {
            // Every edge must be covered, so the edge to the smallest
            // remaining neighbour of 0 opens the next cycle.
            if a.out[0] == 0 {
                return End::Exhausted;
            }
            First::Exactly(a.out[0].trailing_zeros() as usize)
        } else {
            prev.map_or(First::Any, First::Above)
        };
        if self.current.len() + remaining_bound(a, first) <= self.best.len() {
            return End::Exhausted;
        }
        let mut dfs = Dfs {
            a,
            first,
            nodes: 0,
            limit: self.per_cycle,
            shared: self.shared,
            shared_limit: self.shared_limit,
            path: Vec::with_capacity(a.n),
        };
        let mut inner = End::Exhausted;
        let end = dfs.run(&mut |cyc| {
            let mut rest = a.clone();
            rest.toggle_cycle(cyc);
            self.current.push(cyc.to_vec());
            let r = self.level(&rest, Some(cyc[1]));
            self.current.pop();
            if r == End::Exhausted {
                Flow::Continue
            } else {
                inner = r;
                Flow::Stop
            }
        });
        if end == End::Stopped {
            inner
        } else {
            end
        }
    }
}

/// Up to `target` edge-disjoint Hamilton cycles.
///
/// When the input is regular and `target` equals its trivial bound, a
/// decomposition search runs first; if it exhausts, the general search
/// finds the maximum packing. A budget exhaustion triggers a restart on a
/// relabelled copy; the largest packing over all attempts is returned.
pub fn pack_hamilton<G: CycleHost + ?Sized>(
    g: &G,
    target: usize,
    budget: SearchBudget,
) -> Result<PackResult, HamiltonError> {
    let base = Arcs::new(g);
    check_size(base.n)?;
    let bound = trivial_bound(g);
    if target > bound {
        return Err(HamiltonError::TargetAboveBound { target, bound });
    }
    let per = if base.directed { 1 } else { 2 };
    let decomposable = target > 0
        && (0..base.n).all(|v| {
            base.out[v].count_ones() as usize == per * target
                && base.inn[v].count_ones() as usize == per * target
        });
    let modes: &[bool] = if decomposable {
        &[true, false]
    } else {
        &[false]
    };

    let mut best: Vec<Vec<usize>> = Vec::new();
    let mut status = PackStatus::BudgetExhausted;
    let (mut nodes, mut attempts) = (0u64, 0u32);
    'attempts: for attempt in 0..=budget.restarts {
        attempts += 1;
        let (a, inv) = labelled(&base, attempt);
        for &complete in modes {
            let shared = Cell::new(0);
            let mut packer = Packer {
                target,
                complete,
                per_cycle: budget.per_cycle_nodes,
                shared: &shared,
                shared_limit: budget.max_nodes,
                current: Vec::new(),
                best: Vec::new(),
            };
            let end = packer.level(&a, None);
            nodes += shared.get();
            if packer.best.len() > best.len() {
                best = packer
                    .best
                    .iter()
                    .map(|c| unmap(c, &inv, a.directed))
                    .collect();
            }
            match end {
                End::Stopped => {
                    status = PackStatus::TargetReached;
                    break 'attempts;
                }
                End::Exhausted if !complete => {
                    status = PackStatus::Exhausted;
                    break 'attempts;
                }
                End::Exhausted => {}
                End::Budget => continue 'attempts,
            }
        }
    }
    best.sort();
    let packing = HamiltonPacking {
        n: base.n,
        directed: base.directed,
        complete: best.len() * base.n == base.edge_total(),
        cycles: best,
    };
    if let Err(v) = verify_packing(g, &packing) {
        panic!("packing search produced an invalid packing: {v}");
    }
    assert!(
        packing.cycles.len() <= bound,
        "packing exceeds the trivial bound"
    );
    Ok(PackResult {
        packing,
        target,
        status,
        nodes,
        attempts,
    })
}

/// The first way a packing fails to be a valid set of edge-disjoint
/// Hamilton cycles of the graph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PackingViolation {
    #[error("packing has n = {packing} but the graph has n = {graph}")]
    VertexCount { packing: usize, graph: usize },
    #[error("packing directedness does not match the graph")]
    Directedness,
    #[error("cycle {cycle} not spanning")]
    NotSpanning { cycle: usize },
    #[error("cycle {cycle} uses ({u}, {v}), which is not an edge")]
    NonEdge { cycle: usize, u: usize, v: usize },
    #[error("duplicate edge ({u}, {v}) in cycle {cycle}")]
    DuplicateEdge { cycle: usize, u: usize, v: usize },
    #[error("complete decomposition claimed but vertex {vertex} has odd degree")]
    OddDegree { vertex: usize },
    #[error("complete = {claimed} but the cycles cover {covered} of {total} edges")]
    CompleteMismatch {
        claimed: bool,
        covered: usize,
        total: usize,
    },
}

/// Checks that every cycle is a Hamilton cycle of `g`, that the cycles are
/// edge-disjoint and that `complete` holds exactly when they cover `E(g)`.
pub fn verify_packing<G: CycleHost + ?Sized>(
    g: &G,
    p: &HamiltonPacking,
) -> Result<(), PackingViolation> {
    let n = g.host_n();
    let directed = g.host_directed();
    if p.n != n {
        return Err(PackingViolation::VertexCount {
            packing: p.n,
            graph: n,
        });
    }
    if p.directed != directed {
        return Err(PackingViolation::Directedness);
    }
    let key = |u: usize, v: usize| if directed || u < v { (u, v) } else { (v, u) };
    let pairs = g.host_pairs();
    let edges: BTreeSet<(usize, usize)> = pairs.iter().map(|&(u, v)| key(u, v)).collect();
    let mut used = BTreeSet::new();
    for (i, cyc) in p.cycles.iter().enumerate() {
        let mut seen = vec![false; n];
        if cyc.len() != n
            || cyc
                .iter()
                .any(|&v| v >= n || core::mem::replace(&mut seen[v], true))
        {
            return Err(PackingViolation::NotSpanning { cycle: i });
        }
        for j in 0..n {
            let (u, v) = (cyc[j], cyc[(j + 1) % n]);
            let e = key(u, v);
            if !edges.contains(&e) {
                return Err(PackingViolation::NonEdge { cycle: i, u, v });
            }
            if !used.insert(e) {
                return Err(PackingViolation::DuplicateEdge { cycle: i, u, v });
            }
        }
    }
    if p.complete && !directed {
        let mut deg = vec![0usize; n];
        for &(u, v) in &pairs {
            deg[u] += 1;
            deg[v] += 1;
        }
        if let Some(vertex) = deg.iter().position(|d| d % 2 == 1) {
            return Err(PackingViolation::OddDegree { vertex });
        }
    }
    if p.complete != (used.len() == edges.len()) {
        return Err(PackingViolation::CompleteMismatch {
            claimed: p.complete,
            covered: used.len(),
            total: edges.len(),
        });
    }
    Ok(())
}

/// `ham` lower bound from packing a largest regular factor, against the
/// bound `reg/2` (undirected, even factors) or `reg` (directed).
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HamRegReport {
    pub directed: bool,
    /// `reg_even(G)` for graphs, `reg(G)` for digraphs.
    pub reg: usize,
    /// Number of cycles a decomposition of the factor would have.
    pub bound: usize,
    pub ham_lower: usize,
    pub equality_observed: bool,
    /// `exhausted` means `ham_lower` is the maximum packing of the factor.
    pub status: PackStatus,
    pub packing: HamiltonPacking,
}

/// Packs a largest (even-)regular factor of `g` and compares the number of
/// cycles with the factor's degree bound.
pub fn ham_vs_reg(g: &AnyGraph, budget: SearchBudget) -> Result<HamRegReport, HamiltonError> {
    check_size(g.n())?;
    let (reg, bound, result) = match g {
        AnyGraph::Undirected(h) => {
            let reg = reg_even_undir(h)?;
            let factor = find_r_factor_graph(h, reg)?.expect("reg_even admits a factor");
            (
                reg,
                reg / 2,
                pack_hamilton(&factor.subgraph, reg / 2, budget)?,
            )
        }
        AnyGraph::Directed(d) => {
            let (reg, factor) = reg_dir_with_factor(d);
            (reg, reg, pack_hamilton(&factor.subgraph, reg, budget)?)
        }
    };
    let packing = HamiltonPacking {
        complete: result.packing.cycles.len() * g.n() == g.edge_list().len(),
        ..result.packing
    };
    let ham_lower = packing.cycles.len();
    assert!(
        ham_lower <= trivial_bound(g),
        "packing exceeds the trivial bound"
    );
    Ok(HamRegReport {
        directed: g.is_directed(),
        reg,
        bound,
        ham_lower,
        equality_observed: ham_lower == bound,
        status: result.status,
        packing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{
        cycle_graph, disjoint_union, gnp, petersen_graph, random_digraph, rotational_tournament,
    };
    use alloc::string::ToString;

    fn exhaustive() -> SearchBudget {
        SearchBudget::nodes(u64::MAX)
    }

    /// Independent oracle: try every ordering of vertices 1..n after 0.
    fn brute_force_hamiltonian<G: CycleHost>(g: &G) -> bool {
        let n = g.host_n();
        let directed = g.host_directed();
        let pairs: BTreeSet<(usize, usize)> = g.host_pairs().into_iter().collect();
        let adj =
            |u: usize, v: usize| pairs.contains(&(u, v)) || (!directed && pairs.contains(&(v, u)));
        let mut perm: Vec<usize> = (1..n).collect();
        fn heap(k: usize, perm: &mut Vec<usize>, ok: &mut dyn FnMut(&[usize]) -> bool) -> bool {
            if k <= 1 {
                return ok(perm);
            }
            for i in 0..k {
                if heap(k - 1, perm, ok) {
                    return true;
                }
                let j = if k.is_multiple_of(2) { i } else { 0 };
                perm.swap(j, k - 1);
            }
            false
        }
        let len = perm.len();
        heap(len, &mut perm, &mut |p| {
            adj(0, p[0]) && adj(p[p.len() - 1], 0) && p.windows(2).all(|w| adj(w[0], w[1]))
        })
    }

    fn single(cyc: Vec<usize>, g: &impl CycleHost) -> HamiltonPacking {
        HamiltonPacking {
            n: g.host_n(),
            directed: g.host_directed(),
            complete: false,
            cycles: vec![cyc],
        }
    }

    #[test]
    fn five_cycle_is_found() {
        let c5 = cycle_graph(5);
        assert_eq!(
            find_hamilton(&c5, exhaustive()),
            Ok(HamiltonOutcome::Found(vec![0, 1, 2, 3, 4]))
        );
    }

    #[test]
    fn petersen_has_none() {
        assert_eq!(
            find_hamilton(&petersen_graph(), exhaustive()),
            Ok(HamiltonOutcome::None)
        );
        let r = pack_hamilton(&petersen_graph(), 1, exhaustive()).unwrap();
        assert_eq!(r.status, PackStatus::Exhausted);
        assert!(r.packing.cycles.is_empty());
    }

    #[test]
    fn budget_exhaustion_is_not_none() {
        let out = find_hamilton(&petersen_graph(), SearchBudget::nodes(5)).unwrap();
        assert_eq!(out, HamiltonOutcome::BudgetExhausted);
        let r = pack_hamilton(&petersen_graph(), 1, SearchBudget::nodes(5)).unwrap();
        assert_eq!(r.status, PackStatus::BudgetExhausted);
    }

    #[test]
    fn rotational_tournament_five_has_a_directed_cycle() {
        let t = rotational_tournament(5).unwrap();
        let HamiltonOutcome::Found(c) = find_hamilton(&t, exhaustive()).unwrap() else {
            panic!("expected a cycle");
        };
        assert_eq!(verify_packing(&t, &single(c, &t)), Ok(()));
    }

    #[test]
    fn small_decompositions() {
        let cases: Vec<(AnyGraph, usize)> = vec![
            (AnyGraph::Undirected(Graph::complete(5)), 2),
            (AnyGraph::Undirected(Graph::complete(7)), 3),
            (
                AnyGraph::Directed(rotational_tournament(5).unwrap().into_digraph()),
                2,
            ),
            (
                AnyGraph::Directed(rotational_tournament(7).unwrap().into_digraph()),
                3,
            ),
            (
                AnyGraph::Directed(rotational_tournament(9).unwrap().into_digraph()),
                4,
            ),
            (AnyGraph::Directed(Digraph::complete(5)), 4),
        ];
        for (g, k) in cases {
            let r = pack_hamilton(&g, k, exhaustive()).unwrap();
            assert_eq!(r.status, PackStatus::TargetReached, "{g:?}");
            assert_eq!(r.packing.cycles.len(), k);
            assert!(r.packing.complete);
            assert_eq!(verify_packing(&g, &r.packing), Ok(()));
        }
    }

    #[test]
    fn target_above_bound_is_rejected() {
        assert_eq!(
            pack_hamilton(&Graph::complete(5), 3, exhaustive()),
            Err(HamiltonError::TargetAboveBound {
                target: 3,
                bound: 2
            })
        );
        assert_eq!(
            find_hamilton(&Graph::complete(2), exhaustive()),
            Err(HamiltonError::Size(2))
        );
    }

    #[test]
    fn verifier_reports_violations() {
        let k5 = Graph::complete(5);
        let mut p = pack_hamilton(&k5, 2, exhaustive()).unwrap().packing;
        assert_eq!(verify_packing(&k5, &p), Ok(()));
        let dup = HamiltonPacking {
            cycles: vec![p.cycles[0].clone(), p.cycles[0].clone()],
            ..p.clone()
        };
        let v = verify_packing(&k5, &dup).unwrap_err();
        assert!(v.to_string().contains("duplicate edge"));
        p.cycles[1].pop();
        let v = verify_packing(&k5, &p).unwrap_err();
        assert!(v.to_string().contains("not spanning"));
        let missing = HamiltonPacking {
            cycles: vec![vec![0, 1, 2, 3, 4]],
            complete: true,
            ..p
        };
        assert!(matches!(
            verify_packing(&k5, &missing),
            Err(PackingViolation::CompleteMismatch {
                covered: 5,
                total: 10,
                ..
            })
        ));
    }

    #[test]
    fn verifier_rejects_odd_degree_decomposition_claims() {
        let k4 = Graph::complete(4);
        let p = HamiltonPacking {
            n: 4,
            directed: false,
            cycles: vec![vec![0, 1, 2, 3]],
            complete: true,
        };
        assert_eq!(
            verify_packing(&k4, &p),
            Err(PackingViolation::OddDegree { vertex: 0 })
        );
    }

    #[test]
    fn ham_vs_reg_examples() {
        let r = ham_vs_reg(&AnyGraph::Undirected(Graph::complete(7)), exhaustive()).unwrap();
        assert_eq!((r.reg, r.ham_lower, r.equality_observed), (6, 3, true));
        let r = ham_vs_reg(&AnyGraph::Directed(Digraph::complete(5)), exhaustive()).unwrap();
        assert_eq!((r.reg, r.ham_lower, r.equality_observed), (4, 4, true));
        let two_k4 = disjoint_union(&Graph::complete(4), &Graph::complete(4));
        let r = ham_vs_reg(&AnyGraph::Undirected(two_k4), exhaustive()).unwrap();
        assert_eq!((r.reg, r.ham_lower, r.equality_observed), (2, 0, false));
        assert_eq!(r.status, PackStatus::Exhausted);
    }

    #[test]
    fn exact_search_agrees_with_permutation_oracle() {
        for trial in 0..60 {
            let seed = Seed::new(11).with_trial(trial);
            let g = gnp(7, 0.45, seed).unwrap();
            let out = find_hamilton(&g, exhaustive()).unwrap();
            assert_eq!(
                matches!(out, HamiltonOutcome::Found(_)),
                brute_force_hamiltonian(&g),
                "graph trial {trial}"
            );
            let d = random_digraph(7, 0.4, seed).unwrap();
            let out = find_hamilton(&d, exhaustive()).unwrap();
            assert_eq!(
                matches!(out, HamiltonOutcome::Found(_)),
                brute_force_hamiltonian(&d),
                "digraph trial {trial}"
            );
            if let HamiltonOutcome::Found(c) = out {
                assert_eq!(verify_packing(&d, &single(c, &d)), Ok(()));
            }
        }
    }

    #[test]
    fn rotation_extension_handles_dense_graphs() {
        for trial in 0..5 {
            let g = gnp(60, 0.75, Seed::new(4).with_trial(trial)).unwrap();
            assert!(2 * g.min_degree() >= 60);
            let HamiltonOutcome::Found(c) = find_hamilton(&g, SearchBudget::default()).unwrap()
            else {
                panic!("dense graph should be Hamiltonian");
            };
            assert_eq!(verify_packing(&g, &single(c, &g)), Ok(()));
        }
    }

    #[test]
    fn packing_size_is_monotone_under_edge_addition() {
        let mut checked = 0;
        for trial in 0..40 {
            let seed = Seed::new(21).with_trial(trial);
            let small = gnp(8, 0.6, seed).unwrap();
            let extra = gnp(8, 0.3, seed.with_trial(trial + 1000)).unwrap();
            let big = small.union(&extra);
            let ham = |g: &Graph| {
                let r = pack_hamilton(g, trivial_bound(g), exhaustive()).unwrap();
                assert_ne!(r.status, PackStatus::BudgetExhausted);
                r.packing.cycles.len()
            };
            assert!(ham(&small) <= ham(&big), "trial {trial}");
            checked += 1;
        }
        assert!(checked >= 20);
    }

    #[test]
    fn restarts_return_verified_packings() {
        let budget = SearchBudget {
            max_nodes: 40,
            per_cycle_nodes: 40,
            restarts: 3,
        };
        let r = pack_hamilton(&Graph::complete(9), 4, budget).unwrap();
        assert!(r.attempts >= 1);
        assert_eq!(verify_packing(&Graph::complete(9), &r.packing), Ok(()));
    }
}
