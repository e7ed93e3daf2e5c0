//! Exact minimum codes by branch and bound.
//!
//! Every class reduces to a hitting-set instance over the vertex set:
//!
//! * covering: each closed ball `N_r[v]` (open ball for total domination)
//!   must contain a codeword;
//! * separation of `u` and `v`: `N_r[u] Δ N_r[v]` must contain a codeword,
//!   extended by `{u, v}` when pairs containing a codeword are exempt.
//!
//! A code is valid iff it hits every constraint set, and all classes are
//! closed under taking supersets, so "a code of size ≤ k exists" is decided
//! by a depth-first search that branches on the elements of the most
//! constrained unhit set. Vertex sets are `u128` masks, so graphs are limited
//! to [`MAX_VERTICES`] vertices.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::hypercube_lid_lower_bound;
use crate::codes::{admits, Admissibility, ClassKind, Code, CodeClass, CodeError};
use crate::graph::Graph;

pub const MAX_VERTICES: usize = 128;

type Mask = u128;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("graph has {0} vertices; the exact solver handles at most {MAX_VERTICES}")]
    TooLarge(usize),
    #[error("graph admits no {class} code: vertices {u} and {v} have equal balls")]
    Inadmissible { class: CodeClass, u: usize, v: usize },
    #[error("vertex {0} is isolated, so no total dominating code exists")]
    Isolated(usize),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// Search limits. `None` means unlimited.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveBudget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
    /// A size at which a code is known (or expected) to exist; the search then
    /// walks downwards from it instead of upwards from the lower bound.
    pub size_hint: Option<usize>,
    /// Fix vertex 0 as a codeword on vertex-transitive generators.
    pub symmetry: bool,
}

impl Default for SolveBudget {
    fn default() -> Self {
        SolveBudget { max_nodes: None, max_time: None, size_hint: None, symmetry: true }
    }
}

impl SolveBudget {
    pub fn nodes(max_nodes: u64) -> Self {
        SolveBudget { max_nodes: Some(max_nodes), ..Default::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub class: CodeClass,
    /// Size of the witness. Optimal only when `exhausted_below` holds.
    pub optimal_size: usize,
    pub witness: Vec<usize>,
    pub nodes_explored: u64,
    /// Lower bound the search started from.
    pub lower_bound_used: usize,
    /// Largest size proven infeasible plus one.
    pub proven_lower_bound: usize,
    /// No valid code of size `optimal_size - 1` exists.
    pub exhausted_below: bool,
    pub symmetry_used: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Refutation {
    /// No valid code with at most `k` codewords exists.
    Refuted,
    Feasible { witness: Vec<usize> },
    /// Budget ran out first.
    Unknown,
}

/// The hitting-set form of a class on a graph.
#[derive(Debug, Clone)]
pub struct Constraints {
    pub n: usize,
    /// Inclusion-minimal constraint sets, smallest first.
    pub sets: Vec<Mask>,
}

fn to_mask(set: &crate::graph::VertexSet) -> Mask {
    set.ones().fold(0, |m, v| m | 1 << v)
}

fn mask_vertices(mask: Mask) -> Vec<usize> {
    (0..MAX_VERTICES).filter(|&v| mask >> v & 1 == 1).collect()
}

impl Constraints {
    pub fn build(graph: &Graph, class: CodeClass) -> Result<Constraints, SolveError> {
        let n = graph.n();
        if n > MAX_VERTICES {
            return Err(SolveError::TooLarge(n));
        }
        if class.r == 0 {
            return Err(CodeError::ZeroRadius.into());
        }
        if let Admissibility::Twins { u, v } = admits(graph, class.kind, class.r) {
            return Err(SolveError::Inadmissible { class, u, v });
        }
        let balls: Vec<Mask> = graph.balls(class.r).iter().map(to_mask).collect();
        let mut sets: Vec<Mask> = match class.kind {
            ClassKind::TotalDominating => (0..n).map(|v| balls[v] & !(1 << v)).collect(),
            _ => balls.clone(),
        };
        if let Some(scope) = class.kind.pair_scope() {
            let pairs: Vec<(usize, usize)> = if scope.adjacent_only {
                graph.edges().collect()
            } else {
                let far = graph.balls(2 * class.r);
                (0..n).flat_map(|u| far[u].ones().filter(move |&v| v > u).map(move |v| (u, v))).collect()
            };
            for (u, v) in pairs {
                let mut sep = balls[u] ^ balls[v];
                if scope.codewords_exempt {
                    sep |= 1 << u | 1 << v;
                }
                sets.push(sep);
            }
        }
        if let Some(v) = sets.iter().position(|&s| s == 0) {
            // Only reachable for total domination on an isolated vertex.
            return Err(SolveError::Isolated(v));
        }
        sets.sort_by_key(|&s| (s.count_ones(), s));
        sets.dedup();
        let mut minimal: Vec<Mask> = Vec::with_capacity(sets.len());
        for s in sets {
            if !minimal.iter().any(|&m| m & s == m) {
                minimal.push(s);
            }
        }
        Ok(Constraints { n, sets: minimal })
    }

    pub fn is_hit_by(&self, code: Mask) -> bool {
        self.sets.iter().all(|&s| s & code != 0)
    }

    /// Greedy packing of pairwise disjoint unhit sets: a lower bound on how
    /// many more codewords are needed.
    fn packing_bound(&self, chosen: Mask, forbidden: Mask) -> usize {
        let mut used: Mask = 0;
        let mut count = 0;
        for &s in &self.sets {
            if s & chosen != 0 {
                continue;
            }
            let avail = s & !forbidden;
            if avail & used == 0 {
                used |= avail;
                count += 1;
            }
        }
        count
    }

    /// Greedy hitting set: repeatedly take the vertex in the most unhit sets.
    pub fn greedy(&self) -> Mask {
        let mut chosen: Mask = 0;
        loop {
            let unhit: Vec<Mask> = self.sets.iter().copied().filter(|&s| s & chosen == 0).collect();
            if unhit.is_empty() {
                return chosen;
            }
            let best = (0..self.n)
                .max_by_key(|&v| (unhit.iter().filter(|&&s| s >> v & 1 == 1).count(), std::cmp::Reverse(v)))
                .expect("graph is nonempty");
            chosen |= 1 << best;
        }
    }
}

struct Search<'a> {
    constraints: &'a Constraints,
    nodes: u64,
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    aborted: bool,
}

impl Search<'_> {
    fn out_of_budget(&mut self) -> bool {
        if self.aborted {
            return true;
        }
        if self.max_nodes.is_some_and(|m| self.nodes >= m) {
            self.aborted = true;
        } else if self.nodes % 1024 == 0 && self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.aborted = true;
        }
        self.aborted
    }

    /// Finds a hitting set extending `chosen` with at most `remaining` more
    /// vertices, none of them in `forbidden`.
    fn dfs(&mut self, chosen: Mask, forbidden: Mask, remaining: usize) -> Option<Mask> {
        if self.out_of_budget() {
            return None;
        }
        self.nodes += 1;
        let mut branch: Option<Mask> = None;
        let mut used: Mask = 0;
        let mut packing = 0;
        for &s in &self.constraints.sets {
            if s & chosen != 0 {
                continue;
            }
            let avail = s & !forbidden;
            if avail == 0 {
                return None;
            }
            if branch.is_none_or(|b| avail.count_ones() < b.count_ones()) {
                branch = Some(avail);
            }
            if avail & used == 0 {
                used |= avail;
                packing += 1;
                if packing > remaining {
                    return None;
                }
            }
        }
        let Some(mut avail) = branch else {
            return Some(chosen);
        };
        let mut forbidden = forbidden;
        while avail != 0 {
            let bit = avail & avail.wrapping_neg();
            avail ^= bit;
            if let Some(found) = self.dfs(chosen | bit, forbidden, remaining - 1) {
                return Some(found);
            }
            if self.aborted {
                return None;
            }
            forbidden |= bit;
        }
        None
    }
}

struct Budgeted {
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    nodes: u64,
}

impl Budgeted {
    fn new(budget: &SolveBudget) -> Self {
        Budgeted { max_nodes: budget.max_nodes, deadline: budget.max_time.map(|t| Instant::now() + t), nodes: 0 }
    }

    fn run(&mut self, constraints: &Constraints, k: usize, fix_zero: bool) -> Refutation {
        let mut search = Search {
            constraints,
            nodes: 0,
            max_nodes: self.max_nodes.map(|m| m.saturating_sub(self.nodes)),
            deadline: self.deadline,
            aborted: false,
        };
        let found = if fix_zero {
            match k {
                0 => None,
                _ => search.dfs(1, 0, k - 1),
            }
        } else {
            search.dfs(0, 0, k)
        };
        self.nodes += search.nodes;
        match (found, search.aborted) {
            (Some(mask), _) => Refutation::Feasible { witness: mask_vertices(mask) },
            (None, true) => Refutation::Unknown,
            (None, false) => Refutation::Refuted,
        }
    }
}

fn uses_symmetry(graph: &Graph, budget: &SolveBudget) -> bool {
    budget.symmetry && graph.is_vertex_transitive()
}

/// Decides whether a valid code with at most `k` codewords exists.
pub fn refute_size(graph: &Graph, class: CodeClass, k: usize, budget: &SolveBudget) -> Result<Refutation, SolveError> {
    let constraints = Constraints::build(graph, class)?;
    let mut runner = Budgeted::new(budget);
    let outcome = runner.run(&constraints, k, uses_symmetry(graph, budget));
    if let Refutation::Feasible { witness } = &outcome {
        check_witness(graph, class, witness);
    }
    Ok(outcome)
}

fn check_witness(graph: &Graph, class: CodeClass, witness: &[usize]) {
    let code = Code::new(graph, witness.iter().copied()).expect("solver witnesses are nonempty");
    assert!(code.verify(class).valid, "solver produced an invalid {class} code {witness:?}");
}

/// Lower bound valid for every code of the class, before any search.
pub fn initial_lower_bound(graph: &Graph, class: CodeClass, constraints: &Constraints) -> usize {
    let n = graph.n();
    let max_ball = match class.kind {
        ClassKind::TotalDominating => graph.balls(class.r).iter().map(|b| b.count_ones(..) - 1).max(),
        _ => graph.balls(class.r).iter().map(|b| b.count_ones(..)).max(),
    }
    .unwrap_or(1)
    .max(1);
    let mut lb = n.div_ceil(max_ball).max(1);
    lb = lb.max(constraints.packing_bound(0, 0));
    if let (Some(dim), ClassKind::LocalIdentifying, 1) = (graph.hypercube_dim(), class.kind, class.r) {
        if let Ok(formula) = hypercube_lid_lower_bound(dim) {
            lb = lb.max(formula as usize);
        }
    }
    lb
}

/// Minimum-size code of the class.
///
/// Sizes are tried upwards from [`initial_lower_bound`] (or downwards from
/// `size_hint`); the first feasible size is optimal because every smaller one
/// was refuted. If the budget runs out the result carries a greedy witness
/// and `exhausted_below == false`.
pub fn solve_min(graph: &Graph, class: CodeClass, budget: &SolveBudget) -> Result<SolveResult, SolveError> {
    let constraints = Constraints::build(graph, class)?;
    let lower = initial_lower_bound(graph, class, &constraints);
    let symmetry = uses_symmetry(graph, budget);
    let mut runner = Budgeted::new(budget);

    let finish = |witness: Vec<usize>, proven: usize, nodes: u64| {
        check_witness(graph, class, &witness);
        let size = witness.len();
        SolveResult {
            class,
            optimal_size: size,
            witness,
            nodes_explored: nodes,
            lower_bound_used: lower,
            proven_lower_bound: proven,
            exhausted_below: proven >= size,
            symmetry_used: symmetry,
        }
    };
    let greedy = || mask_vertices(constraints.greedy());

    if let Some(hint) = budget.size_hint.filter(|&h| h >= lower) {
        let mut best = match runner.run(&constraints, hint, symmetry) {
            Refutation::Feasible { witness } => witness,
            Refutation::Unknown => return Ok(finish(greedy(), lower, runner.nodes)),
            // The hint was too small: fall back to the upward search.
            Refutation::Refuted => return upward(graph, class, &constraints, lower.max(hint + 1), lower, symmetry, runner),
        };
        loop {
            let k = best.len() - 1;
            if k < lower {
                return Ok(finish(best, lower, runner.nodes));
            }
            match runner.run(&constraints, k, symmetry) {
                Refutation::Feasible { witness } => best = witness,
                Refutation::Refuted => return Ok(finish(best, k + 1, runner.nodes)),
                Refutation::Unknown => return Ok(finish(best, lower, runner.nodes)),
            }
        }
    }
    upward(graph, class, &constraints, lower, lower, symmetry, runner)
}

fn upward(
    graph: &Graph,
    class: CodeClass,
    constraints: &Constraints,
    start: usize,
    lower: usize,
    symmetry: bool,
    mut runner: Budgeted,
) -> Result<SolveResult, SolveError> {
    let mut proven = start;
    for k in start..=graph.n() {
        match runner.run(constraints, k, symmetry) {
            Refutation::Refuted => proven = k + 1,
            Refutation::Feasible { witness } => {
                check_witness(graph, class, &witness);
                return Ok(SolveResult {
                    class,
                    optimal_size: witness.len(),
                    exhausted_below: proven >= witness.len(),
                    witness,
                    nodes_explored: runner.nodes,
                    lower_bound_used: lower,
                    proven_lower_bound: proven,
                    symmetry_used: symmetry,
                });
            }
            Refutation::Unknown => break,
        }
    }
    let witness = mask_vertices(constraints.greedy());
    check_witness(graph, class, &witness);
    Ok(SolveResult {
        class,
        optimal_size: witness.len(),
        exhausted_below: proven >= witness.len(),
        witness,
        nodes_explored: runner.nodes,
        lower_bound_used: lower,
        proven_lower_bound: proven,
        symmetry_used: symmetry,
    })
}
