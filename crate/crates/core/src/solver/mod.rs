//! Quadratic programming over one-dimensional separation constraints.
//!
//! Minimizes `sum over pairs (i, j) of (z_i + o_i - z_j - o_j)^2` subject to
//! `z_j - z_i >= d_ij`. The constraint graph must be acyclic.
//!
//! The solver runs gradient projection: a steepest-descent step with exact
//! line search, an exact Euclidean projection onto the feasible set computed
//! by merging variables into rigid blocks along active constraints, and a
//! second line search along the projected direction. Each sweep then
//! minimizes over the face reached (tight constraints held as equalities)
//! with conjugate gradients. Small problems are finished by an active-set
//! pass that solves each block-level face exactly.
//! Every connected component is finally shifted so that its smallest value
//! equals its smallest initial value, and constraints are made to hold
//! exactly in floating point.

mod active_set;
pub mod dump;
pub mod oracle;
mod projection;
mod subspace;

use std::collections::VecDeque;

use crate::error::SolverError;

pub use oracle::brute_force_solve;

/// Default relative objective change below which iteration stops.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Hard cap on gradient-projection sweeps.
pub const MAX_SWEEPS: usize = 1000;
/// Slack, relative to the coordinate magnitude, below which a constraint counts as tight.
const TIGHT: f64 = 1e-10;
/// Problems with at most this many variables get the exact active-set finish.
pub const EXACT_FINISH_LIMIT: usize = 32;

/// `z[right] - z[left] >= gap`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Separation {
    pub left: usize,
    pub right: usize,
    pub gap: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeparationProblem {
    initial: Vec<f64>,
    offsets: Vec<f64>,
    pairs: Vec<(usize, usize)>,
    constraints: Vec<Separation>,
}

impl SeparationProblem {
    /// Problem over `initial.len()` variables with the given center offsets.
    pub fn new(initial: Vec<f64>, offsets: Vec<f64>) -> Result<Self, SolverError> {
        if initial.len() != offsets.len() {
            return Err(SolverError::IndexOutOfRange {
                index: offsets.len(),
                len: initial.len(),
            });
        }
        if initial.iter().any(|v| !v.is_finite()) {
            return Err(SolverError::NonFinite("initial value"));
        }
        if offsets.iter().any(|v| !v.is_finite()) {
            return Err(SolverError::NonFinite("offset"));
        }
        Ok(Self {
            initial,
            offsets,
            pairs: Vec::new(),
            constraints: Vec::new(),
        })
    }

    fn check_index(&self, index: usize) -> Result<(), SolverError> {
        if index < self.len() {
            Ok(())
        } else {
            Err(SolverError::IndexOutOfRange {
                index,
                len: self.len(),
            })
        }
    }

    /// Adds the objective term `(z_i + o_i - z_j - o_j)^2`.
    pub fn add_pair(&mut self, i: usize, j: usize) -> Result<(), SolverError> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(SolverError::SelfPair(i));
        }
        self.pairs.push((i, j));
        Ok(())
    }

    /// Adds `z_right - z_left >= gap`.
    pub fn add_constraint(&mut self, left: usize, right: usize, gap: f64) -> Result<(), SolverError> {
        self.check_index(left)?;
        self.check_index(right)?;
        if !gap.is_finite() {
            return Err(SolverError::NonFinite("gap"));
        }
        if left == right {
            return Err(SolverError::CyclicConstraints);
        }
        self.constraints.push(Separation { left, right, gap });
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.initial.len()
    }

    pub fn is_empty(&self) -> bool {
        self.initial.is_empty()
    }

    pub fn initial(&self) -> &[f64] {
        &self.initial
    }

    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn constraints(&self) -> &[Separation] {
        &self.constraints
    }

    fn residual(&self, z: &[f64], (i, j): (usize, usize)) -> f64 {
        z[i] + self.offsets[i] - z[j] - self.offsets[j]
    }

    pub fn objective(&self, z: &[f64]) -> f64 {
        self.pairs
            .iter()
            .map(|&p| {
                let r = self.residual(z, p);
                r * r
            })
            .sum()
    }

    fn gradient_into(&self, z: &[f64], grad: &mut [f64]) {
        grad.fill(0.0);
        for &(i, j) in &self.pairs {
            let r = 2.0 * self.residual(z, (i, j));
            grad[i] += r;
            grad[j] -= r;
        }
    }

    /// `v^T H v` for the objective's Hessian `H`.
    fn curvature(&self, v: &[f64]) -> f64 {
        self.pairs
            .iter()
            .map(|&(i, j)| {
                let d = v[i] - v[j];
                2.0 * d * d
            })
            .sum()
    }

    /// Largest amount by which any constraint is violated (0 when feasible).
    pub fn max_violation(&self, z: &[f64]) -> f64 {
        self.constraints
            .iter()
            .map(|c| c.gap - (z[c.right] - z[c.left]))
            .fold(0.0, f64::max)
    }

    /// Whether every constraint holds exactly in floating point.
    pub fn is_feasible(&self, z: &[f64]) -> bool {
        self.constraints
            .iter()
            .all(|c| z[c.right] - z[c.left] >= c.gap)
    }

    /// Variables in an order compatible with every constraint.
    pub fn topological_order(&self) -> Result<Vec<usize>, SolverError> {
        let n = self.len();
        let mut indegree = vec![0usize; n];
        let mut out = vec![Vec::new(); n];
        for c in &self.constraints {
            indegree[c.right] += 1;
            out[c.left].push(c.right);
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &out[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        if order.len() == n {
            Ok(order)
        } else {
            Err(SolverError::CyclicConstraints)
        }
    }

    /// Connected components of the combined pair/constraint graph, as a label per variable.
    pub fn components(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.len()).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        let links = self
            .pairs
            .iter()
            .copied()
            .chain(self.constraints.iter().map(|c| (c.left, c.right)));
        for (a, b) in links {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        (0..self.len()).map(|v| find(&mut parent, v)).collect()
    }

    /// Shifts each component so its minimum equals its minimum initial value.
    pub fn anchor(&self, z: &mut [f64]) {
        let labels = self.components();
        let n = self.len();
        let mut min_now = vec![f64::INFINITY; n];
        let mut min_init = vec![f64::INFINITY; n];
        for v in 0..n {
            let l = labels[v];
            min_now[l] = min_now[l].min(z[v]);
            min_init[l] = min_init[l].min(self.initial[v]);
        }
        for v in 0..n {
            let l = labels[v];
            z[v] += min_init[l] - min_now[l];
        }
    }

    /// Raises variables in topological order until every constraint holds exactly.
    fn enforce(&self, order: &[usize], z: &mut [f64]) {
        let mut incoming = vec![Vec::new(); self.len()];
        for c in &self.constraints {
            incoming[c.right].push(*c);
        }
        for &v in order {
            for c in &incoming[v] {
                if z[v] - z[c.left] < c.gap {
                    z[v] = z[c.left] + c.gap;
                    while z[v] - z[c.left] < c.gap {
                        z[v] = z[v].next_up();
                    }
                }
            }
        }
    }
}

/// Minimizes the problem's objective subject to its separation constraints.
///
/// `tolerance` is the relative objective decrease per sweep below which the
/// iteration stops.
pub fn solve(problem: &SeparationProblem, tolerance: f64) -> Result<Vec<f64>, SolverError> {
    assert!(tolerance > 0.0, "tolerance must be positive");
    let order = problem.topological_order()?;
    let n = problem.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut projector = projection::Projector::new(problem, &order);
    let mut face = subspace::FaceStep::new(n);

    let mut z = problem.initial.clone();
    if problem.max_violation(&z) > 0.0 {
        z = projector.project(&z);
    }

    let mut grad = vec![0.0; n];
    let mut trial = vec![0.0; n];
    let mut projected = vec![0.0; n];
    let mut f = problem.objective(&z);
    for _ in 0..MAX_SWEEPS {
        problem.gradient_into(&z, &mut grad);
        let gg: f64 = grad.iter().map(|g| g * g).sum();
        let ghg = problem.curvature(&grad);
        if gg == 0.0 || ghg <= 0.0 {
            break;
        }
        let alpha = gg / ghg;
        for v in 0..n {
            trial[v] = z[v] - alpha * grad[v];
        }
        projector.project_into(&trial, &mut projected);
        for v in 0..n {
            trial[v] = projected[v] - z[v];
        }
        let slope: f64 = grad.iter().zip(&trial).map(|(g, d)| g * d).sum();
        if slope >= 0.0 {
            break;
        }
        let dhd = problem.curvature(&trial);
        let beta = if dhd > 0.0 { (-slope / dhd).min(1.0) } else { 1.0 };
        for v in 0..n {
            z[v] += beta * trial[v];
        }

        problem.gradient_into(&z, &mut grad);
        let scale = 1.0 + z.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        face.apply(problem, &mut z, &grad, TIGHT * scale);

        let next = problem.objective(&z);
        let decrease = f - next;
        f = next;
        if decrease <= tolerance * f.max(f64::MIN_POSITIVE) {
            break;
        }
    }

    if n <= EXACT_FINISH_LIMIT {
        active_set::finish(problem, &mut z);
    }
    problem.anchor(&mut z);
    problem.enforce(&order, &mut z);
    Ok(z)
}

/// Disjoint sets over `0..n` with path halving.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// Joins the sets of `a` and `b`; false if they were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}
