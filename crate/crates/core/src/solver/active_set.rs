//! Primal active-set finish for small problems.
//!
//! The working set is a forest of tight constraints; each tree is a rigid
//! block. Every step solves the block-level least-squares problem exactly
//! (minimum-norm through an SVD), walks towards it until a constraint blocks,
//! and drops the working constraint with the most negative multiplier once
//! the face is optimal.

use nalgebra::{DMatrix, DVector};

use super::{SeparationProblem, UnionFind};

const TIGHT: f64 = 1e-9;
const STATIONARY: f64 = 1e-12;
const MULTIPLIER_EPS: f64 = 1e-9;
const SINGULAR: f64 = 1e-9;

/// Improves a feasible `z` to an exact minimizer.
pub(super) fn finish(problem: &SeparationProblem, z: &mut [f64]) {
    let n = problem.len();
    let constraints = problem.constraints();
    let m = constraints.len();
    let mut working = vec![false; m];
    {
        let mut uf = UnionFind::new(n);
        for (k, c) in constraints.iter().enumerate() {
            if z[c.right] - z[c.left] - c.gap <= TIGHT && uf.union(c.left, c.right) {
                working[k] = true;
            }
        }
    }

    let mut grad = vec![0.0; n];
    for _ in 0..10 * (n + m) + 100 {
        let mut uf = UnionFind::new(n);
        for (k, c) in constraints.iter().enumerate() {
            if working[k] {
                uf.union(c.left, c.right);
            }
        }
        let mut block_id = vec![usize::MAX; n];
        let mut block_of = vec![0; n];
        let mut blocks = 0;
        for v in 0..n {
            let root = uf.find(v);
            if block_id[root] == usize::MAX {
                block_id[root] = blocks;
                blocks += 1;
            }
            block_of[v] = block_id[root];
        }

        problem.gradient_into(z, &mut grad);
        let mut hessian = DMatrix::<f64>::zeros(blocks, blocks);
        let mut reduced = DVector::<f64>::zeros(blocks);
        for v in 0..n {
            reduced[block_of[v]] += grad[v];
        }
        for &(i, j) in problem.pairs() {
            let (bi, bj) = (block_of[i], block_of[j]);
            if bi != bj {
                hessian[(bi, bi)] += 2.0;
                hessian[(bj, bj)] += 2.0;
                hessian[(bi, bj)] -= 2.0;
                hessian[(bj, bi)] -= 2.0;
            }
        }
        let step = match hessian.svd(true, true).solve(&reduced, SINGULAR) {
            Ok(s) => -s,
            Err(_) => return,
        };
        let scale = 1.0 + z.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        if step.amax() <= STATIONARY * scale {
            match most_negative_multiplier(problem, &working, &grad) {
                Some(k) => {
                    working[k] = false;
                    continue;
                }
                None => return,
            }
        }

        let mut alpha = 1.0;
        let mut blocking = None;
        for (k, c) in constraints.iter().enumerate() {
            if working[k] {
                continue;
            }
            let rate = step[block_of[c.right]] - step[block_of[c.left]];
            if rate < 0.0 {
                let slack = (z[c.right] - z[c.left] - c.gap).max(0.0);
                let limit = slack / -rate;
                if limit < alpha {
                    alpha = limit;
                    blocking = Some(k);
                }
            }
        }
        for v in 0..n {
            z[v] += alpha * step[block_of[v]];
        }
        if let Some(k) = blocking {
            working[k] = true;
        }
    }
}

/// Multiplier of each working constraint: the gradient summed over the part
/// of its tree on the constraint's right side.
fn most_negative_multiplier(
    problem: &SeparationProblem,
    working: &[bool],
    grad: &[f64],
) -> Option<usize> {
    let n = problem.len();
    let constraints = problem.constraints();
    let mut adjacency = vec![Vec::new(); n];
    for (k, c) in constraints.iter().enumerate() {
        if working[k] {
            adjacency[c.left].push((c.right, k));
            adjacency[c.right].push((c.left, k));
        }
    }
    let mut visited = vec![false; n];
    let mut parent = vec![(usize::MAX, usize::MAX); n];
    let mut subtree = grad.to_vec();
    let mut best = None;
    let mut best_value = -MULTIPLIER_EPS;
    for root in 0..n {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        let mut order = vec![];
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            order.push(u);
            for &(w, k) in &adjacency[u] {
                if !visited[w] {
                    visited[w] = true;
                    parent[w] = (u, k);
                    stack.push(w);
                }
            }
        }
        for &u in order.iter().rev() {
            let (p, k) = parent[u];
            if p == usize::MAX {
                continue;
            }
            let sum = subtree[u];
            subtree[p] += sum;
            let lambda = if constraints[k].right == u { sum } else { -sum };
            if lambda < best_value {
                best_value = lambda;
                best = Some(k);
            }
        }
    }
    best
}
