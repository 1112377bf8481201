//! Exhaustive reference solver for small separation problems.
//!
//! Every subset of constraints is tried as a set of equalities; each
//! equality-constrained least-squares problem is solved through its KKT
//! system. Its minimizers differ only by translations of the groups tied
//! together by pairs and equalities, so the groups are then shifted to meet
//! the remaining constraints where possible. The best feasible candidate wins.
//! Exponential in the constraint count, so only meant for checking [`solve`](super::solve).

use nalgebra::{DMatrix, DVector};

use super::{SeparationProblem, UnionFind};
use crate::error::SolverError;

pub const MAX_VARS: usize = 10;
pub const MAX_CONSTRAINTS: usize = 12;

const FEASIBILITY: f64 = 1e-9;
const CONSISTENCY: f64 = 1e-7;

pub fn brute_force_solve(problem: &SeparationProblem) -> Result<Vec<f64>, SolverError> {
    let n = problem.len();
    let constraints = problem.constraints();
    let m = constraints.len();
    if n > MAX_VARS || m > MAX_CONSTRAINTS {
        return Err(SolverError::OracleScope {
            vars: n,
            constraints: m,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }

    // Normal equations of the objective: 2 A^T A z = 2 A^T b.
    let mut normal = DMatrix::<f64>::zeros(n, n);
    let mut rhs = DVector::<f64>::zeros(n);
    let offsets = problem.offsets();
    for &(i, j) in problem.pairs() {
        let b = offsets[j] - offsets[i];
        normal[(i, i)] += 2.0;
        normal[(j, j)] += 2.0;
        normal[(i, j)] -= 2.0;
        normal[(j, i)] -= 2.0;
        rhs[i] += 2.0 * b;
        rhs[j] -= 2.0 * b;
    }

    let mut best: Option<(f64, Vec<f64>)> = None;
    for mask in 0u32..(1 << m) {
        let active: Vec<_> = (0..m).filter(|k| mask & (1 << k) != 0).collect();
        let size = n + active.len();
        let mut kkt = DMatrix::<f64>::zeros(size, size);
        let mut target = DVector::<f64>::zeros(size);
        kkt.view_mut((0, 0), (n, n)).copy_from(&normal);
        target.rows_mut(0, n).copy_from(&rhs);
        for (row, &k) in active.iter().enumerate() {
            let c = &constraints[k];
            kkt[(n + row, c.right)] = 1.0;
            kkt[(n + row, c.left)] = -1.0;
            kkt[(c.right, n + row)] = 1.0;
            kkt[(c.left, n + row)] = -1.0;
            target[n + row] = c.gap;
        }
        // Solve for the displacement from the start, so that among equal
        // minimizers the one nearest to it is found.
        let mut start = DVector::<f64>::zeros(size);
        start.rows_mut(0, n).copy_from_slice(problem.initial());
        let residual = &target - &kkt * &start;
        let Ok(step) = kkt.clone().svd(true, true).solve(&residual, 1e-10) else {
            continue;
        };
        if (&kkt * &step - &residual).amax() > CONSISTENCY {
            continue;
        }
        let mut z: Vec<f64> = (0..n).map(|v| problem.initial()[v] + step[v]).collect();
        if !shift_groups(problem, &active, &mut z) || problem.max_violation(&z) > FEASIBILITY {
            continue;
        }
        let f = problem.objective(&z);
        if best.as_ref().map_or(true, |(bf, _)| f < *bf - 1e-12) {
            best = Some((f, z));
        }
    }

    let (_, mut z) = best.ok_or(SolverError::CyclicConstraints)?;
    problem.anchor(&mut z);
    Ok(z)
}

/// Translates the rigid groups of `z` (joined by pairs and the `active`
/// constraints) so every other constraint holds, using the smallest
/// non-negative shifts. False when no translation works.
fn shift_groups(problem: &SeparationProblem, active: &[usize], z: &mut [f64]) -> bool {
    let n = problem.len();
    let constraints = problem.constraints();
    let mut uf = UnionFind::new(n);
    for &(i, j) in problem.pairs() {
        uf.union(i, j);
    }
    for &k in active {
        uf.union(constraints[k].left, constraints[k].right);
    }
    let group: Vec<usize> = (0..n).map(|v| uf.find(v)).collect();
    // t[h] - t[g] >= need for every constraint from group g to group h.
    let mut arcs = Vec::new();
    for c in constraints {
        let need = c.gap - (z[c.right] - z[c.left]);
        let (g, h) = (group[c.left], group[c.right]);
        if g == h {
            if need > FEASIBILITY {
                return false;
            }
        } else {
            arcs.push((g, h, need));
        }
    }
    let mut shift = vec![0.0f64; n];
    for round in 0..=n {
        let mut changed = false;
        for &(g, h, need) in &arcs {
            if shift[g] + need > shift[h] + 1e-12 {
                shift[h] = shift[g] + need;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        if round == n {
            return false;
        }
    }
    for v in 0..n {
        z[v] += shift[group[v]];
    }
    true
}
