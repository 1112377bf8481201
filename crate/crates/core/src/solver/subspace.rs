//! Minimization over the current face of the feasible set.
//!
//! Constraints that are tight at `z` glue variables into rigid blocks. The
//! objective restricted to block translations is an unconstrained quadratic,
//! minimized approximately by conjugate gradients; the step towards that
//! minimizer is then cut short at the first constraint it would violate.

use super::{SeparationProblem, UnionFind};

const MAX_CG_ITERATIONS: usize = 200;
/// Relative decrease of the squared residual at which conjugate gradients stop.
const CG_REDUCTION: f64 = 1e-8;

pub(super) struct FaceStep {
    block_of: Vec<usize>,
    reduced: Vec<f64>,
    u: Vec<f64>,
    r: Vec<f64>,
    p: Vec<f64>,
    hp: Vec<f64>,
    diag: Vec<f64>,
    /// Objective pairs between distinct blocks, as block indices.
    edges: Vec<(usize, usize)>,
}

impl FaceStep {
    pub(super) fn new(n: usize) -> Self {
        Self {
            block_of: vec![0; n],
            reduced: Vec::with_capacity(n),
            u: Vec::with_capacity(n),
            r: Vec::with_capacity(n),
            p: Vec::with_capacity(n),
            hp: Vec::with_capacity(n),
            diag: Vec::with_capacity(n),
            edges: Vec::new(),
        }
    }

    /// Moves the feasible point `z` towards the minimizer of its face.
    /// `grad` must hold the objective gradient at `z`.
    pub(super) fn apply(&mut self, problem: &SeparationProblem, z: &mut [f64], grad: &[f64], tight: f64) {
        let n = problem.len();
        let constraints = problem.constraints();
        let mut uf = UnionFind::new(n);
        for c in constraints {
            if z[c.right] - z[c.left] - c.gap <= tight {
                uf.union(c.left, c.right);
            }
        }
        let mut blocks = 0;
        let mut root_block = vec![usize::MAX; n];
        for v in 0..n {
            let root = uf.find(v);
            if root_block[root] == usize::MAX {
                root_block[root] = blocks;
                blocks += 1;
            }
            self.block_of[v] = root_block[root];
        }

        self.reduced.clear();
        self.reduced.resize(blocks, 0.0);
        for v in 0..n {
            self.reduced[self.block_of[v]] += grad[v];
        }
        // Translating a pair-connected group of blocks leaves the objective
        // unchanged; keep rounding noise out of that null space.
        let mut groups = UnionFind::new(blocks);
        for &(i, j) in problem.pairs() {
            groups.union(self.block_of[i], self.block_of[j]);
        }
        let group_of: Vec<usize> = (0..blocks).map(|b| groups.find(b)).collect();
        remove_group_means(&mut self.reduced, &group_of);

        // Jacobi-preconditioned conjugate gradients on H_B u = -g_B from u = 0.
        self.diag.clear();
        self.diag.resize(blocks, 0.0);
        self.edges.clear();
        for &(i, j) in problem.pairs() {
            let (bi, bj) = (self.block_of[i], self.block_of[j]);
            if bi != bj {
                self.edges.push((bi, bj));
                self.diag[bi] += 2.0;
                self.diag[bj] += 2.0;
            }
        }
        for d in &mut self.diag {
            *d = if *d > 0.0 { 1.0 / *d } else { 1.0 };
        }
        self.u.clear();
        self.u.resize(blocks, 0.0);
        self.r.clear();
        self.r.extend(self.reduced.iter().map(|g| -g));
        self.p.clear();
        self.p.extend(self.r.iter().zip(&self.diag).map(|(r, d)| r * d));
        let mut rz: f64 = self.r.iter().zip(&self.p).map(|(a, b)| a * b).sum();
        let mut rr: f64 = self.r.iter().map(|x| x * x).sum();
        let stop = rr * CG_REDUCTION;
        for _ in 0..MAX_CG_ITERATIONS.min(blocks) {
            if rr <= stop || rr == 0.0 || rz <= 0.0 {
                break;
            }
            self.hessian_times_p();
            let php: f64 = self.p.iter().zip(&self.hp).map(|(a, b)| a * b).sum();
            if php <= 0.0 {
                break;
            }
            let alpha = rz / php;
            for b in 0..blocks {
                self.u[b] += alpha * self.p[b];
                self.r[b] -= alpha * self.hp[b];
            }
            rr = self.r.iter().map(|x| x * x).sum();
            let next: f64 = self.r.iter().zip(&self.diag).map(|(r, d)| r * r * d).sum();
            let beta = next / rz;
            rz = next;
            for b in 0..blocks {
                self.p[b] = self.r[b] * self.diag[b] + beta * self.p[b];
            }
        }

        remove_group_means(&mut self.u, &group_of);

        let mut step = 1.0f64;
        for c in constraints {
            let (bl, br) = (self.block_of[c.left], self.block_of[c.right]);
            if bl == br {
                continue;
            }
            let rate = self.u[br] - self.u[bl];
            if rate < 0.0 {
                let slack = (z[c.right] - z[c.left] - c.gap).max(0.0);
                step = step.min(slack / -rate);
            }
        }
        if step > 0.0 {
            for v in 0..n {
                z[v] += step * self.u[self.block_of[v]];
            }
        }
    }

    fn hessian_times_p(&mut self) {
        let (p, hp) = (&self.p, &mut self.hp);
        hp.clear();
        hp.resize(p.len(), 0.0);
        for &(bi, bj) in &self.edges {
            let d = 2.0 * (p[bi] - p[bj]);
            hp[bi] += d;
            hp[bj] -= d;
        }
    }
}

fn remove_group_means(values: &mut [f64], group_of: &[usize]) {
    let mut sum = vec![0.0; values.len()];
    let mut count = vec![0usize; values.len()];
    for (b, &g) in group_of.iter().enumerate() {
        sum[g] += values[b];
        count[g] += 1;
    }
    for (b, &g) in group_of.iter().enumerate() {
        values[b] -= sum[g] / count[g] as f64;
    }
}
