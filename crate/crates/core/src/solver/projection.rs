//! Exact Euclidean projection onto a set of separation constraints.
//!
//! Variables are grouped into blocks whose members are tied together by
//! active (tight) constraints and move as one rigid body; a block rests at
//! the mean of its members' targets. Violated constraints merge blocks,
//! active constraints with a negative Lagrange multiplier split them.

use super::{Separation, SeparationProblem};

const VIOLATION_EPS: f64 = 1e-10;
const MULTIPLIER_EPS: f64 = 1e-10;

/// Projection operator with scratch storage reused across calls.
pub(super) struct Projector<'a> {
    constraints: &'a [Separation],
    order: &'a [usize],
    incoming: Vec<Vec<usize>>,
    state: Blocks<'a>,
}

impl<'a> Projector<'a> {
    pub(super) fn new(problem: &'a SeparationProblem, order: &'a [usize]) -> Self {
        let n = problem.len();
        let mut incoming = vec![Vec::new(); n];
        for (k, c) in problem.constraints.iter().enumerate() {
            incoming[c.right].push(k);
        }
        Self {
            constraints: &problem.constraints,
            order,
            incoming,
            state: Blocks::new(&problem.constraints, n),
        }
    }

    /// Writes the point of the feasible set closest to `target` into `out`.
    pub(super) fn project_into(&mut self, target: &[f64], out: &mut [f64]) {
        let state = &mut self.state;
        state.reset(target);
        for &v in self.order {
            state.merge_left(state.block_of[v], &self.incoming);
        }
        state.fix_all();
        let limit = 4 * (target.len() + self.constraints.len()) + 64;
        for _ in 0..limit {
            let Some(c) = state.most_negative_multiplier() else {
                break;
            };
            state.split(c);
            state.fix_all();
        }
        for (v, o) in out.iter_mut().enumerate() {
            *o = state.value(v);
        }
    }

    pub(super) fn project(&mut self, target: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; target.len()];
        self.project_into(target, &mut out);
        out
    }
}

#[derive(Default)]
struct Block {
    members: Vec<usize>,
    active: Vec<usize>,
    pos: f64,
}

struct Blocks<'a> {
    constraints: &'a [Separation],
    target: Vec<f64>,
    block_of: Vec<usize>,
    offset: Vec<f64>,
    blocks: Vec<Block>,
    spare: Vec<usize>,
    /// Scratch: position of a variable inside its block's member list.
    local: Vec<usize>,
    /// Scratch: membership marks used while splitting.
    mark: Vec<bool>,
}

impl<'a> Blocks<'a> {
    fn new(constraints: &'a [Separation], n: usize) -> Self {
        Self {
            constraints,
            target: vec![0.0; n],
            block_of: vec![0; n],
            offset: vec![0.0; n],
            blocks: (0..n).map(|_| Block::default()).collect(),
            spare: Vec::new(),
            local: vec![0; n],
            mark: vec![false; n],
        }
    }

    /// Every variable in its own block at its target.
    fn reset(&mut self, target: &[f64]) {
        let n = target.len();
        self.target.copy_from_slice(target);
        self.offset.fill(0.0);
        self.spare.clear();
        self.blocks.truncate(n);
        for (v, block) in self.blocks.iter_mut().enumerate() {
            block.members.clear();
            block.members.push(v);
            block.active.clear();
            block.pos = target[v];
            self.block_of[v] = v;
        }
    }

    fn value(&self, v: usize) -> f64 {
        self.blocks[self.block_of[v]].pos + self.offset[v]
    }

    fn violation(&self, c: &Separation) -> f64 {
        c.gap - (self.value(c.right) - self.value(c.left))
    }

    fn settle(&mut self, b: usize) {
        let block = &self.blocks[b];
        let sum: f64 = block
            .members
            .iter()
            .map(|&v| self.target[v] - self.offset[v])
            .sum();
        self.blocks[b].pos = sum / block.members.len() as f64;
    }

    /// Joins the blocks on both sides of constraint `k`, making it tight.
    fn merge(&mut self, k: usize) -> usize {
        let c = self.constraints[k];
        let (bl, br) = (self.block_of[c.left], self.block_of[c.right]);
        debug_assert_ne!(bl, br);
        // Offset change that moves the right block into the left block's frame.
        let shift = self.offset[c.left] + c.gap - self.offset[c.right];
        let (keep, gone, delta) =
            if self.blocks[bl].members.len() >= self.blocks[br].members.len() {
                (bl, br, shift)
            } else {
                (br, bl, -shift)
            };
        let mut moved = std::mem::take(&mut self.blocks[gone]);
        for &v in &moved.members {
            self.offset[v] += delta;
            self.block_of[v] = keep;
        }
        let block = &mut self.blocks[keep];
        block.members.append(&mut moved.members);
        block.active.append(&mut moved.active);
        block.active.push(k);
        // Hand the emptied buffers back so their capacity is reused.
        self.blocks[gone] = moved;
        self.spare.push(gone);
        self.settle(keep);
        keep
    }

    /// Repeatedly merges `b` with the block behind its most violated incoming constraint.
    fn merge_left(&mut self, mut b: usize, incoming: &[Vec<usize>]) {
        loop {
            let mut worst = None;
            let mut worst_violation = VIOLATION_EPS;
            for &v in &self.blocks[b].members {
                for &k in &incoming[v] {
                    let c = &self.constraints[k];
                    if self.block_of[c.left] == b {
                        continue;
                    }
                    let viol = self.violation(c);
                    if viol > worst_violation {
                        worst_violation = viol;
                        worst = Some(k);
                    }
                }
            }
            match worst {
                Some(k) => b = self.merge(k),
                None => return,
            }
        }
    }

    /// Merges across the most violated constraint until none is violated.
    fn fix_all(&mut self) {
        loop {
            let mut worst = None;
            let mut worst_violation = VIOLATION_EPS;
            for (k, c) in self.constraints.iter().enumerate() {
                if self.block_of[c.left] == self.block_of[c.right] {
                    continue;
                }
                let viol = self.violation(c);
                if viol > worst_violation {
                    worst_violation = viol;
                    worst = Some(k);
                }
            }
            match worst {
                Some(k) => {
                    self.merge(k);
                }
                None => return,
            }
        }
    }

    /// Active constraint with the most negative multiplier, if any is below zero.
    fn most_negative_multiplier(&mut self) -> Option<usize> {
        let mut best = None;
        let mut best_value = -MULTIPLIER_EPS;
        let mut adjacency: Vec<Vec<(usize, usize)>> = Vec::new();
        let mut subtree = Vec::new();
        let mut parent = Vec::new();
        let mut visited = Vec::new();
        let mut order = Vec::new();
        let mut stack = Vec::new();
        for b in 0..self.blocks.len() {
            let block = &self.blocks[b];
            if block.active.is_empty() {
                continue;
            }
            for (i, &v) in block.members.iter().enumerate() {
                self.local[v] = i;
            }
            let m = block.members.len();
            adjacency.iter_mut().for_each(Vec::clear);
            adjacency.resize(m.max(adjacency.len()), Vec::new());
            for &k in &block.active {
                let c = &self.constraints[k];
                let (a, b) = (self.local[c.left], self.local[c.right]);
                adjacency[a].push((b, k));
                adjacency[b].push((a, k));
            }
            subtree.clear();
            subtree.extend(
                block
                    .members
                    .iter()
                    .map(|&v| self.value(v) - self.target[v]),
            );
            // Iterative DFS from member 0; children are folded into parents in reverse visit order.
            parent.clear();
            parent.resize(m, (usize::MAX, usize::MAX));
            visited.clear();
            visited.resize(m, false);
            order.clear();
            stack.clear();
            stack.push(0);
            visited[0] = true;
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
                let right_side = block.members[u] == self.constraints[k].right;
                let lambda = if right_side { sum } else { -sum };
                if lambda < best_value {
                    best_value = lambda;
                    best = Some(k);
                }
            }
        }
        best
    }

    /// Removes active constraint `k` from its block, leaving two blocks at rest.
    fn split(&mut self, k: usize) {
        let c = self.constraints[k];
        let b = self.block_of[c.left];
        let old = std::mem::take(&mut self.blocks[b]);
        let active: Vec<usize> = old.active.into_iter().filter(|&a| a != k).collect();

        // Members reachable from the left endpoint without crossing `k`.
        self.mark[c.left] = true;
        let mut stack = vec![c.left];
        while let Some(u) = stack.pop() {
            for &a in &active {
                let e = &self.constraints[a];
                let other = if e.left == u {
                    e.right
                } else if e.right == u {
                    e.left
                } else {
                    continue;
                };
                if !self.mark[other] {
                    self.mark[other] = true;
                    stack.push(other);
                }
            }
        }

        let r = self.spare.pop().unwrap_or_else(|| {
            self.blocks.push(Block::default());
            self.blocks.len() - 1
        });
        let (left_members, right_members): (Vec<_>, Vec<_>) =
            old.members.into_iter().partition(|&v| self.mark[v]);
        let (left_active, right_active): (Vec<_>, Vec<_>) = active
            .into_iter()
            .partition(|&a| self.mark[self.constraints[a].left]);
        for &v in &left_members {
            self.mark[v] = false;
        }
        for &v in &right_members {
            self.block_of[v] = r;
        }
        self.blocks[b] = Block {
            members: left_members,
            active: left_active,
            pos: 0.0,
        };
        self.blocks[r] = Block {
            members: right_members,
            active: right_active,
            pos: 0.0,
        };
        self.settle(b);
        self.settle(r);
    }
}
