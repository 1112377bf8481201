//! Multilevel spring embedder used to seed the grid.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::model::Topology;

pub const SWEEPS: usize = 200;
/// Coarsening stops once a matching removes less than this share of the nodes.
const MIN_REDUCTION: f64 = 0.1;
/// Graphs this small are not coarsened further.
const COARSEST: usize = 16;

/// Straight-line drawing with edges close to unit length.
///
/// The graph is coarsened by repeated random maximal matchings. The
/// coarsest graph starts from random positions; every finer level starts
/// from its coarse parent's position and is refined by `sweeps` spring
/// sweeps: all pairs repel with an inverse-square force, edges pull like
/// springs of rest length 1, and the maximum displacement per sweep cools
/// linearly. The result is rescaled so the mean edge length is exactly 1.
pub fn spring_embedding<R: Rng>(topo: &Topology, rng: &mut R, sweeps: usize) -> Vec<(f64, f64)> {
    let n = topo.node_count();
    let mut levels: Vec<(Vec<(usize, usize)>, Vec<usize>)> = Vec::new();
    let mut edges = topo.edges().to_vec();
    let mut count = n;
    while count > COARSEST {
        let (parent, coarse) = match_nodes(count, &edges, rng);
        if (count - coarse) as f64 <= MIN_REDUCTION * count as f64 {
            break;
        }
        let mut next: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(a, b)| (parent[a].min(parent[b]), parent[a].max(parent[b])))
            .filter(|&(a, b)| a != b)
            .collect();
        next.sort_unstable();
        next.dedup();
        levels.push((edges, parent));
        edges = next;
        count = coarse;
    }

    let side = (count as f64).sqrt().max(1.0);
    let mut pos: Vec<(f64, f64)> = (0..count)
        .map(|_| (rng.gen_range(0.0..side), rng.gen_range(0.0..side)))
        .collect();
    relax(&mut pos, &edges, sweeps, side / 4.0 + 1.0);
    while let Some((fine_edges, parent)) = levels.pop() {
        let scale = (parent.len() as f64 / pos.len() as f64).sqrt();
        let coarse = std::mem::take(&mut pos);
        pos = parent
            .iter()
            .map(|&p| {
                let (x, y) = coarse[p];
                (x * scale + rng.gen_range(-0.1..0.1), y * scale + rng.gen_range(-0.1..0.1))
            })
            .collect();
        relax(&mut pos, &fine_edges, sweeps, 1.0);
    }

    if !topo.edges().is_empty() {
        let mean: f64 = topo
            .edges()
            .iter()
            .map(|&(a, b)| (pos[a].0 - pos[b].0).hypot(pos[a].1 - pos[b].1))
            .sum::<f64>()
            / topo.edges().len() as f64;
        if mean > 1e-9 {
            for p in &mut pos {
                p.0 /= mean;
                p.1 /= mean;
            }
        }
    }
    pos
}

/// Random maximal matching: each node, in random order, pairs with its
/// lowest-numbered unmatched neighbor. Returns the coarse node of every
/// node and the number of coarse nodes.
fn match_nodes<R: Rng>(n: usize, edges: &[(usize, usize)], rng: &mut R) -> (Vec<usize>, usize) {
    let mut adjacency = vec![Vec::new(); n];
    for &(a, b) in edges {
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut parent = vec![usize::MAX; n];
    let mut coarse = 0;
    for v in order {
        if parent[v] != usize::MAX {
            continue;
        }
        parent[v] = coarse;
        if let Some(&w) = adjacency[v].iter().filter(|&&w| parent[w] == usize::MAX).min() {
            parent[w] = coarse;
        }
        coarse += 1;
    }
    (parent, coarse)
}

/// Spring sweeps with a displacement cap cooling linearly from `start_step`.
fn relax(pos: &mut [(f64, f64)], edges: &[(usize, usize)], sweeps: usize, start_step: f64) {
    let n = pos.len();
    if n < 2 {
        return;
    }
    let mut disp = vec![(0.0, 0.0); n];
    for sweep in 0..sweeps {
        disp.fill((0.0, 0.0));
        for i in 0..n {
            for j in i + 1..n {
                let (mut dx, mut dy) = (pos[i].0 - pos[j].0, pos[i].1 - pos[j].1);
                let mut d2 = dx * dx + dy * dy;
                if d2 < 1e-12 {
                    // Coincident points: separate along a fixed, index-dependent direction.
                    let angle = (i * 7919 + j) as f64;
                    (dx, dy) = (angle.cos() * 1e-3, angle.sin() * 1e-3);
                    d2 = 1e-6;
                }
                let d = d2.sqrt();
                let f = 1.0 / d2;
                let (fx, fy) = (f * dx / d, f * dy / d);
                disp[i].0 += fx;
                disp[i].1 += fy;
                disp[j].0 -= fx;
                disp[j].1 -= fy;
            }
        }
        for &(a, b) in edges {
            let (dx, dy) = (pos[b].0 - pos[a].0, pos[b].1 - pos[a].1);
            let d = (dx * dx + dy * dy).sqrt().max(1e-9);
            let f = d - 1.0;
            let (fx, fy) = (f * dx / d, f * dy / d);
            disp[a].0 += fx;
            disp[a].1 += fy;
            disp[b].0 -= fx;
            disp[b].1 -= fy;
        }
        let step = start_step * (1.0 - sweep as f64 / sweeps as f64) + 0.01;
        for (p, &(dx, dy)) in pos.iter_mut().zip(&disp) {
            let len = (dx * dx + dy * dy).sqrt();
            if len > 0.0 {
                let s = len.min(step) / len;
                p.0 += dx * s;
                p.1 += dy * s;
            }
        }
    }
}
