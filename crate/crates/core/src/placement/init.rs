//! Starting placements; every node gets a 1×1 footprint.

use std::collections::VecDeque;

use rand::seq::index;
use rand::Rng;

use super::force;
use crate::grid::OccupancyGrid;
use crate::metrics::EdgeMetric;
use crate::model::{Extent, Topology};

/// Each node in a distinct, uniformly chosen cell of the grid's current bounds.
pub fn init_random<R: Rng>(grid: &mut OccupancyGrid, rng: &mut R) {
    let (x0, y0, width, height) = grid.bounds();
    let n = grid.node_count();
    for (node, cell) in index::sample(rng, width * height, n).into_iter().enumerate() {
        let (x, y) = ((cell % width) as i64, (cell / width) as i64);
        grid.place(node, x0 + x, y0 + y, Extent::UNIT)
            .expect("sampled cells are distinct");
    }
}

/// Nodes in breadth-first order, each at the free cell nearest its placed
/// neighbors. Every component starts from a randomly chosen node placed as
/// close to the grid center as possible.
pub fn init_bfs<R: Rng>(grid: &mut OccupancyGrid, topo: &Topology, metric: &EdgeMetric, rng: &mut R) {
    let n = topo.node_count();
    let mut seen = vec![false; n];
    let mut unplaced: Vec<usize> = (0..n).collect();
    let mut queue = VecDeque::new();
    while !unplaced.is_empty() {
        let start = unplaced[rng.gen_range(0..unplaced.len())];
        seen[start] = true;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            place_near_neighbors(grid, topo, metric, v);
            for &w in topo.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        unplaced.retain(|&v| !grid.is_placed(v));
    }
}

fn place_near_neighbors(grid: &mut OccupancyGrid, topo: &Topology, metric: &EdgeMetric, v: usize) {
    let centers: Vec<(f64, f64)> = topo
        .neighbors(v)
        .iter()
        .filter_map(|&w| grid.footprint(w))
        .map(|fp| fp.center())
        .collect();
    let target = match super::lower_median(&centers) {
        Some((cx, cy)) => (cx - 0.5, cy - 0.5),
        None => {
            let (cx, cy) = grid.center_cell();
            (cx as f64, cy as f64)
        }
    };
    let (x, y) = super::best_candidate(grid, topo, metric, v, target, Extent::UNIT);
    grid.place(v, x, y, Extent::UNIT).expect("candidate is free");
}

/// Rounded spring-embedder drawing, centered in the grid. Nodes that round
/// onto an occupied cell take the nearest free one, in node order.
pub fn init_force_directed<R: Rng>(grid: &mut OccupancyGrid, topo: &Topology, rng: &mut R) {
    let pos = force::spring_embedding(topo, rng, force::SWEEPS);
    let n = pos.len();
    let (mx, my) = pos
        .iter()
        .fold((0.0, 0.0), |(sx, sy), p| (sx + p.0 / n as f64, sy + p.1 / n as f64));
    let (cx, cy) = grid.center_cell();
    for (v, p) in pos.iter().enumerate() {
        let target = (cx as f64 + p.0 - mx, cy as f64 + p.1 - my);
        let (x, y) = nearest_free(grid, target, Extent::UNIT);
        grid.place(v, x, y, Extent::UNIT).expect("candidate is free");
    }
}

/// Free top-left position closest (Manhattan) to the rounded `target`; ties by (y, x).
fn nearest_free(grid: &OccupancyGrid, target: (f64, f64), extent: Extent) -> (i64, i64) {
    let rx = (target.0 + 0.5).floor() as i64;
    let ry = (target.1 + 0.5).floor() as i64;
    grid.free_places_near(target, extent, None)
        .into_iter()
        .min_by_key(|&(x, y)| (x - rx).abs() + (y - ry).abs())
        .expect("unbounded grid always has room")
}
