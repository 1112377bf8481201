//! Annealing node placement on the grid.
//!
//! The first half of the iterations treats every node as 1×1; a pair of
//! expanding compactions then switches to the real extents for the second
//! half. Each iteration moves every node towards the median of its
//! neighbors (plus a random displacement that shrinks with the temperature),
//! tries a swap for nodes that stayed put, and periodically compacts.

mod force;
mod init;
mod schedule;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use force::{spring_embedding, SWEEPS};
pub use init::{init_bfs, init_force_directed, init_random};
pub use schedule::{schedule, stage2_gamma, Schedule};

use crate::compaction::{compact, expand_to_real_sizes};
use crate::error::LayoutError;
use crate::grid::{Axis, Footprint, OccupancyGrid};
use crate::metrics::{straight_line_crossings, EdgeMetric};
use crate::model::{Config, Extent, Graph, GridGeometry, InitMode, Topology};

/// Mutable annealing state shared by the moves of one run.
#[derive(Clone, Debug)]
pub struct AnnealState {
    pub temperature: f64,
    pub cooling: f64,
    pub iteration: u32,
    pub compaction_dir: Axis,
    pub stage: u8,
    pub rng: ChaCha8Rng,
}

impl AnnealState {
    pub fn new(temperature: f64, cooling: f64, seed: u64) -> Self {
        Self {
            temperature,
            cooling,
            iteration: 0,
            compaction_dir: Axis::Horizontal,
            stage: 1,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct LayoutMetrics {
    /// Total edge length of the final grid placement, in cells.
    pub total_edge_length: f64,
    pub crossings: usize,
    pub avg_crossings_per_edge: f64,
    pub bbox_w: f64,
    pub bbox_h: f64,
}

#[derive(Clone, Debug)]
pub struct LayoutResult {
    /// Top-left corner of each node in real units; the drawing starts at (0, 0).
    pub positions: Vec<(f64, f64)>,
    pub grid: OccupancyGrid,
    pub geometry: GridGeometry,
    pub metrics: LayoutMetrics,
    /// Total edge length right after initialization, in cells.
    pub initial_edge_length: f64,
    pub schedule: Schedule,
    pub elapsed: Duration,
}

/// Lays out `graph` according to `config`.
pub fn layout(graph: &Graph, config: &Config) -> Result<LayoutResult, LayoutError> {
    let started = Instant::now();
    config.check()?;
    let topo = graph.topology()?;
    let geometry = GridGeometry::new(&graph.nodes, config.delta)?;
    let metric = EdgeMetric::new(config.align_weight);
    let n = topo.node_count();
    let plan = schedule(config, n);
    let mut state = AnnealState::new(plan.t0, plan.cooling(config.t_min), config.seed);

    let mut grid = OccupancyGrid::new(n);
    match config.init_mode {
        InitMode::Random => init_random(&mut grid, &mut state.rng),
        InitMode::Bfs => init_bfs(&mut grid, &topo, &metric, &mut state.rng),
        InitMode::ForceDirected => init_force_directed(&mut grid, &topo, &mut state.rng),
    }
    let initial_edge_length = metric.total_edge_length(&topo, &grid);

    let half = plan.iterations / 2;
    for i in 0..plan.iterations {
        state.iteration = i;
        if i == half {
            expand_to_real_sizes(&mut grid, &topo, &geometry)?;
            state.stage = 2;
        }
        for node in 0..n {
            if !local_move(node, &mut state, &mut grid, &topo, &metric) {
                try_swap(node, &mut grid, &topo, &metric);
            }
        }
        if i % plan.compaction_interval == 0 {
            let gamma = if state.stage == 1 {
                3.0
            } else {
                stage2_gamma(i, plan.iterations)
            };
            compact(&mut grid, &topo, state.compaction_dir, gamma, false, &geometry)?;
            state.compaction_dir = state.compaction_dir.flip();
        }
        state.temperature *= state.cooling;
    }

    let positions = real_positions(&grid, &geometry);
    let centers: Vec<(f64, f64)> = positions
        .iter()
        .zip(&graph.nodes)
        .map(|(&(x, y), b)| (x + b.w / 2.0, y + b.h / 2.0))
        .collect();
    let crossings = straight_line_crossings(&topo, &centers);
    let (bbox_w, bbox_h) = positions
        .iter()
        .zip(&graph.nodes)
        .fold((0.0f64, 0.0f64), |(w, h), (&(x, y), b)| (w.max(x + b.w), h.max(y + b.h)));
    let metrics = LayoutMetrics {
        total_edge_length: metric.total_edge_length(&topo, &grid),
        crossings: crossings.count,
        avg_crossings_per_edge: crossings.per_edge,
        bbox_w,
        bbox_h,
    };
    Ok(LayoutResult {
        positions,
        grid,
        geometry,
        metrics,
        initial_edge_length,
        schedule: plan,
        elapsed: started.elapsed(),
    })
}

/// Footprint corners scaled by the cell size, shifted so the smallest corner is (0, 0).
fn real_positions(grid: &OccupancyGrid, geometry: &GridGeometry) -> Vec<(f64, f64)> {
    let fps: Vec<Footprint> = grid.footprints().iter().map(|f| f.expect("node placed")).collect();
    let min_x = fps.iter().map(|f| f.x).min().unwrap_or(0);
    let min_y = fps.iter().map(|f| f.y).min().unwrap_or(0);
    fps.iter()
        .map(|f| {
            (
                (f.x - min_x) as f64 * geometry.cell,
                (f.y - min_y) as f64 * geometry.cell,
            )
        })
        .collect()
}

/// Per-axis lower median of `points`.
pub(crate) fn lower_median(points: &[(f64, f64)]) -> Option<(f64, f64)> {
    if points.is_empty() {
        return None;
    }
    let mid = (points.len() - 1) / 2;
    let mut xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    let mut ys: Vec<f64> = points.iter().map(|p| p.1).collect();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    Some((xs[mid], ys[mid]))
}

/// Position near the top-left `target` with the least incident edge length;
/// ties go to the position closest to the rounded target, then the smallest (y, x).
pub(crate) fn best_candidate(
    grid: &OccupancyGrid,
    topo: &Topology,
    metric: &EdgeMetric,
    node: usize,
    target: (f64, f64),
    extent: Extent,
) -> (i64, i64) {
    let rx = (target.0 + 0.5).floor() as i64;
    let ry = (target.1 + 0.5).floor() as i64;
    let mut best = None;
    let mut best_key = (f64::INFINITY, i64::MAX);
    for (x, y) in grid.free_places_near(target, extent, Some(node)) {
        let len = metric.incident_edge_length(node, &Footprint::new(x, y, extent), topo, grid);
        let key = (len, (x - rx).abs() + (y - ry).abs());
        if key.0 < best_key.0 || (key.0 == best_key.0 && key.1 < best_key.1) {
            best_key = key;
            best = Some((x, y));
        }
    }
    best.expect("unbounded grid always has room")
}

/// Moves `node` near the median of its neighbors, displaced at random by
/// up to the temperature times the node's extent. Returns whether it moved.
pub fn local_move(
    node: usize,
    state: &mut AnnealState,
    grid: &mut OccupancyGrid,
    topo: &Topology,
    metric: &EdgeMetric,
) -> bool {
    let current = grid.footprint(node).expect("node placed");
    let extent = current.extent();
    let centers: Vec<(f64, f64)> = topo
        .neighbors(node)
        .iter()
        .filter_map(|&w| grid.footprint(w))
        .map(|fp| fp.center())
        .collect();
    let (mx, my) = lower_median(&centers).unwrap_or_else(|| current.center());
    let rx = state.temperature * extent.w as f64;
    let ry = state.temperature * extent.h as f64;
    let x = mx + state.rng.gen_range(-rx..rx);
    let y = my + state.rng.gen_range(-ry..ry);
    let target = (x - extent.w as f64 / 2.0, y - extent.h as f64 / 2.0);
    let (bx, by) = best_candidate(grid, topo, metric, node, target, extent);
    if (bx, by) == (current.x, current.y) {
        return false;
    }
    grid.place(node, bx, by, extent).expect("candidate is free");
    true
}

/// Swaps below this gain are treated as rounding noise.
const SWAP_EPS: f64 = 1e-9;

/// Executes the first improving admissible swap of `node` with an adjacent
/// node, scanning neighbors by ascending id. Returns whether one happened.
pub fn try_swap(node: usize, grid: &mut OccupancyGrid, topo: &Topology, metric: &EdgeMetric) -> bool {
    for other in grid.adjacent_nodes(node) {
        if let Ok(gain) = metric.swap_gain(node, other, topo, grid) {
            if gain > SWAP_EPS {
                grid.swap(node, other).expect("swap was admissible");
                return true;
            }
        }
    }
    false
}
