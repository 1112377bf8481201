//! One-dimensional compaction of a grid placement.
//!
//! Nodes keep their relative order along the axis (every immediate
//! visibility pair becomes a separation constraint) while the squared
//! center distance over all graph edges is minimized. Solutions are floored
//! back onto the grid.

use crate::error::LayoutError;
use crate::grid::{bounding_box, Axis, Footprint, OccupancyGrid};
use crate::model::{GridGeometry, Topology};
use crate::solver::{self, SeparationProblem};

/// Summary of one compaction pass.
#[derive(Clone, Debug, PartialEq)]
pub struct Compaction {
    pub axis: Axis,
    pub gamma: f64,
    /// Visibility pairs that were turned into constraints.
    pub pairs: Vec<(usize, usize)>,
    /// Quadratic objective at the starting positions.
    pub objective_before: f64,
    /// Quadratic objective at the continuous optimum, before flooring.
    pub objective_after: f64,
}

fn target_span(grid: &OccupancyGrid, geometry: &GridGeometry, node: usize, axis: Axis, expand: bool) -> u32 {
    if expand {
        let e = geometry.extents[node];
        match axis {
            Axis::Horizontal => e.w,
            Axis::Vertical => e.h,
        }
    } else {
        grid.footprint(node).expect("node placed").span(axis)
    }
}

/// Solver output this close below an integer floors to that integer.
/// A common shift keeps every integral separation intact.
const SNAP: f64 = 1e-6;

/// Separation problem for compacting `grid` along `axis`.
///
/// Variables start at the current positions. With `expand`, offsets and gaps
/// use the node extents of `geometry`, otherwise the current footprint sizes;
/// the visibility order always comes from the current footprints. Every
/// visibility pair `(i, j)` gets `z_j - z_i >= gamma * span_i`.
pub fn build_constraints(
    grid: &OccupancyGrid,
    topo: &Topology,
    axis: Axis,
    gamma: f64,
    geometry: &GridGeometry,
    expand: bool,
) -> Result<(SeparationProblem, Vec<(usize, usize)>), LayoutError> {
    assert!(gamma >= 1.0, "gamma must be at least 1");
    let n = topo.node_count();
    let spans: Vec<u32> = (0..n)
        .map(|v| target_span(grid, geometry, v, axis, expand))
        .collect();
    let initial = (0..n)
        .map(|v| grid.footprint(v).expect("node placed").start(axis) as f64)
        .collect();
    let offsets = spans.iter().map(|&s| 0.5 * s as f64).collect();
    let mut problem = SeparationProblem::new(initial, offsets)?;
    for &(a, b) in topo.edges() {
        problem.add_pair(a, b)?;
    }
    let pairs = grid.visibility_scan(axis);
    for &(i, j) in &pairs {
        problem.add_constraint(i, j, gamma * spans[i] as f64)?;
    }
    Ok((problem, pairs))
}

/// Compacts `grid` along `axis` and re-registers every node at its floored position.
///
/// With `expand`, each node's span along `axis` becomes its extent from
/// `geometry`; the other dimension is left for a pass along the other axis.
pub fn compact(
    grid: &mut OccupancyGrid,
    topo: &Topology,
    axis: Axis,
    gamma: f64,
    expand: bool,
    geometry: &GridGeometry,
) -> Result<Compaction, LayoutError> {
    let (problem, pairs) = build_constraints(grid, topo, axis, gamma, geometry, expand)?;
    let z = solver::solve(&problem, solver::DEFAULT_TOLERANCE)?;
    let objective_before = problem.objective(problem.initial());
    let objective_after = problem.objective(&z);

    let n = topo.node_count();
    let mut starts: Vec<i64> = z.iter().map(|v| (v + SNAP).floor() as i64).collect();
    let spans: Vec<u32> = (0..n)
        .map(|v| target_span(grid, geometry, v, axis, expand))
        .collect();
    // Flooring preserves every separation; this pass only guards against
    // sub-ulp shortfalls in the continuous solution.
    let mut incoming = vec![Vec::new(); n];
    for &(i, j) in &pairs {
        incoming[j].push(i);
    }
    for v in problem.topological_order()? {
        for &i in &incoming[v] {
            starts[v] = starts[v].max(starts[i] + spans[i] as i64);
        }
    }
    close_gaps(&mut starts, &spans, gamma);

    let mut fps: Vec<Footprint> = (0..n).map(|v| grid.footprint(v).expect("node placed")).collect();
    for (v, fp) in fps.iter_mut().enumerate() {
        match axis {
            Axis::Horizontal => {
                fp.x = starts[v];
                fp.w = spans[v];
            }
            Axis::Vertical => {
                fp.y = starts[v];
                fp.h = spans[v];
            }
        }
    }
    // Coordinates drift over many iterations; the cell array follows the placement.
    let margin = bounding_box(&fps).map_or(0, |(_, _, w, h)| w.max(h) / 2 + 4);
    *grid = OccupancyGrid::from_footprints(&fps, margin)?;
    Ok(Compaction {
        axis,
        gamma,
        pairs,
        objective_before,
        objective_after,
    })
}

/// Removes empty stretches along the axis that no node needs: every start
/// beyond the reach `start + ⌈gamma · span⌉` of all earlier nodes is pulled
/// back to that reach. Order and all separations are kept; unconstrained
/// pieces (isolated nodes, separate components) are gathered.
fn close_gaps(starts: &mut [i64], spans: &[u32], gamma: f64) {
    let mut order: Vec<usize> = (0..starts.len()).collect();
    order.sort_by_key(|&v| (starts[v], v));
    let mut shift = 0;
    let mut reach: Option<i64> = None;
    for v in order {
        let mut s = starts[v] - shift;
        if let Some(r) = reach {
            if s > r {
                shift += s - r;
                s = r;
            }
        }
        starts[v] = s;
        let end = s + (gamma * spans[v] as f64).ceil() as i64;
        reach = Some(reach.map_or(end, |r| r.max(end)));
    }
}

/// Switches a unit-size placement to the real extents: horizontal then
/// vertical compaction with `gamma = 3`, each adopting the new span.
pub fn expand_to_real_sizes(
    grid: &mut OccupancyGrid,
    topo: &Topology,
    geometry: &GridGeometry,
) -> Result<(), LayoutError> {
    compact(grid, topo, Axis::Horizontal, 3.0, true, geometry)?;
    compact(grid, topo, Axis::Vertical, 3.0, true, geometry)?;
    Ok(())
}
