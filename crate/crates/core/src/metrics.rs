//! Edge-length function, swap gain and straight-line crossing counts.
//!
//! Lengths are measured in grid-cell units on node footprints.

use robust::{orient2d, Coord};

use crate::error::GridError;
use crate::grid::{Footprint, OccupancyGrid};
use crate::model::Topology;

/// Read access to node footprints; `None` for nodes that are not placed.
pub trait PlacementView {
    fn footprint(&self, node: usize) -> Option<Footprint>;
}

impl PlacementView for [Footprint] {
    fn footprint(&self, node: usize) -> Option<Footprint> {
        self.get(node).copied()
    }
}

impl PlacementView for Vec<Footprint> {
    fn footprint(&self, node: usize) -> Option<Footprint> {
        self.get(node).copied()
    }
}

impl PlacementView for OccupancyGrid {
    fn footprint(&self, node: usize) -> Option<Footprint> {
        OccupancyGrid::footprint(self, node)
    }
}

/// A view with up to two nodes relocated.
pub struct Overlay<'a, V: ?Sized> {
    base: &'a V,
    moved: [(usize, Footprint); 2],
    len: usize,
}

impl<'a, V: PlacementView + ?Sized> Overlay<'a, V> {
    pub fn one(base: &'a V, node: usize, fp: Footprint) -> Self {
        Self {
            base,
            moved: [(node, fp); 2],
            len: 1,
        }
    }

    pub fn two(base: &'a V, a: (usize, Footprint), b: (usize, Footprint)) -> Self {
        Self {
            base,
            moved: [a, b],
            len: 2,
        }
    }
}

impl<V: PlacementView + ?Sized> PlacementView for Overlay<'_, V> {
    fn footprint(&self, node: usize) -> Option<Footprint> {
        self.moved[..self.len]
            .iter()
            .find(|(n, _)| *n == node)
            .map(|&(_, fp)| fp)
            .or_else(|| self.base.footprint(node))
    }
}

/// Node-to-node distance: the Euclidean gap between the two footprints plus
/// an alignment term that vanishes when the centers share a row or column.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeMetric {
    pub align_weight: f64,
}

impl Default for EdgeMetric {
    fn default() -> Self {
        Self {
            align_weight: 1.0 / 20.0,
        }
    }
}

impl EdgeMetric {
    pub fn new(align_weight: f64) -> Self {
        Self { align_weight }
    }

    pub fn distance(&self, a: &Footprint, b: &Footprint) -> f64 {
        let gap_x = (b.x - a.right()).max(a.x - b.right()).max(0) as f64;
        let gap_y = (b.y - a.bottom()).max(a.y - b.bottom()).max(0) as f64;
        let border = gap_x.hypot(gap_y);
        let (ax, ay) = a.center();
        let (bx, by) = b.center();
        let align_x = (ax - bx).abs() / (a.w + b.w) as f64;
        let align_y = (ay - by).abs() / (a.h + b.h) as f64;
        border + self.align_weight * align_x.min(align_y)
    }

    /// Distance between two placed nodes of `view`.
    pub fn node_distance<V: PlacementView + ?Sized>(&self, a: usize, b: usize, view: &V) -> f64 {
        let fa = view.footprint(a).expect("node a placed");
        let fb = view.footprint(b).expect("node b placed");
        self.distance(&fa, &fb)
    }

    pub fn total_edge_length<V: PlacementView + ?Sized>(&self, topo: &Topology, view: &V) -> f64 {
        topo.edges()
            .iter()
            .map(|&(a, b)| self.node_distance(a, b, view))
            .fold(0.0, |acc, d| acc + d)
    }

    /// Summed distance from `node`, put at `at`, to its placed neighbors.
    pub fn incident_edge_length<V: PlacementView + ?Sized>(
        &self,
        node: usize,
        at: &Footprint,
        topo: &Topology,
        view: &V,
    ) -> f64 {
        topo.neighbors(node)
            .iter()
            .filter_map(|&n| view.footprint(n))
            .map(|fp| self.distance(at, &fp))
            .sum()
    }

    /// Decrease of total edge length obtained by [`OccupancyGrid::swap`]; positive improves.
    pub fn swap_gain(
        &self,
        a: usize,
        b: usize,
        topo: &Topology,
        grid: &OccupancyGrid,
    ) -> Result<f64, GridError> {
        let (na, nb) = grid.swapped(a, b)?;
        let after = Overlay::two(grid, (a, na), (b, nb));
        Ok(self.star_length(a, b, topo, grid) - self.star_length(a, b, topo, &after))
    }

    /// Length of the edges touching `a` or `b`, counting an `a`-`b` edge once.
    fn star_length<V: PlacementView + ?Sized>(
        &self,
        a: usize,
        b: usize,
        topo: &Topology,
        view: &V,
    ) -> f64 {
        let from_a: f64 = topo
            .neighbors(a)
            .iter()
            .map(|&n| self.node_distance(a, n, view))
            .sum();
        let from_b: f64 = topo
            .neighbors(b)
            .iter()
            .filter(|&&n| n != a)
            .map(|&n| self.node_distance(b, n, view))
            .sum();
        from_a + from_b
    }
}

/// Footprint centers of every node in `view` (all must be placed).
pub fn grid_centers<V: PlacementView + ?Sized>(node_count: usize, view: &V) -> Vec<(f64, f64)> {
    (0..node_count)
        .map(|i| view.footprint(i).expect("node placed").center())
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Crossings {
    pub count: usize,
    /// `count / |E|`, zero for edgeless graphs.
    pub per_edge: f64,
}

/// Proper crossings among straight center-to-center edge segments.
///
/// Edge pairs sharing a node are skipped; touching, collinear overlap and
/// endpoint-on-segment contacts are not crossings. Orientation signs are exact.
pub fn straight_line_crossings(topo: &Topology, centers: &[(f64, f64)]) -> Crossings {
    let edges = topo.edges();
    if edges.is_empty() {
        return Crossings::default();
    }
    struct Seg {
        a: usize,
        b: usize,
        p: Coord<f64>,
        q: Coord<f64>,
        min_x: f64,
        max_x: f64,
        min_y: f64,
        max_y: f64,
    }
    let mut segs: Vec<Seg> = edges
        .iter()
        .map(|&(a, b)| {
            let (p, q) = (centers[a], centers[b]);
            Seg {
                a,
                b,
                p: Coord { x: p.0, y: p.1 },
                q: Coord { x: q.0, y: q.1 },
                min_x: p.0.min(q.0),
                max_x: p.0.max(q.0),
                min_y: p.1.min(q.1),
                max_y: p.1.max(q.1),
            }
        })
        .collect();
    segs.sort_by(|s, t| s.min_x.total_cmp(&t.min_x));

    let mut count = 0;
    for (i, s) in segs.iter().enumerate() {
        for t in &segs[i + 1..] {
            if t.min_x > s.max_x {
                break;
            }
            if t.min_y > s.max_y || s.min_y > t.max_y {
                continue;
            }
            if s.a == t.a || s.a == t.b || s.b == t.a || s.b == t.b {
                continue;
            }
            if proper_crossing(s.p, s.q, t.p, t.q) {
                count += 1;
            }
        }
    }
    Crossings {
        count,
        per_edge: count as f64 / edges.len() as f64,
    }
}

fn proper_crossing(p1: Coord<f64>, p2: Coord<f64>, q1: Coord<f64>, q2: Coord<f64>) -> bool {
    let opposite = |u: f64, v: f64| (u > 0.0 && v < 0.0) || (u < 0.0 && v > 0.0);
    opposite(orient2d(p1, p2, q1), orient2d(p1, p2, q2))
        && opposite(orient2d(q1, q2, p1), orient2d(q1, q2, p2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Extent;
    use proptest::prelude::*;

    fn unit(x: i64, y: i64) -> Footprint {
        Footprint::new(x, y, Extent::UNIT)
    }

    #[test]
    fn distance_examples() {
        let m = EdgeMetric::default();
        assert_eq!(m.distance(&unit(0, 0), &unit(3, 0)), 2.0);
        let d = m.distance(&unit(0, 0), &unit(3, 2));
        assert!((d - (5f64.sqrt() + 0.05)).abs() < 1e-12);
        assert!((d - 2.286_067_977_499_79).abs() < 1e-9);
        assert_eq!(m.distance(&unit(0, 0), &unit(1, 0)), 0.0);
    }

    #[test]
    fn distance_between_mixed_sizes() {
        let m = EdgeMetric::default();
        let big = Footprint::new(0, 0, Extent::new(3, 3));
        // Touching on the right, centers aligned vertically.
        assert_eq!(m.distance(&big, &unit(3, 1)), 0.0);
        // Touching at the corner: alignment term min(2/4, 2/4) / 20.
        assert!((m.distance(&big, &unit(3, 3)) - 0.025).abs() < 1e-12);
    }

    #[test]
    fn path_lengths() {
        let m = EdgeMetric::default();
        let topo = Topology::new(3, vec![(0, 1), (1, 2)]);
        let view = vec![unit(0, 0), unit(2, 0), unit(4, 0)];
        assert_eq!(m.total_edge_length(&topo, &view), 2.0);
        assert_eq!(m.total_edge_length(&Topology::new(3, vec![]), &view), 0.0);

        let star = Topology::new(3, vec![(0, 1), (0, 2)]);
        let view = vec![unit(5, 5), unit(2, 0), unit(0, 2)];
        assert_eq!(m.incident_edge_length(0, &unit(0, 0), &star, &view), 2.0);
        assert_eq!(m.incident_edge_length(1, &unit(9, 9), &Topology::new(3, vec![]), &view), 0.0);
    }

    #[test]
    fn swap_gain_examples() {
        let m = EdgeMetric::default();
        // a at (0,0) linked to c at (10,0); b at (9,0) isolated.
        let topo = Topology::new(3, vec![(0, 2)]);
        let mut g = OccupancyGrid::new(3);
        g.place(0, 0, 0, Extent::UNIT).unwrap();
        g.place(1, 9, 0, Extent::UNIT).unwrap();
        g.place(2, 10, 0, Extent::UNIT).unwrap();
        let gain = m.swap_gain(0, 1, &topo, &g).unwrap();
        let expected = m.distance(&unit(0, 0), &unit(10, 0)) - m.distance(&unit(9, 0), &unit(10, 0));
        assert_eq!(gain, expected);
        assert!(gain > 0.0);

        let none = Topology::new(3, vec![]);
        assert_eq!(m.swap_gain(0, 1, &none, &g).unwrap(), 0.0);

        // a-b edge counted once and unchanged by the swap.
        let pair = Topology::new(3, vec![(0, 1)]);
        assert_eq!(m.swap_gain(0, 1, &pair, &g).unwrap(), 0.0);
    }

    #[test]
    fn crossing_examples() {
        let parallel = Topology::new(4, vec![(0, 1), (2, 3)]);
        let c = straight_line_crossings(&parallel, &[(0.0, 0.0), (4.0, 0.0), (0.0, 1.0), (4.0, 1.0)]);
        assert_eq!(c.count, 0);

        let k4 = Topology::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let square = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
        let c = straight_line_crossings(&k4, &square);
        assert_eq!(c.count, 1);
        assert!((c.per_edge - 1.0 / 6.0).abs() < 1e-15);

        assert_eq!(straight_line_crossings(&Topology::new(2, vec![]), &square[..2]).per_edge, 0.0);
    }

    #[test]
    fn degenerate_contacts_are_not_crossings() {
        // Endpoint of one edge on the interior of another (T junction).
        let t = Topology::new(4, vec![(0, 1), (2, 3)]);
        let pts = [(0.0, 0.0), (2.0, 0.0), (1.0, 0.0), (1.0, 3.0)];
        assert_eq!(straight_line_crossings(&t, &pts).count, 0);
        // Collinear overlap.
        let pts = [(0.0, 0.0), (2.0, 0.0), (1.0, 0.0), (3.0, 0.0)];
        assert_eq!(straight_line_crossings(&t, &pts).count, 0);
    }

    proptest! {
        #[test]
        fn distance_is_symmetric_and_shift_invariant(
            a in (-20i64..20, -20i64..20, 1u32..5, 1u32..5),
            b in (-20i64..20, -20i64..20, 1u32..5, 1u32..5),
            shift in (-50i64..50, -50i64..50),
        ) {
            let m = EdgeMetric::default();
            let fa = Footprint { x: a.0, y: a.1, w: a.2, h: a.3 };
            let fb = Footprint { x: b.0, y: b.1, w: b.2, h: b.3 };
            let d = m.distance(&fa, &fb);
            prop_assert!(d >= 0.0);
            prop_assert_eq!(d, m.distance(&fb, &fa));
            let sa = Footprint { x: fa.x + shift.0, y: fa.y + shift.1, ..fa };
            let sb = Footprint { x: fb.x + shift.0, y: fb.y + shift.1, ..fb };
            prop_assert!((d - m.distance(&sa, &sb)).abs() < 1e-12);

            let touching = (fb.x - fa.right()).max(fa.x - fb.right()) <= 0
                && (fb.y - fa.bottom()).max(fa.y - fb.bottom()) <= 0;
            let (ca, cb) = (fa.center(), fb.center());
            let aligned = ca.0 == cb.0 || ca.1 == cb.1;
            prop_assert_eq!(d == 0.0, touching && aligned);
        }

        #[test]
        fn incident_lengths_double_count_total(
            cells in prop::collection::btree_set((0i64..8, 0i64..8), 6),
            edges in prop::collection::btree_set((0usize..6, 0usize..6), 0..12),
        ) {
            let m = EdgeMetric::default();
            let view: Vec<_> = cells.iter().map(|&(x, y)| unit(x, y)).collect();
            let edges: Vec<_> = edges.into_iter().filter(|(a, b)| a < b).collect();
            let topo = Topology::new(6, edges);
            let sum: f64 = (0..6).map(|i| m.incident_edge_length(i, &view[i], &topo, &view)).sum();
            prop_assert!((sum - 2.0 * m.total_edge_length(&topo, &view)).abs() < 1e-9);
        }
    }
}
