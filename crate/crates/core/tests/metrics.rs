use num::{BigRational, Signed, Zero};
use orthogrid::grid::{Footprint, OccupancyGrid};
use orthogrid::metrics::{straight_line_crossings, EdgeMetric, Overlay};
use orthogrid::model::{Extent, Topology};
use proptest::prelude::*;

fn exact(v: f64) -> BigRational {
    BigRational::from_float(v).expect("finite coordinate")
}

fn orientation(p: &(f64, f64), q: &(f64, f64), r: &(f64, f64)) -> BigRational {
    let (px, py) = (exact(p.0), exact(p.1));
    (exact(q.0) - &px) * (exact(r.1) - &py) - (exact(q.1) - &py) * (exact(r.0) - &px)
}

/// Pairs of edges without a shared node whose segments cross at a single interior point.
fn reference_crossings(edges: &[(usize, usize)], pts: &[(f64, f64)]) -> usize {
    let opposite = |a: &BigRational, b: &BigRational| {
        !a.is_zero() && !b.is_zero() && a.is_positive() != b.is_positive()
    };
    let mut count = 0;
    for (k, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[k + 1..] {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            let (p, q, r, s) = (&pts[a], &pts[b], &pts[c], &pts[d]);
            if opposite(&orientation(p, q, r), &orientation(p, q, s))
                && opposite(&orientation(r, s, p), &orientation(r, s, q))
            {
                count += 1;
            }
        }
    }
    count
}

fn simple_edges(n: usize, raw: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = raw
        .into_iter()
        .map(|(a, b)| (a % n, b % n))
        .filter(|(a, b)| a != b)
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    edges
}

#[test]
fn crossing_cases() {
    let square = [(0.0, 0.0), (2.0, 0.0), (2.0, 2.0), (0.0, 2.0)];
    let topo = Topology::new(4, vec![(0, 2), (1, 3)]);
    assert_eq!(straight_line_crossings(&topo, &square).count, 1);
    // sharing a node is never a crossing
    let topo = Topology::new(4, vec![(0, 2), (2, 1)]);
    assert_eq!(straight_line_crossings(&topo, &square).count, 0);
    // T-junction and collinear overlap
    let pts = [(0.0, 0.0), (4.0, 0.0), (2.0, 0.0), (2.0, 3.0), (1.0, 0.0), (6.0, 0.0)];
    let topo = Topology::new(6, vec![(0, 1), (2, 3), (4, 5)]);
    assert_eq!(straight_line_crossings(&topo, &pts).count, 0);
    let c = straight_line_crossings(&Topology::new(3, vec![]), &pts[..3]);
    assert_eq!((c.count, c.per_edge), (0, 0.0));
}

#[test]
fn nearly_parallel_segments_are_classified_exactly() {
    let eps = f64::EPSILON;
    let pts = [(0.0, 0.0), (1.0, 1.0), (0.5, 0.5 + eps), (3.0, 3.0 - 4.0 * eps), (0.1, 0.1), (1e9, 1e9 + 1.0)];
    let edges = vec![(0, 1), (2, 3), (4, 5)];
    let topo = Topology::new(6, edges.clone());
    assert_eq!(straight_line_crossings(&topo, &pts).count, reference_crossings(&edges, &pts));
}

proptest! {
    #[test]
    fn grid_drawings_match_exact_count(
        pts in prop::collection::vec((0i32..6, 0i32..6), 2..14),
        raw in prop::collection::vec((0usize..14, 0usize..14), 0..30),
    ) {
        let pts: Vec<(f64, f64)> = pts.iter().map(|&(x, y)| (x as f64 * 0.5, y as f64 * 0.5)).collect();
        let edges = simple_edges(pts.len(), raw);
        let topo = Topology::new(pts.len(), edges.clone());
        let c = straight_line_crossings(&topo, &pts);
        prop_assert_eq!(c.count, reference_crossings(&edges, &pts));
        if !edges.is_empty() {
            prop_assert_eq!(c.per_edge, c.count as f64 / edges.len() as f64);
        }
    }

    #[test]
    fn arbitrary_drawings_match_exact_count(
        pts in prop::collection::vec((-1e3f64..1e3, -1e3f64..1e3), 2..12),
        raw in prop::collection::vec((0usize..12, 0usize..12), 0..25),
    ) {
        let edges = simple_edges(pts.len(), raw);
        let topo = Topology::new(pts.len(), edges.clone());
        prop_assert_eq!(straight_line_crossings(&topo, &pts).count, reference_crossings(&edges, &pts));
    }

    #[test]
    fn swap_gain_is_the_change_in_total_length(
        cells in prop::collection::btree_set((0i64..6, 0i64..6), 2..10),
        raw in prop::collection::vec((0usize..10, 0usize..10), 1..20),
        pick in any::<prop::sample::Index>(),
    ) {
        let cells: Vec<_> = cells.into_iter().collect();
        let n = cells.len();
        let topo = Topology::new(n, simple_edges(n, raw));
        let mut grid = OccupancyGrid::new(n);
        for (v, &(x, y)) in cells.iter().enumerate() {
            grid.place(v, x, y, Extent::UNIT).unwrap();
        }
        let metric = EdgeMetric::default();
        let a = pick.index(n);
        for b in grid.adjacent_nodes(a) {
            let gain = metric.swap_gain(a, b, &topo, &grid).unwrap();
            let (fa, fb) = (grid.footprint(a).unwrap(), grid.footprint(b).unwrap());
            let swapped = Overlay::two(&grid, (a, fb), (b, fa));
            let change = metric.total_edge_length(&topo, &grid) - metric.total_edge_length(&topo, &swapped);
            prop_assert!((gain - change).abs() < 1e-9);
        }
    }
}

#[test]
fn distances_between_footprints() {
    let m = EdgeMetric::default();
    let at = |x, y, w, h| Footprint::new(x, y, Extent::new(w, h));
    assert_eq!(m.distance(&at(0, 0, 1, 1), &at(1, 0, 1, 1)), 0.0);
    assert_eq!(m.distance(&at(0, 0, 2, 2), &at(2, 0, 1, 2)), 0.0);
    assert_eq!(m.distance(&at(0, 0, 2, 2), &at(2, 1, 1, 2)), 0.0125);
    assert_eq!(m.distance(&at(0, 0, 1, 1), &at(0, 4, 1, 1)), 3.0);
    let d = m.distance(&at(0, 0, 1, 1), &at(4, 4, 1, 1));
    assert!((d - (18f64.sqrt() + 0.05 * 2.0)).abs() < 1e-12);
    assert_eq!(EdgeMetric::new(0.0).distance(&at(0, 0, 1, 1), &at(4, 4, 1, 1)), 18f64.sqrt());
}
