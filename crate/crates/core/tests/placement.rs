use orthogrid::generators::{gen_partial_grid, gen_random_graph, gen_random_tree, TreeModel};
use orthogrid::grid::{Axis, OccupancyGrid};
use orthogrid::metrics::{straight_line_crossings, EdgeMetric};
use orthogrid::model::{Config, Extent, Graph, InitMode, NodeBox};
use orthogrid::placement::{layout, local_move, schedule, stage2_gamma, try_swap, AnnealState, LayoutResult};

const MODES: [InitMode; 3] = [InitMode::Random, InitMode::Bfs, InitMode::ForceDirected];

fn graph(sizes: &[(f64, f64)], edges: &[(usize, usize)]) -> Graph {
    Graph {
        nodes: sizes
            .iter()
            .enumerate()
            .map(|(i, &(w, h))| NodeBox::new(format!("v{i}"), w, h))
            .collect(),
        edges: edges.iter().map(|&(a, b)| (format!("v{a}"), format!("v{b}"))).collect(),
    }
}

/// Padded boxes disjoint, footprints large enough, drawing anchored at the origin,
/// reported metrics consistent with the positions.
fn assert_contract(g: &Graph, r: &LayoutResult, delta: f64) {
    let n = g.nodes.len();
    for (v, node) in g.nodes.iter().enumerate() {
        let fp = r.grid.footprint(v).unwrap();
        assert!(fp.w as f64 * r.geometry.cell >= node.w + delta - 1e-9);
        assert!(fp.h as f64 * r.geometry.cell >= node.h + delta - 1e-9);
    }
    for a in 0..n {
        for b in a + 1..n {
            let ((xa, ya), (xb, yb)) = (r.positions[a], r.positions[b]);
            let (na, nb) = (&g.nodes[a], &g.nodes[b]);
            let apart = xa + na.w + delta <= xb + 1e-9
                || xb + nb.w + delta <= xa + 1e-9
                || ya + na.h + delta <= yb + 1e-9
                || yb + nb.h + delta <= ya + 1e-9;
            assert!(apart, "nodes {a} and {b} too close");
        }
    }
    let min_x = r.positions.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let min_y = r.positions.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    assert_eq!((min_x, min_y), (0.0, 0.0));
    let topo = g.topology().unwrap();
    let centers: Vec<_> = r
        .positions
        .iter()
        .zip(&g.nodes)
        .map(|(&(x, y), b)| (x + b.w / 2.0, y + b.h / 2.0))
        .collect();
    assert_eq!(straight_line_crossings(&topo, &centers).count, r.metrics.crossings);
    let w = r.positions.iter().zip(&g.nodes).map(|(p, b)| p.0 + b.w).fold(0.0, f64::max);
    assert_eq!(r.metrics.bbox_w, w);
}

#[test]
fn schedules() {
    let s = schedule(&Config::default(), 400);
    assert_eq!((s.iterations, s.t0, s.compaction_interval), (1800, 40.0, 9));
    let s = schedule(&Config::default().with_init(InitMode::Bfs), 400);
    assert_eq!((s.iterations, s.compaction_interval), (200, 3));
    assert!((s.t0 - 4.0).abs() < 1e-12);
    let s = schedule(&Config::default().with_init(InitMode::ForceDirected), 400);
    assert_eq!((s.iterations, s.t0, s.compaction_interval), (100, 3.0, 3));
}

#[test]
fn stage_two_gamma_decreases_to_one() {
    let n = 1000;
    let values: Vec<f64> = (n / 2..n).map(|i| stage2_gamma(i, n)).collect();
    assert!(values.windows(2).all(|w| w[1] <= w[0]));
    assert!(values.iter().all(|&g| g >= 1.0));
    assert_eq!(*values.last().unwrap(), 1.0);
    assert_eq!(stage2_gamma(n - 31, n), 1.0 + 2.0 / 500.0);
}

#[test]
fn move_lands_beside_the_only_neighbor() {
    let g = graph(&[(1.0, 1.0); 2], &[(0, 1)]);
    let topo = g.topology().unwrap();
    let mut grid = OccupancyGrid::new(2);
    grid.place(0, 0, 0, Extent::UNIT).unwrap();
    grid.place(1, 8, 5, Extent::UNIT).unwrap();
    let metric = EdgeMetric::default();
    let mut state = AnnealState::new(0.01, 0.9, 3);
    assert!(local_move(1, &mut state, &mut grid, &topo, &metric));
    assert_eq!(metric.total_edge_length(&topo, &grid), 0.0);
    grid.check_invariants().unwrap();
}

#[test]
fn swap_untangles_a_path() {
    // path 0-1-2 placed as 1 0 2
    let g = graph(&[(1.0, 1.0); 3], &[(0, 1), (1, 2)]);
    let topo = g.topology().unwrap();
    let mut grid = OccupancyGrid::new(3);
    grid.place(1, 0, 0, Extent::UNIT).unwrap();
    grid.place(0, 1, 0, Extent::UNIT).unwrap();
    grid.place(2, 2, 0, Extent::UNIT).unwrap();
    let metric = EdgeMetric::default();
    assert!(try_swap(0, &mut grid, &topo, &metric));
    assert_eq!(metric.total_edge_length(&topo, &grid), 0.0);
    assert!(!try_swap(0, &mut grid, &topo, &metric));
}

#[test]
fn contract_holds_for_every_init_mode() {
    let graphs = [
        gen_partial_grid(49, 0.1, 3).unwrap(),
        gen_random_tree(40, 3, TreeModel::Prufer).unwrap(),
        gen_random_graph(40, 1.2, 3).unwrap(),
    ];
    for g in &graphs {
        for mode in MODES {
            let config = Config::default().with_init(mode).with_seed(11);
            let r = layout(g, &config).unwrap();
            assert_contract(g, &r, config.delta);
            if mode == InitMode::Random {
                assert!(r.metrics.total_edge_length < r.initial_edge_length);
            }
        }
    }
}

#[test]
fn mixed_sizes_and_separations() {
    let sizes = [(1.0, 1.0), (6.0, 2.0), (2.0, 9.0), (3.0, 3.0), (0.5, 0.5), (12.0, 1.0), (1.0, 1.0)];
    let edges = [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (5, 6), (6, 1)];
    let g = graph(&sizes, &edges);
    for delta in [0.0, 1.0, 4.5] {
        for mode in MODES {
            let config = Config {
                delta,
                ..Config::default().with_init(mode)
            };
            let r = layout(&g, &config).unwrap();
            assert_contract(&g, &r, delta);
        }
    }
}

#[test]
fn same_seed_same_layout() {
    let g = gen_random_graph(50, 1.2, 8).unwrap();
    for mode in MODES {
        let config = Config::default().with_init(mode).with_seed(5);
        let a = layout(&g, &config).unwrap();
        let b = layout(&g, &config).unwrap();
        assert_eq!(a.positions, b.positions);
        assert_eq!(a.metrics, b.metrics);
    }
    let a = layout(&g, &Config::default().with_seed(5)).unwrap();
    let c = layout(&g, &Config::default().with_seed(6)).unwrap();
    assert_ne!(a.positions, c.positions);
}

#[test]
fn iteration_override_is_used() {
    let g = gen_random_tree(30, 1, TreeModel::Recursive).unwrap();
    let config = Config {
        iteration_count_override: Some(4),
        ..Config::default()
    };
    let r = layout(&g, &config).unwrap();
    assert_eq!(r.schedule.iterations, 4);
    assert_contract(&g, &r, 1.0);
}

#[test]
fn bad_inputs_are_rejected() {
    assert!(layout(&Graph::default(), &Config::default()).is_err());
    let g = graph(&[(1.0, 1.0); 2], &[(0, 1)]);
    let negative = Config {
        delta: -1.0,
        ..Config::default()
    };
    assert!(layout(&g, &negative).is_err());
    let mut dangling = g.clone();
    dangling.edges.push(("v0".into(), "nowhere".into()));
    assert!(layout(&dangling, &Config::default()).is_err());
}

#[test]
fn final_placement_is_compact_in_both_directions() {
    let g = gen_partial_grid(64, 0.1, 2).unwrap();
    let r = layout(&g, &Config::default()).unwrap();
    for axis in [Axis::Horizontal, Axis::Vertical] {
        let mut starts: Vec<i64> = r.grid.footprints().iter().map(|f| f.unwrap().start(axis)).collect();
        starts.sort_unstable();
        starts.dedup();
        // no empty stripe wider than a handful of cells
        assert!(starts.windows(2).all(|w| w[1] - w[0] <= 4), "{axis:?}: {starts:?}");
    }
}
