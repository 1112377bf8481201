//! One horizontal compaction of a hand-made placement, with gamma 1 and 2.

use orthogrid::compaction::compact;
use orthogrid::grid::{Axis, OccupancyGrid};
use orthogrid::model::{Extent, GridGeometry, Topology};

fn show(grid: &OccupancyGrid, names: &[char]) {
    let (x0, y0, w, h) = grid.placement_bounds().expect("nodes placed");
    for y in y0..y0 + h as i64 {
        let row: String = (x0..x0 + w as i64)
            .map(|x| grid.occupant(x, y).map_or('.', |v| names[v]))
            .collect();
        println!("  {row}");
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let names = ['a', 'b', 'c', 'd', 'e'];
    let topo = Topology::new(5, vec![(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
    let geometry = GridGeometry {
        cell: 1.0,
        extents: vec![Extent::UNIT, Extent::new(2, 1), Extent::UNIT, Extent::UNIT, Extent::new(1, 2)],
    };
    let start = |grid: &mut OccupancyGrid| {
        grid.place(0, 0, 0, Extent::UNIT).unwrap();
        grid.place(1, 4, 0, Extent::new(2, 1)).unwrap();
        grid.place(2, 11, 0, Extent::UNIT).unwrap();
        grid.place(3, 9, 2, Extent::UNIT).unwrap();
        grid.place(4, 2, 1, Extent::new(1, 2)).unwrap();
    };

    let mut grid = OccupancyGrid::new(5);
    start(&mut grid);
    println!("before:");
    show(&grid, &names);
    for gamma in [1.0, 2.0] {
        let mut g = OccupancyGrid::new(5);
        start(&mut g);
        let report = compact(&mut g, &topo, Axis::Horizontal, gamma, false, &geometry)?;
        println!(
            "gamma {gamma}: {} constraints, objective {:.2} -> {:.2}",
            report.pairs.len(),
            report.objective_before,
            report.objective_after
        );
        show(&g, &names);
    }
    Ok(())
}
