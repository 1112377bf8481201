//! Count straight-line crossings of a drawing.

use orthogrid::metrics::straight_line_crossings;
use orthogrid::model::Topology;

fn main() {
    // K4 drawn as a square with both diagonals: one crossing.
    let k4 = Topology::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]);
    let square = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
    let c = straight_line_crossings(&k4, &square);
    println!("K4 as a square: {} crossing(s), {:.3} per edge", c.count, c.per_edge);

    // Moving one corner inside the triangle of the others removes it.
    let planar = [(0.0, 0.0), (2.0, 0.0), (0.5, 0.5), (0.0, 2.0)];
    println!("K4 with a point inside: {} crossing(s)", straight_line_crossings(&k4, &planar).count);

    // Collinear touching segments do not count.
    let path = Topology::new(4, vec![(0, 1), (2, 3)]);
    let touching = [(0.0, 0.0), (1.0, 0.0), (1.0, 0.0), (2.0, 0.0)];
    println!("touching segments: {} crossing(s)", straight_line_crossings(&path, &touching).count);
}
