//! The benchmark graph generators and the JSON exchange format.

use orthogrid::generators::{gen_random_tree, GraphClass, TreeModel};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for class in GraphClass::ALL {
        for n in [25, 100, 400] {
            let g = class.generate(n, 1)?;
            println!("{class:>12} n={n:<4} -> {:>4} nodes {:>4} edges", g.nodes.len(), g.edges.len());
        }
    }

    let prufer = gen_random_tree(6, 2, TreeModel::Prufer)?;
    println!("\nPrüfer tree on 6 nodes:\n{}", prufer.to_json());
    Ok(())
}
