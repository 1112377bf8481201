//! Lay out a tree of mixed-size nodes and write it as SVG.
//!
//! Usage: `cargo run --example mixed_sizes_svg [OUTPUT.svg]`

use orthogrid::generators::{gen_random_tree, TreeModel};
use orthogrid::model::{Config, InitMode};
use orthogrid::placement::layout;
use orthogrid::render::svg;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "mixed_sizes.svg".into());
    let mut graph = gen_random_tree(40, 11, TreeModel::Recursive)?;
    for (k, node) in graph.nodes.iter_mut().enumerate() {
        node.w = [1.0, 3.0, 2.0, 6.0][k % 4];
        node.h = [1.0, 1.0, 2.0, 1.5][k % 4];
    }
    let result = layout(&graph, &Config::default().with_init(InitMode::ForceDirected))?;
    std::fs::write(&out, svg(&graph, &result.positions))?;
    println!(
        "wrote {out}: {} nodes, {} crossings, {:.0}x{:.0}",
        graph.nodes.len(),
        result.metrics.crossings,
        result.metrics.bbox_w,
        result.metrics.bbox_h
    );
    Ok(())
}
