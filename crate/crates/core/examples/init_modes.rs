//! Compare the three starting placements on the same partial grid.

use orthogrid::generators::{gen_partial_grid, DEFAULT_REMOVAL};
use orthogrid::model::{Config, InitMode};
use orthogrid::placement::layout;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let graph = gen_partial_grid(144, DEFAULT_REMOVAL, 3)?;
    println!("{} nodes, {} edges", graph.nodes.len(), graph.edges.len());
    println!("{:<15} {:>6} {:>10} {:>10} {:>9} {:>8}", "init", "iters", "start len", "final len", "crossings", "ms");
    for mode in [InitMode::Random, InitMode::Bfs, InitMode::ForceDirected] {
        let r = layout(&graph, &Config::default().with_init(mode).with_seed(3))?;
        println!(
            "{:<15} {:>6} {:>10.1} {:>10.1} {:>9} {:>8}",
            format!("{mode:?}"),
            r.schedule.iterations,
            r.initial_edge_length,
            r.metrics.total_edge_length,
            r.metrics.crossings,
            r.elapsed.as_millis()
        );
    }
    Ok(())
}
