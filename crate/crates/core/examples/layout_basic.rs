//! Lay out a small graph with nodes of different sizes and print the result.

use orthogrid::model::{Config, Graph, NodeBox};
use orthogrid::placement::layout;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let graph = Graph {
        nodes: vec![
            NodeBox::new("db", 4.0, 2.0),
            NodeBox::new("api", 3.0, 1.0),
            NodeBox::new("web", 3.0, 1.0),
            NodeBox::new("cache", 2.0, 1.0),
            NodeBox::new("queue", 2.0, 2.0),
            NodeBox::new("worker", 3.0, 1.5),
        ],
        edges: vec![
            ("web".into(), "api".into()),
            ("api".into(), "db".into()),
            ("api".into(), "cache".into()),
            ("api".into(), "queue".into()),
            ("queue".into(), "worker".into()),
            ("worker".into(), "db".into()),
        ],
    };
    let result = layout(&graph, &Config::default().with_seed(7))?;

    println!("cell size {:.2}, {} iterations", result.geometry.cell, result.schedule.iterations);
    for (node, (x, y)) in graph.nodes.iter().zip(&result.positions) {
        println!("{:>7} at ({x:5.1}, {y:5.1}) size {}x{}", node.id, node.w, node.h);
    }
    let m = &result.metrics;
    println!(
        "edge length {:.2} (from {:.2}), {} crossings, drawing {}x{}",
        m.total_edge_length, result.initial_edge_length, m.crossings, m.bbox_w, m.bbox_h
    );
    Ok(())
}
