//! A small benchmark sweep over tree sizes, printed as CSV.

use orthogrid::bench::{run, to_csv, BenchConfig};
use orthogrid::generators::GraphClass;
use orthogrid::model::InitMode;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = BenchConfig {
        class: GraphClass::Tree,
        sizes: vec![16, 36, 64],
        reps: 3,
        init: InitMode::Bfs,
        seed: 1,
        iterations: None,
        jobs: 0,
    };
    print!("{}", to_csv(&run(&config)?, true));
    Ok(())
}
