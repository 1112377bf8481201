//! Repeated layouts of generated graphs with CSV output.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{InputError, LayoutError};
use crate::generators::GraphClass;
use crate::model::{Config, InitMode};
use crate::placement::layout;

pub const CSV_HEADER: &str = "size,rep,seed,millis,crossings,avg_crossings_per_edge,total_edge_length";

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub class: GraphClass,
    pub sizes: Vec<usize>,
    pub reps: usize,
    pub init: InitMode,
    pub seed: u64,
    pub iterations: Option<u32>,
    /// Worker threads; 0 uses every core.
    pub jobs: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub size: usize,
    pub rep: usize,
    pub seed: u64,
    pub millis: f64,
    pub crossings: usize,
    pub avg_crossings_per_edge: f64,
    pub total_edge_length: f64,
}

/// Seed of repetition `rep` at `size`, used for both the graph and the layout.
pub fn row_seed(seed: u64, size: usize, rep: usize) -> u64 {
    seed.wrapping_add(size as u64 * 10_000).wrapping_add(rep as u64)
}

/// Runs every (size, rep) instance. Rows come back in size, then rep, order.
pub fn run(config: &BenchConfig) -> Result<Vec<BenchRow>, LayoutError> {
    if config.reps == 0 {
        return Err(InputError::Config("reps must be at least 1".into()).into());
    }
    if config.sizes.is_empty() {
        return Err(InputError::Config("no sizes given".into()).into());
    }
    let jobs: Vec<(usize, usize)> = config
        .sizes
        .iter()
        .flat_map(|&size| (0..config.reps).map(move |rep| (size, rep)))
        .collect();
    let one = |&(size, rep): &(usize, usize)| -> Result<BenchRow, LayoutError> {
        let seed = row_seed(config.seed, size, rep);
        let graph = config.class.generate(size, seed)?;
        let layout_config = Config {
            init_mode: config.init,
            seed,
            iteration_count_override: config.iterations,
            ..Config::default()
        };
        let result = layout(&graph, &layout_config)?;
        Ok(BenchRow {
            size,
            rep,
            seed,
            millis: result.elapsed.as_secs_f64() * 1000.0,
            crossings: result.metrics.crossings,
            avg_crossings_per_edge: result.metrics.avg_crossings_per_edge,
            total_edge_length: result.metrics.total_edge_length,
        })
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| InputError::Config(e.to_string()))?;
    pool.install(|| jobs.par_iter().map(one).collect())
}

/// CSV with one line per row and a `mean` line after each size.
///
/// Without `timing`, the millis column is written as 0.
pub fn to_csv(rows: &[BenchRow], timing: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{CSV_HEADER}");
    let millis = |m: f64| if timing { m } else { 0.0 };
    let mut start = 0;
    while start < rows.len() {
        let size = rows[start].size;
        let end = start + rows[start..].iter().take_while(|r| r.size == size).count();
        let group = &rows[start..end];
        for r in group {
            let _ = writeln!(
                out,
                "{},{},{},{:.3},{},{:.6},{:.6}",
                r.size,
                r.rep,
                r.seed,
                millis(r.millis),
                r.crossings,
                r.avg_crossings_per_edge,
                r.total_edge_length
            );
        }
        let k = group.len() as f64;
        let mean = |f: &dyn Fn(&BenchRow) -> f64| group.iter().map(f).sum::<f64>() / k;
        let _ = writeln!(
            out,
            "{},mean,,{:.3},{:.6},{:.6},{:.6}",
            size,
            millis(mean(&|r| r.millis)),
            mean(&|r| r.crossings as f64),
            mean(&|r| r.avg_crossings_per_edge),
            mean(&|r| r.total_edge_length)
        );
        start = end;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(reps: usize) -> BenchConfig {
        BenchConfig {
            class: GraphClass::Tree,
            sizes: vec![10, 12],
            reps,
            init: InitMode::Random,
            seed: 5,
            iterations: Some(20),
            jobs: 2,
        }
    }

    #[test]
    fn seeds_follow_size_and_rep() {
        assert_eq!(row_seed(1, 100, 3), 1_000_004);
        assert_eq!(row_seed(u64::MAX, 0, 1), 0);
    }

    #[test]
    fn rows_are_ordered_and_summarized() {
        let rows = run(&config(3)).unwrap();
        let keys: Vec<_> = rows.iter().map(|r| (r.size, r.rep)).collect();
        assert_eq!(keys, vec![(10, 0), (10, 1), (10, 2), (12, 0), (12, 1), (12, 2)]);
        let csv = to_csv(&rows, false);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines.len(), 1 + 2 * (3 + 1));
        assert_eq!(lines[0], CSV_HEADER);
        assert!(lines[4].starts_with("10,mean,,0.000,"));
        assert!(lines.iter().all(|l| l.split(',').count() == 7));
    }

    #[test]
    fn untimed_csv_is_reproducible() {
        let a = to_csv(&run(&config(2)).unwrap(), false);
        let b = to_csv(&run(&config(2)).unwrap(), false);
        assert_eq!(a, b);
    }

    #[test]
    fn zero_reps_is_rejected() {
        assert!(run(&config(0)).is_err());
    }
}
