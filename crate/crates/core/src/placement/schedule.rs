use crate::model::{Config, InitMode};

/// Iteration budget, starting temperature and compaction period of one run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Schedule {
    pub iterations: u32,
    pub t0: f64,
    pub compaction_interval: u32,
}

impl Schedule {
    /// Per-iteration cooling factor that takes `t0` to `t_min` in `iterations` steps.
    pub fn cooling(&self, t_min: f64) -> f64 {
        (t_min / self.t0).powf(1.0 / self.iterations as f64)
    }
}

pub fn schedule(config: &Config, node_count: usize) -> Schedule {
    let root = (node_count.max(1) as f64).sqrt();
    let (iterations, t0) = match config.init_mode {
        InitMode::Random => ((90.0 * root).ceil() as u32, 2.0 * root),
        InitMode::ForceDirected => (100, 3.0),
        InitMode::Bfs => ((10.0 * root).ceil() as u32, 0.2 * root),
    };
    Schedule {
        iterations: config.iteration_count_override.unwrap_or(iterations),
        t0,
        compaction_interval: config.compaction_interval(),
    }
}

/// Compaction spacing in the second stage; reaches 1 for the last 30 iterations.
pub fn stage2_gamma(i: u32, iterations: u32) -> f64 {
    let n = iterations as f64;
    (1.0 + 2.0 * (n - i as f64 - 30.0) / (0.5 * n)).max(1.0)
}
