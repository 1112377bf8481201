//! Command-line front end: `layout`, `generate` and `bench`.
//!
//! [`run`] takes the argument list and output streams explicitly so the
//! commands can be driven in-process.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bench::{self, BenchConfig};
use crate::generators::{self, GraphClass, TreeModel};
use crate::model::{Config, Graph, InitMode};
use crate::placement::layout;
use crate::render;

#[derive(Debug, Parser)]
#[command(name = "orthogrid", version, about = "Grid-based node placement for orthogonal graph drawings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lay out a graph read from a JSON file.
    Layout(LayoutArgs),
    /// Write a generated benchmark graph as JSON.
    Generate(GenerateArgs),
    /// Lay out generated graphs repeatedly and report CSV.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum InitArg {
    Random,
    Bfs,
    #[value(alias = "force-directed")]
    Fdp,
}

impl From<InitArg> for InitMode {
    fn from(arg: InitArg) -> Self {
        match arg {
            InitArg::Random => InitMode::Random,
            InitArg::Bfs => InitMode::Bfs,
            InitArg::Fdp => InitMode::ForceDirected,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TreeModelArg {
    Recursive,
    Prufer,
}

#[derive(Debug, Args)]
struct LayoutArgs {
    /// Graph JSON file.
    input: PathBuf,
    #[arg(long, value_enum, default_value = "random")]
    init: InitArg,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Minimum separation between nodes.
    #[arg(long, default_value_t = 1.0)]
    delta: f64,
    /// Override the number of annealing iterations.
    #[arg(long)]
    iterations: Option<u32>,
    /// Also write an SVG drawing.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Write the JSON result here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report `millis` as null so repeated runs produce identical output.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    /// partial-grid, tree or random.
    #[arg(long, value_parser = parse_class)]
    class: GraphClass,
    /// Node count (partial-grid: target before removal).
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Share of removed nodes (partial-grid).
    #[arg(long, default_value_t = generators::DEFAULT_REMOVAL)]
    removal: f64,
    /// Edges per node (random).
    #[arg(long, default_value_t = generators::DEFAULT_DENSITY)]
    density: f64,
    #[arg(long, value_enum, default_value = "recursive")]
    tree_model: TreeModelArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// partial-grid, tree or random.
    #[arg(long, value_parser = parse_class)]
    class: GraphClass,
    /// Comma-separated node counts.
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    reps: usize,
    #[arg(long, value_enum, default_value = "random")]
    init: InitArg,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    iterations: Option<u32>,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Write 0 in the millis column so repeated runs produce identical output.
    #[arg(long)]
    no_timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_class(s: &str) -> Result<GraphClass, String> {
    s.parse().map_err(|e: crate::error::InputError| e.to_string())
}

#[derive(Serialize)]
struct NodeOut<'a> {
    id: &'a str,
    x: f64,
    y: f64,
    w: f64,
    h: f64,
}

#[derive(Serialize)]
struct MetricsOut {
    total_edge_length: f64,
    crossings: usize,
    avg_crossings_per_edge: f64,
    bbox_w: f64,
    bbox_h: f64,
    millis: Option<u64>,
}

#[derive(Serialize)]
struct LayoutOut<'a> {
    nodes: Vec<NodeOut<'a>>,
    metrics: MetricsOut,
}

/// Runs the command line `args` (program name first). Returns the exit code:
/// 0 on success, 1 on any error, with a diagnostic written to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(stdout, "{}", e.render());
            return 0;
        }
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return 1;
        }
    };
    let outcome = match cli.command {
        Command::Layout(args) => cmd_layout(args, stdout),
        Command::Generate(args) => cmd_generate(args, stdout),
        Command::Bench(args) => cmd_bench(args, stdout),
    };
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            1
        }
    }
}

fn emit(text: &str, out: Option<&PathBuf>, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => stdout.write_all(text.as_bytes()).context("cannot write output"),
    }
}

fn cmd_layout(args: LayoutArgs, stdout: &mut dyn Write) -> Result<()> {
    let text = fs::read_to_string(&args.input)
        .with_context(|| format!("cannot read {}", args.input.display()))?;
    let graph = Graph::from_json(&text)?;
    let config = Config {
        delta: args.delta,
        init_mode: args.init.into(),
        seed: args.seed,
        iteration_count_override: args.iterations,
        ..Config::default()
    };
    let result = layout(&graph, &config)?;
    let m = &result.metrics;
    let doc = LayoutOut {
        nodes: graph
            .nodes
            .iter()
            .zip(&result.positions)
            .map(|(node, &(x, y))| NodeOut {
                id: &node.id,
                x,
                y,
                w: node.w,
                h: node.h,
            })
            .collect(),
        metrics: MetricsOut {
            total_edge_length: m.total_edge_length,
            crossings: m.crossings,
            avg_crossings_per_edge: m.avg_crossings_per_edge,
            bbox_w: m.bbox_w,
            bbox_h: m.bbox_h,
            millis: (!args.no_timing).then(|| result.elapsed.as_millis() as u64),
        },
    };
    let mut json = serde_json::to_string_pretty(&doc)?;
    json.push('\n');
    if let Some(path) = &args.svg {
        fs::write(path, render::svg(&graph, &result.positions))
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    emit(&json, args.out.as_ref(), stdout)
}

fn cmd_generate(args: GenerateArgs, stdout: &mut dyn Write) -> Result<()> {
    let graph = match args.class {
        GraphClass::PartialGrid => generators::gen_partial_grid(args.n, args.removal, args.seed)?,
        GraphClass::Tree => {
            let model = match args.tree_model {
                TreeModelArg::Recursive => TreeModel::Recursive,
                TreeModelArg::Prufer => TreeModel::Prufer,
            };
            generators::gen_random_tree(args.n, args.seed, model)?
        }
        GraphClass::Random => generators::gen_random_graph(args.n, args.density, args.seed)?,
    };
    let mut json = graph.to_json();
    json.push('\n');
    emit(&json, args.out.as_ref(), stdout)
}

fn cmd_bench(args: BenchArgs, stdout: &mut dyn Write) -> Result<()> {
    let config = BenchConfig {
        class: args.class,
        sizes: args.sizes,
        reps: args.reps,
        init: args.init.into(),
        seed: args.seed,
        iterations: args.iterations,
        jobs: args.jobs,
    };
    let rows = bench::run(&config)?;
    emit(&bench::to_csv(&rows, !args.no_timing), args.out.as_ref(), stdout)
}
