//! Seeded benchmark graphs: partial grids, random trees and sparse random graphs.
//!
//! All generated nodes are unit squares.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::InputError;
use crate::model::{Graph, NodeBox};

pub const DEFAULT_REMOVAL: f64 = 0.10;
pub const DEFAULT_DENSITY: f64 = 1.2;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn unit_nodes(ids: impl IntoIterator<Item = String>) -> Vec<NodeBox> {
    ids.into_iter().map(|id| NodeBox::new(id, 1.0, 1.0)).collect()
}

/// Square grid graph of side `⌈√n_target⌉` with `⌊removal · side²⌋` random nodes deleted.
///
/// Node ids are `r<row>c<col>` of the full grid.
pub fn gen_partial_grid(n_target: usize, removal: f64, seed: u64) -> Result<Graph, InputError> {
    if n_target < 4 {
        return Err(InputError::Config(format!(
            "partial grid needs at least 4 nodes, got {n_target}"
        )));
    }
    if !(0.0..1.0).contains(&removal) {
        return Err(InputError::Config(format!(
            "removal fraction must be in [0, 1), got {removal}"
        )));
    }
    let side = (n_target as f64).sqrt().ceil() as usize;
    let total = side * side;
    let remove = (removal * total as f64).floor() as usize;
    let mut alive = vec![true; total];
    for k in index::sample(&mut rng(seed), total, remove) {
        alive[k] = false;
    }
    let id = |k: usize| format!("r{}c{}", k / side, k % side);
    let nodes = unit_nodes((0..total).filter(|&k| alive[k]).map(id));
    let mut edges = Vec::new();
    for k in (0..total).filter(|&k| alive[k]) {
        if k % side + 1 < side && alive[k + 1] {
            edges.push((id(k), id(k + 1)));
        }
        if k + side < total && alive[k + side] {
            edges.push((id(k), id(k + side)));
        }
    }
    Ok(Graph { nodes, edges })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TreeModel {
    /// Node k attaches to a uniformly chosen earlier node.
    #[default]
    Recursive,
    /// Uniform over labeled trees, decoded from a random Prüfer sequence.
    Prufer,
}

/// Random tree on `n` nodes `n0..n{n-1}`.
pub fn gen_random_tree(n: usize, seed: u64, model: TreeModel) -> Result<Graph, InputError> {
    if n == 0 {
        return Err(InputError::EmptyGraph);
    }
    let mut rng = rng(seed);
    let pairs = match model {
        TreeModel::Recursive => (1..n).map(|k| (rng.gen_range(0..k), k)).collect(),
        TreeModel::Prufer => prufer_tree(n, &mut rng),
    };
    Ok(numbered(n, pairs))
}

fn prufer_tree<R: Rng>(n: usize, rng: &mut R) -> Vec<(usize, usize)> {
    if n < 2 {
        return Vec::new();
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &v in &code {
        degree[v] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut pairs = Vec::with_capacity(n - 1);
    for &v in &code {
        let Reverse(leaf) = leaves.pop().expect("a leaf always exists");
        pairs.push((leaf.min(v), leaf.max(v)));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.push(Reverse(v));
        }
    }
    let Reverse(a) = leaves.pop().expect("two leaves remain");
    let Reverse(b) = leaves.pop().expect("two leaves remain");
    pairs.push((a.min(b), a.max(b)));
    pairs
}

/// `⌊density · n⌋` distinct random node pairs on `n` nodes `n0..n{n-1}`.
pub fn gen_random_graph(n: usize, density: f64, seed: u64) -> Result<Graph, InputError> {
    if n == 0 {
        return Err(InputError::EmptyGraph);
    }
    // The small epsilon keeps products like 1.2 · 10 from flooring to 11.
    let requested = (density * n as f64 + 1e-9).floor() as usize;
    let max = n * (n - 1) / 2;
    if requested > max {
        return Err(InputError::TooManyEdges {
            requested,
            nodes: n,
            max,
        });
    }
    let mut picks = index::sample(&mut rng(seed), max, requested).into_vec();
    picks.sort_unstable();
    let pairs = picks.into_iter().map(|k| pair_from_index(n, k)).collect();
    Ok(numbered(n, pairs))
}

/// The `k`-th pair `(i, j)`, `i < j`, in lexicographic order.
fn pair_from_index(n: usize, mut k: usize) -> (usize, usize) {
    for i in 0..n {
        let row = n - 1 - i;
        if k < row {
            return (i, i + 1 + k);
        }
        k -= row;
    }
    unreachable!("pair index out of range")
}

fn numbered(n: usize, pairs: Vec<(usize, usize)>) -> Graph {
    Graph {
        nodes: unit_nodes((0..n).map(|k| format!("n{k}"))),
        edges: pairs
            .into_iter()
            .map(|(a, b)| (format!("n{a}"), format!("n{b}")))
            .collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphClass {
    PartialGrid,
    Tree,
    Random,
}

impl GraphClass {
    pub const ALL: [GraphClass; 3] = [GraphClass::PartialGrid, GraphClass::Tree, GraphClass::Random];

    /// Instance of this class with default parameters.
    pub fn generate(self, n: usize, seed: u64) -> Result<Graph, InputError> {
        match self {
            GraphClass::PartialGrid => gen_partial_grid(n, DEFAULT_REMOVAL, seed),
            GraphClass::Tree => gen_random_tree(n, seed, TreeModel::Recursive),
            GraphClass::Random => gen_random_graph(n, DEFAULT_DENSITY, seed),
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphClass::PartialGrid => "partial-grid",
            GraphClass::Tree => "tree",
            GraphClass::Random => "random",
        })
    }
}

impl FromStr for GraphClass {
    type Err = InputError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "partial-grid" => Ok(GraphClass::PartialGrid),
            "tree" => Ok(GraphClass::Tree),
            "random" => Ok(GraphClass::Random),
            other => Err(InputError::Config(format!("unknown graph class '{other}'"))),
        }
    }
}
