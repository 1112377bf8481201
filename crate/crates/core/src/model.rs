//! Graph and configuration types, grid-cell sizing and per-node grid extents.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::InputError;

/// A node with a prescribed minimum size in real units.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeBox {
    pub id: String,
    pub w: f64,
    pub h: f64,
}

impl NodeBox {
    pub fn new(id: impl Into<String>, w: f64, h: f64) -> Self {
        Self { id: id.into(), w, h }
    }
}

/// Graph as read from and written to the JSON exchange format.
///
/// Edges are unordered pairs of node ids.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Graph {
    pub nodes: Vec<NodeBox>,
    pub edges: Vec<(String, String)>,
}

impl Graph {
    pub fn from_json(text: &str) -> Result<Self, InputError> {
        serde_json::from_str(text).map_err(|e| InputError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serialization cannot fail")
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn validate(&self) -> ValidationReport {
        validate_graph(self)
    }

    /// Validates the graph and resolves edge endpoints to node indices.
    pub fn topology(&self) -> Result<Topology, InputError> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(InputError::Invalid(report));
        }
        let index: HashMap<&str, usize> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.id.as_str(), i))
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|(a, b)| (index[a.as_str()], index[b.as_str()]))
            .collect();
        Ok(Topology::new(self.nodes.len(), edges))
    }
}

/// Index-based view of a validated graph with adjacency lists.
#[derive(Clone, Debug, PartialEq)]
pub struct Topology {
    node_count: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
}

impl Topology {
    /// Builds a topology from index pairs. Endpoints must be `< node_count`.
    pub fn new(node_count: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut neighbors = vec![Vec::new(); node_count];
        for &(a, b) in &edges {
            neighbors[a].push(b);
            neighbors[b].push(a);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Self {
            node_count,
            edges,
            neighbors,
        }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbors of `node` in ascending index order.
    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.neighbors[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.neighbors[node].len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Finding {
    EmptyId { index: usize },
    DuplicateId(String),
    BadDimension(String),
    DanglingEndpoint { edge: usize, id: String },
    SelfLoop { edge: usize, id: String },
    DuplicateEdge { edge: usize, a: String, b: String },
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finding::EmptyId { index } => write!(f, "node #{index} has an empty id"),
            Finding::DuplicateId(id) => write!(f, "duplicate node id {id:?}"),
            Finding::BadDimension(id) => {
                write!(f, "node {id:?} has a negative or non-finite dimension")
            }
            Finding::DanglingEndpoint { edge, id } => {
                write!(f, "edge #{edge} references unknown node {id:?}")
            }
            Finding::SelfLoop { edge, id } => write!(f, "edge #{edge} is a self-loop on {id:?}"),
            Finding::DuplicateEdge { edge, a, b } => {
                write!(f, "edge #{edge} ({a:?}, {b:?}) duplicates an earlier edge")
            }
        }
    }
}

/// Findings of [`validate_graph`]; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.findings.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, finding) in self.findings.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{finding}")?;
        }
        Ok(())
    }
}

pub fn validate_graph(graph: &Graph) -> ValidationReport {
    let mut findings = Vec::new();
    let mut ids = HashSet::new();
    for (index, node) in graph.nodes.iter().enumerate() {
        if node.id.is_empty() {
            findings.push(Finding::EmptyId { index });
        }
        if !ids.insert(node.id.as_str()) {
            findings.push(Finding::DuplicateId(node.id.clone()));
        }
        if !(node.w.is_finite() && node.h.is_finite() && node.w >= 0.0 && node.h >= 0.0) {
            findings.push(Finding::BadDimension(node.id.clone()));
        }
    }
    let mut seen = HashSet::new();
    for (edge, (a, b)) in graph.edges.iter().enumerate() {
        let mut dangling = false;
        for id in [a, b] {
            if !ids.contains(id.as_str()) {
                findings.push(Finding::DanglingEndpoint {
                    edge,
                    id: id.clone(),
                });
                dangling = true;
            }
        }
        if a == b {
            findings.push(Finding::SelfLoop { edge, id: a.clone() });
            continue;
        }
        if dangling {
            continue;
        }
        let key = if a < b { (a, b) } else { (b, a) };
        if !seen.insert(key) {
            findings.push(Finding::DuplicateEdge {
                edge,
                a: a.clone(),
                b: b.clone(),
            });
        }
    }
    ValidationReport { findings }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitMode {
    Random,
    Bfs,
    ForceDirected,
}

impl InitMode {
    pub fn default_compaction_interval(self) -> u32 {
        match self {
            InitMode::Random => 9,
            InitMode::Bfs | InitMode::ForceDirected => 3,
        }
    }
}

/// Layout parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    /// Minimum separation between nodes, real units.
    pub delta: f64,
    pub init_mode: InitMode,
    pub seed: u64,
    /// Final annealing temperature.
    pub t_min: f64,
    /// Iterations between compactions; `None` picks the init mode's default.
    pub compaction_interval: Option<u32>,
    pub iteration_count_override: Option<u32>,
    /// Weight of the center-alignment term of the edge length.
    pub align_weight: f64,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            delta: 1.0,
            init_mode: InitMode::Random,
            seed: 1,
            t_min: 0.2,
            compaction_interval: None,
            iteration_count_override: None,
            align_weight: 1.0 / 20.0,
        }
    }
}

impl Config {
    pub fn with_init(mut self, mode: InitMode) -> Self {
        self.init_mode = mode;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn compaction_interval(&self) -> u32 {
        self.compaction_interval
            .unwrap_or_else(|| self.init_mode.default_compaction_interval())
    }

    pub fn check(&self) -> Result<(), InputError> {
        if !(self.delta.is_finite() && self.delta >= 0.0) {
            return Err(InputError::Config(format!("delta must be >= 0, got {}", self.delta)));
        }
        if !(self.t_min.is_finite() && self.t_min > 0.0) {
            return Err(InputError::Config(format!("t_min must be > 0, got {}", self.t_min)));
        }
        if self.compaction_interval == Some(0) {
            return Err(InputError::Config("compaction interval must be >= 1".into()));
        }
        if self.iteration_count_override == Some(0) {
            return Err(InputError::Config("iteration count must be >= 1".into()));
        }
        if !(self.align_weight.is_finite() && self.align_weight >= 0.0) {
            return Err(InputError::Config("align weight must be >= 0".into()));
        }
        Ok(())
    }
}

/// Size of a node's footprint in grid cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Extent {
    pub w: u32,
    pub h: u32,
}

impl Extent {
    pub const UNIT: Extent = Extent { w: 1, h: 1 };

    pub fn new(w: u32, h: u32) -> Self {
        Self { w, h }
    }
}

/// Cell side length together with the extents of every node, indexed like the graph's nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct GridGeometry {
    pub cell: f64,
    pub extents: Vec<Extent>,
}

impl GridGeometry {
    pub fn new(nodes: &[NodeBox], delta: f64) -> Result<Self, InputError> {
        let cell = compute_cell_size(nodes, delta)?;
        Ok(grid_extents(nodes, delta, cell))
    }
}

/// Side length of a grid cell.
///
/// With `lo`/`hi` the smallest/largest padded side over all nodes: `hi` when
/// `hi < 3 lo`, `1.5 lo` when `3 lo <= hi < 15 lo`, otherwise `hi / 30`.
pub fn compute_cell_size(nodes: &[NodeBox], delta: f64) -> Result<f64, InputError> {
    if nodes.is_empty() {
        return Err(InputError::EmptyGraph);
    }
    if !(delta.is_finite() && delta >= 0.0) {
        return Err(InputError::Config(format!("delta must be >= 0, got {delta}")));
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for node in nodes {
        if !(node.w.is_finite() && node.h.is_finite()) {
            return Err(InputError::Invalid(ValidationReport {
                findings: vec![Finding::BadDimension(node.id.clone())],
            }));
        }
        let (pw, ph) = (node.w + delta, node.h + delta);
        lo = lo.min(pw.min(ph));
        hi = hi.max(pw.max(ph));
    }
    let cell = if hi < 3.0 * lo {
        hi
    } else if hi < 15.0 * lo {
        1.5 * lo
    } else {
        hi / 30.0
    };
    if cell > 0.0 {
        Ok(cell)
    } else {
        // Every node is 0x0 and delta is 0: any positive cell works.
        Ok(1.0)
    }
}

pub fn grid_extents(nodes: &[NodeBox], delta: f64, cell: f64) -> GridGeometry {
    assert!(cell > 0.0, "cell size must be positive");
    let span = |len: f64| ((len + delta) / cell).ceil().max(1.0) as u32;
    GridGeometry {
        cell,
        extents: nodes
            .iter()
            .map(|n| Extent::new(span(n.w), span(n.h)))
            .collect(),
    }
}
