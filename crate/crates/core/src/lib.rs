//! Grid-based node placement for orthogonal graph drawings with nodes of prescribed size.
//!
//! [`placement::layout`] is the main entry point: it takes a [`model::Graph`]
//! whose nodes carry real widths and heights and returns non-overlapping
//! positions that keep edges short.

pub mod bench;
pub mod cli;
pub mod compaction;
pub mod error;
pub mod generators;
pub mod grid;
pub mod metrics;
pub mod model;
pub mod placement;
pub mod render;
pub mod solver;
