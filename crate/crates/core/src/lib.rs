//! Buneman graphs of split systems: vertex enumeration, cut vertices,
//! blocks, the block-cut tree and the reduced X-tree.

pub mod bits;
pub mod blocks;
pub mod buneman;
pub mod check;
pub mod cut;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod par;
pub mod random;
pub mod relations;
pub mod splits;
pub mod trees;

pub use buneman::{BunemanGraph, DeltaSet, Edge, Limits, Options, Strategy, VertexMap};
pub use error::{Error, Result};
pub use par::Execution;
pub use splits::{GroundSet, Side, Split, SplitSystem, Subset};
