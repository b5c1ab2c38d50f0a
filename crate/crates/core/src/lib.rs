//! Covering projections of multigraphs with loops, parallel edges and
//! semi-edges.

pub mod analysis;
pub mod canon;
pub mod catalog;
pub mod cli;
pub mod covers;
pub mod error;
pub mod factory;
pub mod format;
pub mod graph;
pub mod products;
pub mod stronger;

pub use error::{Error, Result};
pub use graph::{EdgeId, EdgeKind, Multigraph, VertexId};
