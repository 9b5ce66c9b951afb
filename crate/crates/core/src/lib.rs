pub mod bounds;
pub mod clique;
pub mod constructions;
pub mod error;
pub mod exact_walk;
pub mod graph;
pub mod report;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex};
