//! Local and global clustering of weighted hypergraphs by personalized
//! PageRank on the hypergraph Laplacian.

pub mod cli;
pub mod clustering;
pub mod diffusion;
pub mod error;
pub mod exact_sum;
pub mod expansion;
pub mod generate;
pub mod hypergraph;
pub mod io;
pub mod laplacian;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
pub use hypergraph::{Hyperedge, Hypergraph, VertexId, VertexSubset};
