//! Exact scramble number, disjoint scramble number and screewidth of small
//! multigraphs, with certificates.

pub mod error;
pub mod io;
pub mod multigraph;
pub mod scramble;
pub mod screewidth;
pub mod sn_solver;
pub mod topo_minor;

pub use error::{Error, Result};
pub use multigraph::{ExtNat, Family, Multigraph, VertexSet};
