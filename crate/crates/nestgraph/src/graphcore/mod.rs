//! Finite directed multigraph representation and its primitive operations:
//! induced span subgraphs, contraction, reachability, and strong connectivity.

mod address;
mod edge;
mod graph;
mod path;

pub use address::{Address, GraphParams, Role, Vertex};
pub use edge::{Dir, EdgeId, EdgeRef, Rule};
pub use graph::{Edge, MultiDigraph, Node};
pub use path::PathWitness;
