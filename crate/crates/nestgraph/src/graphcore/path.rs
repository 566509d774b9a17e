use serde::{Deserialize, Serialize};

use crate::graphcore::address::Address;
use crate::graphcore::edge::EdgeId;
use crate::graphcore::graph::Node;

/// An explicit edge sequence certifying a reachability claim between two
/// endpoints. A witness is only meaningful relative to a graph; see
/// `witnesses::validate_path` for the checks (edges present, head-to-tail
/// chaining, no repeated vertex).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathWitness {
    pub source: Node,
    pub target: Node,
    pub edges: Vec<EdgeId>,
}

impl PathWitness {
    pub fn new(source: Node, target: Node, edges: Vec<EdgeId>) -> Self {
        PathWitness { source, target, edges }
    }

    /// The zero-length witness: valid whenever its single endpoint exists.
    pub fn trivial(endpoint: Node) -> Self {
        PathWitness {
            source: endpoint.clone(),
            target: endpoint,
            edges: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn endpoints(&self) -> (&Node, &Node) {
        (&self.source, &self.target)
    }

    /// Image under the self-embedding into the copy at `nu`: every gadget
    /// address is prefixed, rules and copy indices are unchanged.
    pub fn relocated(&self, nu: &Address) -> Self {
        PathWitness {
            source: self.source.relocated(nu),
            target: self.target.relocated(nu),
            edges: self.edges.iter().map(|e| e.relocated(nu)).collect(),
        }
    }

    /// Smallest truncation depth whose gadgets can contain every edge of this
    /// witness: one more than the longest gadget address used (0 for the
    /// zero-length witness).
    pub fn required_depth(&self) -> usize {
        self.edges.iter().map(|e| e.gadget_len() + 1).max().unwrap_or(0)
    }
}
