use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graphcore::address::{Address, GraphParams, Vertex};
use crate::graphcore::edge::{EdgeId, EdgeRef};

/// A graph node. Truncations contain only `Family` nodes; contraction
/// introduces `Block` labels and the parallel-edge elimination transform
/// introduces `Mid` points, one per replaced bundle edge.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Family(Vertex),
    Block(String),
    Mid(EdgeRef),
}

impl Node {
    pub fn family(&self) -> Option<&Vertex> {
        match self {
            Node::Family(v) => Some(v),
            _ => None,
        }
    }

    pub fn source() -> Self {
        Node::Family(Vertex::source())
    }

    pub fn sink() -> Self {
        Node::Family(Vertex::sink())
    }

    /// Map into the copy at `nu`. Block labels are outside the family's vertex
    /// set and are left unchanged.
    pub fn relocated(&self, nu: &Address) -> Self {
        match self {
            Node::Family(v) => Node::Family(v.relocated(nu)),
            Node::Block(b) => Node::Block(b.clone()),
            Node::Mid(e) => Node::Mid(e.relocated(nu)),
        }
    }
}

impl From<Vertex> for Node {
    fn from(v: Vertex) -> Self {
        Node::Family(v)
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Family(v) => write!(f, "{v}"),
            Node::Block(b) => write!(f, "#{b}"),
            Node::Mid(e) => write!(f, "*{e}"),
        }
    }
}

impl FromStr for Node {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(label) = s.strip_prefix('#') {
            Ok(Node::Block(label.to_owned()))
        } else if let Some(edge) = s.strip_prefix('*') {
            Ok(Node::Mid(edge.parse()?))
        } else {
            Ok(Node::Family(s.parse()?))
        }
    }
}

impl Serialize for Node {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Node {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One resolved edge: identity plus node indices into the owning graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: usize,
    pub head: usize,
}

/// A finite directed multigraph with identified parallel edge copies.
///
/// Immutable after construction; all operations hand back new graphs. Nodes
/// are kept sorted and edges are kept sorted by identity, so iteration — and
/// everything downstream of it — is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiDigraph {
    params: GraphParams,
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
}

impl MultiDigraph {
    /// Build a graph from a node set and resolved edge list. Rejects edges
    /// with endpoints outside the node set, duplicate edge identities, loops,
    /// and family vertices whose digits are out of range for `params`.
    pub fn new(
        params: GraphParams,
        nodes: impl IntoIterator<Item = Node>,
        edges: impl IntoIterator<Item = (EdgeId, Node, Node)>,
    ) -> Result<Self> {
        let mut node_list: Vec<Node> = nodes.into_iter().collect();
        node_list.sort();
        node_list.dedup();
        for node in &node_list {
            if let Node::Family(v) = node {
                v.address.check_digits(&params)?;
            }
        }

        let index_of = |n: &Node| -> Result<usize> {
            node_list
                .binary_search(n)
                .map_err(|_| Error::invalid(format!("edge endpoint {n} is not a graph vertex")))
        };

        let mut edge_list = Vec::new();
        for (id, tail, head) in edges {
            let tail = index_of(&tail)?;
            let head = index_of(&head)?;
            if tail == head {
                return Err(Error::invalid(format!("loop edge {id} at {}", node_list[tail])));
            }
            edge_list.push(Edge { id, tail, head });
        }
        edge_list.sort_by(|a, b| a.id.cmp(&b.id));
        if let Some(w) = edge_list.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(Error::invalid(format!("duplicate edge identity {}", w[0].id)));
        }

        let mut out_adj = vec![Vec::new(); node_list.len()];
        let mut in_adj = vec![Vec::new(); node_list.len()];
        for (i, e) in edge_list.iter().enumerate() {
            out_adj[e.tail].push(i);
            in_adj[e.head].push(i);
        }

        Ok(MultiDigraph {
            params,
            nodes: node_list,
            edges: edge_list,
            out_adj,
            in_adj,
        })
    }

    pub fn params(&self) -> &GraphParams {
        &self.params
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node(&self, index: usize) -> &Node {
        &self.nodes[index]
    }

    pub fn node_index(&self, n: &Node) -> Option<usize> {
        self.nodes.binary_search(n).ok()
    }

    pub fn contains_node(&self, n: &Node) -> bool {
        self.node_index(n).is_some()
    }

    pub fn require_node(&self, n: &Node) -> Result<usize> {
        self.node_index(n)
            .ok_or_else(|| Error::invalid(format!("unknown vertex {n}")))
    }

    pub fn contains_edge_id(&self, id: &EdgeId) -> bool {
        self.edges.binary_search_by(|e| e.id.cmp(id)).is_ok()
    }

    /// Endpoints of the edge with the given identity, if present.
    pub fn edge_endpoints(&self, id: &EdgeId) -> Option<(&Node, &Node)> {
        let i = self.edges.binary_search_by(|e| e.id.cmp(id)).ok()?;
        let e = &self.edges[i];
        Some((&self.nodes[e.tail], &self.nodes[e.head]))
    }

    /// Edge indices leaving node `index`, in edge-identity order.
    pub fn out_edges(&self, index: usize) -> &[usize] {
        &self.out_adj[index]
    }

    pub fn in_edges(&self, index: usize) -> &[usize] {
        &self.in_adj[index]
    }

    /// Number of parallel edges from `u` to `v` (0 if either is absent).
    pub fn multiplicity(&self, u: &Node, v: &Node) -> usize {
        let (Some(u), Some(v)) = (self.node_index(u), self.node_index(v)) else {
            return 0;
        };
        self.out_adj[u].iter().filter(|&&e| self.edges[e].head == v).count()
    }

    /// Edge identities from `u` to `v` in identity order.
    pub fn edges_between(&self, u: usize, v: usize) -> Vec<&EdgeId> {
        self.out_adj[u]
            .iter()
            .filter(|&&e| self.edges[e].head == v)
            .map(|&e| &self.edges[e].id)
            .collect()
    }

    /// The subgraph induced by `keep`: those vertices and every edge whose
    /// endpoints both lie in the set.
    pub fn induced_span(&self, keep: &BTreeSet<Node>) -> Result<MultiDigraph> {
        for n in keep {
            self.require_node(n)?;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| keep.contains(&self.nodes[e.tail]) && keep.contains(&self.nodes[e.head]))
            .map(|e| (e.id.clone(), self.nodes[e.tail].clone(), self.nodes[e.head].clone()));
        MultiDigraph::new(self.params, keep.iter().cloned(), edges.collect::<Vec<_>>())
    }

    /// Contract each block of `partition` to the node of `names` with the same
    /// position. Blocks must be disjoint and cover the vertex set. Edges inside
    /// a block become loops and are dropped; all other edges keep their
    /// identity.
    pub fn contract(&self, partition: &[BTreeSet<Node>], names: &[Node]) -> Result<MultiDigraph> {
        if partition.len() != names.len() {
            return Err(Error::invalid(format!(
                "{} blocks but {} names",
                partition.len(),
                names.len()
            )));
        }
        {
            let mut unique = BTreeSet::new();
            if !names.iter().all(|n| unique.insert(n)) {
                return Err(Error::invalid("duplicate block names"));
            }
        }
        let mut block_of: BTreeMap<&Node, usize> = BTreeMap::new();
        for (b, block) in partition.iter().enumerate() {
            for n in block {
                self.require_node(n)?;
                if block_of.insert(n, b).is_some() {
                    return Err(Error::invalid(format!("vertex {n} appears in two blocks")));
                }
            }
        }
        if block_of.len() != self.nodes.len() {
            return Err(Error::invalid(format!(
                "partition covers {} of {} vertices",
                block_of.len(),
                self.nodes.len()
            )));
        }

        let mut edges = Vec::new();
        for e in &self.edges {
            let bt = block_of[&self.nodes[e.tail]];
            let bh = block_of[&self.nodes[e.head]];
            if bt != bh {
                edges.push((e.id.clone(), names[bt].clone(), names[bh].clone()));
            }
        }
        MultiDigraph::new(self.params, names.iter().cloned(), edges)
    }

    /// Remove the edges with the given identities; the vertex set is kept.
    pub fn delete_edges(&self, ids: &BTreeSet<EdgeId>) -> MultiDigraph {
        let edges = self
            .edges
            .iter()
            .filter(|e| !ids.contains(&e.id))
            .map(|e| (e.id.clone(), self.nodes[e.tail].clone(), self.nodes[e.head].clone()))
            .collect::<Vec<_>>();
        MultiDigraph::new(self.params, self.nodes.iter().cloned(), edges)
            .expect("deleting edges from a valid graph cannot fail")
    }

    /// Remove the family edges with the given references; the vertex set is kept.
    pub fn delete_edge_refs(&self, refs: &BTreeSet<EdgeRef>) -> MultiDigraph {
        let ids: BTreeSet<EdgeId> = refs.iter().cloned().map(EdgeId::Family).collect();
        self.delete_edges(&ids)
    }

    fn bfs_indices(&self, start: usize, forward: bool) -> Vec<bool> {
        let mut seen = vec![false; self.nodes.len()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let adj = if forward { &self.out_adj[u] } else { &self.in_adj[u] };
            for &e in adj {
                let w = if forward { self.edges[e].head } else { self.edges[e].tail };
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Directed reachability. `reachable(u, u)` is true.
    pub fn reachable(&self, u: &Node, v: &Node) -> Result<bool> {
        let ui = self.require_node(u)?;
        let vi = self.require_node(v)?;
        Ok(self.bfs_indices(ui, true)[vi])
    }

    /// Strong connectivity: a directed path between every ordered pair of
    /// distinct vertices. Graphs with at most one vertex are connected.
    pub fn is_connected(&self) -> bool {
        if self.nodes.len() <= 1 {
            return true;
        }
        let fwd = self.bfs_indices(0, true);
        if !fwd.iter().all(|&r| r) {
            return false;
        }
        self.bfs_indices(0, false).iter().all(|&r| r)
    }

    /// Shortest directed path from `u` to `v` as node indices, or `None`.
    /// Deterministic: BFS scans edges in identity order.
    pub fn shortest_path_indices(&self, u: usize, v: usize) -> Option<Vec<usize>> {
        let mut parent: Vec<Option<usize>> = vec![None; self.nodes.len()];
        let mut seen = vec![false; self.nodes.len()];
        seen[u] = true;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if x == v {
                break;
            }
            for &e in &self.out_adj[x] {
                let w = self.edges[e].head;
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(x);
                    queue.push_back(w);
                }
            }
        }
        if !seen[v] {
            return None;
        }
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = parent[cur] {
            path.push(p);
            cur = p;
        }
        if cur != u {
            return None;
        }
        path.reverse();
        Some(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::edge::{Dir, Rule};

    fn params() -> GraphParams {
        GraphParams::new(2).unwrap()
    }

    fn eid(text: &str) -> EdgeId {
        text.parse().unwrap()
    }

    fn node(text: &str) -> Node {
        text.parse().unwrap()
    }

    fn tiny_chain() -> MultiDigraph {
        // s -> t_0 -> s_1
        MultiDigraph::new(
            params(),
            [node("s"), node("t_0"), node("s_1")],
            [
                (eid("-/S0/0"), node("s"), node("t_0")),
                (eid("-/S1/0"), node("t_0"), node("s_1")),
            ],
        )
        .unwrap()
    }

    #[test]
    fn rejects_unknown_endpoint_and_duplicates_and_loops() {
        let err = MultiDigraph::new(
            params(),
            [node("s")],
            [(eid("-/S0/0"), node("s"), node("t_0"))],
        );
        assert!(err.is_err());

        let dup = MultiDigraph::new(
            params(),
            [node("s"), node("t_0")],
            [
                (eid("-/S0/0"), node("s"), node("t_0")),
                (eid("-/S0/0"), node("s"), node("t_0")),
            ],
        );
        assert!(dup.is_err());

        let loop_edge =
            MultiDigraph::new(params(), [node("s")], [(eid("-/S0/0"), node("s"), node("s"))]);
        assert!(loop_edge.is_err());
    }

    #[test]
    fn rejects_family_digit_out_of_range() {
        // digit 4 is out of range for k=2
        let g = MultiDigraph::new(params(), [node("s_4")], []);
        assert!(g.is_err());
    }

    #[test]
    fn node_text_roundtrip() {
        for text in ["s", "t_0.1", "#v0", "*-/T0f/1"] {
            let n: Node = text.parse().unwrap();
            assert_eq!(n.to_string(), text);
        }
    }

    #[test]
    fn reachability_and_connectivity() {
        let g = tiny_chain();
        assert!(g.reachable(&node("s"), &node("s_1")).unwrap());
        assert!(!g.reachable(&node("s_1"), &node("s")).unwrap());
        assert!(g.reachable(&node("s"), &node("s")).unwrap());
        assert!(g.reachable(&node("s"), &node("s_2")).is_err());
        assert!(!g.is_connected());

        let single = MultiDigraph::new(params(), [node("s")], []).unwrap();
        assert!(single.is_connected());
        let empty = MultiDigraph::new(params(), [], []).unwrap();
        assert!(empty.is_connected());
    }

    #[test]
    fn induced_span_identity_and_empty() {
        let g = tiny_chain();
        let all: BTreeSet<Node> = g.nodes().iter().cloned().collect();
        let same = g.induced_span(&all).unwrap();
        assert_eq!(same, g);

        let none = g.induced_span(&BTreeSet::new()).unwrap();
        assert_eq!(none.node_count(), 0);
        assert_eq!(none.edge_count(), 0);

        let bad: BTreeSet<Node> = [node("s_3")].into();
        assert!(g.induced_span(&bad).is_err());
    }

    #[test]
    fn contract_drops_loops_and_keeps_identities() {
        let g = tiny_chain();
        let p1: BTreeSet<Node> = [node("s"), node("t_0")].into();
        let p2: BTreeSet<Node> = [node("s_1")].into();
        let q = g
            .contract(&[p1, p2], &[Node::Block("a".into()), Node::Block("b".into())])
            .unwrap();
        assert_eq!(q.node_count(), 2);
        // the s -> t_0 edge became a loop and vanished; t_0 -> s_1 survives
        assert_eq!(q.edge_count(), 1);
        assert!(q.contains_edge_id(&eid("-/S1/0")));

        // single block: everything collapses
        let whole: BTreeSet<Node> = g.nodes().iter().cloned().collect();
        let one = g.contract(&[whole], &[Node::Block("all".into())]).unwrap();
        assert_eq!((one.node_count(), one.edge_count()), (1, 0));

        // incomplete partition is rejected
        let partial: BTreeSet<Node> = [node("s")].into();
        assert!(g.contract(&[partial], &[Node::Block("a".into())]).is_err());
    }

    #[test]
    fn contract_singleton_partition_is_isomorphic_identity() {
        let g = tiny_chain();
        let blocks: Vec<BTreeSet<Node>> =
            g.nodes().iter().map(|n| BTreeSet::from([n.clone()])).collect();
        let names: Vec<Node> = g.nodes().to_vec();
        let q = g.contract(&blocks, &names).unwrap();
        assert_eq!(q, g);
    }

    #[test]
    fn delete_edges_keeps_vertices() {
        let g = tiny_chain();
        let gone = g.delete_edges(&BTreeSet::from([eid("-/S0/0")]));
        assert_eq!(gone.node_count(), 3);
        assert_eq!(gone.edge_count(), 1);
        assert!(!gone.reachable(&node("s"), &node("t_0")).unwrap());
    }

    #[test]
    fn multiplicity_counts_parallel_copies() {
        let thick0 = EdgeRef::new(Address::root(), Rule::Thick { pair: 0, dir: Dir::Fwd }, 0);
        let thick1 = EdgeRef::new(Address::root(), Rule::Thick { pair: 0, dir: Dir::Fwd }, 1);
        let g = MultiDigraph::new(
            params(),
            [node("s"), node("t_1")],
            [
                (EdgeId::Family(thick0), node("s"), node("t_1")),
                (EdgeId::Family(thick1), node("s"), node("t_1")),
            ],
        )
        .unwrap();
        assert_eq!(g.multiplicity(&node("s"), &node("t_1")), 2);
        assert_eq!(g.multiplicity(&node("t_1"), &node("s")), 0);
    }
}
