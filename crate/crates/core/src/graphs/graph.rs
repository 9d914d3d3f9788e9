use std::fmt;

use indexmap::{IndexMap, IndexSet};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Author,
    Paper,
    Country,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    Citation,
    Collaboration,
    Authorship,
}

impl NodeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            NodeKind::Author => "author",
            NodeKind::Paper => "paper",
            NodeKind::Country => "country",
        }
    }
}

impl EdgeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeKind::Citation => "citation",
            EdgeKind::Collaboration => "collaboration",
            EdgeKind::Authorship => "authorship",
        }
    }

    fn allowed_in(self, directed: bool) -> bool {
        match self {
            EdgeKind::Collaboration => !directed,
            EdgeKind::Citation | EdgeKind::Authorship => directed,
        }
    }
}

/// Node identity: the dataset's opaque id, qualified by node kind.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NodeKey {
    pub kind: NodeKind,
    pub id: String,
}

impl NodeKey {
    pub fn author(id: impl Into<String>) -> Self {
        Self {
            kind: NodeKind::Author,
            id: id.into(),
        }
    }

    pub fn paper(id: impl Into<String>) -> Self {
        Self {
            kind: NodeKind::Paper,
            id: id.into(),
        }
    }

    pub fn country(id: impl Into<String>) -> Self {
        Self {
            kind: NodeKind::Country,
            id: id.into(),
        }
    }
}

impl fmt::Display for NodeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind.as_str(), self.id)
    }
}

/// Index of a node in insertion order.
pub type NodeIx = u32;

/// A directed or undirected (multi)graph with typed nodes and edges.
///
/// Nodes and distinct edges are kept in insertion order; parallel edges are
/// stored as a multiplicity on one entry. Undirected edges are stored with
/// the lower node index first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    directed: bool,
    multigraph: bool,
    nodes: IndexSet<NodeKey>,
    edges: IndexMap<(NodeIx, NodeIx, EdgeKind), u32>,
    edge_total: u64,
}

/// One distinct edge with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeEntry {
    pub source: NodeIx,
    pub target: NodeIx,
    pub kind: EdgeKind,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("{kind:?} edges are not allowed in a {} graph", if *directed { "directed" } else { "undirected" })]
    EdgeKindMismatch { kind: EdgeKind, directed: bool },
    #[error("node index {0} out of range")]
    NoSuchNode(NodeIx),
}

impl LabeledGraph {
    pub fn new(directed: bool, multigraph: bool) -> Self {
        Self {
            directed,
            multigraph,
            nodes: IndexSet::new(),
            edges: IndexMap::new(),
            edge_total: 0,
        }
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn is_multigraph(&self) -> bool {
        self.multigraph
    }

    /// n
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// m, counting multiplicity.
    pub fn edge_count(&self) -> u64 {
        self.edge_total
    }

    pub fn distinct_edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Inserts a node if absent and returns its index.
    pub fn add_node(&mut self, key: NodeKey) -> NodeIx {
        let (ix, _) = self.nodes.insert_full(key);
        ix as NodeIx
    }

    pub fn node_index(&self, key: &NodeKey) -> Option<NodeIx> {
        self.nodes.get_index_of(key).map(|i| i as NodeIx)
    }

    pub fn node(&self, ix: NodeIx) -> &NodeKey {
        &self.nodes[ix as usize]
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = &NodeKey> {
        self.nodes.iter()
    }

    pub fn contains_node(&self, key: &NodeKey) -> bool {
        self.nodes.contains(key)
    }

    /// Adds one edge. On a simple graph a repeated (source, target, kind)
    /// is ignored and `Ok(false)` is returned.
    pub fn add_edge(
        &mut self,
        source: NodeIx,
        target: NodeIx,
        kind: EdgeKind,
    ) -> Result<bool, GraphError> {
        if !kind.allowed_in(self.directed) {
            return Err(GraphError::EdgeKindMismatch {
                kind,
                directed: self.directed,
            });
        }
        for ix in [source, target] {
            if ix as usize >= self.nodes.len() {
                return Err(GraphError::NoSuchNode(ix));
            }
        }
        let (s, t) = if self.directed || source <= target {
            (source, target)
        } else {
            (target, source)
        };
        let slot = self.edges.entry((s, t, kind)).or_insert(0);
        if *slot > 0 && !self.multigraph {
            return Ok(false);
        }
        *slot += 1;
        self.edge_total += 1;
        Ok(true)
    }

    /// Convenience wrapper that inserts both endpoints by key.
    pub fn add_edge_by_key(
        &mut self,
        source: NodeKey,
        target: NodeKey,
        kind: EdgeKind,
    ) -> Result<bool, GraphError> {
        let s = self.add_node(source);
        let t = self.add_node(target);
        self.add_edge(s, t, kind)
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = EdgeEntry> + '_ {
        self.edges
            .iter()
            .map(|(&(source, target, kind), &multiplicity)| EdgeEntry {
                source,
                target,
                kind,
                multiplicity,
            })
    }

    /// Multiplicity of an edge given by keys; 0 when absent.
    pub fn multiplicity(&self, source: &NodeKey, target: &NodeKey, kind: EdgeKind) -> u32 {
        let (Some(s), Some(t)) = (self.node_index(source), self.node_index(target)) else {
            return 0;
        };
        let (s, t) = if self.directed || s <= t {
            (s, t)
        } else {
            (t, s)
        };
        self.edges.get(&(s, t, kind)).copied().unwrap_or(0)
    }

    /// Total multiplicity of self-loops at each node, in node order.
    pub fn self_loops(&self) -> Vec<u32> {
        let mut loops = vec![0; self.nodes.len()];
        for e in self.edges().filter(|e| e.source == e.target) {
            loops[e.source as usize] += e.multiplicity;
        }
        loops
    }

    /// Multiset of edges as (source id, target id, kind, multiplicity),
    /// sorted; convenient for comparisons that ignore insertion order.
    pub fn edge_multiset(&self) -> Vec<(String, String, EdgeKind, u32)> {
        let mut out: Vec<_> = self
            .edges()
            .map(|e| {
                (
                    self.node(e.source).id.clone(),
                    self.node(e.target).id.clone(),
                    e.kind,
                    e.multiplicity,
                )
            })
            .collect();
        out.sort();
        out
    }

    /// Every node key and edge of `self` is present in `other` with at least
    /// the same multiplicity.
    pub fn is_subgraph_of(&self, other: &LabeledGraph) -> bool {
        self.nodes.iter().all(|k| other.contains_node(k))
            && self.edges().all(|e| {
                other.multiplicity(self.node(e.source), self.node(e.target), e.kind)
                    >= e.multiplicity
            })
    }
}
