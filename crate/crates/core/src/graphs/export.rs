//! Stable graph export formats.
//!
//! * node table: `key,kind`
//! * edge table: `source,target,kind,multiplicity` (one row per distinct edge)
//! * adjacency JSON: `{"directed", "multigraph", "nodes": [{"id", "kind",
//!   "out": [{"id", "kind", "edge", "multiplicity"}]}]}`; undirected edges
//!   are listed under both endpoints.

use serde::Serialize;

use super::graph::{EdgeKind, LabeledGraph, NodeKind};
use crate::table::Table;

pub fn node_table(graph: &LabeledGraph) -> Table {
    let mut t = Table::new(["key", "kind"])
        .meta("directed", graph.is_directed())
        .meta("multigraph", graph.is_multigraph())
        .meta("nodes", graph.node_count())
        .meta("edges", graph.edge_count());
    for k in graph.nodes() {
        t.push(vec![k.id.as_str().into(), k.kind.as_str().into()]);
    }
    t
}

pub fn edge_table(graph: &LabeledGraph) -> Table {
    let mut t = Table::new(["source", "target", "kind", "multiplicity"])
        .meta("directed", graph.is_directed())
        .meta("multigraph", graph.is_multigraph())
        .meta("nodes", graph.node_count())
        .meta("edges", graph.edge_count());
    for e in graph.edges() {
        t.push(vec![
            graph.node(e.source).id.as_str().into(),
            graph.node(e.target).id.as_str().into(),
            e.kind.as_str().into(),
            e.multiplicity.into(),
        ]);
    }
    t
}

#[derive(Debug, Serialize)]
pub struct AdjacencyList<'g> {
    pub directed: bool,
    pub multigraph: bool,
    pub nodes: Vec<AdjacencyNode<'g>>,
}

#[derive(Debug, Serialize)]
pub struct AdjacencyNode<'g> {
    pub id: &'g str,
    pub kind: NodeKind,
    pub out: Vec<AdjacencyEdge<'g>>,
}

#[derive(Debug, Serialize)]
pub struct AdjacencyEdge<'g> {
    pub id: &'g str,
    pub kind: NodeKind,
    pub edge: EdgeKind,
    pub multiplicity: u32,
}

pub fn adjacency(graph: &LabeledGraph) -> AdjacencyList<'_> {
    let mut nodes: Vec<AdjacencyNode> = graph
        .nodes()
        .map(|k| AdjacencyNode {
            id: &k.id,
            kind: k.kind,
            out: Vec::new(),
        })
        .collect();
    let mut push = |from: u32, to: u32, edge: EdgeKind, multiplicity: u32| {
        let target = graph.node(to);
        nodes[from as usize].out.push(AdjacencyEdge {
            id: &target.id,
            kind: target.kind,
            edge,
            multiplicity,
        });
    };
    for e in graph.edges() {
        push(e.source, e.target, e.kind, e.multiplicity);
        if !graph.is_directed() && e.source != e.target {
            push(e.target, e.source, e.kind, e.multiplicity);
        }
    }
    AdjacencyList {
        directed: graph.is_directed(),
        multigraph: graph.is_multigraph(),
        nodes,
    }
}
