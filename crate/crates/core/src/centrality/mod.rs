//! Exact node centralities.
//!
//! Every measure produces a [`CentralityTable`] with one score per node, in
//! graph node order. Shortest-path measures (betweenness, closeness) run one
//! BFS per source on a worker pool; their results do not depend on the
//! number of workers.

mod batch;
mod degree;
mod local;
mod pagerank;
mod paths;
mod pool;
mod shells;
mod view;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphs::{LabeledGraph, NodeKey};
use crate::table::Table;

pub use batch::{all_centralities, compute};
pub use degree::degree;
pub use local::{semi_local, volume};
pub use pagerank::pagerank;
pub use paths::{betweenness, closeness};
pub use shells::{coreness, h_index, h_index_table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CentralityKind {
    Degree,
    InDegree,
    OutDegree,
    Betweenness,
    Closeness,
    Pagerank,
    SemiLocal,
    Volume,
    HIndex,
    Coreness,
}

impl CentralityKind {
    pub const ALL: [CentralityKind; 10] = [
        CentralityKind::Degree,
        CentralityKind::InDegree,
        CentralityKind::OutDegree,
        CentralityKind::Betweenness,
        CentralityKind::Closeness,
        CentralityKind::Pagerank,
        CentralityKind::SemiLocal,
        CentralityKind::Volume,
        CentralityKind::HIndex,
        CentralityKind::Coreness,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CentralityKind::Degree => "degree",
            CentralityKind::InDegree => "in_degree",
            CentralityKind::OutDegree => "out_degree",
            CentralityKind::Betweenness => "betweenness",
            CentralityKind::Closeness => "closeness",
            CentralityKind::Pagerank => "pagerank",
            CentralityKind::SemiLocal => "semi_local",
            CentralityKind::Volume => "volume",
            CentralityKind::HIndex => "h_index",
            CentralityKind::Coreness => "coreness",
        }
    }
}

impl fmt::Display for CentralityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CentralityKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_lowercase().replace('-', "_");
        CentralityKind::ALL
            .into_iter()
            .find(|k| k.as_str() == norm)
            .ok_or_else(|| format!("unknown centrality {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeMode {
    Total,
    In,
    Out,
}

/// Denominator of normalised betweenness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalizer {
    /// (n−1)(n−2)/2 on every graph.
    #[default]
    Undirected,
    /// (n−1)(n−2), the ordered-pair count.
    Directed,
}

/// How shortest paths are taken on a directed graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathMode {
    /// Follow edge direction; pairs are ordered.
    #[default]
    Directed,
    /// Ignore edge direction; pairs are unordered.
    Symmetrized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosenessMode {
    /// Fails on graphs where some node cannot reach another.
    #[default]
    Strict,
    /// Per node, over the nodes it can reach.
    PerComponent,
}

/// Every tunable of the centrality measures. Echoed into exported tables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CentralityParams {
    /// Teleport probability.
    pub q: f64,
    /// L1 convergence threshold for PageRank.
    pub tol: f64,
    pub max_iter: u32,
    /// Volume radius.
    pub h: u32,
    pub normalizer: Normalizer,
    pub path_mode: PathMode,
    pub closeness_mode: ClosenessMode,
    /// Count distinct neighbours instead of edge multiplicity.
    pub distinct_degree: bool,
}

impl Default for CentralityParams {
    fn default() -> Self {
        Self {
            q: 0.15,
            tol: 1e-10,
            max_iter: 200,
            h: 2,
            normalizer: Normalizer::Undirected,
            path_mode: PathMode::Directed,
            closeness_mode: ClosenessMode::Strict,
            distinct_degree: false,
        }
    }
}

/// Iteration report of PageRank.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Convergence {
    pub iterations: u32,
    pub converged: bool,
    pub l1_delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CentralityTable {
    pub kind: CentralityKind,
    pub nodes: Vec<NodeKey>,
    pub scores: Vec<f64>,
    pub params: CentralityParams,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convergence: Option<Convergence>,
}

impl CentralityTable {
    fn new(
        kind: CentralityKind,
        graph: &LabeledGraph,
        scores: Vec<f64>,
        params: &CentralityParams,
    ) -> Self {
        debug_assert_eq!(scores.len(), graph.node_count());
        Self {
            kind,
            nodes: graph.nodes().cloned().collect(),
            scores,
            params: *params,
            convergence: None,
        }
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn get(&self, key: &NodeKey) -> Option<f64> {
        self.nodes
            .iter()
            .position(|k| k == key)
            .map(|i| self.scores[i])
    }

    /// Score of the node with the given id (any node kind).
    pub fn score_of(&self, id: &str) -> Option<f64> {
        self.nodes
            .iter()
            .position(|k| k.id == id)
            .map(|i| self.scores[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&NodeKey, f64)> {
        self.nodes.iter().zip(self.scores.iter().copied())
    }

    /// Export rows `node,kind,score,year,node_kind`.
    pub fn to_table(&self, year: Option<i32>) -> Table {
        let mut t = Table::new(["node", "kind", "score", "year", "node_kind"])
            .meta("centrality", self.kind)
            .meta("params", self.params)
            .meta("path_semantics", self.params.path_mode)
            .meta("nodes", self.len());
        if let Some(c) = self.convergence {
            t.set_meta("convergence", c);
        }
        for (k, s) in self.iter() {
            t.push(vec![
                k.id.as_str().into(),
                self.kind.as_str().into(),
                s.into(),
                year.into(),
                k.kind.as_str().into(),
            ]);
        }
        t
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CentralityError {
    #[error("{mode:?} degree is undefined on an undirected graph")]
    InvalidMode { mode: DegreeMode },
    #[error("graph is disconnected: no path from {from} to {to}")]
    Disconnected { from: NodeKey, to: NodeKey },
    #[error("{kind} is not defined here: {reason}")]
    Unsupported {
        kind: CentralityKind,
        reason: String,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[cfg(test)]
#[path = "../../tests/common/oracles.rs"]
mod oracles;
