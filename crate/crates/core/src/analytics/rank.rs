use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::centrality::{CentralityKind, CentralityTable};
use crate::graphs::NodeKey;
use crate::table::{Cell, Table};

/// Score descending, then node id ascending (node kind last, for graphs
/// where an author and a paper share an id).
fn tie_order(a: (&NodeKey, f64), b: (&NodeKey, f64)) -> Ordering {
    b.1.total_cmp(&a.1)
        .then_with(|| a.0.id.cmp(&b.0.id))
        .then_with(|| a.0.kind.cmp(&b.0.kind))
}

/// Indices of `table` in rank order; position i holds rank i + 1.
pub fn rank_order(table: &CentralityTable) -> Vec<usize> {
    let mut ix: Vec<usize> = (0..table.len()).collect();
    ix.sort_by(|&a, &b| {
        tie_order(
            (&table.nodes[a], table.scores[a]),
            (&table.nodes[b], table.scores[b]),
        )
    });
    ix
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RankCell {
    Ranked {
        rank: usize,
        score: f64,
    },
    /// The node is not in that year's graph.
    Absent,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankTrajectory {
    pub node: NodeKey,
    /// One cell per sampled year.
    pub ranks: Vec<RankCell>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankSeries {
    pub kind: Option<CentralityKind>,
    pub years: Vec<i32>,
    pub top_k: usize,
    pub nodes: Vec<RankTrajectory>,
}

impl RankSeries {
    pub fn trajectory(&self, id: &str) -> Option<&RankTrajectory> {
        self.nodes.iter().find(|t| t.node.id == id)
    }

    /// Export rows `year,node,node_kind,rank,score`; absent nodes carry
    /// `N/A` as rank and an empty score.
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(["year", "node", "node_kind", "rank", "score"])
            .meta("centrality", self.kind)
            .meta("top_k", self.top_k)
            .meta("sample_years", &self.years)
            .meta("tie_rule", "score descending, then node id ascending");
        for traj in &self.nodes {
            for (&year, cell) in self.years.iter().zip(&traj.ranks) {
                let (rank, score): (Cell, Cell) = match *cell {
                    RankCell::Ranked { rank, score } => (rank.into(), score.into()),
                    RankCell::Absent => ("N/A".into(), Cell::Null),
                };
                t.push(vec![
                    year.into(),
                    traj.node.id.as_str().into(),
                    traj.node.kind.as_str().into(),
                    rank,
                    score,
                ]);
            }
        }
        t
    }
}

/// Trajectories of every node that reaches the top `top_k` in at least one
/// sampled year. Nodes are listed by the first sampled year they reach the
/// top, then by their rank in that year.
pub fn rank_over_time(
    tables: &BTreeMap<i32, CentralityTable>,
    sample_years: &[i32],
    top_k: usize,
) -> RankSeries {
    let years: Vec<i32> = sample_years
        .iter()
        .copied()
        .filter(|y| tables.contains_key(y))
        .collect();
    let ranked: Vec<HashMap<&NodeKey, (usize, f64)>> = years
        .iter()
        .map(|y| {
            let t = &tables[y];
            rank_order(t)
                .into_iter()
                .enumerate()
                .map(|(r, i)| (&t.nodes[i], (r + 1, t.scores[i])))
                .collect()
        })
        .collect();
    let mut entered: Vec<(usize, usize, &NodeKey)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (yi, y) in years.iter().enumerate() {
        let t = &tables[y];
        for (r, i) in rank_order(t).into_iter().take(top_k).enumerate() {
            if seen.insert(&t.nodes[i]) {
                entered.push((yi, r, &t.nodes[i]));
            }
        }
    }
    let nodes = entered
        .into_iter()
        .map(|(_, _, node)| RankTrajectory {
            node: node.clone(),
            ranks: ranked
                .iter()
                .map(|m| match m.get(node) {
                    Some(&(rank, score)) => RankCell::Ranked { rank, score },
                    None => RankCell::Absent,
                })
                .collect(),
        })
        .collect();
    RankSeries {
        kind: tables.values().next().map(|t| t.kind),
        years,
        top_k,
        nodes,
    }
}
