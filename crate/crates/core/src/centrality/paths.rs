//! Shortest-path centralities (Brandes accumulation and BFS distance sums).

use std::collections::VecDeque;

use super::pool::{map_nodes, sum_over_sources};
use super::view::Csr;
use super::{
    CentralityError, CentralityKind, CentralityParams, CentralityTable, ClosenessMode, Normalizer,
    PathMode,
};
use crate::graphs::LabeledGraph;

/// Adjacency used for path searches, and whether pairs are unordered.
fn path_view(graph: &LabeledGraph, mode: PathMode) -> (Csr, bool) {
    if graph.is_directed() && mode == PathMode::Directed {
        (Csr::forward(graph), false)
    } else {
        (Csr::undirected(graph), true)
    }
}

/// Single-source dependency accumulation; adds δ_s(v) to `acc[v]`.
fn accumulate_from(adj: &Csr, s: usize, acc: &mut [f64]) {
    let n = adj.len();
    let mut dist = vec![u32::MAX; n];
    let mut sigma = vec![0.0f64; n];
    let mut delta = vec![0.0f64; n];
    let mut preds: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut stack = Vec::with_capacity(n);
    let mut queue = VecDeque::new();
    dist[s] = 0;
    sigma[s] = 1.0;
    queue.push_back(s);
    while let Some(v) = queue.pop_front() {
        stack.push(v);
        for &w in adj.neighbors(v) {
            let wi = w as usize;
            if dist[wi] == u32::MAX {
                dist[wi] = dist[v] + 1;
                queue.push_back(wi);
            }
            if dist[wi] == dist[v] + 1 {
                sigma[wi] += sigma[v];
                preds[wi].push(v as u32);
            }
        }
    }
    while let Some(w) = stack.pop() {
        let coeff = (1.0 + delta[w]) / sigma[w];
        for &v in &preds[w] {
            delta[v as usize] += sigma[v as usize] * coeff;
        }
        if w != s {
            acc[w] += delta[w];
        }
    }
}

/// Normalised betweenness, summed over pairs joined by at least one path.
///
/// Undirected (or symmetrised) graphs sum over unordered pairs, directed
/// graphs over ordered pairs. The denominator is chosen by
/// `params.normalizer`. Graphs with fewer than three nodes score zero.
pub fn betweenness(
    graph: &LabeledGraph,
    params: &CentralityParams,
    workers: usize,
) -> CentralityTable {
    let n = graph.node_count();
    if n < 3 {
        return CentralityTable::new(CentralityKind::Betweenness, graph, vec![0.0; n], params);
    }
    let (adj, unordered) = path_view(graph, params.path_mode);
    let raw = sum_over_sources(n, workers, |s, acc| accumulate_from(&adj, s, acc));
    let pairs = ((n - 1) * (n - 2)) as f64;
    let denom = match params.normalizer {
        Normalizer::Undirected => pairs / 2.0,
        Normalizer::Directed => pairs,
    };
    // every unordered pair is seen once from each endpoint
    let scale = if unordered { 2.0 * denom } else { denom };
    let scores = raw.into_iter().map(|b| b / scale).collect();
    CentralityTable::new(CentralityKind::Betweenness, graph, scores, params)
}

/// Hop distances from `s`; `u32::MAX` marks unreachable nodes.
pub(crate) fn bfs_distances(adj: &Csr, s: usize) -> Vec<u32> {
    let mut dist = vec![u32::MAX; adj.len()];
    let mut queue = VecDeque::new();
    dist[s] = 0;
    queue.push_back(s);
    while let Some(v) = queue.pop_front() {
        for &w in adj.neighbors(v) {
            let w = w as usize;
            if dist[w] == u32::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

enum Farness {
    Score(f64),
    Unreachable(usize),
}

/// (n − 1) / Σ_v d(u, v), with d following edge direction on directed graphs.
///
/// Strict mode fails when any node cannot reach another. Per-component mode
/// evaluates the formula over the nodes reachable from u, with n replaced by
/// their count (including u); nodes that reach nothing score zero.
pub fn closeness(
    graph: &LabeledGraph,
    params: &CentralityParams,
    workers: usize,
) -> Result<CentralityTable, CentralityError> {
    let n = graph.node_count();
    let (adj, _) = path_view(graph, params.path_mode);
    let strict = params.closeness_mode == ClosenessMode::Strict;
    let results = map_nodes(n, workers, |u| {
        let dist = bfs_distances(&adj, u);
        let mut reached = 0usize;
        let mut total = 0u64;
        for (v, &d) in dist.iter().enumerate() {
            if v == u {
                continue;
            }
            if d == u32::MAX {
                if strict {
                    return Farness::Unreachable(v);
                }
            } else {
                reached += 1;
                total += u64::from(d);
            }
        }
        Farness::Score(if reached == 0 {
            0.0
        } else {
            reached as f64 / total as f64
        })
    });
    let mut scores = Vec::with_capacity(n);
    for (u, r) in results.into_iter().enumerate() {
        match r {
            Farness::Score(s) => scores.push(s),
            Farness::Unreachable(v) => {
                return Err(CentralityError::Disconnected {
                    from: graph.node(u as u32).clone(),
                    to: graph.node(v as u32).clone(),
                })
            }
        }
    }
    Ok(CentralityTable::new(
        CentralityKind::Closeness,
        graph,
        scores,
        params,
    ))
}
