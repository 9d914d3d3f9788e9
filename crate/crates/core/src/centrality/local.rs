//! Neighbourhood-based measures on the undirected simple view.

use std::collections::HashSet;

use super::pool::map_nodes;
use super::view::Csr;
use super::{CentralityError, CentralityKind, CentralityParams, CentralityTable};
use crate::graphs::LabeledGraph;

/// Number of distinct nodes at distance one or two from `w`.
fn reach2(adj: &Csr, w: usize, mark: &mut [usize], stamp: usize) -> u64 {
    mark[w] = stamp;
    let mut count = 0;
    for &v in adj.neighbors(w) {
        if mark[v as usize] != stamp {
            mark[v as usize] = stamp;
            count += 1;
        }
    }
    for &v in adj.neighbors(w) {
        for &x in adj.neighbors(v as usize) {
            if mark[x as usize] != stamp {
                mark[x as usize] = stamp;
                count += 1;
            }
        }
    }
    count
}

/// score(u) = Σ_{v ∈ N(u)} Σ_{w ∈ N(v)} d₂(w), where d₂(w) counts the
/// distinct nodes within two hops of w. Direction and self-loops are ignored.
pub fn semi_local(graph: &LabeledGraph, params: &CentralityParams) -> CentralityTable {
    let adj = Csr::undirected(graph);
    let n = adj.len();
    let mut mark = vec![usize::MAX; n];
    let d2: Vec<u64> = (0..n).map(|w| reach2(&adj, w, &mut mark, w)).collect();
    let s: Vec<u64> = (0..n)
        .map(|v| adj.neighbors(v).iter().map(|&w| d2[w as usize]).sum())
        .collect();
    let scores = (0..n)
        .map(|u| adj.neighbors(u).iter().map(|&v| s[v as usize]).sum::<u64>() as f64)
        .collect();
    CentralityTable::new(CentralityKind::SemiLocal, graph, scores, params)
}

/// Nodes within `h` hops of `u`, including `u`.
fn within(adj: &Csr, u: usize, h: u32) -> HashSet<usize> {
    let mut seen = HashSet::from([u]);
    let mut frontier = vec![u];
    for _ in 0..h {
        let mut next = Vec::new();
        for v in frontier {
            for &w in adj.neighbors(v) {
                if seen.insert(w as usize) {
                    next.push(w as usize);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    seen
}

/// Sum of degrees over u and every node within `params.h` hops of u, on
/// the undirected simple view.
pub fn volume(
    graph: &LabeledGraph,
    params: &CentralityParams,
    workers: usize,
) -> Result<CentralityTable, CentralityError> {
    if params.h == 0 {
        return Err(CentralityError::InvalidParameter(
            "volume needs h >= 1".into(),
        ));
    }
    let adj = Csr::undirected(graph);
    let h = params.h;
    let scores = map_nodes(adj.len(), workers, |u| {
        within(&adj, u, h)
            .into_iter()
            .map(|v| adj.degree(v) as u64)
            .sum::<u64>() as f64
    });
    Ok(CentralityTable::new(
        CentralityKind::Volume,
        graph,
        scores,
        params,
    ))
}
