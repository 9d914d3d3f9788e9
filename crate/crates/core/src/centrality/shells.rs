use super::view::Csr;
use super::{CentralityError, CentralityKind, CentralityParams, CentralityTable};
use crate::graphs::{EdgeKind, LabeledGraph, NodeKind};

/// Largest h such that at least h entries are ≥ h.
pub fn h_index(citation_counts: &[u64]) -> u64 {
    let mut sorted = citation_counts.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    sorted
        .iter()
        .enumerate()
        .take_while(|&(i, &c)| c > i as u64)
        .count() as u64
}

/// Per-author h-index on a graph with authorship edges.
///
/// An author's papers are the targets of its authorship edges; a paper's
/// citation count is its citation in-degree. Paper nodes score 0.
pub fn h_index_table(
    graph: &LabeledGraph,
    params: &CentralityParams,
) -> Result<CentralityTable, CentralityError> {
    let n = graph.node_count();
    let mut cited = vec![0u64; n];
    let mut authored: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut has_authorship = false;
    for e in graph.edges() {
        match e.kind {
            EdgeKind::Citation => cited[e.target as usize] += u64::from(e.multiplicity),
            EdgeKind::Authorship => {
                has_authorship = true;
                authored[e.source as usize].push(e.target);
            }
            EdgeKind::Collaboration => {}
        }
    }
    if !has_authorship && graph.nodes().any(|k| k.kind != NodeKind::Paper) {
        return Err(CentralityError::Unsupported {
            kind: CentralityKind::HIndex,
            reason: "the graph has no authorship edges linking authors to papers".into(),
        });
    }
    let scores = authored
        .iter()
        .map(|papers| {
            let counts: Vec<u64> = papers.iter().map(|&p| cited[p as usize]).collect();
            h_index(&counts) as f64
        })
        .collect();
    Ok(CentralityTable::new(
        CentralityKind::HIndex,
        graph,
        scores,
        params,
    ))
}

/// k-shell index by iterative pruning on the undirected simple view.
///
/// Starting from k = 0, nodes whose remaining degree is at most k are
/// removed repeatedly and assigned shell k; then k grows.
pub fn coreness(graph: &LabeledGraph, params: &CentralityParams) -> CentralityTable {
    let adj = Csr::undirected(graph);
    let n = adj.len();
    let mut degree: Vec<usize> = (0..n).map(|u| adj.degree(u)).collect();
    let mut shell = vec![0usize; n];
    let mut removed = vec![false; n];
    let mut remaining = n;
    let mut k = 0;
    let mut stack = Vec::new();
    while remaining > 0 {
        stack.extend((0..n).filter(|&u| !removed[u] && degree[u] <= k));
        for &u in &stack {
            removed[u] = true;
        }
        while let Some(u) = stack.pop() {
            shell[u] = k;
            remaining -= 1;
            for &v in adj.neighbors(u) {
                let v = v as usize;
                if !removed[v] {
                    degree[v] -= 1;
                    if degree[v] <= k {
                        removed[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        // Levels between k and the smallest remaining degree are empty.
        k = (0..n)
            .filter(|&u| !removed[u])
            .map(|u| degree[u])
            .min()
            .map_or(k + 1, |d| d.max(k + 1));
    }
    let scores = shell.into_iter().map(|s| s as f64).collect();
    CentralityTable::new(CentralityKind::Coreness, graph, scores, params)
}
