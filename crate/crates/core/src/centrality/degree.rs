use std::collections::HashSet;

use super::{CentralityError, CentralityKind, CentralityParams, CentralityTable, DegreeMode};
use crate::graphs::LabeledGraph;

/// k_u / (n − 1).
///
/// By default k counts edge endpoints with multiplicity: a directed
/// self-loop adds one to both in- and out-degree, an undirected one adds
/// two. With `params.distinct_degree`, k counts distinct other nodes.
pub fn degree(
    graph: &LabeledGraph,
    mode: DegreeMode,
    params: &CentralityParams,
) -> Result<CentralityTable, CentralityError> {
    if !graph.is_directed() && mode != DegreeMode::Total {
        return Err(CentralityError::InvalidMode { mode });
    }
    let kind = match mode {
        DegreeMode::Total => CentralityKind::Degree,
        DegreeMode::In => CentralityKind::InDegree,
        DegreeMode::Out => CentralityKind::OutDegree,
    };
    let n = graph.node_count();
    let mut k_in = vec![0u64; n];
    let mut k_out = vec![0u64; n];
    if params.distinct_degree {
        let mut seen = HashSet::new();
        for e in graph.edges().filter(|e| e.source != e.target) {
            if seen.insert((e.source, e.target)) {
                k_out[e.source as usize] += 1;
                k_in[e.target as usize] += 1;
            }
        }
    } else {
        for e in graph.edges() {
            let m = u64::from(e.multiplicity);
            k_out[e.source as usize] += m;
            k_in[e.target as usize] += m;
        }
    }
    // Undirected edges are stored once; both endpoints were credited, one
    // through each array, so the total below is the undirected degree.
    let k: Vec<u64> = match mode {
        DegreeMode::Total => k_in.iter().zip(&k_out).map(|(a, b)| a + b).collect(),
        DegreeMode::In => k_in,
        DegreeMode::Out => k_out,
    };
    let scores = if n <= 1 {
        vec![0.0; n]
    } else {
        let denom = (n - 1) as f64;
        k.into_iter().map(|k| k as f64 / denom).collect()
    };
    Ok(CentralityTable::new(kind, graph, scores, params))
}
