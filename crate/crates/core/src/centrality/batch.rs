use std::collections::BTreeMap;

use super::{
    betweenness, closeness, coreness, degree, h_index_table, pagerank, semi_local, volume,
    CentralityError, CentralityKind, CentralityParams, CentralityTable, DegreeMode,
};
use crate::graphs::{LabeledGraph, SnapshotSeries};

/// Computes one centrality on one graph.
pub fn compute(
    graph: &LabeledGraph,
    kind: CentralityKind,
    params: &CentralityParams,
    workers: usize,
) -> Result<CentralityTable, CentralityError> {
    match kind {
        CentralityKind::Degree => degree(graph, DegreeMode::Total, params),
        CentralityKind::InDegree => degree(graph, DegreeMode::In, params),
        CentralityKind::OutDegree => degree(graph, DegreeMode::Out, params),
        CentralityKind::Betweenness => Ok(betweenness(graph, params, workers)),
        CentralityKind::Closeness => closeness(graph, params, workers),
        CentralityKind::Pagerank => pagerank(graph, params),
        CentralityKind::SemiLocal => Ok(semi_local(graph, params)),
        CentralityKind::Volume => volume(graph, params, workers),
        CentralityKind::HIndex => h_index_table(graph, params),
        CentralityKind::Coreness => Ok(coreness(graph, params)),
    }
}

/// One result per (year, kind) of the series. A failing item does not
/// stop the others.
pub fn all_centralities(
    series: &SnapshotSeries,
    kinds: &[CentralityKind],
    params: &CentralityParams,
    workers: usize,
) -> BTreeMap<(i32, CentralityKind), Result<CentralityTable, CentralityError>> {
    let mut out = BTreeMap::new();
    for snapshot in &series.years {
        for &kind in kinds {
            out.insert(
                (snapshot.year, kind),
                compute(&snapshot.graph, kind, params, workers),
            );
        }
    }
    out
}
