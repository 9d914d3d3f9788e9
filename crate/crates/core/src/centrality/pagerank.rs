use super::{CentralityError, CentralityKind, CentralityParams, CentralityTable, Convergence};
use crate::graphs::LabeledGraph;

/// Weighted in-edge lists: `(source, multiplicity)` per target, plus the
/// weighted out-degree of every node. Undirected edges count both ways.
fn flow(graph: &LabeledGraph) -> (Vec<Vec<(u32, f64)>>, Vec<f64>) {
    let n = graph.node_count();
    let mut incoming = vec![Vec::new(); n];
    let mut out = vec![0.0; n];
    for e in graph.edges() {
        let m = f64::from(e.multiplicity);
        incoming[e.target as usize].push((e.source, m));
        out[e.source as usize] += m;
        if !graph.is_directed() && e.source != e.target {
            incoming[e.source as usize].push((e.target, m));
            out[e.target as usize] += m;
        }
    }
    (incoming, out)
}

/// Power iteration of score(u) = q/n + (1 − q) Σ_{v→u} score(v) m(v,u) / k_v^out.
///
/// Parallel edges weigh by multiplicity and self-loops return mass to their
/// node. Nodes without out-edges spread their mass uniformly. Iteration
/// stops once the L1 change drops below `tol`, or after `max_iter` rounds;
/// the outcome is recorded in the table's convergence report.
pub fn pagerank(
    graph: &LabeledGraph,
    params: &CentralityParams,
) -> Result<CentralityTable, CentralityError> {
    let q = params.q;
    if !(0.0..=1.0).contains(&q) || q.is_nan() {
        return Err(CentralityError::InvalidParameter(format!(
            "q = {q} is outside [0, 1]"
        )));
    }
    if params.tol.is_nan() || params.tol <= 0.0 {
        return Err(CentralityError::InvalidParameter(format!(
            "tol = {} must be positive",
            params.tol
        )));
    }
    let n = graph.node_count();
    if n == 0 {
        let mut t = CentralityTable::new(CentralityKind::Pagerank, graph, Vec::new(), params);
        t.convergence = Some(Convergence {
            iterations: 0,
            converged: true,
            l1_delta: 0.0,
        });
        return Ok(t);
    }
    let (incoming, out) = flow(graph);
    let nf = n as f64;
    let teleport = q / nf;
    let mut score = vec![1.0 / nf; n];
    let mut next = vec![0.0; n];
    let mut report = Convergence {
        iterations: 0,
        converged: false,
        l1_delta: f64::INFINITY,
    };
    while report.iterations < params.max_iter {
        let dangling: f64 = (0..n).filter(|&v| out[v] == 0.0).map(|v| score[v]).sum();
        let spread = dangling / nf;
        for (u, slot) in next.iter_mut().enumerate() {
            let inflow: f64 = incoming[u]
                .iter()
                .map(|&(v, m)| score[v as usize] * m / out[v as usize])
                .sum();
            *slot = teleport + (1.0 - q) * (inflow + spread);
        }
        report.iterations += 1;
        report.l1_delta = score.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut score, &mut next);
        if report.l1_delta < params.tol {
            report.converged = true;
            break;
        }
    }
    if n == 1 {
        report.converged = true;
    }
    let mut table = CentralityTable::new(CentralityKind::Pagerank, graph, score, params);
    table.convergence = Some(report);
    Ok(table)
}
