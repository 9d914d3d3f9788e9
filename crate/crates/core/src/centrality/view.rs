use crate::graphs::LabeledGraph;

/// Compressed adjacency of the simple projection of a graph: parallel
/// edges collapsed, self-loops dropped, neighbour lists sorted.
#[derive(Debug, Clone)]
pub(crate) struct Csr {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Csr {
    fn from_pairs(n: usize, mut pairs: Vec<(u32, u32)>) -> Self {
        pairs.sort_unstable();
        pairs.dedup();
        let mut offsets = vec![0usize; n + 1];
        for &(s, _) in &pairs {
            offsets[s as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        Self {
            offsets,
            targets: pairs.into_iter().map(|(_, t)| t).collect(),
        }
    }

    /// Out-neighbours following direction on directed graphs, both
    /// directions on undirected ones.
    pub fn forward(graph: &LabeledGraph) -> Self {
        Self::build(graph, !graph.is_directed())
    }

    /// Neighbours with edge direction ignored.
    pub fn undirected(graph: &LabeledGraph) -> Self {
        Self::build(graph, true)
    }

    fn build(graph: &LabeledGraph, symmetric: bool) -> Self {
        let mut pairs = Vec::with_capacity(graph.distinct_edge_count() * (1 + symmetric as usize));
        for e in graph.edges().filter(|e| e.source != e.target) {
            pairs.push((e.source, e.target));
            if symmetric {
                pairs.push((e.target, e.source));
            }
        }
        Self::from_pairs(graph.node_count(), pairs)
    }

    pub fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn neighbors(&self, u: usize) -> &[u32] {
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.offsets[u + 1] - self.offsets[u]
    }
}
