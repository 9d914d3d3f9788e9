//! Slow, direct reference implementations over `(n, edge list)` graphs.

use nalgebra::{DMatrix, DVector};
use rand::Rng;

pub const INF: u32 = u32::MAX;

/// Every connected labelled simple undirected graph on `n` nodes.
pub fn connected_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            pairs
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect::<Vec<_>>()
        })
        .filter(|edges| {
            let d = floyd(n, false, edges);
            d[0].iter().all(|&x| x != INF)
        })
        .collect()
}

/// Random directed multigraph with up to `max_n` nodes; may contain
/// parallel edges and self-loops.
pub fn random_digraph(rng: &mut impl Rng, max_n: usize) -> (usize, Vec<(usize, usize)>) {
    let n = rng.gen_range(1..=max_n);
    let p = rng.gen_range(0.1..0.6);
    let mut edges = Vec::new();
    for s in 0..n {
        for t in 0..n {
            if rng.gen_bool(p) {
                edges.push((s, t));
                if rng.gen_bool(0.1) {
                    edges.push((s, t));
                }
            }
        }
    }
    (n, edges)
}

/// All-pairs hop distances; self-loops and repeats have no effect.
pub fn floyd(n: usize, directed: bool, edges: &[(usize, usize)]) -> Vec<Vec<u32>> {
    let mut d = vec![vec![INF; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for &(s, t) in edges {
        if s != t {
            d[s][t] = 1;
            if !directed {
                d[t][s] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] != INF && d[k][j] != INF && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

fn adjacency(n: usize, directed: bool, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; n]; n];
    for &(s, t) in edges {
        if s != t {
            a[s][t] = true;
            if !directed {
                a[t][s] = true;
            }
        }
    }
    a
}

/// Lists every shortest s→t path explicitly.
fn shortest_paths(a: &[Vec<bool>], d: &[Vec<u32>], s: usize, t: usize) -> Vec<Vec<usize>> {
    fn walk(
        a: &[Vec<bool>],
        d: &[Vec<u32>],
        path: &mut Vec<usize>,
        t: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        let v = *path.last().unwrap();
        if v == t {
            out.push(path.clone());
            return;
        }
        for w in 0..a.len() {
            if a[v][w] && d[w][t] != INF && d[w][t] + 1 == d[v][t] {
                path.push(w);
                walk(a, d, path, t, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    if d[s][t] != INF {
        walk(a, d, &mut vec![s], t, &mut out);
    }
    out
}

/// Betweenness by enumerating every shortest path of every pair.
/// `ordered` selects ordered pairs; `denom` is the normaliser.
pub fn betweenness(
    n: usize,
    directed: bool,
    edges: &[(usize, usize)],
    ordered: bool,
    denom: f64,
) -> Vec<f64> {
    let mut score = vec![0.0; n];
    if n < 3 {
        return score;
    }
    let a = adjacency(n, directed, edges);
    let d = floyd(n, directed, edges);
    for s in 0..n {
        for t in 0..n {
            if s == t || (!ordered && t < s) {
                continue;
            }
            let paths = shortest_paths(&a, &d, s, t);
            if paths.is_empty() {
                continue;
            }
            for (u, slot) in score.iter_mut().enumerate() {
                if u == s || u == t {
                    continue;
                }
                let through = paths.iter().filter(|p| p.contains(&u)).count();
                *slot += through as f64 / paths.len() as f64;
            }
        }
    }
    score.iter().map(|b| b / denom).collect()
}

/// Closeness from the distance matrix; `None` if some pair is unreachable.
pub fn closeness_strict(n: usize, directed: bool, edges: &[(usize, usize)]) -> Option<Vec<f64>> {
    let d = floyd(n, directed, edges);
    (0..n)
        .map(|u| {
            let mut total = 0u64;
            for (v, &x) in d[u].iter().enumerate() {
                if v != u {
                    if x == INF {
                        return None;
                    }
                    total += u64::from(x);
                }
            }
            Some(if n == 1 {
                0.0
            } else {
                (n - 1) as f64 / total as f64
            })
        })
        .collect()
}

/// Direct solve of x = q/n + (1 − q) M x, where M moves mass along
/// out-edges (weighted by multiplicity) and spreads dangling mass evenly.
pub fn pagerank(n: usize, directed: bool, edges: &[(usize, usize)], q: f64) -> Vec<f64> {
    let mut w = DMatrix::<f64>::zeros(n, n);
    for &(s, t) in edges {
        w[(t, s)] += 1.0;
        if !directed && s != t {
            w[(s, t)] += 1.0;
        }
    }
    let mut m = DMatrix::<f64>::zeros(n, n);
    for v in 0..n {
        let out: f64 = w.column(v).sum();
        for u in 0..n {
            m[(u, v)] = if out == 0.0 {
                1.0 / n as f64
            } else {
                w[(u, v)] / out
            };
        }
    }
    let a = DMatrix::<f64>::identity(n, n) - m * (1.0 - q);
    let b = DVector::<f64>::from_element(n, q / n as f64);
    let x = a.lu().solve(&b).expect("non-singular system");
    x.iter().copied().collect()
}

/// Shell index as the largest k such that the node lies in some node set
/// whose members all have at least k neighbours inside the set.
pub fn coreness(n: usize, edges: &[(usize, usize)]) -> Vec<u32> {
    let a = adjacency(n, false, edges);
    let mut best = vec![0u32; n];
    for mask in 1u32..1 << n {
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let k = members
            .iter()
            .map(|&u| members.iter().filter(|&&v| a[u][v]).count())
            .min()
            .unwrap() as u32;
        for &u in &members {
            best[u] = best[u].max(k);
        }
    }
    best
}

pub fn h_index(counts: &[u64]) -> u64 {
    (0..=counts.len() as u64)
        .filter(|&h| counts.iter().filter(|&&c| c >= h).count() as u64 >= h)
        .max()
        .unwrap()
}

/// Semi-local score from the distance matrix of the undirected view.
pub fn semi_local(n: usize, edges: &[(usize, usize)]) -> Vec<f64> {
    let d = floyd(n, false, edges);
    let d2: Vec<usize> = (0..n)
        .map(|w| (0..n).filter(|&x| d[w][x] == 1 || d[w][x] == 2).count())
        .collect();
    let nb: Vec<Vec<usize>> = (0..n)
        .map(|u| (0..n).filter(|&v| d[u][v] == 1).collect())
        .collect();
    (0..n)
        .map(|u| {
            nb[u]
                .iter()
                .map(|&v| nb[v].iter().map(|&w| d2[w]).sum::<usize>())
                .sum::<usize>() as f64
        })
        .collect()
}

/// Volume from the distance matrix of the undirected view.
pub fn volume(n: usize, edges: &[(usize, usize)], h: u32) -> Vec<f64> {
    let d = floyd(n, false, edges);
    let deg: Vec<usize> = (0..n)
        .map(|u| (0..n).filter(|&v| d[u][v] == 1).count())
        .collect();
    (0..n)
        .map(|u| {
            (0..n)
                .filter(|&v| d[u][v] <= h)
                .map(|v| deg[v])
                .sum::<usize>() as f64
        })
        .collect()
}
