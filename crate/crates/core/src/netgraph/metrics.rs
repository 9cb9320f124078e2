use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::SemanticGraph;

/// Unweighted structural description of a graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkSummary {
    pub vertices: usize,
    pub edges: usize,
    pub mean_distance: Option<f64>,
    pub mean_degree: f64,
    /// Sample standard deviation of the degree sequence.
    pub degree_sd: f64,
    pub clique_number: usize,
    pub density: Option<f64>,
    pub transitivity: Option<f64>,
    pub assortativity: Option<f64>,
}

pub fn network_summary(g: &SemanticGraph) -> NetworkSummary {
    let (mean_degree, degree_sd) = degree_stats(g);
    NetworkSummary {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        mean_distance: mean_distance(g),
        mean_degree,
        degree_sd,
        clique_number: clique_number(g),
        density: density(g),
        transitivity: transitivity(g),
        assortativity: assortativity(g),
    }
}

/// Average shortest-path length over unordered pairs joined by a path.
pub fn mean_distance(g: &SemanticGraph) -> Option<f64> {
    let (sum, pairs) = (0..g.vertex_count())
        .into_par_iter()
        .map(|s| {
            g.bfs_distances(s)
                .iter()
                .enumerate()
                .filter(|(t, _)| *t > s)
                .filter_map(|(_, d)| *d)
                .fold((0u64, 0u64), |acc, d| (acc.0 + d as u64, acc.1 + 1))
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    (pairs > 0).then(|| sum as f64 / pairs as f64)
}

/// Mean and sample standard deviation of vertex degrees.
pub fn degree_stats(g: &SemanticGraph) -> (f64, f64) {
    let n = g.vertex_count();
    if n == 0 {
        return (0.0, 0.0);
    }
    let degrees: Vec<f64> = (0..n).map(|v| g.degree(v) as f64).collect();
    let mean = degrees.iter().sum::<f64>() / n as f64;
    if n < 2 {
        return (mean, 0.0);
    }
    let var = degrees.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, var.sqrt())
}

pub fn density(g: &SemanticGraph) -> Option<f64> {
    let n = g.vertex_count() as f64;
    (g.vertex_count() >= 2).then(|| 2.0 * g.edge_count() as f64 / (n * (n - 1.0)))
}

/// Closed triples over connected triples (global clustering coefficient).
pub fn transitivity(g: &SemanticGraph) -> Option<f64> {
    let mut closed = 0u64;
    let mut triples = 0u64;
    for v in 0..g.vertex_count() {
        let nb = g.neighbors(v);
        let d = nb.len() as u64;
        triples += d * d.saturating_sub(1) / 2;
        for (i, &(a, _)) in nb.iter().enumerate() {
            for &(b, _) in &nb[i + 1..] {
                if g.has_edge(a, b) {
                    closed += 1;
                }
            }
        }
    }
    (triples > 0).then(|| closed as f64 / triples as f64)
}

/// Pearson correlation of the degrees at the two ends of each edge, both
/// orientations included. `None` when every edge end has the same degree.
pub fn assortativity(g: &SemanticGraph) -> Option<f64> {
    let m = g.edge_count();
    if m == 0 {
        return None;
    }
    let (mut sxy, mut sx, mut sxx) = (0.0, 0.0, 0.0);
    for (u, v, _) in g.edges() {
        let (a, b) = (g.degree(u) as f64, g.degree(v) as f64);
        sxy += a * b;
        sx += a + b;
        sxx += a * a + b * b;
    }
    let count = 2.0 * m as f64;
    let mean = sx / count;
    let cov = 2.0 * sxy / count - mean * mean;
    let var = sxx / count - mean * mean;
    if var.abs() <= 1e-12 * mean * mean {
        return None;
    }
    Some(cov / var)
}

/// Size of the largest clique (0 for an empty graph).
pub fn clique_number(g: &SemanticGraph) -> usize {
    let n = g.vertex_count();
    if n == 0 {
        return 0;
    }
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().map(|(u, _)| *u).collect())
        .collect();
    let mut best = 1;
    // Each vertex with its later neighbors in degeneracy order seeds a
    // search; every clique is found from its earliest vertex.
    let order = degeneracy_order(&adj);
    let mut rank = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    for &v in &order {
        let mut cand: Vec<usize> = adj[v].iter().copied().filter(|&u| rank[u] > rank[v]).collect();
        if cand.len() < best {
            continue;
        }
        cand.sort_unstable();
        expand(&adj, 1, cand, &mut best);
    }
    best
}

fn expand(adj: &[Vec<usize>], size: usize, cand: Vec<usize>, best: &mut usize) {
    if cand.is_empty() {
        *best = (*best).max(size);
        return;
    }
    if size + cand.len() <= *best || size + color_bound(adj, &cand) <= *best {
        return;
    }
    for (i, &v) in cand.iter().enumerate() {
        if size + (cand.len() - i) <= *best {
            return;
        }
        let next = intersect_sorted(&cand[i + 1..], &adj[v]);
        expand(adj, size + 1, next, best);
    }
}

/// Greedy coloring of the candidate set; the color count bounds any clique in it.
fn color_bound(adj: &[Vec<usize>], cand: &[usize]) -> usize {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in cand {
        match classes
            .iter_mut()
            .find(|c| c.iter().all(|u| adj[v].binary_search(u).is_err()))
        {
            Some(c) => c.push(v),
            None => classes.push(vec![v]),
        }
    }
    classes.len()
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn degeneracy_order(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let max_deg = degree.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_deg + 1];
    for v in 0..n {
        buckets[degree[v]].push(v);
    }
    let mut d = 0;
    while order.len() < n {
        d = d.min(max_deg);
        while buckets[d].is_empty() {
            d += 1;
        }
        let v = buckets[d].pop().unwrap_or(0);
        if removed[v] || degree[v] != d {
            continue;
        }
        removed[v] = true;
        order.push(v);
        for &u in &adj[v] {
            if !removed[u] {
                degree[u] -= 1;
                buckets[degree[u]].push(u);
                d = d.min(degree[u]);
            }
        }
    }
    order
}
