//! Weighted undirected word graphs and their structural analysis.

mod centrality;
pub mod community;
pub mod export;
mod kcore;
mod metrics;

use std::collections::{BTreeMap, VecDeque};

use crate::ngram::PairCounts;

pub use centrality::{betweenness_centrality, eigenvector_centrality, EigenOptions};
pub use community::{
    adjusted_rand_index, community_top_terms, detect_communities, exhaustive_modularity,
    modularity, CommunityMethod, CommunityResult, DetectOptions, Detection, Partition,
};
pub use kcore::{k_core_decomposition, k_core_filter_below_median, KCoreView};
pub use metrics::{
    assortativity, clique_number, degree_stats, density, mean_distance, network_summary,
    transitivity, NetworkSummary,
};

/// Undirected graph with positive integer edge weights and no self-loops.
/// Neighbor lists are sorted by vertex index.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SemanticGraph {
    labels: Vec<String>,
    adj: Vec<Vec<(usize, u64)>>,
    edges: usize,
}

impl SemanticGraph {
    /// Builds a graph over `n` unlabeled vertices named `0..n`. Self-loops
    /// and zero weights are ignored; repeated edges add their weights.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize, u64)>) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::from_labeled_edges(labels, edges)
    }

    pub fn from_labeled_edges(
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize, u64)>,
    ) -> Self {
        let n = labels.len();
        let mut maps: Vec<BTreeMap<usize, u64>> = vec![BTreeMap::new(); n];
        for (u, v, w) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) out of range for {n} vertices");
            if u == v || w == 0 {
                continue;
            }
            *maps[u].entry(v).or_default() += w;
            *maps[v].entry(u).or_default() += w;
        }
        let adj: Vec<Vec<(usize, u64)>> = maps.into_iter().map(|m| m.into_iter().collect()).collect();
        let edges = adj.iter().map(Vec::len).sum::<usize>() / 2;
        SemanticGraph { labels, adj, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, u64)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn weighted_degree(&self, v: usize) -> u64 {
        self.adj[v].iter().map(|(_, w)| w).sum()
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<u64> {
        self.adj[u]
            .binary_search_by_key(&v, |(x, _)| *x)
            .ok()
            .map(|i| self.adj[u][i].1)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.weight(u, v).is_some()
    }

    /// Each edge once, as `(u, v, weight)` with `u < v`, in index order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, nb)| {
            nb.iter()
                .filter(move |(v, _)| u < *v)
                .map(move |&(v, w)| (u, v, w))
        })
    }

    pub fn total_weight(&self, use_weights: bool) -> f64 {
        self.edges()
            .map(|(_, _, w)| if use_weights { w as f64 } else { 1.0 })
            .sum()
    }

    /// Subgraph induced by `vertices`, which keep their relative order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> SemanticGraph {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut new_index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            new_index[v] = i;
        }
        let labels = keep.iter().map(|&v| self.labels[v].clone()).collect();
        let edges: Vec<_> = self
            .edges()
            .filter(|(u, v, _)| new_index[*u] != usize::MAX && new_index[*v] != usize::MAX)
            .map(|(u, v, w)| (new_index[u], new_index[v], w))
            .collect();
        SemanticGraph::from_labeled_edges(labels, edges)
    }

    /// Connected components, each sorted, ordered by their smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &(v, _) in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub(crate) fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for &(v, _) in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }
}

/// One vertex per distinct word, one edge per pair weighted by its count.
/// Vertices are ordered lexicographically by label.
pub fn build_graph(pc: &PairCounts) -> SemanticGraph {
    let mut index: BTreeMap<&str, usize> = BTreeMap::new();
    for (a, b, _) in pc.iter() {
        index.insert(a, 0);
        index.insert(b, 0);
    }
    for (i, slot) in index.values_mut().enumerate() {
        *slot = i;
    }
    let labels = index.keys().map(|s| s.to_string()).collect();
    let edges: Vec<_> = pc
        .iter()
        .filter(|(a, b, _)| a != b)
        .map(|(a, b, c)| (index[a], index[b], c))
        .collect();
    SemanticGraph::from_labeled_edges(labels, edges)
}

/// Induced subgraph on the largest component; ties go to the component
/// holding the lowest vertex index.
pub fn giant_component(g: &SemanticGraph) -> SemanticGraph {
    let comps = g.components();
    let mut best: Option<&Vec<usize>> = None;
    for c in &comps {
        if best.is_none_or(|b| c.len() > b.len()) {
            best = Some(c);
        }
    }
    match best {
        Some(c) if c.len() == g.vertex_count() => g.clone(),
        Some(c) => g.induced_subgraph(c),
        None => SemanticGraph::default(),
    }
}
