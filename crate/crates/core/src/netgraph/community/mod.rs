//! Partitions, modularity, and community detection.
//!
//! Modularity uses the standard form
//! `Q = (1/2m) * sum_ij (A_ij - d_i d_j / 2m) * [c_i == c_j]`, diagonal
//! terms included, which reduces to `sum_c (L_c / m - (D_c / 2m)^2)` with
//! `L_c` the internal edge weight and `D_c` the total degree of community c.

mod fast_greedy;
mod label_propagation;
mod louvain;
mod walktrap;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SemanticGraph;
use crate::error::{Error, Result};

/// Community assignment with dense ids `0..K`, numbered in order of first
/// appearance over the vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    membership: Vec<usize>,
    count: usize,
}

impl Partition {
    /// Relabels arbitrary ids densely.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut map = HashMap::new();
        let membership = labels
            .iter()
            .map(|l| {
                let next = map.len();
                *map.entry(*l).or_insert(next)
            })
            .collect();
        Partition {
            membership,
            count: map.len(),
        }
    }

    pub fn all_in_one(n: usize) -> Self {
        Self::from_labels(&vec![0; n])
    }

    pub fn singletons(n: usize) -> Self {
        Self::from_labels(&(0..n).collect::<Vec<_>>())
    }

    pub fn membership(&self) -> &[usize] {
        &self.membership
    }

    pub fn community_of(&self, v: usize) -> usize {
        self.membership[v]
    }

    pub fn community_count(&self) -> usize {
        self.count
    }

    pub fn len(&self) -> usize {
        self.membership.len()
    }

    pub fn is_empty(&self) -> bool {
        self.membership.is_empty()
    }

    /// Members of each community, ascending.
    pub fn communities(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count];
        for (v, &c) in self.membership.iter().enumerate() {
            out[c].push(v);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CommunityMethod {
    FastGreedy,
    Louvain,
    LabelPropagation,
    Walktrap,
}

impl CommunityMethod {
    pub const REQUIRED: [CommunityMethod; 3] = [
        CommunityMethod::FastGreedy,
        CommunityMethod::Louvain,
        CommunityMethod::LabelPropagation,
    ];
}

impl fmt::Display for CommunityMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CommunityMethod::FastGreedy => "fast_greedy",
            CommunityMethod::Louvain => "louvain",
            CommunityMethod::LabelPropagation => "label_propagation",
            CommunityMethod::Walktrap => "walktrap",
        })
    }
}

impl FromStr for CommunityMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "fast_greedy" | "fastgreedy" | "cnm" => CommunityMethod::FastGreedy,
            "louvain" | "multilevel" => CommunityMethod::Louvain,
            "label_propagation" | "labelpropagation" | "lpa" => CommunityMethod::LabelPropagation,
            "walktrap" => CommunityMethod::Walktrap,
            _ => return Err(Error::InvalidArgument(format!("unknown community method `{s}`"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommunityResult {
    pub method: CommunityMethod,
    pub partition: Partition,
    pub modularity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Detection {
    /// One entry per successful method, in method order.
    pub results: Vec<CommunityResult>,
    /// Index into `results` of the highest-modularity partition.
    pub best: usize,
    /// Methods that could not run, with the reason.
    pub failures: Vec<(CommunityMethod, String)>,
}

impl Detection {
    pub fn best(&self) -> &CommunityResult {
        &self.results[self.best]
    }
}

/// Adjacency with float weights and per-vertex loop weight, shared by the
/// detection algorithms. `loops[v]` counts internal weight once.
#[derive(Debug, Clone)]
pub(crate) struct WeightedAdj {
    pub adj: Vec<Vec<(usize, f64)>>,
    pub loops: Vec<f64>,
}

impl WeightedAdj {
    pub fn from_graph(g: &SemanticGraph, use_weights: bool) -> Self {
        let adj = (0..g.vertex_count())
            .map(|v| {
                g.neighbors(v)
                    .iter()
                    .map(|&(u, w)| (u, if use_weights { w as f64 } else { 1.0 }))
                    .collect()
            })
            .collect();
        WeightedAdj {
            adj,
            loops: vec![0.0; g.vertex_count()],
        }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    /// Weighted degree, loops counted twice.
    pub fn strength(&self, v: usize) -> f64 {
        self.adj[v].iter().map(|(_, w)| w).sum::<f64>() + 2.0 * self.loops[v]
    }

    /// Total edge weight m.
    pub fn total(&self) -> f64 {
        (0..self.len()).map(|v| self.strength(v)).sum::<f64>() / 2.0
    }

    /// Modularity of an arbitrary labeling; 0 for an edgeless graph.
    pub fn modularity(&self, labels: &[usize]) -> f64 {
        let m = self.total();
        if m == 0.0 {
            return 0.0;
        }
        let mut internal: HashMap<usize, f64> = HashMap::new();
        let mut degree: HashMap<usize, f64> = HashMap::new();
        for v in 0..self.len() {
            let c = labels[v];
            *degree.entry(c).or_default() += self.strength(v);
            let inside: f64 = self.adj[v]
                .iter()
                .filter(|(u, _)| labels[*u] == c)
                .map(|(_, w)| w / 2.0)
                .sum();
            *internal.entry(c).or_default() += inside + self.loops[v];
        }
        let mut keys: Vec<usize> = degree.keys().copied().collect();
        keys.sort_unstable();
        keys.iter()
            .map(|c| internal[c] / m - (degree[c] / (2.0 * m)).powi(2))
            .sum()
    }
}

pub fn modularity(g: &SemanticGraph, p: &Partition, use_weights: bool) -> Result<f64> {
    if p.len() != g.vertex_count() {
        return Err(Error::InvalidArgument(format!(
            "partition covers {} vertices, graph has {}",
            p.len(),
            g.vertex_count()
        )));
    }
    let k = p.community_count();
    let mut internal = vec![0.0; k];
    let mut degree = vec![0.0; k];
    let mut m = 0.0;
    for (u, v, w) in g.edges() {
        let w = if use_weights { w as f64 } else { 1.0 };
        m += w;
        let (cu, cv) = (p.community_of(u), p.community_of(v));
        degree[cu] += w;
        degree[cv] += w;
        if cu == cv {
            internal[cu] += w;
        }
    }
    if m == 0.0 {
        return Err(Error::EmptyGraph);
    }
    Ok(internal
        .iter()
        .zip(&degree)
        .map(|(l, d)| l / m - (d / (2.0 * m)).powi(2))
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DetectOptions {
    pub use_weights: bool,
    pub seed: u64,
}

impl Default for DetectOptions {
    fn default() -> Self {
        DetectOptions {
            use_weights: true,
            seed: 0,
        }
    }
}

/// Runs every requested method and picks the partition with the highest
/// modularity; ties go to the earlier method in `CommunityMethod` order.
pub fn detect_communities(
    g: &SemanticGraph,
    methods: &[CommunityMethod],
    opts: DetectOptions,
) -> Result<Detection> {
    if g.vertex_count() == 0 || g.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut methods = methods.to_vec();
    methods.sort_unstable();
    methods.dedup();
    if methods.is_empty() {
        return Err(Error::InvalidArgument("no community method requested".into()));
    }
    let wg = WeightedAdj::from_graph(g, opts.use_weights);
    let mut results = Vec::new();
    let mut failures = Vec::new();
    for method in methods {
        let labels = match method {
            CommunityMethod::FastGreedy => Ok(fast_greedy::run(&wg)),
            CommunityMethod::Louvain => Ok(louvain::run(&wg, opts.seed)),
            CommunityMethod::LabelPropagation => {
                Ok(label_propagation::run(&wg, opts.seed ^ 0x9e37_79b9_7f4a_7c15))
            }
            CommunityMethod::Walktrap => walktrap::run(&wg, 4),
        };
        match labels {
            Ok(labels) => {
                let partition = Partition::from_labels(&labels);
                let modularity = modularity(g, &partition, opts.use_weights)?;
                results.push(CommunityResult {
                    method,
                    partition,
                    modularity,
                });
            }
            Err(e) => failures.push((method, e.to_string())),
        }
    }
    if results.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "no community method succeeded: {failures:?}"
        )));
    }
    let mut best = 0;
    for (i, r) in results.iter().enumerate() {
        if r.modularity > results[best].modularity {
            best = i;
        }
    }
    Ok(Detection {
        results,
        best,
        failures,
    })
}

/// Maximum-modularity partition by enumerating every set partition.
/// Only for graphs of at most 12 vertices.
pub fn exhaustive_modularity(g: &SemanticGraph, use_weights: bool) -> Result<(Partition, f64)> {
    let n = g.vertex_count();
    if n > 12 {
        return Err(Error::InvalidArgument(format!(
            "exhaustive modularity search is limited to 12 vertices, got {n}"
        )));
    }
    if n == 0 || g.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let edges: Vec<(usize, usize, f64)> = g
        .edges()
        .map(|(u, v, w)| (u, v, if use_weights { w as f64 } else { 1.0 }))
        .collect();
    let m: f64 = edges.iter().map(|e| e.2).sum();
    let strength: Vec<f64> = (0..n)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .map(|&(_, w)| if use_weights { w as f64 } else { 1.0 })
                .sum()
        })
        .collect();

    // restricted growth strings enumerate each set partition once
    let mut rgs = vec![0usize; n];
    let mut best = (f64::NEG_INFINITY, rgs.clone());
    loop {
        let k = rgs.iter().max().map_or(0, |x| x + 1);
        let mut internal = vec![0.0; k];
        let mut degree = vec![0.0; k];
        for &(u, v, w) in &edges {
            if rgs[u] == rgs[v] {
                internal[rgs[u]] += w;
            }
        }
        for v in 0..n {
            degree[rgs[v]] += strength[v];
        }
        let q: f64 = internal
            .iter()
            .zip(&degree)
            .map(|(l, d)| l / m - (d / (2.0 * m)).powi(2))
            .sum();
        if q > best.0 + 1e-12 {
            best = (q, rgs.clone());
        }
        if !next_rgs(&mut rgs) {
            break;
        }
    }
    let partition = Partition::from_labels(&best.1);
    let q = modularity(g, &partition, use_weights)?;
    Ok((partition, q))
}

fn next_rgs(rgs: &mut [usize]) -> bool {
    let n = rgs.len();
    for i in (1..n).rev() {
        let max_prefix = rgs[..i].iter().copied().max().unwrap_or(0);
        if rgs[i] <= max_prefix {
            rgs[i] += 1;
            for x in &mut rgs[i + 1..] {
                *x = 0;
            }
            return true;
        }
    }
    false
}

/// Hubert-Arabie adjusted Rand index between two partitions of the same set.
pub fn adjusted_rand_index(a: &Partition, b: &Partition) -> f64 {
    assert_eq!(a.len(), b.len(), "partitions of different sets");
    let n = a.len() as f64;
    let pairs = |x: f64| x * (x - 1.0) / 2.0;
    let mut table: HashMap<(usize, usize), f64> = HashMap::new();
    for (x, y) in a.membership.iter().zip(&b.membership) {
        *table.entry((*x, *y)).or_default() += 1.0;
    }
    let mut rows = vec![0.0; a.count];
    let mut cols = vec![0.0; b.count];
    for (&(x, y), &c) in &table {
        rows[x] += c;
        cols[y] += c;
    }
    let index: f64 = table.values().map(|&c| pairs(c)).sum();
    let sum_a: f64 = rows.iter().map(|&c| pairs(c)).sum();
    let sum_b: f64 = cols.iter().map(|&c| pairs(c)).sum();
    let expected = sum_a * sum_b / pairs(n);
    let max = (sum_a + sum_b) / 2.0;
    if (max - expected).abs() < f64::EPSILON {
        return if a == b { 1.0 } else { 0.0 };
    }
    (index - expected) / (max - expected)
}

/// For each community, its top `n` members by centrality (descending,
/// ties by label).
pub fn community_top_terms(
    g: &SemanticGraph,
    result: &CommunityResult,
    centrality: &[f64],
    n: usize,
) -> Vec<Vec<(String, f64)>> {
    result
        .partition
        .communities()
        .into_iter()
        .map(|members| {
            let mut ranked: Vec<(String, f64)> = members
                .into_iter()
                .map(|v| (g.label(v).to_string(), centrality[v]))
                .collect();
            ranked.sort_by(|x, y| y.1.total_cmp(&x.1).then_with(|| x.0.cmp(&y.0)));
            ranked.truncate(n);
            ranked
        })
        .collect()
}
