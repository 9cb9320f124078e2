use super::SemanticGraph;

/// Core number of every vertex, by repeated removal of minimum-degree
/// vertices (bucket peeling, linear in the edge count).
pub fn k_core_decomposition(g: &SemanticGraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let max_deg = degree.iter().copied().max().unwrap_or(0);

    // vertices sorted by degree, with bucket start offsets
    let mut bin = vec![0usize; max_deg + 1];
    for &d in &degree {
        bin[d] += 1;
    }
    let mut start = 0;
    for b in bin.iter_mut() {
        let count = *b;
        *b = start;
        start += count;
    }
    let mut pos = vec![0usize; n];
    let mut vert = vec![0usize; n];
    for v in 0..n {
        pos[v] = bin[degree[v]];
        vert[pos[v]] = v;
        bin[degree[v]] += 1;
    }
    for d in (1..=max_deg).rev() {
        bin[d] = bin[d - 1];
    }
    bin[0] = 0;

    for i in 0..n {
        let v = vert[i];
        for &(u, _) in g.neighbors(v) {
            if degree[u] > degree[v] {
                let du = degree[u];
                let pu = pos[u];
                let pw = bin[du];
                let w = vert[pw];
                if u != w {
                    vert[pu] = w;
                    pos[w] = pu;
                    vert[pw] = u;
                    pos[u] = pw;
                }
                bin[du] += 1;
                degree[u] -= 1;
            }
        }
    }
    degree
}

#[derive(Debug, Clone, PartialEq)]
pub struct KCoreView {
    pub graph: SemanticGraph,
    /// Lower median of the core numbers.
    pub median_core: usize,
    /// Original indices of the kept vertices.
    pub kept: Vec<usize>,
    pub warning: Option<String>,
}

/// Subgraph on the vertices whose core number is below the (lower) median
/// core number.
pub fn k_core_filter_below_median(g: &SemanticGraph) -> KCoreView {
    let cores = k_core_decomposition(g);
    if cores.is_empty() {
        return KCoreView {
            graph: SemanticGraph::default(),
            median_core: 0,
            kept: Vec::new(),
            warning: Some("empty graph".into()),
        };
    }
    let (median_core, kept) = below_median(&cores);
    let warning = kept
        .is_empty()
        .then(|| format!("no vertex has core number below the median ({median_core})"));
    KCoreView {
        graph: g.induced_subgraph(&kept),
        median_core,
        kept,
        warning,
    }
}

fn below_median(cores: &[usize]) -> (usize, Vec<usize>) {
    let mut sorted = cores.to_vec();
    sorted.sort_unstable();
    let median = sorted[(sorted.len() - 1) / 2];
    let kept = (0..cores.len()).filter(|&v| cores[v] < median).collect();
    (median, kept)
}
