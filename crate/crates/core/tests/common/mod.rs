//! Independent reference computations shared by the integration tests and
//! the acceptance suite. Nothing here calls into the algorithms under test
//! except for graph construction.

#![allow(dead_code, clippy::needless_range_loop)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semnet::SemanticGraph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------- statistics

/// Adjusted Fisher-Pearson skewness from central moments:
/// `sqrt(n(n-1)) / (n-2) * m3 / m2^1.5`.
pub fn skewness(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let m2 = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    let m3 = x.iter().map(|v| (v - mean).powi(3)).sum::<f64>() / n;
    (n * (n - 1.0)).sqrt() / (n - 2.0) * m3 / m2.powf(1.5)
}

/// Student-t CDF for integer degrees of freedom by the finite
/// trigonometric series for `P(|T| <= t)`.
pub fn student_t_cdf(t: f64, df: u32) -> f64 {
    let theta = (t.abs() / f64::from(df).sqrt()).atan();
    let (s, c) = theta.sin_cos();
    let c2 = c * c;
    let a = if df % 2 == 1 {
        let mut sum = 0.0;
        if df > 1 {
            let mut term = 1.0;
            sum = 1.0;
            let mut k = 2;
            while k + 1 < df {
                term *= f64::from(k) / f64::from(k + 1) * c2;
                sum += term;
                k += 2;
            }
        }
        2.0 / std::f64::consts::PI * (theta + s * c * sum)
    } else {
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut k = 1;
        while k + 1 < df {
            term *= f64::from(k) / f64::from(k + 1) * c2;
            sum += term;
            k += 2;
        }
        s * sum
    };
    if t >= 0.0 {
        0.5 + 0.5 * a
    } else {
        0.5 - 0.5 * a
    }
}

/// Paired t statistic of `x - y` by the textbook two-pass formula.
pub fn paired_t(x: &[f64], y: &[f64]) -> (f64, u32) {
    let d: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
    let n = d.len() as f64;
    let mean = d.iter().sum::<f64>() / n;
    let var = d.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean / (var / n).sqrt(), d.len() as u32 - 1)
}

/// Wilcoxon signed-rank by enumerating every sign pattern. Returns
/// `(V, numerator, 2^m)` for the requested tail: `"greater"`, `"less"` or
/// `"two-sided"`.
pub fn wilcoxon_enumerate(d: &[f64], tail: &str) -> (f64, u64, u64) {
    let d: Vec<f64> = d.iter().copied().filter(|v| *v != 0.0).collect();
    let m = d.len();
    // doubled average rank: 2 * (#smaller) + (#equal) + 1
    let r2: Vec<u64> = d
        .iter()
        .map(|a| {
            let smaller = d.iter().filter(|b| b.abs() < a.abs()).count() as u64;
            let equal = d.iter().filter(|b| b.abs() == a.abs()).count() as u64;
            2 * smaller + equal + 1
        })
        .collect();
    let observed: u64 = (0..m).filter(|&i| d[i] > 0.0).map(|i| r2[i]).sum();
    let (mut ge, mut le) = (0u64, 0u64);
    for mask in 0u64..(1 << m) {
        let s: u64 = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| r2[i]).sum();
        if s >= observed {
            ge += 1;
        }
        if s <= observed {
            le += 1;
        }
    }
    let den = 1u64 << m;
    let num = match tail {
        "greater" => ge,
        "less" => le,
        _ => (2 * ge.min(le)).min(den),
    };
    (observed as f64 / 2.0, num, den)
}

/// Frozen reference Shapiro-Wilk results `(sample, W, p)` computed once with
/// the Royston (1995) algorithm as shipped in a widely used scientific
/// Python stack. The samples are Gamma(2, 1.5) draws rounded to 6 decimals.
pub fn shapiro_references() -> Vec<(Vec<f64>, f64, f64)> {
    vec![
        (SW10.to_vec(), 0.9149634068818537, 0.3168529722725786),
        (SW30.to_vec(), 0.9323787814567612, 0.056810398098123015),
        (SW100.to_vec(), 0.9080881400403746, 3.4644211415288155e-06),
    ]
}

const SW10: [f64; 10] = [
    0.632199, 1.164595, 2.356918, 0.67659, 3.266393, 1.298943, 1.70039, 4.359852, 3.789167,
    6.034348,
];

const SW30: [f64; 30] = [
    4.687805, 2.206009, 0.69638, 7.548096, 4.327714, 1.064804, 0.641172, 4.257127, 0.795682,
    3.156206, 5.853885, 2.374075, 2.77263, 2.620284, 3.437306, 3.673829, 3.898782, 3.127179,
    3.053062, 2.364509, 1.779618, 0.478868, 4.083749, 3.982982, 1.122383, 2.513863, 0.951945,
    7.139879, 1.229592, 2.091451,
];

const SW100: [f64; 100] = [
    0.385729, 1.549226, 0.954149, 4.245907, 2.292213, 4.651643, 3.155031, 1.866484,
    1.057704, 2.0557, 2.211254, 2.004096, 2.266861, 2.911925, 8.058996, 2.314203,
    3.33969, 6.502329, 2.673716, 1.234338, 5.480366, 2.604158, 2.569856, 0.894976,
    1.76377, 7.113351, 2.041589, 3.087009, 5.362396, 1.27839, 5.773121, 2.85515,
    2.958071, 0.212204, 3.854282, 1.166242, 2.589514, 0.795127, 1.079566, 2.365213,
    2.452676, 1.39571, 5.358534, 2.343778, 5.747162, 3.371259, 3.103155, 6.300132,
    3.951245, 6.205831, 3.311617, 0.86013, 2.220148, 0.938141, 2.960359, 2.964252,
    5.66815, 1.05842, 0.168, 4.214549, 2.296864, 6.995012, 4.707346, 1.414884,
    0.787169, 1.757639, 1.568397, 4.939251, 3.245261, 1.192405, 0.818324, 0.988145,
    1.193246, 1.1312, 7.338927, 8.88212, 0.844402, 1.788686, 4.565224, 3.933574,
    4.375184, 1.213275, 2.874012, 5.346748, 3.676719, 1.914045, 0.899571, 0.177064,
    10.988884, 2.53649, 1.304439, 0.975893, 1.873364, 2.887661, 1.867938, 5.719314,
    1.557815, 5.780092, 4.022153, 4.876984,
];

// -------------------------------------------------------------------- graphs

pub fn random_graph(rng: &mut ChaCha8Rng, max_n: usize) -> SemanticGraph {
    let n = rng.random_range(0..=max_n);
    let p: f64 = rng.random_range(0.1..0.9);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random_bool(p) {
                edges.push((i, j, rng.random_range(1..5)));
            }
        }
    }
    SemanticGraph::from_edges(n, edges)
}

pub fn adjacency(g: &SemanticGraph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut a = vec![vec![false; n]; n];
    for (u, v, _) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

fn all_distances(a: &[Vec<bool>]) -> Vec<Vec<Option<usize>>> {
    // Floyd-Warshall on hop counts
    let n = a.len();
    let mut d = vec![vec![None; n]; n];
    for i in 0..n {
        d[i][i] = Some(0);
        for j in 0..n {
            if a[i][j] {
                d[i][j] = Some(1);
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(x), Some(y)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| x + y < c) {
                        d[i][j] = Some(x + y);
                    }
                }
            }
        }
    }
    d
}

/// Betweenness by listing every shortest path explicitly.
pub fn betweenness(g: &SemanticGraph) -> Vec<f64> {
    let a = adjacency(g);
    let n = a.len();
    let dist = all_distances(&a);
    let mut bc = vec![0.0; n];
    for s in 0..n {
        for t in (s + 1)..n {
            let Some(len) = dist[s][t] else { continue };
            let mut paths: Vec<Vec<usize>> = Vec::new();
            let mut stack = vec![vec![s]];
            while let Some(path) = stack.pop() {
                let last = *path.last().unwrap();
                if last == t {
                    paths.push(path);
                    continue;
                }
                if path.len() > len {
                    continue;
                }
                for next in 0..n {
                    if a[last][next] && !path.contains(&next) {
                        let mut p = path.clone();
                        p.push(next);
                        stack.push(p);
                    }
                }
            }
            let shortest: Vec<&Vec<usize>> = paths.iter().filter(|p| p.len() == len + 1).collect();
            for v in 0..n {
                if v == s || v == t {
                    continue;
                }
                let through = shortest.iter().filter(|p| p.contains(&v)).count();
                bc[v] += through as f64 / shortest.len() as f64;
            }
        }
    }
    bc
}

pub fn density(g: &SemanticGraph) -> Option<f64> {
    let n = g.vertex_count();
    let a = adjacency(g);
    let edges = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).filter(|&(i, j)| a[i][j]).count();
    (n >= 2).then(|| edges as f64 / (n * (n - 1) / 2) as f64)
}

pub fn transitivity(g: &SemanticGraph) -> Option<f64> {
    let a = adjacency(g);
    let n = a.len();
    let (mut triangles, mut triples) = (0u64, 0u64);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || j == k || i == k {
                    continue;
                }
                // ordered path j - i - k centred at i
                if a[i][j] && a[i][k] {
                    triples += 1;
                    if a[j][k] {
                        triangles += 1;
                    }
                }
            }
        }
    }
    (triples > 0).then(|| triangles as f64 / triples as f64)
}

pub fn assortativity(g: &SemanticGraph) -> Option<f64> {
    let a = adjacency(g);
    let n = a.len();
    let deg: Vec<f64> = a.iter().map(|r| r.iter().filter(|&&b| b).count() as f64).collect();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if a[i][j] {
                xs.push(deg[i]);
                ys.push(deg[j]);
            }
        }
    }
    if xs.is_empty() {
        return None;
    }
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let vx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let vy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if vx == 0.0 || vy == 0.0 {
        return None;
    }
    Some(cov / (vx * vy).sqrt())
}

/// Largest clique by checking every vertex subset.
pub fn clique_number(g: &SemanticGraph) -> usize {
    let n = g.vertex_count();
    let a = adjacency(g);
    let masks: Vec<u32> = (0..n)
        .map(|i| (0..n).filter(|&j| a[i][j]).fold(0u32, |m, j| m | 1 << j))
        .collect();
    let mut is_clique = vec![false; 1 << n];
    is_clique[0] = true;
    let mut best = 0;
    for s in 1usize..(1 << n) {
        let low = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        is_clique[s] = is_clique[rest] && (rest as u32 & !masks[low]) == 0;
        if is_clique[s] {
            best = best.max(s.count_ones() as usize);
        }
    }
    best
}

/// Core numbers by repeated deletion for each k.
pub fn core_numbers(g: &SemanticGraph) -> Vec<usize> {
    let a = adjacency(g);
    let n = a.len();
    let mut core = vec![0; n];
    for k in 1..=n {
        let mut alive = vec![true; n];
        loop {
            let mut changed = false;
            for v in 0..n {
                if alive[v] && (0..n).filter(|&u| alive[u] && a[v][u]).count() < k {
                    alive[v] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        for v in 0..n {
            if alive[v] {
                core[v] = k;
            }
        }
    }
    core
}

/// Relative residual of `A c = lambda c` with lambda the Rayleigh quotient.
pub fn eigen_residual(g: &SemanticGraph, c: &[f64], weighted: bool) -> f64 {
    let n = g.vertex_count();
    let ac: Vec<f64> = (0..n)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .map(|&(u, w)| if weighted { w as f64 } else { 1.0 } * c[u])
                .sum()
        })
        .collect();
    let lambda = ac.iter().zip(c).map(|(x, y)| x * y).sum::<f64>() / c.iter().map(|x| x * x).sum::<f64>();
    let norm = c.iter().map(|x| x * x).sum::<f64>().sqrt();
    let res = ac.iter().zip(c).map(|(x, y)| (x - lambda * y).powi(2)).sum::<f64>().sqrt();
    res / (lambda.abs() * norm)
}

/// Newman modularity straight from the double sum over vertex pairs.
pub fn modularity(g: &SemanticGraph, membership: &[usize], weighted: bool) -> f64 {
    let n = g.vertex_count();
    let w = |u: usize, v: usize| g.weight(u, v).map_or(0.0, |x| if weighted { x as f64 } else { 1.0 });
    let k: Vec<f64> = (0..n).map(|u| (0..n).map(|v| w(u, v)).sum()).collect();
    let two_m: f64 = k.iter().sum();
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if membership[i] == membership[j] {
                q += w(i, j) - k[i] * k[j] / two_m;
            }
        }
    }
    q / two_m
}

pub fn karate_club() -> SemanticGraph {
    const EDGES: [(usize, usize); 78] = [
        (0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (0, 7), (0, 8), (0, 10), (0, 11),
        (0, 12), (0, 13), (0, 17), (0, 19), (0, 21), (0, 31), (1, 2), (1, 3), (1, 7), (1, 13),
        (1, 17), (1, 19), (1, 21), (1, 30), (2, 3), (2, 7), (2, 8), (2, 9), (2, 13), (2, 27),
        (2, 28), (2, 32), (3, 7), (3, 12), (3, 13), (4, 6), (4, 10), (5, 6), (5, 10), (5, 16),
        (6, 16), (8, 30), (8, 32), (8, 33), (9, 33), (13, 33), (14, 32), (14, 33), (15, 32),
        (15, 33), (18, 32), (18, 33), (19, 33), (20, 32), (20, 33), (22, 32), (22, 33),
        (23, 25), (23, 27), (23, 29), (23, 32), (23, 33), (24, 25), (24, 27), (24, 31),
        (25, 31), (26, 29), (26, 33), (27, 33), (28, 31), (28, 33), (29, 32), (29, 33),
        (30, 32), (30, 33), (31, 32), (31, 33), (32, 33),
    ];
    SemanticGraph::from_edges(34, EDGES.iter().map(|&(u, v)| (u, v, 1)))
}

/// Two blocks of `block` vertices; the planted split is `v < block`.
pub fn planted_partition(rng: &mut ChaCha8Rng, block: usize, p_in: f64, p_out: f64) -> SemanticGraph {
    let n = 2 * block;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let p = if (i < block) == (j < block) { p_in } else { p_out };
            if rng.random_bool(p) {
                edges.push((i, j, 1));
            }
        }
    }
    SemanticGraph::from_edges(n, edges)
}

pub fn two_triangles() -> SemanticGraph {
    SemanticGraph::from_edges(6, [(0, 1, 1), (1, 2, 1), (0, 2, 1), (3, 4, 1), (4, 5, 1), (3, 5, 1)])
}

/// True when two labelings induce the same set partition.
pub fn same_partition(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len()
        && (0..a.len()).all(|i| (0..a.len()).all(|j| (a[i] == a[j]) == (b[i] == b[j])))
}

// -------------------------------------------------------------------- n-grams

/// Unordered pairs within distance `max_skip + 1`, counted naively.
pub fn pairs_naive(words: &[String], max_skip: usize, keep_self: bool) -> std::collections::BTreeMap<(String, String), u64> {
    let mut out = std::collections::BTreeMap::new();
    for i in 0..words.len() {
        for j in (i + 1)..words.len().min(i + max_skip + 2) {
            if !keep_self && words[i] == words[j] {
                continue;
            }
            let (a, b) = if words[i] <= words[j] { (&words[i], &words[j]) } else { (&words[j], &words[i]) };
            *out.entry((a.clone(), b.clone())).or_default() += 1;
        }
    }
    out
}

/// Number of position pairs at distance 1..=max_skip+1 in a sequence of length `len`.
pub fn pair_total(len: usize, max_skip: usize) -> u64 {
    (1..=max_skip + 1).map(|d| len.saturating_sub(d) as u64).sum()
}

pub fn random_words(rng: &mut ChaCha8Rng, max_len: usize, vocab: usize) -> Vec<String> {
    let len = rng.random_range(0..=max_len);
    (0..len).map(|_| format!("w{}", rng.random_range(0..vocab))).collect()
}

// ------------------------------------------------------------------ sentiment

/// Twenty short texts over the bundled lexicons with hand-counted
/// `(n_pos, sum_pos, n_neg, sum_neg)`. `fosa` and `cumplir` only appear in
/// the polarity lists and score -1 / +1.
pub const SENTIMENT_DOCS: [(&str, [u64; 4]); 20] = [
    ("la verdad y la paz", [2, 4, 0, 0]),
    ("el dolor de la guerra", [0, 0, 2, 5]),
    ("amor dolor", [1, 3, 1, 3]),
    ("soldado soldado", [0, 0, 0, 0]),
    ("memoria humilde muerte", [2, 2, 1, 3]),
    ("fosa fosa cumplir", [1, 1, 2, 2]),
    ("justicia dignidad esperanza miedo", [3, 6, 1, 2]),
    ("triste falso culpa verdad", [1, 2, 3, 5]),
    ("perdón", [1, 1, 0, 0]),
    ("muerte muerte muerte amor", [1, 3, 3, 9]),
    ("paz paz paz paz paz culpa", [5, 10, 1, 2]),
    ("los soldados dijeron", [0, 0, 0, 0]),
    ("Dolor, DOLOR y verdad.", [1, 2, 2, 6]),
    ("esperanza memoria miedo falso", [2, 3, 2, 3]),
    ("amor amor amor guerra", [3, 9, 1, 2]),
    ("cumplir justicia dolor triste", [2, 3, 2, 5]),
    ("humilde humilde humilde", [3, 3, 0, 0]),
    ("falso falso culpa", [0, 0, 3, 4]),
    ("verdad muerte dignidad fosa", [2, 4, 2, 4]),
    ("perdón perdón miedo muerte dolor", [2, 2, 3, 8]),
];

/// Texts whose negative mean magnitude exceeds the positive one in every
/// document: seventeen differences of 1 and three of 2.
pub fn one_sided_docs() -> Vec<&'static str> {
    let mut docs = vec!["dolor paz"; 17];
    docs.extend(["muerte humilde"; 3]);
    docs
}

/// `num / den` as the nearest double; exact for the small integers used here.
pub fn ratio(num: u64, den: u64) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}
