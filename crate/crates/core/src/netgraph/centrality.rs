use std::collections::VecDeque;

use rayon::prelude::*;

use super::SemanticGraph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenOptions {
    pub use_weights: bool,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for EigenOptions {
    fn default() -> Self {
        EigenOptions {
            use_weights: false,
            tol: 1e-10,
            max_iter: 1_000_000,
        }
    }
}

/// Dominant adjacency eigenvector, absolute values, scaled so the largest
/// entry is 1.
///
/// Iterates with `A + I`, which has the same eigenvectors as `A` but a
/// strictly dominant top eigenvalue on connected bipartite graphs too.
pub fn eigenvector_centrality(g: &SemanticGraph, opts: EigenOptions) -> Result<Vec<f64>> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Vec::new());
    }
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let weight = |w: u64| if opts.use_weights { w as f64 } else { 1.0 };
    let mut x = vec![1.0; n];
    let mut next = vec![0.0; n];
    for _ in 0..opts.max_iter {
        for v in 0..n {
            next[v] = x[v]
                + g.neighbors(v)
                    .iter()
                    .map(|&(u, w)| weight(w) * x[u])
                    .sum::<f64>();
        }
        let max = next.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if max == 0.0 {
            return Err(Error::NoConvergence(opts.max_iter));
        }
        let mut delta = 0.0f64;
        for v in 0..n {
            let scaled = next[v] / max;
            delta = delta.max((scaled - x[v]).abs());
            x[v] = scaled;
        }
        if delta < opts.tol {
            return Ok(x.into_iter().map(f64::abs).collect());
        }
    }
    Err(Error::NoConvergence(opts.max_iter))
}

/// Unweighted shortest-path betweenness, each unordered endpoint pair
/// counted once.
pub fn betweenness_centrality(g: &SemanticGraph) -> Vec<f64> {
    let n = g.vertex_count();
    let sources: Vec<usize> = (0..n).collect();
    // Fixed chunking keeps the floating-point summation order independent
    // of thread scheduling.
    let partials: Vec<Vec<f64>> = sources
        .par_chunks(32)
        .map(|chunk| {
            let mut acc = vec![0.0; n];
            let mut scratch = Scratch::new(n);
            for &s in chunk {
                scratch.accumulate(g, s, &mut acc);
            }
            acc
        })
        .collect();
    let mut total = vec![0.0; n];
    for p in partials {
        for (t, v) in total.iter_mut().zip(p) {
            *t += v;
        }
    }
    total.iter_mut().for_each(|v| *v /= 2.0);
    total
}

struct Scratch {
    stack: Vec<usize>,
    preds: Vec<Vec<usize>>,
    sigma: Vec<f64>,
    dist: Vec<i64>,
    delta: Vec<f64>,
    queue: VecDeque<usize>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            stack: Vec::with_capacity(n),
            preds: vec![Vec::new(); n],
            sigma: vec![0.0; n],
            dist: vec![-1; n],
            delta: vec![0.0; n],
            queue: VecDeque::new(),
        }
    }

    fn accumulate(&mut self, g: &SemanticGraph, s: usize, acc: &mut [f64]) {
        self.stack.clear();
        self.preds.iter_mut().for_each(Vec::clear);
        self.sigma.fill(0.0);
        self.dist.fill(-1);
        self.delta.fill(0.0);
        self.sigma[s] = 1.0;
        self.dist[s] = 0;
        self.queue.push_back(s);
        while let Some(v) = self.queue.pop_front() {
            self.stack.push(v);
            for &(w, _) in g.neighbors(v) {
                if self.dist[w] < 0 {
                    self.dist[w] = self.dist[v] + 1;
                    self.queue.push_back(w);
                }
                if self.dist[w] == self.dist[v] + 1 {
                    self.sigma[w] += self.sigma[v];
                    self.preds[w].push(v);
                }
            }
        }
        while let Some(w) = self.stack.pop() {
            for &v in &self.preds[w] {
                self.delta[v] += self.sigma[v] / self.sigma[w] * (1.0 + self.delta[w]);
            }
            if w != s {
                acc[w] += self.delta[w];
            }
        }
    }
}
