//! Random-walk distance clustering (Pons and Latapy) with walks of length
//! `t`. Adjacent communities with the smallest variance increase are merged
//! until one remains; the highest-modularity cut is returned.

use std::collections::BTreeMap;

use super::WeightedAdj;
use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 2500;

struct Community {
    size: f64,
    prob: Vec<f64>,
    /// neighbor -> (edge weight between, variance increase of merging)
    nb: BTreeMap<usize, (f64, f64)>,
}

pub(crate) fn run(g: &WeightedAdj, t: usize) -> Result<Vec<usize>> {
    let n = g.len();
    if n > MAX_VERTICES {
        return Err(Error::InvalidArgument(format!(
            "walktrap is limited to {MAX_VERTICES} vertices, got {n}"
        )));
    }
    let d: Vec<f64> = (0..n).map(|v| g.strength(v)).collect();
    let m = g.total();
    if m == 0.0 {
        return Ok((0..n).collect());
    }

    let mut comms: Vec<Option<Community>> = (0..n)
        .map(|v| {
            Some(Community {
                size: 1.0,
                prob: walk(g, &d, v, t),
                nb: BTreeMap::new(),
            })
        })
        .collect();
    for v in 0..n {
        for &(u, w) in &g.adj[v] {
            let ds = delta_sigma(&comms, &d, v, u, n);
            if let Some(c) = comms[v].as_mut() {
                c.nb.insert(u, (w, ds));
            }
        }
    }

    let mut internal: Vec<f64> = g.loops.clone();
    let mut degree = d.clone();
    let mut q: f64 = (0..n)
        .map(|c| internal[c] / m - (degree[c] / (2.0 * m)).powi(2))
        .sum();
    let mut best_q = q;
    let mut merges = Vec::new();
    let mut best_step = 0;

    loop {
        let mut pick: Option<(f64, usize, usize)> = None;
        for (i, c) in comms.iter().enumerate() {
            let Some(c) = c else { continue };
            for (&j, &(_, ds)) in c.nb.range(i + 1..) {
                if pick.is_none_or(|(b, _, _)| ds < b) {
                    pick = Some((ds, i, j));
                }
            }
        }
        let Some((_, i, j)) = pick else { break };

        let cj = comms[j].take().expect("live community");
        let ci = comms[i].as_mut().expect("live community");
        let w_ij = ci.nb.remove(&j).map_or(0.0, |x| x.0);
        let total = ci.size + cj.size;
        for (p, pj) in ci.prob.iter_mut().zip(&cj.prob) {
            *p = (*p * ci.size + pj * cj.size) / total;
        }
        ci.size = total;
        for (&k, &(w, _)) in &cj.nb {
            if k != i {
                ci.nb.entry(k).or_insert((0.0, 0.0)).0 += w;
            }
        }
        let neighbors: Vec<(usize, f64)> = ci.nb.iter().map(|(&k, &(w, _))| (k, w)).collect();
        for (k, w) in neighbors {
            let ds = delta_sigma(&comms, &d, i, k, n);
            if let Some(c) = comms[i].as_mut() {
                c.nb.insert(k, (w, ds));
            }
            if let Some(c) = comms[k].as_mut() {
                c.nb.remove(&j);
                c.nb.insert(i, (w, ds));
            }
        }

        q += w_ij / m - 2.0 * degree[i] * degree[j] / (4.0 * m * m);
        internal[i] += internal[j] + w_ij;
        degree[i] += degree[j];
        merges.push((i, j));
        if q > best_q {
            best_q = q;
            best_step = merges.len();
        }
    }

    let mut parent: Vec<usize> = (0..n).collect();
    for &(i, j) in &merges[..best_step] {
        parent[j] = i;
    }
    Ok((0..n)
        .map(|mut v| {
            while parent[v] != v {
                v = parent[v];
            }
            v
        })
        .collect())
}

/// Row `v` of the `t`-step transition matrix.
fn walk(g: &WeightedAdj, d: &[f64], v: usize, t: usize) -> Vec<f64> {
    let n = g.len();
    let mut x = vec![0.0; n];
    x[v] = 1.0;
    let mut next = vec![0.0; n];
    for _ in 0..t {
        next.fill(0.0);
        for j in 0..n {
            if x[j] == 0.0 || d[j] == 0.0 {
                continue;
            }
            let share = x[j] / d[j];
            for &(k, w) in &g.adj[j] {
                next[k] += share * w;
            }
            next[j] += share * 2.0 * g.loops[j];
        }
        std::mem::swap(&mut x, &mut next);
    }
    x
}

fn delta_sigma(comms: &[Option<Community>], d: &[f64], a: usize, b: usize, n: usize) -> f64 {
    let (Some(ca), Some(cb)) = (&comms[a], &comms[b]) else {
        return f64::INFINITY;
    };
    let r2: f64 = ca
        .prob
        .iter()
        .zip(&cb.prob)
        .zip(d)
        .filter(|(_, &dk)| dk > 0.0)
        .map(|((pa, pb), dk)| (pa - pb).powi(2) / dk)
        .sum();
    ca.size * cb.size / (ca.size + cb.size) * r2 / n as f64
}
