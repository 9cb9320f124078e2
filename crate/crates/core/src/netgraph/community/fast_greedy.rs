//! Greedy agglomerative modularity optimisation (Clauset, Newman, Moore).
//!
//! Merges run until no adjacent pair remains; the partition at the highest
//! modularity seen along the way is returned. Ties pick the smallest
//! community index, then the smallest neighbor index.

use std::collections::BTreeMap;

use super::WeightedAdj;

pub(crate) fn run(g: &WeightedAdj) -> Vec<usize> {
    let n = g.len();
    let two_m = 2.0 * g.total();
    if two_m == 0.0 {
        return (0..n).collect();
    }
    let mut a: Vec<f64> = (0..n).map(|v| g.strength(v) / two_m).collect();
    let mut e: Vec<BTreeMap<usize, f64>> = g
        .adj
        .iter()
        .map(|nb| nb.iter().map(|&(u, w)| (u, w / two_m)).collect())
        .collect();
    let mut alive = vec![true; n];
    let mut best_nb: Vec<Option<(f64, usize)>> = (0..n).map(|i| scan(&e[i], &a, i)).collect();

    let mut q: f64 = (0..n).map(|i| g.loops[i] * 2.0 / two_m - a[i] * a[i]).sum();
    let mut best_q = q;
    let mut merges = Vec::new();
    let mut best_step = 0;

    loop {
        let mut pick: Option<(f64, usize, usize)> = None;
        for i in 0..n {
            if !alive[i] {
                continue;
            }
            if let Some((dq, j)) = best_nb[i] {
                if pick.is_none_or(|(best, _, _)| dq > best) {
                    pick = Some((dq, i, j));
                }
            }
        }
        let Some((dq, x, y)) = pick else { break };
        let (i, j) = (x.min(y), x.max(y));

        // fold j into i
        let row_j = std::mem::take(&mut e[j]);
        for (&k, &w) in &row_j {
            if k == i {
                continue;
            }
            *e[i].entry(k).or_default() += w;
            e[k].remove(&j);
            *e[k].entry(i).or_default() += w;
        }
        e[i].remove(&j);
        a[i] += a[j];
        a[j] = 0.0;
        alive[j] = false;
        best_nb[j] = None;

        q += dq;
        merges.push((i, j));
        if q > best_q {
            best_q = q;
            best_step = merges.len();
        }

        best_nb[i] = scan(&e[i], &a, i);
        let touched: Vec<usize> = e[i].keys().copied().collect();
        for k in touched {
            let stale = matches!(best_nb[k], Some((_, l)) if l == i || l == j);
            if stale || row_j.contains_key(&k) {
                best_nb[k] = scan(&e[k], &a, k);
            } else {
                let cand = 2.0 * (e[k][&i] - a[k] * a[i]);
                best_nb[k] = match best_nb[k] {
                    Some((d, l)) if d > cand || (d == cand && l < i) => Some((d, l)),
                    _ => Some((cand, i)),
                };
            }
        }
    }

    let mut parent: Vec<usize> = (0..n).collect();
    for &(i, j) in &merges[..best_step] {
        parent[j] = i;
    }
    (0..n)
        .map(|mut v| {
            while parent[v] != v {
                v = parent[v];
            }
            v
        })
        .collect()
}

fn scan(row: &BTreeMap<usize, f64>, a: &[f64], i: usize) -> Option<(f64, usize)> {
    let mut best: Option<(f64, usize)> = None;
    for (&j, &eij) in row {
        let dq = 2.0 * (eij - a[i] * a[j]);
        if best.is_none_or(|(b, _)| dq > b) {
            best = Some((dq, j));
        }
    }
    best
}
