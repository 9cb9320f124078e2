//! Asynchronous weighted label propagation with seeded tie breaking.
//!
//! A vertex keeps its label while it is among the heaviest in its
//! neighborhood; a run stops after a sweep with no change. Several seeded
//! runs are made and the labeling with the highest modularity is kept.

use std::collections::BTreeMap;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::WeightedAdj;

const MAX_SWEEPS: usize = 10_000;
pub const RESTARTS: usize = 10;

pub(crate) fn run(g: &WeightedAdj, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(f64, Vec<usize>)> = None;
    for _ in 0..RESTARTS {
        let labels = propagate(g, &mut rng);
        let q = g.modularity(&labels);
        if best.as_ref().is_none_or(|(b, _)| q > *b) {
            best = Some((q, labels));
        }
    }
    best.map(|(_, l)| l).unwrap_or_default()
}

fn propagate(g: &WeightedAdj, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let n = g.len();
    let mut labels: Vec<usize> = (0..n).collect();
    let mut order: Vec<usize> = (0..n).collect();
    let mut weights: BTreeMap<usize, f64> = BTreeMap::new();
    let mut dominant = Vec::new();
    for _ in 0..MAX_SWEEPS {
        order.shuffle(rng);
        let mut changed = false;
        for &v in &order {
            if g.adj[v].is_empty() {
                continue;
            }
            weights.clear();
            for &(u, w) in &g.adj[v] {
                *weights.entry(labels[u]).or_default() += w;
            }
            let max = weights.values().fold(f64::NEG_INFINITY, |m, &w| m.max(w));
            dominant.clear();
            dominant.extend(weights.iter().filter(|(_, &w)| w == max).map(|(&l, _)| l));
            if dominant.contains(&labels[v]) {
                continue;
            }
            labels[v] = *dominant.choose(rng).unwrap_or(&labels[v]);
            changed = true;
        }
        if !changed {
            break;
        }
    }
    labels
}
