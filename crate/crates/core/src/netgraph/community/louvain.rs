//! Multilevel modularity optimisation (Blondel et al.): local moves in a
//! seeded random order, then aggregation of communities into vertices.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::WeightedAdj;

const MIN_GAIN: f64 = 1e-12;
const MAX_LEVELS: usize = 64;

pub(crate) fn run(g: &WeightedAdj, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut membership: Vec<usize> = (0..g.len()).collect();
    let mut level = g.clone();
    for _ in 0..MAX_LEVELS {
        let (comm, moved) = one_level(&level, &mut rng);
        if !moved {
            break;
        }
        let (dense, k) = renumber(&comm);
        for m in membership.iter_mut() {
            *m = dense[*m];
        }
        if k == level.len() {
            break;
        }
        level = aggregate(&level, &dense, k);
    }
    membership
}

fn one_level(g: &WeightedAdj, rng: &mut ChaCha8Rng) -> (Vec<usize>, bool) {
    let n = g.len();
    let m2 = 2.0 * g.total();
    let strength: Vec<f64> = (0..n).map(|v| g.strength(v)).collect();
    let mut comm: Vec<usize> = (0..n).collect();
    let mut tot = strength.clone();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);

    let mut link = vec![0.0; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut moved_any = false;
    loop {
        let mut moved = false;
        for &v in &order {
            let kv = strength[v];
            if kv == 0.0 {
                continue;
            }
            let own = comm[v];
            for &(u, w) in &g.adj[v] {
                let c = comm[u];
                if link[c] == 0.0 {
                    touched.push(c);
                }
                link[c] += w;
            }
            tot[own] -= kv;
            let gain = |c: usize, link: &[f64]| link[c] - tot[c] * kv / m2;
            let mut best = own;
            let mut best_gain = gain(own, &link);
            for &c in &touched {
                let gc = gain(c, &link);
                if gc > best_gain + MIN_GAIN {
                    best = c;
                    best_gain = gc;
                }
            }
            tot[best] += kv;
            if best != own {
                comm[v] = best;
                moved = true;
            }
            for &c in &touched {
                link[c] = 0.0;
            }
            touched.clear();
        }
        if !moved {
            break;
        }
        moved_any = true;
    }
    (comm, moved_any)
}

fn renumber(comm: &[usize]) -> (Vec<usize>, usize) {
    let mut map = vec![usize::MAX; comm.len()];
    let mut next = 0;
    let dense = comm
        .iter()
        .map(|&c| {
            if map[c] == usize::MAX {
                map[c] = next;
                next += 1;
            }
            map[c]
        })
        .collect();
    (dense, next)
}

fn aggregate(g: &WeightedAdj, dense: &[usize], k: usize) -> WeightedAdj {
    let mut maps: Vec<std::collections::BTreeMap<usize, f64>> = vec![Default::default(); k];
    let mut loops = vec![0.0; k];
    for v in 0..g.len() {
        let cv = dense[v];
        loops[cv] += g.loops[v];
        for &(u, w) in &g.adj[v] {
            let cu = dense[u];
            if cu == cv {
                // each internal edge is seen from both ends
                loops[cv] += w / 2.0;
            } else {
                *maps[cv].entry(cu).or_default() += w;
            }
        }
    }
    WeightedAdj {
        adj: maps.into_iter().map(|m| m.into_iter().collect()).collect(),
        loops,
    }
}
