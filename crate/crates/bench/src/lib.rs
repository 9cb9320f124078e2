//! Synthetic inputs for the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semnet::ngram::{extract_pairs, PairCounts, PairSpec};
use semnet::{LemmaSequence, SemanticGraph, Upos};

/// Erdős-Rényi graph with `n` vertices and edge probability `p`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> SemanticGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random_bool(p) {
                edges.push((i, j, rng.random_range(1..10)));
            }
        }
    }
    SemanticGraph::from_edges(n, edges)
}

/// Lemma sequence over a Zipf-like vocabulary of `vocab` words.
pub fn zipf_sequence(len: usize, vocab: usize, seed: u64) -> LemmaSequence {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<f64> = (1..=vocab).map(|r| 1.0 / r as f64).collect();
    let total: f64 = weights.iter().sum();
    let items = (0..len)
        .map(|_| {
            let mut x = rng.random::<f64>() * total;
            let mut k = 0;
            while k + 1 < vocab && x > weights[k] {
                x -= weights[k];
                k += 1;
            }
            (format!("w{k}"), Upos::Noun)
        })
        .collect();
    LemmaSequence {
        doc_id: format!("doc{seed}"),
        items,
    }
}

pub fn pair_counts(docs: usize, len: usize, vocab: usize, spec: PairSpec) -> PairCounts {
    let mut total = PairCounts::new(spec);
    for d in 0..docs {
        let pc = extract_pairs(&zipf_sequence(len, vocab, d as u64), spec).expect("valid spec");
        total.merge(&pc);
    }
    total
}
