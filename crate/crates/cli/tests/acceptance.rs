//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any gated criterion fails.
//!
//! Set `SEMNET_BLESS=1` to rewrite the golden report instead of comparing.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::Rng;
use semnet::netgraph::{
    adjusted_rand_index, assortativity, betweenness_centrality, clique_number, density, detect_communities,
    eigenvector_centrality, k_core_decomposition, modularity, transitivity, CommunityMethod, DetectOptions,
    EigenOptions, Partition,
};
use semnet::ngram::{apply_threshold, extract_pairs, threshold_scan};
use semnet::resources::Resources;
use semnet::sentiment::summarize_document;
use semnet::stats::{
    paired_t_test, sentiment_cascade, shapiro_wilk, skewness, wilcoxon_signed_rank_with, Alternative, Metric,
    WilcoxonMethod,
};
use semnet::{giant_component, AnalysisConfig, LemmaSequence, Method, PairMode, PairSpec, SemanticGraph, Upos};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(budget: Duration, start: Instant) -> Check {
    let took = start.elapsed();
    ensure(took < budget, || format!("took {took:.2?}, budget {budget:?}"))
}

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

// ---------------------------------------------------------------- criterion 1

fn sample(rng: &mut rand_chacha::ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| f64::from(rng.random_range(-40..40)) / 4.0).collect()
}

fn statistics() -> Check {
    let start = Instant::now();
    let mut rng = common::rng(101);

    let mut n_skew = 0;
    while n_skew < 200 {
        let n = rng.random_range(3..30);
        let x = sample(&mut rng, n);
        let Ok(k) = skewness(&x) else { continue };
        let r = common::skewness(&x);
        ensure((k - r).abs() <= 1e-9 * (1.0 + r.abs()), || format!("skewness {k} vs {r} on {x:?}"))?;
        n_skew += 1;
    }

    let mut n_t = 0;
    while n_t < 200 {
        let n = rng.random_range(2..25);
        let x = sample(&mut rng, n);
        let y = sample(&mut rng, n);
        let Ok(r) = paired_t_test(&x, &y, Alternative::Greater) else { continue };
        let (t, df) = common::paired_t(&x, &y);
        ensure((r.statistic - t).abs() <= 1e-9 * (1.0 + t.abs()), || format!("t {} vs {t}", r.statistic))?;
        let p = 1.0 - common::student_t_cdf(t, df);
        ensure((r.p_value - p).abs() <= 1e-8, || format!("t p {} vs {p} (t={t}, df={df})", r.p_value))?;
        n_t += 1;
    }

    let mut n_w = 0;
    while n_w < 200 {
        let m = rng.random_range(1..=12);
        let x: Vec<f64> = (0..m).map(|_| f64::from(rng.random_range(-4..=6))).collect();
        if x.iter().all(|v| *v == 0.0) {
            continue;
        }
        let y = vec![0.0; m];
        for (alt, tail) in [
            (Alternative::Greater, "greater"),
            (Alternative::Less, "less"),
            (Alternative::TwoSided, "two-sided"),
        ] {
            let r = wilcoxon_signed_rank_with(&x, &y, alt, WilcoxonMethod::Exact).map_err(|e| e.to_string())?;
            let (v, num, den) = common::wilcoxon_enumerate(&x, tail);
            ensure(r.statistic == v && r.p_exact == Some((num, den)), || {
                format!("wilcoxon {tail} on {x:?}: {:?} vs {num}/{den}", r.p_exact)
            })?;
        }
        n_w += 1;
    }

    for (x, w, p) in common::shapiro_references() {
        let r = shapiro_wilk(&x).map_err(|e| e.to_string())?;
        ensure((r.statistic - w).abs() < 1e-3, || format!("SW n={} W {} vs {w}", x.len(), r.statistic))?;
        ensure((r.p_value - p).abs() < 5e-3, || format!("SW n={} p {} vs {p}", x.len(), r.p_value))?;
    }
    within(Duration::from_secs(10), start)
}

// ---------------------------------------------------------------- criterion 2

fn close_opt(a: Option<f64>, b: Option<f64>) -> bool {
    match (a, b) {
        (Some(a), Some(b)) => (a - b).abs() <= 1e-9,
        (None, None) => true,
        _ => false,
    }
}

fn graph_metrics() -> Check {
    let start = Instant::now();
    let mut rng = common::rng(102);
    for i in 0..500 {
        let g = common::random_graph(&mut rng, 8);
        let bc = betweenness_centrality(&g);
        let want = common::betweenness(&g);
        ensure(bc.iter().zip(&want).all(|(a, b)| (a - b).abs() <= 1e-9), || {
            format!("graph {i}: betweenness {bc:?} vs {want:?}")
        })?;
        ensure(close_opt(density(&g), common::density(&g)), || format!("graph {i}: density"))?;
        ensure(close_opt(transitivity(&g), common::transitivity(&g)), || format!("graph {i}: transitivity"))?;
        ensure(close_opt(assortativity(&g), common::assortativity(&g)), || format!("graph {i}: assortativity"))?;
        ensure(k_core_decomposition(&g) == common::core_numbers(&g), || format!("graph {i}: cores"))?;
        ensure(clique_number(&g) == common::clique_number(&g), || format!("graph {i}: clique"))?;
    }
    for i in 0..500 {
        let g = common::random_graph(&mut rng, 15);
        ensure(clique_number(&g) == common::clique_number(&g), || format!("graph {i} (<=15): clique"))?;
    }
    within(Duration::from_secs(60), start)
}

// ---------------------------------------------------------------- criterion 3

fn modularity_invariants() -> Check {
    let mut rng = common::rng(103);
    let mut tested = 0;
    while tested < 100 {
        let g = common::random_graph(&mut rng, 10);
        if g.edge_count() == 0 {
            continue;
        }
        let n = g.vertex_count();
        let q0 = modularity(&g, &Partition::all_in_one(n), true).map_err(|e| e.to_string())?;
        ensure(q0.abs() < 1e-12, || format!("all-in-one Q = {q0}"))?;
        let labels: Vec<usize> = (0..n).map(|_| rng.random_range(0..3)).collect();
        let q = modularity(&g, &Partition::from_labels(&labels), true).map_err(|e| e.to_string())?;
        let relabeled: Vec<usize> = labels.iter().map(|l| (l + 1) % 3 + 7).collect();
        let q2 = modularity(&g, &Partition::from_labels(&relabeled), true).map_err(|e| e.to_string())?;
        ensure(q == q2, || format!("relabeling changed Q: {q} vs {q2}"))?;
        tested += 1;
    }
    let t = common::two_triangles();
    let q = modularity(&t, &Partition::from_labels(&[0, 0, 0, 1, 1, 1]), true).map_err(|e| e.to_string())?;
    ensure(q == 0.5, || format!("two triangles Q = {q}"))
}

// ---------------------------------------------------------------- criterion 4

fn community_detection() -> Check {
    let start = Instant::now();
    let methods = CommunityMethod::REQUIRED;

    let t = common::two_triangles();
    let split = Partition::from_labels(&[0, 0, 0, 1, 1, 1]);
    let det = detect_communities(&t, &methods, DetectOptions::default()).map_err(|e| e.to_string())?;
    for r in &det.results {
        ensure(adjusted_rand_index(&r.partition, &split) == 1.0, || format!("{} on two triangles", r.method))?;
    }

    let truth = Partition::from_labels(&(0..32).map(|v| usize::from(v >= 16)).collect::<Vec<_>>());
    let mut rng = common::rng(16);
    let mut hits = vec![0usize; methods.len()];
    for trial in 0..100 {
        let g = common::planted_partition(&mut rng, 16, 0.5, 0.02);
        let opts = DetectOptions { use_weights: true, seed: trial };
        let det = detect_communities(&g, &methods, opts).map_err(|e| e.to_string())?;
        for (i, m) in methods.iter().enumerate() {
            let r = det.results.iter().find(|r| r.method == *m).ok_or("missing method result")?;
            if adjusted_rand_index(&r.partition, &truth) == 1.0 {
                hits[i] += 1;
            }
        }
    }
    for (m, h) in methods.iter().zip(&hits) {
        ensure(*h >= 95, || format!("{m} recovered {h}/100 planted partitions"))?;
    }

    let karate = common::karate_club();
    let det = detect_communities(&karate, &[CommunityMethod::FastGreedy], DetectOptions { use_weights: false, seed: 0 })
        .map_err(|e| e.to_string())?;
    let q = det.best().modularity;
    ensure((q - 0.3807).abs() <= 1e-3, || format!("karate fast greedy Q = {q}"))?;
    within(Duration::from_secs(30), start)
}

// ---------------------------------------------------------------- criterion 5

fn eigen(g: &SemanticGraph, use_weights: bool) -> Result<Vec<f64>, String> {
    eigenvector_centrality(g, EigenOptions { use_weights, ..Default::default() }).map_err(|e| e.to_string())
}

fn eigenvector() -> Check {
    let mut rng = common::rng(105);
    let mut graphs: Vec<SemanticGraph> = (0..200)
        .map(|_| giant_component(&common::random_graph(&mut rng, 12)))
        .filter(|g| g.edge_count() > 0)
        .collect();
    graphs.push(common::karate_club());
    for g in &graphs {
        for w in [false, true] {
            let c = eigen(g, w)?;
            let res = common::eigen_residual(g, &c, w);
            ensure(res <= 1e-6, || format!("residual {res} on a {}-vertex graph", g.vertex_count()))?;
        }
    }

    let star = SemanticGraph::from_edges(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1)]);
    let c = eigen(&star, false)?;
    ensure(c[0] == 1.0, || format!("star center {}", c[0]))?;
    for leaf in &c[1..] {
        ensure((leaf - 0.57735).abs() <= 1e-5, || format!("star leaf {leaf}"))?;
    }

    for n in 3..=12 {
        let cycle = SemanticGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n, 1)));
        let c = eigen(&cycle, false)?;
        ensure(c.iter().all(|&x| x == 1.0), || format!("C{n}: {c:?}"))?;
    }
    Ok(())
}

// ---------------------------------------------------------------- criterion 6

fn words_seq(words: &[String]) -> LemmaSequence {
    LemmaSequence {
        doc_id: "s".into(),
        items: words.iter().map(|w| (w.clone(), Upos::Noun)).collect(),
    }
}

fn ngrams() -> Check {
    let mut rng = common::rng(106);
    for _ in 0..1000 {
        let words = common::random_words(&mut rng, 40, 8);
        let s = words_seq(&words);
        let bi = extract_pairs(&s, PairSpec::bigram()).map_err(|e| e.to_string())?;
        let sk = extract_pairs(&s, PairSpec::skipgram(0)).map_err(|e| e.to_string())?;
        let a: Vec<_> = bi.iter().collect();
        let b: Vec<_> = sk.iter().collect();
        ensure(a == b, || format!("skipgram(0) differs from bigram on {words:?}"))?;
    }
    for _ in 0..500 {
        let words = common::random_words(&mut rng, 30, 5);
        for max_skip in 0..4 {
            let spec = PairSpec {
                mode: if max_skip == 0 { PairMode::Bigram } else { PairMode::Skipgram },
                max_skip,
                keep_self_pairs: true,
            };
            let pc = extract_pairs(&words_seq(&words), spec).map_err(|e| e.to_string())?;
            let want = common::pair_total(words.len(), max_skip);
            ensure(pc.total() == want, || format!("pair total {} vs {want}", pc.total()))?;
        }
    }
    let mut scanned = 0;
    for _ in 0..100 {
        let words = common::random_words(&mut rng, 400, 12);
        let pc = extract_pairs(&words_seq(&words), PairSpec::skipgram(2)).map_err(|e| e.to_string())?;
        let Ok(scan) = threshold_scan(&pc, 0.05, 3) else { continue };
        for p in &scan.points {
            let counts: Vec<f64> = apply_threshold(&pc, p.v).counts().iter().map(|&c| c as f64).collect();
            let want = common::skewness(&counts);
            ensure((p.skew - want).abs() <= 1e-9, || format!("scan v={} skew {} vs {want}", p.v, p.skew))?;
            scanned += 1;
        }
    }
    ensure(scanned > 0, || "no scan points checked".into())
}

// ---------------------------------------------------------------- criterion 7

fn summaries(resources: &Resources, texts: &[&str]) -> Vec<semnet::SentimentSummary> {
    texts
        .iter()
        .enumerate()
        .map(|(i, text)| {
            let id = format!("d{i}");
            let p = resources.preprocessor.prepare(&id, text);
            let scores: Vec<i32> = resources.scorer.score_tokens(&p.filtered).into_iter().map(|(_, s)| s).collect();
            summarize_document(&id, &scores)
        })
        .collect()
}

fn sentiment() -> Check {
    let resources = Resources::load(&AnalysisConfig::default()).map_err(|e| e.to_string())?;
    let texts: Vec<&str> = common::SENTIMENT_DOCS.iter().map(|d| d.0).collect();
    for (s, (text, [np, sp, nn, sn])) in summaries(&resources, &texts).iter().zip(common::SENTIMENT_DOCS) {
        let exact = (s.n_pos, s.sum_pos, s.n_neg, s.sum_neg) == (np, sp, nn, sn)
            && s.mean_pos == common::ratio(sp, np)
            && s.mean_neg == common::ratio(sn, nn)
            && s.prop_pos == common::ratio(np, np + nn)
            && s.prop_neg == common::ratio(nn, np + nn);
        ensure(exact, || format!("summary of `{text}`: {s:?}"))?;
    }

    let one_sided = summaries(&resources, &common::one_sided_docs());
    let d = sentiment_cascade(&one_sided, Metric::MeanMagnitude, 0.05).map_err(|e| e.to_string())?;
    let sw_p = d.normality.as_ref().map(|r| r.p_value).ok_or("no normality test")?;
    let expected = if sw_p > 0.05 { Method::PairedT } else { Method::WilcoxonSignedRank };
    ensure(d.branch() == Some(expected), || format!("branch {:?}, SW p {sw_p}", d.branch()))?;
    let p = d.main.as_ref().map(|r| r.p_value).ok_or("no main test")?;
    ensure(d.reject_null && p < 0.01, || format!("p = {p}"))
}

// ---------------------------------------------------------------- criterion 8

fn analyze_minicorpus() -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_semnet"))
        .args(["analyze", "--corpus", "data/minicorpus", "--seed", "0"])
        .current_dir(root())
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || String::from_utf8_lossy(&out.stderr).into_owned())?;
    Ok(out.stdout)
}

fn determinism() -> Check {
    let golden = root().join("crates/cli/tests/golden/minicorpus_report.json");
    let start = Instant::now();
    let first = analyze_minicorpus()?;
    within(Duration::from_secs(30), start)?;
    let second = analyze_minicorpus()?;
    ensure(first == second, || "two runs differ".into())?;
    if std::env::var_os("SEMNET_BLESS").is_some() {
        std::fs::write(&golden, &first).map_err(|e| e.to_string())?;
    }
    let want = std::fs::read(&golden).map_err(|e| format!("{}: {e}", golden.display()))?;
    ensure(first == want, || format!("output differs from {}", golden.display()))
}

// ---------------------------------------------------------------------- main

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("statistics oracles", statistics),
        ("graph-metric oracles", graph_metrics),
        ("modularity invariants", modularity_invariants),
        ("community detection", community_detection),
        ("eigenvector centrality", eigenvector),
        ("n-gram properties", ngrams),
        ("sentiment summaries and cascade", sentiment),
        ("end-to-end determinism", determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let took = start.elapsed();
        match outcome {
            Ok(()) => println!("PASS {}. {name} ({took:.2?})", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {}. {name} ({took:.2?}): {e}", i + 1);
            }
        }
    }
    println!("SKIP 9. replication on the full hearing corpus (not gated; needs user-fetched transcripts)");
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
