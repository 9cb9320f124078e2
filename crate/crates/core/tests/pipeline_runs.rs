use std::fs;
use std::path::PathBuf;
use std::sync::OnceLock;

use semnet::pipeline::{
    export_bundle, load_bundle, run_all_with, run_scope, run_stages, to_canonical_json, ExportFormats, RoleScope,
    Stages,
};
use semnet::resources::Resources;
use semnet::{load_corpus, AnalysisConfig, Corpus, Method, PairMode, ReportBundle, Role, Scope, Subcase};

fn minicorpus_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/minicorpus")
}

fn fixture() -> &'static (AnalysisConfig, Resources, Corpus, ReportBundle) {
    static CELL: OnceLock<(AnalysisConfig, Resources, Corpus, ReportBundle)> = OnceLock::new();
    CELL.get_or_init(|| {
        let config = AnalysisConfig {
            corpus: Some(minicorpus_path().display().to_string()),
            seed: 11,
            ..Default::default()
        };
        let resources = Resources::load(&config).unwrap();
        let corpus = load_corpus(minicorpus_path()).unwrap();
        let bundle = run_all_with(&config, &resources, &corpus).unwrap();
        (config, resources, corpus, bundle)
    })
}

#[test]
fn repeated_runs_are_identical() {
    let (config, resources, corpus, bundle) = fixture();
    let again = run_all_with(config, resources, corpus).unwrap();
    assert_eq!(to_canonical_json(bundle).unwrap(), to_canonical_json(&again).unwrap());
}

#[test]
fn every_scope_is_reported_in_order() {
    let (_, _, _, bundle) = fixture();
    let names: Vec<String> = Scope::enumerate().iter().map(Scope::name).collect();
    let got: Vec<&str> = bundle.scopes.iter().map(|s| s.scope.as_str()).collect();
    assert_eq!(got, names);
    assert_eq!(names.len(), 21);
    assert_eq!(bundle.corpus.documents, corpus_len());
}

fn corpus_len() -> usize {
    fixture().2.len()
}

#[test]
fn scopes_hold_exactly_their_documents() {
    let (_, _, corpus, bundle) = fixture();
    for s in &bundle.scopes {
        let expected: Vec<&str> = corpus
            .documents
            .iter()
            .filter(|d| !d.skipped)
            .filter(|d| s.subcase.is_none_or(|c| d.subcase == c))
            .filter(|d| match s.role {
                RoleScope::All => true,
                RoleScope::Appearers => d.role == Role::Appearer,
                RoleScope::Victims => d.role == Role::Victim,
            })
            .map(|d| d.id.as_str())
            .collect();
        assert_eq!(s.documents, expected, "{}", s.scope);
        assert_eq!(s.skipped.is_some(), expected.len() < 3, "{}", s.scope);
    }
}

#[test]
fn general_scope_builds_both_networks() {
    let (_, _, _, bundle) = fixture();
    let general = bundle.scope("general_all").unwrap();
    for mode in [PairMode::Bigram, PairMode::Skipgram] {
        let net = general.network(mode).unwrap();
        let g = net.graph.as_ref().unwrap_or_else(|| panic!("{mode}: {:?}", net.error));
        assert!(g.summary.vertices >= 2);
        assert!(net.threshold.applied <= net.threshold.selected);
        assert_eq!(g.methods.len(), 3);
        let best = g.methods.iter().map(|m| m.modularity).fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(g.best.modularity, best);
        assert_eq!(g.nodes.len(), g.summary.vertices);
        assert_eq!(g.edges.len(), g.summary.edges);
    }
    let bi = general.network(PairMode::Bigram).unwrap();
    let sk = general.network(PairMode::Skipgram).unwrap();
    assert!(sk.pair_occurrences >= bi.pair_occurrences);
}

#[test]
fn modularity_cells_match_standalone_runs() {
    let (config, resources, corpus, bundle) = fixture();
    for table in &bundle.modularity_tables {
        assert_eq!(table.rows.len(), 7);
        assert_eq!(table.rows[6].row, "General");
        for (i, row) in table.rows.iter().enumerate() {
            let subcase = Subcase::REGIONS.get(i).copied();
            for (role, cell) in [
                (RoleScope::All, row.all),
                (RoleScope::Appearers, row.appearers),
                (RoleScope::Victims, row.victims),
            ] {
                let alone = run_scope(config, resources, corpus, Scope { subcase, role }).unwrap();
                let q = alone.network(table.mode).and_then(|n| n.best_modularity());
                assert_eq!(cell, q, "{} {role:?} {}", row.row, table.mode);
            }
        }
    }
}

#[test]
fn cascade_branch_follows_the_normality_gate() {
    let (config, _, _, bundle) = fixture();
    let mut seen = 0;
    for s in &bundle.scopes {
        let Some(sent) = &s.sentiment else { continue };
        for outcome in [&sent.magnitude, &sent.proportion] {
            let Some(d) = &outcome.decision else { continue };
            if d.degenerate.is_some() {
                continue;
            }
            let expected = match &d.normality {
                Some(sw) if sw.p_value > config.alpha => Method::PairedT,
                _ => Method::WilcoxonSignedRank,
            };
            if let Some(branch) = d.branch() {
                assert_eq!(branch, expected, "{}", s.scope);
                assert_eq!(d.reject_null, d.main.as_ref().unwrap().p_value < config.alpha);
                seen += 1;
            }
        }
    }
    assert!(seen > 0);
}

#[test]
fn export_is_complete_and_reproducible() {
    let (_, _, _, bundle) = fixture();
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let files = export_bundle(bundle, a.path(), ExportFormats::default()).unwrap();
    let graphs: usize = bundle
        .scopes
        .iter()
        .map(|s| s.networks.iter().filter(|n| n.graph.is_some()).count())
        .sum();
    assert_eq!(files.len(), 1 + 5 * graphs);
    for f in &files {
        assert!(fs::metadata(f).unwrap().len() > 0, "{}", f.display());
    }
    export_bundle(bundle, b.path(), ExportFormats::default()).unwrap();
    for f in &files {
        let name = f.file_name().unwrap();
        assert_eq!(fs::read(f).unwrap(), fs::read(b.path().join(name)).unwrap());
    }

    let reloaded = load_bundle(a.path().join("report.json")).unwrap();
    assert_eq!(
        to_canonical_json(&reloaded).unwrap(),
        fs::read_to_string(a.path().join("report.json")).unwrap()
    );
}

#[test]
fn seed_changes_only_seed_dependent_fields() {
    let (config, resources, corpus, bundle) = fixture();
    let other = AnalysisConfig {
        seed: 12,
        ..config.clone()
    };
    let b = run_all_with(&other, resources, corpus).unwrap();
    for (x, y) in bundle.scopes.iter().zip(&b.scopes) {
        assert_eq!(x.documents, y.documents);
        assert_eq!(x.sentiment, y.sentiment);
        for (n, m) in x.networks.iter().zip(&y.networks) {
            assert_eq!(n.threshold, m.threshold);
            assert_eq!(n.graph.as_ref().map(|g| &g.summary), m.graph.as_ref().map(|g| &g.summary));
        }
    }
}

#[test]
fn stages_split_the_full_run() {
    let (config, resources, corpus, bundle) = fixture();
    let sent = run_stages(config, resources, corpus, Stages::SentimentOnly).unwrap();
    let nets = run_stages(config, resources, corpus, Stages::NetworksOnly).unwrap();
    assert!(sent.modularity_tables.is_empty());
    assert_eq!(nets.modularity_tables, bundle.modularity_tables);
    for ((full, s), n) in bundle.scopes.iter().zip(&sent.scopes).zip(&nets.scopes) {
        assert_eq!(s.sentiment, full.sentiment);
        assert!(s.networks.is_empty());
        assert_eq!(n.networks, full.networks);
        assert!(n.sentiment.is_none());
    }
}
