//! Per-scope orchestration, report assembly and export.

mod config;
mod export;
mod report;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{load_corpus, role_analysis_eligibility, Corpus, Document, Role, Subcase};
use crate::error::{Error, Result};
use crate::netgraph::export::{edge_rows, NodeRow};
use crate::netgraph::{
    betweenness_centrality, build_graph, community_top_terms, detect_communities,
    eigenvector_centrality, giant_component, k_core_decomposition, k_core_filter_below_median,
    network_summary, CommunityResult, DetectOptions, EigenOptions,
};
use crate::ngram::{apply_threshold, extract_pairs, extract_pairs_drop_after, threshold_scan, PairCounts, PairMode};
use crate::resources::Resources;
use crate::sentiment::{corpus_sentiment, frequency_table, summarize_document};
use crate::stats::{sentiment_cascade, Metric};
use crate::textprep::{Prepared, Upos};

pub use config::{AnalysisConfig, LexiconPaths, PairOrder, Threshold};
pub use export::{export_bundle, load_bundle, to_canonical_json, ExportFormats};
pub use report::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RoleScope {
    All,
    Appearers,
    Victims,
}

impl RoleScope {
    pub const ALL: [RoleScope; 3] = [RoleScope::All, RoleScope::Appearers, RoleScope::Victims];

    fn role(self) -> Option<Role> {
        match self {
            RoleScope::All => None,
            RoleScope::Appearers => Some(Role::Appearer),
            RoleScope::Victims => Some(Role::Victim),
        }
    }

    fn slug(self) -> &'static str {
        match self {
            RoleScope::All => "all",
            RoleScope::Appearers => "appearers",
            RoleScope::Victims => "victims",
        }
    }
}

/// Which analyses a run performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Stages {
    #[default]
    All,
    SentimentOnly,
    NetworksOnly,
}

impl Stages {
    fn sentiment(self) -> bool {
        self != Stages::NetworksOnly
    }

    fn networks(self) -> bool {
        self != Stages::SentimentOnly
    }
}

/// A slice of the corpus: the whole corpus or one region, optionally
/// restricted to one speaker role.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scope {
    pub subcase: Option<Subcase>,
    pub role: RoleScope,
}

impl Scope {
    pub fn general() -> Self {
        Scope {
            subcase: None,
            role: RoleScope::All,
        }
    }

    /// General first, then the regions in report order; roles within each.
    pub fn enumerate() -> Vec<Scope> {
        std::iter::once(None)
            .chain(Subcase::REGIONS.into_iter().map(Some))
            .flat_map(|subcase| RoleScope::ALL.into_iter().map(move |role| Scope { subcase, role }))
            .collect()
    }

    pub fn name(&self) -> String {
        let region = self.subcase.map_or("general", Subcase::slug);
        format!("{region}_{}", self.role.slug())
    }

    pub fn matches(&self, doc: &Document) -> bool {
        !doc.skipped
            && self.subcase.is_none_or(|s| doc.subcase == s)
            && self.role.role().is_none_or(|r| doc.role == r)
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// FNV-1a over the top-level seed and the scope name.
pub fn scope_seed(seed: u64, name: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in seed.to_le_bytes().iter().chain(name.as_bytes()) {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Loads the configured corpus and lexicons, then analyses every scope.
pub fn run_all(config: &AnalysisConfig) -> Result<ReportBundle> {
    config.validate()?;
    let path = config
        .corpus
        .as_deref()
        .ok_or_else(|| Error::Config("no corpus path given".into()))?;
    let corpus = load_corpus(path)?;
    let resources = Resources::load(config)?;
    run_all_with(config, &resources, &corpus)
}

pub fn run_all_with(config: &AnalysisConfig, resources: &Resources, corpus: &Corpus) -> Result<ReportBundle> {
    run_stages(config, resources, corpus, Stages::All)
}

pub fn run_stages(config: &AnalysisConfig, resources: &Resources, corpus: &Corpus, stages: Stages) -> Result<ReportBundle> {
    config.validate()?;
    let prepared = prepare_all(resources, corpus);
    let scopes = Scope::enumerate();
    let reports: Vec<ScopeReport> = scopes
        .par_iter()
        .map(|scope| analyse_scope(config, resources, corpus, &prepared, *scope, stages))
        .collect();
    let mut bundle = ReportBundle::empty(config.clone());
    bundle.corpus = overview(corpus, config.min_docs);
    if stages.networks() {
        bundle.modularity_tables = config
            .modes
            .iter()
            .map(|&mode| modularity_table(&reports, mode))
            .collect();
    }
    bundle.scopes = reports;
    Ok(bundle)
}

/// Analyses one scope on its own, preprocessing only its documents.
pub fn run_scope(config: &AnalysisConfig, resources: &Resources, corpus: &Corpus, scope: Scope) -> Result<ScopeReport> {
    config.validate()?;
    let subset = Corpus {
        documents: corpus.documents.iter().filter(|d| scope.matches(d)).cloned().collect(),
        source_path: corpus.source_path.clone(),
    };
    let prepared = prepare_all(resources, &subset);
    Ok(analyse_scope(config, resources, corpus, &prepared, scope, Stages::All))
}

fn prepare_all<'a>(resources: &Resources, corpus: &'a Corpus) -> HashMap<&'a str, Prepared> {
    corpus
        .documents
        .par_iter()
        .filter(|d| !d.skipped)
        .map(|d| (d.id.as_str(), resources.preprocessor.prepare(&d.id, &d.text)))
        .collect()
}

fn overview(corpus: &Corpus, min_docs: usize) -> CorpusOverview {
    CorpusOverview {
        documents: corpus.len(),
        skipped: corpus.documents.iter().filter(|d| d.skipped).count(),
        subcases: Subcase::REGIONS
            .iter()
            .chain([Subcase::Unassigned].iter())
            .map(|&s| SubcaseCounts {
                subcase: s,
                total: corpus.count(Some(s), None),
                appearers: corpus.count(Some(s), Some(Role::Appearer)),
                victims: corpus.count(Some(s), Some(Role::Victim)),
                unknown: corpus.count(Some(s), Some(Role::Unknown)),
            })
            .filter(|c| c.subcase != Subcase::Unassigned || c.total > 0)
            .collect(),
        eligibility: role_analysis_eligibility(corpus, min_docs),
    }
}

fn modularity_table(reports: &[ScopeReport], mode: PairMode) -> ModularityTable {
    let cell = |subcase: Option<Subcase>, role: RoleScope| {
        reports
            .iter()
            .find(|r| r.subcase == subcase && r.role == role)
            .and_then(|r| r.network(mode))
            .and_then(NetworkSection::best_modularity)
    };
    let rows = Subcase::REGIONS
        .into_iter()
        .map(Some)
        .chain(std::iter::once(None))
        .map(|s| ModularityRow {
            row: s.map_or_else(|| "General".to_string(), |s| s.to_string()),
            all: cell(s, RoleScope::All),
            appearers: cell(s, RoleScope::Appearers),
            victims: cell(s, RoleScope::Victims),
        })
        .collect();
    ModularityTable { mode, rows }
}

fn analyse_scope(
    config: &AnalysisConfig,
    resources: &Resources,
    corpus: &Corpus,
    prepared: &HashMap<&str, Prepared>,
    scope: Scope,
    stages: Stages,
) -> ScopeReport {
    let name = scope.name();
    let seed = scope_seed(config.seed, &name);
    let docs: Vec<&Document> = corpus.documents.iter().filter(|d| scope.matches(d)).collect();
    let mut report = ScopeReport {
        scope: name,
        subcase: scope.subcase,
        role: scope.role,
        seed,
        documents: docs.iter().map(|d| d.id.clone()).collect(),
        skipped: None,
        preprocessing: None,
        sentiment: None,
        networks: Vec::new(),
    };
    let min_docs = config.min_docs.max(1);
    if docs.len() < min_docs {
        report.skipped = Some(format!(
            "{} analysable documents, at least {min_docs} required",
            docs.len()
        ));
        return report;
    }

    let preps: Vec<&Prepared> = docs.iter().map(|d| &prepared[d.id.as_str()]).collect();
    let tokens: usize = preps.iter().map(|p| p.full.len()).sum();
    let kept: usize = preps.iter().map(|p| p.filtered.len()).sum();
    let unknown: f64 = preps.iter().map(|p| p.unknown_rate * p.filtered.len() as f64).sum();
    report.preprocessing = Some(PreprocessingStats {
        tokens,
        kept_tokens: kept,
        unknown_rate: if kept > 0 { unknown / kept as f64 } else { 0.0 },
    });

    if stages.sentiment() {
        report.sentiment = Some(sentiment_section(config, resources, &preps));
    }
    if stages.networks() {
        report.networks = config
            .modes
            .iter()
            .map(|&mode| network_section(config, &preps, mode, seed))
            .collect();
    }
    report
}

fn sentiment_section(config: &AnalysisConfig, resources: &Resources, preps: &[&Prepared]) -> SentimentSection {
    let summaries: Vec<_> = preps
        .iter()
        .map(|p| {
            let scores: Vec<i32> = resources
                .scorer
                .score_tokens(&p.filtered)
                .into_iter()
                .map(|(_, s)| s)
                .collect();
            summarize_document(&p.filtered.doc_id, &scores)
        })
        .collect();
    let cascade = |metric| match sentiment_cascade(&summaries, metric, config.alpha) {
        Ok(d) => CascadeOutcome {
            decision: Some(d),
            error: None,
        },
        Err(e) => CascadeOutcome {
            decision: None,
            error: Some(e.to_string()),
        },
    };
    let seqs = || preps.iter().map(|p| &p.filtered);
    let only = |u: Upos| BTreeSet::from([u]);
    let top = config.top_frequencies;
    SentimentSection {
        aggregate: corpus_sentiment(&summaries),
        magnitude: cascade(Metric::MeanMagnitude),
        proportion: cascade(Metric::Proportion),
        frequencies: FrequencyTables {
            all: frequency_table(seqs(), None, top),
            nouns: frequency_table(seqs(), Some(&only(Upos::Noun)), top),
            verbs: frequency_table(seqs(), Some(&only(Upos::Verb)), top),
            adjectives: frequency_table(seqs(), Some(&only(Upos::Adj)), top),
        },
        documents: summaries,
    }
}

fn scope_pairs(config: &AnalysisConfig, preps: &[&Prepared], mode: PairMode) -> Result<PairCounts> {
    let spec = config.pair_spec(mode);
    let mut total = PairCounts::new(spec);
    for p in preps {
        let pc = match config.pair_order {
            PairOrder::StopwordsFirst => extract_pairs(&p.filtered, spec)?,
            PairOrder::PairsFirst => extract_pairs_drop_after(&p.full, &p.stop_mask, spec)?,
        };
        total.merge(&pc);
    }
    Ok(total)
}

fn network_section(config: &AnalysisConfig, preps: &[&Prepared], mode: PairMode, seed: u64) -> NetworkSection {
    let spec = config.pair_spec(mode);
    let mut section = NetworkSection {
        mode,
        max_skip: spec.max_skip,
        pair_occurrences: 0,
        distinct_pairs: 0,
        threshold: ThresholdInfo {
            policy: config.threshold.to_string(),
            scan: None,
            selected: 1,
            applied: 1,
            relaxed: false,
        },
        error: None,
        graph: None,
    };
    let pairs = match scope_pairs(config, preps, mode) {
        Ok(p) => p,
        Err(e) => {
            section.error = Some(e.to_string());
            return section;
        }
    };
    section.pair_occurrences = pairs.total();
    section.distinct_pairs = pairs.len();

    let selected = match config.threshold {
        Threshold::Fixed(v) => v,
        Threshold::Auto => match threshold_scan(&pairs, config.epsilon, config.window) {
            Ok(scan) => {
                let v = scan.chosen_v;
                section.threshold.scan = Some(scan);
                v
            }
            Err(e) => {
                section.error = Some(e.to_string());
                return section;
            }
        },
    };
    let mut applied = selected;
    let mut thresholded = apply_threshold(&pairs, applied);
    let mut graph = build_graph(&thresholded);
    while graph.vertex_count() < config.min_vertices && applied > 1 {
        applied -= 1;
        thresholded = apply_threshold(&pairs, applied);
        graph = build_graph(&thresholded);
    }
    section.threshold.selected = selected;
    section.threshold.applied = applied;
    section.threshold.relaxed = applied != selected;
    if graph.edge_count() == 0 {
        section.error = Some(format!("no pairs survive threshold {applied}"));
        return section;
    }

    let giant = giant_component(&graph);
    let eigen_opts = EigenOptions {
        use_weights: config.eigen_weights,
        ..Default::default()
    };
    let eigen = match eigenvector_centrality(&giant, eigen_opts) {
        Ok(e) => e,
        Err(e) => {
            section.error = Some(e.to_string());
            return section;
        }
    };
    let detect_opts = DetectOptions {
        use_weights: config.modularity_weights,
        seed: scope_seed(seed, &mode.to_string()),
    };
    let detection = match detect_communities(&giant, &config.methods, detect_opts) {
        Ok(d) => d,
        Err(e) => {
            section.error = Some(e.to_string());
            return section;
        }
    };
    let betweenness = betweenness_centrality(&giant);
    let cores = k_core_decomposition(&giant);
    let kview = k_core_filter_below_median(&giant);
    let best = detection.best();

    let nodes = (0..giant.vertex_count())
        .map(|v| NodeRow {
            label: giant.label(v).to_string(),
            degree: giant.degree(v),
            core: cores[v],
            eigen: eigen[v],
            betweenness: betweenness[v],
            community: Some(best.partition.community_of(v)),
        })
        .collect();
    section.graph = Some(GraphSection {
        thresholded_vertices: graph.vertex_count(),
        thresholded_edges: graph.edge_count(),
        summary: network_summary(&giant),
        eigen_weighted: config.eigen_weights,
        modularity_weighted: config.modularity_weights,
        methods: detection.results.iter().map(summarize_communities).collect(),
        method_failures: detection.failures.clone(),
        best: summarize_communities(best),
        top_terms: community_top_terms(&giant, best, &eigen, config.top_terms),
        kcore_median: kview.median_core,
        kcore_below_median: kview.graph.labels().to_vec(),
        kcore_warning: kview.warning,
        pairs: thresholded
            .ranked()
            .into_iter()
            .map(|(a, b, c)| PairRow {
                word1: a.to_string(),
                word2: b.to_string(),
                count: c,
            })
            .collect(),
        nodes,
        edges: edge_rows(&giant),
    });
    section
}

fn summarize_communities(r: &CommunityResult) -> CommunitySummary {
    CommunitySummary {
        method: r.method,
        modularity: r.modularity,
        communities: r.partition.community_count(),
        sizes: r.partition.communities().iter().map(Vec::len).collect(),
    }
}
