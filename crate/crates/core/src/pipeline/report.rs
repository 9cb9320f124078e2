use serde::{Deserialize, Serialize};

use super::{AnalysisConfig, RoleScope};
use crate::corpus::{EligibilityCell, Subcase};
use crate::netgraph::export::{EdgeRow, NodeRow};
use crate::netgraph::{CommunityMethod, NetworkSummary};
use crate::ngram::{PairMode, ThresholdScan};
use crate::sentiment::{CorpusSentiment, SentimentSummary};
use crate::stats::CascadeDecision;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportBundle {
    pub tool: String,
    pub version: String,
    pub config: AnalysisConfig,
    pub corpus: CorpusOverview,
    pub scopes: Vec<ScopeReport>,
    pub modularity_tables: Vec<ModularityTable>,
}

impl ReportBundle {
    pub fn empty(config: AnalysisConfig) -> Self {
        ReportBundle {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            config,
            corpus: CorpusOverview::default(),
            scopes: Vec::new(),
            modularity_tables: Vec::new(),
        }
    }

    pub fn scope(&self, name: &str) -> Option<&ScopeReport> {
        self.scopes.iter().find(|s| s.scope == name)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CorpusOverview {
    pub documents: usize,
    pub skipped: usize,
    pub subcases: Vec<SubcaseCounts>,
    pub eligibility: Vec<EligibilityCell>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubcaseCounts {
    pub subcase: Subcase,
    pub total: usize,
    pub appearers: usize,
    pub victims: usize,
    pub unknown: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScopeReport {
    pub scope: String,
    pub subcase: Option<Subcase>,
    pub role: RoleScope,
    pub seed: u64,
    pub documents: Vec<String>,
    /// Why the scope was not analysed, if it was not.
    pub skipped: Option<String>,
    pub preprocessing: Option<PreprocessingStats>,
    pub sentiment: Option<SentimentSection>,
    pub networks: Vec<NetworkSection>,
}

impl ScopeReport {
    pub fn network(&self, mode: PairMode) -> Option<&NetworkSection> {
        self.networks.iter().find(|n| n.mode == mode)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreprocessingStats {
    pub tokens: usize,
    pub kept_tokens: usize,
    pub unknown_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SentimentSection {
    pub documents: Vec<SentimentSummary>,
    pub aggregate: CorpusSentiment,
    pub magnitude: CascadeOutcome,
    pub proportion: CascadeOutcome,
    pub frequencies: FrequencyTables,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CascadeOutcome {
    pub decision: Option<CascadeDecision>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyTables {
    pub all: Vec<(String, u64)>,
    pub nouns: Vec<(String, u64)>,
    pub verbs: Vec<(String, u64)>,
    pub adjectives: Vec<(String, u64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkSection {
    pub mode: PairMode,
    pub max_skip: usize,
    pub pair_occurrences: u64,
    pub distinct_pairs: usize,
    pub threshold: ThresholdInfo,
    pub error: Option<String>,
    pub graph: Option<GraphSection>,
}

impl NetworkSection {
    pub fn best_modularity(&self) -> Option<f64> {
        self.graph.as_ref().map(|g| g.best.modularity)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdInfo {
    pub policy: String,
    pub scan: Option<ThresholdScan>,
    /// Threshold from the policy.
    pub selected: u64,
    /// Threshold actually applied after relaxation.
    pub applied: u64,
    pub relaxed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairRow {
    pub word1: String,
    pub word2: String,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommunitySummary {
    pub method: CommunityMethod,
    pub modularity: f64,
    pub communities: usize,
    pub sizes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphSection {
    pub thresholded_vertices: usize,
    pub thresholded_edges: usize,
    pub summary: NetworkSummary,
    pub eigen_weighted: bool,
    pub modularity_weighted: bool,
    pub methods: Vec<CommunitySummary>,
    pub method_failures: Vec<(CommunityMethod, String)>,
    pub best: CommunitySummary,
    /// Per community of the best partition, the most central terms.
    pub top_terms: Vec<Vec<(String, f64)>>,
    pub kcore_median: usize,
    pub kcore_below_median: Vec<String>,
    pub kcore_warning: Option<String>,
    /// Thresholded pairs before restriction to the giant component.
    pub pairs: Vec<PairRow>,
    pub nodes: Vec<NodeRow>,
    pub edges: Vec<EdgeRow>,
}

/// One modularity comparison table: rows are regions then General,
/// columns the three role scopes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModularityTable {
    pub mode: PairMode,
    pub rows: Vec<ModularityRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModularityRow {
    pub row: String,
    pub all: Option<f64>,
    pub appearers: Option<f64>,
    pub victims: Option<f64>,
}
