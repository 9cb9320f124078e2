//! Sentiment testing and semantic co-occurrence networks for collections
//! of hearing transcripts.
//!
//! The flow is corpus loading, text preparation, lexicon sentiment with a
//! normality-gated paired test, word-pair counting with an automatic
//! frequency threshold, and graph analysis with community detection.
//! [`pipeline::run_all`] drives every step for each corpus scope.

pub mod corpus;
pub mod error;
pub mod netgraph;
pub mod ngram;
pub mod pipeline;
pub mod resources;
pub mod sentiment;
pub mod stats;
pub mod textprep;

pub use corpus::{filter_corpus, load_corpus, role_analysis_eligibility, Corpus, Document, Role, Subcase};
pub use error::{Error, Result};
pub use netgraph::{build_graph, giant_component, CommunityMethod, NetworkSummary, Partition, SemanticGraph};
pub use ngram::{PairCounts, PairMode, PairSpec};
pub use pipeline::{run_all, AnalysisConfig, ReportBundle, Scope, Threshold};
pub use sentiment::{Scorer, SentimentSummary};
pub use stats::{Alternative, CascadeDecision, Method, TestResult};
pub use textprep::{LemmaSequence, Preprocessor, Upos};
