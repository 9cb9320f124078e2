use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::netgraph::CommunityMethod;
use crate::ngram::{PairMode, PairSpec};

/// Frequency threshold policy for pair counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ThresholdRepr", into = "ThresholdRepr")]
pub enum Threshold {
    Auto,
    Fixed(u64),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ThresholdRepr {
    Fixed(u64),
    Named(String),
}

impl TryFrom<ThresholdRepr> for Threshold {
    type Error = Error;

    fn try_from(r: ThresholdRepr) -> Result<Self> {
        match r {
            ThresholdRepr::Fixed(v) => Ok(Threshold::Fixed(v)),
            ThresholdRepr::Named(s) => s.parse(),
        }
    }
}

impl From<Threshold> for ThresholdRepr {
    fn from(t: Threshold) -> Self {
        match t {
            Threshold::Auto => ThresholdRepr::Named("auto".into()),
            Threshold::Fixed(v) => ThresholdRepr::Fixed(v),
        }
    }
}

impl FromStr for Threshold {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(Threshold::Auto);
        }
        s.parse()
            .map(Threshold::Fixed)
            .map_err(|_| Error::Config(format!("threshold must be `auto` or a positive integer, got `{s}`")))
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Auto => f.write_str("auto"),
            Threshold::Fixed(v) => write!(f, "{v}"),
        }
    }
}

/// Whether stopwords are removed before pairing or pairs touching a
/// stopword are dropped afterwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairOrder {
    StopwordsFirst,
    PairsFirst,
}

/// Lexicon file overrides; `None` uses the bundled Spanish defaults.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LexiconPaths {
    pub lemmas: Option<String>,
    pub valence: Option<String>,
    pub polarity_positive: Option<String>,
    pub polarity_negative: Option<String>,
    pub stopwords: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalysisConfig {
    pub corpus: Option<String>,
    pub lexicons: LexiconPaths,
    pub modes: Vec<PairMode>,
    pub max_skip: usize,
    pub threshold: Threshold,
    pub epsilon: f64,
    pub window: usize,
    /// Thresholded graphs smaller than this get a lower threshold.
    pub min_vertices: usize,
    pub alpha: f64,
    pub fallback_weight: u32,
    pub methods: Vec<CommunityMethod>,
    pub seed: u64,
    pub min_docs: usize,
    pub fold_diacritics: bool,
    pub pair_order: PairOrder,
    pub top_terms: usize,
    pub top_frequencies: usize,
    pub modularity_weights: bool,
    pub eigen_weights: bool,
    pub out: Option<String>,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            corpus: None,
            lexicons: LexiconPaths::default(),
            modes: vec![PairMode::Bigram, PairMode::Skipgram],
            max_skip: 2,
            threshold: Threshold::Auto,
            epsilon: 0.05,
            window: 3,
            min_vertices: 30,
            alpha: 0.05,
            fallback_weight: 1,
            methods: CommunityMethod::REQUIRED.to_vec(),
            seed: 0,
            min_docs: 3,
            fold_diacritics: false,
            pair_order: PairOrder::StopwordsFirst,
            top_terms: 10,
            top_frequencies: 25,
            modularity_weights: true,
            eigen_weights: false,
            out: None,
        }
    }
}

impl AnalysisConfig {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let cfg: AnalysisConfig = toml::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let s = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&s)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return bad(format!("alpha must lie in (0, 1), got {}", self.alpha));
        }
        if let Threshold::Fixed(0) = self.threshold {
            return bad("a fixed threshold must be at least 1".into());
        }
        if self.epsilon.is_nan() || self.epsilon <= 0.0 || self.window == 0 {
            return bad("epsilon must be positive and window at least 1".into());
        }
        if self.fallback_weight == 0 {
            return bad("fallback_weight must be at least 1".into());
        }
        if self.modes.is_empty() {
            return bad("at least one pair mode is required".into());
        }
        if self.methods.is_empty() {
            return bad("at least one community method is required".into());
        }
        Ok(())
    }

    pub fn pair_spec(&self, mode: PairMode) -> PairSpec {
        match mode {
            PairMode::Bigram => PairSpec::bigram(),
            PairMode::Skipgram => PairSpec::skipgram(self.max_skip),
        }
    }
}
