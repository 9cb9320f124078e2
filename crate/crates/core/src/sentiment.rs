//! Lexicon sentiment scoring.
//!
//! Lemmas are looked up in an integer valence lexicon (-5..=+5). Lemmas the
//! valence lexicon does not cover fall back to a binary polarity lexicon,
//! contributing `±fallback_weight`. Everything else is ignored.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::textprep::{normalize_with, parse_word_list, LemmaSequence, Upos};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValenceLexicon {
    entries: HashMap<String, i32>,
}

impl ValenceLexicon {
    pub fn parse_tsv(content: &str, fold_diacritics: bool) -> Result<Self> {
        let mut lex = ValenceLexicon::default();
        for (idx, line) in content.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (word, score) = line.rsplit_once('\t').ok_or_else(|| {
                Error::InvalidArgument(format!("valence lexicon line {}: missing tab", idx + 1))
            })?;
            let score: i32 = score.trim().parse().map_err(|_| {
                Error::InvalidArgument(format!("valence lexicon line {}: bad score `{score}`", idx + 1))
            })?;
            let word = normalize_with(word, fold_diacritics);
            if word.is_empty() || word.contains(' ') {
                continue;
            }
            lex.insert(&word, score)?;
        }
        Ok(lex)
    }

    pub fn insert(&mut self, lemma: &str, score: i32) -> Result<()> {
        if score == 0 || !(-5..=5).contains(&score) {
            return Err(Error::InvalidArgument(format!(
                "valence for `{lemma}` must be a nonzero integer in [-5, 5], got {score}"
            )));
        }
        self.entries.insert(lemma.to_string(), score);
        Ok(())
    }

    pub fn get(&self, lemma: &str) -> Option<i32> {
        self.entries.get(lemma).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PolarityLexicon {
    positive: BTreeSet<String>,
    negative: BTreeSet<String>,
}

impl PolarityLexicon {
    pub fn new(positive: BTreeSet<String>, negative: BTreeSet<String>) -> Result<Self> {
        if let Some(w) = positive.intersection(&negative).next() {
            return Err(Error::InvalidArgument(format!(
                "`{w}` is listed as both positive and negative"
            )));
        }
        Ok(PolarityLexicon { positive, negative })
    }

    pub fn from_word_lists(positive: &str, negative: &str, fold_diacritics: bool) -> Result<Self> {
        Self::new(
            parse_word_list(positive, fold_diacritics),
            parse_word_list(negative, fold_diacritics),
        )
    }

    /// +1, -1 or 0.
    pub fn polarity(&self, lemma: &str) -> i32 {
        if self.positive.contains(lemma) {
            1
        } else if self.negative.contains(lemma) {
            -1
        } else {
            0
        }
    }
}

#[derive(Debug, Clone)]
pub struct Scorer {
    pub valence: ValenceLexicon,
    pub fallback: Option<PolarityLexicon>,
    fallback_weight: i32,
}

impl Scorer {
    pub fn new(
        valence: ValenceLexicon,
        fallback: Option<PolarityLexicon>,
        fallback_weight: u32,
    ) -> Result<Self> {
        if fallback_weight == 0 {
            return Err(Error::InvalidArgument("fallback weight must be at least 1".into()));
        }
        let fallback_weight = i32::try_from(fallback_weight)
            .map_err(|_| Error::InvalidArgument("fallback weight too large".into()))?;
        Ok(Scorer {
            valence,
            fallback,
            fallback_weight,
        })
    }

    pub fn fallback_weight(&self) -> u32 {
        self.fallback_weight as u32
    }

    pub fn score(&self, lemma: &str) -> Option<i32> {
        if let Some(v) = self.valence.get(lemma) {
            return Some(v);
        }
        match self.fallback.as_ref().map(|f| f.polarity(lemma)) {
            Some(0) | None => None,
            Some(p) => Some(p * self.fallback_weight),
        }
    }

    /// Sentiment-bearing lemmas of `seq` with their signed scores, in order.
    pub fn score_tokens(&self, seq: &LemmaSequence) -> Vec<(String, i32)> {
        seq.lemmas()
            .filter_map(|l| self.score(l).map(|s| (l.to_string(), s)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SentimentSummary {
    pub doc_id: String,
    pub n_pos: u64,
    pub n_neg: u64,
    /// Sum of positive scores.
    pub sum_pos: u64,
    /// Sum of the magnitudes of negative scores.
    pub sum_neg: u64,
    pub mean_pos: Option<f64>,
    pub mean_neg: Option<f64>,
    pub prop_pos: Option<f64>,
    pub prop_neg: Option<f64>,
}

impl SentimentSummary {
    pub fn is_scored(&self) -> bool {
        self.n_pos + self.n_neg > 0
    }
}

pub fn summarize_document(doc_id: &str, scores: &[i32]) -> SentimentSummary {
    let (mut n_pos, mut n_neg, mut sum_pos, mut sum_neg) = (0u64, 0u64, 0u64, 0u64);
    for &s in scores {
        if s > 0 {
            n_pos += 1;
            sum_pos += s as u64;
        } else if s < 0 {
            n_neg += 1;
            sum_neg += s.unsigned_abs() as u64;
        }
    }
    let total = n_pos + n_neg;
    let ratio = |num: u64, den: u64| (den > 0).then(|| num as f64 / den as f64);
    SentimentSummary {
        doc_id: doc_id.to_string(),
        n_pos,
        n_neg,
        sum_pos,
        sum_neg,
        mean_pos: ratio(sum_pos, n_pos),
        mean_neg: ratio(sum_neg, n_neg),
        prop_pos: ratio(n_pos, total),
        prop_neg: ratio(n_neg, total),
    }
}

/// Corpus-level aggregates, both document-weighted and pooled over tokens.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusSentiment {
    pub documents: usize,
    pub scored_documents: usize,
    pub mean_of_mean_pos: Option<f64>,
    pub mean_of_mean_neg: Option<f64>,
    pub median_mean_pos: Option<f64>,
    pub median_mean_neg: Option<f64>,
    pub pooled_mean_pos: Option<f64>,
    pub pooled_mean_neg: Option<f64>,
    pub mean_prop_pos: Option<f64>,
    pub mean_prop_neg: Option<f64>,
}

pub fn corpus_sentiment(summaries: &[SentimentSummary]) -> CorpusSentiment {
    let collect = |f: fn(&SentimentSummary) -> Option<f64>| -> Vec<f64> {
        summaries.iter().filter_map(f).collect()
    };
    let mean_pos = collect(|s| s.mean_pos);
    let mean_neg = collect(|s| s.mean_neg);
    let prop_pos = collect(|s| s.prop_pos);
    let prop_neg = collect(|s| s.prop_neg);
    let (np, sp, nn, sn) = summaries.iter().fold((0, 0, 0, 0), |acc, s| {
        (acc.0 + s.n_pos, acc.1 + s.sum_pos, acc.2 + s.n_neg, acc.3 + s.sum_neg)
    });
    CorpusSentiment {
        documents: summaries.len(),
        scored_documents: summaries.iter().filter(|s| s.is_scored()).count(),
        mean_of_mean_pos: mean(&mean_pos),
        mean_of_mean_neg: mean(&mean_neg),
        median_mean_pos: median(&mean_pos),
        median_mean_neg: median(&mean_neg),
        pooled_mean_pos: (np > 0).then(|| sp as f64 / np as f64),
        pooled_mean_neg: (nn > 0).then(|| sn as f64 / nn as f64),
        mean_prop_pos: mean(&prop_pos),
        mean_prop_neg: mean(&prop_neg),
    }
}

fn mean(xs: &[f64]) -> Option<f64> {
    (!xs.is_empty()).then(|| xs.iter().sum::<f64>() / xs.len() as f64)
}

fn median(xs: &[f64]) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    Some(if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    })
}

/// Lemma counts over `sequences`, restricted to `upos_filter` when given,
/// ranked by count descending then lemma ascending.
pub fn frequency_table<'a>(
    sequences: impl IntoIterator<Item = &'a LemmaSequence>,
    upos_filter: Option<&BTreeSet<Upos>>,
    top_n: usize,
) -> Vec<(String, u64)> {
    let mut counts: BTreeMap<&str, u64> = BTreeMap::new();
    for seq in sequences {
        for (lemma, upos) in &seq.items {
            if upos_filter.is_none_or(|f| f.contains(upos)) {
                *counts.entry(lemma.as_str()).or_default() += 1;
            }
        }
    }
    let mut ranked: Vec<(String, u64)> = counts
        .into_iter()
        .map(|(l, c)| (l.to_string(), c))
        .collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    ranked.truncate(top_n);
    ranked
}
