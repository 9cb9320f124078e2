//! Word-pair co-occurrence counting and frequency threshold selection.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stats::skewness;
use crate::textprep::LemmaSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairMode {
    Bigram,
    Skipgram,
}

impl fmt::Display for PairMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairMode::Bigram => "bigram",
            PairMode::Skipgram => "skipgram",
        })
    }
}

impl std::str::FromStr for PairMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bigram" | "bigrams" => Ok(PairMode::Bigram),
            "skipgram" | "skipgrams" => Ok(PairMode::Skipgram),
            _ => Err(Error::InvalidArgument(format!("unknown pair mode `{s}`"))),
        }
    }
}

/// How pairs are formed from a lemma sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSpec {
    pub mode: PairMode,
    /// Number of intervening words allowed; always 0 for bigrams.
    pub max_skip: usize,
    pub keep_self_pairs: bool,
}

impl PairSpec {
    pub fn bigram() -> Self {
        PairSpec {
            mode: PairMode::Bigram,
            max_skip: 0,
            keep_self_pairs: false,
        }
    }

    pub fn skipgram(max_skip: usize) -> Self {
        PairSpec {
            mode: PairMode::Skipgram,
            max_skip,
            keep_self_pairs: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.mode == PairMode::Bigram && self.max_skip != 0 {
            return Err(Error::InvalidArgument("bigram mode requires max_skip = 0".into()));
        }
        Ok(())
    }
}

/// Unordered word-pair counts. Keys are stored with the lexicographically
/// smaller word first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCounts {
    pub spec: PairSpec,
    counts: BTreeMap<(String, String), u64>,
}

impl PairCounts {
    pub fn new(spec: PairSpec) -> Self {
        PairCounts {
            spec,
            counts: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, a: &str, b: &str, count: u64) {
        if count == 0 || (a == b && !self.spec.keep_self_pairs) {
            return;
        }
        let key = if a <= b {
            (a.to_string(), b.to_string())
        } else {
            (b.to_string(), a.to_string())
        };
        *self.counts.entry(key).or_default() += count;
    }

    pub fn get(&self, a: &str, b: &str) -> u64 {
        let key = if a <= b { (a, b) } else { (b, a) };
        self.counts
            .get(&(key.0.to_string(), key.1.to_string()))
            .copied()
            .unwrap_or(0)
    }

    /// Adds every count of `other` into `self`.
    pub fn merge(&mut self, other: &PairCounts) {
        for ((a, b), c) in &other.counts {
            *self.counts.entry((a.clone(), b.clone())).or_default() += c;
        }
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn max_count(&self) -> u64 {
        self.counts.values().copied().max().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str, u64)> {
        self.counts.iter().map(|((a, b), c)| (a.as_str(), b.as_str(), *c))
    }

    pub fn counts(&self) -> Vec<u64> {
        self.counts.values().copied().collect()
    }

    /// Rows sorted by count descending, then by the word pair.
    pub fn ranked(&self) -> Vec<(&str, &str, u64)> {
        let mut rows: Vec<_> = self.iter().collect();
        rows.sort_by(|x, y| y.2.cmp(&x.2).then_with(|| (x.0, x.1).cmp(&(y.0, y.1))));
        rows
    }

    /// CSV `word1,word2,count`, ranked.
    pub fn write_csv(&self, mut out: impl Write) -> std::io::Result<()> {
        writeln!(out, "word1,word2,count")?;
        for (a, b, c) in self.ranked() {
            writeln!(out, "{},{},{}", csv_field(a), csv_field(b), c)?;
        }
        Ok(())
    }
}

pub(crate) fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Pairs every word with the next `max_skip + 1` words of the same sequence.
pub fn extract_pairs(seq: &LemmaSequence, spec: PairSpec) -> Result<PairCounts> {
    let words: Vec<&str> = seq.lemmas().collect();
    extract_from_words(&words, None, spec)
}

/// Pairs over the unfiltered sequence, then drops pairs that involve a
/// stopword (`stop_mask[i]` true). The alternative to removing stopwords
/// before pairing.
pub fn extract_pairs_drop_after(
    seq: &LemmaSequence,
    stop_mask: &[bool],
    spec: PairSpec,
) -> Result<PairCounts> {
    if stop_mask.len() != seq.len() {
        return Err(Error::LengthMismatch {
            left: seq.len(),
            right: stop_mask.len(),
        });
    }
    let words: Vec<&str> = seq.lemmas().collect();
    extract_from_words(&words, Some(stop_mask), spec)
}

fn extract_from_words(words: &[&str], stop: Option<&[bool]>, spec: PairSpec) -> Result<PairCounts> {
    spec.validate()?;
    let span = spec.max_skip + 1;
    let mut pc = PairCounts::new(spec);
    let is_stop = |i: usize| stop.is_some_and(|m| m[i]);
    for i in 0..words.len() {
        for j in (i + 1)..words.len().min(i + span + 1) {
            if !is_stop(i) && !is_stop(j) {
                pc.add(words[i], words[j], 1);
            }
        }
    }
    Ok(pc)
}

/// Keeps pairs with count >= `v`.
pub fn apply_threshold(pc: &PairCounts, v: u64) -> PairCounts {
    PairCounts {
        spec: pc.spec,
        counts: pc
            .counts
            .iter()
            .filter(|(_, c)| **c >= v)
            .map(|(k, c)| (k.clone(), *c))
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub v: u64,
    pub skew: f64,
    pub surviving_pairs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdScan {
    pub points: Vec<ScanPoint>,
    pub chosen_v: u64,
    pub epsilon: f64,
    pub window: usize,
    /// True when skewness is undefined already at v = 1.
    pub degenerate: bool,
    /// True when no threshold met the stability rule and the least-varying
    /// one was taken instead.
    pub fallback: bool,
}

/// Skewness of the surviving counts for each threshold v = 1, 2, ... and
/// the first threshold after which it stays stable.
///
/// The scan stops before the first v leaving fewer than 3 distinct counts.
/// A threshold v is stable when every step `|skew(u+1) - skew(u)|` for u in
/// `v..v+window` is at most `epsilon * |skew(1)|`.
pub fn threshold_scan(pc: &PairCounts, epsilon: f64, window: usize) -> Result<ThresholdScan> {
    if pc.is_empty() {
        return Err(Error::InsufficientData("no pairs to scan".into()));
    }
    if epsilon.is_nan() || epsilon <= 0.0 || window == 0 {
        return Err(Error::InvalidArgument(
            "threshold scan needs epsilon > 0 and window >= 1".into(),
        ));
    }
    let mut sorted = pc.counts();
    sorted.sort_unstable();
    let mut distinct = sorted.clone();
    distinct.dedup();

    let mut points = Vec::new();
    // Between two distinct counts the surviving set does not change, so
    // skewness is only recomputed when v passes a distinct count.
    let mut cached: Option<(usize, f64)> = None;
    let max = *sorted.last().unwrap_or(&0);
    for v in 1..=max {
        let start = sorted.partition_point(|&c| c < v);
        let remaining_distinct = distinct.len() - distinct.partition_point(|&c| c < v);
        if remaining_distinct < 3 {
            break;
        }
        let skew = match cached {
            Some((s, k)) if s == start => k,
            _ => {
                let tail: Vec<f64> = sorted[start..].iter().map(|&c| c as f64).collect();
                let k = skewness(&tail)?;
                cached = Some((start, k));
                k
            }
        };
        points.push(ScanPoint {
            v,
            skew,
            surviving_pairs: sorted.len() - start,
        });
    }

    if points.is_empty() {
        return Ok(ThresholdScan {
            points,
            chosen_v: 1,
            epsilon,
            window,
            degenerate: true,
            fallback: false,
        });
    }

    let (chosen_v, fallback) = choose_threshold(&points, epsilon, window);
    Ok(ThresholdScan {
        points,
        chosen_v,
        epsilon,
        window,
        degenerate: false,
        fallback,
    })
}

fn choose_threshold(points: &[ScanPoint], epsilon: f64, window: usize) -> (u64, bool) {
    if points.len() < 2 {
        return (points[0].v, false);
    }
    let tol = epsilon * points[0].skew.abs();
    let steps: Vec<f64> = points
        .windows(2)
        .map(|w| (w[1].skew - w[0].skew).abs())
        .collect();
    // steps[i] is the change from points[i] to points[i + 1]
    for i in 0..steps.len() {
        if i + window > steps.len() {
            break;
        }
        if steps[i..i + window].iter().all(|&s| s <= tol) {
            return (points[i].v, false);
        }
    }
    // No full window is stable: take the least-varying start (largest step
    // within its available window), earliest on ties.
    let mut best = (f64::INFINITY, points[0].v);
    for i in 0..steps.len() {
        let end = (i + window).min(steps.len());
        let variation = steps[i..end].iter().copied().fold(0.0, f64::max);
        if variation < best.0 {
            best = (variation, points[i].v);
        }
    }
    (best.1, true)
}
