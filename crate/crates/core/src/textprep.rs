//! Normalization, tokenization, stopword removal and lexicon lemmatization.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    pub position: usize,
}

/// Coarse universal part-of-speech tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Upos {
    Noun,
    Verb,
    Adj,
    Other,
}

impl fmt::Display for Upos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Upos::Noun => "NOUN",
            Upos::Verb => "VERB",
            Upos::Adj => "ADJ",
            Upos::Other => "OTHER",
        })
    }
}

impl FromStr for Upos {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "NOUN" | "PROPN" => Upos::Noun,
            "VERB" | "AUX" => Upos::Verb,
            "ADJ" => Upos::Adj,
            "" => return Err(Error::InvalidArgument("empty UPOS tag".into())),
            _ => Upos::Other,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaSequence {
    pub doc_id: String,
    pub items: Vec<(String, Upos)>,
}

impl LemmaSequence {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn lemmas(&self) -> impl Iterator<Item = &str> {
        self.items.iter().map(|(l, _)| l.as_str())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LemmaLexicon {
    entries: BTreeMap<String, (String, Upos)>,
}

impl LemmaLexicon {
    /// Parses `surface<TAB>lemma<TAB>upos` lines. Keys and lemmas are passed
    /// through `normalize` with the given diacritic policy; the first entry
    /// for a surface form wins.
    pub fn parse_tsv(content: &str, fold_diacritics: bool) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (idx, line) in content.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() != 3 {
                return Err(Error::InvalidArgument(format!(
                    "lemma lexicon line {}: expected 3 tab-separated columns",
                    idx + 1
                )));
            }
            let surface = normalize_with(cols[0], fold_diacritics);
            let lemma = normalize_with(cols[1], fold_diacritics);
            if surface.is_empty() || surface.contains(' ') || lemma.is_empty() {
                continue;
            }
            let upos: Upos = cols[2].parse()?;
            entries.entry(surface).or_insert((lemma, upos));
        }
        Ok(LemmaLexicon { entries })
    }

    pub fn insert(&mut self, surface: &str, lemma: &str, upos: Upos) {
        self.entries
            .insert(surface.to_string(), (lemma.to_string(), upos));
    }

    pub fn get(&self, surface: &str) -> Option<&(String, Upos)> {
        self.entries.get(surface)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Lowercases and replaces every run of non-letters (punctuation, digits,
/// symbols) with one space. Accented letters are kept.
pub fn normalize(text: &str) -> String {
    normalize_with(text, false)
}

pub fn normalize_with(text: &str, fold_diacritics: bool) -> String {
    let mut out = String::with_capacity(text.len());
    let mut pending_space = false;
    for ch in text.chars().flat_map(char::to_lowercase) {
        if ch.is_alphabetic() {
            if pending_space && !out.is_empty() {
                out.push(' ');
            }
            pending_space = false;
            out.push(if fold_diacritics { fold(ch) } else { ch });
        } else {
            pending_space = true;
        }
    }
    out
}

// ñ is a distinct letter and is left alone.
fn fold(ch: char) -> char {
    match ch {
        'á' | 'à' | 'â' | 'ä' => 'a',
        'é' | 'è' | 'ê' | 'ë' => 'e',
        'í' | 'ì' | 'î' | 'ï' => 'i',
        'ó' | 'ò' | 'ô' | 'ö' => 'o',
        'ú' | 'ù' | 'û' | 'ü' => 'u',
        _ => ch,
    }
}

pub fn tokenize(text: &str) -> Vec<Token> {
    text.split_whitespace()
        .enumerate()
        .map(|(position, s)| Token {
            surface: s.to_string(),
            position,
        })
        .collect()
}

/// Parses a one-word-per-line list; `#` starts a comment.
pub fn parse_word_list(content: &str, fold_diacritics: bool) -> BTreeSet<String> {
    content
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .map(|l| normalize_with(l, fold_diacritics))
        .filter(|w| !w.is_empty() && !w.contains(' '))
        .collect()
}

pub fn remove_stopwords(tokens: &[Token], stoplist: &BTreeSet<String>) -> Vec<Token> {
    tokens
        .iter()
        .filter(|t| !stoplist.contains(&t.surface))
        .enumerate()
        .map(|(position, t)| Token {
            surface: t.surface.clone(),
            position,
        })
        .collect()
}

/// Maps each token through the lexicon; unknown surfaces become their own
/// lemma tagged `Other`.
pub fn lemmatize(doc_id: &str, tokens: &[Token], lexicon: &LemmaLexicon) -> LemmaSequence {
    let items = tokens
        .iter()
        .map(|t| match lexicon.get(&t.surface) {
            Some((lemma, upos)) => (lemma.clone(), *upos),
            None => (t.surface.clone(), Upos::Other),
        })
        .collect();
    LemmaSequence {
        doc_id: doc_id.to_string(),
        items,
    }
}

/// Fraction of tokens with no lexicon entry.
pub fn unknown_rate(tokens: &[Token], lexicon: &LemmaLexicon) -> f64 {
    if tokens.is_empty() {
        return 0.0;
    }
    let unknown = tokens
        .iter()
        .filter(|t| lexicon.get(&t.surface).is_none())
        .count();
    unknown as f64 / tokens.len() as f64
}

/// Output of the full preprocessing flow for one document.
#[derive(Debug, Clone)]
pub struct Prepared {
    /// Lemmas after stopword removal.
    pub filtered: LemmaSequence,
    /// Lemmas of every token, with a stopword mask, for pair-then-drop extraction.
    pub full: LemmaSequence,
    pub stop_mask: Vec<bool>,
    pub unknown_rate: f64,
}

#[derive(Debug, Clone, Default)]
pub struct Preprocessor {
    pub lexicon: LemmaLexicon,
    pub stopwords: BTreeSet<String>,
    pub fold_diacritics: bool,
}

impl Preprocessor {
    pub fn prepare(&self, doc_id: &str, text: &str) -> Prepared {
        let tokens = tokenize(&normalize_with(text, self.fold_diacritics));
        let stop_mask: Vec<bool> = tokens
            .iter()
            .map(|t| self.stopwords.contains(&t.surface))
            .collect();
        let kept = remove_stopwords(&tokens, &self.stopwords);
        Prepared {
            filtered: lemmatize(doc_id, &kept, &self.lexicon),
            full: lemmatize(doc_id, &tokens, &self.lexicon),
            stop_mask,
            unknown_rate: unknown_rate(&kept, &self.lexicon),
        }
    }
}
