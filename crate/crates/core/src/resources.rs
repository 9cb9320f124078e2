//! Lexicons bundled with the library and loading of user overrides.

use std::fs;

use crate::error::{Error, Result};
use crate::pipeline::AnalysisConfig;
use crate::sentiment::{PolarityLexicon, Scorer, ValenceLexicon};
use crate::textprep::{parse_word_list, LemmaLexicon, Preprocessor};

pub const DEFAULT_STOPWORDS: &str = include_str!("../../../data/stopwords_es.txt");
pub const DEFAULT_LEMMAS: &str = include_str!("../../../data/lemmas_es.tsv");
pub const DEFAULT_VALENCE: &str = include_str!("../../../data/valence_es.tsv");
pub const DEFAULT_POLARITY_POS: &str = include_str!("../../../data/polarity_pos.txt");
pub const DEFAULT_POLARITY_NEG: &str = include_str!("../../../data/polarity_neg.txt");

/// Preprocessor and scorer built from a config.
#[derive(Debug, Clone)]
pub struct Resources {
    pub preprocessor: Preprocessor,
    pub scorer: Scorer,
}

fn read_or(path: &Option<String>, default: &str) -> Result<String> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| Error::io(p, e)),
        None => Ok(default.to_string()),
    }
}

impl Resources {
    pub fn load(config: &AnalysisConfig) -> Result<Self> {
        let lex = &config.lexicons;
        let fold = config.fold_diacritics;
        let preprocessor = Preprocessor {
            lexicon: LemmaLexicon::parse_tsv(&read_or(&lex.lemmas, DEFAULT_LEMMAS)?, fold)?,
            stopwords: parse_word_list(&read_or(&lex.stopwords, DEFAULT_STOPWORDS)?, fold),
            fold_diacritics: fold,
        };
        let valence = ValenceLexicon::parse_tsv(&read_or(&lex.valence, DEFAULT_VALENCE)?, fold)?;
        let polarity = PolarityLexicon::from_word_lists(
            &read_or(&lex.polarity_positive, DEFAULT_POLARITY_POS)?,
            &read_or(&lex.polarity_negative, DEFAULT_POLARITY_NEG)?,
            fold,
        )?;
        let scorer = Scorer::new(valence, Some(polarity), config.fallback_weight)?;
        Ok(Resources {
            preprocessor,
            scorer,
        })
    }
}
