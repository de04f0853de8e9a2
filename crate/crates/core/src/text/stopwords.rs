use std::collections::HashSet;
use std::io::BufRead;

use super::{normalize, Token};
use crate::error::Result;

const BUNDLED: &str = include_str!("../../data/stopwords-bn.txt");

/// A set of normalized stop words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StopWordList {
    entries: HashSet<String>,
    source: String,
}

impl StopWordList {
    pub fn empty() -> Self {
        StopWordList {
            entries: HashSet::new(),
            source: "empty".into(),
        }
    }

    /// The bundled Bengali list (500 entries).
    pub fn bundled() -> Self {
        let mut list = Self::load(BUNDLED.as_bytes()).expect("bundled stop words are valid UTF-8");
        list.source = "bundled".into();
        list
    }

    pub fn from_words<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let entries = words
            .into_iter()
            .map(|w| normalize(w.as_ref()))
            .filter(|w| !w.is_empty())
            .collect();
        StopWordList {
            entries,
            source: "inline".into(),
        }
    }

    /// One word per line; `#` starts a comment line. Entries are normalized and deduplicated.
    pub fn load<R: BufRead>(reader: R) -> Result<Self> {
        let mut words = Vec::new();
        for line in reader.lines() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            words.push(line.to_string());
        }
        Ok(Self::from_words(words))
    }

    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.source = source.into();
        self
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn contains(&self, word: &str) -> bool {
        self.entries.contains(word)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(String::as_str)
    }
}

/// Why a content run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    StopWord,
    Sentence,
    DocumentEnd,
}

/// A maximal sequence of adjacent non-stop-word tokens. N-grams never cross
/// the end of a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContentRun {
    pub tokens: Vec<Token>,
    pub boundary: Boundary,
}

/// Removes stop words, cutting the token sequence at each removed position.
/// The final run is marked [`Boundary::DocumentEnd`].
pub fn filter_stopwords(tokens: &[Token], list: &StopWordList) -> Vec<ContentRun> {
    let mut runs = Vec::new();
    let mut current = Vec::new();
    for token in tokens {
        if list.contains(&token.surface) {
            if !current.is_empty() {
                runs.push(ContentRun {
                    tokens: std::mem::take(&mut current),
                    boundary: Boundary::StopWord,
                });
            }
        } else {
            current.push(token.clone());
        }
    }
    if !current.is_empty() {
        runs.push(ContentRun {
            tokens: current,
            boundary: Boundary::DocumentEnd,
        });
    }
    runs
}

/// Removes stop words but keeps the surviving tokens in a single run, so
/// n-grams may span a removed word.
pub fn filter_stopwords_bridging(tokens: &[Token], list: &StopWordList) -> Vec<ContentRun> {
    let kept: Vec<Token> = tokens.iter().filter(|t| !list.contains(&t.surface)).cloned().collect();
    if kept.is_empty() {
        Vec::new()
    } else {
        vec![ContentRun {
            tokens: kept,
            boundary: Boundary::DocumentEnd,
        }]
    }
}
