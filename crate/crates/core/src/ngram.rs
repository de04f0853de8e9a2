//! N-gram extraction over content runs and windowed frequency counting.

use std::collections::HashMap;
use std::fmt;

use chrono::NaiveDate;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, WindowPartition};
use crate::error::{Error, Result};
use crate::text::{ContentRun, TermMode, TextPipeline};

pub const MAX_ARITY: usize = 3;

pub fn check_arity(n: usize) -> Result<()> {
    if (1..=MAX_ARITY).contains(&n) {
        Ok(())
    } else {
        Err(Error::Parameter(format!("n-gram arity must be 1, 2 or 3, got {n}")))
    }
}

/// An ordered tuple of 1 to 3 terms. Ordering is lexicographic over the
/// terms, comparing strings by code point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct NGram(Vec<String>);

impl NGram {
    pub fn new<I, S>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let terms: Vec<String> = terms.into_iter().map(Into::into).collect();
        check_arity(terms.len())?;
        if terms.iter().any(|t| t.is_empty()) {
            return Err(Error::Parameter("n-gram terms must be non-empty".into()));
        }
        Ok(NGram(terms))
    }

    /// Splits a space-separated phrase into an n-gram.
    pub fn parse(phrase: &str) -> Result<Self> {
        Self::new(phrase.split_whitespace())
    }

    pub fn terms(&self) -> &[String] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for NGram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join(" "))
    }
}

impl TryFrom<Vec<String>> for NGram {
    type Error = Error;

    fn try_from(terms: Vec<String>) -> Result<Self> {
        NGram::new(terms)
    }
}

impl From<NGram> for Vec<String> {
    fn from(g: NGram) -> Self {
        g.0
    }
}

/// Every consecutive `n`-token window of the run, in order.
pub fn extract_ngrams(run: &ContentRun, n: usize, mode: TermMode) -> Result<Vec<NGram>> {
    check_arity(n)?;
    Ok(run
        .tokens
        .windows(n)
        .map(|w| NGram(w.iter().map(|t| t.term(mode).to_string()).collect()))
        .collect())
}

/// A document reduced to its date, label and content runs.
#[derive(Debug, Clone)]
pub struct AnalyzedDocument {
    pub date: NaiveDate,
    pub category: Option<String>,
    pub runs: Vec<ContentRun>,
}

/// Runs the text pipeline over every document, preserving corpus order.
pub fn analyze_corpus(corpus: &Corpus, pipeline: &TextPipeline) -> Vec<AnalyzedDocument> {
    corpus
        .documents()
        .par_iter()
        .map(|doc| AnalyzedDocument {
            date: doc.date,
            category: doc.category.clone(),
            runs: pipeline.content_runs(&doc.text()),
        })
        .collect()
}

pub type Counts = HashMap<NGram, u64>;

/// Per-window n-gram counts plus corpus-wide totals over `W` windows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyTable {
    arity: usize,
    mode: TermMode,
    window_counts: Vec<Counts>,
    totals: Counts,
}

impl FrequencyTable {
    /// Builds a table directly from per-window counts (index 0 is window 1).
    /// Zero entries are dropped.
    pub fn from_window_counts(arity: usize, mode: TermMode, mut window_counts: Vec<Counts>) -> Result<Self> {
        check_arity(arity)?;
        if window_counts.is_empty() {
            return Err(Error::Parameter("a frequency table needs at least one window".into()));
        }
        let mut totals = Counts::new();
        for counts in &mut window_counts {
            counts.retain(|_, c| *c > 0);
            for (g, &c) in counts.iter() {
                if g.arity() != arity {
                    return Err(Error::Parameter(format!(
                        "n-gram {g:?} has arity {}, table arity is {arity}",
                        g.arity()
                    )));
                }
                *totals.entry(g.clone()).or_default() += c;
            }
        }
        Ok(FrequencyTable {
            arity,
            mode,
            window_counts,
            totals,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn mode(&self) -> TermMode {
        self.mode
    }

    /// Number of windows, `W`.
    pub fn window_count(&self) -> usize {
        self.window_counts.len()
    }

    /// Counts for the 1-based window `index`.
    pub fn window(&self, index: usize) -> Option<&Counts> {
        index.checked_sub(1).and_then(|i| self.window_counts.get(i))
    }

    pub fn observed(&self, index: usize, ngram: &NGram) -> u64 {
        self.window(index).and_then(|c| c.get(ngram)).copied().unwrap_or(0)
    }

    pub fn total(&self, ngram: &NGram) -> u64 {
        self.totals.get(ngram).copied().unwrap_or(0)
    }

    pub fn totals(&self) -> &Counts {
        &self.totals
    }
}

/// Counts `n`-grams of every in-range document into its window. Documents
/// outside the partition contribute nothing.
pub fn count_frequencies(
    partition: &WindowPartition,
    documents: &[AnalyzedDocument],
    n: usize,
    mode: TermMode,
) -> Result<FrequencyTable> {
    check_arity(n)?;
    let windows = partition.len();
    let in_range: Vec<(usize, &AnalyzedDocument)> = documents
        .iter()
        .filter_map(|d| partition.window_of(d.date).map(|w| (w - 1, d)))
        .collect();
    if in_range.is_empty() {
        return Err(Error::NoDocuments);
    }

    let window_counts = in_range
        .par_iter()
        .fold(
            || vec![Counts::new(); windows],
            |mut acc, &(w, doc)| {
                for run in &doc.runs {
                    for window in run.tokens.windows(n) {
                        let g = NGram(window.iter().map(|t| t.term(mode).to_string()).collect());
                        *acc[w].entry(g).or_default() += 1;
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![Counts::new(); windows],
            |mut left, right| {
                for (l, r) in left.iter_mut().zip(right) {
                    for (g, c) in r {
                        *l.entry(g).or_default() += c;
                    }
                }
                left
            },
        );

    FrequencyTable::from_window_counts(n, mode, window_counts)
}
