//! Chi-squared burst scoring of windowed n-gram counts.
//!
//! For an n-gram with window frequency `o` and corpus-wide frequency `T` over
//! `W` windows, the expected per-window frequency is `e = T / W` and the score
//! is `(o - e)^2 / e`. Rankings sort by score, then by window frequency, then
//! by the n-gram itself, all so that higher scores and frequencies come first.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ngram::{FrequencyTable, NGram};
use crate::text::is_numeric;

/// Average frequency of an n-gram per window.
pub fn expected_frequency(total: u64, windows: usize) -> Result<f64> {
    if windows == 0 {
        return Err(Error::Parameter("window count must be at least 1".into()));
    }
    if total == 0 {
        return Err(Error::UndefinedScore("total frequency is zero".into()));
    }
    Ok(total as f64 / windows as f64)
}

/// `(observed - expected)^2 / expected`.
pub fn chi_square(observed: f64, expected: f64) -> Result<f64> {
    if expected.is_nan() || expected <= 0.0 {
        return Err(Error::Domain(expected));
    }
    let diff = observed - expected;
    Ok(diff * diff / expected)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrendScore {
    pub ngram: NGram,
    pub window: usize,
    pub observed: u64,
    pub expected: f64,
    pub chi: f64,
}

/// Higher chi first, then higher observed frequency, then the smaller n-gram.
pub fn rank_order(a: &TrendScore, b: &TrendScore) -> Ordering {
    b.chi
        .total_cmp(&a.chi)
        .then_with(|| b.observed.cmp(&a.observed))
        .then_with(|| a.ngram.cmp(&b.ngram))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrendRanking {
    pub window: usize,
    pub arity: usize,
    pub entries: Vec<TrendScore>,
}

impl TrendRanking {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Which n-grams are eligible to appear in a ranking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankOptions {
    /// Entries with a window frequency below this floor are skipped.
    pub min_observed: u64,
    /// Skip n-grams containing a purely numeric term.
    pub exclude_numeric: bool,
}

impl Default for RankOptions {
    fn default() -> Self {
        RankOptions {
            min_observed: 1,
            exclude_numeric: true,
        }
    }
}

impl RankOptions {
    /// No candidate filtering at all.
    pub fn all() -> Self {
        RankOptions {
            min_observed: 1,
            exclude_numeric: false,
        }
    }

    fn admits(&self, ngram: &NGram, observed: u64) -> bool {
        observed >= self.min_observed.max(1) && !(self.exclude_numeric && ngram.terms().iter().any(|t| is_numeric(t)))
    }
}

/// Scores and sorts every n-gram observed in the 1-based `window`.
pub fn rank_window(table: &FrequencyTable, window: usize, options: &RankOptions) -> Result<TrendRanking> {
    let counts = table
        .window(window)
        .ok_or_else(|| Error::Parameter(format!("window {window} is outside 1..={}", table.window_count())))?;
    let windows = table.window_count();
    let mut entries = counts
        .iter()
        .filter(|(g, &o)| options.admits(g, o))
        .map(|(g, &observed)| {
            let expected = expected_frequency(table.total(g), windows)?;
            Ok(TrendScore {
                ngram: g.clone(),
                window,
                observed,
                expected,
                chi: chi_square(observed as f64, expected)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    entries.sort_by(rank_order);
    Ok(TrendRanking {
        window,
        arity: table.arity(),
        entries,
    })
}

/// Rankings for every window, in window order. Windows are scored in parallel.
pub fn rank_all(table: &FrequencyTable, options: &RankOptions) -> Result<Vec<TrendRanking>> {
    (1..=table.window_count())
        .into_par_iter()
        .map(|w| rank_window(table, w, options))
        .collect()
}

/// The first `k` entries of `ranking`.
pub fn top_k(mut ranking: TrendRanking, k: usize) -> Result<TrendRanking> {
    if k == 0 {
        return Err(Error::Parameter("k must be at least 1".into()));
    }
    ranking.entries.truncate(k);
    Ok(ranking)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesPoint {
    pub window: usize,
    pub observed: u64,
    /// `None` when the n-gram never occurs, so no expected frequency exists.
    pub chi: Option<f64>,
}

/// Per-window observed counts and scores for one n-gram.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermSeries {
    pub ngram: NGram,
    pub absent: bool,
    pub points: Vec<SeriesPoint>,
}

impl TermSeries {
    pub fn total(&self) -> u64 {
        self.points.iter().map(|p| p.observed).sum()
    }
}

pub fn term_series(ngram: &NGram, table: &FrequencyTable) -> Result<TermSeries> {
    if ngram.arity() != table.arity() {
        return Err(Error::Parameter(format!(
            "{ngram:?} has arity {}, table arity is {}",
            ngram.arity(),
            table.arity()
        )));
    }
    let total = table.total(ngram);
    let expected = if total == 0 {
        None
    } else {
        Some(expected_frequency(total, table.window_count())?)
    };
    let points = (1..=table.window_count())
        .map(|window| {
            let observed = table.observed(window, ngram);
            let chi = expected.map(|e| chi_square(observed as f64, e)).transpose()?;
            Ok(SeriesPoint { window, observed, chi })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TermSeries {
        ngram: ngram.clone(),
        absent: total == 0,
        points,
    })
}
