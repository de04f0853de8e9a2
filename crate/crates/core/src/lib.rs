//! Trending-topic detection for date-stamped Bengali news corpora.
//!
//! Documents are split into fixed-width day windows, reduced to stop-word-free
//! content runs, and counted as 1-, 2- or 3-grams per window. Each n-gram seen
//! in a window is scored with the chi-squared burst statistic against its
//! corpus-wide average per-window frequency, and the highest scores are the
//! window's trending topics.
//!
//! ```
//! use bntrend::{corpus::load_corpus, report::{top_report, RunConfig}};
//!
//! let jsonl = r#"{"id":"a","date":"2010-03-26","body":"মহান স্বাধীনতা দিবস"}"#;
//! let corpus = load_corpus(jsonl.as_bytes()).unwrap();
//! let report = top_report(&RunConfig::default(), &corpus).unwrap();
//! assert_eq!(report.windows[0].entries.len(), 2);
//! ```

pub mod clusters;
pub mod corpus;
pub mod error;
pub mod ngram;
pub mod report;
pub mod scoring;
pub mod svg;
pub mod text;

pub use error::{Error, Result};
