//! Run configuration and the report types emitted by the command-line tool,
//! plus their TSV, CSV and JSON encodings.

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::PathBuf;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::clusters::{category_share, cluster_mentions, CategoryBreakdown, CategoryFilter, CountMode, KeywordCluster};
use crate::corpus::{Corpus, WindowPartition};
use crate::error::{Error, Result};
use crate::ngram::{analyze_corpus, count_frequencies, AnalyzedDocument, NGram};
use crate::scoring::{rank_all, term_series, top_k, RankOptions, TermSeries};
use crate::svg::SeriesTable;
use crate::text::{StemRuleSet, StopWordList, TermMode, TextPipeline};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Tsv,
    Csv,
    Json,
    Svg,
}

/// Every knob of one analysis run. Only `input` is required; the date range
/// defaults to the corpus' own range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub input: PathBuf,
    pub from: Option<NaiveDate>,
    pub to: Option<NaiveDate>,
    pub window_days: u32,
    pub n: usize,
    pub top: usize,
    pub mode: TermMode,
    /// `None` selects the bundled list.
    pub stopwords: Option<PathBuf>,
    /// `None` selects the bundled rules.
    pub stem_rules: Option<PathBuf>,
    pub bridge_stopwords: bool,
    pub keep_numeric: bool,
    pub min_observed: u64,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub count_mode: CountMode,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            input: PathBuf::new(),
            from: None,
            to: None,
            window_days: 7,
            n: 2,
            top: 5,
            mode: TermMode::Surface,
            stopwords: None,
            stem_rules: None,
            bridge_stopwords: false,
            keep_numeric: false,
            min_observed: 1,
            format: OutputFormat::Tsv,
            out: None,
            count_mode: CountMode::Tokens,
        }
    }
}

impl RunConfig {
    pub fn pipeline(&self) -> Result<TextPipeline> {
        let stopwords = match &self.stopwords {
            None => StopWordList::bundled(),
            Some(path) => {
                StopWordList::load(BufReader::new(File::open(path)?))?.with_source(path.display().to_string())
            }
        };
        let stem_rules = match &self.stem_rules {
            None => StemRuleSet::bundled(),
            Some(path) => StemRuleSet::load(BufReader::new(File::open(path)?))?,
        };
        Ok(TextPipeline {
            stopwords,
            stem_rules,
            mode: self.mode,
            bridge_stopwords: self.bridge_stopwords,
        })
    }

    pub fn rank_options(&self) -> RankOptions {
        RankOptions {
            min_observed: self.min_observed,
            exclude_numeric: !self.keep_numeric,
        }
    }

    /// Windows over `[from, to]`, with missing bounds taken from the corpus.
    pub fn partition(&self, corpus: &Corpus) -> Result<WindowPartition> {
        let range = corpus.date_range();
        let start = self.from.or(range.map(|r| r.0)).ok_or(Error::NoDocuments)?;
        let end = self.to.or(range.map(|r| r.1)).ok_or(Error::NoDocuments)?;
        WindowPartition::new(start, end, self.window_days)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedEntry {
    pub rank: usize,
    pub ngram: NGram,
    pub chi: f64,
    pub observed: u64,
    pub expected: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowReport {
    pub window: usize,
    pub first_day: NaiveDate,
    pub last_day: NaiveDate,
    pub entries: Vec<RankedEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopReport {
    pub n: usize,
    pub k: usize,
    pub windows: Vec<WindowReport>,
}

fn prepare(config: &RunConfig, corpus: &Corpus) -> Result<(WindowPartition, Vec<AnalyzedDocument>)> {
    if corpus.is_empty() {
        return Err(Error::NoDocuments);
    }
    let partition = config.partition(corpus)?;
    let pipeline = config.pipeline()?;
    Ok((partition, analyze_corpus(corpus, &pipeline)))
}

/// Top-`k` n-grams for every window of the configured range.
pub fn top_report(config: &RunConfig, corpus: &Corpus) -> Result<TopReport> {
    if config.top == 0 {
        return Err(Error::Parameter("--top must be at least 1".into()));
    }
    let (partition, docs) = prepare(config, corpus)?;
    let table = count_frequencies(&partition, &docs, config.n, config.mode)?;
    let rankings = rank_all(&table, &config.rank_options())?;
    let windows = rankings
        .into_iter()
        .zip(partition.windows())
        .map(|(ranking, window)| {
            let ranking = top_k(ranking, config.top)?;
            Ok(WindowReport {
                window: window.index,
                first_day: window.first_day,
                last_day: window.last_day,
                entries: ranking
                    .entries
                    .into_iter()
                    .enumerate()
                    .map(|(i, s)| RankedEntry {
                        rank: i + 1,
                        ngram: s.ngram,
                        chi: s.chi,
                        observed: s.observed,
                        expected: s.expected,
                    })
                    .collect(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TopReport {
        n: config.n,
        k: config.top,
        windows,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub n: usize,
    pub window_starts: Vec<NaiveDate>,
    pub series: Vec<TermSeries>,
}

impl SeriesReport {
    /// Observed counts per term, ready for plotting.
    pub fn to_table(&self) -> SeriesTable {
        SeriesTable {
            x_labels: self.window_starts.iter().map(|d| d.to_string()).collect(),
            columns: self
                .series
                .iter()
                .map(|s| {
                    (
                        s.ngram.to_string(),
                        s.points.iter().map(|p| p.observed as f64).collect(),
                    )
                })
                .collect(),
        }
    }
}

/// Per-window series for each requested phrase. Phrases are normalized (and
/// stemmed in stem mode) like document text; all must have the same arity.
pub fn series_report(config: &RunConfig, corpus: &Corpus, phrases: &[String]) -> Result<SeriesReport> {
    if phrases.is_empty() {
        return Err(Error::Parameter("at least one term is required".into()));
    }
    let pipeline = config.pipeline()?;
    let ngrams = phrases
        .iter()
        .map(|p| NGram::new(pipeline.query_terms(p)))
        .collect::<Result<Vec<_>>>()?;
    let n = ngrams[0].arity();
    if ngrams.iter().any(|g| g.arity() != n) {
        return Err(Error::Parameter("all terms must have the same number of words".into()));
    }
    let (partition, docs) = prepare(config, corpus)?;
    let table = count_frequencies(&partition, &docs, n, config.mode)?;
    let series = ngrams
        .iter()
        .map(|g| term_series(g, &table))
        .collect::<Result<Vec<_>>>()?;
    Ok(SeriesReport {
        n,
        window_starts: partition.windows().iter().map(|w| w.first_day).collect(),
        series,
    })
}

pub const UNCATEGORIZED: &str = "uncategorized";

/// Cluster shares per document category, categories in label order with
/// unlabelled documents last. An explicit date range restricts the documents.
pub fn cluster_report(
    config: &RunConfig,
    corpus: &Corpus,
    clusters: &[KeywordCluster],
) -> Result<Vec<CategoryBreakdown>> {
    if clusters.is_empty() {
        return Err(Error::Parameter("at least one cluster is required".into()));
    }
    let pipeline = config.pipeline()?;
    let clusters: Vec<KeywordCluster> = match config.mode {
        TermMode::Surface => clusters.to_vec(),
        TermMode::Stem => {
            let stemmed: Vec<_> = clusters.iter().map(|c| c.stemmed(&pipeline.stem_rules)).collect();
            crate::clusters::check_disjoint(&stemmed)?;
            stemmed
        }
    };
    let docs: Vec<AnalyzedDocument> = analyze_corpus(corpus, &pipeline)
        .into_iter()
        .filter(|d| config.from.is_none_or(|f| d.date >= f) && config.to.is_none_or(|t| d.date <= t))
        .collect();

    let mut labels: Vec<&str> = docs.iter().filter_map(|d| d.category.as_deref()).collect();
    labels.sort_unstable();
    labels.dedup();
    let mut filters: Vec<(String, CategoryFilter<'_>)> = labels
        .iter()
        .map(|l| (l.to_string(), CategoryFilter::Label(l)))
        .collect();
    if docs.iter().any(|d| d.category.is_none()) {
        filters.push((UNCATEGORIZED.to_string(), CategoryFilter::Uncategorized));
    }

    filters
        .iter()
        .map(|(name, filter)| {
            let counts = cluster_mentions(&docs, &clusters, filter, config.mode, config.count_mode);
            category_share(name.clone(), &counts)
        })
        .collect()
}

/// Shortest decimal that parses back to the same double.
pub fn format_score(value: f64) -> String {
    format!("{value}")
}

struct TableWriter<W: Write> {
    format: OutputFormat,
    inner: csv::Writer<W>,
}

impl<W: Write> TableWriter<W> {
    fn new(format: OutputFormat, out: W) -> Result<Self> {
        let inner = match format {
            OutputFormat::Csv => csv::WriterBuilder::new().from_writer(out),
            OutputFormat::Tsv => csv::WriterBuilder::new()
                .delimiter(b'\t')
                .quote_style(csv::QuoteStyle::Never)
                .from_writer(out),
            other => {
                return Err(Error::Parameter(format!("{other:?} is not a tabular format")));
            }
        };
        Ok(TableWriter { format, inner })
    }

    fn row<I, S>(&mut self, fields: I) -> Result<()>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let fields: Vec<S> = fields.into_iter().collect();
        if self.format == OutputFormat::Tsv {
            if let Some(bad) = fields.iter().find(|f| f.as_ref().contains(['\t', '\n', '\r'])) {
                return Err(Error::Parameter(format!(
                    "field {:?} contains a tab or line break and cannot be written as TSV",
                    bad.as_ref()
                )));
            }
        }
        self.inner.write_record(fields.iter().map(|f| f.as_ref()))?;
        Ok(())
    }

    fn finish(mut self) -> Result<()> {
        self.inner.flush()?;
        Ok(())
    }
}

fn write_json<T: Serialize, W: Write>(value: &T, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")?;
    Ok(())
}

/// One row per ranked entry; a window without entries still gets one row
/// carrying only its window columns.
pub fn write_top<W: Write>(report: &TopReport, format: OutputFormat, out: W) -> Result<()> {
    if format == OutputFormat::Json {
        return write_json(report, out);
    }
    let mut w = TableWriter::new(format, out)?;
    w.row(["window", "first_day", "last_day", "rank", "ngram", "chi", "observed"])?;
    for window in &report.windows {
        let head = [
            window.window.to_string(),
            window.first_day.to_string(),
            window.last_day.to_string(),
        ];
        if window.entries.is_empty() {
            w.row(head.iter().cloned().chain(std::iter::repeat_n(String::new(), 4)))?;
        }
        for e in &window.entries {
            w.row(head.iter().cloned().chain([
                e.rank.to_string(),
                e.ngram.to_string(),
                format_score(e.chi),
                e.observed.to_string(),
            ]))?;
        }
    }
    w.finish()
}

pub const ABSENT_MARK: &str = " (absent)";

/// Column pair names for one term; absent terms are flagged on the observed column.
pub fn series_headers(series: &TermSeries) -> [String; 2] {
    let term = series.ngram.to_string();
    let flag = if series.absent { ABSENT_MARK } else { "" };
    [format!("observed:{term}{flag}"), format!("chi:{term}")]
}

pub fn write_series<W: Write>(report: &SeriesReport, format: OutputFormat, mut out: W) -> Result<()> {
    match format {
        OutputFormat::Json => return write_json(report, out),
        OutputFormat::Svg => {
            out.write_all(crate::svg::render_svg(&report.to_table())?.as_bytes())?;
            return Ok(());
        }
        _ => {}
    }
    let mut w = TableWriter::new(format, out)?;
    let mut header = vec!["window_start".to_string()];
    header.extend(report.series.iter().flat_map(series_headers));
    w.row(&header)?;
    for (i, start) in report.window_starts.iter().enumerate() {
        let mut row = vec![start.to_string()];
        for s in &report.series {
            let p = &s.points[i];
            row.push(p.observed.to_string());
            row.push(p.chi.map(format_score).unwrap_or_default());
        }
        w.row(&row)?;
    }
    w.finish()
}

pub const NO_DATA: &str = "no data";

pub fn write_clusters<W: Write>(report: &[CategoryBreakdown], format: OutputFormat, out: W) -> Result<()> {
    if format == OutputFormat::Json {
        return write_json(&report, out);
    }
    let mut w = TableWriter::new(format, out)?;
    w.row(["category", "cluster", "count", "share"])?;
    for breakdown in report {
        for c in &breakdown.clusters {
            w.row([
                breakdown.category.clone(),
                c.cluster.clone(),
                c.count.to_string(),
                c.share.map(format_score).unwrap_or_else(|| NO_DATA.to_string()),
            ])?;
        }
    }
    w.finish()
}
