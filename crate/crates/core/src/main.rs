use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chrono::NaiveDate;
use clap::{Args, Parser, Subcommand};

use bntrend::clusters::{load_clusters, CountMode};
use bntrend::corpus::{load_corpus, Corpus};
use bntrend::report::{
    cluster_report, series_report, top_report, write_clusters, write_series, write_top, OutputFormat, RunConfig,
};
use bntrend::svg::{render_svg, SeriesTable};
use bntrend::text::TermMode;
use bntrend::Error;

/// Trending topics in date-stamped Bengali news corpora.
#[derive(Parser)]
#[command(name = "bntrend", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Top-k n-grams per window, ranked by chi-squared burst score.
    Top(AnalysisArgs),
    /// Per-window observed counts and scores for chosen n-grams.
    Series {
        #[command(flatten)]
        analysis: AnalysisArgs,
        /// An n-gram as space-separated words. Repeat for several terms.
        #[arg(long = "terms", required = true)]
        terms: Vec<String>,
    },
    /// Keyword-cluster mention shares per document category.
    Clusters {
        #[command(flatten)]
        analysis: AnalysisArgs,
        /// JSON object mapping cluster name to a word list.
        #[arg(long)]
        clusters: PathBuf,
        #[arg(long, value_enum, default_value_t = CountMode::Tokens)]
        count_mode: CountMode,
    },
    /// Render a series CSV as an SVG line chart.
    Plot {
        /// Series CSV; standard input when omitted.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct AnalysisArgs {
    /// JSONL corpus (`-` for standard input).
    #[arg(long)]
    input: PathBuf,
    /// First day of the analysis range (YYYY-MM-DD). Defaults to the earliest document.
    #[arg(long)]
    from: Option<NaiveDate>,
    /// Last day of the analysis range, inclusive. Defaults to the latest document.
    #[arg(long)]
    to: Option<NaiveDate>,
    #[arg(long, default_value_t = 7)]
    window_days: u32,
    /// N-gram arity: 1, 2 or 3.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=3))]
    n: u8,
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
    top: u64,
    #[arg(long, value_enum, default_value_t = TermMode::Surface)]
    mode: TermMode,
    /// Stop-word file, one word per line. Defaults to the bundled Bengali list.
    #[arg(long)]
    stopwords: Option<PathBuf>,
    /// Stem rules, `suffix<TAB>min_stem_len` per line.
    #[arg(long)]
    stem_rules: Option<PathBuf>,
    /// Let n-grams span removed stop words.
    #[arg(long)]
    bridge_stopwords: bool,
    /// Allow purely numeric terms in rankings.
    #[arg(long)]
    keep_numeric: bool,
    /// Skip ranking entries observed fewer times than this in their window.
    #[arg(long, default_value_t = 1)]
    min_observed: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Tsv)]
    format: OutputFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl AnalysisArgs {
    fn config(&self) -> RunConfig {
        RunConfig {
            input: self.input.clone(),
            from: self.from,
            to: self.to,
            window_days: self.window_days,
            n: usize::from(self.n),
            top: self.top as usize,
            mode: self.mode,
            stopwords: self.stopwords.clone(),
            stem_rules: self.stem_rules.clone(),
            bridge_stopwords: self.bridge_stopwords,
            keep_numeric: self.keep_numeric,
            min_observed: self.min_observed,
            format: self.format,
            out: self.out.clone(),
            count_mode: CountMode::Tokens,
        }
    }
}

/// An error with its process exit code: 1 for usage or configuration
/// problems, 2 for problems with the data.
struct Failure {
    code: u8,
    error: Error,
}

fn usage(error: impl Into<Error>) -> Failure {
    Failure {
        code: 1,
        error: error.into(),
    }
}

fn data(error: impl Into<Error>) -> Failure {
    Failure {
        code: 2,
        error: error.into(),
    }
}

/// Routes analysis errors: anything about the corpus contents is a data error.
fn classify(error: Error) -> Failure {
    match error {
        Error::NoDocuments
        | Error::UndefinedScore(_)
        | Error::MissingField { .. }
        | Error::InvalidDate { .. }
        | Error::Parse { .. }
        | Error::DuplicateId { .. } => data(error),
        other => usage(other),
    }
}

fn read_corpus(path: &Path) -> Result<Corpus, Failure> {
    if path == Path::new("-") {
        load_corpus(io::stdin().lock()).map_err(data)
    } else {
        let file = File::open(path)
            .map_err(|e| usage(io::Error::new(e.kind(), format!("cannot open {}: {e}", path.display()))))?;
        load_corpus(BufReader::new(file)).map_err(data)
    }
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(usage)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn finish(mut out: Box<dyn Write>) -> Result<(), Failure> {
    out.flush().map_err(usage)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Top(args) => {
            if args.format == OutputFormat::Svg {
                return Err(usage(Error::Parameter("top does not support --format svg".into())));
            }
            let config = args.config();
            let corpus = read_corpus(&config.input)?;
            let report = top_report(&config, &corpus).map_err(classify)?;
            let mut out = output(config.out.as_deref())?;
            write_top(&report, config.format, &mut out).map_err(usage)?;
            finish(out)
        }
        Command::Series { analysis, terms } => {
            let config = analysis.config();
            let corpus = read_corpus(&config.input)?;
            let report = series_report(&config, &corpus, &terms).map_err(classify)?;
            let mut out = output(config.out.as_deref())?;
            write_series(&report, config.format, &mut out).map_err(usage)?;
            finish(out)
        }
        Command::Clusters {
            analysis,
            clusters,
            count_mode,
        } => {
            if analysis.format == OutputFormat::Svg {
                return Err(usage(Error::Parameter("clusters does not support --format svg".into())));
            }
            let config = RunConfig {
                count_mode,
                ..analysis.config()
            };
            let text = fs::read_to_string(&clusters).map_err(usage)?;
            let clusters = load_clusters(&text).map_err(usage)?;
            let corpus = read_corpus(&config.input)?;
            let report = cluster_report(&config, &corpus, &clusters).map_err(classify)?;
            let mut out = output(config.out.as_deref())?;
            write_clusters(&report, config.format, &mut out).map_err(usage)?;
            finish(out)
        }
        Command::Plot { input, out } => {
            let mut text = String::new();
            match &input {
                Some(path) => {
                    File::open(path)
                        .map_err(usage)?
                        .read_to_string(&mut text)
                        .map_err(data)?;
                }
                None => {
                    io::stdin().read_to_string(&mut text).map_err(data)?;
                }
            }
            let table = SeriesTable::from_csv(text.as_bytes()).map_err(data)?;
            let svg = render_svg(&table).map_err(data)?;
            let mut sink = output(out.as_deref())?;
            sink.write_all(svg.as_bytes()).map_err(usage)?;
            finish(sink)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure { code, error }) => {
            eprintln!("error: {error}");
            ExitCode::from(code)
        }
    }
}
