//! Document ingestion from JSONL and partitioning of the analysis range into
//! fixed-width day windows.

use std::collections::HashMap;
use std::io::BufRead;

use chrono::{Duration, NaiveDate};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// One news article.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub date: NaiveDate,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub title: Option<String>,
    pub body: String,
}

impl Document {
    /// Text used for counting: the title (if any) and the body, joined by a
    /// danda so that no n-gram spans the headline and the first sentence.
    pub fn text(&self) -> String {
        match self.title.as_deref().map(str::trim) {
            Some(title) if !title.is_empty() => format!("{title}\u{0964} {}", self.body),
            _ => self.body.clone(),
        }
    }
}

fn string_field(obj: &serde_json::Map<String, Value>, field: &'static str, line: usize) -> Result<Option<String>> {
    match obj.get(field) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) => Ok(Some(s.clone())),
        Some(other) => Err(Error::Parse {
            line,
            message: format!("field {field} must be a string, got {other}"),
        }),
    }
}

fn required(obj: &serde_json::Map<String, Value>, field: &'static str, line: usize) -> Result<String> {
    string_field(obj, field, line)?.ok_or(Error::MissingField { line, field })
}

/// Parses one JSONL line. `line` is the 1-based line number used in errors.
pub fn parse_document(text: &str, line: usize) -> Result<Document> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        line,
        message: format!("malformed JSON: {e}"),
    })?;
    let Value::Object(obj) = value else {
        return Err(Error::Parse {
            line,
            message: "expected a JSON object".into(),
        });
    };

    let id = required(&obj, "id", line)?;
    let date = required(&obj, "date", line)?;
    let body = required(&obj, "body", line)?;

    if id.is_empty() {
        return Err(Error::Parse {
            line,
            message: "id must be non-empty".into(),
        });
    }
    let date = NaiveDate::parse_from_str(&date, "%Y-%m-%d")
        .ok()
        // chrono accepts unpadded fields; the format is strictly YYYY-MM-DD.
        .filter(|_| date.len() == 10)
        .ok_or(Error::InvalidDate { line, value: date })?;
    if body.trim().is_empty() {
        return Err(Error::Parse {
            line,
            message: "body is empty".into(),
        });
    }

    Ok(Document {
        id,
        date,
        category: string_field(&obj, "category", line)?,
        title: string_field(&obj, "title", line)?,
        body,
    })
}

/// An immutable, validated collection of documents.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpus {
    documents: Vec<Document>,
    date_range: Option<(NaiveDate, NaiveDate)>,
}

impl Corpus {
    pub fn new(documents: Vec<Document>) -> Result<Self> {
        let mut seen: HashMap<&str, usize> = HashMap::with_capacity(documents.len());
        for (i, doc) in documents.iter().enumerate() {
            if let Some(first) = seen.insert(&doc.id, i + 1) {
                return Err(Error::DuplicateId {
                    id: doc.id.clone(),
                    first,
                    second: i + 1,
                });
            }
        }
        Ok(Self::from_unique(documents))
    }

    fn from_unique(documents: Vec<Document>) -> Self {
        let date_range = documents.iter().map(|d| d.date).fold(None, |acc, d| match acc {
            None => Some((d, d)),
            Some((lo, hi)) => Some((lo.min(d), hi.max(d))),
        });
        Corpus { documents, date_range }
    }

    pub fn documents(&self) -> &[Document] {
        &self.documents
    }

    /// `(earliest, latest)` document date, `None` for an empty corpus.
    pub fn date_range(&self) -> Option<(NaiveDate, NaiveDate)> {
        self.date_range
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }
}

/// Reads a JSONL stream, skipping blank lines. Any line-level error aborts the load.
pub fn load_corpus<R: BufRead>(reader: R) -> Result<Corpus> {
    let mut documents = Vec::new();
    let mut first_seen: HashMap<String, usize> = HashMap::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let doc = parse_document(&line, line_no)?;
        if let Some(&first) = first_seen.get(&doc.id) {
            return Err(Error::DuplicateId {
                id: doc.id,
                first,
                second: line_no,
            });
        }
        first_seen.insert(doc.id.clone(), line_no);
        documents.push(doc);
    }
    Ok(Corpus::from_unique(documents))
}

/// One window of consecutive days. `index` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub index: usize,
    pub first_day: NaiveDate,
    pub last_day: NaiveDate,
}

impl Window {
    pub fn contains(&self, date: NaiveDate) -> bool {
        self.first_day <= date && date <= self.last_day
    }

    pub fn days(&self) -> i64 {
        (self.last_day - self.first_day).num_days() + 1
    }
}

/// Contiguous, non-overlapping windows anchored at `start`. Every window spans
/// `window_days` days except possibly the last, which is cut at `end`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowPartition {
    start: NaiveDate,
    end: NaiveDate,
    window_days: u32,
    windows: Vec<Window>,
}

impl WindowPartition {
    pub fn new(start: NaiveDate, end: NaiveDate, window_days: u32) -> Result<Self> {
        if start > end {
            return Err(Error::Range { start, end });
        }
        if window_days < 1 {
            return Err(Error::Parameter("window_days must be at least 1".into()));
        }
        let total_days = (end - start).num_days() + 1;
        let width = i64::from(window_days);
        let count = (total_days + width - 1) / width;
        let windows = (0..count)
            .map(|i| {
                let first_day = start + Duration::days(i * width);
                let last_day = (first_day + Duration::days(width - 1)).min(end);
                Window {
                    index: i as usize + 1,
                    first_day,
                    last_day,
                }
            })
            .collect();
        Ok(WindowPartition {
            start,
            end,
            window_days,
            windows,
        })
    }

    pub fn start(&self) -> NaiveDate {
        self.start
    }

    pub fn end(&self) -> NaiveDate {
        self.end
    }

    pub fn window_days(&self) -> u32 {
        self.window_days
    }

    pub fn windows(&self) -> &[Window] {
        &self.windows
    }

    /// Number of windows, `W`.
    pub fn len(&self) -> usize {
        self.windows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.windows.is_empty()
    }

    /// 1-based window index.
    pub fn window(&self, index: usize) -> Option<&Window> {
        index.checked_sub(1).and_then(|i| self.windows.get(i))
    }

    /// 1-based index of the window containing `date`, `None` when out of range.
    pub fn window_of(&self, date: NaiveDate) -> Option<usize> {
        if date < self.start || date > self.end {
            return None;
        }
        let offset = (date - self.start).num_days() as usize;
        Some(offset / self.window_days as usize + 1)
    }
}
