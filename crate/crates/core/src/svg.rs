//! Standalone SVG line charts for per-window term series.

use std::fmt::Write as _;
use std::io::Read;

use crate::error::{Error, Result};
use crate::report::ABSENT_MARK;

const WIDTH: f64 = 960.0;
const HEIGHT: f64 = 540.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 220.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 90.0;
const Y_TICKS: usize = 5;
const PALETTE: &[&str] = &[
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];

/// Labelled x positions and one named column of y values per line.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesTable {
    pub x_labels: Vec<String>,
    pub columns: Vec<(String, Vec<f64>)>,
}

impl SeriesTable {
    /// Reads a series CSV (`window_start,observed:<term>,chi:<term>,...`) and
    /// keeps the observed columns.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(reader);
        let header = rdr.headers()?.clone();
        let mut columns: Vec<(usize, String)> = Vec::new();
        for (i, name) in header.iter().enumerate().skip(1) {
            if let Some(term) = name.strip_prefix("observed:") {
                let term = term.strip_suffix(ABSENT_MARK).unwrap_or(term);
                columns.push((i, term.to_string()));
            }
        }
        if columns.is_empty() {
            return Err(Error::Series("no observed:<term> columns in header".into()));
        }
        let mut table = SeriesTable {
            x_labels: Vec::new(),
            columns: columns.iter().map(|(_, t)| (t.clone(), Vec::new())).collect(),
        };
        for (row, record) in rdr.records().enumerate() {
            let record = record?;
            table.x_labels.push(record.get(0).unwrap_or_default().to_string());
            for ((idx, _), (_, values)) in columns.iter().zip(table.columns.iter_mut()) {
                let cell = record.get(*idx).unwrap_or_default();
                let v: f64 = cell
                    .parse()
                    .map_err(|_| Error::Series(format!("row {}: {cell:?} is not a number", row + 2)))?;
                values.push(v);
            }
        }
        Ok(table)
    }
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Step of the form {1, 2, 5} x 10^k at or above `raw`.
fn nice_step(raw: f64) -> f64 {
    let magnitude = 10f64.powf(raw.log10().floor());
    let fraction = raw / magnitude;
    let nice = if fraction <= 1.0 {
        1.0
    } else if fraction <= 2.0 {
        2.0
    } else if fraction <= 5.0 {
        5.0
    } else {
        10.0
    };
    nice * magnitude
}

/// Renders one polyline per column over a fixed 960x540 canvas. The output is
/// a pure function of the table.
pub fn render_svg(table: &SeriesTable) -> Result<String> {
    let points = table.x_labels.len();
    if points == 0 || table.columns.is_empty() {
        return Err(Error::Series("nothing to plot".into()));
    }
    if let Some((name, _)) = table.columns.iter().find(|(_, v)| v.len() != points) {
        return Err(Error::Series(format!("column {name:?} does not have {points} values")));
    }
    if table.columns.iter().flat_map(|(_, v)| v).any(|v| !v.is_finite()) {
        return Err(Error::Series("values must be finite".into()));
    }

    let max = table
        .columns
        .iter()
        .flat_map(|(_, v)| v.iter().copied())
        .fold(0.0f64, f64::max);
    let step = nice_step(if max > 0.0 { max / Y_TICKS as f64 } else { 1.0 });
    let y_max = step * (max / step).ceil().max(1.0);
    let decimals = (-step.log10().floor()).max(0.0) as usize;

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let x_at = |i: usize| {
        if points == 1 {
            LEFT + plot_w / 2.0
        } else {
            LEFT + plot_w * i as f64 / (points - 1) as f64
        }
    };
    let y_at = |v: f64| TOP + plot_h * (1.0 - v / y_max);

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        s,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );

    // Axes.
    let bottom = TOP + plot_h;
    let _ = writeln!(
        s,
        r#"<g stroke="black" stroke-width="1"><line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{bottom}"/><line x1="{LEFT}" y1="{bottom}" x2="{:.2}" y2="{bottom}"/></g>"#,
        LEFT + plot_w
    );

    let ticks = (y_max / step).round() as usize;
    let _ = writeln!(s, r#"<g class="y-axis" text-anchor="end">"#);
    for t in 0..=ticks {
        let v = step * t as f64;
        let y = y_at(v);
        let _ = writeln!(
            s,
            r##"<line x1="{:.2}" y1="{y:.2}" x2="{LEFT}" y2="{y:.2}" stroke="black"/><line x1="{LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#dddddd"/><text x="{:.2}" y="{:.2}">{v:.decimals$}</text>"##,
            LEFT - 5.0,
            LEFT + plot_w,
            LEFT - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g class="x-axis" text-anchor="end">"#);
    for (i, label) in table.x_labels.iter().enumerate() {
        let x = x_at(i);
        let _ = writeln!(
            s,
            r#"<line x1="{x:.2}" y1="{bottom}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text transform="translate({x:.2},{:.2}) rotate(-45)">{}</text>"#,
            bottom + 5.0,
            bottom + 16.0,
            escape(label)
        );
    }
    let _ = writeln!(s, "</g>");

    for (i, (_, values)) in table.columns.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let coords: Vec<String> = values
            .iter()
            .enumerate()
            .map(|(j, &v)| format!("{:.2},{:.2}", x_at(j), y_at(v)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#,
            coords.join(" ")
        );
    }

    let _ = writeln!(s, r#"<g class="legend">"#);
    for (i, (name, _)) in table.columns.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let x = WIDTH - RIGHT + 20.0;
        let y = TOP + 10.0 + 22.0 * i as f64;
        let _ = writeln!(
            s,
            r#"<rect x="{x:.2}" y="{:.2}" width="14" height="4" fill="{color}"/><text x="{:.2}" y="{y:.2}">{}</text>"#,
            y - 6.0,
            x + 20.0,
            escape(name)
        );
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    Ok(s)
}
