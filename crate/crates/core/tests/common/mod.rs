#![allow(dead_code)]

use chrono::{Duration, NaiveDate};
use serde_json::json;

pub const TABLE1: &[(&str, u64, u64, f64)] = &[
    ("মহান স্বাধীনতা", 29, 42, 304.76190476190476),
    ("স্বাধীনতা দিবস", 34, 59, 287.95574387947266),
    ("তদন্ত সংস্থা", 27, 41, 268.32655826558266),
    ("স্বাধীন বাংলা", 27, 45, 240.1),
    ("বিআরটিসির বাস", 12, 12, 192.66666666666669),
];

pub const TABLE2: &[(&str, u64, u64, f64)] = &[
    ("শহীদ মিনারে ফুল", 30, 33, 432.7424242424243),
    ("আন্তর্জাতিক মাতৃভাষা দিবস", 32, 45, 348.1),
    ("শহীদ মিনারে পুষ্পার্ঘ্য", 15, 17, 209.1797385620915),
    ("বিমানবন্দরের নাম পরিবর্তন", 14, 17, 180.4738562091503),
    ("মাতৃভাষা দিবস উপলক্ষে", 15, 20, 173.61111111111111),
];

pub const WOMEN: &str = r#"{"women":["নারী","নারীশিক্ষা","নারীবাদ","নারীত্ব","মহিলা","মেয়ে","কন্যা","বালিকা","স্ত্রী","মা"]}"#;

pub fn date(s: &str) -> NaiveDate {
    NaiveDate::parse_from_str(s, "%Y-%m-%d").unwrap()
}

pub const START: &str = "2010-01-01";
pub const END: &str = "2010-04-30";
pub const WINDOWS: usize = 18;

/// A day inside 1-based `window` of the 7-day grid anchored at START.
pub fn day_in_window(window: usize) -> NaiveDate {
    date(START) + Duration::days(7 * (window as i64 - 1))
}

/// JSONL corpus in which each phrase occurs `observed` times in `burst`
/// (dated `burst_day`) and the remaining `total - observed` occurrences are
/// spread round-robin over the other windows. Every occurrence is its own
/// sentence, so no n-gram crosses phrases.
pub fn reconstruction(rows: &[(&str, u64, u64, f64)], burst: usize, burst_day: NaiveDate) -> String {
    let mut lines = Vec::new();
    let others: Vec<usize> = (1..=WINDOWS).filter(|&w| w != burst).collect();
    for (i, &(phrase, observed, total, _)) in rows.iter().enumerate() {
        lines.push(doc(
            &format!("burst-{i}"),
            burst_day,
            &vec![phrase; observed as usize].join("। "),
        ));
        let rest = total - observed;
        for (j, &w) in others.iter().enumerate() {
            let share = rest / others.len() as u64 + u64::from((j as u64) < rest % others.len() as u64);
            if share > 0 {
                lines.push(doc(
                    &format!("rest-{i}-{w}"),
                    day_in_window(w),
                    &vec![phrase; share as usize].join("। "),
                ));
            }
        }
    }
    lines.join("\n") + "\n"
}

pub fn doc(id: &str, date: NaiveDate, body: &str) -> String {
    json!({"id": id, "date": date.to_string(), "body": body}).to_string()
}

pub fn table1_corpus() -> String {
    reconstruction(TABLE1, 13, date("2010-03-28"))
}

pub fn table2_corpus() -> String {
    reconstruction(TABLE2, 8, date("2010-02-21"))
}
