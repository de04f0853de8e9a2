use std::io::BufRead;

use super::{normalize, Token};
use crate::error::{Error, Result};

/// Common Bengali inflectional suffixes with the shortest stem each may leave.
const BUNDLED_RULES: &[(&str, usize)] = &[
    ("গুলো", 2),
    ("গুলি", 2),
    ("েরা", 2),
    ("ের", 2),
    ("টি", 2),
    ("টা", 2),
    ("কে", 2),
    ("রা", 2),
    ("ে", 2),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StemRule {
    pub suffix: String,
    /// Minimum number of characters that must remain after stripping.
    pub min_stem_len: usize,
}

/// Suffix-stripping rules, kept in longest-suffix-first order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StemRuleSet {
    rules: Vec<StemRule>,
}

impl StemRuleSet {
    pub fn new(rules: impl IntoIterator<Item = StemRule>) -> Self {
        let mut rules: Vec<StemRule> = rules
            .into_iter()
            .map(|r| StemRule {
                suffix: normalize(&r.suffix),
                min_stem_len: r.min_stem_len.max(1),
            })
            .filter(|r| !r.suffix.is_empty())
            .collect();
        rules.sort_by(|a, b| {
            b.suffix
                .chars()
                .count()
                .cmp(&a.suffix.chars().count())
                .then_with(|| a.suffix.cmp(&b.suffix))
        });
        rules.dedup_by(|a, b| a.suffix == b.suffix);
        StemRuleSet { rules }
    }

    pub fn bundled() -> Self {
        Self::new(BUNDLED_RULES.iter().map(|&(suffix, min_stem_len)| StemRule {
            suffix: suffix.into(),
            min_stem_len,
        }))
    }

    /// Parses `suffix<TAB>min_stem_len` lines; blank lines and `#` comments are skipped.
    pub fn load<R: BufRead>(reader: R) -> Result<Self> {
        let mut rules = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let err = |message: &str| Error::StemRule {
                line: idx + 1,
                message: message.into(),
            };
            let (suffix, min) = trimmed
                .split_once('\t')
                .ok_or_else(|| err("expected suffix<TAB>min_stem_len"))?;
            let min_stem_len = min
                .trim()
                .parse()
                .map_err(|_| err("min_stem_len must be a non-negative integer"))?;
            rules.push(StemRule {
                suffix: suffix.trim().into(),
                min_stem_len,
            });
        }
        Ok(Self::new(rules))
    }

    pub fn rules(&self) -> &[StemRule] {
        &self.rules
    }

    /// Strips the longest applicable suffix once. Returns the word unchanged
    /// when no rule leaves at least its minimum stem length.
    pub fn stem_str<'a>(&self, word: &'a str) -> &'a str {
        let len = word.chars().count();
        for rule in &self.rules {
            if let Some(rest) = word.strip_suffix(rule.suffix.as_str()) {
                let remaining = len - rule.suffix.chars().count();
                if remaining >= rule.min_stem_len {
                    return rest;
                }
            }
        }
        word
    }

    pub fn stem(&self, token: &Token) -> Token {
        let mut out = token.clone();
        self.stem_in_place(&mut out);
        out
    }

    pub(crate) fn stem_in_place(&self, token: &mut Token) {
        token.stem = Some(self.stem_str(&token.surface).to_string());
    }
}
