//! Bengali text preprocessing: normalization, sentence splitting, word
//! tokenization, stop-word filtering and suffix-stripping stemming.

mod stem;
mod stopwords;

pub use stem::{StemRule, StemRuleSet};
pub use stopwords::{filter_stopwords, filter_stopwords_bridging, Boundary, ContentRun, StopWordList};

use serde::{Deserialize, Serialize};
use unicode_general_category::{get_general_category, GeneralCategory};
use unicode_normalization::UnicodeNormalization;

/// Which token form is counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum TermMode {
    #[default]
    Surface,
    Stem,
}

/// A word after normalization, optionally carrying its root form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Token {
    pub surface: String,
    pub stem: Option<String>,
}

impl Token {
    pub fn new(surface: impl Into<String>) -> Self {
        Token {
            surface: surface.into(),
            stem: None,
        }
    }

    /// The form counted under `mode`. Unstemmed tokens fall back to the surface.
    pub fn term(&self, mode: TermMode) -> &str {
        match mode {
            TermMode::Surface => &self.surface,
            TermMode::Stem => self.stem.as_deref().unwrap_or(&self.surface),
        }
    }

    pub fn is_numeric(&self) -> bool {
        is_numeric(&self.surface)
    }
}

/// True when every character is a Unicode number (Bengali or ASCII digits, etc.).
pub fn is_numeric(term: &str) -> bool {
    !term.is_empty()
        && term.chars().all(|c| {
            matches!(
                get_general_category(c),
                GeneralCategory::DecimalNumber | GeneralCategory::LetterNumber | GeneralCategory::OtherNumber
            )
        })
}

const SENTENCE_ENDS: &[char] = &['.', '!', '?', '\u{0964}', '\u{0965}', '\u{2026}'];

fn is_word_char(c: char) -> bool {
    use GeneralCategory::*;
    matches!(
        get_general_category(c),
        UppercaseLetter
            | LowercaseLetter
            | TitlecaseLetter
            | ModifierLetter
            | OtherLetter
            | NonspacingMark
            | SpacingMark
            | EnclosingMark
            | DecimalNumber
            | LetterNumber
            | OtherNumber
    )
}

fn is_format_char(c: char) -> bool {
    get_general_category(c) == GeneralCategory::Format
}

/// Canonically composes `text`, drops format characters (ZWJ, ZWNJ and friends),
/// turns every run of punctuation, symbols and whitespace into a single space,
/// and trims both ends.
pub fn normalize(text: &str) -> String {
    let composed: String = text.chars().filter(|&c| !is_format_char(c)).nfc().collect();
    let mut out = String::with_capacity(composed.len());
    let mut pending_sep = false;
    for c in composed.chars() {
        if is_word_char(c) {
            if pending_sep && !out.is_empty() {
                out.push(' ');
            }
            pending_sep = false;
            out.push(c);
        } else {
            pending_sep = true;
        }
    }
    out
}

/// Splits raw text into sentences at `.`, `!`, `?`, danda, double danda and
/// ellipsis. Empty pieces are dropped.
pub fn split_sentences(text: &str) -> Vec<&str> {
    text.split(SENTENCE_ENDS).filter(|s| !s.trim().is_empty()).collect()
}

/// Splits normalized text into tokens, one per maximal run of word characters.
pub fn tokenize(text: &str) -> Vec<Token> {
    text.split(|c: char| !is_word_char(c) && !is_format_char(c))
        .filter(|s| !s.is_empty())
        .map(Token::new)
        .collect()
}

/// Full per-document preprocessing configuration.
#[derive(Debug, Clone)]
pub struct TextPipeline {
    pub stopwords: StopWordList,
    pub stem_rules: StemRuleSet,
    pub mode: TermMode,
    pub bridge_stopwords: bool,
}

impl Default for TextPipeline {
    fn default() -> Self {
        TextPipeline {
            stopwords: StopWordList::bundled(),
            stem_rules: StemRuleSet::bundled(),
            mode: TermMode::Surface,
            bridge_stopwords: false,
        }
    }
}

impl TextPipeline {
    /// A pipeline that filters nothing and counts surface forms.
    pub fn unfiltered() -> Self {
        TextPipeline {
            stopwords: StopWordList::empty(),
            ..Default::default()
        }
    }

    /// Content runs for one document. Runs never span a sentence boundary; the
    /// last run of the text is marked [`Boundary::DocumentEnd`].
    pub fn content_runs(&self, text: &str) -> Vec<ContentRun> {
        let mut runs = Vec::new();
        for sentence in split_sentences(text) {
            let mut tokens = tokenize(&normalize(sentence));
            if self.mode == TermMode::Stem {
                for token in &mut tokens {
                    self.stem_rules.stem_in_place(token);
                }
            }
            let mut sentence_runs = if self.bridge_stopwords {
                filter_stopwords_bridging(&tokens, &self.stopwords)
            } else {
                filter_stopwords(&tokens, &self.stopwords)
            };
            if let Some(last) = sentence_runs.last_mut() {
                last.boundary = Boundary::Sentence;
            }
            runs.append(&mut sentence_runs);
        }
        if let Some(last) = runs.last_mut() {
            last.boundary = Boundary::DocumentEnd;
        }
        runs
    }

    /// Prepares a free-form query phrase the same way document text is
    /// prepared, without stop-word filtering.
    pub fn query_terms(&self, phrase: &str) -> Vec<String> {
        tokenize(&normalize(phrase))
            .into_iter()
            .map(|mut t| {
                if self.mode == TermMode::Stem {
                    self.stem_rules.stem_in_place(&mut t);
                }
                t.term(self.mode).to_string()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn surfaces(tokens: &[Token]) -> Vec<&str> {
        tokens.iter().map(|t| t.surface.as_str()).collect()
    }

    #[test]
    fn danda_is_punctuation() {
        assert_eq!(normalize("স্বাধীনতা দিবস।"), "স্বাধীনতা দিবস");
    }

    #[test]
    fn empty_passthrough() {
        assert_eq!(normalize(""), "");
        assert!(tokenize("").is_empty());
    }

    #[test]
    fn comma_and_whitespace_collapse() {
        assert_eq!(normalize("মহান,  স্বাধীনতা"), "মহান স্বাধীনতা");
        assert_eq!(normalize("  \t“মহান”\n—স্বাধীনতা!! "), "মহান স্বাধীনতা");
    }

    #[test]
    fn joiners_removed_and_text_composed() {
        assert_eq!(normalize("র\u{200D}্যাব"), "র্যাব");
        assert_eq!(normalize("ক\u{200C}্ষ"), "ক্ষ");
        // ো decomposed as ে + া composes to U+09CB.
        assert_eq!(normalize("ক\u{09C7}\u{09BE}"), "ক\u{09CB}");
        // Virama and vowel signs are word characters, not separators.
        assert_eq!(tokenize(&normalize("স্বাধীনতা")).len(), 1);
    }

    #[test]
    fn tokenizes_table_terms() {
        assert_eq!(surfaces(&tokenize("মহান স্বাধীনতা দিবস")), vec!["মহান", "স্বাধীনতা", "দিবস"]);
        assert_eq!(surfaces(&tokenize("স্বাধীন বাংলা")), vec!["স্বাধীন", "বাংলা"]);
    }

    #[test]
    fn digits_and_latin_are_kept() {
        let tokens = tokenize(&normalize("২১শে ফেব্রুয়ারি 2010, BRTC-বাস"));
        assert_eq!(surfaces(&tokens), vec!["২১শে", "ফেব্রুয়ারি", "2010", "BRTC", "বাস"]);
        assert!(!tokens[0].is_numeric());
        assert!(tokens[2].is_numeric());
        assert!(is_numeric("২০১০"));
        assert!(!is_numeric(""));
    }

    #[test]
    fn sentences_split_on_danda_and_latin_marks() {
        assert_eq!(split_sentences("ক খ। গ ঘ? ঙ! চ."), vec!["ক খ", " গ ঘ", " ঙ", " চ"]);
        assert!(split_sentences("।।").is_empty());
    }

    #[test]
    fn pipeline_runs_respect_sentences_and_stopwords() {
        let pipeline = TextPipeline {
            stopwords: StopWordList::from_words(["ও"]),
            ..TextPipeline::unfiltered()
        };
        let runs = pipeline.content_runs("মহান ও স্বাধীনতা দিবস। শহীদ মিনারে ফুল");
        let shaped: Vec<(Vec<&str>, Boundary)> = runs.iter().map(|r| (surfaces(&r.tokens), r.boundary)).collect();
        assert_eq!(
            shaped,
            vec![
                (vec!["মহান"], Boundary::StopWord),
                (vec!["স্বাধীনতা", "দিবস"], Boundary::Sentence),
                (vec!["শহীদ", "মিনারে", "ফুল"], Boundary::DocumentEnd),
            ]
        );

        let bridged = TextPipeline {
            bridge_stopwords: true,
            ..pipeline
        };
        let runs = bridged.content_runs("মহান ও স্বাধীনতা দিবস। শহীদ");
        assert_eq!(runs.len(), 2);
        assert_eq!(surfaces(&runs[0].tokens), vec!["মহান", "স্বাধীনতা", "দিবস"]);
    }

    #[test]
    fn stem_mode_counts_roots() {
        let pipeline = TextPipeline {
            mode: TermMode::Stem,
            ..TextPipeline::unfiltered()
        };
        let runs = pipeline.content_runs("বিমানবন্দরের নাম");
        let terms: Vec<&str> = runs[0].tokens.iter().map(|t| t.term(TermMode::Stem)).collect();
        assert_eq!(terms, vec!["বিমানবন্দর", "নাম"]);
        assert_eq!(pipeline.query_terms("বিমানবন্দরের, নাম"), vec!["বিমানবন্দর", "নাম"]);
    }

    fn mixed_text() -> impl Strategy<Value = String> {
        // Bengali block, joiners, Latin, digits, punctuation and whitespace.
        let pieces = prop::sample::select(vec![
            "ক",
            "খ",
            "গ",
            "ন",
            "র",
            "য",
            "া",
            "ি",
            "ে",
            "ো",
            "্",
            "ং",
            "়",
            "\u{09C7}\u{09BE}",
            "\u{200C}",
            "\u{200D}",
            "।",
            "॥",
            ",",
            ".",
            "-",
            "“",
            " ",
            "  ",
            "\t",
            "\n",
            "a",
            "Z",
            "é",
            "e\u{0301}",
            "৫",
            "7",
            "$",
            "😀",
            "\u{00AD}",
        ]);
        prop::collection::vec(pieces, 0..40).prop_map(|v| v.concat())
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent(s in mixed_text()) {
            let once = normalize(&s);
            prop_assert_eq!(normalize(&once), once.clone());
            prop_assert!(!once.starts_with(' ') && !once.ends_with(' ') && !once.contains("  "));
        }

        #[test]
        fn normalize_is_idempotent_on_arbitrary_strings(s in "\\PC{0,60}") {
            let once = normalize(&s);
            prop_assert_eq!(normalize(&once), once);
        }

        #[test]
        fn tokens_are_ordered_substrings(s in mixed_text()) {
            let text = normalize(&s);
            let mut cursor = 0;
            for token in tokenize(&text) {
                prop_assert!(!token.surface.is_empty());
                prop_assert!(!token.surface.contains(' '));
                let found = text[cursor..].find(&token.surface);
                prop_assert!(found.is_some());
                cursor += found.unwrap() + token.surface.len();
            }
        }
    }
}
