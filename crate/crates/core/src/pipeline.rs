//! Runs the whole detector suite over one document or an aligned pair.

use crate::alignment::{align_by_time, check_block_count, AlignedCuePair, DEFAULT_THRESHOLD};
use crate::finding::Finding;
use crate::format::SubtitleDocument;
use crate::guideline;
use crate::langid::detect_mixed_language;
use crate::resources::{base_language, GuidelineProfile, LexiconSet};
use crate::translation::{self, CuePair, Speller};

/// Expected target/source length ratio for a language pair.
pub fn default_expansion(source_lang: &str, target_lang: &str) -> f64 {
    match (
        base_language(source_lang).as_str(),
        base_language(target_lang).as_str(),
    ) {
        ("en", "de") => 1.1,
        _ => 1.0,
    }
}

/// Thresholds and resources for a check run.
#[derive(Debug, Clone)]
pub struct CheckOptions {
    pub profile: GuidelineProfile,
    pub lexicons: LexiconSet,
    pub alignment_threshold: f64,
    pub expansion: f64,
    pub register_window: usize,
    pub profanity_tolerance: u8,
}

impl CheckOptions {
    pub fn new(profile: GuidelineProfile, lexicons: LexiconSet) -> CheckOptions {
        let expansion = default_expansion(&lexicons.source_lang, &lexicons.target_lang);
        CheckOptions {
            profile,
            lexicons,
            alignment_threshold: DEFAULT_THRESHOLD,
            expansion,
            register_window: translation::REGISTER_WINDOW,
            profanity_tolerance: translation::PROFANITY_TOLERANCE,
        }
    }
}

/// Options plus the indexes derived from them; build once, check many files.
#[derive(Debug, Clone)]
pub struct Checker {
    options: CheckOptions,
    speller: Speller,
}

impl Checker {
    pub fn new(options: CheckOptions) -> Checker {
        let speller = Speller::new(&options.lexicons);
        Checker { options, speller }
    }

    pub fn options(&self) -> &CheckOptions {
        &self.options
    }

    /// Single-document checks, ordered by cue index.
    pub fn lint(&self, doc: &SubtitleDocument) -> Vec<Finding> {
        let o = &self.options;
        let p = &o.profile;
        let lang = &o.lexicons.target_lang;
        let mut out = Vec::new();
        for (i, cue) in doc.cues.iter().enumerate() {
            out.extend(guideline::check_line_length(i, cue, p));
            out.extend(guideline::check_line_count(i, cue, p));
            out.extend(guideline::check_reading_speed(i, cue, p));
            out.extend(guideline::check_spacing(i, cue, p));
            out.extend(guideline::detect_repetitions(i, cue));
            out.extend(guideline::check_markup_balance(i, cue));
            out.extend(guideline::check_compound_length(i, cue, &o.lexicons));
            out.extend(detect_mixed_language(i, cue, lang));
            out.extend(self.speller.check(i, cue));
        }
        out.extend(translation::check_register(doc, lang, o.register_window));
        out.sort_by_key(|f| f.cue_index);
        out
    }

    /// Checks on 1-to-1 aligned pairs, plus file-level consistency.
    pub fn compare_aligned(
        &self,
        source: &SubtitleDocument,
        target: &SubtitleDocument,
        alignment: &[AlignedCuePair],
    ) -> Vec<Finding> {
        let o = &self.options;
        let lex = &o.lexicons;
        let mut out = check_block_count(alignment, source, target);
        for pair in alignment
            .iter()
            .filter_map(|p| CuePair::from_aligned(p, source, target))
        {
            out.extend(guideline::check_markup_integrity(
                pair.target_index,
                pair.source,
                pair.target,
            ));
            out.extend(translation::detect_not_translated(pair, lex));
            out.extend(translation::check_glossary(pair, lex));
            out.extend(translation::check_profanity(
                pair,
                lex,
                o.profanity_tolerance,
            ));
            out.extend(translation::check_numbers_units(pair, lex));
            out.extend(translation::check_addition_omission(pair, lex, o.expansion));
            out.extend(translation::detect_stammering(pair));
        }
        out.extend(translation::check_lexical_consistency(
            alignment, source, target, lex,
        ));
        out
    }

    /// Everything: target lint plus the paired checks, ordered by target
    /// cue index.
    pub fn compare(&self, source: &SubtitleDocument, target: &SubtitleDocument) -> Vec<Finding> {
        let alignment = align_by_time(source, target, self.options.alignment_threshold);
        let mut out = self.lint(target);
        out.extend(self.compare_aligned(source, target, &alignment));
        out.sort_by_key(|f| f.cue_index);
        out
    }
}

pub fn lint_document(doc: &SubtitleDocument, options: &CheckOptions) -> Vec<Finding> {
    Checker::new(options.clone()).lint(doc)
}

pub fn compare_documents(
    source: &SubtitleDocument,
    target: &SubtitleDocument,
    options: &CheckOptions,
) -> Vec<Finding> {
    Checker::new(options.clone()).compare(source, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finding::ErrorCategory;
    use crate::format::parse_document;
    use crate::resources::builtin_profile;

    fn options() -> CheckOptions {
        CheckOptions::new(
            builtin_profile("de").unwrap(),
            LexiconSet::empty("en", "de"),
        )
    }

    #[test]
    fn identical_clean_files() {
        let text = "WEBVTT\n\n00:00:01.000 --> 00:00:03.000\nJa.\n\n00:00:04.000 --> 00:00:06.000\nDanke.\n";
        let doc = parse_document(text, None).unwrap();
        assert!(compare_documents(&doc, &doc, &options()).is_empty());
    }

    #[test]
    fn block_merge_reported_once() {
        let src = "WEBVTT\n\n00:00:01.000 --> 00:00:03.000\n-It's a boy.\n\n00:00:03.000 --> 00:00:05.000\nHow is he? Is he okay?\n";
        let tgt = "WEBVTT\n\n00:00:01.000 --> 00:00:05.000\n-Es ist ein Junge!\n-Wie geht es ihm? Ist er okay?\n";
        let s = parse_document(src, None).unwrap();
        let t = parse_document(tgt, None).unwrap();
        let f = compare_documents(&s, &t, &options());
        let blocks: Vec<_> = f
            .iter()
            .filter(|f| f.category == ErrorCategory::BlockCountIntegrity)
            .collect();
        assert_eq!(blocks.len(), 1, "{f:?}");
    }

    #[test]
    fn lint_is_sorted() {
        let text = "WEBVTT\n\n00:00:01.000 --> 00:00:01.500\nLos, los, los! Das ist eine sehr lange Zeile mit vielen Wörtern.\n\n00:00:04.000 --> 00:00:06.000\n- Danke.\n";
        let doc = parse_document(text, None).unwrap();
        let f = lint_document(&doc, &options());
        assert!(f.windows(2).all(|w| w[0].cue_index <= w[1].cue_index));
        assert!(f.iter().any(|f| f.category == ErrorCategory::LineTooLong));
        assert!(f
            .iter()
            .any(|f| f.category == ErrorCategory::IncorrectSpacing && f.cue_index == 1));
    }
}
