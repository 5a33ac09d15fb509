//! Coarse language guessing from function words and script.

use std::collections::BTreeSet;

use crate::finding::{ErrorCategory, Finding, Severity};
use crate::format::Cue;
use crate::resources::base_language;
use crate::text::tokenize;

const STOPWORDS: &[(&str, &[&str])] = &[
    (
        "en",
        &[
            "the", "and", "is", "are", "you", "that", "this", "what", "with", "have", "it's",
            "i'm", "don't", "of", "to", "for", "not", "but", "we", "they", "he", "she", "be",
            "there", "where", "would", "could", "your", "my", "was", "were", "been", "just",
        ],
    ),
    (
        "de",
        &[
            "der", "die", "das", "und", "ist", "nicht", "ich", "du", "sie", "wir", "ein", "eine",
            "mit", "auf", "für", "auch", "aber", "wie", "was", "wo", "noch", "schon", "sich",
            "dem", "den", "des", "ja", "nein", "bin", "bist", "sind", "hat", "habe", "kann",
        ],
    ),
    (
        "fr",
        &[
            "le", "les", "et", "est", "je", "tu", "nous", "vous", "ils", "elle", "une", "des",
            "du", "pas", "que", "qui", "pour", "avec", "dans", "sur", "mais", "c'est", "suis",
            "où", "ce", "cette", "très", "oui", "non", "mon", "ton",
        ],
    ),
    (
        "es",
        &[
            "el", "los", "las", "y", "es", "está", "están", "yo", "tú", "nosotros", "usted", "una",
            "del", "por", "para", "con", "pero", "qué", "dónde", "cómo", "muy", "sí", "eso",
            "esto", "hay", "soy", "estoy", "aquí", "también", "la",
        ],
    ),
    (
        "pt",
        &[
            "o", "os", "as", "e", "é", "eu", "você", "nós", "não", "um", "uma", "do", "da", "dos",
            "das", "com", "mas", "onde", "muito", "sim", "isso", "aqui", "também", "está", "estou",
            "obrigado", "obrigada",
        ],
    ),
    (
        "it",
        &[
            "il", "gli", "lo", "è", "sono", "io", "noi", "voi", "loro", "della", "nel", "per",
            "con", "ma", "che", "dove", "come", "molto", "questo", "quello", "grazie", "anche",
        ],
    ),
    (
        "nl",
        &[
            "de", "het", "een", "en", "is", "niet", "ik", "jij", "je", "wij", "zij", "met", "op",
            "voor", "maar", "wat", "waar", "hoe", "heel", "dit", "dat", "ook", "bent", "zijn",
        ],
    ),
];

/// Minimum foreign function words before a cue is flagged.
pub const MIN_FOREIGN_HITS: usize = 2;

fn stopwords(lang: &str) -> &'static [&'static str] {
    STOPWORDS
        .iter()
        .find(|(l, _)| *l == lang)
        .map_or(&[], |(_, words)| *words)
}

/// Whether `word` (case-folded) is a function word of `lang`.
pub fn is_stopword(lang: &str, word: &str) -> bool {
    stopwords(&base_language(lang)).contains(&word)
}

/// Languages with a function-word list.
pub fn known_languages() -> impl Iterator<Item = &'static str> {
    STOPWORDS.iter().map(|(l, _)| *l)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Script {
    Latin,
    Cyrillic,
    Greek,
    Arabic,
    Hebrew,
    Han,
    Kana,
    Hangul,
    Other,
}

pub fn script_of(c: char) -> Script {
    match c as u32 {
        0x41..=0x5A | 0x61..=0x7A | 0xC0..=0x24F | 0x1E00..=0x1EFF => Script::Latin,
        0x370..=0x3FF => Script::Greek,
        0x400..=0x52F => Script::Cyrillic,
        0x590..=0x5FF => Script::Hebrew,
        0x600..=0x6FF | 0x750..=0x77F | 0xFB50..=0xFDFF | 0xFE70..=0xFEFF => Script::Arabic,
        0x3040..=0x30FF => Script::Kana,
        0xAC00..=0xD7AF | 0x1100..=0x11FF => Script::Hangul,
        0x4E00..=0x9FFF | 0x3400..=0x4DBF | 0xF900..=0xFAFF => Script::Han,
        _ => Script::Other,
    }
}

/// Expected script for a language code.
pub fn expected_script(lang: &str) -> Script {
    match base_language(lang).as_str() {
        "zh" => Script::Han,
        "ja" => Script::Kana,
        "ko" => Script::Hangul,
        "ar" | "fa" | "ur" => Script::Arabic,
        "he" => Script::Hebrew,
        "ru" | "uk" | "bg" | "sr" => Script::Cyrillic,
        "el" => Script::Greek,
        _ => Script::Latin,
    }
}

/// The likeliest foreign language of `text` for a document in `primary`,
/// with its evidence, or `None` when the text reads as `primary`.
pub fn foreign_language(text: &str, primary: &str) -> Option<(String, String)> {
    let primary = base_language(primary);

    // script check first: letters mostly outside the expected script
    let expected = expected_script(&primary);
    let letters: Vec<Script> = text
        .chars()
        .filter(|c| c.is_alphabetic())
        .map(script_of)
        .filter(|s| *s != Script::Other)
        .collect();
    if letters.len() >= 2 {
        let compatible =
            |s: Script| s == expected || (expected == Script::Kana && s == Script::Han);
        let foreign = letters.iter().filter(|s| !compatible(**s)).count();
        if foreign * 2 > letters.len() {
            let dominant = letters.iter().find(|s| !compatible(**s)).copied();
            return Some((
                format!("{dominant:?}").to_lowercase(),
                format!(
                    "{foreign} of {} letters are not in the expected script",
                    letters.len()
                ),
            ));
        }
    }

    // distinct words, so one repeated word is a single piece of evidence
    let own = stopwords(&primary);
    let tokens: BTreeSet<String> = tokenize(text).iter().map(|t| t.folded()).collect();
    let own_hits = tokens.iter().filter(|t| own.contains(&t.as_str())).count();
    let mut best: Option<(&str, usize)> = None;
    for (lang, words) in STOPWORDS {
        if *lang == primary {
            continue;
        }
        let hits = tokens
            .iter()
            .filter(|t| words.contains(&t.as_str()) && !own.contains(&t.as_str()))
            .count();
        if hits > best.map_or(0, |b| b.1) {
            best = Some((lang, hits));
        }
    }
    let (lang, hits) = best?;
    (hits >= MIN_FOREIGN_HITS && hits >= 2 * own_hits).then(|| {
        (
            lang.to_owned(),
            format!("{hits} {lang} function words against {own_hits} {primary}"),
        )
    })
}

pub fn detect_mixed_language(cue_index: usize, cue: &Cue, primary: &str) -> Vec<Finding> {
    match foreign_language(&cue.plain_text(), primary) {
        Some((lang, evidence)) => vec![Finding::new(
            ErrorCategory::MixedLanguage,
            cue_index,
            Severity::Info,
            format!(
                "text looks like {lang} rather than {}: {evidence}",
                base_language(primary)
            ),
        )],
        None => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::Timestamp;

    fn cue(text: &str) -> Cue {
        Cue::new(
            Timestamp::from_millis(0).unwrap(),
            Timestamp::from_millis(2000).unwrap(),
            text,
        )
    }

    #[test]
    fn spanish_in_german() {
        let f = detect_mixed_language(0, &cue("¿Dónde está la estación?"), "de");
        assert_eq!(f.len(), 1);
        assert!(f[0].message.contains("es"));
    }

    #[test]
    fn primary_text_is_clean() {
        for s in [
            "Komm jederzeit zum Fahren vorbei.",
            "Das ist nicht, was ich wollte.",
            "die unter dem alltäglichen Palastleben lauerten.",
            "Danke.",
            "CALIGULA MIT MARY BEARD",
            "Los, los, los!",
        ] {
            assert!(detect_mixed_language(0, &cue(s), "de").is_empty(), "{s}");
        }
        assert!(detect_mixed_language(0, &cue("Where is the station?"), "en").is_empty());
    }

    #[test]
    fn english_left_in_german() {
        assert_eq!(
            detect_mixed_language(0, &cue("What are you doing with that?"), "de").len(),
            1
        );
    }

    #[test]
    fn script_mismatch() {
        assert_eq!(detect_mixed_language(0, &cue("Где вокзал?"), "de").len(), 1);
        assert!(detect_mixed_language(0, &cue("火车站在哪里？"), "zh").is_empty());
        assert_eq!(
            detect_mixed_language(0, &cue("Where is the station?"), "zh").len(),
            1
        );
    }
}
