//! Checks that compare a source cue with its aligned target cue, or hold a
//! target cue against the loaded lexicons.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::alignment::AlignedCuePair;
use crate::finding::{ErrorCategory, Finding, Severity, Span};
use crate::fixers::suggest_unit_conversion;
use crate::format::{Cue, SubtitleDocument};
use crate::langid::is_stopword;
use crate::resources::{base_language, LexiconSet, ProfanityLexicon, UnitRule, UnitSystem};
use crate::text::{
    find_phrase, fold_phrase, is_sentence_initial, tokenize, LocaleNumber, Token, TokenKind,
};

/// A 1-to-1 aligned cue pair.
#[derive(Debug, Clone, Copy)]
pub struct CuePair<'a> {
    pub source_index: usize,
    pub target_index: usize,
    pub source: &'a Cue,
    pub target: &'a Cue,
}

impl<'a> CuePair<'a> {
    pub fn new(source_index: usize, source: &'a Cue, target_index: usize, target: &'a Cue) -> Self {
        CuePair {
            source_index,
            target_index,
            source,
            target,
        }
    }

    /// `None` unless the aligned group is exactly one cue on each side.
    pub fn from_aligned(
        pair: &AlignedCuePair,
        source: &'a SubtitleDocument,
        target: &'a SubtitleDocument,
    ) -> Option<CuePair<'a>> {
        let (s, t) = pair.single()?;
        Some(CuePair::new(s, source.cues.get(s)?, t, target.cues.get(t)?))
    }
}

// ---------------------------------------------------------------------------
// not translated

/// Target words copied from the source that the target wordlist does not
/// know. No-op without a wordlist.
pub fn detect_not_translated(pair: CuePair<'_>, lexicons: &LexiconSet) -> Vec<Finding> {
    if !lexicons.has_wordlist() {
        return Vec::new();
    }
    let source_text = pair.source.plain_text();
    let target_text = pair.target.plain_text();
    let source_tokens = tokenize(&source_text);
    let source_words: HashSet<String> = source_tokens.iter().map(Token::folded).collect();
    let source_has_lower: HashSet<String> = source_tokens
        .iter()
        .filter(|t| !t.is_capitalized())
        .map(Token::folded)
        .collect();
    let glossary = lexicons.knp_glossary.vocabulary();
    let capitalizes_nouns = base_language(&lexicons.target_lang) == "de";

    let target_tokens = tokenize(&target_text);
    target_tokens
        .iter()
        .filter(|t| t.kind == TokenKind::Word && t.char_len() > 1 && !t.has_digit())
        .filter(|t| {
            let folded = t.folded();
            source_words.contains(&folded)
                && !lexicons.in_wordlist(t.text)
                && !lexicons.proper_nouns.contains(&folded)
                && !fold_phrase(t.text).iter().all(|w| glossary.contains(w))
        })
        .filter(|t| {
            if capitalizes_nouns {
                return true;
            }
            // a mid-sentence capital with no lowercase use anywhere reads as a name
            let named = t.is_capitalized()
                && !is_sentence_initial(&target_text, t.start)
                && !source_has_lower.contains(&t.folded())
                && !target_tokens
                    .iter()
                    .any(|o| o.folded() == t.folded() && !o.is_capitalized());
            !named
        })
        .map(|t| {
            Finding::new(
                ErrorCategory::NotTranslated,
                pair.target_index,
                Severity::Warning,
                format!(
                    "\"{}\" looks copied from the source without translation",
                    t.text
                ),
            )
            .with_span(Span::new(t.start, t.end))
            .with_source_index(pair.source_index)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// spelling

/// Largest edit distance for spelling suggestions.
pub const MAX_SUGGESTION_DISTANCE: usize = 2;

/// Vocabulary and suggestion index built once per lexicon set.
#[derive(Debug, Clone, Default)]
pub struct Speller {
    known: HashSet<String>,
    by_initial: HashMap<char, Vec<String>>,
}

impl Speller {
    /// Accepts the wordlist, the glossary vocabulary and the name allowlist.
    /// Empty when the lexicon set has no wordlist.
    pub fn new(lexicons: &LexiconSet) -> Speller {
        if !lexicons.has_wordlist() {
            return Speller::default();
        }
        let mut known: HashSet<String> = lexicons.target_wordlist.clone();
        known.extend(lexicons.knp_glossary.vocabulary());
        known.extend(lexicons.proper_nouns.iter().cloned());
        let mut by_initial: HashMap<char, Vec<String>> = HashMap::new();
        for w in &lexicons.target_wordlist {
            if let Some(c) = w.chars().next() {
                by_initial.entry(c).or_default().push(w.clone());
            }
        }
        for words in by_initial.values_mut() {
            words.sort();
        }
        Speller { known, by_initial }
    }

    pub fn is_empty(&self) -> bool {
        self.known.is_empty()
    }

    pub fn is_known(&self, word: &str) -> bool {
        let folded = word.to_lowercase();
        self.known.contains(&folded)
            || (folded.contains(['-', '\u{2010}'])
                && folded
                    .split(['-', '\u{2010}'])
                    .all(|p| p.is_empty() || self.known.contains(p)))
    }

    /// Closest wordlist entry sharing the first letter, ties broken
    /// alphabetically.
    pub fn suggest(&self, word: &str) -> Option<String> {
        let folded = word.to_lowercase();
        let first = folded.chars().next()?;
        let len = folded.chars().count();
        let (_, best) = self
            .by_initial
            .get(&first)?
            .iter()
            .filter(|w| w.chars().count().abs_diff(len) <= MAX_SUGGESTION_DISTANCE)
            .map(|w| (strsim::levenshtein(&folded, w), w))
            .filter(|(d, _)| *d <= MAX_SUGGESTION_DISTANCE)
            .min()?;
        Some(match_case(word, best))
    }

    pub fn check(&self, cue_index: usize, cue: &Cue) -> Vec<Finding> {
        if self.is_empty() {
            return Vec::new();
        }
        let plain = cue.plain_text();
        tokenize(&plain)
            .into_iter()
            .filter(|t| t.kind == TokenKind::Word && t.char_len() > 1 && !t.has_digit())
            .filter(|t| !self.is_known(t.text))
            .map(|t| {
                let mut f = Finding::new(
                    ErrorCategory::Misspelling,
                    cue_index,
                    Severity::Warning,
                    format!("\"{}\" is not in the wordlist", t.text),
                )
                .with_span(Span::new(t.start, t.end));
                if let Some(s) = self.suggest(t.text) {
                    f.message.push_str(&format!("; did you mean \"{s}\"?"));
                    f = f.with_suggestion(s);
                }
                f
            })
            .collect()
    }
}

fn match_case(model: &str, word: &str) -> String {
    let letters: Vec<char> = model.chars().filter(|c| c.is_alphabetic()).collect();
    if letters.len() > 1 && letters.iter().all(|c| c.is_uppercase()) {
        return word.to_uppercase();
    }
    if model.chars().next().is_some_and(char::is_uppercase) {
        let mut chars = word.chars();
        return chars
            .next()
            .map(|c| c.to_uppercase().chain(chars).collect())
            .unwrap_or_default();
    }
    word.to_owned()
}

/// Tokens unknown to the wordlist, glossary and name allowlist. Builds a
/// [`Speller`] per call; reuse one when checking many cues.
pub fn check_spelling(cue_index: usize, cue: &Cue, lexicons: &LexiconSet) -> Vec<Finding> {
    Speller::new(lexicons).check(cue_index, cue)
}

// ---------------------------------------------------------------------------
// glossary

pub fn check_glossary(pair: CuePair<'_>, lexicons: &LexiconSet) -> Vec<Finding> {
    let glossary = &lexicons.knp_glossary;
    if glossary.is_empty() {
        return Vec::new();
    }
    let source_text = pair.source.plain_text();
    let target_text = pair.target.plain_text();
    let source_tokens = tokenize(&source_text);
    let target_tokens = tokenize(&target_text);
    glossary
        .entries()
        .iter()
        .filter(|e| find_phrase(&source_tokens, &fold_phrase(&e.term)).is_some())
        .filter(|e| find_phrase(&target_tokens, &fold_phrase(e.required())).is_none())
        .map(|e| {
            Finding::new(
                ErrorCategory::GlossaryViolation,
                pair.target_index,
                Severity::Error,
                format!(
                    "glossary term \"{}\" must be rendered as \"{}\"",
                    e.term,
                    e.required()
                ),
            )
            .with_suggestion(e.required())
            .with_source_index(pair.source_index)
        })
        .collect()
}

/// One finding per glossary term whose aligned renderings differ across
/// the file. The renderings recognised are the entry's required rendering
/// and its listed variants.
pub fn check_lexical_consistency(
    alignment: &[AlignedCuePair],
    source: &SubtitleDocument,
    target: &SubtitleDocument,
    lexicons: &LexiconSet,
) -> Vec<Finding> {
    let glossary = &lexicons.knp_glossary;
    if glossary.is_empty() {
        return Vec::new();
    }
    let joined = |doc: &SubtitleDocument, idx: &[usize]| {
        idx.iter()
            .filter_map(|&i| doc.cues.get(i))
            .map(Cue::plain_text)
            .collect::<Vec<_>>()
            .join("\n")
    };
    let groups: Vec<(usize, String, String)> = alignment
        .iter()
        .filter(|p| !p.source_indices.is_empty() && !p.target_indices.is_empty())
        .map(|p| {
            (
                p.target_indices[0],
                joined(source, &p.source_indices),
                joined(target, &p.target_indices),
            )
        })
        .collect();

    let mut out = Vec::new();
    for entry in glossary.entries() {
        let term = fold_phrase(&entry.term);
        let renderings: Vec<(&str, Vec<String>)> =
            entry.renderings().map(|r| (r, fold_phrase(r))).collect();
        if renderings.len() < 2 {
            continue;
        }
        // rendering → target cue indices, in first-seen order
        let mut seen: BTreeMap<usize, (&str, Vec<usize>)> = BTreeMap::new();
        for (cue, src, tgt) in &groups {
            if find_phrase(&tokenize(src), &term).is_none() {
                continue;
            }
            let tgt_tokens = tokenize(tgt);
            let chosen = renderings
                .iter()
                .enumerate()
                .filter(|(_, (_, words))| find_phrase(&tgt_tokens, words).is_some())
                .max_by_key(|(i, (_, words))| (words.len(), std::cmp::Reverse(*i)));
            if let Some((i, (text, _))) = chosen {
                seen.entry(i).or_insert((text, Vec::new())).1.push(*cue);
            }
        }
        if seen.len() < 2 {
            continue;
        }
        let mut used: Vec<(&str, Vec<usize>)> = seen.into_values().collect();
        used.sort_by_key(|(_, cues)| cues[0]);
        let listing = used
            .iter()
            .map(|(r, cues)| {
                let cues: Vec<String> = cues.iter().map(usize::to_string).collect();
                format!("\"{r}\" (cues {})", cues.join(", "))
            })
            .collect::<Vec<_>>()
            .join(", ");
        out.push(Finding::new(
            ErrorCategory::LexicalInconsistency,
            used[0].1[0],
            Severity::Info,
            format!("\"{}\" is rendered inconsistently: {listing}", entry.term),
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// profanity

/// Default allowed difference between source and target profanity levels.
pub const PROFANITY_TOLERANCE: u8 = 1;

/// Highest severity of any lexicon phrase in `text`; 0 when none occurs.
pub fn profanity_level(text: &str, lexicon: &ProfanityLexicon) -> u8 {
    let tokens = tokenize(text);
    lexicon
        .phrases()
        .filter(|(words, _)| find_phrase(&tokens, words).is_some())
        .map(|(_, s)| s)
        .max()
        .unwrap_or(0)
}

/// No-op unless profanity lexicons exist for both languages.
pub fn check_profanity(pair: CuePair<'_>, lexicons: &LexiconSet, tolerance: u8) -> Vec<Finding> {
    let (Some(src_lex), Some(tgt_lex)) = (
        lexicons.profanity_for(&lexicons.source_lang),
        lexicons.profanity_for(&lexicons.target_lang),
    ) else {
        return Vec::new();
    };
    let src = profanity_level(&pair.source.plain_text(), src_lex);
    let tgt = profanity_level(&pair.target.plain_text(), tgt_lex);
    if src.abs_diff(tgt) > tolerance {
        vec![Finding::new(
            ErrorCategory::ProfanityMismatch,
            pair.target_index,
            Severity::Warning,
            format!("profanity level {src} in the source but {tgt} in the target"),
        )
        .with_source_index(pair.source_index)]
    } else {
        Vec::new()
    }
}

// ---------------------------------------------------------------------------
// numbers and units

/// Relative tolerance when a converted value stands in for a number.
pub const CONVERSION_TOLERANCE: f64 = 0.10;

/// A number in running text, possibly followed by a unit word.
#[derive(Debug, Clone)]
pub struct NumberMention<'r> {
    pub text: String,
    /// Readings of the digits; more than one when locales disagree.
    pub values: Vec<f64>,
    pub unit: Option<&'r UnitRule>,
    /// Span of the number, plus the unit word when present.
    pub span: Span,
}

/// Numbers in `text`, read with `primary` separators first and `fallback`
/// second.
pub fn number_mentions<'r>(
    text: &str,
    primary: LocaleNumber,
    fallback: LocaleNumber,
    lexicons: &'r LexiconSet,
) -> Vec<NumberMention<'r>> {
    let tokens = tokenize(text);
    let mut out = Vec::new();
    for (i, t) in tokens.iter().enumerate() {
        if t.kind != TokenKind::Number {
            continue;
        }
        let mut values = Vec::new();
        for v in [primary.parse(t.text), fallback.parse(t.text)]
            .into_iter()
            .flatten()
        {
            if !values.contains(&v) {
                values.push(v);
            }
        }
        if values.is_empty() {
            continue;
        }
        let unit = tokens
            .get(i + 1)
            .filter(|n| n.kind == TokenKind::Word)
            .and_then(|n| lexicons.units.lookup(n.text).map(|r| (r, n.end)));
        let end = unit.map_or(t.end, |(_, e)| e);
        out.push(NumberMention {
            text: t.text.to_owned(),
            values,
            unit: unit.map(|(r, _)| r),
            span: Span::new(t.start, end),
        });
    }
    out
}

fn same_value(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(1.0)
}

/// Whether `candidate` is within the conversion tolerance of `converted`.
pub fn within_tolerance(converted: f64, candidate: f64) -> bool {
    if converted == 0.0 {
        return candidate == 0.0;
    }
    ((candidate - converted) / converted).abs() <= CONVERSION_TOLERANCE + 1e-12
}

const NUMBER_WORDS: &[(&str, [&str; 13])] = &[
    (
        "en",
        [
            "zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten",
            "eleven", "twelve",
        ],
    ),
    (
        "de",
        [
            "null", "eins", "zwei", "drei", "vier", "fünf", "sechs", "sieben", "acht", "neun",
            "zehn", "elf", "zwölf",
        ],
    ),
    (
        "fr",
        [
            "zéro", "un", "deux", "trois", "quatre", "cinq", "six", "sept", "huit", "neuf", "dix",
            "onze", "douze",
        ],
    ),
    (
        "es",
        [
            "cero", "uno", "dos", "tres", "cuatro", "cinco", "seis", "siete", "ocho", "nueve",
            "diez", "once", "doce",
        ],
    ),
    (
        "pt",
        [
            "zero", "um", "dois", "três", "quatro", "cinco", "seis", "sete", "oito", "nove", "dez",
            "onze", "doze",
        ],
    ),
];

/// Spelled-out small numbers ("zwei", "ein"/"eine" count as 1 in German).
fn spelled_value(word: &str, lang: &str) -> Option<f64> {
    let lang = base_language(lang);
    let w = word.to_lowercase();
    if lang == "de" && matches!(w.as_str(), "ein" | "eine" | "einen" | "einem" | "einer") {
        return Some(1.0);
    }
    NUMBER_WORDS
        .iter()
        .find(|(l, _)| *l == lang)
        .and_then(|(_, words)| words.iter().position(|x| *x == w))
        .map(|n| n as f64)
}

/// Whether a source number has a counterpart among the target mentions:
/// the same value, or the converted value within tolerance when the source
/// number carries a unit.
fn accounted_for(src: &NumberMention<'_>, target: &[NumberMention<'_>], spelled: &[f64]) -> bool {
    let equal = |v: f64| {
        target
            .iter()
            .any(|t| t.values.iter().any(|&x| same_value(x, v)))
            || spelled.iter().any(|&x| same_value(x, v))
    };
    if src.values.iter().any(|&v| equal(v)) {
        return true;
    }
    let Some(rule) = src.unit else { return false };
    src.values.iter().any(|&v| {
        let converted = rule.convert(v);
        target
            .iter()
            .any(|t| t.values.iter().any(|&x| within_tolerance(converted, x)))
    })
}

fn spelled_numbers(text: &str, lang: &str) -> Vec<f64> {
    tokenize(text)
        .iter()
        .filter_map(|t| spelled_value(t.text, lang))
        .collect()
}

/// Imperial units kept in the target, and source numbers with no
/// counterpart in the target.
pub fn check_numbers_units(pair: CuePair<'_>, lexicons: &LexiconSet) -> Vec<Finding> {
    let source_text = pair.source.plain_text();
    let target_text = pair.target.plain_text();
    let src = number_mentions(
        &source_text,
        lexicons.source_number,
        lexicons.source_number,
        lexicons,
    );
    let tgt = number_mentions(
        &target_text,
        lexicons.locale_number,
        lexicons.source_number,
        lexicons,
    );
    let mut out = Vec::new();

    for t in &tgt {
        let Some(rule) = t.unit.filter(|r| r.system == UnitSystem::Imperial) else {
            continue;
        };
        if !src
            .iter()
            .any(|s| s.unit.is_some_and(|r| r.source_unit == rule.source_unit))
        {
            continue;
        }
        let suggestion = suggest_unit_conversion(t.values[0], rule);
        out.push(
            Finding::new(
                ErrorCategory::FormatError,
                pair.target_index,
                Severity::Error,
                format!(
                    "imperial unit kept: \"{}\" is {} {} (suggest about {})",
                    target_text
                        .chars()
                        .skip(t.span.start)
                        .take(t.span.len())
                        .collect::<String>(),
                    lexicons.locale_number.format(suggestion.exact, 2),
                    rule.target_unit,
                    suggestion.display(&lexicons.locale_number)
                ),
            )
            .with_span(t.span)
            .with_suggestion(suggestion.display(&lexicons.locale_number))
            .with_source_index(pair.source_index),
        );
    }

    let spelled = spelled_numbers(&target_text, &lexicons.target_lang);
    for s in &src {
        if !accounted_for(s, &tgt, &spelled) {
            out.push(
                Finding::new(
                    ErrorCategory::FormatError,
                    pair.target_index,
                    Severity::Error,
                    format!(
                        "source number {} has no matching number in the target",
                        s.text
                    ),
                )
                .with_source_index(pair.source_index),
            );
        }
    }
    out
}

// ---------------------------------------------------------------------------
// addition / omission

/// Accepted band for target length / (source length × expansion).
pub const LENGTH_RATIO_BOUNDS: (f64, f64) = (0.5, 2.0);
/// Sources shorter than this (in characters) are too short for a length
/// ratio to mean anything.
pub const MIN_RATIO_SOURCE_CHARS: usize = 10;

pub fn check_addition_omission(
    pair: CuePair<'_>,
    lexicons: &LexiconSet,
    expansion: f64,
) -> Vec<Finding> {
    assert!(expansion > 0.0, "expansion factor must be positive");
    let source_text = pair.source.plain_text();
    let target_text = pair.target.plain_text();
    let src_len = source_text.chars().filter(|c| *c != '\n').count();
    let tgt_len = target_text.chars().filter(|c| *c != '\n').count();
    let mut out = Vec::new();
    let finding = |msg: String| {
        Finding::new(
            ErrorCategory::AdditionOmission,
            pair.target_index,
            Severity::Warning,
            msg,
        )
        .with_source_index(pair.source_index)
    };

    if src_len >= MIN_RATIO_SOURCE_CHARS {
        let ratio = tgt_len as f64 / (src_len as f64 * expansion);
        let (lo, hi) = LENGTH_RATIO_BOUNDS;
        if ratio < lo {
            out.push(finding(format!(
                "target is much shorter than the source ({tgt_len} vs {src_len} characters, ratio {ratio:.2}); possible omission"
            )));
        } else if ratio > hi {
            out.push(finding(format!(
                "target is much longer than the source ({tgt_len} vs {src_len} characters, ratio {ratio:.2}); possible addition"
            )));
        }
    }

    let src = number_mentions(
        &source_text,
        lexicons.source_number,
        lexicons.source_number,
        lexicons,
    );
    let tgt = number_mentions(
        &target_text,
        lexicons.locale_number,
        lexicons.source_number,
        lexicons,
    );
    let spelled = spelled_numbers(&target_text, &lexicons.target_lang);
    for s in src.iter().filter(|s| !accounted_for(s, &tgt, &spelled)) {
        out.push(finding(format!(
            "number {} from the source is missing in the target",
            s.text
        )));
    }

    let target_words: HashSet<String> = tokenize(&target_text).iter().map(Token::folded).collect();
    let mut reported = HashSet::new();
    for t in tokenize(&source_text) {
        if t.kind == TokenKind::Word
            && t.is_all_caps(3)
            && !is_stopword(&lexicons.source_lang, &t.folded())
            && !target_words.contains(&t.folded())
            && reported.insert(t.folded())
        {
            out.push(finding(format!(
                "\"{}\" from the source is missing in the target",
                t.text
            )));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// register

/// Default sliding-window size, in cues.
pub const REGISTER_WINDOW: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Register {
    Formal,
    Informal,
}

const DE_INFORMAL: &[&str] = &[
    "du", "dich", "dir", "dein", "deine", "deinen", "deinem", "deiner", "deines", "euch", "euer",
    "eure", "euren", "eurem", "eurer", "eures", "eurer",
];
const DE_FORMAL: &[&str] = &[
    "Sie", "Ihnen", "Ihr", "Ihre", "Ihren", "Ihrem", "Ihrer", "Ihres",
];
/// Sentence-initial words ending in "t" that are not plural imperatives.
const DE_NOT_IMPERATIVE: &[&str] = &[
    "nicht",
    "jetzt",
    "recht",
    "gut",
    "acht",
    "licht",
    "nacht",
    "welt",
    "zeit",
    "arbeit",
    "stadt",
    "macht",
    "mut",
    "wut",
    "blut",
    "hut",
    "zeit",
    "seit",
    "bett",
    "brot",
    "gott",
    "haut",
    "heut",
    "leut",
    "geht's",
    "gibt",
    "hat",
    "wird",
    "ist",
    "sind",
    "damit",
    "bereit",
    "weit",
    "breit",
    "leicht",
    "vielleicht",
    "oft",
    "sanft",
    "samt",
    "genannt",
    "bekannt",
    "fort",
    "dort",
    "wort",
    "sport",
    "punkt",
    "geheimnis",
    "tot",
    "rot",
    "mitternacht",
    "nichts",
    "halt",
    "alt",
    "kalt",
    "elternteil",
    "teil",
    "zuletzt",
    "geschwindigkeit",
    "monat",
    "staat",
    "rat",
    "tat",
    "art",
    "geburt",
    "angebot",
    "ort",
    "stimmt",
    "reicht",
    "klappt",
    "kommt",
    "passt",
    "heißt",
    "braucht",
    "bleibt",
    "scheint",
    "liegt",
    "steht",
    "fehlt",
    "gilt",
    "zählt",
    "läuft",
    "hilft",
    "spielt",
];

fn de_markers(text: &str) -> Vec<Register> {
    let tokens = tokenize(text);
    let mut out = Vec::new();
    for (i, t) in tokens.iter().enumerate() {
        let folded = t.folded();
        let initial = is_sentence_initial(text, t.start);
        if DE_INFORMAL.contains(&folded.as_str()) {
            out.push(Register::Informal);
        } else if DE_FORMAL.contains(&t.text) && !initial {
            out.push(Register::Formal);
        } else if initial && is_plural_imperative(text, &tokens, i) {
            out.push(Register::Informal);
        }
    }
    out
}

/// "Werft Kuchen …": a sentence-initial verb in -t that is not followed by a
/// subject pronoun and does not open a question.
fn is_plural_imperative(text: &str, tokens: &[Token<'_>], i: usize) -> bool {
    let t = &tokens[i];
    let folded = t.folded();
    if !folded.ends_with('t')
        || folded.ends_with("st")
        || folded.ends_with("heit")
        || folded.ends_with("keit")
        || folded.ends_with("schaft")
        || folded.chars().count() < 4
        || DE_NOT_IMPERATIVE.contains(&folded.as_str())
    {
        return false;
    }
    let next = tokens.get(i + 1).map(Token::folded);
    if next.as_deref().is_some_and(|n| {
        matches!(
            n,
            "es" | "er"
                | "sie"
                | "man"
                | "das"
                | "der"
                | "die"
                | "den"
                | "dem"
                | "ihr"
                | "wir"
                | "ich"
                | "du"
                | "dies"
                | "alles"
                | "jemand"
                | "nichts"
                | "ein"
                | "eine"
        )
    }) {
        return false;
    }
    // the sentence must not end in a question mark
    let rest: String = text.chars().skip(t.end).collect();
    let end = rest.find(['.', '!', '?', '…']).map(|p| &rest[p..p + 1]);
    end != Some("?")
}

/// Second-person markers of a cue for `language`; empty for languages
/// without a rule table.
pub fn register_markers(text: &str, language: &str) -> Vec<Register> {
    match base_language(language).as_str() {
        "de" => de_markers(text),
        _ => Vec::new(),
    }
}

/// Formal and informal address within `window` consecutive cues. One
/// finding per cue that switches register against a recent cue.
pub fn check_register(doc: &SubtitleDocument, language: &str, window: usize) -> Vec<Finding> {
    let mut last: HashMap<Register, usize> = HashMap::new();
    let mut out = Vec::new();
    for (i, cue) in doc.cues.iter().enumerate() {
        let markers = register_markers(&cue.plain_text(), language);
        let has = |r: Register| markers.contains(&r);
        let mut conflict: Option<(Register, usize)> = None;
        for (mine, other) in [
            (Register::Formal, Register::Informal),
            (Register::Informal, Register::Formal),
        ] {
            if !has(mine) {
                continue;
            }
            let other_at = if has(other) {
                Some(i)
            } else {
                last.get(&other).copied()
            };
            if let Some(j) = other_at.filter(|&j| i - j < window) {
                if conflict.map_or(true, |(_, k)| j > k) {
                    conflict = Some((mine, j));
                }
            }
        }
        if let Some((mine, j)) = conflict {
            let (here, there) = match mine {
                Register::Formal => ("formal", "informal"),
                Register::Informal => ("informal", "formal"),
            };
            out.push(Finding::new(
                ErrorCategory::RegisterInconsistency,
                i,
                Severity::Info,
                if j == i {
                    format!("cue {i} mixes formal and informal address")
                } else {
                    format!("{here} address in cue {i} after {there} address in cue {j}")
                },
            ));
        }
        for m in markers {
            last.insert(m, i);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// stammering

const STAMMER_SEPARATORS: &[&str] = &["...", "…", "-"];
const STAMMER_NOTES: &[&str] = &[
    "stamm", "stott", "stutter", "bégai", "begai", "tartamud", "gaguej", "balbuz",
];

fn separator_at(chars: &[char], at: usize) -> Option<usize> {
    STAMMER_SEPARATORS.iter().find_map(|sep| {
        let sep: Vec<char> = sep.chars().collect();
        (chars.len() >= at + sep.len() && chars[at..at + sep.len()] == sep[..]).then_some(sep.len())
    })
}

/// A single letter repeated with ellipses or hyphens before a word that
/// starts with it: "w...w...was", "g-g-ging".
pub fn has_stammer(text: &str) -> bool {
    let chars: Vec<char> = text.chars().collect();
    let lower = |c: char| c.to_lowercase().next().unwrap_or(c);
    for i in 0..chars.len() {
        if !chars[i].is_alphabetic() || (i > 0 && chars[i - 1].is_alphanumeric()) {
            continue;
        }
        let letter = lower(chars[i]);
        let mut j = i + 1;
        while let Some(len) = separator_at(&chars, j) {
            j += len;
            if chars.get(j).map(|&c| lower(c)) != Some(letter) {
                break;
            }
            let word_len = chars[j..].iter().take_while(|c| c.is_alphabetic()).count();
            if word_len >= 2 {
                return true;
            }
            j += 1;
        }
    }
    false
}

/// A bracketed note such as "[stotternd]".
pub fn has_stammer_annotation(text: &str) -> bool {
    let lower = text.to_lowercase();
    let mut rest = lower.as_str();
    while let Some(open) = rest.find(['[', '(']) {
        let close = rest[open..]
            .find([']', ')'])
            .map_or(rest.len(), |c| open + c);
        let inner = &rest[open..close];
        if STAMMER_NOTES.iter().any(|n| inner.contains(n)) {
            return true;
        }
        rest = &rest[close..];
        if rest.is_empty() {
            break;
        }
        rest = &rest[1..];
    }
    false
}

pub fn detect_stammering(pair: CuePair<'_>) -> Vec<Finding> {
    let source = pair.source.plain_text();
    let target = pair.target.plain_text();
    if has_stammer(&source) && !has_stammer(&target) && !has_stammer_annotation(&target) {
        vec![Finding::new(
            ErrorCategory::Stammering,
            pair.target_index,
            Severity::Info,
            "the source shows stammering that the target does not render",
        )
        .with_source_index(pair.source_index)]
    } else {
        Vec::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::{SubtitleFormat, Timestamp};
    use crate::resources::{GlossaryEntry, Rendering};

    fn cue(text: &str) -> Cue {
        Cue::new(
            Timestamp::from_millis(0).unwrap(),
            Timestamp::from_millis(2000).unwrap(),
            text,
        )
    }

    fn doc(texts: &[&str]) -> SubtitleDocument {
        let cues = texts
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let s = i as u32 * 2000;
                Cue::new(
                    Timestamp::from_millis(s).unwrap(),
                    Timestamp::from_millis(s + 1500).unwrap(),
                    t,
                )
            })
            .collect();
        SubtitleDocument::new(SubtitleFormat::Vtt, cues)
    }

    fn de_lex(words: &str) -> LexiconSet {
        let mut lex = LexiconSet::empty("en", "de");
        lex.add_words(words.split_whitespace());
        lex
    }

    fn check<'a>(src: &'a Cue, tgt: &'a Cue) -> CuePair<'a> {
        CuePair::new(0, src, 0, tgt)
    }

    #[test]
    fn not_translated_quirks() {
        let lex = de_lex("sie haben alle ihre kleinen eigenarten");
        let (s, t) = (
            cue("They all have their little quirks."),
            cue("Sie haben alle ihre kleinen Quirks."),
        );
        let f = detect_not_translated(check(&s, &t), &lex);
        assert_eq!(f.len(), 1);
        assert!(f[0].message.contains("Quirks"));
        assert_eq!(f[0].span, Some(Span::new(28, 34)));

        let t = cue("Sie haben alle ihre kleinen Eigenarten.");
        assert!(detect_not_translated(check(&s, &t), &lex).is_empty());
    }

    #[test]
    fn not_translated_respects_keep_verbatim() {
        let mut lex = de_lex("caligula mit");
        lex.knp_glossary
            .insert(GlossaryEntry {
                term: "MARY BEARD".into(),
                rendering: Rendering::KeepVerbatim,
                variants: vec![],
            })
            .unwrap();
        let (s, t) = (
            cue("CALIGULA WITH MARY BEARD"),
            cue("CALIGULA MIT MARY BEARD"),
        );
        assert!(detect_not_translated(check(&s, &t), &lex).is_empty());
    }

    #[test]
    fn not_translated_names_outside_german() {
        let mut lex = LexiconSet::empty("en", "fr");
        lex.add_words(["il", "est", "venu", "avec"]);
        let (s, t) = (cue("He came with Bob."), cue("Il est venu avec Bob."));
        assert!(detect_not_translated(check(&s, &t), &lex).is_empty());
        let (s, t) = (cue("He came with a quirk."), cue("Il est venu avec quirk."));
        assert_eq!(detect_not_translated(check(&s, &t), &lex).len(), 1);
        assert!(
            detect_not_translated(check(&cue("Nothing shared"), &cue("Il est venu")), &lex)
                .is_empty()
        );
    }

    #[test]
    fn spelling() {
        let lex = de_lex("auf kleinen stücken kalkstein ostraka");
        let f = check_spelling(0, &cue("auf kleinen Stücken Kalkstein, auf Ostraca."), &lex);
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].suggestion.as_deref(), Some("Ostraka"));
        assert!(
            check_spelling(0, &cue("auf kleinen Stücken Kalkstein, auf Ostraka."), &lex).is_empty()
        );
        assert!(check_spelling(0, &cue("B-52 x 40"), &lex).is_empty());
        assert!(check_spelling(0, &cue("Ostraca"), &LexiconSet::empty("en", "de")).is_empty());
    }

    #[test]
    fn glossary() {
        let mut lex = LexiconSet::empty("en", "de");
        lex.knp_glossary
            .insert(GlossaryEntry {
                term: "MARY BEARD".into(),
                rendering: Rendering::KeepVerbatim,
                variants: vec![],
            })
            .unwrap();
        let s = cue("CALIGULA WITH MARY BEARD");
        let f = check_glossary(check(&s, &cue("CALIGULA MIT MARY BART")), &lex);
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].suggestion.as_deref(), Some("MARY BEARD"));
        assert!(check_glossary(check(&s, &cue("CALIGULA MIT MARY BEARD")), &lex).is_empty());
        assert!(check_glossary(check(&cue("Nothing here"), &cue("Nichts")), &lex).is_empty());
    }

    #[test]
    fn lexical_consistency() {
        let mut lex = LexiconSet::empty("en", "de");
        lex.knp_glossary
            .insert(GlossaryEntry {
                term: "front room".into(),
                rendering: Rendering::Text("Vorderzimmer".into()),
                variants: vec!["Vorderraum".into()],
            })
            .unwrap();
        let src = doc(&[
            "So, we go into the front room here,",
            "Nice.",
            "The front room is cold.",
        ]);
        let tgt = doc(&[
            "Also gehen wir hier in den Vorderraum,",
            "Schön.",
            "Das Vorderzimmer ist kalt.",
        ]);
        let al = crate::alignment::align_by_time(&src, &tgt, 0.5);
        let f = check_lexical_consistency(&al, &src, &tgt, &lex);
        assert_eq!(f.len(), 1);
        assert!(
            f[0].message.contains("\"Vorderraum\" (cues 0)"),
            "{}",
            f[0].message
        );
        assert!(f[0].message.contains("\"Vorderzimmer\" (cues 2)"));

        let tgt = doc(&[
            "Hier gehen wir ins Vorderzimmer,",
            "Schön.",
            "Das Vorderzimmer ist kalt.",
        ]);
        assert!(check_lexical_consistency(&al, &src, &tgt, &lex).is_empty());
        let src1 = doc(&["So, we go into the front room here,"]);
        let tgt1 = doc(&["Also gehen wir hier in den Vorderraum,"]);
        let al1 = crate::alignment::align_by_time(&src1, &tgt1, 0.5);
        assert!(check_lexical_consistency(&al1, &src1, &tgt1, &lex).is_empty());
    }

    #[test]
    fn profanity() {
        let mut lex = LexiconSet::empty("en", "es");
        let mut en = ProfanityLexicon::default();
        en.insert("fucking", 3);
        en.insert("asshole", 3);
        en.insert("damn", 2);
        let mut es = ProfanityLexicon::default();
        es.insert("tonto", 1);
        es.insert("puto", 3);
        es.insert("maldito", 2);
        lex.profanity.insert("en".into(), en);
        lex.profanity.insert("es".into(), es);

        let s = cue("You fucking asshole!");
        assert_eq!(
            check_profanity(check(&s, &cue("¡Tonto!")), &lex, 1).len(),
            1
        );
        assert!(check_profanity(check(&s, &cue("¡Maldito tonto!")), &lex, 1).is_empty());
        assert!(check_profanity(check(&s, &cue("¡Puto gilipollas!")), &lex, 1).is_empty());
        assert!(check_profanity(check(&cue("Hello"), &cue("Hola")), &lex, 1).is_empty());
        assert!(check_profanity(
            check(&s, &cue("¡Tonto!")),
            &LexiconSet::empty("en", "es"),
            1
        )
        .is_empty());
    }

    #[test]
    fn imperial_retained() {
        let lex = LexiconSet::empty("en", "de");
        let s = cue("which from 15,000 feet must've looked to my bomb aimer like a dinky toy,");
        let t = cue("die von 15.000 Fuß muss auf meine Bombenauslöser wie ein dinky Spielzeug,");
        let f = check_numbers_units(check(&s, &t), &lex);
        assert_eq!(f.len(), 1, "{f:?}");
        assert_eq!(f[0].category, ErrorCategory::FormatError);
        assert_eq!(f[0].suggestion.as_deref(), Some("4600 m"));
        assert!(f[0].message.contains("4572 m"), "{}", f[0].message);
    }

    #[test]
    fn human_roundings_pass() {
        let lex = LexiconSet::empty("en", "de");
        for (s, t) in [
            (
                "which from 15,000 feet must've looked",
                "das aus 4500 m Höhe für den Schützen",
            ),
            (
                "even though it was 900 feet long.",
                "obwohl es fast 300 m lang war.",
            ),
            (
                "and a Mosquito tank of 50 gallons,",
                "und ein Mosquitotank für fast 200 Liter,",
            ),
        ] {
            assert!(
                check_numbers_units(check(&cue(s), &cue(t)), &lex).is_empty(),
                "{t}"
            );
        }
    }

    #[test]
    fn three_suppression_routes() {
        let lex = LexiconSet::empty("en", "de");
        let unmatched = |s: &str, t: &str| {
            check_numbers_units(check(&cue(s), &cue(t)), &lex)
                .into_iter()
                .filter(|f| f.message.contains("no matching"))
                .count()
        };
        // verbatim
        assert_eq!(
            unmatched("It costs 15,000 dollars.", "Es kostet 15,000 Dollar."),
            0
        );
        // locale-reformatted
        assert_eq!(
            unmatched("It costs 15,000 dollars.", "Es kostet 15.000 Dollar."),
            0
        );
        // converted, within tolerance
        assert_eq!(unmatched("It weighs 2 pounds.", "Es wiegt 0,9 kg."), 0);
        assert_eq!(unmatched("It weighs 2 pounds.", "Es wiegt 1 kg."), 1);
        assert_eq!(unmatched("It costs 15,000 dollars.", "Es kostet viel."), 1);
        assert_eq!(unmatched("I have 2 cats.", "Ich habe zwei Katzen."), 0);
    }

    #[test]
    fn addition_omission() {
        let lex = LexiconSet::empty("en", "de");
        let s = cue(&"a".repeat(40));
        let f = check_addition_omission(check(&s, &cue(&"b".repeat(12))), &lex, 1.0);
        assert_eq!(f.len(), 1);
        assert!(f[0].message.contains("0.30"));
        let same = cue("Die Trilaterale Kommission wird allgemein");
        assert!(check_addition_omission(check(&same, &same), &lex, 1.0).is_empty());

        let s = cue("the amount of CO2 in the atmosphere has increased nearly 40%,");
        let t = cue("die CO2-Menge in der Atmosphäre hat stark zugenommen,");
        let f = check_addition_omission(check(&s, &t), &lex, 1.1);
        assert_eq!(f.len(), 1);
        assert!(f[0].message.contains("40"));

        let s = cue("CALIGULA WITH MARY BEARD");
        let f = check_addition_omission(check(&s, &cue("CALIGULA MIT MARY BART")), &lex, 1.0);
        assert_eq!(f.len(), 1);
        assert!(f[0].message.contains("BEARD"));
    }

    #[test]
    fn register() {
        let d = doc(&[
            "Werft Kuchen auf den Clown.",
            "Alle warten darauf, Ihnen zu gratulieren.",
        ]);
        let f = check_register(&d, "de", REGISTER_WINDOW);
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].cue_index, 1);
        assert!(f[0].message.contains("cue 0"));

        let d = doc(&[
            "Werft Kuchen auf den Clown.",
            "Alle warten darauf, dir zu gratulieren.",
            "Ich möchte sie an dich weitergeben,",
        ]);
        assert!(check_register(&d, "de", REGISTER_WINDOW).is_empty());

        let mut texts = vec!["Kannst du kommen?"];
        texts.extend(std::iter::repeat("Ja.").take(10));
        texts.push("Können Sie kommen?");
        assert!(check_register(&doc(&texts), "de", REGISTER_WINDOW).is_empty());
        texts.drain(1..3);
        assert_eq!(check_register(&doc(&texts), "de", REGISTER_WINDOW).len(), 1);

        let d = doc(&[
            "Werfen Sie Kuchen auf den Clown.",
            "Alle warten darauf, Ihnen zu gratulieren.",
            "Geht es Ihnen gut?",
            "Sie kommt gleich.",
        ]);
        assert!(check_register(&d, "de", REGISTER_WINDOW).is_empty());
        assert!(check_register(&d, "fr", REGISTER_WINDOW).is_empty());
    }

    #[test]
    fn stammer_patterns() {
        assert!(has_stammer("I w...w...was going there"));
        assert!(has_stammer("Ich g…g…ging dort hin"));
        assert!(has_stammer("W-w-what?"));
        assert!(!has_stammer("Sebright-Henne, e-mail, so-so, x-ray"));
        assert!(!has_stammer("Also... und dann"));
        assert!(has_stammer_annotation("[stotternd] Ich ging dort hin"));
    }

    #[test]
    fn stammering() {
        let s = cue("I w...w...was going there");
        assert_eq!(
            detect_stammering(check(&s, &cue("Ich wollte da hingehen."))).len(),
            1
        );
        assert!(detect_stammering(check(&s, &cue("Ich g...g...ging dort hin"))).is_empty());
        assert!(detect_stammering(check(&s, &cue("(stotternd) Ich ging dort hin"))).is_empty());
        assert!(detect_stammering(check(&cue("I was going there"), &cue("Ich ging."))).is_empty());
    }
}
