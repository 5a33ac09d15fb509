//! Subtitle-creation guideline checks on a single document.

use std::collections::BTreeSet;

use crate::finding::{ErrorCategory, Finding, Severity, Span};
use crate::format::Cue;
use crate::markup::{self, TagKind};
use crate::resources::{GuidelineProfile, LexiconSet, Spacing};
use crate::text::{tokenize, TokenKind};

/// Tokens at least this long are checked against the wordlist as possible
/// machine-made compounds.
pub const COMPOUND_MIN_CHARS: usize = 18;

/// Char offset of each line of `plain_lines` in the joined plain text.
fn line_offsets(lines: &[String]) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(lines.len());
    let mut at = 0;
    for line in lines {
        offsets.push(at);
        at += line.chars().count() + 1;
    }
    offsets
}

pub fn check_line_length(cue_index: usize, cue: &Cue, profile: &GuidelineProfile) -> Vec<Finding> {
    let lines = cue.plain_lines();
    let max = profile.max_chars_per_line;
    lines
        .iter()
        .zip(line_offsets(&lines))
        .enumerate()
        .filter_map(|(n, (line, offset))| {
            let len = line.chars().count();
            (len > max).then(|| {
                Finding::new(
                    ErrorCategory::LineTooLong,
                    cue_index,
                    Severity::Error,
                    format!("line {} has {len} characters (limit {max})", n + 1),
                )
                .with_span(Span::new(offset + max, offset + len))
            })
        })
        .collect()
}

pub fn check_line_count(cue_index: usize, cue: &Cue, profile: &GuidelineProfile) -> Vec<Finding> {
    let count = cue.lines.len();
    let max = profile.max_lines_per_block;
    if count > max {
        vec![Finding::new(
            ErrorCategory::TooManyLines,
            cue_index,
            Severity::Error,
            format!("cue has {count} lines (limit {max})"),
        )]
    } else {
        Vec::new()
    }
}

/// Characters per second over the cue duration; line breaks are not
/// counted.
pub fn check_reading_speed(
    cue_index: usize,
    cue: &Cue,
    profile: &GuidelineProfile,
) -> Vec<Finding> {
    let chars = cue
        .plain_lines()
        .iter()
        .map(|l| l.chars().count())
        .sum::<usize>();
    if chars == 0 {
        return Vec::new();
    }
    let duration = cue.duration_millis();
    if duration <= 0 {
        return vec![Finding::new(
            ErrorCategory::ReadingSpeedExceeded,
            cue_index,
            Severity::Warning,
            "cue has zero or negative duration; reading speed is undefined",
        )];
    }
    let cps = chars as f64 * 1000.0 / duration as f64;
    if cps > profile.max_reading_speed {
        vec![Finding::new(
            ErrorCategory::ReadingSpeedExceeded,
            cue_index,
            Severity::Warning,
            format!(
                "reading speed {cps:.1} CPS exceeds {:.1} CPS ({chars} characters in {:.3} s)",
                profile.max_reading_speed,
                duration as f64 / 1000.0
            ),
        )]
    } else {
        Vec::new()
    }
}

// ---------------------------------------------------------------------------
// spacing

/// A plain-text replacement inside one line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineEdit {
    pub span: Span,
    pub replacement: String,
    pub message: &'static str,
}

/// Positions of speaker-change hyphens: the first non-blank character of the
/// line, or a hyphen after sentence-final punctuation and whitespace.
pub fn speaker_dashes(line: &str) -> Vec<usize> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    for (p, &c) in chars.iter().enumerate() {
        if c != '-' {
            continue;
        }
        let before: Vec<char> = chars[..p].to_vec();
        let trimmed: Vec<&char> = before
            .iter()
            .rev()
            .skip_while(|c| c.is_whitespace())
            .collect();
        let at_line_start = trimmed.is_empty();
        let after_sentence = !at_line_start
            && p > 0
            && chars[p - 1].is_whitespace()
            && matches!(trimmed[0], '.' | '!' | '?' | '…' | '"' | '”' | '»');
        // a lone hyphen between words ("A - B") is not a speaker change
        let next_is_text = chars[p + 1..]
            .iter()
            .find(|c| !c.is_whitespace())
            .is_some_and(|c| {
                c.is_alphanumeric()
                    || matches!(c, '"' | '„' | '“' | '«' | '¿' | '¡' | '.' | '…' | '<')
            });
        if (at_line_start || after_sentence) && next_is_text {
            out.push(p);
        }
    }
    out
}

fn count_spaces(chars: &[char], from: usize) -> usize {
    chars[from..].iter().take_while(|&&c| c == ' ').count()
}

/// Spacing problems in one plain line, in order, non-overlapping.
pub fn spacing_edits(line: &str, profile: &GuidelineProfile) -> Vec<LineEdit> {
    let chars: Vec<char> = line.chars().collect();
    let mut edits: Vec<LineEdit> = Vec::new();

    for p in speaker_dashes(line) {
        let spaces = count_spaces(&chars, p + 1);
        match profile.hyphen_spacing {
            Spacing::Attached if spaces > 0 => edits.push(LineEdit {
                span: Span::new(p, p + 1 + spaces),
                replacement: "-".into(),
                message: "space after speaker hyphen",
            }),
            Spacing::Spaced if spaces != 1 => edits.push(LineEdit {
                span: Span::new(p, p + 1 + spaces),
                replacement: "- ".into(),
                message: "speaker hyphen should be followed by one space",
            }),
            _ => {}
        }
    }

    for form in &profile.ellipsis_forms {
        let form_chars: Vec<char> = form.chars().collect();
        let flen = form_chars.len();
        if flen == 0 {
            continue;
        }
        let mut p = 0;
        while p + flen <= chars.len() {
            if chars[p..p + flen] != form_chars[..] {
                p += 1;
                continue;
            }
            // only an ellipsis that opens a phrase: not glued to a preceding word
            let leading = p == 0 || chars[p - 1].is_whitespace() || chars[p - 1] == '-';
            // skip longer dot runs such as "...."
            let longer = chars.get(p + flen) == Some(&form_chars[flen - 1]);
            if leading && !longer {
                let spaces = count_spaces(&chars, p + flen);
                let next = chars.get(p + flen + spaces);
                let lower = next.is_some_and(|c| c.is_lowercase());
                match profile.ellipsis_spacing {
                    Spacing::Attached if spaces > 0 && lower => edits.push(LineEdit {
                        span: Span::new(p, p + flen + spaces),
                        replacement: form.clone(),
                        message: "space after leading ellipsis",
                    }),
                    Spacing::Spaced if spaces == 0 && lower => edits.push(LineEdit {
                        span: Span::new(p, p + flen),
                        replacement: format!("{form} "),
                        message: "leading ellipsis should be followed by a space",
                    }),
                    _ => {}
                }
            }
            p += flen;
        }
    }

    let mut p = 0;
    while p < chars.len() {
        if chars[p] == ' ' {
            let run = count_spaces(&chars, p);
            if run >= 2 {
                let span = Span::new(p, p + run);
                if !edits.iter().any(|e| e.span.overlaps(&span)) {
                    edits.push(LineEdit {
                        span,
                        replacement: " ".into(),
                        message: "double space",
                    });
                }
            }
            p += run;
        } else {
            p += 1;
        }
    }

    edits.sort_by_key(|e| e.span);
    edits.dedup_by(|b, a| a.span.overlaps(&b.span));
    edits
}

fn line_edits_to_findings(
    cue_index: usize,
    cue: &Cue,
    category: ErrorCategory,
    severity: Severity,
    edits_for: impl Fn(&str) -> Vec<LineEdit>,
) -> Vec<Finding> {
    let lines = cue.plain_lines();
    let offsets = line_offsets(&lines);
    lines
        .iter()
        .zip(offsets)
        .flat_map(|(line, offset)| {
            edits_for(line).into_iter().map(move |e| {
                Finding::new(category, cue_index, severity, e.message)
                    .with_span(e.span.shifted(offset))
                    .with_suggestion(e.replacement)
            })
        })
        .collect()
}

/// Speaker-hyphen, leading-ellipsis and double-space conventions. Each
/// finding's suggestion replaces its span.
pub fn check_spacing(cue_index: usize, cue: &Cue, profile: &GuidelineProfile) -> Vec<Finding> {
    line_edits_to_findings(
        cue_index,
        cue,
        ErrorCategory::IncorrectSpacing,
        Severity::Error,
        |line| spacing_edits(line, profile),
    )
}

// ---------------------------------------------------------------------------
// repetition

/// Longest group size considered for repeated token groups.
pub const MAX_GROUP_TOKENS: usize = 4;

/// Maximal runs of a token (or a group of up to four tokens) repeated back
/// to back, separated only by spaces and commas. The replacement keeps the
/// first occurrence and the punctuation that follows the run.
pub fn repetition_edits(line: &str) -> Vec<LineEdit> {
    let chars: Vec<char> = line.chars().collect();
    let tokens = tokenize(line);
    let folded: Vec<String> = tokens.iter().map(|t| t.folded()).collect();
    let gap_ok = |from: usize, to: usize| chars[from..to].iter().all(|&c| c == ' ' || c == ',');

    let mut edits = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let mut best: Option<(usize, usize)> = None; // (group size, occurrences)
        for k in 1..=MAX_GROUP_TOKENS {
            if i + 2 * k > tokens.len() {
                break;
            }
            let mut reps = 1;
            while i + (reps + 1) * k <= tokens.len() {
                let prev_end = tokens[i + reps * k - 1].end;
                let next_start = tokens[i + reps * k].start;
                let same = (0..k).all(|d| folded[i + d] == folded[i + reps * k + d]);
                if same && next_start > prev_end && gap_ok(prev_end, next_start) {
                    reps += 1;
                } else {
                    break;
                }
            }
            if reps >= 2 && best.map_or(true, |(bk, br)| k * reps > bk * br) {
                best = Some((k, reps));
            }
        }
        let Some((k, reps)) = best else {
            i += 1;
            continue;
        };
        let first_end = tokens[i + k - 1].end;
        let last_end = tokens[i + k * reps - 1].end;
        let trailing = chars[last_end..]
            .iter()
            .take_while(|c| !c.is_whitespace() && !c.is_alphanumeric())
            .count();
        let start = tokens[i].start;
        let mut replacement: String = chars[start..first_end].iter().collect();
        replacement.extend(&chars[last_end..last_end + trailing]);
        edits.push(LineEdit {
            span: Span::new(start, last_end + trailing),
            replacement,
            message: "repeated words",
        });
        i += k * reps;
    }
    edits
}

pub fn detect_repetitions(cue_index: usize, cue: &Cue) -> Vec<Finding> {
    line_edits_to_findings(
        cue_index,
        cue,
        ErrorCategory::RepeatedPhrase,
        Severity::Warning,
        repetition_edits,
    )
    .into_iter()
    .map(|mut f| {
        f.message = format!(
            "repeated words; keep \"{}\"",
            f.suggestion.as_deref().unwrap_or("")
        );
        f
    })
    .collect()
}

// ---------------------------------------------------------------------------
// markup

fn semantic_kinds(cue: &Cue) -> BTreeSet<TagKind> {
    cue.lines
        .iter()
        .filter_map(|l| markup::strip_markup(l).ok())
        .flat_map(|(_, spans)| spans.into_iter().map(|s| s.kind))
        .filter(|k| *k != TagKind::OtherTag)
        .collect()
}

fn speaker_dash_count(cue: &Cue) -> usize {
    cue.plain_lines()
        .iter()
        .map(|l| speaker_dashes(l).len())
        .sum()
}

/// Compares tags, line breaks and speaker hyphens of a 1-to-1 pair.
pub fn check_markup_integrity(cue_index: usize, source: &Cue, target: &Cue) -> Vec<Finding> {
    let mut out = Vec::new();
    let target_kinds = semantic_kinds(target);
    for kind in semantic_kinds(source) {
        if !target_kinds.contains(&kind) {
            out.push(Finding::new(
                ErrorCategory::NonTextCharacter,
                cue_index,
                Severity::Error,
                format!("missing {} markup present in the source", kind.label()),
            ));
        }
    }
    let (sl, tl) = (source.lines.len(), target.lines.len());
    if sl != tl {
        out.push(Finding::new(
            ErrorCategory::NonTextCharacter,
            cue_index,
            Severity::Error,
            format!("line-break count {sl}→{tl}: source has {sl} lines, target has {tl}"),
        ));
    }
    let (sd, td) = (speaker_dash_count(source), speaker_dash_count(target));
    if sd != td {
        out.push(Finding::new(
            ErrorCategory::NonTextCharacter,
            cue_index,
            Severity::Error,
            format!("speaker hyphen count {sd}→{td}"),
        ));
    }
    out
}

/// Lines whose tags do not balance.
pub fn check_markup_balance(cue_index: usize, cue: &Cue) -> Vec<Finding> {
    cue.lines
        .iter()
        .enumerate()
        .filter_map(|(n, line)| {
            markup::strip_markup(line).err().map(|e| {
                Finding::new(
                    ErrorCategory::NonTextCharacter,
                    cue_index,
                    Severity::Error,
                    format!("line {}: {e}", n + 1),
                )
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// compounds

/// Long tokens missing from the wordlist. No-op without a wordlist.
pub fn check_compound_length(cue_index: usize, cue: &Cue, lexicons: &LexiconSet) -> Vec<Finding> {
    if !lexicons.has_wordlist() {
        return Vec::new();
    }
    let plain = cue.plain_text();
    tokenize(&plain)
        .into_iter()
        .filter(|t| t.kind == TokenKind::Word && t.char_len() >= COMPOUND_MIN_CHARS)
        .filter(|t| {
            !lexicons.in_wordlist(t.text)
                && t.text.split('-').any(|part| {
                    part.chars().count() >= COMPOUND_MIN_CHARS && !lexicons.in_wordlist(part)
                })
        })
        .map(|t| {
            Finding::new(
                ErrorCategory::CompoundWordOOV,
                cue_index,
                Severity::Warning,
                format!(
                    "long compound \"{}\" ({} characters) is not in the wordlist",
                    t.text,
                    t.char_len()
                ),
            )
            .with_span(Span::new(t.start, t.end))
        })
        .collect()
}
