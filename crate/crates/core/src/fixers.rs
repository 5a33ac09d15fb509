//! Mechanical corrections. Every fixer returns the corrected document with
//! the list of cue edits it made; timestamps and cue count never change.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finding::ErrorCategory;
use crate::format::{Cue, SubtitleDocument};
use crate::guideline::{repetition_edits, spacing_edits, LineEdit};
use crate::markup::{self, MarkupSpan, TagKind};
use crate::resources::{GuidelineProfile, UnitRule};
use crate::text::LocaleNumber;
use crate::translation::CuePair;

/// One rewritten cue payload.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edit {
    pub cue_index: usize,
    pub category: ErrorCategory,
    pub before: String,
    pub after: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixError {
    /// Source markup covers only part of the cue; where it belongs in the
    /// translation cannot be decided positionally.
    #[error(
        "source cue {source_index} has {tag} markup on part of the text; not fixable automatically"
    )]
    PartialSpanUnfixable { source_index: usize, tag: String },
    #[error("edit for cue {cue_index} does not apply: expected {expected:?}, found {found:?}")]
    ReplayMismatch {
        cue_index: usize,
        expected: String,
        found: String,
    },
    #[error("edit refers to cue {cue_index}, but the document has {len} cues")]
    ReplayOutOfRange { cue_index: usize, len: usize },
}

/// Upper bound on detect-and-fix passes per line.
const MAX_PASSES: usize = 8;

/// Maps a plain-text boundary through a replacement of `[a, b)` by `r`
/// characters. Boundaries inside the replaced range are clamped into the
/// replacement.
fn map_boundary(p: usize, a: usize, b: usize, r: usize) -> usize {
    if p <= a {
        p
    } else if p >= b {
        p + r - (b - a)
    } else {
        a + (p - a).min(r)
    }
}

/// Applies plain-text edits to a line with markup, keeping its tags. Lines
/// whose tags do not balance are left alone.
fn apply_line_edits(line: &str, edits: &[LineEdit]) -> Option<String> {
    if edits.is_empty() {
        return None;
    }
    let (plain, mut spans): (String, Vec<MarkupSpan>) = markup::strip_markup(line).ok()?;
    let chars: Vec<char> = plain.chars().collect();
    let mut out = String::new();
    let mut at = 0;
    for e in edits {
        out.extend(&chars[at..e.span.start]);
        out.push_str(&e.replacement);
        at = e.span.end;
    }
    out.extend(&chars[at..]);
    // later edits first, so earlier offsets stay valid
    for e in edits.iter().rev() {
        let r = e.replacement.chars().count();
        for s in &mut spans {
            s.start = map_boundary(s.start, e.span.start, e.span.end, r);
            s.end = map_boundary(s.end, e.span.start, e.span.end, r);
        }
    }
    markup::reinsert_markup(&out, &spans).ok()
}

/// Repeats `edits_for` on each line until it reports nothing.
fn fix_lines(
    doc: &SubtitleDocument,
    category: ErrorCategory,
    edits_for: impl Fn(&str) -> Vec<LineEdit>,
) -> (SubtitleDocument, Vec<Edit>) {
    let mut fixed = doc.clone();
    let mut edits = Vec::new();
    for (i, cue) in fixed.cues.iter_mut().enumerate() {
        let before = cue.payload();
        for line in &mut cue.lines {
            for _ in 0..MAX_PASSES {
                let plain = markup::plain_text(line);
                match apply_line_edits(line, &edits_for(&plain)) {
                    Some(next) if next != *line => *line = next,
                    _ => break,
                }
            }
        }
        let after = cue.payload();
        if after != before {
            edits.push(Edit {
                cue_index: i,
                category,
                before,
                after,
            });
        }
    }
    (fixed, edits)
}

/// Applies every spacing suggestion until the spacing check is clean.
pub fn fix_spacing(
    doc: &SubtitleDocument,
    profile: &GuidelineProfile,
) -> (SubtitleDocument, Vec<Edit>) {
    fix_lines(doc, ErrorCategory::IncorrectSpacing, |l| {
        spacing_edits(l, profile)
    })
}

/// Replaces each repetition run by its first occurrence and the run's
/// closing punctuation.
pub fn collapse_repetitions(doc: &SubtitleDocument) -> (SubtitleDocument, Vec<Edit>) {
    fix_lines(doc, ErrorCategory::RepeatedPhrase, repetition_edits)
}

// ---------------------------------------------------------------------------
// markup

/// Semantic tags wrapping every non-empty line of the cue, outermost first,
/// and whether any semantic tag covers only part of a line.
fn full_wrapping(cue: &Cue) -> (Vec<MarkupSpan>, Option<TagKind>) {
    let mut per_line: Vec<Vec<MarkupSpan>> = Vec::new();
    let mut partial = None;
    for line in &cue.lines {
        let Ok((plain, spans)) = markup::strip_markup(line) else {
            continue;
        };
        let len = plain.chars().count();
        if len == 0 {
            continue;
        }
        let mut full = Vec::new();
        for s in spans.into_iter().filter(|s| s.kind != TagKind::OtherTag) {
            if s.start == 0 && s.end == len {
                full.push(s);
            } else if partial.is_none() {
                partial = Some(s.kind);
            }
        }
        per_line.push(full);
    }
    let Some(first) = per_line.first() else {
        return (Vec::new(), partial);
    };
    let common: Vec<MarkupSpan> = first
        .iter()
        .filter(|s| per_line.iter().all(|l| l.iter().any(|o| o.kind == s.kind)))
        .cloned()
        .collect();
    // a tag that wraps only some lines is partial with respect to the cue
    if partial.is_none() {
        partial = first
            .iter()
            .chain(per_line.iter().flatten())
            .find(|s| !common.iter().any(|c| c.kind == s.kind))
            .map(|s| s.kind);
    }
    (common, partial)
}

/// Wraps the whole target payload in the tags that wrap the whole source
/// payload. Tags the target already carries on every line are not added
/// again.
pub fn reinsert_source_markup(pair: CuePair<'_>) -> Result<(Cue, Vec<Edit>), FixError> {
    let (wrap, partial) = full_wrapping(pair.source);
    if let Some(kind) = partial {
        return Err(FixError::PartialSpanUnfixable {
            source_index: pair.source_index,
            tag: kind.label().to_owned(),
        });
    }
    let (present, _) = full_wrapping(pair.target);
    let missing: Vec<&MarkupSpan> = wrap
        .iter()
        .filter(|s| !present.iter().any(|p| p.kind == s.kind))
        .collect();
    let mut cue = pair.target.clone();
    if missing.is_empty() {
        return Ok((cue, Vec::new()));
    }
    for line in cue.lines.iter_mut().filter(|l| !l.trim().is_empty()) {
        let mut wrapped = line.clone();
        for s in missing.iter().rev() {
            let close = s
                .close_tag
                .clone()
                .unwrap_or_else(|| format!("</{}>", s.tag_name));
            wrapped = format!("{}{wrapped}{close}", s.open_tag);
        }
        *line = wrapped;
    }
    let edit = Edit {
        cue_index: pair.target_index,
        category: ErrorCategory::NonTextCharacter,
        before: pair.target.payload(),
        after: cue.payload(),
    };
    Ok((cue, vec![edit]))
}

/// Markup reinsertion over every 1-to-1 pair of an alignment. Returns the
/// fixed target, the edits and the source cues that were only flagged.
pub fn reinsert_markup_document(
    source: &SubtitleDocument,
    target: &SubtitleDocument,
    alignment: &[crate::alignment::AlignedCuePair],
) -> (SubtitleDocument, Vec<Edit>, Vec<FixError>) {
    let mut fixed = target.clone();
    let mut edits = Vec::new();
    let mut flagged = Vec::new();
    for pair in alignment
        .iter()
        .filter_map(|p| CuePair::from_aligned(p, source, target))
    {
        match reinsert_source_markup(pair) {
            Ok((cue, e)) => {
                fixed.cues[pair.target_index] = cue;
                edits.extend(e);
            }
            Err(err) => flagged.push(err),
        }
    }
    (fixed, edits, flagged)
}

// ---------------------------------------------------------------------------
// units

/// A converted measurement: the exact value and a rounded one for display.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitSuggestion {
    pub exact: f64,
    pub rounded: f64,
    pub unit: String,
}

impl UnitSuggestion {
    /// Rounded value and unit with the locale's decimal separator.
    pub fn display(&self, locale: &LocaleNumber) -> String {
        format!("{} {}", locale.format(self.rounded, 1), self.unit)
    }
}

impl fmt::Display for UnitSuggestion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display(&LocaleNumber::default()))
    }
}

/// Rounds for display: one decimal below 10, nearest 10 below 1000,
/// nearest 100 from there on.
pub fn display_round(value: f64) -> f64 {
    let magnitude = value.abs();
    if magnitude < 10.0 {
        (value * 10.0).round() / 10.0
    } else if magnitude < 1000.0 {
        (value / 10.0).round() * 10.0
    } else {
        (value / 100.0).round() * 100.0
    }
}

/// Advisory only; never applied to the document.
pub fn suggest_unit_conversion(value: f64, rule: &UnitRule) -> UnitSuggestion {
    debug_assert!(rule.factor > 0.0);
    let exact = rule.convert(value);
    UnitSuggestion {
        exact,
        rounded: display_round(exact),
        unit: rule.target_unit.clone(),
    }
}

// ---------------------------------------------------------------------------
// replay

/// Re-applies `edits` to `doc`; each edit's `before` must match the cue.
pub fn replay_edits(doc: &SubtitleDocument, edits: &[Edit]) -> Result<SubtitleDocument, FixError> {
    let mut out = doc.clone();
    let len = out.cues.len();
    for e in edits {
        let cue = out
            .cues
            .get_mut(e.cue_index)
            .ok_or(FixError::ReplayOutOfRange {
                cue_index: e.cue_index,
                len,
            })?;
        let found = cue.payload();
        if found != e.before {
            return Err(FixError::ReplayMismatch {
                cue_index: e.cue_index,
                expected: e.before.clone(),
                found,
            });
        }
        cue.lines = e.after.split('\n').map(str::to_owned).collect();
    }
    Ok(out)
}
