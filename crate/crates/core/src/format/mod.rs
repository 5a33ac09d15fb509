//! WebVTT and SubRip parsing and serialization.
//!
//! The document model keeps every payload line verbatim, inline tags
//! included; [`crate::markup`] separates tags from text when a detector
//! needs plain text. Line endings are normalized to `\n` and the gaps between
//! blocks are normalized to a single blank line on output.

mod timestamp;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::markup;

pub use timestamp::{FractionSeparator, Timestamp, TimestampError, MAX_MILLIS};

const BOM: char = '\u{feff}';
const ARROW: &str = "-->";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubtitleFormat {
    Vtt,
    Srt,
}

impl SubtitleFormat {
    pub fn separator(self) -> FractionSeparator {
        match self {
            SubtitleFormat::Vtt => FractionSeparator::Dot,
            SubtitleFormat::Srt => FractionSeparator::Comma,
        }
    }

    /// Guesses from a file extension (`vtt` / `srt`, case-insensitive).
    pub fn from_extension(ext: &str) -> Option<SubtitleFormat> {
        match ext.to_ascii_lowercase().as_str() {
            "vtt" => Some(SubtitleFormat::Vtt),
            "srt" => Some(SubtitleFormat::Srt),
            _ => None,
        }
    }
}

impl fmt::Display for SubtitleFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubtitleFormat::Vtt => "vtt",
            SubtitleFormat::Srt => "srt",
        })
    }
}

/// One timed subtitle block.
///
/// `lines` holds the payload exactly as written, one entry per rendered line;
/// no entry is empty or contains a line break. `identifier` is the cue
/// identifier line (the SRT counter, or a free-form WebVTT id). `settings` is
/// the opaque WebVTT cue-settings text after the end timestamp.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cue {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identifier: Option<String>,
    pub start: Timestamp,
    pub end: Timestamp,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub settings: Option<String>,
    pub lines: Vec<String>,
}

impl Cue {
    /// Builds a cue from a payload, splitting it on `\n`.
    pub fn new(start: Timestamp, end: Timestamp, payload: &str) -> Cue {
        Cue {
            identifier: None,
            start,
            end,
            settings: None,
            lines: payload.split('\n').map(str::to_owned).collect(),
        }
    }

    /// The payload as it appeared in the file (lines joined with `\n`).
    pub fn payload(&self) -> String {
        self.lines.join("\n")
    }

    /// Numeric cue index when the identifier is a positive integer.
    pub fn index(&self) -> Option<u32> {
        self.identifier
            .as_deref()
            .and_then(|id| id.parse::<u32>().ok())
            .filter(|&n| n > 0)
    }

    pub fn duration_millis(&self) -> i64 {
        i64::from(self.end.millis()) - i64::from(self.start.millis())
    }

    /// Payload lines with markup removed. Lines with unbalanced tags fall back
    /// to a best-effort strip that drops anything tag-shaped.
    pub fn plain_lines(&self) -> Vec<String> {
        self.lines.iter().map(|l| markup::plain_text(l)).collect()
    }

    /// Plain lines joined with `\n`; finding spans index into this string
    /// by `char` position.
    pub fn plain_text(&self) -> String {
        self.plain_lines().join("\n")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubtitleDocument {
    pub format: SubtitleFormat,
    /// Whether the source started with a byte-order mark.
    #[serde(default)]
    pub bom: bool,
    /// WebVTT preamble starting with the `WEBVTT` line, including any header
    /// text and leading NOTE/STYLE/REGION blocks. `None` means a bare
    /// `WEBVTT` line.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub header: Option<String>,
    pub cues: Vec<Cue>,
}

impl SubtitleDocument {
    pub fn new(format: SubtitleFormat, cues: Vec<Cue>) -> SubtitleDocument {
        SubtitleDocument {
            format,
            bom: false,
            header: None,
            cues,
        }
    }

    /// Equality on timestamps, payload text and order.
    pub fn canonical_eq(&self, other: &SubtitleDocument) -> bool {
        self.cues.len() == other.cues.len()
            && self
                .cues
                .iter()
                .zip(&other.cues)
                .all(|(a, b)| a.start == b.start && a.end == b.end && a.lines == b.lines)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    pub format: Option<SubtitleFormat>,
    /// Promote structural warnings to errors.
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WarningKind {
    /// Millisecond separator does not match the declared format.
    SeparatorMismatch,
    /// Cue starts before the previous cue ends.
    Overlap { previous_end: Timestamp },
    /// Cue starts before the previous cue starts.
    NonMonotonicStart,
    /// End is not after start.
    NonPositiveDuration,
}

/// A non-fatal structural problem. `line` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParseWarning {
    pub line: usize,
    pub cue: usize,
    #[serde(flatten)]
    pub kind: WarningKind,
}

impl fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: cue {}: ", self.line, self.cue)?;
        match &self.kind {
            WarningKind::SeparatorMismatch => {
                f.write_str("millisecond separator does not match the file format")
            }
            WarningKind::Overlap { previous_end } => {
                write!(f, "cue overlaps the previous cue ending at {previous_end}")
            }
            WarningKind::NonMonotonicStart => f.write_str("cue starts before the previous cue"),
            WarningKind::NonPositiveDuration => f.write_str("cue end is not after its start"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("file contains no subtitle data")]
    EmptyFile,
    #[error("line {line}, column {column}: malformed timestamp: {reason}")]
    MalformedTimestamp {
        line: usize,
        column: usize,
        reason: &'static str,
    },
    #[error("line {line}: block has no `-->` timing line")]
    MissingArrowSeparator { line: usize },
    #[error("line {line}: malformed block: {reason}")]
    MalformedBlock { line: usize, reason: &'static str },
    #[error("{0} (strict mode)")]
    Structural(ParseWarning),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed {
    pub document: SubtitleDocument,
    pub warnings: Vec<ParseWarning>,
}

/// Parses with default (lenient) options and discards warnings.
pub fn parse_document(
    text: &str,
    format_hint: Option<SubtitleFormat>,
) -> Result<SubtitleDocument, ParseError> {
    parse_with(
        text,
        ParseOptions {
            format: format_hint,
            strict: false,
        },
    )
    .map(|p| p.document)
}

fn is_vtt_magic(line: &str) -> bool {
    line.strip_prefix("WEBVTT")
        .is_some_and(|rest| rest.is_empty() || rest.starts_with([' ', '\t']))
}

fn starts_with_keyword(line: &str, keyword: &str) -> bool {
    line.strip_prefix(keyword)
        .is_some_and(|rest| rest.is_empty() || rest.starts_with([' ', '\t']))
}

struct Block<'a> {
    /// 1-based line number of the first line.
    line: usize,
    lines: Vec<&'a str>,
}

fn split_blocks<'a>(lines: &[&'a str]) -> Vec<Block<'a>> {
    let mut blocks = Vec::new();
    let mut current: Option<Block<'_>> = None;
    for (n, line) in lines.iter().enumerate() {
        if line.trim().is_empty() {
            if let Some(block) = current.take() {
                blocks.push(block);
            }
        } else {
            current
                .get_or_insert_with(|| Block {
                    line: n + 1,
                    lines: Vec::new(),
                })
                .lines
                .push(line);
        }
    }
    blocks.extend(current);
    blocks
}

pub fn parse_with(text: &str, options: ParseOptions) -> Result<Parsed, ParseError> {
    let (bom, body) = match text.strip_prefix(BOM) {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let normalized = body.replace("\r\n", "\n").replace('\r', "\n");
    if normalized.trim().is_empty() {
        return Err(ParseError::EmptyFile);
    }
    let all_lines: Vec<&str> = normalized.split('\n').collect();
    let has_magic = is_vtt_magic(all_lines[0]);
    let format = options.format.unwrap_or(if has_magic {
        SubtitleFormat::Vtt
    } else {
        SubtitleFormat::Srt
    });

    let mut blocks = split_blocks(&all_lines).into_iter().peekable();
    let mut header = None;
    if format == SubtitleFormat::Vtt && has_magic {
        let mut preamble: Vec<String> = Vec::new();
        // the magic line's block is always first
        if let Some(first) = blocks.next() {
            preamble.push(first.lines.join("\n"));
        }
        while let Some(block) = blocks.peek() {
            let head = block.lines[0];
            if ["NOTE", "STYLE", "REGION"]
                .iter()
                .any(|k| starts_with_keyword(head, k))
            {
                preamble.push(block.lines.join("\n"));
                blocks.next();
            } else {
                break;
            }
        }
        let joined = preamble.join("\n\n");
        if joined != "WEBVTT" {
            header = Some(joined);
        }
    }

    let mut cues = Vec::new();
    let mut warnings = Vec::new();
    let warn = |w: ParseWarning, warnings: &mut Vec<ParseWarning>| {
        if options.strict {
            Err(ParseError::Structural(w))
        } else {
            warnings.push(w);
            Ok(())
        }
    };

    for block in blocks {
        if format == SubtitleFormat::Vtt && starts_with_keyword(block.lines[0], "NOTE") {
            continue;
        }
        let arrow = block.lines.iter().position(|l| l.contains(ARROW));
        let arrow = match arrow {
            None => return Err(ParseError::MissingArrowSeparator { line: block.line }),
            Some(p) if p > 1 => {
                return Err(ParseError::MalformedBlock {
                    line: block.line,
                    reason: "unexpected text before the timing line",
                })
            }
            Some(p) => p,
        };
        let timing_line_no = block.line + arrow;
        let identifier = (arrow == 1).then(|| block.lines[0].trim().to_owned());
        let (start, end, settings, separators) =
            parse_timing_line(block.lines[arrow], timing_line_no)?;
        let payload = &block.lines[arrow + 1..];
        if payload.is_empty() {
            return Err(ParseError::MalformedBlock {
                line: timing_line_no,
                reason: "cue has an empty payload",
            });
        }

        let cue_no = cues.len();
        let at = |kind| ParseWarning {
            line: timing_line_no,
            cue: cue_no,
            kind,
        };
        if separators.iter().any(|s| *s != format.separator()) {
            // mixed separators are tolerated even in strict mode
            warnings.push(at(WarningKind::SeparatorMismatch));
        }
        if end <= start {
            warn(at(WarningKind::NonPositiveDuration), &mut warnings)?;
        }
        if let Some(prev) = cues.last() {
            let prev: &Cue = prev;
            if start < prev.start {
                warn(at(WarningKind::NonMonotonicStart), &mut warnings)?;
            } else if start < prev.end {
                warn(
                    at(WarningKind::Overlap {
                        previous_end: prev.end,
                    }),
                    &mut warnings,
                )?;
            }
        }

        cues.push(Cue {
            identifier,
            start,
            end,
            settings,
            lines: payload.iter().map(|l| (*l).to_owned()).collect(),
        });
    }

    if cues.is_empty() && format == SubtitleFormat::Srt {
        return Err(ParseError::EmptyFile);
    }

    Ok(Parsed {
        document: SubtitleDocument {
            format,
            bom,
            header,
            cues,
        },
        warnings,
    })
}

type Timing = (Timestamp, Timestamp, Option<String>, [FractionSeparator; 2]);

fn parse_timing_line(line: &str, line_no: usize) -> Result<Timing, ParseError> {
    let arrow_at = line.find(ARROW).expect("caller checked for arrow");
    let char_col = |byte: usize| line[..byte].chars().count() + 1;

    let left = &line[..arrow_at];
    let start_text = left.trim();
    let start_off = left.len() - left.trim_start().len();
    let right_off = arrow_at + ARROW.len();
    let right = &line[right_off..];
    let trimmed_right = right.trim_start();
    let end_off = right_off + (right.len() - trimmed_right.len());
    let end_len = trimmed_right
        .find(char::is_whitespace)
        .unwrap_or(trimmed_right.len());
    let end_text = &trimmed_right[..end_len];
    let settings = trimmed_right[end_len..].trim();

    let ts = |text: &str, offset: usize| {
        Timestamp::parse(text).map_err(|e| ParseError::MalformedTimestamp {
            line: line_no,
            column: char_col(offset) + e.column,
            reason: e.reason,
        })
    };
    let (start, s1) = ts(start_text, start_off)?;
    let (end, s2) = ts(end_text, end_off)?;
    let settings = (!settings.is_empty()).then(|| settings.to_owned());
    Ok((start, end, settings, [s1, s2]))
}

/// Writes `doc` in its own format. SRT counters are taken from the cue
/// identifiers when they are strictly increasing positive integers and
/// renumbered from 1 otherwise.
pub fn serialize_document(doc: &SubtitleDocument) -> String {
    let mut out = String::new();
    if doc.bom {
        out.push(BOM);
    }
    let sep = doc.format.separator();
    match doc.format {
        SubtitleFormat::Vtt => {
            match doc.header.as_deref() {
                Some(h) if is_vtt_magic(h.lines().next().unwrap_or("")) => out.push_str(h),
                Some(h) => {
                    out.push_str("WEBVTT\n\n");
                    out.push_str(h);
                }
                None => out.push_str("WEBVTT"),
            }
            out.push_str("\n\n");
            for cue in &doc.cues {
                if let Some(id) = &cue.identifier {
                    out.push_str(id);
                    out.push('\n');
                }
                write_cue_body(&mut out, cue, sep);
            }
        }
        SubtitleFormat::Srt => {
            let keep_ids = srt_ids_usable(&doc.cues);
            for (n, cue) in doc.cues.iter().enumerate() {
                let index = if keep_ids {
                    cue.index().expect("checked by srt_ids_usable")
                } else {
                    n as u32 + 1
                };
                out.push_str(&index.to_string());
                out.push('\n');
                write_cue_body(&mut out, cue, sep);
            }
        }
    }
    // exactly one trailing newline
    while out.ends_with("\n\n") {
        out.pop();
    }
    out
}

fn srt_ids_usable(cues: &[Cue]) -> bool {
    let mut prev = 0;
    for cue in cues {
        match cue.index() {
            Some(i) if i > prev => prev = i,
            _ => return false,
        }
    }
    true
}

fn write_cue_body(out: &mut String, cue: &Cue, sep: FractionSeparator) {
    out.push_str(&cue.start.format_with(sep));
    out.push_str(" --> ");
    out.push_str(&cue.end.format_with(sep));
    if let Some(settings) = &cue.settings {
        out.push(' ');
        out.push_str(settings);
    }
    out.push('\n');
    for line in &cue.lines {
        out.push_str(line);
        out.push('\n');
    }
    out.push('\n');
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_CUES: &str =
        "WEBVTT\n\n00:00:01.000 --> 00:00:04.000\nHello\n\n00:00:05.000 --> 00:00:09.000\nWorld\n";

    #[test]
    fn two_cue_vtt() {
        let doc = parse_document(TWO_CUES, None).unwrap();
        assert_eq!(doc.format, SubtitleFormat::Vtt);
        assert_eq!(doc.cues.len(), 2);
        assert_eq!(doc.cues[0].start.millis(), 1000);
        assert_eq!(doc.cues[1].start.millis(), 5000);
        assert_eq!(doc.header, None);
    }

    #[test]
    fn srt_comma_separator() {
        let doc = parse_document("1\n00:00:01,000 --> 00:00:04,000\nHallo\n", None).unwrap();
        assert_eq!(doc.format, SubtitleFormat::Srt);
        assert_eq!(doc.cues[0].start.millis(), 1000);
        assert_eq!(doc.cues[0].index(), Some(1));
    }

    #[test]
    fn empty_payload_is_malformed_block() {
        let err = parse_document("WEBVTT\n\n00:00:01.000 --> 00:00:02.000\n", None).unwrap_err();
        assert!(matches!(err, ParseError::MalformedBlock { line: 3, .. }));
    }

    #[test]
    fn empty_file() {
        assert_eq!(parse_document("", None), Err(ParseError::EmptyFile));
        assert_eq!(
            parse_document("\u{feff} \n\n", None),
            Err(ParseError::EmptyFile)
        );
    }

    #[test]
    fn missing_arrow() {
        let err = parse_document("1\n00:00:01,000 00:00:02,000\nHi\n", None).unwrap_err();
        assert_eq!(err, ParseError::MissingArrowSeparator { line: 1 });
    }

    #[test]
    fn malformed_timestamp_reports_column() {
        let err = parse_document("1\n00:00:01,000 --> 00:0x:02,000\nHi\n", None).unwrap_err();
        assert_eq!(
            err,
            ParseError::MalformedTimestamp {
                line: 2,
                column: 21,
                reason: "minutes must be two digits in 00-59"
            }
        );
    }

    #[test]
    fn crlf_and_bom_round_trip() {
        let text = "\u{feff}1\r\n00:00:01,000 --> 00:00:02,500\r\nEins\r\nZwei\r\n\r\n";
        let doc = parse_document(text, None).unwrap();
        assert!(doc.bom);
        assert_eq!(doc.cues[0].lines, vec!["Eins", "Zwei"]);
        let out = serialize_document(&doc);
        assert!(out.starts_with('\u{feff}'));
        assert_eq!(parse_document(&out, None).unwrap(), doc);
    }

    #[test]
    fn header_and_notes_are_re_emitted() {
        let text = "WEBVTT - Caligula\nKind: captions\n\nNOTE translated by hand\n\n\n\nintro\n00:00:01.000 --> 00:00:02.000 align:start\n<v Mary>Hallo\n\nNOTE dropped\n\n00:00:03.000 --> 00:00:04.000\nTschüss\n";
        let parsed = parse_with(text, ParseOptions::default()).unwrap();
        let doc = parsed.document;
        assert_eq!(
            doc.header.as_deref(),
            Some("WEBVTT - Caligula\nKind: captions\n\nNOTE translated by hand")
        );
        assert_eq!(doc.cues.len(), 2);
        assert_eq!(doc.cues[0].identifier.as_deref(), Some("intro"));
        assert_eq!(doc.cues[0].settings.as_deref(), Some("align:start"));
        let out = serialize_document(&doc);
        assert!(out.starts_with(
            "WEBVTT - Caligula\nKind: captions\n\nNOTE translated by hand\n\nintro\n"
        ));
        assert_eq!(parse_document(&out, None).unwrap(), doc);
    }

    #[test]
    fn single_cue_serialization() {
        let doc = SubtitleDocument::new(
            SubtitleFormat::Srt,
            vec![Cue::new(
                Timestamp::from_millis(0).unwrap(),
                Timestamp::from_millis(1500).unwrap(),
                "Hello",
            )],
        );
        let out = serialize_document(&doc);
        assert_eq!(out, "1\n00:00:00,000 --> 00:00:01,500\nHello\n");
        assert_eq!(out.matches("-->").count(), 1);
    }

    #[test]
    fn mismatched_separator_warns_but_parses() {
        let parsed = parse_with(
            "WEBVTT\n\n00:00:01,000 --> 00:00:02.000\nx\n",
            ParseOptions::default(),
        )
        .unwrap();
        assert_eq!(parsed.warnings.len(), 1);
        assert_eq!(parsed.warnings[0].kind, WarningKind::SeparatorMismatch);
    }

    #[test]
    fn strict_mode_rejects_overlap_and_inversion() {
        let overlap =
            "1\n00:00:01,000 --> 00:00:03,000\na\n\n2\n00:00:02,000 --> 00:00:04,000\nb\n";
        let lenient = parse_with(overlap, ParseOptions::default()).unwrap();
        assert!(matches!(
            lenient.warnings[0].kind,
            WarningKind::Overlap { .. }
        ));
        let strict = parse_with(
            overlap,
            ParseOptions {
                strict: true,
                ..Default::default()
            },
        );
        assert!(matches!(strict, Err(ParseError::Structural(_))));

        let inverted = "1\n00:00:03,000 --> 00:00:01,000\na\n";
        let lenient = parse_with(inverted, ParseOptions::default()).unwrap();
        assert_eq!(lenient.warnings[0].kind, WarningKind::NonPositiveDuration);
        assert!(parse_with(
            inverted,
            ParseOptions {
                strict: true,
                ..Default::default()
            }
        )
        .is_err());
    }

    #[test]
    fn non_sequential_srt_ids_are_renumbered() {
        let doc = parse_document(
            "7\n00:00:01,000 --> 00:00:02,000\na\n\n3\n00:00:03,000 --> 00:00:04,000\nb\n",
            None,
        )
        .unwrap();
        let out = serialize_document(&doc);
        assert!(out.starts_with("1\n"));
        assert!(out.contains("\n2\n00:00:03,000"));
        assert!(parse_document(&out, None).unwrap().canonical_eq(&doc));
    }

    #[test]
    fn lossless_payload() {
        let doc = parse_document(
            "WEBVTT\n\n00:00:01.000 --> 00:00:02.000\n- <i>Eins</i>  \n-Zwei\n",
            None,
        )
        .unwrap();
        assert_eq!(doc.cues[0].payload(), "- <i>Eins</i>  \n-Zwei");
        assert_eq!(doc.cues[0].plain_text(), "- Eins  \n-Zwei");
    }
}
