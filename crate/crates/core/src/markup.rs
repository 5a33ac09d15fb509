//! Inline tag handling for cue payload lines.
//!
//! Offsets are `char` positions in the plain text. Spans are listed in the
//! order their opening tags appear, each with its nesting depth, which is
//! enough to put the exact tag sequence back.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TagKind {
    Italic,
    Bold,
    Underline,
    OtherTag,
}

impl TagKind {
    fn from_name(name: &str) -> TagKind {
        match name.to_ascii_lowercase().as_str() {
            "i" => TagKind::Italic,
            "b" => TagKind::Bold,
            "u" => TagKind::Underline,
            _ => TagKind::OtherTag,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            TagKind::Italic => "italic",
            TagKind::Bold => "bold",
            TagKind::Underline => "underline",
            TagKind::OtherTag => "tag",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkupSpan {
    pub kind: TagKind,
    pub tag_name: String,
    pub start: usize,
    pub end: usize,
    /// Number of enclosing spans.
    pub depth: usize,
    /// Opening tag exactly as written, e.g. `<v Mary>` or `<font color="red">`.
    pub open_tag: String,
    /// `None` for void tags (WebVTT timestamps) and for voice/lang tags left
    /// open until the end of the line.
    pub close_tag: Option<String>,
}

impl MarkupSpan {
    /// A plain `<name>…</name>` span at depth 0.
    pub fn simple(name: &str, start: usize, end: usize) -> MarkupSpan {
        MarkupSpan {
            kind: TagKind::from_name(name),
            tag_name: name.to_owned(),
            start,
            end,
            depth: 0,
            open_tag: format!("<{name}>"),
            close_tag: Some(format!("</{name}>")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MarkupError {
    #[error("unbalanced tag <{tag}> at offset {offset}")]
    UnbalancedTag { tag: String, offset: usize },
    #[error("span {start}..{end} is outside text of length {len}")]
    SpanOutOfBounds {
        start: usize,
        end: usize,
        len: usize,
    },
    #[error("span {start}..{end} at depth {depth} does not nest inside its parent")]
    ImproperNesting {
        start: usize,
        end: usize,
        depth: usize,
    },
}

/// Tags that WebVTT lets an author leave unclosed.
fn close_optional(name: &str) -> bool {
    matches!(name, "v" | "lang")
}

struct RawTag<'a> {
    /// Byte range of the whole tag in the line.
    len: usize,
    text: &'a str,
    name: &'a str,
    closing: bool,
}

/// Recognizes a tag starting at `line[at..]`: `<` then an optional `/`, then an
/// ASCII alphanumeric, up to the next `>` with no `<` in between.
fn tag_at(line: &str, at: usize) -> Option<RawTag<'_>> {
    let rest = &line[at..];
    let bytes = rest.as_bytes();
    if bytes.first() != Some(&b'<') {
        return None;
    }
    let closing = bytes.get(1) == Some(&b'/');
    let name_start = if closing { 2 } else { 1 };
    if !bytes.get(name_start).is_some_and(u8::is_ascii_alphanumeric) {
        return None;
    }
    let close = rest[1..].find(['<', '>'])? + 1;
    if bytes[close] != b'>' {
        return None;
    }
    let inner = &rest[name_start..close];
    let name_len = inner
        .find(|c: char| c.is_whitespace() || c == '.' || c == '>')
        .unwrap_or(inner.len());
    Some(RawTag {
        len: close + 1,
        text: &rest[..=close],
        name: &inner[..name_len],
        closing,
    })
}

pub fn strip_markup(line: &str) -> Result<(String, Vec<MarkupSpan>), MarkupError> {
    let mut plain = String::with_capacity(line.len());
    let mut plain_len = 0usize;
    let mut spans: Vec<MarkupSpan> = Vec::new();
    // indices into `spans` of currently open tags
    let mut open: Vec<usize> = Vec::new();

    let mut at = 0;
    while at < line.len() {
        if let Some(tag) = tag_at(line, at) {
            if tag.closing {
                let name = tag.name.to_ascii_lowercase();
                loop {
                    let Some(&top) = open.last() else {
                        return Err(MarkupError::UnbalancedTag {
                            tag: tag.name.to_owned(),
                            offset: plain_len,
                        });
                    };
                    let span = &mut spans[top];
                    open.pop();
                    span.end = plain_len;
                    if span.tag_name.to_ascii_lowercase() == name {
                        span.close_tag = Some(tag.text.to_owned());
                        break;
                    }
                    if !close_optional(&span.tag_name.to_ascii_lowercase()) {
                        return Err(MarkupError::UnbalancedTag {
                            tag: span.tag_name.clone(),
                            offset: span.start,
                        });
                    }
                }
            } else {
                let void = tag.name.as_bytes()[0].is_ascii_digit();
                spans.push(MarkupSpan {
                    kind: TagKind::from_name(tag.name),
                    tag_name: tag.name.to_owned(),
                    start: plain_len,
                    end: plain_len,
                    depth: open.len(),
                    open_tag: tag.text.to_owned(),
                    close_tag: None,
                });
                if !void {
                    open.push(spans.len() - 1);
                }
            }
            at += tag.len;
        } else {
            let c = line[at..].chars().next().expect("in bounds");
            plain.push(c);
            plain_len += 1;
            at += c.len_utf8();
        }
    }
    for &idx in open.iter().rev() {
        let span = &mut spans[idx];
        if !close_optional(&span.tag_name.to_ascii_lowercase()) {
            return Err(MarkupError::UnbalancedTag {
                tag: span.tag_name.clone(),
                offset: span.start,
            });
        }
        span.end = plain_len;
    }
    Ok((plain, spans))
}

/// Inverse of [`strip_markup`].
pub fn reinsert_markup(plain: &str, spans: &[MarkupSpan]) -> Result<String, MarkupError> {
    let chars: Vec<char> = plain.chars().collect();
    let len = chars.len();
    let mut out = String::with_capacity(plain.len() + spans.len() * 8);
    let mut cursor = 0usize;
    let mut stack: Vec<&MarkupSpan> = Vec::new();

    let emit_to = |out: &mut String, cursor: &mut usize, to: usize| -> Result<(), MarkupError> {
        if to < *cursor {
            return Err(MarkupError::SpanOutOfBounds {
                start: *cursor,
                end: to,
                len,
            });
        }
        out.extend(&chars[*cursor..to]);
        *cursor = to;
        Ok(())
    };
    let close = |out: &mut String, cursor: &mut usize, span: &MarkupSpan| {
        emit_to(out, cursor, span.end)?;
        if let Some(tag) = &span.close_tag {
            out.push_str(tag);
        }
        Ok::<(), MarkupError>(())
    };

    for span in spans {
        if span.start > span.end || span.end > len {
            return Err(MarkupError::SpanOutOfBounds {
                start: span.start,
                end: span.end,
                len,
            });
        }
        if span.depth > stack.len() {
            return Err(MarkupError::ImproperNesting {
                start: span.start,
                end: span.end,
                depth: span.depth,
            });
        }
        while stack.len() > span.depth {
            let top = stack.pop().expect("non-empty");
            close(&mut out, &mut cursor, top)?;
        }
        if let Some(parent) = stack.last() {
            if span.start < parent.start || span.end > parent.end {
                return Err(MarkupError::ImproperNesting {
                    start: span.start,
                    end: span.end,
                    depth: span.depth,
                });
            }
        }
        emit_to(&mut out, &mut cursor, span.start)?;
        out.push_str(&span.open_tag);
        let void = span.close_tag.is_none()
            && span.start == span.end
            && span
                .tag_name
                .as_bytes()
                .first()
                .is_some_and(u8::is_ascii_digit);
        if !void {
            stack.push(span);
        }
    }
    while let Some(top) = stack.pop() {
        close(&mut out, &mut cursor, top)?;
    }
    emit_to(&mut out, &mut cursor, len)?;
    Ok(out)
}

/// Plain text of a line, never failing: unbalanced input has every
/// tag-shaped substring removed.
pub fn plain_text(line: &str) -> String {
    match strip_markup(line) {
        Ok((plain, _)) => plain,
        Err(_) => {
            let mut out = String::with_capacity(line.len());
            let mut at = 0;
            while at < line.len() {
                if let Some(tag) = tag_at(line, at) {
                    at += tag.len;
                } else {
                    let c = line[at..].chars().next().expect("in bounds");
                    out.push(c);
                    at += c.len_utf8();
                }
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn fully_wrapped_italic() {
        let line = "<i>that lurked beneath everyday palace life.</i>";
        let (plain, spans) = strip_markup(line).unwrap();
        assert_eq!(plain, "that lurked beneath everyday palace life.");
        assert_eq!(spans.len(), 1);
        assert_eq!(spans[0].kind, TagKind::Italic);
        assert_eq!((spans[0].start, spans[0].end), (0, plain.chars().count()));
        assert_eq!(reinsert_markup(&plain, &spans).unwrap(), line);
    }

    #[test]
    fn partial_italic() {
        let line = "But it could also be short for <i>specularius,</i>";
        let (plain, spans) = strip_markup(line).unwrap();
        assert_eq!(plain, "But it could also be short for specularius,");
        let covered: String = plain
            .chars()
            .skip(spans[0].start)
            .take(spans[0].end - spans[0].start)
            .collect();
        assert_eq!(covered, "specularius,");
        assert_eq!(reinsert_markup(&plain, &spans).unwrap(), line);
    }

    #[test]
    fn no_tags() {
        let (plain, spans) = strip_markup("no tags here").unwrap();
        assert_eq!(plain, "no tags here");
        assert!(spans.is_empty());
        assert_eq!(reinsert_markup("abc", &[]).unwrap(), "abc");
    }

    #[test]
    fn simple_full_cover() {
        let out = reinsert_markup("abc", &[MarkupSpan::simple("i", 0, 3)]).unwrap();
        assert_eq!(out, "<i>abc</i>");
    }

    #[test]
    fn voice_and_timestamp_tags_preserved() {
        let line = "<v Mary Beard>Hallo <00:00:01.500><c.yellow>du</c>";
        let (plain, spans) = strip_markup(line).unwrap();
        assert_eq!(plain, "Hallo du");
        assert_eq!(spans.len(), 3);
        assert_eq!(spans[0].tag_name, "v");
        assert_eq!(spans[0].close_tag, None);
        assert_eq!(spans[0].end, 8);
        assert_eq!(spans[1].kind, TagKind::OtherTag);
        assert_eq!(reinsert_markup(&plain, &spans).unwrap(), line);
    }

    #[test]
    fn unbalanced_is_reported() {
        let err = strip_markup("ab <i>cd").unwrap_err();
        assert_eq!(
            err,
            MarkupError::UnbalancedTag {
                tag: "i".into(),
                offset: 3
            }
        );
        assert!(matches!(
            strip_markup("x</b>"),
            Err(MarkupError::UnbalancedTag { .. })
        ));
        assert!(strip_markup("<i><b>x</i></b>").is_err());
        assert_eq!(plain_text("ab <i>cd"), "ab cd");
    }

    #[test]
    fn angle_brackets_that_are_not_tags() {
        let (plain, spans) = strip_markup("a < b and c <> d <3").unwrap();
        assert_eq!(plain, "a < b and c <> d <3");
        assert!(spans.is_empty());
    }

    #[test]
    fn out_of_bounds_span() {
        assert!(matches!(
            reinsert_markup("ab", &[MarkupSpan::simple("i", 0, 3)]),
            Err(MarkupError::SpanOutOfBounds { .. })
        ));
    }

    #[test]
    fn adjacent_empty_tags_keep_their_order() {
        for line in ["<i>abc<b></b></i>", "<i>abc</i><b></b>", "<i></i><b>x</b>"] {
            let (plain, spans) = strip_markup(line).unwrap();
            assert_eq!(reinsert_markup(&plain, &spans).unwrap(), line);
        }
    }

    fn balanced_line() -> impl Strategy<Value = String> {
        let text = "[a-zA-Z0-9 ,.!?äöüß'-]{0,6}";
        let leaf = text.prop_map(|s| s);
        leaf.prop_recursive(4, 32, 4, |inner| {
            (
                prop::sample::select(vec!["i", "b", "u", "c.red", "font color=\"x\"", "v Bob"]),
                prop::collection::vec(inner, 0..4),
            )
                .prop_map(|(tag, children)| {
                    let name = tag.split([' ', '.']).next().unwrap();
                    format!("<{tag}>{}</{name}>", children.concat())
                })
        })
    }

    proptest! {
        #[test]
        fn strip_then_reinsert_is_identity(parts in prop::collection::vec(balanced_line(), 1..4)) {
            let line = parts.concat();
            let (plain, spans) = strip_markup(&line).unwrap();
            prop_assert!(!plain.contains("</"));
            prop_assert_eq!(reinsert_markup(&plain, &spans).unwrap(), line);
            for s in &spans {
                prop_assert!(s.start <= s.end && s.end <= plain.chars().count());
            }
        }
    }
}
