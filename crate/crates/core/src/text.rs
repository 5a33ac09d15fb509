//! Tokenizer and number handling shared by the detectors.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Word,
    /// Digits, optionally grouped with `.`/`,` between digits.
    Number,
}

/// A token with `char` offsets into the text it was cut from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token<'a> {
    pub text: &'a str,
    pub start: usize,
    pub end: usize,
    pub kind: TokenKind,
}

impl Token<'_> {
    pub fn folded(&self) -> String {
        self.text.to_lowercase()
    }

    pub fn has_digit(&self) -> bool {
        self.text.chars().any(|c| c.is_ascii_digit())
    }

    pub fn char_len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_capitalized(&self) -> bool {
        self.text.chars().next().is_some_and(char::is_uppercase)
    }

    /// At least `min` letters, all uppercase.
    pub fn is_all_caps(&self, min: usize) -> bool {
        let letters: Vec<char> = self.text.chars().filter(|c| c.is_alphabetic()).collect();
        letters.len() >= min && letters.iter().all(|c| c.is_uppercase())
    }
}

fn is_word_joiner(c: char) -> bool {
    matches!(c, '\'' | '\u{2019}' | '-' | '\u{2010}')
}

/// Splits on whitespace and punctuation. Apostrophes and hyphens between
/// alphanumerics stay inside the token ("We're", "B-52"), as do `.`/`,`
/// between digits ("15,000").
pub fn tokenize(text: &str) -> Vec<Token<'_>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if !chars[i].1.is_alphanumeric() {
            i += 1;
            continue;
        }
        let start = i;
        let mut j = i + 1;
        while j < chars.len() {
            let c = chars[j].1;
            if c.is_alphanumeric() {
                j += 1;
                continue;
            }
            let next = chars.get(j + 1).map(|p| p.1);
            let prev = chars[j - 1].1;
            let joins = match next {
                Some(n) if is_word_joiner(c) => n.is_alphanumeric(),
                Some(n) if c == '.' || c == ',' => prev.is_ascii_digit() && n.is_ascii_digit(),
                _ => false,
            };
            if joins {
                j += 2;
            } else {
                break;
            }
        }
        let byte_start = chars[start].0;
        let byte_end = chars.get(j).map_or(text.len(), |p| p.0);
        let slice = &text[byte_start..byte_end];
        let kind = if slice
            .chars()
            .all(|c| c.is_ascii_digit() || c == '.' || c == ',')
        {
            TokenKind::Number
        } else {
            TokenKind::Word
        };
        tokens.push(Token {
            text: slice,
            start,
            end: j,
            kind,
        });
        i = j;
    }
    tokens
}

/// Whether the token at `start` begins a sentence: nothing but dashes,
/// quotes or whitespace since the start of the text or the last
/// sentence-final punctuation mark.
pub fn is_sentence_initial(text: &str, start: usize) -> bool {
    for c in text
        .chars()
        .take(start)
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
    {
        match c {
            '.' | '!' | '?' | '…' | '\n' => return true,
            c if c.is_whitespace() => {}
            '-' | '"' | '\'' | '„' | '“' | '”' | '«' | '»' | '‚' | '‘' | '(' | '[' | '¿' | '¡' =>
                {}
            _ => return false,
        }
    }
    true
}

/// Decimal and digit-group separators for a locale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocaleNumber {
    pub decimal: char,
    pub thousands: char,
}

impl Default for LocaleNumber {
    fn default() -> Self {
        LocaleNumber {
            decimal: '.',
            thousands: ',',
        }
    }
}

impl LocaleNumber {
    /// Conventions for a language code; unknown languages get `.`/`,`.
    pub fn for_language(lang: &str) -> LocaleNumber {
        let base = lang
            .split(['-', '_'])
            .next()
            .unwrap_or("")
            .to_ascii_lowercase();
        match base.as_str() {
            "de" | "es" | "it" | "nl" | "pt" | "da" | "id" | "tr" | "el" => LocaleNumber {
                decimal: ',',
                thousands: '.',
            },
            "fr" | "pl" | "cs" | "sv" | "nb" | "no" | "fi" | "ru" | "uk" => LocaleNumber {
                decimal: ',',
                thousands: '\u{202f}',
            },
            _ => LocaleNumber::default(),
        }
    }

    /// Parses a number written with this locale's separators. Digit groups
    /// after the first must have exactly three digits.
    pub fn parse(&self, text: &str) -> Option<f64> {
        let (int_part, frac_part) = match text.split_once(self.decimal) {
            Some((i, f)) => (i, Some(f)),
            None => (text, None),
        };
        let groups: Vec<&str> = int_part.split(self.thousands).collect();
        if groups
            .iter()
            .any(|g| g.is_empty() || !g.bytes().all(|b| b.is_ascii_digit()))
        {
            return None;
        }
        if groups.len() > 1 && (groups[0].len() > 3 || groups[1..].iter().any(|g| g.len() != 3)) {
            return None;
        }
        let mut digits = groups.concat();
        if let Some(frac) = frac_part {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            digits.push('.');
            digits.push_str(frac);
        }
        digits.parse().ok()
    }

    /// Formats with at most `decimals` fraction digits (trailing zeros
    /// dropped) and no digit grouping.
    pub fn format(&self, value: f64, decimals: usize) -> String {
        let mut s = format!("{value:.decimals$}");
        if s.contains('.') {
            while s.ends_with('0') {
                s.pop();
            }
            if s.ends_with('.') {
                s.pop();
            }
        }
        s.replace('.', &self.decimal.to_string())
    }
}

/// Token sequence search: returns the token index where `needle` (already
/// case-folded words) starts in `haystack`, comparing case-insensitively.
pub fn find_phrase(haystack: &[Token<'_>], needle: &[String]) -> Option<usize> {
    if needle.is_empty() || needle.len() > haystack.len() {
        return None;
    }
    (0..=haystack.len() - needle.len()).find(|&i| {
        needle
            .iter()
            .zip(&haystack[i..])
            .all(|(n, t)| t.text.to_lowercase() == *n)
    })
}

/// Case-folded word list of a phrase.
pub fn fold_phrase(phrase: &str) -> Vec<String> {
    tokenize(phrase).iter().map(Token::folded).collect()
}
