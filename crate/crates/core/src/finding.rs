use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Defect categories. Identifiers are part of the findings and report JSON
/// schemas and must not be renamed.
///
/// The variants after [`ErrorCategory::Stammering`] have no detector; they
/// exist so externally annotated findings can be aggregated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ErrorCategory {
    RepeatedPhrase,
    IncorrectSpacing,
    NonTextCharacter,
    BlockCountIntegrity,
    LineTooLong,
    TooManyLines,
    ReadingSpeedExceeded,
    CompoundWordOOV,
    MixedLanguage,
    NotTranslated,
    Misspelling,
    GlossaryViolation,
    LexicalInconsistency,
    ProfanityMismatch,
    FormatError,
    AdditionOmission,
    RegisterInconsistency,
    Stammering,
    Idiom,
    ContextualMeaning,
    Nonsensical,
    OverTranslation,
    WordOrder,
    Agreement,
    WordStructure,
    CulturalNuance,
    GrammarIntent,
    GenreAdaptation,
    InventedLanguage,
    Paraphrase,
}

impl ErrorCategory {
    pub const ALL: [ErrorCategory; 30] = [
        ErrorCategory::RepeatedPhrase,
        ErrorCategory::IncorrectSpacing,
        ErrorCategory::NonTextCharacter,
        ErrorCategory::BlockCountIntegrity,
        ErrorCategory::LineTooLong,
        ErrorCategory::TooManyLines,
        ErrorCategory::ReadingSpeedExceeded,
        ErrorCategory::CompoundWordOOV,
        ErrorCategory::MixedLanguage,
        ErrorCategory::NotTranslated,
        ErrorCategory::Misspelling,
        ErrorCategory::GlossaryViolation,
        ErrorCategory::LexicalInconsistency,
        ErrorCategory::ProfanityMismatch,
        ErrorCategory::FormatError,
        ErrorCategory::AdditionOmission,
        ErrorCategory::RegisterInconsistency,
        ErrorCategory::Stammering,
        ErrorCategory::Idiom,
        ErrorCategory::ContextualMeaning,
        ErrorCategory::Nonsensical,
        ErrorCategory::OverTranslation,
        ErrorCategory::WordOrder,
        ErrorCategory::Agreement,
        ErrorCategory::WordStructure,
        ErrorCategory::CulturalNuance,
        ErrorCategory::GrammarIntent,
        ErrorCategory::GenreAdaptation,
        ErrorCategory::InventedLanguage,
        ErrorCategory::Paraphrase,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCategory::RepeatedPhrase => "RepeatedPhrase",
            ErrorCategory::IncorrectSpacing => "IncorrectSpacing",
            ErrorCategory::NonTextCharacter => "NonTextCharacter",
            ErrorCategory::BlockCountIntegrity => "BlockCountIntegrity",
            ErrorCategory::LineTooLong => "LineTooLong",
            ErrorCategory::TooManyLines => "TooManyLines",
            ErrorCategory::ReadingSpeedExceeded => "ReadingSpeedExceeded",
            ErrorCategory::CompoundWordOOV => "CompoundWordOOV",
            ErrorCategory::MixedLanguage => "MixedLanguage",
            ErrorCategory::NotTranslated => "NotTranslated",
            ErrorCategory::Misspelling => "Misspelling",
            ErrorCategory::GlossaryViolation => "GlossaryViolation",
            ErrorCategory::LexicalInconsistency => "LexicalInconsistency",
            ErrorCategory::ProfanityMismatch => "ProfanityMismatch",
            ErrorCategory::FormatError => "FormatError",
            ErrorCategory::AdditionOmission => "AdditionOmission",
            ErrorCategory::RegisterInconsistency => "RegisterInconsistency",
            ErrorCategory::Stammering => "Stammering",
            ErrorCategory::Idiom => "Idiom",
            ErrorCategory::ContextualMeaning => "ContextualMeaning",
            ErrorCategory::Nonsensical => "Nonsensical",
            ErrorCategory::OverTranslation => "OverTranslation",
            ErrorCategory::WordOrder => "WordOrder",
            ErrorCategory::Agreement => "Agreement",
            ErrorCategory::WordStructure => "WordStructure",
            ErrorCategory::CulturalNuance => "CulturalNuance",
            ErrorCategory::GrammarIntent => "GrammarIntent",
            ErrorCategory::GenreAdaptation => "GenreAdaptation",
            ErrorCategory::InventedLanguage => "InventedLanguage",
            ErrorCategory::Paraphrase => "Paraphrase",
        }
    }

    /// Whether some detector in this crate can emit the category.
    pub fn has_detector(self) -> bool {
        self <= ErrorCategory::Stammering
    }
}

impl fmt::Display for ErrorCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown error category `{0}`")]
pub struct UnknownCategory(pub String);

impl FromStr for ErrorCategory {
    type Err = UnknownCategory;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ErrorCategory::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| UnknownCategory(s.to_owned()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Info,
    Warning,
    Error,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Info => "info",
            Severity::Warning => "warning",
            Severity::Error => "error",
        })
    }
}

/// Half-open `char` range into a cue's plain text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Span {
        debug_assert!(start <= end);
        Span { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    pub fn shifted(self, by: usize) -> Span {
        Span::new(self.start + by, self.end + by)
    }

    pub fn overlaps(&self, other: &Span) -> bool {
        self.start < other.end && other.start < self.end
    }
}

/// One detected defect.
///
/// `cue_index` is the position of the cue in the checked (target) document.
/// Findings about source cues that have no target counterpart point at the
/// nearest preceding target cue and carry `source_index`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub category: ErrorCategory,
    pub cue_index: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub span: Option<Span>,
    pub severity: Severity,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suggestion: Option<String>,
}

impl Finding {
    pub fn new(
        category: ErrorCategory,
        cue_index: usize,
        severity: Severity,
        message: impl Into<String>,
    ) -> Finding {
        Finding {
            category,
            cue_index,
            source_index: None,
            span: None,
            severity,
            message: message.into(),
            suggestion: None,
        }
    }

    pub fn with_span(mut self, span: Span) -> Finding {
        self.span = Some(span);
        self
    }

    pub fn with_suggestion(mut self, suggestion: impl Into<String>) -> Finding {
        self.suggestion = Some(suggestion.into());
        self
    }

    pub fn with_source_index(mut self, index: usize) -> Finding {
        self.source_index = Some(index);
        self
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cue {}: {} [{}] {}",
            self.cue_index, self.severity, self.category, self.message
        )?;
        if let Some(s) = &self.suggestion {
            write!(f, " (suggest: {s:?})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identifiers_round_trip() {
        for c in ErrorCategory::ALL {
            assert_eq!(c.as_str().parse::<ErrorCategory>().unwrap(), c);
            let json = serde_json::to_string(&c).unwrap();
            assert_eq!(json, format!("\"{}\"", c.as_str()));
        }
        assert!("Typo".parse::<ErrorCategory>().is_err());
    }

    #[test]
    fn enumeration_order_is_declaration_order() {
        let mut sorted = ErrorCategory::ALL;
        sorted.sort();
        assert_eq!(sorted, ErrorCategory::ALL);
        assert!(ErrorCategory::Stammering.has_detector());
        assert!(!ErrorCategory::Agreement.has_detector());
    }
}
