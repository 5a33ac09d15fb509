//! Loading documents, profiles and lexicons from command-line arguments.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use subqa_core::format::{parse_with, ParseOptions, SubtitleDocument, SubtitleFormat};
use subqa_core::pipeline::{CheckOptions, Checker};
use subqa_core::resources::{
    builtin_profile, load_lexicons, load_profile, GuidelineProfile, LexiconSet, ResourceError,
};

use crate::args::Resources;

/// Reads and parses a subtitle file; structural warnings go to stderr, or
/// fail the run under `--strict`.
pub fn read_document(path: &Path, strict: bool) -> Result<SubtitleDocument> {
    let text =
        fs::read_to_string(path).with_context(|| format!("{}: cannot read", path.display()))?;
    let format = path
        .extension()
        .and_then(|e| e.to_str())
        .and_then(SubtitleFormat::from_extension);
    let parsed = parse_with(&text, ParseOptions { format, strict })
        .map_err(|e| anyhow!("{}: {e}", path.display()))?;
    for w in &parsed.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(parsed.document)
}

/// `movie.de.vtt` → `de`.
pub fn language_from_name(path: &Path) -> Option<String> {
    let stem = path.file_stem()?.to_str()?;
    let (_, lang) = stem.rsplit_once('.')?;
    let base = lang.split(['-', '_']).next()?;
    (matches!(base.len(), 2 | 3) && base.chars().all(|c| c.is_ascii_alphabetic()))
        .then(|| lang.to_owned())
}

pub fn source_language(resources: &Resources, path: Option<&Path>) -> String {
    resources
        .source_lang
        .clone()
        .or_else(|| path.and_then(language_from_name))
        .unwrap_or_else(|| "en".to_owned())
}

pub fn target_language(resources: &Resources, path: &Path) -> Result<String> {
    resources
        .target_lang
        .clone()
        .or_else(|| language_from_name(path))
        .or_else(|| resources.profile.as_deref().filter(|p| builtin_profile(p).is_some()).map(str::to_owned))
        .ok_or_else(|| {
            anyhow!(
                "{}: cannot tell the target language; pass --target-lang or name the file <name>.<lang>.vtt",
                path.display()
            )
        })
}

pub fn profile(resources: &Resources, target_lang: &str) -> Result<GuidelineProfile> {
    match resources.profile.as_deref() {
        Some(p) if Path::new(p).is_file() => Ok(load_profile(Path::new(p))?),
        Some(p) => {
            builtin_profile(p).ok_or_else(|| anyhow!("no built-in profile `{p}` and no such file"))
        }
        None => Ok(builtin_profile(target_lang).unwrap_or_else(|| {
            eprintln!("notice: no built-in profile for `{target_lang}`; using generic defaults");
            GuidelineProfile::with_defaults(target_lang)
        })),
    }
}

/// Lexicons for a language pair. A missing directory or wordlist is not an
/// error: the lexicon-backed detectors just stay silent.
pub fn lexicons(resources: &Resources, source_lang: &str, target_lang: &str) -> Result<LexiconSet> {
    let Some(dir) = resources.lexicons.as_deref() else {
        eprintln!(
            "notice: no --lexicons directory; spelling, glossary and not-translated checks are off"
        );
        return Ok(LexiconSet::empty(source_lang, target_lang));
    };
    if !dir.is_dir() {
        bail!("{}: lexicon directory not found", dir.display());
    }
    match load_lexicons(dir, source_lang, target_lang) {
        Ok(set) => Ok(set),
        Err(ResourceError::MissingResource(path)) => {
            eprintln!(
                "notice: {} is missing; spelling, glossary and not-translated checks are off",
                path.display()
            );
            Ok(LexiconSet::empty(source_lang, target_lang))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn checker(resources: &Resources, source_lang: &str, target_lang: &str) -> Result<Checker> {
    let profile = profile(resources, target_lang)?;
    let lexicons = lexicons(resources, source_lang, target_lang)?;
    Ok(Checker::new(CheckOptions::new(profile, lexicons)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn language_in_file_name() {
        assert_eq!(
            language_from_name(Path::new("dir/movie.de.vtt")).as_deref(),
            Some("de")
        );
        assert_eq!(
            language_from_name(Path::new("movie.pt-BR.srt")).as_deref(),
            Some("pt-BR")
        );
        assert_eq!(language_from_name(Path::new("movie.vtt")), None);
        assert_eq!(language_from_name(Path::new("movie.final.vtt")), None);
    }
}
