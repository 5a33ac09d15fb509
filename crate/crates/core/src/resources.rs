//! Guideline profiles and lexical resources.
//!
//! Layout of a resources directory:
//!
//! ```text
//! profiles/<lang>.json          guideline profile
//! lexicons/<lang>/words.txt     target wordlist, one word per line
//! lexicons/<lang>/names.txt     optional proper-noun allowlist
//! knp/<title>.json|.txt         key names and phrases glossary
//! profanity/<lang>.json         {"term": severity 1-3}
//! units/<source>-<target>.json  unit conversion rules
//! ```

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::de::{MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::text::{fold_phrase, LocaleNumber};

#[derive(Debug, Error)]
pub enum ResourceError {
    #[error("{0}: file not found")]
    FileNotFound(PathBuf),
    #[error("{0}: required resource is missing")]
    MissingResource(PathBuf),
    #[error("{path}: invalid value for `{key}`: {reason}")]
    SchemaViolation {
        path: PathBuf,
        key: String,
        reason: String,
    },
    #[error("{path}: glossary term `{key}` is defined more than once")]
    DuplicateGlossaryKey { path: PathBuf, key: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: invalid JSON: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

fn read(path: &Path) -> Result<String, ResourceError> {
    fs::read_to_string(path).map_err(|source| {
        if source.kind() == std::io::ErrorKind::NotFound {
            ResourceError::FileNotFound(path.to_owned())
        } else {
            ResourceError::Io {
                path: path.to_owned(),
                source,
            }
        }
    })
}

fn schema(path: &Path, key: &str, reason: impl Into<String>) -> ResourceError {
    ResourceError::SchemaViolation {
        path: path.to_owned(),
        key: key.to_owned(),
        reason: reason.into(),
    }
}

/// Primary subtag of a language code, lowercased (`de-DE` → `de`).
pub fn base_language(lang: &str) -> String {
    lang.split(['-', '_'])
        .next()
        .unwrap_or("")
        .to_ascii_lowercase()
}

// ---------------------------------------------------------------------------
// Guideline profiles

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    /// `-Danke.`, `...und`
    Attached,
    /// `- Danke.`, `... und`
    Spaced,
}

/// Rendering constraints for one target language.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GuidelineProfile {
    pub language: String,
    pub max_chars_per_line: usize,
    pub max_lines_per_block: usize,
    /// Characters per second.
    pub max_reading_speed: f64,
    /// Convention for the speaker-change hyphen.
    pub hyphen_spacing: Spacing,
    pub ellipsis_spacing: Spacing,
    pub ellipsis_forms: Vec<String>,
}

impl GuidelineProfile {
    pub const DEFAULT_MAX_CHARS_PER_LINE: usize = 42;
    pub const DEFAULT_MAX_LINES_PER_BLOCK: usize = 2;
    pub const DEFAULT_MAX_READING_SPEED: f64 = 17.0;

    /// Profile with every optional key at its default.
    pub fn with_defaults(language: &str) -> GuidelineProfile {
        GuidelineProfile {
            language: language.to_owned(),
            max_chars_per_line: Self::DEFAULT_MAX_CHARS_PER_LINE,
            max_lines_per_block: Self::DEFAULT_MAX_LINES_PER_BLOCK,
            max_reading_speed: Self::DEFAULT_MAX_READING_SPEED,
            hyphen_spacing: Spacing::Attached,
            ellipsis_spacing: Spacing::Attached,
            ellipsis_forms: vec!["...".into(), "…".into()],
        }
    }

    /// Parses a profile document; `origin` is only used in error messages.
    pub fn from_json(text: &str, origin: &Path) -> Result<GuidelineProfile, ResourceError> {
        let value: Value = serde_json::from_str(text).map_err(|source| ResourceError::Json {
            path: origin.to_owned(),
            source,
        })?;
        let Value::Object(map) = value else {
            return Err(schema(origin, "$", "profile must be a JSON object"));
        };
        let language = match map.get("language") {
            Some(Value::String(s)) if !s.trim().is_empty() => s.clone(),
            Some(_) => return Err(schema(origin, "language", "must be a non-empty string")),
            None => return Err(schema(origin, "language", "missing required key")),
        };
        let mut profile = GuidelineProfile::with_defaults(&language);

        for (key, value) in &map {
            match key.as_str() {
                "language" => {}
                "max_chars_per_line" | "max_lines_per_block" => {
                    let n = value
                        .as_u64()
                        .filter(|&n| n >= 1)
                        .ok_or_else(|| schema(origin, key, "must be a positive integer"))?
                        as usize;
                    if key == "max_chars_per_line" {
                        profile.max_chars_per_line = n;
                    } else {
                        profile.max_lines_per_block = n;
                    }
                }
                "max_reading_speed" => {
                    profile.max_reading_speed = value
                        .as_f64()
                        .filter(|v| v.is_finite() && *v > 0.0)
                        .ok_or_else(|| schema(origin, key, "must be a positive number"))?;
                }
                "hyphen_spacing" | "ellipsis_spacing" => {
                    let spacing = match value.as_str() {
                        Some("attached") => Spacing::Attached,
                        Some("spaced") => Spacing::Spaced,
                        _ => return Err(schema(origin, key, "must be \"attached\" or \"spaced\"")),
                    };
                    if key == "hyphen_spacing" {
                        profile.hyphen_spacing = spacing;
                    } else {
                        profile.ellipsis_spacing = spacing;
                    }
                }
                "ellipsis_forms" => {
                    let forms: Option<Vec<String>> = value.as_array().map(|items| {
                        items
                            .iter()
                            .filter_map(|v| v.as_str().filter(|s| !s.is_empty()).map(str::to_owned))
                            .collect()
                    });
                    match forms {
                        Some(f)
                            if !f.is_empty() && f.len() == value.as_array().map_or(0, Vec::len) =>
                        {
                            profile.ellipsis_forms = f
                        }
                        _ => {
                            return Err(schema(origin, key, "must be a non-empty array of strings"))
                        }
                    }
                }
                other => return Err(schema(origin, other, "unknown key")),
            }
        }
        Ok(profile)
    }
}

const BUILTIN_PROFILES: &[(&str, &str)] = &[
    ("ar", include_str!("../resources/profiles/ar.json")),
    ("de", include_str!("../resources/profiles/de.json")),
    ("en", include_str!("../resources/profiles/en.json")),
    ("es", include_str!("../resources/profiles/es.json")),
    ("fr", include_str!("../resources/profiles/fr.json")),
    ("pt", include_str!("../resources/profiles/pt.json")),
    ("zh", include_str!("../resources/profiles/zh.json")),
];

/// Languages with a shipped profile.
pub fn builtin_profile_languages() -> impl Iterator<Item = &'static str> {
    BUILTIN_PROFILES.iter().map(|(lang, _)| *lang)
}

/// Shipped profile for a language code (region subtags are ignored).
pub fn builtin_profile(lang: &str) -> Option<GuidelineProfile> {
    let base = base_language(lang);
    BUILTIN_PROFILES
        .iter()
        .find(|(l, _)| *l == base)
        .map(|(l, text)| {
            GuidelineProfile::from_json(text, Path::new(&format!("<builtin>/{l}.json")))
                .expect("builtin profiles are valid")
        })
}

pub fn load_profile(path: &Path) -> Result<GuidelineProfile, ResourceError> {
    GuidelineProfile::from_json(&read(path)?, path)
}

// ---------------------------------------------------------------------------
// Glossary

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rendering {
    /// The source term must appear unchanged in the target.
    KeepVerbatim,
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlossaryEntry {
    pub term: String,
    pub rendering: Rendering,
    /// Other target renderings seen in the wild; used to tell which rendering
    /// a cue chose when checking consistency.
    pub variants: Vec<String>,
}

impl GlossaryEntry {
    /// The required target text.
    pub fn required(&self) -> &str {
        match &self.rendering {
            Rendering::KeepVerbatim => &self.term,
            Rendering::Text(t) => t,
        }
    }

    /// Required rendering followed by the variants.
    pub fn renderings(&self) -> impl Iterator<Item = &str> {
        std::iter::once(self.required()).chain(self.variants.iter().map(String::as_str))
    }
}

/// Key names and phrases, looked up case-insensitively.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Glossary {
    entries: Vec<GlossaryEntry>,
    index: HashMap<String, usize>,
}

fn glossary_key(term: &str) -> String {
    fold_phrase(term).join(" ")
}

impl Glossary {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[GlossaryEntry] {
        &self.entries
    }

    pub fn lookup(&self, term: &str) -> Option<&GlossaryEntry> {
        self.index
            .get(&glossary_key(term))
            .map(|&i| &self.entries[i])
    }

    /// Adds an entry; `Err` carries the folded key when it already exists.
    pub fn insert(&mut self, entry: GlossaryEntry) -> Result<(), String> {
        let key = glossary_key(&entry.term);
        if key.is_empty() {
            return Err(entry.term);
        }
        if self.index.contains_key(&key) {
            return Err(key);
        }
        self.index.insert(key, self.entries.len());
        self.entries.push(entry);
        Ok(())
    }

    /// Case-folded words that belong to some glossary term or rendering.
    pub fn vocabulary(&self) -> HashSet<String> {
        self.entries
            .iter()
            .flat_map(|e| {
                std::iter::once(e.term.as_str())
                    .chain(e.renderings())
                    .flat_map(fold_phrase)
                    .collect::<Vec<_>>()
            })
            .collect()
    }
}

/// JSON object read as an ordered list of entries so duplicate keys survive.
struct Entries(Vec<(String, Value)>);

impl<'de> Deserialize<'de> for Entries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Entries;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a JSON object")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Entries, A::Error> {
                let mut out = Vec::new();
                while let Some(entry) = map.next_entry::<String, Value>()? {
                    out.push(entry);
                }
                Ok(Entries(out))
            }
        }
        d.deserialize_map(V)
    }
}

const KEEP_VERBATIM: &str = "keep-verbatim";

fn parse_rendering(text: &str) -> Rendering {
    if text.trim() == KEEP_VERBATIM {
        Rendering::KeepVerbatim
    } else {
        Rendering::Text(text.trim().to_owned())
    }
}

fn glossary_entries_from_json(
    text: &str,
    path: &Path,
) -> Result<Vec<GlossaryEntry>, ResourceError> {
    let Entries(raw) = serde_json::from_str(text).map_err(|source| ResourceError::Json {
        path: path.to_owned(),
        source,
    })?;
    raw.into_iter()
        .map(|(term, value)| {
            let (rendering, variants) = match &value {
                Value::String(s) => (parse_rendering(s), Vec::new()),
                Value::Object(obj) => {
                    let rendering = obj
                        .get("rendering")
                        .and_then(Value::as_str)
                        .map(parse_rendering)
                        .ok_or_else(|| {
                            schema(path, &term, "object entry needs a string `rendering`")
                        })?;
                    let variants = match obj.get("variants") {
                        None => Vec::new(),
                        Some(Value::Array(items)) => items
                            .iter()
                            .map(|v| v.as_str().map(str::to_owned))
                            .collect::<Option<Vec<_>>>()
                            .ok_or_else(|| schema(path, &term, "`variants` must hold strings"))?,
                        Some(_) => return Err(schema(path, &term, "`variants` must be an array")),
                    };
                    (rendering, variants)
                }
                _ => return Err(schema(path, &term, "expected a string or an object")),
            };
            Ok(GlossaryEntry {
                term,
                rendering,
                variants,
            })
        })
        .collect()
}

/// `TERM = rendering` lines; `#` starts a comment.
fn glossary_entries_from_text(
    text: &str,
    path: &Path,
) -> Result<Vec<GlossaryEntry>, ResourceError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(n, line)| {
            let (term, rendering) = line.split_once('=').ok_or_else(|| {
                schema(
                    path,
                    &format!("line {}", n + 1),
                    "expected `TERM = rendering`",
                )
            })?;
            Ok(GlossaryEntry {
                term: term.trim().to_owned(),
                rendering: parse_rendering(rendering),
                variants: Vec::new(),
            })
        })
        .collect()
}

pub fn load_glossary_file(path: &Path, into: &mut Glossary) -> Result<(), ResourceError> {
    let text = read(path)?;
    let entries = if path.extension().is_some_and(|e| e == "json") {
        glossary_entries_from_json(&text, path)?
    } else {
        glossary_entries_from_text(&text, path)?
    };
    for entry in entries {
        into.insert(entry)
            .map_err(|key| ResourceError::DuplicateGlossaryKey {
                path: path.to_owned(),
                key,
            })?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Profanity

/// Terms with a severity from 1 (mild) to 3 (strong).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProfanityLexicon {
    terms: BTreeMap<String, u8>,
}

impl ProfanityLexicon {
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn severity(&self, term: &str) -> Option<u8> {
        self.terms.get(&glossary_key(term)).copied()
    }

    /// Phrases (case-folded words) with their severity.
    pub fn phrases(&self) -> impl Iterator<Item = (Vec<String>, u8)> + '_ {
        self.terms
            .iter()
            .map(|(k, &s)| (k.split(' ').map(str::to_owned).collect(), s))
    }

    pub fn insert(&mut self, term: &str, severity: u8) {
        assert!((1..=3).contains(&severity), "severity out of range");
        self.terms.insert(glossary_key(term), severity);
    }

    pub fn from_json(text: &str, path: &Path) -> Result<ProfanityLexicon, ResourceError> {
        let mut lexicon = ProfanityLexicon::default();
        if text.trim().is_empty() {
            return Ok(lexicon);
        }
        let Entries(raw) = serde_json::from_str(text).map_err(|source| ResourceError::Json {
            path: path.to_owned(),
            source,
        })?;
        for (term, value) in raw {
            let severity = value
                .as_u64()
                .filter(|s| (1..=3).contains(s))
                .ok_or_else(|| schema(path, &term, "severity must be an integer from 1 to 3"))?;
            if glossary_key(&term).is_empty() {
                return Err(schema(path, &term, "term has no words"));
            }
            lexicon.insert(&term, severity as u8);
        }
        Ok(lexicon)
    }
}

// ---------------------------------------------------------------------------
// Units

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitSystem {
    Imperial,
    Metric,
}

/// `target = source × factor`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitRule {
    pub source_unit: String,
    #[serde(default)]
    pub source_aliases: BTreeSet<String>,
    pub target_unit: String,
    pub factor: f64,
    #[serde(default = "imperial")]
    pub system: UnitSystem,
}

fn imperial() -> UnitSystem {
    UnitSystem::Imperial
}

impl UnitRule {
    pub fn matches(&self, word: &str) -> bool {
        let w = word.to_lowercase();
        self.source_unit.to_lowercase() == w
            || self.source_aliases.iter().any(|a| a.to_lowercase() == w)
    }

    pub fn convert(&self, value: f64) -> f64 {
        value * self.factor
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct UnitTable {
    rules: Vec<UnitRule>,
}

fn rule(unit: &str, aliases: &[&str], target: &str, factor: f64) -> UnitRule {
    UnitRule {
        source_unit: unit.to_owned(),
        source_aliases: aliases.iter().map(|a| (*a).to_owned()).collect(),
        target_unit: target.to_owned(),
        factor,
        system: UnitSystem::Imperial,
    }
}

impl UnitTable {
    /// Imperial → SI rules with unit words in English and the common
    /// European target languages.
    pub fn builtin() -> UnitTable {
        UnitTable {
            rules: vec![
                rule(
                    "feet",
                    &[
                        "foot", "ft", "Fuß", "Fuss", "pieds", "pied", "pies", "pie", "pés", "pé",
                    ],
                    "m",
                    0.3048,
                ),
                rule(
                    "inches",
                    &[
                        "inch",
                        "Zoll",
                        "pouces",
                        "pouce",
                        "pulgadas",
                        "pulgada",
                        "polegadas",
                        "polegada",
                    ],
                    "cm",
                    2.54,
                ),
                rule(
                    "yards",
                    &["yard", "yd", "Yard", "yardas", "yarda", "jardas", "jarda"],
                    "m",
                    0.9144,
                ),
                rule(
                    "miles",
                    &[
                        "mile", "mi", "Meilen", "Meile", "milles", "mille", "millas", "milla",
                        "milhas", "milha",
                    ],
                    "km",
                    1.60934,
                ),
                rule(
                    "gallons",
                    &[
                        "gallon", "gal", "Gallonen", "Gallone", "galones", "galón", "galões",
                        "galão",
                    ],
                    "L",
                    3.78541,
                ),
                rule(
                    "pounds",
                    &["pound", "lb", "lbs", "Pfund", "livres", "libras", "libra"],
                    "kg",
                    0.453592,
                ),
                rule(
                    "ounces",
                    &[
                        "ounce", "oz", "Unzen", "Unze", "onces", "once", "onzas", "onza", "onças",
                        "onça",
                    ],
                    "g",
                    28.3495,
                ),
            ],
        }
    }

    pub fn rules(&self) -> &[UnitRule] {
        &self.rules
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn lookup(&self, word: &str) -> Option<&UnitRule> {
        self.rules.iter().find(|r| r.matches(word))
    }

    /// Adds rules, replacing any existing rule with the same source unit.
    pub fn merge(&mut self, rules: Vec<UnitRule>) {
        for rule in rules {
            let unit = rule.source_unit.to_lowercase();
            match self
                .rules
                .iter_mut()
                .find(|r| r.source_unit.to_lowercase() == unit)
            {
                Some(existing) => *existing = rule,
                None => self.rules.push(rule),
            }
        }
    }

    pub fn validate(&self, path: &Path) -> Result<(), ResourceError> {
        for (i, r) in self.rules.iter().enumerate() {
            if !(r.factor.is_finite() && r.factor > 0.0) {
                return Err(schema(
                    path,
                    &r.source_unit,
                    "factor must be a positive finite number",
                ));
            }
            let unit = r.source_unit.to_lowercase();
            for (j, other) in self.rules.iter().enumerate() {
                if i != j
                    && other
                        .source_aliases
                        .iter()
                        .any(|a| a.to_lowercase() == unit)
                {
                    return Err(schema(
                        path,
                        &r.source_unit,
                        format!("also listed as an alias of `{}`", other.source_unit),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str, path: &Path) -> Result<Vec<UnitRule>, ResourceError> {
        serde_json::from_str(text).map_err(|source| ResourceError::Json {
            path: path.to_owned(),
            source,
        })
    }
}

// ---------------------------------------------------------------------------
// Lexicon set

#[derive(Debug, Clone, PartialEq)]
pub struct LexiconSet {
    pub source_lang: String,
    pub target_lang: String,
    /// Case-folded target-language word forms.
    pub target_wordlist: HashSet<String>,
    /// Case-folded names accepted by the spelling check.
    pub proper_nouns: HashSet<String>,
    pub knp_glossary: Glossary,
    /// Keyed by base language code.
    pub profanity: HashMap<String, ProfanityLexicon>,
    pub units: UnitTable,
    pub source_number: LocaleNumber,
    pub locale_number: LocaleNumber,
}

impl LexiconSet {
    /// No wordlist, glossary or profanity data; built-in units and locale
    /// number formats only.
    pub fn empty(source_lang: &str, target_lang: &str) -> LexiconSet {
        LexiconSet {
            source_lang: source_lang.to_owned(),
            target_lang: target_lang.to_owned(),
            target_wordlist: HashSet::new(),
            proper_nouns: HashSet::new(),
            knp_glossary: Glossary::default(),
            profanity: HashMap::new(),
            units: UnitTable::builtin(),
            source_number: LocaleNumber::for_language(source_lang),
            locale_number: LocaleNumber::for_language(target_lang),
        }
    }

    pub fn has_wordlist(&self) -> bool {
        !self.target_wordlist.is_empty()
    }

    pub fn in_wordlist(&self, word: &str) -> bool {
        self.target_wordlist.contains(&word.to_lowercase())
    }

    pub fn profanity_for(&self, lang: &str) -> Option<&ProfanityLexicon> {
        self.profanity.get(&base_language(lang))
    }

    pub fn add_words<I: IntoIterator<Item = S>, S: AsRef<str>>(&mut self, words: I) {
        self.target_wordlist.extend(
            words
                .into_iter()
                .map(|w| w.as_ref().trim().to_lowercase())
                .filter(|w| !w.is_empty()),
        );
    }
}

fn word_lines(text: &str) -> impl Iterator<Item = String> + '_ {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_lowercase)
}

/// Loads the lexical resources for a language pair from `dir`.
///
/// The target wordlist is required; the glossary, profanity lists, name
/// allowlist and unit overrides are optional.
pub fn load_lexicons(
    dir: &Path,
    source_lang: &str,
    target_lang: &str,
) -> Result<LexiconSet, ResourceError> {
    let mut set = LexiconSet::empty(source_lang, target_lang);
    let src = base_language(source_lang);
    let tgt = base_language(target_lang);

    let lex_dir = dir.join("lexicons").join(&tgt);
    let words = lex_dir.join("words.txt");
    let text = match read(&words) {
        Ok(t) => t,
        Err(ResourceError::FileNotFound(p)) => return Err(ResourceError::MissingResource(p)),
        Err(e) => return Err(e),
    };
    set.target_wordlist.extend(word_lines(&text));
    let names = lex_dir.join("names.txt");
    if names.is_file() {
        set.proper_nouns.extend(word_lines(&read(&names)?));
    }

    let knp_dir = dir.join("knp");
    if knp_dir.is_dir() {
        let mut files: Vec<PathBuf> = fs::read_dir(&knp_dir)
            .map_err(|source| ResourceError::Io {
                path: knp_dir.clone(),
                source,
            })?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|e| e == "json" || e == "txt"))
            .collect();
        files.sort();
        for file in files {
            load_glossary_file(&file, &mut set.knp_glossary)?;
        }
    }

    for lang in [&src, &tgt] {
        let path = dir.join("profanity").join(format!("{lang}.json"));
        if path.is_file() && !set.profanity.contains_key(lang) {
            let lexicon = ProfanityLexicon::from_json(&read(&path)?, &path)?;
            set.profanity.insert(lang.clone(), lexicon);
        }
    }

    let units = dir.join("units").join(format!("{src}-{tgt}.json"));
    if units.is_file() {
        let rules = UnitTable::from_json(&read(&units)?, &units)?;
        set.units.merge(rules);
        set.units.validate(&units)?;
    }
    Ok(set)
}
