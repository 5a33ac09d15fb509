//! Per-category statistics over a corpus of checked files.
//!
//! Counting is per cue: a cue with three spacing findings counts once for
//! `IncorrectSpacing`. Percentages are rounded half-up to two decimals.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::finding::{ErrorCategory, Finding, Severity, Span, UnknownCategory};

/// Version of the findings-file JSON layout.
pub const FINDINGS_SCHEMA_VERSION: u32 = 1;
/// Version of the report JSON layout.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("{file}: finding refers to cue {cue_index}, but the file has {total_cues} cues")]
    IndexOutOfRange {
        file: String,
        cue_index: usize,
        total_cues: usize,
    },
    #[error("{path}: {source}", path = path.display())]
    UnknownCategory {
        path: PathBuf,
        #[source]
        source: UnknownCategory,
    },
    #[error("{path}: {reason}", path = path.display())]
    SchemaViolation { path: PathBuf, reason: String },
    #[error("{path}: {source}", path = path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: invalid JSON: {source}", path = path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

/// Findings for one checked file; also the on-disk findings schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FindingsFile {
    pub schema_version: u32,
    pub file: String,
    pub total_cues: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_lang: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_lang: Option<String>,
    pub findings: Vec<Finding>,
}

impl FindingsFile {
    pub fn new(file: impl Into<String>, total_cues: usize, findings: Vec<Finding>) -> FindingsFile {
        FindingsFile {
            schema_version: FINDINGS_SCHEMA_VERSION,
            file: file.into(),
            total_cues,
            source_lang: None,
            target_lang: None,
            findings,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LanguagePair {
    pub source: String,
    pub target: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CategoryStat {
    pub cue_count: usize,
    pub percentage: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FileReport {
    pub file: String,
    pub total_cues: usize,
    pub clean_cues: usize,
    pub clean_percentage: f64,
    pub per_category: BTreeMap<ErrorCategory, CategoryStat>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QaReport {
    pub schema_version: u32,
    pub language_pair: LanguagePair,
    pub total_cues: usize,
    /// Set when no cues were checked; percentages are then vacuous.
    pub empty_corpus: bool,
    pub clean_cues: usize,
    pub clean_percentage: f64,
    /// Only categories that occur; absent categories are 0.
    pub per_category: BTreeMap<ErrorCategory, CategoryStat>,
    pub per_file: Vec<FileReport>,
}

impl QaReport {
    pub fn cue_count(&self, category: ErrorCategory) -> usize {
        self.per_category.get(&category).map_or(0, |s| s.cue_count)
    }

    pub fn percentage(&self, category: ErrorCategory) -> f64 {
        self.per_category
            .get(&category)
            .map_or(0.0, |s| s.percentage)
    }
}

/// `count / total × 100`, rounded half-up to two decimals in integer
/// arithmetic. Zero when `total` is zero.
pub fn percentage(count: usize, total: usize) -> f64 {
    if total == 0 {
        return 0.0;
    }
    let (count, total) = (count as u128, total as u128);
    let hundredths = (count * 20_000 + total) / (2 * total);
    hundredths as f64 / 100.0
}

struct Counts {
    clean: usize,
    per_category: BTreeMap<ErrorCategory, usize>,
}

fn count_file(file: &FindingsFile) -> Result<Counts, ReportError> {
    let mut cues_by_category: BTreeMap<ErrorCategory, BTreeSet<usize>> = BTreeMap::new();
    let mut dirty = BTreeSet::new();
    for f in &file.findings {
        if f.cue_index >= file.total_cues {
            return Err(ReportError::IndexOutOfRange {
                file: file.file.clone(),
                cue_index: f.cue_index,
                total_cues: file.total_cues,
            });
        }
        cues_by_category
            .entry(f.category)
            .or_default()
            .insert(f.cue_index);
        dirty.insert(f.cue_index);
    }
    Ok(Counts {
        clean: file.total_cues - dirty.len(),
        per_category: cues_by_category
            .into_iter()
            .map(|(c, s)| (c, s.len()))
            .collect(),
    })
}

fn stats(
    counts: &BTreeMap<ErrorCategory, usize>,
    total: usize,
) -> BTreeMap<ErrorCategory, CategoryStat> {
    counts
        .iter()
        .map(|(&c, &n)| {
            (
                c,
                CategoryStat {
                    cue_count: n,
                    percentage: percentage(n, total),
                },
            )
        })
        .collect()
}

fn clean_share(clean: usize, total: usize) -> f64 {
    if total == 0 {
        100.0
    } else {
        percentage(clean, total)
    }
}

/// Folds per-file findings into a report. Files are reported in the order
/// given; the totals do not depend on finding order.
pub fn aggregate(files: &[FindingsFile], pair: LanguagePair) -> Result<QaReport, ReportError> {
    let mut per_file = Vec::with_capacity(files.len());
    let mut total = 0;
    let mut clean = 0;
    let mut per_category: BTreeMap<ErrorCategory, usize> = BTreeMap::new();
    for file in files {
        let counts = count_file(file)?;
        total += file.total_cues;
        clean += counts.clean;
        for (&c, &n) in &counts.per_category {
            *per_category.entry(c).or_default() += n;
        }
        per_file.push(FileReport {
            file: file.file.clone(),
            total_cues: file.total_cues,
            clean_cues: counts.clean,
            clean_percentage: clean_share(counts.clean, file.total_cues),
            per_category: stats(&counts.per_category, file.total_cues),
        });
    }
    Ok(QaReport {
        schema_version: REPORT_SCHEMA_VERSION,
        language_pair: pair,
        total_cues: total,
        empty_corpus: total == 0,
        clean_cues: clean,
        clean_percentage: clean_share(clean, total),
        per_category: stats(&per_category, total),
        per_file,
    })
}

// ---------------------------------------------------------------------------
// output

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Text,
    PlotData,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "text" => Ok(ReportFormat::Text),
            "plotdata" => Ok(ReportFormat::PlotData),
            other => Err(format!(
                "unknown report format `{other}` (json, csv, text, plotdata)"
            )),
        }
    }
}

/// Categories by descending cue count, ties in enumeration order.
fn ranked(report: &QaReport) -> Vec<(ErrorCategory, CategoryStat)> {
    let mut rows: Vec<_> = report.per_category.iter().map(|(&c, &s)| (c, s)).collect();
    rows.sort_by(|a, b| b.1.cue_count.cmp(&a.1.cue_count).then(a.0.cmp(&b.0)));
    rows
}

pub fn emit_report(report: &QaReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Csv => {
            let mut s = String::from("category,cue_count,percentage\n");
            for (c, stat) in &report.per_category {
                let _ = writeln!(s, "{c},{},{:.2}", stat.cue_count, stat.percentage);
            }
            s
        }
        ReportFormat::PlotData => {
            let mut s = String::new();
            for (c, stat) in ranked(report) {
                let _ = writeln!(s, "{c},{:.2}", stat.percentage);
            }
            let _ = writeln!(s, "Clean,{:.2}", report.clean_percentage);
            s
        }
        ReportFormat::Text => {
            let mut s = String::new();
            let pair = &report.language_pair;
            if !pair.source.is_empty() || !pair.target.is_empty() {
                let _ = writeln!(s, "language pair: {} → {}", pair.source, pair.target);
            }
            let _ = writeln!(
                s,
                "files: {}  cues: {}  clean: {} ({:.2}%)",
                report.per_file.len(),
                report.total_cues,
                report.clean_cues,
                report.clean_percentage
            );
            if report.empty_corpus {
                s.push_str("empty corpus: no cues were checked\n");
                return s;
            }
            let width = report
                .per_category
                .keys()
                .map(|c| c.as_str().len())
                .max()
                .unwrap_or(8)
                .max(8);
            let _ = writeln!(
                s,
                "\n{:<4} {:<width$} {:>6} {:>8}",
                "rank", "category", "cues", "percent"
            );
            for (rank, (c, stat)) in ranked(report).into_iter().enumerate() {
                let _ = writeln!(
                    s,
                    "{:<4} {:<width$} {:>6} {:>7.2}%",
                    rank + 1,
                    c.as_str(),
                    stat.cue_count,
                    stat.percentage
                );
            }
            s
        }
    }
}

// ---------------------------------------------------------------------------
// annotations

fn schema(path: &Path, reason: impl Into<String>) -> ReportError {
    ReportError::SchemaViolation {
        path: path.to_owned(),
        reason: reason.into(),
    }
}

fn usize_field(
    obj: &serde_json::Map<String, Value>,
    key: &str,
    path: &Path,
    ctx: &str,
) -> Result<Option<usize>, ReportError> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => v
            .as_u64()
            .map(|n| Some(n as usize))
            .ok_or_else(|| schema(path, format!("{ctx}`{key}` must be a non-negative integer"))),
    }
}

fn string_field(
    obj: &serde_json::Map<String, Value>,
    key: &str,
    path: &Path,
    ctx: &str,
) -> Result<Option<String>, ReportError> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) => Ok(Some(s.clone())),
        Some(_) => Err(schema(path, format!("{ctx}`{key}` must be a string"))),
    }
}

fn parse_finding(value: &Value, n: usize, path: &Path) -> Result<Finding, ReportError> {
    let ctx = format!("findings[{n}]: ");
    let obj = value
        .as_object()
        .ok_or_else(|| schema(path, format!("{ctx}must be an object")))?;
    let category = string_field(obj, "category", path, &ctx)?
        .ok_or_else(|| schema(path, format!("{ctx}missing `category`")))?;
    let category =
        ErrorCategory::from_str(&category).map_err(|source| ReportError::UnknownCategory {
            path: path.to_owned(),
            source,
        })?;
    let cue_index = usize_field(obj, "cue_index", path, &ctx)?
        .ok_or_else(|| schema(path, format!("{ctx}missing `cue_index`")))?;
    let severity = match string_field(obj, "severity", path, &ctx)?.as_deref() {
        None | Some("error") => Severity::Error,
        Some("warning") => Severity::Warning,
        Some("info") => Severity::Info,
        Some(other) => return Err(schema(path, format!("{ctx}unknown severity `{other}`"))),
    };
    let span = match obj.get("span") {
        None | Some(Value::Null) => None,
        Some(v) => {
            let span: Span = serde_json::from_value(v.clone())
                .map_err(|_| schema(path, format!("{ctx}`span` must be {{\"start\", \"end\"}}")))?;
            if span.start > span.end {
                return Err(schema(path, format!("{ctx}`span` ends before it starts")));
            }
            Some(span)
        }
    };
    Ok(Finding {
        category,
        cue_index,
        source_index: usize_field(obj, "source_index", path, &ctx)?,
        span,
        severity,
        message: string_field(obj, "message", path, &ctx)?.unwrap_or_default(),
        suggestion: string_field(obj, "suggestion", path, &ctx)?,
    })
}

/// Parses findings-file JSON. Missing severities default to `error`, since
/// annotators mark defects.
pub fn parse_findings(text: &str, path: &Path) -> Result<FindingsFile, ReportError> {
    let value: Value = serde_json::from_str(text).map_err(|source| ReportError::Json {
        path: path.to_owned(),
        source,
    })?;
    let obj = value
        .as_object()
        .ok_or_else(|| schema(path, "top level must be an object"))?;
    match obj.get("schema_version").and_then(Value::as_u64) {
        Some(v) if v == u64::from(FINDINGS_SCHEMA_VERSION) => {}
        Some(v) => return Err(schema(path, format!("unsupported schema_version {v}"))),
        None => return Err(schema(path, "missing `schema_version`")),
    }
    let total_cues = usize_field(obj, "total_cues", path, "")?
        .ok_or_else(|| schema(path, "missing `total_cues`"))?;
    let file = string_field(obj, "file", path, "")?.unwrap_or_else(|| path.display().to_string());
    let findings = obj
        .get("findings")
        .and_then(Value::as_array)
        .ok_or_else(|| schema(path, "`findings` must be an array"))?
        .iter()
        .enumerate()
        .map(|(n, v)| parse_finding(v, n, path))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FindingsFile {
        schema_version: FINDINGS_SCHEMA_VERSION,
        file,
        total_cues,
        source_lang: string_field(obj, "source_lang", path, "")?,
        target_lang: string_field(obj, "target_lang", path, "")?,
        findings,
    })
}

/// Reads an externally annotated findings file.
pub fn ingest_annotations(path: &Path) -> Result<FindingsFile, ReportError> {
    let text = std::fs::read_to_string(path).map_err(|source| ReportError::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_findings(&text, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn finding(category: ErrorCategory, cue: usize) -> Finding {
        Finding::new(category, cue, Severity::Error, "x")
    }

    fn pair() -> LanguagePair {
        LanguagePair {
            source: "en".into(),
            target: "de".into(),
        }
    }

    #[test]
    fn half_up_rounding() {
        assert_eq!(percentage(12, 100), 12.0);
        assert_eq!(percentage(1, 3), 33.33);
        assert_eq!(percentage(2, 3), 66.67);
        assert_eq!(percentage(1, 8), 12.5);
        // 1/800 = 0.125 % → 0.13
        assert_eq!(percentage(1, 800), 0.13);
        assert_eq!(percentage(0, 0), 0.0);
    }

    #[test]
    fn counts_cues_not_findings() {
        let mut findings: Vec<Finding> = (0..12)
            .flat_map(|i| vec![finding(ErrorCategory::IncorrectSpacing, i * 5); 3])
            .collect();
        findings.push(finding(ErrorCategory::LineTooLong, 0));
        let r = aggregate(&[FindingsFile::new("a.vtt", 100, findings)], pair()).unwrap();
        assert_eq!(r.percentage(ErrorCategory::IncorrectSpacing), 12.0);
        assert_eq!(r.cue_count(ErrorCategory::IncorrectSpacing), 12);
        assert_eq!(r.percentage(ErrorCategory::LineTooLong), 1.0);
        assert_eq!(r.clean_cues, 88);
        assert_eq!(r.clean_percentage, 88.0);
    }

    #[test]
    fn zero_findings() {
        let r = aggregate(&[FindingsFile::new("a.vtt", 40, vec![])], pair()).unwrap();
        assert_eq!(r.clean_percentage, 100.0);
        assert!(ErrorCategory::ALL.iter().all(|&c| r.percentage(c) == 0.0));
        assert!(!r.empty_corpus);
    }

    #[test]
    fn one_cue_two_categories() {
        let f = vec![
            finding(ErrorCategory::Misspelling, 3),
            finding(ErrorCategory::Agreement, 3),
        ];
        let r = aggregate(&[FindingsFile::new("a.vtt", 10, f)], pair()).unwrap();
        assert_eq!(r.cue_count(ErrorCategory::Misspelling), 1);
        assert_eq!(r.cue_count(ErrorCategory::Agreement), 1);
        assert_eq!(r.clean_cues, 9);
    }

    #[test]
    fn out_of_range() {
        let f = vec![finding(ErrorCategory::Misspelling, 10)];
        assert!(matches!(
            aggregate(&[FindingsFile::new("a.vtt", 10, f)], pair()),
            Err(ReportError::IndexOutOfRange { cue_index: 10, .. })
        ));
    }

    #[test]
    fn empty_corpus() {
        let r = aggregate(&[], pair()).unwrap();
        assert!(r.empty_corpus);
        assert_eq!(r.total_cues, 0);
        assert!(emit_report(&r, ReportFormat::Text).contains("empty corpus"));
    }

    #[test]
    fn csv_and_plotdata() {
        let f = vec![
            finding(ErrorCategory::LineTooLong, 0),
            finding(ErrorCategory::RepeatedPhrase, 1),
            finding(ErrorCategory::LineTooLong, 2),
        ];
        let r = aggregate(&[FindingsFile::new("a.vtt", 8, f)], pair()).unwrap();
        assert_eq!(
            emit_report(&r, ReportFormat::Csv),
            "category,cue_count,percentage\nRepeatedPhrase,1,12.50\nLineTooLong,2,25.00\n"
        );
        assert_eq!(
            emit_report(&r, ReportFormat::PlotData),
            "LineTooLong,25.00\nRepeatedPhrase,12.50\nClean,62.50\n"
        );
        let text = emit_report(&r, ReportFormat::Text);
        assert!(text.find("LineTooLong").unwrap() < text.find("RepeatedPhrase").unwrap());
    }

    #[test]
    fn json_round_trip() {
        let f = vec![
            finding(ErrorCategory::LineTooLong, 0),
            finding(ErrorCategory::Paraphrase, 2),
        ];
        let r = aggregate(
            &[
                FindingsFile::new("a.vtt", 3, f),
                FindingsFile::new("b.vtt", 7, vec![]),
            ],
            pair(),
        )
        .unwrap();
        let json = emit_report(&r, ReportFormat::Json);
        let back: QaReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert!(json.contains("\"schema_version\": 1"));
    }

    #[test]
    fn annotations() {
        let p = Path::new("ann.json");
        let text = r#"{"schema_version": 1, "file": "x.de.vtt", "total_cues": 4,
            "findings": [{"category": "Agreement", "cue_index": 2, "message": "der/die"}]}"#;
        let f = parse_findings(text, p).unwrap();
        assert_eq!(f.findings.len(), 1);
        assert_eq!(f.findings[0].category, ErrorCategory::Agreement);
        assert_eq!(f.findings[0].severity, Severity::Error);

        let bad = text.replace("Agreement", "Typo");
        assert!(matches!(
            parse_findings(&bad, p),
            Err(ReportError::UnknownCategory { .. })
        ));
        let bad = text.replace("\"cue_index\": 2", "\"cue_index\": \"2\"");
        assert!(matches!(
            parse_findings(&bad, p),
            Err(ReportError::SchemaViolation { .. })
        ));
        let bad = text.replace("\"schema_version\": 1", "\"schema_version\": 9");
        assert!(matches!(
            parse_findings(&bad, p),
            Err(ReportError::SchemaViolation { .. })
        ));
    }

    #[test]
    fn automated_output_reads_back() {
        let mut file = FindingsFile::new(
            "x.vtt",
            5,
            vec![finding(ErrorCategory::LineTooLong, 1).with_span(Span::new(42, 50))],
        );
        file.source_lang = Some("en".into());
        let json = serde_json::to_string(&file).unwrap();
        assert_eq!(parse_findings(&json, Path::new("x.json")).unwrap(), file);
    }

    fn corpus() -> impl Strategy<Value = Vec<(usize, Vec<(usize, usize)>)>> {
        prop::collection::vec(
            (1usize..40).prop_flat_map(|total| {
                (
                    Just(total),
                    prop::collection::vec((0..total, 0usize..30), 0..30),
                )
            }),
            0..5,
        )
    }

    proptest! {
        #[test]
        fn permutation_invariant_and_consistent(files in corpus(), seed in any::<u64>()) {
            let build = |shuffle: bool| -> Vec<FindingsFile> {
                files.iter().enumerate().map(|(n, (total, fs))| {
                    let mut findings: Vec<Finding> = fs.iter()
                        .map(|&(cue, cat)| finding(ErrorCategory::ALL[cat], cue))
                        .collect();
                    if shuffle {
                        let k = (seed as usize) % (findings.len().max(1));
                        findings.rotate_left(k);
                        findings.reverse();
                    }
                    FindingsFile::new(format!("f{n}"), *total, findings)
                }).collect()
            };
            let a = aggregate(&build(false), pair()).unwrap();
            let b = aggregate(&build(true), pair()).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(a.per_file.iter().map(|f| f.total_cues).sum::<usize>(), a.total_cues);
            if a.total_cues > 0 {
                let dirty = percentage(a.total_cues - a.clean_cues, a.total_cues);
                prop_assert!((a.clean_percentage + dirty - 100.0).abs() <= 0.011);
            }
        }
    }
}
