mod args;
mod input;
mod stats;

use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::Parser;
use serde::Serialize;
use subqa_core::alignment::align_by_time;
use subqa_core::finding::{Finding, Severity};
use subqa_core::fixers::{collapse_repetitions, fix_spacing, reinsert_markup_document, Edit};
use subqa_core::format::{serialize_document, SubtitleDocument};
use subqa_core::report::{aggregate, emit_report, FindingsFile};

use args::{Cli, Command, CompareArgs, FixArgs, Fixer, LintArgs, OutputFormat, StatsArgs};

/// Exit status when checks ran and found error-severity problems.
const FINDINGS: u8 = 1;
/// Exit status for unreadable input and bad arguments.
const INPUT_ERROR: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Lint(a) => lint(a),
        Command::Compare(a) => compare(a),
        Command::Fix(a) => fix(a),
        Command::Stats(a) => stats(a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}

fn print(text: &str) -> Result<()> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn status(findings: &[Finding]) -> ExitCode {
    if findings.iter().any(|f| f.severity == Severity::Error) {
        ExitCode::from(FINDINGS)
    } else {
        ExitCode::SUCCESS
    }
}

fn render(file: &FindingsFile, doc: &SubtitleDocument, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(file).expect("findings serialize");
            s.push('\n');
            s
        }
        OutputFormat::Text => {
            let mut s = String::new();
            for f in &file.findings {
                let at = doc
                    .cues
                    .get(f.cue_index)
                    .map(|c| format!(" {}", c.start))
                    .unwrap_or_default();
                s.push_str(&format!(
                    "{}:{}{at}: {} [{}] {}",
                    file.file,
                    f.cue_index + 1,
                    f.severity,
                    f.category,
                    f.message
                ));
                if let Some(suggestion) = &f.suggestion {
                    s.push_str(&format!(" (suggest: {suggestion:?})"));
                }
                s.push('\n');
            }
            let count = |sev| file.findings.iter().filter(|f| f.severity == sev).count();
            s.push_str(&format!(
                "{}: {} cues checked; errors: {}, warnings: {}, notes: {}\n",
                file.file,
                file.total_cues,
                count(Severity::Error),
                count(Severity::Warning),
                count(Severity::Info)
            ));
            s
        }
    }
}

fn findings_file(
    path: &Path,
    doc: &SubtitleDocument,
    findings: Vec<Finding>,
    langs: (String, String),
) -> FindingsFile {
    let mut file = FindingsFile::new(path.display().to_string(), doc.cues.len(), findings);
    file.source_lang = Some(langs.0);
    file.target_lang = Some(langs.1);
    file
}

fn lint(a: LintArgs) -> Result<ExitCode> {
    let doc = input::read_document(&a.target, a.resources.strict)?;
    let target_lang = input::target_language(&a.resources, &a.target)?;
    let source_lang = input::source_language(&a.resources, None);
    let checker = input::checker(&a.resources, &source_lang, &target_lang)?;
    let findings = checker.lint(&doc);
    let code = status(&findings);
    let file = findings_file(&a.target, &doc, findings, (source_lang, target_lang));
    print(&render(&file, &doc, a.format))?;
    Ok(code)
}

fn compare(a: CompareArgs) -> Result<ExitCode> {
    let source = input::read_document(&a.source, a.resources.strict)?;
    let target = input::read_document(&a.target, a.resources.strict)?;
    let source_lang = input::source_language(&a.resources, Some(&a.source));
    let target_lang = input::target_language(&a.resources, &a.target)?;
    let checker = input::checker(&a.resources, &source_lang, &target_lang)?;
    let findings = checker.compare(&source, &target);
    let code = status(&findings);
    let file = findings_file(&a.target, &target, findings, (source_lang, target_lang));
    print(&render(&file, &target, a.format))?;
    Ok(code)
}

#[derive(Serialize)]
struct EditLog<'a> {
    file: String,
    written_to: Option<String>,
    edits: &'a [Edit],
    /// Problems the fixers saw but left for a human.
    unfixed: Vec<String>,
}

fn same_file(a: &Path, b: &Path) -> bool {
    match (fs::canonicalize(a), fs::canonicalize(b)) {
        (Ok(a), Ok(b)) => a == b,
        _ => a == b,
    }
}

fn fix(a: FixArgs) -> Result<ExitCode> {
    let destination = match (&a.out, a.in_place, a.dry_run) {
        (Some(out), false, false) => {
            if same_file(out, &a.target) {
                bail!(
                    "{}: refusing to overwrite the input; use --in-place",
                    out.display()
                );
            }
            Some(out.clone())
        }
        (None, true, false) => Some(a.target.clone()),
        (None, false, true) => None,
        _ => bail!("choose one of --out PATH, --in-place or --dry-run"),
    };
    if a.apply.contains(&Fixer::Markup) && a.source.is_none() {
        bail!("the markup fixer needs --source");
    }

    let mut doc = input::read_document(&a.target, a.resources.strict)?;
    let target_lang = input::target_language(&a.resources, &a.target)?;
    let profile = input::profile(&a.resources, &target_lang)?;
    let source = a
        .source
        .as_deref()
        .map(|p| input::read_document(p, a.resources.strict))
        .transpose()?;

    let mut edits = Vec::new();
    let mut unfixed = Vec::new();
    let mut applied = Vec::new();
    for fixer in a.apply {
        if applied.contains(&fixer) {
            continue;
        }
        applied.push(fixer);
        let (fixed, e) = match fixer {
            Fixer::Spacing => fix_spacing(&doc, &profile),
            Fixer::Repetition => collapse_repetitions(&doc),
            Fixer::Markup => {
                let source = source.as_ref().expect("checked above");
                let alignment =
                    align_by_time(source, &doc, subqa_core::alignment::DEFAULT_THRESHOLD);
                let (fixed, e, errors) = reinsert_markup_document(source, &doc, &alignment);
                unfixed.extend(errors.iter().map(ToString::to_string));
                (fixed, e)
            }
        };
        doc = fixed;
        edits.extend(e);
    }
    for problem in &unfixed {
        eprintln!("notice: {problem}");
    }

    if let Some(out) = &destination {
        fs::write(out, serialize_document(&doc))
            .with_context(|| format!("{}: cannot write", out.display()))?;
    }
    let log = EditLog {
        file: a.target.display().to_string(),
        written_to: destination.map(|p| p.display().to_string()),
        edits: &edits,
        unfixed,
    };
    print(&format!("{}\n", serde_json::to_string_pretty(&log)?))?;
    Ok(ExitCode::SUCCESS)
}

fn stats(a: StatsArgs) -> Result<ExitCode> {
    let jobs = stats::plan(&a.inputs, &a.resources)?;
    let files = stats::collect(&jobs, &a.resources, a.jobs)?;
    let pair = stats::language_pair(&a.resources, &files);
    let report = aggregate(&files, pair)?;
    print(&emit_report(&report, a.format))?;
    Ok(ExitCode::SUCCESS)
}
