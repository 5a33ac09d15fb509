//! Gathering findings from mixed inputs for `subqa stats`.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use rayon::prelude::*;
use subqa_core::format::SubtitleFormat;
use subqa_core::pipeline::Checker;
use subqa_core::report::{ingest_annotations, FindingsFile, LanguagePair};

use crate::args::Resources;
use crate::input::{checker, language_from_name, read_document, source_language};

/// One unit of work; each yields one findings file.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Job {
    Findings(PathBuf),
    Lint {
        target: PathBuf,
        langs: (String, String),
    },
    Compare {
        source: PathBuf,
        target: PathBuf,
        langs: (String, String),
    },
}

impl Job {
    fn sort_key(&self) -> &Path {
        match self {
            Job::Findings(p) => p,
            Job::Lint { target, .. } | Job::Compare { target, .. } => target,
        }
    }

    fn langs(&self) -> Option<&(String, String)> {
        match self {
            Job::Findings(_) => None,
            Job::Lint { langs, .. } | Job::Compare { langs, .. } => Some(langs),
        }
    }
}

fn is_subtitle(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .and_then(SubtitleFormat::from_extension)
        .is_some()
}

fn is_json(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

/// Expands directories (recursively, in name order) into their findings and
/// subtitle files. Explicit file arguments are kept whatever their name.
fn expand(inputs: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for input in inputs {
        if input.is_dir() {
            let mut entries: Vec<PathBuf> = fs::read_dir(input)
                .with_context(|| format!("{}: cannot list directory", input.display()))?
                .map(|e| e.map(|e| e.path()))
                .collect::<Result<_, _>>()
                .with_context(|| format!("{}: cannot list directory", input.display()))?;
            entries.sort();
            let (dirs, files): (Vec<_>, Vec<_>) = entries.into_iter().partition(|p| p.is_dir());
            out.extend(files.into_iter().filter(|p| is_json(p) || is_subtitle(p)));
            out.extend(expand(&dirs)?);
        } else if input.is_file() {
            out.push(input.clone());
        } else {
            bail!("{}: no such file or directory", input.display());
        }
    }
    Ok(out)
}

/// Turns input paths into jobs: findings files are read as-is, subtitle files
/// sharing a `<name>` are compared source against target, lone subtitle files
/// are linted.
pub fn plan(inputs: &[PathBuf], resources: &Resources) -> Result<Vec<Job>> {
    let mut jobs = Vec::new();
    let mut groups: BTreeMap<PathBuf, BTreeMap<String, PathBuf>> = BTreeMap::new();
    for path in expand(inputs)? {
        if !is_subtitle(&path) {
            jobs.push(Job::Findings(path));
            continue;
        }
        match language_from_name(&path) {
            Some(lang) => {
                let stem = path
                    .file_stem()
                    .and_then(|s| s.to_str())
                    .unwrap_or_default();
                let name = stem.rsplit_once('.').map_or(stem, |(n, _)| n);
                let key = path.with_file_name(name);
                if let Some(previous) = groups.entry(key).or_default().insert(lang, path.clone()) {
                    bail!(
                        "{} and {} have the same name and language",
                        previous.display(),
                        path.display()
                    );
                }
            }
            None => {
                let target_lang = resources.target_lang.clone().ok_or_else(|| {
                    anyhow!("{}: cannot tell the language; pass --target-lang or name it <name>.<lang>.vtt", path.display())
                })?;
                jobs.push(Job::Lint {
                    target: path,
                    langs: (source_language(resources, None), target_lang),
                });
            }
        }
    }

    let source_lang = source_language(resources, None);
    for (name, files) in groups {
        if files.len() == 1 {
            let (lang, target) = files.into_iter().next().expect("one file");
            jobs.push(Job::Lint {
                target,
                langs: (source_lang.clone(), lang),
            });
            continue;
        }
        let source = files.get(&source_lang).cloned().ok_or_else(|| {
            anyhow!(
                "{}.*: {} files but none in the source language `{source_lang}`; pass --source-lang",
                name.display(),
                files.len()
            )
        })?;
        for (lang, target) in files.into_iter().filter(|(l, _)| *l != source_lang) {
            jobs.push(Job::Compare {
                source: source.clone(),
                target,
                langs: (source_lang.clone(), lang),
            });
        }
    }
    jobs.sort_by(|a, b| a.sort_key().cmp(b.sort_key()));
    Ok(jobs)
}

fn run(
    job: &Job,
    checkers: &HashMap<(String, String), Checker>,
    strict: bool,
) -> Result<FindingsFile> {
    let with_langs = |mut file: FindingsFile, (s, t): &(String, String)| {
        file.source_lang = Some(s.clone());
        file.target_lang = Some(t.clone());
        file
    };
    match job {
        Job::Findings(path) => Ok(ingest_annotations(path)?),
        Job::Lint { target, langs } => {
            let doc = read_document(target, strict)?;
            let findings = checkers[langs].lint(&doc);
            Ok(with_langs(
                FindingsFile::new(target.display().to_string(), doc.cues.len(), findings),
                langs,
            ))
        }
        Job::Compare {
            source,
            target,
            langs,
        } => {
            let src = read_document(source, strict)?;
            let tgt = read_document(target, strict)?;
            let findings = checkers[langs].compare(&src, &tgt);
            Ok(with_langs(
                FindingsFile::new(target.display().to_string(), tgt.cues.len(), findings),
                langs,
            ))
        }
    }
}

/// Runs every job on up to `jobs` threads; results come back in job order.
pub fn collect(jobs: &[Job], resources: &Resources, threads: usize) -> Result<Vec<FindingsFile>> {
    let mut checkers = HashMap::new();
    for langs in jobs.iter().filter_map(Job::langs) {
        if !checkers.contains_key(langs) {
            checkers.insert(langs.clone(), checker(resources, &langs.0, &langs.1)?);
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()?;
    pool.install(|| {
        jobs.par_iter()
            .map(|job| run(job, &checkers, resources.strict))
            .collect()
    })
}

/// Language pair for the report header: flags first, then the inputs.
pub fn language_pair(resources: &Resources, files: &[FindingsFile]) -> LanguagePair {
    let first =
        |f: fn(&FindingsFile) -> &Option<String>| files.iter().find_map(|file| f(file).clone());
    LanguagePair {
        source: resources
            .source_lang
            .clone()
            .or_else(|| first(|f| &f.source_lang))
            .unwrap_or_default(),
        target: resources
            .target_lang
            .clone()
            .or_else(|| first(|f| &f.target_lang))
            .unwrap_or_default(),
    }
}
