use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use subqa_core::report::ReportFormat;

/// Quality checks for translated subtitles.
///
/// Exit status: 0 when no error-severity findings, 1 when there are, 2 on
/// unreadable input or bad arguments.
#[derive(Debug, Parser)]
#[command(name = "subqa", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check one subtitle file against the guideline profile.
    Lint(LintArgs),
    /// Align a source and a target file and check the translation.
    Compare(CompareArgs),
    /// Apply automatic fixes and print the edit log.
    Fix(FixArgs),
    /// Aggregate findings into per-category percentages.
    Stats(StatsArgs),
}

#[derive(Debug, Args)]
pub struct Resources {
    /// Guideline profile: a built-in language code or a JSON profile file.
    /// Defaults to the target language.
    #[arg(long, value_name = "LANG|FILE")]
    pub profile: Option<String>,

    /// Resources directory (lexicons/, knp/, profanity/, units/).
    #[arg(long, value_name = "DIR", env = "SUBQA_RESOURCES")]
    pub lexicons: Option<PathBuf>,

    /// Source language; inferred from `<name>.<lang>.vtt` when omitted.
    #[arg(long, value_name = "LANG")]
    pub source_lang: Option<String>,

    /// Target language; inferred from `<name>.<lang>.vtt` when omitted.
    #[arg(long, value_name = "LANG")]
    pub target_lang: Option<String>,

    /// Treat structural parse warnings (overlaps, bad separators) as input errors.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct LintArgs {
    pub target: PathBuf,
    #[command(flatten)]
    pub resources: Resources,
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    pub source: PathBuf,
    pub target: PathBuf,
    #[command(flatten)]
    pub resources: Resources,
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fixer {
    Spacing,
    Repetition,
    Markup,
}

#[derive(Debug, Args)]
pub struct FixArgs {
    pub target: PathBuf,

    /// Fixers to run, in order.
    #[arg(long, value_enum, value_delimiter = ',', required = true)]
    pub apply: Vec<Fixer>,

    /// Source file; required by the markup fixer.
    #[arg(long)]
    pub source: Option<PathBuf>,

    /// Where to write the fixed file.
    #[arg(long, conflicts_with_all = ["in_place", "dry_run"])]
    pub out: Option<PathBuf>,

    /// Overwrite the target file.
    #[arg(long, conflicts_with = "dry_run")]
    pub in_place: bool,

    /// Print the edit log without writing anything.
    #[arg(long)]
    pub dry_run: bool,

    #[command(flatten)]
    pub resources: Resources,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// Findings JSON files, subtitle files or directories of either.
    /// Subtitle files named `<name>.<lang>.vtt` are paired by name.
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,

    #[command(flatten)]
    pub resources: Resources,

    /// json, csv, text or plotdata.
    #[arg(long, default_value = "text", value_parser = parse_report_format)]
    pub format: ReportFormat,

    /// Files checked in parallel; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

fn parse_report_format(s: &str) -> Result<ReportFormat, String> {
    s.parse()
}
