//! Quality assurance for translated subtitles.
//!
//! Parses WebVTT/SRT files, aligns a source and a target track by time,
//! detects guideline and translation defects, applies the mechanical fixes
//! and aggregates findings into per-category reports.

pub mod alignment;
pub mod finding;
pub mod fixers;
pub mod format;
pub mod guideline;
pub mod langid;
pub mod markup;
pub mod pipeline;
pub mod report;
pub mod resources;
pub mod text;
pub mod translation;
