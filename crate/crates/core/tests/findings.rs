//! Invariants of findings produced by the full detector suite.

use std::path::Path;

use proptest::prelude::*;
use subqa_core::finding::Severity;
use subqa_core::format::{Cue, SubtitleDocument, SubtitleFormat, Timestamp};
use subqa_core::pipeline::{CheckOptions, Checker};
use subqa_core::report::{parse_findings, FindingsFile};
use subqa_core::resources::{builtin_profile, load_lexicons};

fn checker() -> Checker {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/resources");
    let lex = load_lexicons(&dir, "en", "de").unwrap();
    Checker::new(CheckOptions::new(builtin_profile("de").unwrap(), lex))
}

fn ts(ms: u32) -> Timestamp {
    Timestamp::from_millis(ms).unwrap()
}

fn docs() -> impl Strategy<Value = (SubtitleDocument, SubtitleDocument)> {
    let words = prop::sample::select(vec![
        "Los", "los", "ja", "Ja", "-", "- ", "...", "... ", "sehr", "<i>", "</i>", "Danke",
        "Junge", "15.000", "Fuß", "900", "feet", "MARY", "BART", "BEARD", "du", "Sie", "Quirks",
        "quirks", "  ", ",", "!", "eine", "wirklich", "lange", "Zeile",
    ]);
    let line = prop::collection::vec(words, 1..14).prop_map(|w| w.join(" "));
    let cue = (
        prop::collection::vec(line.clone(), 1..4),
        prop::collection::vec(line, 1..4),
        0u32..4000,
    );
    prop::collection::vec(cue, 1..8).prop_map(|rows| {
        let (mut src, mut tgt) = (Vec::new(), Vec::new());
        for (i, (s, t, len)) in rows.into_iter().enumerate() {
            let start = i as u32 * 5000;
            src.push(Cue::new(ts(start), ts(start + len), &s.join("\n")));
            tgt.push(Cue::new(ts(start), ts(start + len), &t.join("\n")));
        }
        (
            SubtitleDocument::new(SubtitleFormat::Vtt, src),
            SubtitleDocument::new(SubtitleFormat::Vtt, tgt),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn spans_and_indexes_stay_in_bounds((src, tgt) in docs()) {
        for f in checker().compare(&src, &tgt) {
            prop_assert!(f.cue_index < tgt.cues.len(), "{f:?}");
            if let Some(si) = f.source_index {
                prop_assert!(si < src.cues.len(), "{f:?}");
            }
            if let Some(span) = f.span {
                let len = tgt.cues[f.cue_index].plain_text().chars().count();
                prop_assert!(span.start <= span.end && span.end <= len, "{f:?} over {len} chars");
            }
        }
    }

    #[test]
    fn findings_survive_the_file_schema((src, tgt) in docs()) {
        let findings = checker().compare(&src, &tgt);
        let file = FindingsFile::new("t.de.vtt", tgt.cues.len(), findings);
        let json = serde_json::to_string(&file).unwrap();
        prop_assert_eq!(parse_findings(&json, Path::new("t.json")).unwrap(), file);
    }
}

#[test]
fn human_columns_carry_no_errors_without_lexicons() {
    // without a wordlist the lexicon-backed detectors stay silent
    let dir =
        Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/transcribed/spacing/human.de.vtt");
    let doc =
        subqa_core::format::parse_document(&std::fs::read_to_string(dir).unwrap(), None).unwrap();
    let options = CheckOptions::new(
        builtin_profile("de").unwrap(),
        subqa_core::resources::LexiconSet::empty("en", "de"),
    );
    let findings = Checker::new(options).lint(&doc);
    assert!(
        findings.iter().all(|f| f.severity != Severity::Error),
        "{findings:?}"
    );
}
