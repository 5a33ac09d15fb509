//! Time-based pairing of source and target cues.
//!
//! A source cue and a target cue are linked when their intersection covers at
//! least `threshold` of the shorter one. Pairs are the connected components
//! of that link graph, so a 2→1 merge or a 1→2 split becomes a single pair.

use serde::{Deserialize, Serialize};

use crate::finding::{ErrorCategory, Finding, Severity};
use crate::format::{Cue, SubtitleDocument};

pub const DEFAULT_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlignedCuePair {
    pub source_indices: Vec<usize>,
    pub target_indices: Vec<usize>,
    /// Temporal Jaccard index of the union of source intervals against the
    /// union of target intervals.
    pub overlap: f64,
}

impl AlignedCuePair {
    pub fn is_one_to_one(&self) -> bool {
        self.source_indices.len() == 1 && self.target_indices.len() == 1
    }

    pub fn is_clean(&self, threshold: f64) -> bool {
        self.is_one_to_one() && self.overlap >= threshold
    }

    /// `(source, target)` positions of a 1-to-1 pair.
    pub fn single(&self) -> Option<(usize, usize)> {
        self.is_one_to_one()
            .then(|| (self.source_indices[0], self.target_indices[0]))
    }

    /// Human-readable shape such as "2→1 merge".
    pub fn shape(&self) -> String {
        let (s, t) = (self.source_indices.len(), self.target_indices.len());
        match (s, t) {
            (1, 0) => "unmatched source cue".to_owned(),
            (0, 1) => "0→1 unmatched target cue".to_owned(),
            (_, 0) => format!("{s}→0 unmatched source cues"),
            (0, _) => format!("0→{t} unmatched target cues"),
            (_, 1) => format!("{s}→1 merge"),
            (1, _) => format!("1→{t} split"),
            _ => format!("{s}→{t} regrouping"),
        }
    }
}

fn interval(cue: &Cue) -> (u32, u32) {
    let (s, e) = (cue.start.millis(), cue.end.millis());
    (s, e.max(s))
}

fn linked(a: (u32, u32), b: (u32, u32), threshold: f64) -> bool {
    let (la, lb) = (a.1 - a.0, b.1 - b.0);
    if la == 0 || lb == 0 {
        // points match by containment
        let (point, other) = if la == 0 { (a.0, b) } else { (b.0, a) };
        return other.0 <= point && point <= other.1;
    }
    let inter = a.1.min(b.1).saturating_sub(a.0.max(b.0));
    inter > 0 && f64::from(inter) / f64::from(la.min(lb)) >= threshold
}

/// Total length covered by a set of intervals.
fn union_length(mut intervals: Vec<(u32, u32)>) -> u64 {
    intervals.sort_unstable();
    let mut total = 0u64;
    let mut current: Option<(u32, u32)> = None;
    for (s, e) in intervals {
        match current {
            Some((cs, ce)) if s <= ce => current = Some((cs, ce.max(e))),
            Some((cs, ce)) => {
                total += u64::from(ce - cs);
                current = Some((s, e));
            }
            None => current = Some((s, e)),
        }
    }
    if let Some((cs, ce)) = current {
        total += u64::from(ce - cs);
    }
    total
}

fn jaccard(a: &[(u32, u32)], b: &[(u32, u32)]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    let union = union_length(a.iter().chain(b).copied().collect());
    if union == 0 {
        // all points; they are only grouped when they coincide
        return 1.0;
    }
    let inter = union_length(a.to_vec()) + union_length(b.to_vec()) - union;
    inter as f64 / union as f64
}

struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Partitions the cues of both documents into aligned pairs, ordered by the
/// earliest start time in each pair.
pub fn align_by_time(
    source: &SubtitleDocument,
    target: &SubtitleDocument,
    threshold: f64,
) -> Vec<AlignedCuePair> {
    let src: Vec<(u32, u32)> = source.cues.iter().map(interval).collect();
    let tgt: Vec<(u32, u32)> = target.cues.iter().map(interval).collect();
    let n = src.len();
    let mut sets = DisjointSet::new(n + tgt.len());

    let mut src_order: Vec<usize> = (0..n).collect();
    src_order.sort_by_key(|&i| src[i]);
    let mut tgt_order: Vec<usize> = (0..tgt.len()).collect();
    tgt_order.sort_by_key(|&j| tgt[j]);

    // sweep: targets whose start is not after the current source end
    let mut next = 0;
    let mut active: Vec<usize> = Vec::new();
    for &i in &src_order {
        let (s, e) = src[i];
        while next < tgt_order.len() && tgt[tgt_order[next]].0 <= e {
            active.push(tgt_order[next]);
            next += 1;
        }
        active.retain(|&j| tgt[j].1 >= s);
        for &j in &active {
            if linked(src[i], tgt[j], threshold) {
                sets.union(i, n + j);
            }
        }
    }

    let mut groups: std::collections::BTreeMap<usize, (Vec<usize>, Vec<usize>)> =
        std::collections::BTreeMap::new();
    for i in 0..n {
        groups.entry(sets.find(i)).or_default().0.push(i);
    }
    for j in 0..tgt.len() {
        groups.entry(sets.find(n + j)).or_default().1.push(j);
    }

    let mut pairs: Vec<(u32, AlignedCuePair)> = groups
        .into_values()
        .map(|(source_indices, target_indices)| {
            let s_iv: Vec<_> = source_indices.iter().map(|&i| src[i]).collect();
            let t_iv: Vec<_> = target_indices.iter().map(|&j| tgt[j]).collect();
            let earliest = s_iv.iter().chain(&t_iv).map(|iv| iv.0).min().unwrap_or(0);
            let overlap = jaccard(&s_iv, &t_iv);
            (
                earliest,
                AlignedCuePair {
                    source_indices,
                    target_indices,
                    overlap,
                },
            )
        })
        .collect();
    pairs.sort_by(|(ea, a), (eb, b)| {
        let key = |p: &AlignedCuePair| {
            (
                p.source_indices.first().copied().unwrap_or(usize::MAX),
                p.target_indices.first().copied().unwrap_or(usize::MAX),
            )
        };
        ea.cmp(eb).then_with(|| key(a).cmp(&key(b)))
    });
    pairs.into_iter().map(|(_, p)| p).collect()
}

/// Latest target cue starting at or before `millis`, for anchoring findings
/// about source cues that have no counterpart.
fn anchor_target(target_starts: &[(u32, usize)], millis: u32) -> usize {
    let pos = target_starts.partition_point(|&(s, _)| s <= millis);
    if pos == 0 {
        target_starts.first().map_or(0, |&(_, j)| j)
    } else {
        target_starts[pos - 1].1
    }
}

/// One finding per pair that is not 1-to-1.
///
/// `source` and `target` are only used to anchor unmatched source cues to a
/// nearby target cue; pass the documents the alignment was built from.
pub fn check_block_count(
    alignment: &[AlignedCuePair],
    source: &SubtitleDocument,
    target: &SubtitleDocument,
) -> Vec<Finding> {
    let mut starts: Vec<(u32, usize)> = target
        .cues
        .iter()
        .enumerate()
        .map(|(j, c)| (c.start.millis(), j))
        .collect();
    starts.sort_unstable();

    alignment
        .iter()
        .filter(|p| !p.is_one_to_one())
        .map(|pair| {
            let shape = pair.shape();
            let cues = |side: &str, idx: &[usize]| {
                let list: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
                format!("{side} {}", list.join(","))
            };
            let mut parts = Vec::new();
            if !pair.source_indices.is_empty() {
                parts.push(cues("source", &pair.source_indices));
            }
            if !pair.target_indices.is_empty() {
                parts.push(cues("target", &pair.target_indices));
            }
            let message = format!("block count changed: {shape} ({})", parts.join("; "));
            let (cue_index, source_index) = match pair.target_indices.first() {
                Some(&j) => (j, pair.source_indices.first().copied()),
                None => {
                    let s = pair.source_indices[0];
                    (
                        anchor_target(&starts, source.cues[s].start.millis()),
                        Some(s),
                    )
                }
            };
            let mut f = Finding::new(
                ErrorCategory::BlockCountIntegrity,
                cue_index,
                Severity::Error,
                message,
            );
            f.source_index = source_index;
            f
        })
        .collect()
}
