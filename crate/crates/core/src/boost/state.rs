//! The edge graph of Graph Separation Boosting, kept implicitly.
//!
//! The graph's vertices are sample indices and its edges the opposite-label
//! pairs that no hypothesis chosen so far separates. Two indices are joined
//! exactly when they share a cell (a signature) and disagree on the label, so
//! cells plus per-cell label counts determine every degree. Each round
//! refines the cells with one hashing pass; the O(m²) edge set is never
//! materialised.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::sample::{LabeledSample, Pattern, SampleDistribution, Signature};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeGraphState {
    round: usize,
    labels: Vec<i8>,
    patterns: Vec<Pattern>,
    cells: Vec<u32>,
    degrees: Vec<u64>,
    remaining_edges: u64,
}

/// Partition refinement: new cell = (old cell, bit), renumbered in first-seen
/// order.
fn refine(cells: &[u32], pattern: &Pattern) -> Vec<u32> {
    let mut ids: HashMap<(u32, i8), u32> = HashMap::with_capacity(cells.len().min(1024));
    cells
        .iter()
        .zip(pattern.bits())
        .map(|(&c, &b)| {
            let next = ids.len() as u32;
            *ids.entry((c, b)).or_insert(next)
        })
        .collect()
}

/// Per-index count of opposite-label indices in the same cell, and the edge
/// total.
fn degrees(cells: &[u32], labels: &[i8]) -> (Vec<u64>, u64) {
    let ncells = cells.iter().max().map_or(0, |&c| c as usize + 1);
    let mut pos = vec![0u64; ncells];
    let mut neg = vec![0u64; ncells];
    for (&c, &y) in cells.iter().zip(labels) {
        if y == 1 {
            pos[c as usize] += 1;
        } else {
            neg[c as usize] += 1;
        }
    }
    let deg = cells
        .iter()
        .zip(labels)
        .map(|(&c, &y)| if y == 1 { neg[c as usize] } else { pos[c as usize] })
        .collect();
    let edges = pos.iter().zip(&neg).map(|(p, n)| p * n).sum();
    (deg, edges)
}

impl EdgeGraphState {
    /// Round-0 state: one cell, every opposite-label pair is an edge.
    pub fn new(sample: &LabeledSample) -> Self {
        Self::from_labels(sample.labels().to_vec())
    }

    pub(crate) fn from_labels(labels: Vec<i8>) -> Self {
        let cells = vec![0u32; labels.len()];
        let (degrees, remaining_edges) = degrees(&cells, &labels);
        EdgeGraphState { round: 0, labels, patterns: Vec::new(), cells, degrees, remaining_edges }
    }

    /// Number of hypotheses applied so far.
    pub fn round(&self) -> usize {
        self.round
    }

    pub fn remaining_edges(&self) -> u64 {
        self.remaining_edges
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    /// Cell id per index; ids are dense but otherwise arbitrary.
    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    pub fn signature(&self, index: usize) -> Signature {
        Pattern::new(self.patterns.iter().map(|p| p.get(index)).collect()).expect("±1")
    }

    pub fn signatures(&self) -> Vec<Signature> {
        (0..self.labels.len()).map(|i| self.signature(i)).collect()
    }

    pub fn distinct_cells(&self) -> usize {
        self.cells.iter().max().map_or(0, |&c| c as usize + 1)
    }

    /// Applies one more hypothesis and recomputes cells and degrees.
    pub fn apply(&mut self, pattern: Pattern) -> Result<()> {
        if pattern.len() != self.labels.len() {
            return Err(Error::contract(format!(
                "pattern of length {} on a sample of size {}",
                pattern.len(),
                self.labels.len()
            )));
        }
        self.cells = refine(&self.cells, &pattern);
        let (d, e) = degrees(&self.cells, &self.labels);
        self.degrees = d;
        self.remaining_edges = e;
        self.patterns.push(pattern);
        self.round += 1;
        Ok(())
    }
}

/// `P_i = deg(i) / Σ deg`, exact.
pub fn degree_distribution(state: &EdgeGraphState) -> Result<SampleDistribution> {
    if state.remaining_edges == 0 {
        return Err(Error::NoEdges);
    }
    SampleDistribution::from_counts(&state.degrees)
}

/// Whether every opposite-label pair is split by some hypothesis.
pub fn separates(hypotheses: &[Pattern], sample: &LabeledSample) -> Result<bool> {
    separates_labels(hypotheses, sample.labels())
}

pub(crate) fn separates_labels(hypotheses: &[Pattern], labels: &[i8]) -> Result<bool> {
    let mut state = EdgeGraphState::from_labels(labels.to_vec());
    for h in hypotheses {
        state.apply(h.clone())?;
    }
    Ok(state.remaining_edges == 0)
}
