use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::base_classes::{evaluate, HypothesisDesc};
use crate::error::Result;
use crate::rational::Rational;
use crate::sample::Pattern;

/// How the weak learner is fed each round.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoostMode {
    /// The learner sees the exact degree reweighting.
    FullErm,
    /// The learner sees `m0` indices drawn from the degree distribution.
    Sampled { m0: usize },
}

/// Label for signatures that never occurred in training.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnseenRule {
    #[default]
    NegativeDefault,
    /// Label of the closest training signature in Hamming distance; −1 when
    /// the closest ones disagree.
    HammingNearest,
}

/// Weak hypotheses plus the cell table that aggregates them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoostModel {
    pub hypotheses: Vec<HypothesisDesc>,
    /// Training signature → label; a cell is +1 iff a positive example lies
    /// in it.
    pub cell_table: BTreeMap<Pattern, i8>,
    pub rounds: usize,
    pub mode: BoostMode,
    #[serde(default)]
    pub unseen: UnseenRule,
}

impl BoostModel {
    pub(crate) fn build(
        hypotheses: Vec<HypothesisDesc>,
        signatures: &[Pattern],
        labels: &[i8],
        mode: BoostMode,
    ) -> Self {
        let mut cell_table = BTreeMap::new();
        for (s, &y) in signatures.iter().zip(labels) {
            let e = cell_table.entry(s.clone()).or_insert(-1);
            if y == 1 {
                *e = 1;
            }
        }
        let rounds = hypotheses.len();
        BoostModel { hypotheses, cell_table, rounds, mode, unseen: UnseenRule::NegativeDefault }
    }

    pub fn with_unseen_rule(mut self, rule: UnseenRule) -> Self {
        self.unseen = rule;
        self
    }

    pub fn signature_of(&self, x: &[Rational]) -> Result<Pattern> {
        let bits = self.hypotheses.iter().map(|h| evaluate(h, x)).collect::<Result<Vec<i8>>>()?;
        Pattern::new(bits)
    }

    pub fn predict(&self, x: &[Rational]) -> Result<i8> {
        let sig = self.signature_of(x)?;
        if let Some(&y) = self.cell_table.get(&sig) {
            return Ok(y);
        }
        Ok(match self.unseen {
            UnseenRule::NegativeDefault => -1,
            UnseenRule::HammingNearest => {
                let mut best = usize::MAX;
                let mut label = -1;
                for (s, &y) in &self.cell_table {
                    let d = s.hamming(&sig);
                    if d < best {
                        best = d;
                        label = y;
                    } else if d == best && y != label {
                        label = -1;
                    }
                }
                label
            }
        })
    }

    /// Number of distinct training signatures.
    pub fn distinct_signatures(&self) -> usize {
        self.cell_table.len()
    }
}
