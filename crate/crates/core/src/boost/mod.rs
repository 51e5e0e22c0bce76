//! Graph Separation Boosting.
//!
//! Each round reweights the sample by vertex degree in the graph of
//! not-yet-separated opposite-label pairs, asks the weak learner for a
//! hypothesis, and drops every pair the hypothesis splits. Once no pair
//! remains, every cell of the induced partition is label-pure and the model
//! labels a cell +1 iff it holds a positive training example.
//!
//! A hypothesis `b` with correlation `c` under the degree distribution
//! removes at least a `c` fraction of the remaining edges; this is checked
//! exactly every round.

mod learner;
mod model;
mod state;

use num_traits::{Signed, ToPrimitive};

pub use learner::{ExternalLearner, WeakLearner};
pub use model::{BoostMode, BoostModel, UnseenRule};
pub use state::{degree_distribution, separates, EdgeGraphState};

use learner::Query;

use crate::base_classes::{BaseClassSpec, HypothesisDesc, Restriction};
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::rational::{self, Rational};
use crate::rng::{Rng, WeightedIndex};
use crate::sample::{correlation_raw, LabeledSample, Pattern};

/// One round's bookkeeping.
#[derive(Clone, Debug, PartialEq)]
pub struct RoundRecord {
    pub round: usize,
    pub edges_before: u64,
    pub edges_after: u64,
    /// Correlation of the chosen hypothesis under the degree distribution.
    pub correlation: Rational,
    pub pattern: Pattern,
}

impl RoundRecord {
    /// Fraction of edges this round removed.
    pub fn removed_fraction(&self) -> Rational {
        rational::ratio_u64(self.edges_before - self.edges_after, self.edges_before)
    }
}

/// Everything a fit needs besides the sample and class.
#[derive(Clone, Debug)]
pub struct BoostConfig {
    pub weak: WeakLearner,
    pub mode: BoostMode,
    pub max_rounds: usize,
    pub exec: Exec,
}

impl BoostConfig {
    pub fn full_erm(max_rounds: usize) -> Self {
        BoostConfig { weak: WeakLearner::Erm, mode: BoostMode::FullErm, max_rounds, exec: Exec::default() }
    }

    pub fn sampled(m0: usize, max_rounds: usize) -> Self {
        BoostConfig { weak: WeakLearner::Erm, mode: BoostMode::Sampled { m0 }, max_rounds, exec: Exec::default() }
    }
}

/// `⌈32·(v+1)/γ²⌉`.
pub fn default_m0(vc: usize, gamma: &Rational) -> Result<usize> {
    if !gamma.is_positive() {
        return Err(Error::contract("gamma must be positive"));
    }
    let v = rational::int(32 * (vc as i64 + 1)) / (gamma * gamma);
    v.ceil().to_integer().to_usize().ok_or_else(|| Error::SizeGuard("m0 does not fit in usize".into()))
}

/// `64·2·ln m/γ` when γ is known, otherwise `10·m`; at least 1.
pub fn default_max_rounds(m: usize, gamma: Option<&Rational>) -> usize {
    let r = match gamma {
        Some(g) if g.is_positive() => (128.0 * (m as f64).ln() / rational::to_f64(g)).ceil() as usize,
        _ => 10 * m,
    };
    r.max(1)
}

/// One round: reweight, query, refine. Errors with [`Error::NoEdges`] when
/// nothing is left to separate.
pub fn boost_round(
    state: &mut EdgeGraphState,
    sample: &LabeledSample,
    class: &BaseClassSpec,
    restrictions: &[Restriction],
    config: &BoostConfig,
    rng: &mut Rng,
) -> Result<(HypothesisDesc, RoundRecord)> {
    if state.remaining_edges() == 0 {
        return Err(Error::NoEdges);
    }
    let degrees = state.degrees().to_vec();
    let (h, pattern) = match config.mode {
        BoostMode::FullErm => config.weak.learn(config.exec, sample, class, restrictions, Query::Weighted(&degrees))?,
        BoostMode::Sampled { m0 } => {
            if m0 == 0 {
                return Err(Error::contract("m0 must be positive"));
            }
            let dist = WeightedIndex::new(&degrees).ok_or(Error::NoEdges)?;
            let draws: Vec<usize> = (0..m0).map(|_| dist.sample(rng)).collect();
            let mut counts = vec![0u64; degrees.len()];
            for &i in &draws {
                counts[i] += 1;
            }
            config.weak.learn(config.exec, sample, class, restrictions, Query::Sampled { draws: &draws, counts: &counts })?
        }
    };
    let total: u64 = degrees.iter().sum();
    let p: Vec<Rational> = degrees.iter().map(|&d| rational::ratio_u64(d, total)).collect();
    let correlation = correlation_raw(sample.labels(), &p, &pattern)?;

    let edges_before = state.remaining_edges();
    state.apply(pattern.clone())?;
    let record = RoundRecord {
        round: state.round(),
        edges_before,
        edges_after: state.remaining_edges(),
        correlation,
        pattern,
    };
    if record.removed_fraction() < record.correlation {
        return Err(Error::Internal(format!(
            "round {}: removed fraction {} is below the correlation {}",
            record.round,
            record.removed_fraction(),
            record.correlation
        )));
    }
    Ok((h, record))
}

/// Fits until the sample is separated.
pub fn fit(sample: &LabeledSample, class: &BaseClassSpec, config: &BoostConfig, rng: &mut Rng) -> Result<BoostModel> {
    Ok(fit_traced(sample, class, config, rng)?.0)
}

/// [`fit`] plus the per-round log.
pub fn fit_traced(
    sample: &LabeledSample,
    class: &BaseClassSpec,
    config: &BoostConfig,
    rng: &mut Rng,
) -> Result<(BoostModel, Vec<RoundRecord>)> {
    if config.max_rounds == 0 {
        return Err(Error::contract("max_rounds must be at least 1"));
    }
    if sample.dim() != class.dim() {
        return Err(Error::Dimension { expected: class.dim(), got: sample.dim() });
    }
    let restrictions = match config.weak {
        WeakLearner::Erm => class.restrictions(sample.points())?,
        WeakLearner::External(_) => Vec::new(),
    };
    let mut state = EdgeGraphState::new(sample);
    let mut hypotheses = Vec::new();
    let mut log = Vec::new();
    while state.remaining_edges() > 0 {
        if hypotheses.len() == config.max_rounds {
            return Err(Error::MaxRoundsExceeded {
                rounds: config.max_rounds,
                remaining_edges: state.remaining_edges(),
            });
        }
        let (h, rec) = boost_round(&mut state, sample, class, &restrictions, config, rng)?;
        hypotheses.push(h);
        log.push(rec);
    }
    let model = BoostModel::build(hypotheses, &state.signatures(), sample.labels(), config.mode.clone());
    debug_assert!(sample.points().iter().zip(sample.labels()).all(|(x, &y)| model.predict(x).ok() == Some(y)));
    Ok((model, log))
}
