//! AdaBoost with an exact-ERM weak learner, the weighted-majority baseline.
//!
//! Weights and coefficients are `f64`; the weak learner is the same
//! restriction scan the graph booster uses, so round counts are comparable.

use serde::{Deserialize, Serialize};

use crate::base_classes::{evaluate, BaseClassSpec, HypothesisDesc};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::sample::LabeledSample;

/// Correlations at or above this count as perfect.
pub const PERFECT_EDGE: f64 = 1.0 - 1e-12;

/// `sign(Σ α_t b_t(x))` with `sign(0) = +1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MajorityModel {
    pub hypotheses: Vec<HypothesisDesc>,
    pub alphas: Vec<f64>,
}

impl MajorityModel {
    pub fn predict(&self, x: &[Rational]) -> Result<i8> {
        let mut s = 0.0;
        for (h, a) in self.hypotheses.iter().zip(&self.alphas) {
            s += a * evaluate(h, x)? as f64;
        }
        Ok(if s >= 0.0 { 1 } else { -1 })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdaBoostFit {
    pub model: MajorityModel,
    /// Rounds actually run.
    pub rounds: usize,
    /// False when the budget ran out with training errors left.
    pub zero_training_error: bool,
    /// Weighted correlation of each round's hypothesis.
    pub edges: Vec<f64>,
    /// Training error after each round.
    pub training_errors: Vec<f64>,
}

fn training_error(scores: &[f64], labels: &[i8]) -> f64 {
    let wrong = scores.iter().zip(labels).filter(|(&s, &y)| (if s >= 0.0 { 1 } else { -1 }) != y).count();
    wrong as f64 / labels.len() as f64
}

/// Runs at most `rounds` rounds, stopping at zero training error.
pub fn adaboost_fit(sample: &LabeledSample, class: &BaseClassSpec, rounds: usize) -> Result<AdaBoostFit> {
    if rounds == 0 {
        return Err(Error::contract("rounds must be at least 1"));
    }
    let restrictions = class.restrictions(sample.points())?;
    let labels = sample.labels();
    let m = labels.len();
    let mut d = vec![1.0 / m as f64; m];
    let mut scores = vec![0.0; m];
    let mut model = MajorityModel { hypotheses: Vec::new(), alphas: Vec::new() };
    let mut edges = Vec::new();
    let mut errors = Vec::new();
    let mut bound = 1.0f64;

    for t in 0..rounds {
        let mut best = (0usize, f64::NEG_INFINITY);
        for (k, r) in restrictions.iter().enumerate() {
            let c: f64 = r.pattern.bits().iter().zip(labels).zip(&d).map(|((&b, &y), w)| (b * y) as f64 * w).sum();
            if c > best.1 {
                best = (k, c);
            }
        }
        let (k, r) = best;
        let chosen = &restrictions[k];
        edges.push(r);
        if r >= PERFECT_EDGE {
            // a single hypothesis fits the sample; anything mixed in is noise
            model = MajorityModel { hypotheses: vec![chosen.witness.clone()], alphas: vec![1.0] };
            errors.push(0.0);
            return Ok(AdaBoostFit { model, rounds: t + 1, zero_training_error: true, edges, training_errors: errors });
        }
        if r <= 0.0 {
            return Err(Error::WeakLearner(format!("round {}: best weighted correlation {r} is not positive", t + 1)));
        }
        let alpha = 0.5 * ((1.0 + r) / (1.0 - r)).ln();
        model.hypotheses.push(chosen.witness.clone());
        model.alphas.push(alpha);
        let bits = chosen.pattern.bits();
        for i in 0..m {
            let yb = (labels[i] * bits[i]) as f64;
            scores[i] += alpha * bits[i] as f64;
            d[i] *= (-alpha * yb).exp();
        }
        let z: f64 = d.iter().sum();
        d.iter_mut().for_each(|w| *w /= z);
        if (d.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
            return Err(Error::Internal("AdaBoost weights left the simplex".into()));
        }
        bound *= (1.0 - r * r).sqrt();
        let err = training_error(&scores, labels);
        if err > bound + 1e-9 {
            return Err(Error::Internal(format!(
                "round {}: training error {err} exceeds the product bound {bound}",
                t + 1
            )));
        }
        errors.push(err);
        if err == 0.0 {
            return Ok(AdaBoostFit { model, rounds: t + 1, zero_training_error: true, edges, training_errors: errors });
        }
    }
    Ok(AdaBoostFit { model, rounds, zero_training_error: false, edges, training_errors: errors })
}

/// First round with zero training error, or `None` if `budget` runs out.
pub fn rounds_to_zero_error(sample: &LabeledSample, class: &BaseClassSpec, budget: usize) -> Result<Option<usize>> {
    if budget == 0 {
        return Ok(None);
    }
    let fit = adaboost_fit(sample, class, budget)?;
    Ok(fit.zero_training_error.then_some(fit.rounds))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alternating(m: usize) -> LabeledSample {
        let xs: Vec<i64> = (0..m as i64).collect();
        let ys: Vec<i8> = (0..m).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
        LabeledSample::from_1d(&xs, &ys).unwrap()
    }

    #[test]
    fn realizable_labels_stop_after_one_round() {
        let s = LabeledSample::from_1d(&[0, 1, 2], &[-1, 1, 1]).unwrap();
        let th = BaseClassSpec::thresholds();
        assert_eq!(rounds_to_zero_error(&s, &th, 10).unwrap(), Some(1));
        let fit = adaboost_fit(&s, &th, 10).unwrap();
        assert_eq!(fit.model.hypotheses.len(), 1);
    }

    #[test]
    fn alternating_samples_reach_zero_error() {
        let th = BaseClassSpec::thresholds();
        for m in 3..=8 {
            let s = alternating(m);
            let fit = adaboost_fit(&s, &th, 500).unwrap();
            assert!(fit.zero_training_error, "m = {m}");
            for (x, &y) in s.points().iter().zip(s.labels()) {
                assert_eq!(fit.model.predict(x).unwrap(), y);
            }
        }
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let s = alternating(8);
        let fit = adaboost_fit(&s, &BaseClassSpec::thresholds(), 2).unwrap();
        assert!(!fit.zero_training_error);
        assert_eq!(fit.rounds, 2);
        assert_eq!(rounds_to_zero_error(&s, &BaseClassSpec::thresholds(), 0).unwrap(), None);
    }

    #[test]
    fn runs_are_reproducible() {
        let s = alternating(7);
        let th = BaseClassSpec::thresholds();
        assert_eq!(adaboost_fit(&s, &th, 100).unwrap(), adaboost_fit(&s, &th, 100).unwrap());
    }
}
