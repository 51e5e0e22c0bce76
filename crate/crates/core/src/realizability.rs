//! Exact γ-realizability.
//!
//! A sample is γ-realizable by a class when every distribution over the
//! sample admits a hypothesis with correlation at least γ. The largest such γ
//! is the value γ* of the zero-sum game between a mixture `q` over the
//! class's restrictions and an adversarial distribution `p` over the sample:
//!
//! ```text
//! γ* = max_q min_i Σ_b q_b · y_i · b(x_i) = min_p max_b Σ_i p_i · y_i · b(x_i)
//! ```
//!
//! Exact membership of `γ·y` in the convex hull of the restrictions is a
//! stronger requirement: it asks for a mixture whose margins all equal γ.
//! The largest such γ never exceeds γ* and matches it on thresholds, but
//! can fall short when every optimal mixture leaves slack on some example
//! (decision stumps, arbitrary finite classes). All three programs are
//! solved exactly; certificates carry both optimal strategies and can be
//! checked without trusting the solver.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::base_classes::{evaluate_all, BaseClassSpec, HypothesisDesc, Restriction};
use crate::error::{Error, Result};
use crate::lp::{self, GameSolution, LinearProgram};
use crate::rational::{self, Rational};
use crate::sample::{correlation_raw, LabeledSample, Pattern, SampleDistribution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Realizable,
    NotRealizable,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MixtureEntry {
    pub hypothesis: HypothesisDesc,
    #[serde(with = "rational::serde_str")]
    pub weight: Rational,
}

/// Answer to "is this sample γ-realizable?" together with both optimal
/// strategies of the underlying game.
///
/// The mixture guarantees every example a margin of at least `gamma_star`;
/// the adversary holds every restriction to correlation at most
/// `gamma_star`. Together they pin `gamma_star` exactly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealizabilityCertificate {
    pub verdict: Verdict,
    #[serde(with = "rational::serde_str")]
    pub gamma: Rational,
    #[serde(with = "rational::serde_str")]
    pub gamma_star: Rational,
    pub mixture: Option<Vec<MixtureEntry>>,
    pub adversary: Option<SampleDistribution>,
}

/// Margin matrix `A[i][k] = y_i · b_k(x_i)`.
pub fn margin_matrix(labels: &[i8], patterns: &[Pattern]) -> Vec<Vec<Rational>> {
    let one = Rational::one();
    let neg = -Rational::one();
    labels
        .iter()
        .enumerate()
        .map(|(i, &y)| patterns.iter().map(|b| if y * b.get(i) == 1 { one.clone() } else { neg.clone() }).collect())
        .collect()
}

fn check_patterns(labels: &[i8], patterns: &[Pattern]) -> Result<()> {
    if labels.is_empty() {
        return Err(Error::contract("empty sample"));
    }
    if patterns.is_empty() {
        return Err(Error::contract("no patterns to mix"));
    }
    if let Some(b) = patterns.iter().find(|b| b.len() != labels.len()) {
        return Err(Error::contract(format!(
            "pattern of length {} on a sample of size {}",
            b.len(),
            labels.len()
        )));
    }
    Ok(())
}

/// Solves the game for a label vector against an explicit pattern list.
/// A pattern equal to the labels short-circuits to value 1.
pub fn solve_patterns(labels: &[i8], patterns: &[Pattern]) -> Result<GameSolution> {
    check_patterns(labels, patterns)?;
    if let Some(k) = patterns.iter().position(|b| b.bits() == labels) {
        let mut mixture = vec![Rational::zero(); patterns.len()];
        mixture[k] = Rational::one();
        return Ok(GameSolution {
            value: Rational::one(),
            mixture,
            adversary: SampleDistribution::uniform(labels.len()).weights().to_vec(),
        });
    }
    let sol = lp::solve_game(&margin_matrix(labels, patterns))?;
    Ok(sol)
}

/// γ* of a label vector against an explicit pattern list.
pub fn gamma_star_of_patterns(labels: &[i8], patterns: &[Pattern]) -> Result<Rational> {
    Ok(solve_patterns(labels, patterns)?.value)
}

fn certificate(
    gamma: Rational,
    restrictions: &[Restriction],
    sol: GameSolution,
) -> Result<RealizabilityCertificate> {
    let verdict = if sol.value >= gamma { Verdict::Realizable } else { Verdict::NotRealizable };
    let mixture = restrictions
        .iter()
        .zip(sol.mixture)
        .filter(|(_, w)| w.is_positive())
        .map(|(r, weight)| MixtureEntry { hypothesis: r.witness.clone(), weight })
        .collect();
    Ok(RealizabilityCertificate {
        verdict,
        gamma,
        gamma_star: sol.value,
        mixture: Some(mixture),
        adversary: Some(SampleDistribution::new(sol.adversary)?),
    })
}

fn solve_sample(sample: &LabeledSample, class: &BaseClassSpec) -> Result<(Vec<Restriction>, GameSolution)> {
    let restrictions = class.restrictions(sample.points())?;
    let patterns: Vec<Pattern> = restrictions.iter().map(|r| r.pattern.clone()).collect();
    let sol = solve_patterns(sample.labels(), &patterns)?;
    Ok((restrictions, sol))
}

/// Exact γ* with a certificate whose queried `gamma` is γ* itself.
pub fn gamma_star(sample: &LabeledSample, class: &BaseClassSpec) -> Result<(Rational, RealizabilityCertificate)> {
    let (restrictions, sol) = solve_sample(sample, class)?;
    let value = sol.value.clone();
    Ok((value.clone(), certificate(value, &restrictions, sol)?))
}

/// Decides whether the sample is `gamma`-realizable, `0 < gamma ≤ 1`.
pub fn is_gamma_realizable(
    sample: &LabeledSample,
    class: &BaseClassSpec,
    gamma: &Rational,
) -> Result<RealizabilityCertificate> {
    if !gamma.is_positive() || *gamma > Rational::one() {
        return Err(Error::contract(format!("gamma must lie in (0, 1], got {gamma}")));
    }
    let (restrictions, sol) = solve_sample(sample, class)?;
    certificate(gamma.clone(), &restrictions, sol)
}

/// γ* from the adversary's side alone: `min t` over distributions `p` with
/// every restriction's correlation at most `t`.
pub fn minmax_gamma_star(sample: &LabeledSample, class: &BaseClassSpec) -> Result<Rational> {
    let patterns = class.patterns(sample.points())?;
    let labels = sample.labels();
    check_patterns(labels, &patterns)?;
    let a = margin_matrix(labels, &patterns);
    let (m, k) = (labels.len(), patterns.len());
    // variables: p (m), t+, t-, slack (k)
    let n = m + 2 + k;
    let mut rows = Vec::with_capacity(k + 1);
    for j in 0..k {
        let mut row: Vec<Rational> = a.iter().map(|ai| ai[j].clone()).collect();
        row.push(-Rational::one());
        row.push(Rational::one());
        row.extend((0..k).map(|s| if s == j { Rational::one() } else { Rational::zero() }));
        rows.push(row);
    }
    let mut simplex_row = vec![Rational::one(); m];
    simplex_row.resize(n, Rational::zero());
    rows.push(simplex_row);
    let mut b = vec![Rational::zero(); k];
    b.push(Rational::one());
    let mut c = vec![Rational::zero(); n];
    c[m] = Rational::one();
    c[m + 1] = -Rational::one();
    Ok(lp::solve(&LinearProgram { a: rows, b, c })?.value)
}

/// Largest `γ` with `γ·y` in the convex hull of the restrictions. A lower
/// bound on γ*: its dual is the adversary LP with signed weights.
pub fn hull_gamma_star(sample: &LabeledSample, class: &BaseClassSpec) -> Result<Rational> {
    let patterns = class.patterns(sample.points())?;
    let labels = sample.labels();
    check_patterns(labels, &patterns)?;
    let (m, k) = (labels.len(), patterns.len());
    // variables: q (k), g+, g-;  Σ_b q_b b_i − g·y_i = 0,  Σ q = 1
    let n = k + 2;
    let mut rows = Vec::with_capacity(m + 1);
    for (i, &y) in labels.iter().enumerate() {
        let mut row: Vec<Rational> = patterns.iter().map(|b| rational::int(b.get(i) as i64)).collect();
        row.push(rational::int(-(y as i64)));
        row.push(rational::int(y as i64));
        rows.push(row);
    }
    let mut simplex_row = vec![Rational::one(); k];
    simplex_row.resize(n, Rational::zero());
    rows.push(simplex_row);
    let mut b = vec![Rational::zero(); m];
    b.push(Rational::one());
    let mut c = vec![Rational::zero(); n];
    c[k] = -Rational::one();
    c[k + 1] = Rational::one();
    Ok(-lp::solve(&LinearProgram { a: rows, b, c })?.value)
}

/// Re-checks a certificate with exact arithmetic. Restrictions are
/// re-enumerated and mixture hypotheses re-evaluated; nothing computed by
/// the LP is trusted. Returns `Ok(false)` for any failed inequality or
/// malformed field.
pub fn verify_certificate(
    sample: &LabeledSample,
    class: &BaseClassSpec,
    cert: &RealizabilityCertificate,
) -> Result<bool> {
    let expected = if cert.gamma_star >= cert.gamma { Verdict::Realizable } else { Verdict::NotRealizable };
    if cert.verdict != expected {
        return Ok(false);
    }
    let labels = sample.labels();
    let m = labels.len();

    let mixture_ok = match &cert.mixture {
        None => cert.verdict == Verdict::NotRealizable,
        Some(entries) => {
            if entries.is_empty()
                || entries.iter().any(|e| e.weight.is_negative() || !class.admits(&e.hypothesis))
                || entries.iter().map(|e| &e.weight).sum::<Rational>() != Rational::one()
            {
                return Ok(false);
            }
            let mut margins = vec![Rational::zero(); m];
            for e in entries {
                let pattern = match evaluate_all(&e.hypothesis, sample.points()) {
                    Ok(p) => p,
                    Err(_) => return Ok(false),
                };
                for (i, mi) in margins.iter_mut().enumerate() {
                    if labels[i] * pattern.get(i) == 1 {
                        *mi += &e.weight;
                    } else {
                        *mi -= &e.weight;
                    }
                }
            }
            margins.iter().all(|v| *v >= cert.gamma_star)
        }
    };
    if !mixture_ok {
        return Ok(false);
    }

    let adversary_ok = match &cert.adversary {
        None => cert.verdict == Verdict::Realizable,
        Some(p) => {
            if p.len() != m || !p.is_valid() {
                return Ok(false);
            }
            let patterns = class.patterns(sample.points())?;
            let mut best: Option<Rational> = None;
            for b in &patterns {
                let c = correlation_raw(labels, p.weights(), b)?;
                if best.as_ref().is_none_or(|v| c > *v) {
                    best = Some(c);
                }
            }
            best.is_some_and(|v| v <= cert.gamma_star)
        }
    };
    Ok(adversary_ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn alternating(m: usize) -> LabeledSample {
        let xs: Vec<i64> = (0..m as i64).collect();
        let ys: Vec<i8> = (0..m).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
        LabeledSample::from_1d(&xs, &ys).unwrap()
    }

    #[test]
    fn single_point_has_gamma_star_one() {
        let s = LabeledSample::from_1d(&[0], &[1]).unwrap();
        let (g, cert) = gamma_star(&s, &BaseClassSpec::thresholds()).unwrap();
        assert_eq!(g, int(1));
        assert!(verify_certificate(&s, &BaseClassSpec::thresholds(), &cert).unwrap());
    }

    #[test]
    fn three_point_alternating() {
        let s = alternating(3);
        let th = BaseClassSpec::thresholds();
        let (g, cert) = gamma_star(&s, &th).unwrap();
        assert_eq!(g, ratio(1, 3));
        assert!(verify_certificate(&s, &th, &cert).unwrap());

        let yes = is_gamma_realizable(&s, &th, &ratio(1, 3)).unwrap();
        assert_eq!(yes.verdict, Verdict::Realizable);
        let no = is_gamma_realizable(&s, &th, &ratio(34, 100)).unwrap();
        assert_eq!(no.verdict, Verdict::NotRealizable);
        assert_eq!(no.adversary.as_ref().unwrap(), &SampleDistribution::uniform(3));
        assert!(verify_certificate(&s, &th, &no).unwrap());
    }

    #[test]
    fn three_formulations_agree() {
        let th = BaseClassSpec::thresholds();
        for m in 1..=6 {
            let s = alternating(m);
            let g = gamma_star(&s, &th).unwrap().0;
            assert_eq!(minmax_gamma_star(&s, &th).unwrap(), g);
            assert_eq!(hull_gamma_star(&s, &th).unwrap(), g);
        }
    }

    #[test]
    fn hull_membership_can_undershoot() {
        let pts = [(0, 1), (0, 4), (1, 1), (1, 3), (4, 3)];
        let points = pts.iter().map(|&(a, b)| vec![int(a), int(b)]).collect();
        let s = LabeledSample::new(points, vec![1, 1, -1, 1, -1]).unwrap();
        let st = BaseClassSpec::stumps(2).unwrap();
        assert_eq!(gamma_star(&s, &st).unwrap().0, ratio(1, 3));
        assert_eq!(minmax_gamma_star(&s, &st).unwrap(), ratio(1, 3));
        assert_eq!(hull_gamma_star(&s, &st).unwrap(), ratio(1, 5));
    }

    #[test]
    fn gamma_out_of_range_is_rejected() {
        let s = alternating(2);
        let th = BaseClassSpec::thresholds();
        assert!(is_gamma_realizable(&s, &th, &int(0)).is_err());
        assert!(is_gamma_realizable(&s, &th, &ratio(3, 2)).is_err());
    }

    #[test]
    fn tampered_certificates_fail() {
        let s = alternating(5);
        let th = BaseClassSpec::thresholds();
        let (_, cert) = gamma_star(&s, &th).unwrap();

        let mut bad = cert.clone();
        bad.gamma_star += ratio(1, 1000);
        bad.gamma = bad.gamma_star.clone();
        assert!(!verify_certificate(&s, &th, &bad).unwrap());

        let mut bad = cert.clone();
        let mut w = bad.adversary.as_ref().unwrap().weights().to_vec();
        w[0] += ratio(1, 10);
        bad.adversary = serde_json::from_value(serde_json::json!({
            "weights": w.iter().map(rational::format).collect::<Vec<_>>()
        }))
        .unwrap();
        assert!(!verify_certificate(&s, &th, &bad).unwrap());

        let mut bad = cert.clone();
        bad.verdict = Verdict::NotRealizable;
        assert!(!verify_certificate(&s, &th, &bad).unwrap());
    }

    #[test]
    fn certificate_json_round_trip() {
        let s = alternating(3);
        let (_, cert) = gamma_star(&s, &BaseClassSpec::thresholds()).unwrap();
        let js = serde_json::to_string(&cert).unwrap();
        assert!(js.contains(r#""gamma_star":"1/3""#));
        let back: RealizabilityCertificate = serde_json::from_str(&js).unwrap();
        assert_eq!(back, cert);
    }
}
