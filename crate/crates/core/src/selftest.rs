//! A fast randomized invariant suite, run by `boostlab selftest`.

use std::time::{Duration, Instant};

use num_traits::{One, Signed};

use crate::base_classes::BaseClassSpec;
use crate::boost::{self, BoostConfig, EdgeGraphState};
use crate::discrepancy::{self, SetSystem};
use crate::error::Result;
use crate::gamma_vc;
use crate::par::Exec;
use crate::rational::{self, Rational};
use crate::realizability::{self, verify_certificate};
use crate::rng::Rng;
use crate::sample::{correlation, LabeledSample, Pattern, SampleDistribution};

#[derive(Clone, Debug)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

type Check = fn(&mut Rng, Exec) -> Result<std::result::Result<String, String>>;

const PROPERTIES: &[(&str, Check)] = &[
    ("correlation-linear-in-q", correlation_linear),
    ("lp-routes-agree", lp_routes_agree),
    ("certificates-verify", certificates_verify),
    ("boost-edge-decay", boost_edge_decay),
    ("separation-iff-consistent", separation_iff_consistent),
    ("discrepancy-identity", discrepancy_identity),
    ("hadamard-advantage", hadamard_advantage),
    ("branch-and-bound-matches-exhaustive", bnb_matches_exhaustive),
    ("rng-deterministic", rng_deterministic),
];

/// Runs every property with a fixed seed. Errors count as failures.
pub fn run(seed: u64, exec: Exec) -> Vec<PropertyOutcome> {
    let mut root = Rng::seed_from(seed);
    PROPERTIES
        .iter()
        .map(|&(name, check)| {
            let mut rng = root.split();
            let start = Instant::now();
            let (passed, detail) = match check(&mut rng, exec) {
                Ok(Ok(d)) => (true, d),
                Ok(Err(d)) => (false, d),
                Err(e) => (false, format!("error: {e}")),
            };
            PropertyOutcome { name, passed, detail, elapsed: start.elapsed() }
        })
        .collect()
}

fn random_pattern(rng: &mut Rng, m: usize) -> Pattern {
    Pattern::new((0..m).map(|_| rng.sign()).collect()).expect("signs")
}

fn random_dist(rng: &mut Rng, m: usize) -> Result<SampleDistribution> {
    let counts: Vec<u64> = (0..m).map(|_| rng.below(10)).collect();
    if counts.iter().all(|&c| c == 0) {
        return Ok(SampleDistribution::uniform(m));
    }
    SampleDistribution::from_counts(&counts)
}

fn random_line_sample(rng: &mut Rng, m: usize) -> Result<LabeledSample> {
    let xs: Vec<i64> = (0..m as i64).collect();
    let labels: Vec<i8> = (0..m).map(|_| rng.sign()).collect();
    LabeledSample::from_1d(&xs, &labels)
}

fn correlation_linear(rng: &mut Rng, _: Exec) -> Result<std::result::Result<String, String>> {
    for trial in 0..200 {
        let m = 1 + rng.below_usize(8);
        let s = random_line_sample(rng, m)?;
        let (q1, q2) = (random_dist(rng, m)?, random_dist(rng, m)?);
        let alpha = rational::ratio(rng.below(11) as i64, 10);
        let mixed: Vec<Rational> = q1
            .weights()
            .iter()
            .zip(q2.weights())
            .map(|(a, b)| &alpha * a + (Rational::one() - &alpha) * b)
            .collect();
        let q = SampleDistribution::new(mixed)?;
        let b = random_pattern(rng, m);
        let lhs = correlation(&s, &q, &b)?;
        let rhs = &alpha * correlation(&s, &q1, &b)? + (Rational::one() - &alpha) * correlation(&s, &q2, &b)?;
        if lhs != rhs {
            return Ok(Err(format!("trial {trial}: {lhs} != {rhs}")));
        }
    }
    Ok(Ok("200 instances".into()))
}

fn random_finite_class(rng: &mut Rng, m: usize) -> Result<BaseClassSpec> {
    let k = 1 + rng.below_usize(5);
    BaseClassSpec::finite((0..k).map(|_| random_pattern(rng, m)).collect())
}

fn finite_sample(rng: &mut Rng, m: usize) -> Result<LabeledSample> {
    let points = (0..m).map(|i| vec![rational::int(i as i64)]).collect();
    LabeledSample::new(points, (0..m).map(|_| rng.sign()).collect())
}

fn lp_routes_agree(rng: &mut Rng, _: Exec) -> Result<std::result::Result<String, String>> {
    for trial in 0..60 {
        let m = 1 + rng.below_usize(6);
        let class = random_finite_class(rng, m)?;
        let s = finite_sample(rng, m)?;
        let (g, _) = realizability::gamma_star(&s, &class)?;
        let a = realizability::minmax_gamma_star(&s, &class)?;
        let b = realizability::hull_gamma_star(&s, &class)?;
        if g != a || b > g {
            return Ok(Err(format!("trial {trial}: game {g}, minmax {a}, hull {b}")));
        }
    }
    Ok(Ok("60 instances".into()))
}

fn certificates_verify(rng: &mut Rng, _: Exec) -> Result<std::result::Result<String, String>> {
    let classes = [BaseClassSpec::thresholds(), BaseClassSpec::stumps(2)?, BaseClassSpec::halfspaces(2)?];
    for trial in 0..60 {
        let class = &classes[trial % classes.len()];
        let m = 1 + rng.below_usize(6);
        let points: Vec<_> = (0..m)
            .map(|i| {
                if class.dim() == 1 {
                    vec![rational::int(i as i64)]
                } else {
                    vec![rational::int(i as i64), rational::int(rng.below(7) as i64)]
                }
            })
            .collect();
        let s = LabeledSample::new(points, (0..m).map(|_| rng.sign()).collect())?;
        let gamma = rational::ratio(1 + rng.below(6) as i64, 6);
        let cert = realizability::is_gamma_realizable(&s, class, &gamma)?;
        if !verify_certificate(&s, class, &cert)? {
            return Ok(Err(format!("trial {trial}: certificate rejected")));
        }
    }
    Ok(Ok("60 certificates".into()))
}

fn boost_edge_decay(rng: &mut Rng, exec: Exec) -> Result<std::result::Result<String, String>> {
    let class = BaseClassSpec::thresholds();
    for trial in 0..40 {
        let m = 2 + rng.below_usize(10);
        let s = random_line_sample(rng, m)?;
        let (gs, _) = realizability::gamma_star(&s, &class)?;
        let config = BoostConfig { exec, ..BoostConfig::full_erm(boost::default_max_rounds(m, Some(&gs))) };
        let (model, log) = boost::fit_traced(&s, &class, &config, rng)?;
        for r in &log {
            if r.edges_after >= r.edges_before || r.removed_fraction() < gs {
                return Ok(Err(format!("trial {trial}: round {} removed {}", r.round, r.removed_fraction())));
            }
        }
        let bound = 2.0 * (m as f64).ln() / rational::to_f64(&gs);
        if log.len() as f64 > bound.max(1.0) {
            return Ok(Err(format!("trial {trial}: T={} above {bound:.3}", log.len())));
        }
        for (x, &y) in s.points().iter().zip(s.labels()) {
            if model.predict(x)? != y {
                return Ok(Err(format!("trial {trial}: training point misclassified")));
            }
        }
    }
    Ok(Ok("40 fits".into()))
}

fn separation_iff_consistent(rng: &mut Rng, _: Exec) -> Result<std::result::Result<String, String>> {
    for trial in 0..300 {
        let m = 1 + rng.below_usize(6);
        let labels: Vec<i8> = (0..m).map(|_| rng.sign()).collect();
        let s = finite_sample(rng, m)?.relabel(labels.clone())?;
        let hyps: Vec<Pattern> = (0..rng.below_usize(4)).map(|_| random_pattern(rng, m)).collect();
        let sep = boost::separates(&hyps, &s)?;
        // a consistent cell labeling exists iff no cell holds both labels
        let mut state = EdgeGraphState::new(&s);
        for h in &hyps {
            state.apply(h.clone())?;
        }
        let sigs = state.signatures();
        let consistent = (0..m).all(|i| (0..m).all(|j| sigs[i] != sigs[j] || labels[i] == labels[j]));
        if sep != consistent {
            return Ok(Err(format!("trial {trial}: separates={sep}, consistent={consistent}")));
        }
    }
    Ok(Ok("300 instances".into()))
}

fn discrepancy_identity(rng: &mut Rng, _: Exec) -> Result<std::result::Result<String, String>> {
    for trial in 0..1000 {
        let m = 1 + rng.below_usize(10);
        let p = random_dist(rng, m)?;
        let (c, b) = (random_pattern(rng, m), random_pattern(rng, m));
        if !discrepancy::check_disc_identity(&p, &c, &b)? {
            return Ok(Err(format!("trial {trial}")));
        }
    }
    Ok(Ok("1000 instances".into()))
}

fn hadamard_advantage(_: &mut Rng, _: Exec) -> Result<std::result::Result<String, String>> {
    for t in [2, 4, 8] {
        let v = gamma_vc::verify_orthogonal_advantage(&gamma_vc::sylvester_rows(t)?)?;
        if !v.is_positive() || !gamma_vc::at_least_inverse_sqrt(&v, t) {
            return Ok(Err(format!("t={t}: value {v}")));
        }
    }
    Ok(Ok("t in 2, 4, 8".into()))
}

fn bnb_matches_exhaustive(rng: &mut Rng, exec: Exec) -> Result<std::result::Result<String, String>> {
    for trial in 0..40 {
        let n = 1 + rng.below_usize(10);
        let sets = (0..rng.below_usize(6)).map(|_| (0..n).filter(|_| rng.coin()).collect()).collect();
        let sys = SetSystem::new(n, sets)?;
        let a = discrepancy::min_discrepancy_exhaustive(&sys)?;
        let b = discrepancy::min_discrepancy_coloring_with(exec, &sys)?;
        if a != b {
            return Ok(Err(format!("trial {trial}: {a:?} vs {b:?}")));
        }
    }
    Ok(Ok("40 systems".into()))
}

fn rng_deterministic(_: &mut Rng, _: Exec) -> Result<std::result::Result<String, String>> {
    let draw = |seed| {
        let mut r = Rng::seed_from(seed);
        (0..64).map(|_| r.next_u64()).collect::<Vec<_>>()
    };
    let ok = draw(42) == draw(42) && draw(42) != draw(43);
    Ok(if ok { Ok("64 draws".into()) } else { Err("streams differ".into()) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_properties_pass() {
        for o in run(7, Exec::default()) {
            assert!(o.passed, "{}: {}", o.name, o.detail);
        }
    }
}
