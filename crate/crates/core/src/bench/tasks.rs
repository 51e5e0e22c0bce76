//! Seeded task generators.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::base_classes::BaseClassSpec;
use crate::error::{Error, Result};
use crate::gamma_vc::hadamard_class;
use crate::rational::{self, Rational};
use crate::realizability::gamma_star;
use crate::rng::Rng;
use crate::sample::{LabeledSample, Point};

/// Task families. One-dimensional families place training points at
/// `0, 1, …, m-1`; their test points are `u/1024 − 1/2` for uniform
/// `u ∈ [0, 1024·m)`, labelled like the nearest training point (halves
/// round up).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum TaskFamily {
    /// Labels `+, −, +, …`.
    AlternatingThresholds { m: usize },
    /// Labels start at + and flip at `k` distinct uniformly chosen gaps.
    KSignChanges { m: usize, k: usize },
    /// A labeling of the grid `{0..n-1}^d`, uniform unless `labels` fixes it
    /// (row-major order). Train and test points are uniform grid draws;
    /// without `m` the training set is the whole grid.
    GridRandomLabels {
        n: usize,
        d: usize,
        #[serde(default)]
        m: Option<usize>,
        #[serde(default)]
        labels: Option<Vec<i8>>,
    },
    /// Uniformly random labels on the `s·t` domain points of the Hadamard
    /// block class of order `t`; every such labeling is `1/√t`-realizable.
    /// Train and test draws are uniform domain indices.
    FiniteClassMixture { t: usize, s: usize, m: usize },
}

impl fmt::Display for TaskFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TaskFamily::AlternatingThresholds { m } => write!(f, "alternating-thresholds({m})"),
            TaskFamily::KSignChanges { m, k } => write!(f, "k-sign-changes({m},{k})"),
            TaskFamily::GridRandomLabels { n, d, .. } => write!(f, "grid-random-labels({n},{d})"),
            TaskFamily::FiniteClassMixture { t, s, m } => write!(f, "finite-class-mixture({t},{s},{m})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Task {
    pub family: TaskFamily,
    pub class: BaseClassSpec,
    pub train: LabeledSample,
    pub test: LabeledSample,
    /// Exact γ* of the training sample, computed at generation time.
    pub gamma_star: Rational,
}

impl TaskFamily {
    /// Class used when the configuration does not override it.
    pub fn default_class(&self) -> Result<BaseClassSpec> {
        match self {
            TaskFamily::AlternatingThresholds { .. } | TaskFamily::KSignChanges { .. } => Ok(BaseClassSpec::thresholds()),
            TaskFamily::GridRandomLabels { d, .. } => {
                if *d <= 3 {
                    BaseClassSpec::halfspaces(*d)
                } else {
                    BaseClassSpec::stumps(*d)
                }
            }
            TaskFamily::FiniteClassMixture { t, s, .. } => Ok(BaseClassSpec::new(crate::ClassKind::Finite(hadamard_class(*t, *s)?))?),
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(format!("{self}: {msg}")));
        match self {
            TaskFamily::AlternatingThresholds { m } if *m == 0 => bad("m must be positive".into()),
            TaskFamily::KSignChanges { m, k } if *m == 0 || *k >= *m => bad("need m ≥ 1 and k < m".into()),
            TaskFamily::GridRandomLabels { n, d, m, labels } => {
                if *n == 0 || *d == 0 || m == &Some(0) {
                    return bad("n, d and m must be positive".into());
                }
                let size = n.checked_pow(*d as u32).filter(|&s| s <= 1 << 16);
                match (size, labels) {
                    (None, _) => bad("grid has more than 65536 points".into()),
                    (Some(s), Some(l)) if l.len() != s || l.iter().any(|&y| y != 1 && y != -1) => {
                        bad(format!("labels must be {s} values of ±1"))
                    }
                    _ => Ok(()),
                }
            }
            TaskFamily::FiniteClassMixture { m, .. } if *m == 0 => bad("m must be positive".into()),
            _ => Ok(()),
        }
    }

    /// Draws a task. The class is `class` if given, else the default.
    pub fn generate(&self, class: Option<&BaseClassSpec>, m_test: usize, rng: &mut Rng) -> Result<Task> {
        self.validate()?;
        let class = match class {
            Some(c) => c.clone(),
            None => self.default_class()?,
        };
        let (train, test) = match self {
            TaskFamily::AlternatingThresholds { m } => {
                let labels: Vec<i8> = (0..*m).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
                line_task(&labels, m_test, rng)?
            }
            TaskFamily::KSignChanges { m, k } => {
                let mut gaps: Vec<usize> = (1..*m).collect();
                rng.shuffle(&mut gaps);
                let mut flips = vec![false; *m];
                for &g in &gaps[..*k] {
                    flips[g] = true;
                }
                let mut y = 1i8;
                let labels: Vec<i8> = flips
                    .iter()
                    .map(|&f| {
                        if f {
                            y = -y;
                        }
                        y
                    })
                    .collect();
                line_task(&labels, m_test, rng)?
            }
            TaskFamily::GridRandomLabels { n, d, m, labels } => {
                let grid = grid_points(*n, *d);
                let c: Vec<i8> = match labels {
                    Some(l) => l.clone(),
                    None => (0..grid.len()).map(|_| rng.sign()).collect(),
                };
                let train = match m {
                    None => LabeledSample::new(grid.clone(), c.clone())?,
                    Some(m) => draw(&grid, &c, *m, rng)?,
                };
                let test = draw(&grid, &c, m_test.max(1), rng)?;
                (train, test)
            }
            TaskFamily::FiniteClassMixture { t, s, m } => {
                let domain: Vec<Point> = (0..(t * s) as i64).map(|i| vec![rational::int(i)]).collect();
                let c: Vec<i8> = (0..domain.len()).map(|_| rng.sign()).collect();
                let train = draw(&domain, &c, *m, rng)?;
                let test = draw(&domain, &c, m_test.max(1), rng)?;
                (train, test)
            }
        };
        if train.dim() != class.dim() {
            return Err(Error::Config(format!("class {class} does not fit {self}: dimension {}", train.dim())));
        }
        let (g, _) = gamma_star(&train, &class)?;
        Ok(Task { family: self.clone(), class, train, test, gamma_star: g })
    }
}

fn grid_points(n: usize, d: usize) -> Vec<Point> {
    let total = n.pow(d as u32);
    (0..total)
        .map(|mut code| {
            let mut p = vec![Rational::default(); d];
            for j in (0..d).rev() {
                p[j] = rational::int((code % n) as i64);
                code /= n;
            }
            p
        })
        .collect()
}

fn draw(points: &[Point], labels: &[i8], count: usize, rng: &mut Rng) -> Result<LabeledSample> {
    let idx: Vec<usize> = (0..count).map(|_| rng.below_usize(points.len())).collect();
    LabeledSample::new(idx.iter().map(|&i| points[i].clone()).collect(), idx.iter().map(|&i| labels[i]).collect())
}

fn line_task(labels: &[i8], m_test: usize, rng: &mut Rng) -> Result<(LabeledSample, LabeledSample)> {
    let m = labels.len();
    let xs: Vec<i64> = (0..m as i64).collect();
    let train = LabeledSample::from_1d(&xs, labels)?;
    let half = rational::ratio(1, 2);
    let mut pts = Vec::with_capacity(m_test.max(1));
    let mut ys = Vec::with_capacity(m_test.max(1));
    for _ in 0..m_test.max(1) {
        let u = rng.below(1024 * m as u64);
        let x = rational::ratio_u64(u, 1024) - &half;
        let nearest = (&x + &half).floor().to_integer();
        let j: usize = nearest.try_into().unwrap_or(0usize).min(m - 1);
        pts.push(vec![x]);
        ys.push(labels[j]);
    }
    Ok((train, LabeledSample::new(pts, ys)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn alternating_gamma_star_is_recorded() {
        let t = TaskFamily::AlternatingThresholds { m: 6 }.generate(None, 50, &mut Rng::seed_from(1)).unwrap();
        assert_eq!(t.gamma_star, ratio(1, 5));
        assert_eq!(t.train.len(), 6);
        assert_eq!(t.test.len(), 50);
        assert_eq!(gamma_star(&t.train, &t.class).unwrap().0, t.gamma_star);
    }

    #[test]
    fn one_sign_change_is_a_threshold() {
        for seed in 0..5 {
            let t = TaskFamily::KSignChanges { m: 8, k: 1 }.generate(None, 10, &mut Rng::seed_from(seed)).unwrap();
            assert_eq!(t.gamma_star, int(1));
        }
    }

    #[test]
    fn xor_grid_under_halfspaces() {
        let fam = TaskFamily::GridRandomLabels { n: 2, d: 2, m: None, labels: Some(vec![1, -1, -1, 1]) };
        let t = fam.generate(None, 10, &mut Rng::seed_from(0)).unwrap();
        assert_eq!(t.train.len(), 4);
        // recomputed independently through the adversary-side LP
        assert_eq!(crate::realizability::minmax_gamma_star(&t.train, &t.class).unwrap(), t.gamma_star);
        assert!(t.gamma_star > int(0) && t.gamma_star < int(1));
    }

    #[test]
    fn generation_is_seed_deterministic() {
        let fam = TaskFamily::FiniteClassMixture { t: 2, s: 2, m: 6 };
        let a = fam.generate(None, 20, &mut Rng::seed_from(4)).unwrap();
        let b = fam.generate(None, 20, &mut Rng::seed_from(4)).unwrap();
        assert_eq!(a.train, b.train);
        assert_eq!(a.test, b.test);
    }

    #[test]
    fn test_points_follow_the_nearest_training_label() {
        let t = TaskFamily::AlternatingThresholds { m: 4 }.generate(None, 200, &mut Rng::seed_from(3)).unwrap();
        for (x, &y) in t.test.points().iter().zip(t.test.labels()) {
            let j = (&x[0] + ratio(1, 2)).floor().to_integer();
            let j: i64 = j.try_into().unwrap();
            assert_eq!(y, if j % 2 == 0 { 1 } else { -1 });
        }
    }

    #[test]
    fn invalid_parameters() {
        assert!(TaskFamily::KSignChanges { m: 3, k: 3 }.generate(None, 1, &mut Rng::seed_from(0)).is_err());
        let fam = TaskFamily::GridRandomLabels { n: 2, d: 2, m: None, labels: Some(vec![1]) };
        assert!(fam.generate(None, 1, &mut Rng::seed_from(0)).is_err());
    }

    #[test]
    fn family_json_shape() {
        let js = serde_json::to_string(&TaskFamily::KSignChanges { m: 8, k: 2 }).unwrap();
        assert_eq!(js, r#"{"family":"k-sign-changes","m":8,"k":2}"#);
    }
}
