//! Weak learners: a built-in exact ERM over enumerated restrictions and an
//! external executable speaking a line-oriented protocol.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::{Command, Stdio};
use std::time::Duration;

use wait_timeout::ChildExt;

use crate::base_classes::{evaluate_all, BaseClassSpec, HypothesisDesc, Restriction};
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::rational::{self, Rational};
use crate::sample::{LabeledSample, Pattern};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExternalLearner {
    pub command: PathBuf,
    pub args: Vec<String>,
    pub timeout: Duration,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum WeakLearner {
    /// Maximum-correlation restriction; ties go to the smallest pattern.
    #[default]
    Erm,
    External(ExternalLearner),
}

/// What one weak-learner call sees.
pub(crate) enum Query<'a> {
    /// Exact reweighting by nonnegative integer weights (degrees).
    Weighted(&'a [u64]),
    /// Indices drawn i.i.d.; `counts` is their multiplicity per index.
    Sampled { draws: &'a [usize], counts: &'a [u64] },
}

/// Index of the restriction maximising `Σ w_i y_i b_i`; the first maximum in
/// the (sorted) list wins.
pub(crate) fn erm_index(exec: Exec, restrictions: &[Restriction], labels: &[i8], weights: &[u64]) -> usize {
    let active: Vec<(usize, i128)> = weights
        .iter()
        .zip(labels)
        .enumerate()
        .filter(|(_, (&w, _))| w > 0)
        .map(|(i, (&w, &y))| (i, w as i128 * y as i128))
        .collect();
    let scores = par::map(exec, restrictions, |r| {
        let bits = r.pattern.bits();
        active.iter().map(|&(i, wy)| if bits[i] == 1 { wy } else { -wy }).sum::<i128>()
    });
    let mut best = 0;
    for (k, s) in scores.iter().enumerate() {
        if *s > scores[best] {
            best = k;
        }
    }
    best
}

impl WeakLearner {
    /// Returns a hypothesis and its pattern on the full sample.
    pub(crate) fn learn(
        &self,
        exec: Exec,
        sample: &LabeledSample,
        class: &BaseClassSpec,
        restrictions: &[Restriction],
        query: Query<'_>,
    ) -> Result<(HypothesisDesc, Pattern)> {
        match self {
            WeakLearner::Erm => {
                let weights = match query {
                    Query::Weighted(w) => w,
                    Query::Sampled { counts, .. } => counts,
                };
                let k = erm_index(exec, restrictions, sample.labels(), weights);
                let r = &restrictions[k];
                Ok((r.witness.clone(), r.pattern.clone()))
            }
            WeakLearner::External(ext) => {
                let input = match query {
                    Query::Weighted(w) => weighted_csv(sample, w)?,
                    Query::Sampled { draws, .. } => {
                        let mut buf = Vec::new();
                        sample.subsample(draws)?.write_csv(&mut buf)?;
                        buf
                    }
                };
                let h = ext.call(&input)?;
                if !class.admits(&h) {
                    return Err(Error::WeakLearner(format!("returned hypothesis {h:?} is outside the class")));
                }
                let pattern = evaluate_all(&h, sample.points())
                    .map_err(|e| Error::WeakLearner(format!("returned hypothesis cannot be evaluated: {e}")))?;
                Ok((h, pattern))
            }
        }
    }
}

/// `index,weight,x_1..x_d,label` with exact `p/q` weights.
fn weighted_csv(sample: &LabeledSample, weights: &[u64]) -> Result<Vec<u8>> {
    let total: u64 = weights.iter().sum();
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["index".to_string(), "weight".to_string()];
    header.extend((1..=sample.dim()).map(|i| format!("x_{i}")));
    header.push("label".into());
    w.write_record(&header)?;
    for (i, (p, &y)) in sample.points().iter().zip(sample.labels()).enumerate() {
        let wi = rational::format(&(Rational::from_integer(weights[i].into()) / Rational::from_integer(total.into())));
        let mut row = vec![i.to_string(), wi];
        row.extend(p.iter().map(rational::format));
        row.push(if y == 1 { "+1".into() } else { "-1".into() });
        w.write_record(&row)?;
    }
    w.into_inner().map_err(|e| Error::Internal(e.to_string()))
}

impl ExternalLearner {
    pub fn new(command: impl Into<PathBuf>, args: Vec<String>, timeout: Duration) -> Self {
        ExternalLearner { command: command.into(), args, timeout }
    }

    /// Runs the child once: CSV on stdin, one JSON hypothesis line on stdout.
    pub fn call(&self, input: &[u8]) -> Result<HypothesisDesc> {
        let mut child = Command::new(&self.command)
            .args(&self.args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::piped())
            .spawn()
            .map_err(|e| Error::WeakLearner(format!("cannot start {}: {e}", self.command.display())))?;

        let mut stdin = child.stdin.take().expect("piped");
        let data = input.to_vec();
        let writer = std::thread::spawn(move || {
            // a child that exits without reading closes the pipe; not our error
            let _ = stdin.write_all(&data);
        });
        let mut stdout = child.stdout.take().expect("piped");
        let reader = std::thread::spawn(move || {
            let mut s = String::new();
            stdout.read_to_string(&mut s).map(|_| s)
        });
        let mut stderr = child.stderr.take().expect("piped");
        let err_reader = std::thread::spawn(move || {
            let mut s = String::new();
            let _ = stderr.read_to_string(&mut s);
            s
        });

        let status = match child.wait_timeout(self.timeout)? {
            Some(s) => s,
            None => {
                let _ = child.kill();
                let _ = child.wait();
                return Err(Error::WeakLearner(format!("timed out after {:?}", self.timeout)));
            }
        };
        let _ = writer.join();
        let out = reader.join().map_err(|_| Error::Internal("stdout reader panicked".into()))??;
        let err = err_reader.join().unwrap_or_default();
        if !status.success() {
            return Err(Error::WeakLearner(format!("exited with {status}: {}", err.trim())));
        }
        let line = out
            .lines()
            .find(|l| !l.trim().is_empty())
            .ok_or_else(|| Error::WeakLearner("no hypothesis on stdout".into()))?;
        serde_json::from_str(line.trim()).map_err(|e| Error::WeakLearner(format!("bad hypothesis JSON: {e}")))
    }
}
