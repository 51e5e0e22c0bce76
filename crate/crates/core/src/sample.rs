//! Samples, distributions over sample indices, ±1 patterns and the two
//! primitive operations everything else is built on: correlation and
//! signatures.

use std::collections::HashMap;
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub type Point = Vec<Rational>;

/// A ±1 vector. Ordered lexicographically with −1 < +1; this order is the
/// tie-break used by every ERM in the crate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Pattern(Vec<i8>);

/// A point's vector of weak-hypothesis values.
pub type Signature = Pattern;

impl Pattern {
    pub fn new(bits: Vec<i8>) -> Result<Self> {
        if let Some(b) = bits.iter().find(|&&b| b != 1 && b != -1) {
            return Err(Error::contract(format!("pattern entry {b} is not ±1")));
        }
        Ok(Pattern(bits))
    }

    /// Builds from booleans (`true` → +1).
    pub fn from_bools(bits: impl IntoIterator<Item = bool>) -> Self {
        Pattern(bits.into_iter().map(|b| if b { 1 } else { -1 }).collect())
    }

    pub fn constant(len: usize, value: i8) -> Self {
        assert!(value == 1 || value == -1);
        Pattern(vec![value; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[i8] {
        &self.0
    }

    pub fn get(&self, i: usize) -> i8 {
        self.0[i]
    }

    pub fn negated(&self) -> Self {
        Pattern(self.0.iter().map(|b| -b).collect())
    }

    pub fn into_bits(self) -> Vec<i8> {
        self.0
    }

    pub fn hamming(&self, other: &Pattern) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }

    pub fn project(&self, indices: &[usize]) -> Pattern {
        Pattern(indices.iter().map(|&i| self.0[i]).collect())
    }

    /// Support: indices holding +1.
    pub fn support(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, &b)| b == 1).map(|(i, _)| i).collect()
    }

    pub fn dot(&self, other: &Pattern) -> i64 {
        self.0.iter().zip(&other.0).map(|(&a, &b)| (a * b) as i64).sum()
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b == 1 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl FromStr for Pattern {
    type Err = Error;

    /// Accepts `"+-+"` or a comma-separated list such as `"1,-1,+1"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains(',') {
            let bits = s
                .split(',')
                .map(|t| match t.trim() {
                    "1" | "+1" | "+" => Ok(1),
                    "-1" | "-" => Ok(-1),
                    other => Err(Error::Parse(format!("bad pattern entry {other:?}"))),
                })
                .collect::<Result<Vec<i8>>>()?;
            return Ok(Pattern(bits));
        }
        let bits = s
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                other => Err(Error::Parse(format!("bad pattern character {other:?}"))),
            })
            .collect::<Result<Vec<i8>>>()?;
        Ok(Pattern(bits))
    }
}

impl Serialize for Pattern {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Pattern {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A finite labelled sample. Points may repeat, but a repeated point never
/// carries both labels: such a sample cannot be separated by any class.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledSample {
    points: Vec<Point>,
    labels: Vec<i8>,
    dim: usize,
}

impl LabeledSample {
    pub fn new(points: Vec<Point>, labels: Vec<i8>) -> Result<Self> {
        if points.len() != labels.len() {
            return Err(Error::InvalidSample(format!(
                "{} points but {} labels",
                points.len(),
                labels.len()
            )));
        }
        if points.is_empty() {
            return Err(Error::InvalidSample("sample is empty".into()));
        }
        let dim = points[0].len();
        if dim == 0 {
            return Err(Error::InvalidSample("points must have dimension ≥ 1".into()));
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::InvalidSample(format!(
                    "point {i} has dimension {}, expected {dim}",
                    p.len()
                )));
            }
        }
        if let Some((i, &y)) = labels.iter().enumerate().find(|(_, &y)| y != 1 && y != -1) {
            return Err(Error::InvalidSample(format!("label {y} at row {i} is not ±1")));
        }
        let mut seen: HashMap<&Point, (usize, i8)> = HashMap::new();
        for (i, (p, &y)) in points.iter().zip(&labels).enumerate() {
            if let Some(&(j, other)) = seen.get(p) {
                if other != y {
                    return Err(Error::InvalidSample(format!(
                        "rows {j} and {i} share a point but carry opposite labels"
                    )));
                }
            } else {
                seen.insert(p, (i, y));
            }
        }
        Ok(LabeledSample { points, labels, dim })
    }

    /// Convenience constructor for one-dimensional integer samples.
    pub fn from_1d(xs: &[i64], labels: &[i8]) -> Result<Self> {
        Self::new(xs.iter().map(|&x| vec![rational::int(x)]).collect(), labels.to_vec())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn labels(&self) -> &[i8] {
        &self.labels
    }

    pub fn label_pattern(&self) -> Pattern {
        Pattern(self.labels.clone())
    }

    /// Same points, different labels.
    pub fn relabel(&self, labels: Vec<i8>) -> Result<Self> {
        Self::new(self.points.clone(), labels)
    }

    pub fn subsample(&self, indices: &[usize]) -> Result<Self> {
        Self::new(
            indices.iter().map(|&i| self.points[i].clone()).collect(),
            indices.iter().map(|&i| self.labels[i]).collect(),
        )
    }

    pub fn positives(&self) -> usize {
        self.labels.iter().filter(|&&y| y == 1).count()
    }

    /// Reads the sample CSV format: header row, columns `x_1..x_d` then the
    /// label (`+1`/`-1`). Coordinates may be integers, decimals or `"p/q"`.
    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let (points, labels) = read_rows(reader, true)?;
        Self::new(points, labels.expect("labels requested"))
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let mut header: Vec<String> = (1..=self.dim).map(|i| format!("x_{i}")).collect();
        header.push("label".into());
        w.write_record(&header)?;
        for (p, &y) in self.points.iter().zip(&self.labels) {
            let mut row: Vec<String> = p.iter().map(rational::format).collect();
            row.push(if y == 1 { "+1".into() } else { "-1".into() });
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Reads an unlabelled point CSV (header row, columns `x_1..x_d`).
pub fn read_points_csv<R: Read>(reader: R) -> Result<Vec<Point>> {
    Ok(read_rows(reader, false)?.0)
}

pub fn write_points_csv<W: Write>(points: &[Point], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let dim = points.first().map_or(1, |p| p.len());
    w.write_record((1..=dim).map(|i| format!("x_{i}")))?;
    for p in points {
        w.write_record(p.iter().map(rational::format))?;
    }
    w.flush()?;
    Ok(())
}

fn parse_label(s: &str) -> Result<i8> {
    match s.trim() {
        "1" | "+1" | "+" => Ok(1),
        "-1" | "-" => Ok(-1),
        other => Err(Error::Parse(format!("label {other:?} is not ±1"))),
    }
}

fn read_rows<R: Read>(reader: R, labelled: bool) -> Result<(Vec<Point>, Option<Vec<i8>>)> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
    let width = rdr.headers()?.len();
    let dim = if labelled { width.saturating_sub(1) } else { width };
    if dim == 0 {
        return Err(Error::Parse("header must name at least one coordinate column".into()));
    }
    let mut points = Vec::new();
    let mut labels = Vec::new();
    for (row, rec) in rdr.records().enumerate() {
        let rec = rec?;
        if rec.len() != width {
            return Err(Error::Parse(format!("row {} has {} fields, expected {width}", row + 1, rec.len())));
        }
        let p = (0..dim).map(|j| rational::parse_lenient(&rec[j])).collect::<Result<Point>>()?;
        points.push(p);
        if labelled {
            labels.push(parse_label(&rec[dim])?);
        }
    }
    Ok((points, labelled.then_some(labels)))
}

/// A probability distribution over sample indices with exact weights.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleDistribution {
    #[serde(with = "rational::serde_vec")]
    weights: Vec<Rational>,
}

impl SampleDistribution {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if weights.iter().any(|w| w.is_negative()) {
            return Err(Error::contract("distribution has a negative weight"));
        }
        if weights.iter().sum::<Rational>() != Rational::one() {
            return Err(Error::contract("distribution weights do not sum to 1"));
        }
        Ok(SampleDistribution { weights })
    }

    /// Normalises nonnegative integer weights; errors if they are all zero.
    pub fn from_counts(counts: &[u64]) -> Result<Self> {
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(Error::contract("all weights are zero"));
        }
        let t = Rational::from_integer(total.into());
        Ok(SampleDistribution {
            weights: counts.iter().map(|&c| Rational::from_integer(c.into()) / &t).collect(),
        })
    }

    pub fn uniform(m: usize) -> Self {
        assert!(m > 0);
        let w = rational::ratio(1, m as i64);
        SampleDistribution { weights: vec![w; m] }
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Checks the invariants on an untrusted value (e.g. one read from JSON).
    pub fn is_valid(&self) -> bool {
        rational::is_probability_vector(&self.weights)
    }
}

/// corr_q(b) = Σ_i q_i · y_i · b_i, exact.
pub fn correlation(sample: &LabeledSample, q: &SampleDistribution, pattern: &Pattern) -> Result<Rational> {
    correlation_raw(sample.labels(), q.weights(), pattern)
}

pub(crate) fn correlation_raw(labels: &[i8], q: &[Rational], pattern: &Pattern) -> Result<Rational> {
    if labels.len() != q.len() || labels.len() != pattern.len() {
        return Err(Error::contract(format!(
            "length mismatch: {} labels, {} weights, pattern of length {}",
            labels.len(),
            q.len(),
            pattern.len()
        )));
    }
    let mut acc = Rational::zero();
    for ((&y, w), &b) in labels.iter().zip(q).zip(pattern.bits()) {
        if y * b == 1 {
            acc += w;
        } else {
            acc -= w;
        }
    }
    Ok(acc)
}

/// The column (b_1(x_i), …, b_T(x_i)) of the hypothesis patterns.
pub fn signature(hypotheses: &[Pattern], index: usize) -> Result<Signature> {
    if let Some(h) = hypotheses.iter().find(|h| h.len() <= index) {
        return Err(Error::contract(format!("index {index} out of bounds for pattern of length {}", h.len())));
    }
    Ok(Pattern(hypotheses.iter().map(|h| h.get(index)).collect()))
}
