//! Concrete base classes, point evaluation, and exact enumeration of the
//! distinct restrictions a class induces on a finite point set.
//!
//! Every class is symmetric: whenever `b` is representable so is `-b`.
//! Thresholds and stumps carry both orientations, halfspaces are closed under
//! negating `(w, b)`, and finite classes are closed explicitly on
//! construction.
//!
//! Evaluation uses the convention `sign(0) = +1`.

mod halfspace;
pub(crate) mod linalg;
pub mod vc;

use std::collections::BTreeMap;
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::sample::{Pattern, Point};

pub use vc::{dual_vc_dimension, pattern_rank, sauer_bound, shatters, span_rank, vc_dimension};

/// Largest dimension supported by the halfspace enumerator.
pub const MAX_HALFSPACE_DIM: usize = 3;

/// An explicit class over the domain `{0, …, n-1}`, closed under negation.
/// Points fed to a finite class are one-dimensional integer indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteClass {
    patterns: Vec<Pattern>,
}

impl FiniteClass {
    pub fn new(patterns: Vec<Pattern>) -> Result<Self> {
        let Some(first) = patterns.first() else {
            return Err(Error::contract("finite class needs at least one pattern"));
        };
        let n = first.len();
        if n == 0 || patterns.iter().any(|p| p.len() != n) {
            return Err(Error::contract("finite class patterns must share a nonzero length"));
        }
        let mut all: Vec<Pattern> = patterns.iter().flat_map(|p| [p.clone(), p.negated()]).collect();
        all.sort();
        all.dedup();
        Ok(FiniteClass { patterns: all })
    }

    pub fn domain_size(&self) -> usize {
        self.patterns[0].len()
    }

    /// Patterns after symmetric closure, sorted.
    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    /// One ±1 row per pattern, no header.
    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut patterns = Vec::new();
        for rec in rdr.records() {
            let rec = rec?;
            let joined = rec.iter().collect::<Vec<_>>().join(",");
            patterns.push(joined.parse::<Pattern>()?);
        }
        Self::new(patterns)
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        for p in &self.patterns {
            w.write_record(p.bits().iter().map(|&b| if b == 1 { "1" } else { "-1" }))?;
        }
        w.flush()?;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassKind {
    /// `x ↦ sign(s·(x − t))` on the real line.
    Thresholds,
    /// `x ↦ sign(s·(x_j − t))` in `R^dim`.
    Stumps { dim: usize },
    /// `x ↦ sign(w·x + b)` in `R^dim`, `dim ≤ 3`.
    Halfspaces { dim: usize },
    Finite(FiniteClass),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseClassSpec {
    kind: ClassKind,
}

/// Parameters of one hypothesis; the witness for a restriction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HypothesisDesc {
    Threshold {
        sign: i8,
        #[serde(with = "rational::serde_str")]
        threshold: Rational,
    },
    Stump {
        axis: usize,
        sign: i8,
        #[serde(with = "rational::serde_str")]
        threshold: Rational,
    },
    Halfspace {
        #[serde(with = "rational::serde_vec")]
        normal: Vec<Rational>,
        #[serde(with = "rational::serde_str")]
        offset: Rational,
    },
    Finite { index: usize, values: Pattern },
}

/// A distinct restriction together with one hypothesis that induces it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub pattern: Pattern,
    pub witness: HypothesisDesc,
}

fn sign_of(v: &Rational) -> i8 {
    if v.is_negative() {
        -1
    } else {
        1
    }
}

fn threshold_value(sign: i8, x: &Rational, t: &Rational) -> i8 {
    let d = x - t;
    if d.is_zero() {
        1
    } else {
        sign * sign_of(&d)
    }
}

fn check_sign(s: i8) -> Result<()> {
    if s == 1 || s == -1 {
        Ok(())
    } else {
        Err(Error::contract(format!("orientation {s} is not ±1")))
    }
}

/// Value of a hypothesis at a point.
pub fn evaluate(h: &HypothesisDesc, x: &[Rational]) -> Result<i8> {
    match h {
        HypothesisDesc::Threshold { sign, threshold } => {
            check_sign(*sign)?;
            if x.len() != 1 {
                return Err(Error::Dimension { expected: 1, got: x.len() });
            }
            Ok(threshold_value(*sign, &x[0], threshold))
        }
        HypothesisDesc::Stump { axis, sign, threshold } => {
            check_sign(*sign)?;
            if *axis >= x.len() {
                return Err(Error::Dimension { expected: axis + 1, got: x.len() });
            }
            Ok(threshold_value(*sign, &x[*axis], threshold))
        }
        HypothesisDesc::Halfspace { normal, offset } => {
            if normal.len() != x.len() {
                return Err(Error::Dimension { expected: normal.len(), got: x.len() });
            }
            let v: Rational = normal.iter().zip(x).map(|(w, xi)| w * xi).sum::<Rational>() + offset;
            Ok(sign_of(&v))
        }
        HypothesisDesc::Finite { values, .. } => {
            let i = finite_index(x, values.len())?;
            Ok(values.get(i))
        }
    }
}

/// Pattern of a hypothesis on a point sequence.
pub fn evaluate_all(h: &HypothesisDesc, points: &[Point]) -> Result<Pattern> {
    let bits = points.iter().map(|x| evaluate(h, x)).collect::<Result<Vec<i8>>>()?;
    Pattern::new(bits)
}

fn finite_index(x: &[Rational], domain: usize) -> Result<usize> {
    if x.len() != 1 {
        return Err(Error::Dimension { expected: 1, got: x.len() });
    }
    let v = &x[0];
    if !v.is_integer() || v.is_negative() {
        return Err(Error::contract(format!("finite-class point {v} is not a domain index")));
    }
    let i = v.to_integer().to_usize().unwrap_or(usize::MAX);
    if i >= domain {
        return Err(Error::contract(format!("domain index {i} out of range 0..{domain}")));
    }
    Ok(i)
}

impl BaseClassSpec {
    pub fn new(kind: ClassKind) -> Result<Self> {
        match &kind {
            ClassKind::Stumps { dim } if *dim == 0 => {
                return Err(Error::Unsupported("stumps need dimension ≥ 1".into()))
            }
            ClassKind::Halfspaces { dim } if *dim == 0 || *dim > MAX_HALFSPACE_DIM => {
                return Err(Error::Unsupported(format!(
                    "halfspace enumeration supports dimensions 1..={MAX_HALFSPACE_DIM}, got {dim}"
                )))
            }
            _ => {}
        }
        Ok(BaseClassSpec { kind })
    }

    pub fn thresholds() -> Self {
        BaseClassSpec { kind: ClassKind::Thresholds }
    }

    pub fn stumps(dim: usize) -> Result<Self> {
        Self::new(ClassKind::Stumps { dim })
    }

    pub fn halfspaces(dim: usize) -> Result<Self> {
        Self::new(ClassKind::Halfspaces { dim })
    }

    pub fn finite(patterns: Vec<Pattern>) -> Result<Self> {
        Ok(BaseClassSpec { kind: ClassKind::Finite(FiniteClass::new(patterns)?) })
    }

    pub fn kind(&self) -> &ClassKind {
        &self.kind
    }

    /// Always true: every class is normalised to its symmetric closure.
    pub fn is_symmetric(&self) -> bool {
        true
    }

    /// Expected point dimension.
    pub fn dim(&self) -> usize {
        match &self.kind {
            ClassKind::Thresholds | ClassKind::Finite(_) => 1,
            ClassKind::Stumps { dim } | ClassKind::Halfspaces { dim } => *dim,
        }
    }

    /// Default VC estimate used to size weak-learner subsamples.
    pub fn vc_estimate(&self) -> usize {
        match &self.kind {
            ClassKind::Thresholds => 2,
            ClassKind::Stumps { dim } => 2 + (usize::BITS - 1 - dim.leading_zeros()) as usize,
            ClassKind::Halfspaces { dim } => dim + 1,
            ClassKind::Finite(f) => (usize::BITS - 1 - f.patterns.len().leading_zeros()) as usize,
        }
    }

    /// Restrictions on `points`, sorted by pattern, one witness each.
    pub fn restrictions(&self, points: &[Point]) -> Result<Vec<Restriction>> {
        if points.is_empty() {
            return Err(Error::contract("cannot enumerate restrictions on an empty point set"));
        }
        let dim = self.dim();
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::Dimension { expected: dim, got: p.len() });
        }
        let mut out: BTreeMap<Pattern, HypothesisDesc> = BTreeMap::new();
        match &self.kind {
            ClassKind::Thresholds => {
                for (sign, threshold) in axis_cuts(points, 0) {
                    let h = HypothesisDesc::Threshold { sign, threshold };
                    out.entry(evaluate_all(&h, points)?).or_insert(h);
                }
            }
            ClassKind::Stumps { dim } => {
                for axis in 0..*dim {
                    for (sign, threshold) in axis_cuts(points, axis) {
                        let h = HypothesisDesc::Stump { axis, sign, threshold };
                        out.entry(evaluate_all(&h, points)?).or_insert(h);
                    }
                }
            }
            ClassKind::Halfspaces { .. } => {
                for (pattern, (normal, offset)) in halfspace::enumerate(points) {
                    out.entry(pattern).or_insert(HypothesisDesc::Halfspace { normal, offset });
                }
            }
            ClassKind::Finite(f) => {
                let idx = points
                    .iter()
                    .map(|x| finite_index(x, f.domain_size()))
                    .collect::<Result<Vec<usize>>>()?;
                for (index, values) in f.patterns.iter().enumerate() {
                    let pattern = values.project(&idx);
                    out.entry(pattern)
                        .or_insert_with(|| HypothesisDesc::Finite { index, values: values.clone() });
                }
            }
        }
        Ok(out.into_iter().map(|(pattern, witness)| Restriction { pattern, witness }).collect())
    }

    /// Patterns only.
    pub fn patterns(&self, points: &[Point]) -> Result<Vec<Pattern>> {
        Ok(self.restrictions(points)?.into_iter().map(|r| r.pattern).collect())
    }

    /// Whether a hypothesis descriptor belongs to this class.
    pub fn admits(&self, h: &HypothesisDesc) -> bool {
        match (&self.kind, h) {
            (ClassKind::Thresholds, HypothesisDesc::Threshold { sign, .. }) => sign.abs() == 1,
            (ClassKind::Stumps { dim }, HypothesisDesc::Stump { axis, sign, .. }) => axis < dim && sign.abs() == 1,
            (ClassKind::Halfspaces { dim }, HypothesisDesc::Halfspace { normal, .. }) => normal.len() == *dim,
            (ClassKind::Finite(f), HypothesisDesc::Finite { values, .. }) => f.patterns.binary_search(values).is_ok(),
            _ => false,
        }
    }
}

/// Cuts below, between and above the distinct coordinate values on one axis,
/// with both orientations.
fn axis_cuts(points: &[Point], axis: usize) -> Vec<(i8, Rational)> {
    let mut values: Vec<&Rational> = points.iter().map(|p| &p[axis]).collect();
    values.sort();
    values.dedup();
    let one = rational::int(1);
    let mut cuts = Vec::with_capacity(values.len() + 1);
    cuts.push(values[0] - &one);
    for w in values.windows(2) {
        cuts.push((w[0] + w[1]) / rational::int(2));
    }
    cuts.push(values[values.len() - 1] + &one);
    cuts.into_iter().flat_map(|t| [(1i8, t.clone()), (-1i8, t)]).collect()
}

impl fmt::Display for BaseClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ClassKind::Thresholds => write!(f, "thresholds"),
            ClassKind::Stumps { dim } => write!(f, "stumps{dim}"),
            ClassKind::Halfspaces { dim } => write!(f, "halfspaces{dim}"),
            ClassKind::Finite(c) => write!(f, "finite({} patterns on {} points)", c.patterns.len(), c.domain_size()),
        }
    }
}

impl FromStr for BaseClassSpec {
    type Err = Error;

    /// `thresholds`, `stumps<d>`, `halfspaces<d>` (a `-` before `d` is
    /// accepted). Finite classes are loaded from files instead.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let dim_of = |rest: &str| -> Result<usize> {
            rest.trim_start_matches(['-', '_'])
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad class name {s:?}")))
        };
        if s == "thresholds" || s == "thresholds1d" {
            Ok(Self::thresholds())
        } else if let Some(rest) = s.strip_prefix("stumps") {
            Self::stumps(dim_of(rest)?)
        } else if let Some(rest) = s.strip_prefix("halfspaces") {
            Self::halfspaces(dim_of(rest)?)
        } else {
            Err(Error::Parse(format!("unknown class {s:?} (expected thresholds, stumps<d>, halfspaces<d>)")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::sample::LabeledSample;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn pts_1d(xs: &[i64]) -> Vec<Point> {
        xs.iter().map(|&x| vec![int(x)]).collect()
    }

    fn p(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    /// Oracle: thresholds on a fine grid of cut values (step 1/4 over a
    /// padded range) and both signs.
    fn threshold_grid_oracle(points: &[Point], axis: usize) -> BTreeSet<Pattern> {
        let mut out = BTreeSet::new();
        for k in -40..=40 {
            let t = ratio(k, 4);
            for s in [1i8, -1] {
                out.insert(Pattern::new(points.iter().map(|x| threshold_value(s, &x[axis], &t)).collect()).unwrap());
            }
        }
        out
    }

    #[test]
    fn evaluate_examples() {
        let stump = HypothesisDesc::Stump { axis: 0, sign: 1, threshold: ratio(1, 2) };
        assert_eq!(evaluate(&stump, &[int(1)]).unwrap(), 1);
        assert_eq!(evaluate(&stump, &[int(0)]).unwrap(), -1);
        let hs = HypothesisDesc::Halfspace { normal: vec![int(1), int(-1)], offset: int(0) };
        assert_eq!(evaluate(&hs, &[int(2), int(2)]).unwrap(), 1);
        assert!(evaluate(&hs, &[int(2)]).is_err());
        assert!(evaluate(&HypothesisDesc::Threshold { sign: 2, threshold: int(0) }, &[int(1)]).is_err());
    }

    #[test]
    fn thresholds_on_three_points() {
        let pts = pts_1d(&[0, 1, 2]);
        let got: BTreeSet<Pattern> = BaseClassSpec::thresholds().patterns(&pts).unwrap().into_iter().collect();
        let want: BTreeSet<Pattern> = ["+++", "-++", "--+", "---", "+--", "++-"].iter().map(|s| p(s)).collect();
        assert_eq!(got, want);
        assert_eq!(got, threshold_grid_oracle(&pts, 0));
    }

    #[test]
    fn thresholds_give_2m_patterns_on_distinct_points() {
        for m in 1..=9 {
            let pts = pts_1d(&(0..m).collect::<Vec<_>>());
            let got = BaseClassSpec::thresholds().patterns(&pts).unwrap();
            let oracle = threshold_grid_oracle(&pts, 0);
            assert_eq!(got.len(), oracle.len());
            assert_eq!(got.len(), 2 * m as usize);
        }
    }

    #[test]
    fn finite_class_is_closed_under_negation() {
        let c = BaseClassSpec::finite(vec![p("+-")]).unwrap();
        let got = c.patterns(&pts_1d(&[0, 1])).unwrap();
        assert_eq!(got, vec![p("-+"), p("+-")]);
        assert!(c.restrictions(&pts_1d(&[2])).is_err());
    }

    #[test]
    fn stumps_on_unit_square_match_grid_oracle() {
        let pts: Vec<Point> = [(0, 0), (0, 1), (1, 0), (1, 1)].iter().map(|&(a, b)| vec![int(a), int(b)]).collect();
        let got: BTreeSet<Pattern> = BaseClassSpec::stumps(2).unwrap().patterns(&pts).unwrap().into_iter().collect();
        let mut oracle = threshold_grid_oracle(&pts, 0);
        oracle.extend(threshold_grid_oracle(&pts, 1));
        assert_eq!(got, oracle);
        assert_eq!(got.len(), 6);
    }

    #[test]
    fn halfspaces_on_unit_square() {
        let pts: Vec<Point> = [(0, 0), (0, 1), (1, 0), (1, 1)].iter().map(|&(a, b)| vec![int(a), int(b)]).collect();
        let got = BaseClassSpec::halfspaces(2).unwrap().patterns(&pts).unwrap();
        // all 16 labelings except the two XOR ones
        assert_eq!(got.len(), 14);
        assert!(!got.contains(&p("+--+")));
        assert!(!got.contains(&p("-++-")));
    }

    #[test]
    fn halfspaces_in_1d_equal_thresholds() {
        let pts = pts_1d(&[3, -1, 4, 1, 5, 9, 2, 6]);
        let hs = BaseClassSpec::halfspaces(1).unwrap().patterns(&pts).unwrap();
        let th = BaseClassSpec::thresholds().patterns(&pts).unwrap();
        assert_eq!(hs, th);
    }

    #[test]
    fn parse_names() {
        assert_eq!("stumps2".parse::<BaseClassSpec>().unwrap(), BaseClassSpec::stumps(2).unwrap());
        assert_eq!("halfspaces-3".parse::<BaseClassSpec>().unwrap(), BaseClassSpec::halfspaces(3).unwrap());
        assert!("halfspaces4".parse::<BaseClassSpec>().is_err());
        assert!("trees".parse::<BaseClassSpec>().is_err());
    }

    #[test]
    fn descriptor_json_uses_rational_strings() {
        let h = HypothesisDesc::Stump { axis: 1, sign: -1, threshold: ratio(1, 3) };
        let js = serde_json::to_string(&h).unwrap();
        assert_eq!(js, r#"{"kind":"stump","axis":1,"sign":-1,"threshold":"1/3"}"#);
        assert_eq!(serde_json::from_str::<HypothesisDesc>(&js).unwrap(), h);
    }

    #[test]
    fn finite_csv_round_trip() {
        let c = FiniteClass::new(vec![p("+-+"), p("++-")]).unwrap();
        let mut buf = Vec::new();
        c.write_csv(&mut buf).unwrap();
        assert_eq!(FiniteClass::read_csv(buf.as_slice()).unwrap(), c);
    }

    fn small_points(dim: usize) -> impl Strategy<Value = Vec<Point>> {
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, dim), 1..9)
            .prop_map(|v| v.into_iter().map(|p| p.into_iter().map(int).collect()).collect())
    }

    fn check_class(class: &BaseClassSpec, pts: &[Point]) -> std::result::Result<(), TestCaseError> {
        let rs = class.restrictions(pts).unwrap();
        let set: BTreeSet<&Pattern> = rs.iter().map(|r| &r.pattern).collect();
        for r in &rs {
            prop_assert!(set.contains(&r.pattern.negated()), "not closed under negation");
            prop_assert_eq!(&evaluate_all(&r.witness, pts).unwrap(), &r.pattern, "unsound witness");
            prop_assert!(class.admits(&r.witness));
        }
        prop_assert!(rs.windows(2).all(|w| w[0].pattern < w[1].pattern), "output not canonical");
        Ok(())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn witnesses_are_sound_and_sets_symmetric(pts1 in small_points(1), pts2 in small_points(2), pts3 in small_points(3)) {
            check_class(&BaseClassSpec::thresholds(), &pts1)?;
            check_class(&BaseClassSpec::stumps(2).unwrap(), &pts2)?;
            check_class(&BaseClassSpec::halfspaces(2).unwrap(), &pts2)?;
            check_class(&BaseClassSpec::halfspaces(3).unwrap(), &pts3)?;
        }

        #[test]
        fn planar_halfspaces_have_vc_at_most_three(pts in small_points(2)) {
            let pats = BaseClassSpec::halfspaces(2).unwrap().patterns(&pts).unwrap();
            let d = vc_dimension(&pats).unwrap();
            prop_assert!(d <= 3);
            prop_assert!(pats.len() as u128 <= sauer_bound(pts.len(), d));
        }

        /// Brute-force oracle for planar halfspaces: a labeling is realizable
        /// iff some direction from a dense rational fan separates it. On a
        /// 3×3 integer box every separable dichotomy has such a direction.
        #[test]
        fn planar_halfspaces_match_direction_fan(raw in proptest::collection::vec((-1i64..=1, -1i64..=1), 1..7)) {
            let pts: Vec<Point> = raw.iter().map(|&(a, b)| vec![int(a), int(b)]).collect();
            let got: BTreeSet<Pattern> = BaseClassSpec::halfspaces(2).unwrap().patterns(&pts).unwrap().into_iter().collect();
            let mut oracle = BTreeSet::new();
            for a in -4i64..=4 {
                for b in -4i64..=4 {
                    if a == 0 && b == 0 { continue; }
                    let mut proj: Vec<Rational> = pts.iter().map(|p| int(a) * &p[0] + int(b) * &p[1]).collect();
                    proj.sort();
                    proj.dedup();
                    let mut cuts = vec![&proj[0] - int(1)];
                    for w in proj.windows(2) { cuts.push((&w[0] + &w[1]) / int(2)); }
                    cuts.push(&proj[proj.len() - 1] + int(1));
                    for t in cuts {
                        let pat = Pattern::from_bools(pts.iter().map(|p| int(a) * &p[0] + int(b) * &p[1] >= t));
                        oracle.insert(pat.negated());
                        oracle.insert(pat);
                    }
                }
            }
            prop_assert_eq!(got, oracle);
        }
    }

    #[test]
    fn restrictions_ignore_labels() {
        let s = LabeledSample::from_1d(&[0, 1, 2], &[1, -1, 1]).unwrap();
        assert_eq!(BaseClassSpec::thresholds().patterns(s.points()).unwrap().len(), 6);
    }
}
