//! γ-shattering by exhaustive search over labelings, witness constructions
//! (equally spaced thresholds, Hadamard blocks) and brute-force checks of
//! the composition VC bound.

use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::base_classes::{vc_dimension, BaseClassSpec, FiniteClass};
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::rational::{self, Rational};
use crate::realizability::{gamma_star_of_patterns, solve_patterns};
use crate::sample::{Pattern, Point};

/// Largest point set for which all labelings are enumerated.
pub const MAX_SHATTER_POINTS: usize = 12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaShatterReport {
    #[serde(with = "points_serde")]
    pub points: Vec<Point>,
    #[serde(with = "rational::serde_str")]
    pub gamma: Rational,
    pub all_realizable: bool,
    /// Lexicographically smallest labeling attaining the minimum γ*.
    pub worst_labeling: Pattern,
    #[serde(with = "rational::serde_str")]
    pub worst_gamma_star: Rational,
}

mod points_serde {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::rational;
    use crate::sample::Point;

    pub fn serialize<S: Serializer>(points: &[Point], s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Vec<String>> = points.iter().map(|p| p.iter().map(rational::format).collect()).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Point>, D::Error> {
        let v: Vec<Vec<String>> = Vec::deserialize(d)?;
        v.iter()
            .map(|p| p.iter().map(|x| rational::parse_exact(x).map_err(serde::de::Error::custom)).collect())
            .collect()
    }
}

fn labeling(n: usize, code: u64) -> Vec<i8> {
    // bit n-1-j of the code is coordinate j, so codes count in pattern order
    (0..n).map(|j| if code >> (n - 1 - j) & 1 == 1 { 1 } else { -1 }).collect()
}

/// Minimum γ* over all labelings of `points`, against a fixed pattern list.
///
/// Negating a labeling negates the game, and the pattern list is closed
/// under negation, so only labelings starting with −1 are solved.
pub fn worst_labeling(exec: Exec, patterns: &[Pattern], n: usize) -> Result<(Pattern, Rational)> {
    if n == 0 || n > MAX_SHATTER_POINTS {
        return Err(Error::SizeGuard(format!("labeling search supports 1..={MAX_SHATTER_POINTS} points, got {n}")));
    }
    let half = 1u64 << (n - 1);
    let values = par::map_range(exec, half as usize, |code| {
        let y = labeling(n, code as u64);
        gamma_star_of_patterns(&y, patterns).map(|g| (y, g))
    });
    let mut best: Option<(Vec<i8>, Rational)> = None;
    for v in values {
        let (y, g) = v?;
        if best.as_ref().is_none_or(|(_, b)| g < *b) {
            best = Some((y, g));
        }
    }
    let (y, g) = best.expect("at least one labeling");
    Ok((Pattern::new(y)?, g))
}

/// Whether every labeling of `points` is `gamma`-realizable by the class.
pub fn gamma_shatter_check(class: &BaseClassSpec, points: &[Point], gamma: &Rational) -> Result<GammaShatterReport> {
    gamma_shatter_check_with(Exec::default(), class, points, gamma)
}

pub fn gamma_shatter_check_with(
    exec: Exec,
    class: &BaseClassSpec,
    points: &[Point],
    gamma: &Rational,
) -> Result<GammaShatterReport> {
    if !gamma.is_positive() || *gamma > Rational::one() {
        return Err(Error::contract(format!("gamma must lie in (0, 1], got {gamma}")));
    }
    let mut sorted = points.to_vec();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::contract("γ-shattering needs distinct points"));
    }
    let patterns = class.patterns(points)?;
    let (worst_labeling, worst_gamma_star) = worst_labeling(exec, &patterns, points.len())?;
    Ok(GammaShatterReport {
        points: points.to_vec(),
        gamma: gamma.clone(),
        all_realizable: worst_gamma_star >= *gamma,
        worst_labeling,
        worst_gamma_star,
    })
}

/// `0, 1, …, n-1` on the line.
pub fn line_points(n: usize) -> Vec<Point> {
    (0..n as i64).map(|x| vec![rational::int(x)]).collect()
}

/// The `side × side` integer grid in row-major order.
pub fn square_grid(side: usize) -> Vec<Point> {
    let s = side as i64;
    (0..s).flat_map(|a| (0..s).map(move |b| vec![rational::int(a), rational::int(b)])).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaVcEstimate {
    /// Largest generated size that passed; 0 if none did.
    pub lower_bound: usize,
    /// True when the LP budget stopped the search before the generator ran
    /// out.
    pub budget_exhausted: bool,
}

/// Tries `generator(1), generator(2), …` until it returns `None` or the
/// next size would need more than the remaining `budget` LP solves.
pub fn gamma_vc_lower_estimate(
    class: &BaseClassSpec,
    generator: &dyn Fn(usize) -> Option<Vec<Point>>,
    gamma: &Rational,
    budget: u64,
) -> Result<GammaVcEstimate> {
    let mut remaining = budget;
    let mut lower_bound = 0;
    for n in 1.. {
        let Some(points) = generator(n) else {
            return Ok(GammaVcEstimate { lower_bound, budget_exhausted: false });
        };
        let cost = 1u64 << (points.len().clamp(1, 63) - 1);
        if points.len() > MAX_SHATTER_POINTS || cost > remaining {
            return Ok(GammaVcEstimate { lower_bound, budget_exhausted: true });
        }
        remaining -= cost;
        if gamma_shatter_check(class, &points, gamma)?.all_realizable {
            lower_bound = lower_bound.max(points.len());
        }
    }
    unreachable!()
}

/// `64·(d/γ²)·max(1, log2(d/γ))`, a loose ceiling used as a smoke check on
/// measured γ-shattered sizes.
pub fn gamma_vc_upper_formula(vc: usize, gamma: f64) -> f64 {
    let d = vc.max(1) as f64;
    64.0 * d / (gamma * gamma) * (d / gamma).log2().max(1.0)
}

/// Sylvester–Hadamard rows of order `t` with column 0 negated in every row.
/// Rows stay pairwise orthogonal and none is constant.
pub fn sylvester_rows(t: usize) -> Result<Vec<Pattern>> {
    if t < 2 || !t.is_power_of_two() {
        return Err(Error::contract(format!("Hadamard order {t} is not a power of two ≥ 2")));
    }
    let mut h: Vec<Vec<i8>> = vec![vec![1]];
    while h.len() < t {
        let mut next = Vec::with_capacity(2 * h.len());
        for r in &h {
            next.push(r.iter().chain(r).copied().collect());
        }
        for r in &h {
            next.push(r.iter().copied().chain(r.iter().map(|v| -v)).collect());
        }
        h = next;
    }
    h.into_iter()
        .map(|mut r| {
            r[0] = -r[0];
            Pattern::new(r)
        })
        .collect()
}

/// All `s`-fold concatenations of the `2t` signed Hadamard rows: `(2t)^s`
/// patterns on `s·t` points.
pub fn hadamard_class(t: usize, s: usize) -> Result<FiniteClass> {
    if !(2..=16).contains(&t) || !t.is_power_of_two() {
        return Err(Error::contract(format!("t must be one of 2, 4, 8, 16; got {t}")));
    }
    if s == 0 {
        return Err(Error::contract("s must be positive"));
    }
    let count = (2 * t as u128).checked_pow(s as u32).unwrap_or(u128::MAX);
    if count > 100_000 {
        return Err(Error::SizeGuard(format!("(2t)^s = {count} patterns is too many")));
    }
    let rows = sylvester_rows(t)?;
    let mut block: Vec<Vec<i8>> = rows.iter().flat_map(|r| [r.bits().to_vec(), r.negated().into_bits()]).collect();
    block.sort();
    let mut patterns: Vec<Vec<i8>> = vec![Vec::new()];
    for _ in 0..s {
        patterns = patterns
            .iter()
            .flat_map(|p| block.iter().map(move |b| p.iter().chain(b).copied().collect()))
            .collect();
    }
    FiniteClass::new(patterns.into_iter().map(Pattern::new).collect::<Result<_>>()?)
}

/// `min_p max_i |⟨v_i, p⟩|` over distributions `p`, for pairwise orthogonal
/// ±1 vectors.
pub fn verify_orthogonal_advantage(vectors: &[Pattern]) -> Result<Rational> {
    let Some(first) = vectors.first() else {
        return Err(Error::contract("no vectors"));
    };
    let t = first.len();
    if vectors.iter().any(|v| v.len() != t) {
        return Err(Error::contract("vectors have different lengths"));
    }
    for (i, a) in vectors.iter().enumerate() {
        for b in &vectors[i + 1..] {
            if a.dot(b) != 0 {
                return Err(Error::contract(format!("{a} and {b} are not orthogonal")));
            }
        }
    }
    let mut signed: Vec<Pattern> = vectors.iter().flat_map(|v| [v.clone(), v.negated()]).collect();
    signed.sort();
    signed.dedup();
    // against all-+1 labels the game's payoff is the pattern itself
    Ok(solve_patterns(&vec![1; t], &signed)?.value)
}

/// Binary entropy in bits.
pub fn binary_entropy(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
}

/// `c_T = 1/(T·x)` where `x < 1/2` solves `h(x) = 1/(T+1)`.
pub fn composition_constant(t: usize) -> f64 {
    assert!(t >= 1);
    let target = 1.0 / (t as f64 + 1.0);
    let (mut lo, mut hi) = (0.0f64, 0.5f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if binary_entropy(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    1.0 / (t as f64 * hi)
}

/// A boolean function of `T` ±1 inputs as a truth table: entry `k` is the
/// value on the input whose coordinate `j` is +1 iff bit `j` of `k` is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoolFn {
    pub arity: usize,
    pub table: Vec<i8>,
}

impl BoolFn {
    pub fn new(arity: usize, table: Vec<i8>) -> Result<Self> {
        if arity > 16 || table.len() != 1 << arity || table.iter().any(|&v| v != 1 && v != -1) {
            return Err(Error::contract("truth table must have 2^arity ±1 entries"));
        }
        Ok(BoolFn { arity, table })
    }

    pub fn from_fn(arity: usize, f: impl Fn(&[i8]) -> i8) -> Self {
        let table = (0..1usize << arity)
            .map(|k| {
                let x: Vec<i8> = (0..arity).map(|j| if k >> j & 1 == 1 { 1 } else { -1 }).collect();
                f(&x)
            })
            .collect();
        BoolFn { arity, table }
    }

    pub fn identity() -> Self {
        Self::from_fn(1, |x| x[0])
    }

    pub fn majority(arity: usize) -> Self {
        Self::from_fn(arity, |x| if x.iter().map(|&v| v as i32).sum::<i32>() >= 0 { 1 } else { -1 })
    }

    /// All `2^(2^arity)` functions of the given arity.
    pub fn all(arity: usize) -> Result<Vec<BoolFn>> {
        let rows = 1usize << arity;
        if rows > 16 {
            return Err(Error::SizeGuard(format!("all functions of arity {arity} is too many")));
        }
        Ok((0..1u64 << rows)
            .map(|code| BoolFn { arity, table: (0..rows).map(|k| if code >> k & 1 == 1 { 1 } else { -1 }).collect() })
            .collect())
    }

    pub fn apply(&self, inputs: &[i8]) -> i8 {
        let k = inputs.iter().enumerate().fold(0usize, |k, (j, &v)| k | (((v == 1) as usize) << j));
        self.table[k]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompositionReport {
    pub computed_vc: usize,
    pub component_vcs: Vec<usize>,
    pub g_vc: usize,
    pub c_t: f64,
    pub bound: f64,
    pub composed_patterns: usize,
}

impl CompositionReport {
    pub fn holds(&self) -> bool {
        self.computed_vc as f64 <= self.bound
    }
}

/// Largest composed class materialised.
pub const MAX_COMPOSED: usize = 1 << 20;

/// Brute-force VC of `{g(b_1, …, b_T)}` against `c_T·(Σ VC(B_i) + VC(G))`.
pub fn composition_vc_check(classes: &[Vec<Pattern>], g: &[BoolFn]) -> Result<CompositionReport> {
    let t = classes.len();
    if t == 0 || g.is_empty() {
        return Err(Error::contract("need at least one class and one composing function"));
    }
    if g.iter().any(|f| f.arity != t) {
        return Err(Error::contract("composing functions must take one input per class"));
    }
    let n = classes[0].first().map(Pattern::len).ok_or_else(|| Error::contract("empty class"))?;
    if classes.iter().any(|c| c.is_empty() || c.iter().any(|p| p.len() != n)) {
        return Err(Error::contract("classes must be nonempty and share one domain"));
    }
    if n > 16 {
        return Err(Error::SizeGuard(format!("composed domain of {n} points is too large")));
    }
    let total = classes.iter().map(|c| c.len()).try_fold(g.len(), |acc, k| acc.checked_mul(k));
    if total.is_none_or(|v| v > MAX_COMPOSED) {
        return Err(Error::SizeGuard("composed class is too large to materialise".into()));
    }

    let component_vcs = classes.iter().map(|c| vc_dimension(c)).collect::<Result<Vec<_>>>()?;
    let g_patterns: Vec<Pattern> = g.iter().map(|f| Pattern::new(f.table.clone())).collect::<Result<_>>()?;
    let g_vc = vc_dimension(&g_patterns)?;

    let mut composed = std::collections::BTreeSet::new();
    let mut idx = vec![0usize; t];
    loop {
        for f in g {
            let bits: Vec<i8> = (0..n)
                .map(|x| {
                    let inputs: Vec<i8> = (0..t).map(|j| classes[j][idx[j]].get(x)).collect();
                    f.apply(&inputs)
                })
                .collect();
            composed.insert(Pattern::new(bits)?);
        }
        // odometer over the tuple of component patterns
        let mut j = 0;
        while j < t {
            idx[j] += 1;
            if idx[j] < classes[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
        if j == t {
            break;
        }
    }
    let composed: Vec<Pattern> = composed.into_iter().collect();
    let computed_vc = vc_dimension(&composed)?;
    let c_t = composition_constant(t);
    let bound = c_t * (component_vcs.iter().sum::<usize>() + g_vc) as f64;
    Ok(CompositionReport { computed_vc, component_vcs, g_vc, c_t, bound, composed_patterns: composed.len() })
}

/// Squares compare exactly: `v ≥ 1/√t` iff `v² ≥ 1/t` for `v ≥ 0`.
pub fn at_least_inverse_sqrt(v: &Rational, t: usize) -> bool {
    !v.is_negative() && v * v >= rational::ratio(1, t.to_i64().unwrap_or(i64::MAX))
}
