//! Exact enumeration of the dichotomies that affine halfspaces induce on a
//! finite point set.
//!
//! With `sign(0) = +1` the realizable labelings are exactly the strictly
//! separable ones. Every non-constant strict dichotomy of a set whose affine
//! hull has dimension `k` is realized by a perturbation `s·f + ε·g`, where `f`
//! vanishes on `k` affinely independent points (an extreme ray of the closed
//! cone of weakly separating functions) and `g` strictly realizes the induced
//! dichotomy on the zero set of `f`. The zero sets are handled recursively.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::linalg::{nullspace, rank};
use crate::rational::Rational;
use crate::sample::{Pattern, Point};

/// Affine function `x ↦ w·x + b` stored as `[w.., b]`.
type Affine = Vec<Rational>;

/// Dichotomies of a point subset keyed by the signs on that subset.
type Dichotomies = BTreeMap<Vec<i8>, Affine>;

struct Enumerator<'a> {
    points: &'a [Point],
    dim: usize,
    memo: HashMap<Vec<usize>, Rc<Dichotomies>>,
}

fn eval(f: &Affine, x: &[Rational]) -> Rational {
    let (w, b) = f.split_at(f.len() - 1);
    w.iter().zip(x).map(|(a, v)| a * v).sum::<Rational>() + &b[0]
}

fn lifted(x: &[Rational]) -> Vec<Rational> {
    let mut r = x.to_vec();
    r.push(Rational::one());
    r
}

fn sign(v: &Rational) -> i8 {
    if v.is_negative() {
        -1
    } else {
        1
    }
}

impl Enumerator<'_> {
    fn constants(&self) -> [Affine; 2] {
        let mut pos = vec![Rational::zero(); self.dim + 1];
        pos[self.dim] = Rational::one();
        let neg = pos.iter().map(|v| -v).collect();
        [pos, neg]
    }

    fn sep(&mut self, sub: &[usize]) -> Rc<Dichotomies> {
        if let Some(d) = self.memo.get(sub) {
            return d.clone();
        }
        let mut out = Dichotomies::new();
        for c in self.constants() {
            out.insert(vec![sign(&c[self.dim]); sub.len()], c);
        }

        // greedy affine basis of `sub`
        let mut basis: Vec<usize> = Vec::new();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for &i in sub {
            rows.push(lifted(&self.points[i]));
            if rank(&rows) > basis.len() {
                basis.push(i);
            } else {
                rows.pop();
            }
        }
        let k = basis.len() - 1;

        if k > 0 {
            let mut seen_zero_sets: Vec<Vec<usize>> = Vec::new();
            for combo in sub.iter().copied().combinations(k) {
                if seen_zero_sets.iter().any(|z| combo.iter().all(|c| z.binary_search(c).is_ok())) {
                    continue;
                }
                let crows: Vec<Vec<Rational>> = combo.iter().map(|&i| lifted(&self.points[i])).collect();
                if rank(&crows) < k {
                    continue;
                }
                let Some(f) = nullspace(&crows, self.dim + 1)
                    .into_iter()
                    .find(|v| basis.iter().any(|&i| !eval(v, &self.points[i]).is_zero()))
                else {
                    continue;
                };
                let values: Vec<Rational> = sub.iter().map(|&i| eval(&f, &self.points[i])).collect();
                let zero: Vec<usize> =
                    sub.iter().zip(&values).filter(|(_, v)| v.is_zero()).map(|(&i, _)| i).collect();
                let inner = self.sep(&zero);
                let fmin = values.iter().filter(|v| !v.is_zero()).map(|v| v.abs()).min().expect("f vanishes on hull");
                for (inner_signs, g) in inner.iter() {
                    let gmax = sub
                        .iter()
                        .zip(&values)
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(&i, _)| eval(g, &self.points[i]).abs())
                        .max()
                        .unwrap_or_else(Rational::zero);
                    let eps = &fmin / (gmax + Rational::one());
                    for s in [1i64, -1] {
                        let s = Rational::from_integer(BigInt::from(s));
                        let h: Affine = f.iter().zip(g).map(|(a, b)| &s * a + &eps * b).collect();
                        let mut zi = 0;
                        let signs: Vec<i8> = values
                            .iter()
                            .map(|v| {
                                if v.is_zero() {
                                    zi += 1;
                                    inner_signs[zi - 1]
                                } else {
                                    sign(&(&s * v))
                                }
                            })
                            .collect();
                        debug_assert!(sub.iter().zip(&signs).all(|(&i, &sg)| {
                            let v = eval(&h, &self.points[i]);
                            !v.is_zero() && sign(&v) == sg
                        }));
                        out.entry(signs).or_insert(h);
                    }
                }
                seen_zero_sets.push(zero);
            }
        }
        let out = Rc::new(out);
        self.memo.insert(sub.to_vec(), out.clone());
        out
    }
}

/// Clears denominators and common factors; positive scaling keeps signs.
fn normalize(f: Affine) -> Affine {
    let lcm = f.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
    let ints: Vec<BigInt> = f.iter().map(|v| (v * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    let g = if g.is_zero() { BigInt::one() } else { g };
    ints.into_iter().map(|v| Rational::from_integer(v / &g)).collect()
}

/// All realizable patterns on `points` with one `(normal, offset)` witness
/// each. Points must share one dimension; duplicates are allowed.
pub(crate) fn enumerate(points: &[Point]) -> Vec<(Pattern, (Vec<Rational>, Rational))> {
    let dim = points[0].len();
    let mut distinct: Vec<Point> = points.to_vec();
    distinct.sort();
    distinct.dedup();
    let slot: Vec<usize> = points.iter().map(|p| distinct.binary_search(p).expect("present")).collect();

    let mut en = Enumerator { points: &distinct, dim, memo: HashMap::new() };
    let all: Vec<usize> = (0..distinct.len()).collect();
    let result = en.sep(&all);
    result
        .iter()
        .map(|(signs, f)| {
            let pattern = Pattern::new(slot.iter().map(|&j| signs[j]).collect()).expect("±1 signs");
            let mut f = normalize(f.clone());
            let offset = f.pop().expect("offset");
            (pattern, (f, offset))
        })
        .collect()
}
