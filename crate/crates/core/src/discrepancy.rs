//! Combinatorial discrepancy of colorings against set systems built from a
//! class's restrictions.
//!
//! Two notions are exposed under distinct names:
//!
//! * [`weighted_disc`]: the signed, `p`-weighted mass of a coloring on the
//!   support of a pattern.
//! * [`set_disc`] and [`system_disc`]: the unnormalised `|Σ_{i∈F} c_i|` and
//!   its maximum over a set system. Under the uniform distribution on `n`
//!   points, `set_disc = n · |weighted_disc|`.

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use num_traits::Zero;

use crate::base_classes::BaseClassSpec;
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::rational::{self, Rational};
use crate::sample::{Pattern, Point, SampleDistribution};

/// Ground-set size accepted by the exhaustive search.
pub const MAX_EXHAUSTIVE: usize = 22;
/// Ground-set size accepted by branch and bound.
pub const MAX_BRANCH_AND_BOUND: usize = 40;

/// Subsets of `{0, …, n-1}`, each sorted without repeats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetSystem {
    n: usize,
    sets: Vec<Vec<usize>>,
}

impl SetSystem {
    pub fn new(n: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        let mut clean = Vec::with_capacity(sets.len());
        for mut s in sets {
            s.sort_unstable();
            s.dedup();
            if let Some(&bad) = s.iter().find(|&&i| i >= n) {
                return Err(Error::contract(format!("element {bad} outside ground set of size {n}")));
            }
            clean.push(s);
        }
        Ok(SetSystem { n, sets: clean })
    }

    /// Supports `{i : b_i = +1}` of the patterns, deduplicated.
    pub fn from_patterns(patterns: &[Pattern]) -> Result<Self> {
        let n = patterns.first().map_or(0, Pattern::len);
        if patterns.iter().any(|p| p.len() != n) {
            return Err(Error::contract("patterns have different lengths"));
        }
        let mut sets: Vec<Vec<usize>> = patterns.iter().map(Pattern::support).collect();
        sets.sort();
        sets.dedup();
        Self::new(n, sets)
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    /// Text format: an optional first line `n=<size>`, then one set per line
    /// as comma- or space-separated indices; `{}` is the empty set and `#`
    /// starts a comment. Without the header the ground size is one more than
    /// the largest index.
    pub fn read<R: BufRead>(reader: R) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut sets = Vec::new();
        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(v) = line.strip_prefix("n=") {
                if n.is_some() || !sets.is_empty() {
                    return Err(Error::Parse(format!("line {}: n= must come first", lineno + 1)));
                }
                n = Some(v.trim().parse().map_err(|_| Error::Parse(format!("bad ground size {v:?}")))?);
                continue;
            }
            if line == "{}" {
                sets.push(Vec::new());
                continue;
            }
            let set = line
                .split([',', ' ', '\t'])
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("line {}: bad index {t:?}", lineno + 1))))
                .collect::<Result<Vec<_>>>()?;
            sets.push(set);
        }
        let n = n.unwrap_or_else(|| sets.iter().flatten().max().map_or(0, |&m| m + 1));
        Self::new(n, sets)
    }

    pub fn write<W: Write>(&self, mut w: W) -> Result<()> {
        let mut out = format!("n={}\n", self.n);
        for s in &self.sets {
            if s.is_empty() {
                out.push_str("{}\n");
            } else {
                let row: Vec<String> = s.iter().map(|i| i.to_string()).collect();
                let _ = writeln!(out, "{}", row.join(","));
            }
        }
        w.write_all(out.as_bytes())?;
        Ok(())
    }
}

fn check_len(a: usize, b: usize, c: usize) -> Result<()> {
    if a != b || a != c {
        return Err(Error::contract(format!("length mismatch: {a}, {b}, {c}")));
    }
    Ok(())
}

/// `Σ_{i : b_i = +1} p_i · c_i`, signed.
pub fn weighted_disc(p: &SampleDistribution, c: &Pattern, b: &Pattern) -> Result<Rational> {
    check_len(p.len(), c.len(), b.len())?;
    let mut acc = Rational::zero();
    for ((w, &ci), &bi) in p.weights().iter().zip(c.bits()).zip(b.bits()) {
        if bi == 1 {
            if ci == 1 {
                acc += w;
            } else {
                acc -= w;
            }
        }
    }
    Ok(acc)
}

/// Checks `E_p[c·b] = disc_p(c; b) − disc_p(c; −b)` exactly.
pub fn check_disc_identity(p: &SampleDistribution, c: &Pattern, b: &Pattern) -> Result<bool> {
    check_len(p.len(), c.len(), b.len())?;
    let lhs: Rational = p
        .weights()
        .iter()
        .zip(c.bits().iter().zip(b.bits()))
        .map(|(w, (&ci, &bi))| if ci == bi { w.clone() } else { -w })
        .sum();
    let rhs = weighted_disc(p, c, b)? - weighted_disc(p, c, &b.negated())?;
    Ok(lhs == rhs)
}

/// `|Σ_{i∈set} c_i|`.
pub fn set_disc(c: &Pattern, set: &[usize]) -> u64 {
    set.iter().map(|&i| c.get(i) as i64).sum::<i64>().unsigned_abs()
}

/// `max_F |Σ_{i∈F} c_i|`; 0 for an empty system.
pub fn system_disc(c: &Pattern, system: &SetSystem) -> u64 {
    system.sets.iter().map(|s| set_disc(c, s)).max().unwrap_or(0)
}

/// Colorings with `c_0 = +1` in lexicographic order; the first optimum wins.
/// Negating a coloring leaves every set's discrepancy unchanged.
pub fn min_discrepancy_exhaustive(system: &SetSystem) -> Result<(Pattern, u64)> {
    let n = system.n;
    if n == 0 {
        return Ok((Pattern::default(), 0));
    }
    if n > MAX_EXHAUSTIVE {
        return Err(Error::SizeGuard(format!("exhaustive coloring search supports n ≤ {MAX_EXHAUSTIVE}")));
    }
    let mut best: Option<(Pattern, u64)> = None;
    for code in 0..1u64 << (n - 1) {
        let c = coloring_from_code(n, code);
        let d = system_disc(&c, system);
        if best.as_ref().is_none_or(|(_, b)| d < *b) {
            best = Some((c, d));
        }
    }
    Ok(best.expect("nonempty search"))
}

/// `c_0 = +1`; bit `n-2-j` of `code` colors element `j+1`.
fn coloring_from_code(n: usize, code: u64) -> Pattern {
    let mut bits = vec![1i8];
    bits.extend((0..n - 1).map(|j| if code >> (n - 2 - j) & 1 == 1 { 1 } else { -1 }));
    Pattern::new(bits).expect("±1")
}

struct Search<'a> {
    /// For each element, the sets containing it.
    member_of: Vec<Vec<usize>>,
    sizes: &'a [usize],
}

struct Node {
    sums: Vec<i64>,
    left: Vec<usize>,
    bits: Vec<i8>,
}

impl Search<'_> {
    /// Smallest final maximum still reachable from this node.
    fn lower_bound(&self, node: &Node) -> u64 {
        node.sums
            .iter()
            .zip(&node.left)
            .zip(self.sizes)
            .map(|((&s, &r), &size)| {
                let reach = (s.unsigned_abs()).saturating_sub(r as u64);
                reach.max((size % 2) as u64)
            })
            .max()
            .unwrap_or(0)
    }

    fn assign(&self, node: &mut Node, elem: usize, v: i8) {
        for &s in &self.member_of[elem] {
            node.sums[s] += v as i64;
            node.left[s] -= 1;
        }
        node.bits.push(v);
    }

    fn unassign(&self, node: &mut Node, elem: usize, v: i8) {
        for &s in &self.member_of[elem] {
            node.sums[s] -= v as i64;
            node.left[s] += 1;
        }
        node.bits.pop();
    }

    fn dfs(&self, node: &mut Node, n: usize, best: &mut Option<(Vec<i8>, u64)>) {
        let lb = self.lower_bound(node);
        if best.as_ref().is_some_and(|(_, b)| lb >= *b) {
            return;
        }
        let elem = node.bits.len();
        if elem == n {
            // every set is fully colored, so the bound is exact
            *best = Some((node.bits.clone(), lb));
            return;
        }
        for v in [-1i8, 1] {
            self.assign(node, elem, v);
            self.dfs(node, n, best);
            self.unassign(node, elem, v);
        }
    }
}

/// Exact `min_c max_F |Σ_{i∈F} c_i|` by branch and bound, split across
/// workers by coloring prefix. Returns the lexicographically smallest
/// optimal coloring with `c_0 = +1`.
pub fn min_discrepancy_coloring(system: &SetSystem) -> Result<(Pattern, u64)> {
    min_discrepancy_coloring_with(Exec::default(), system)
}

pub fn min_discrepancy_coloring_with(exec: Exec, system: &SetSystem) -> Result<(Pattern, u64)> {
    let n = system.n;
    if n == 0 {
        return Ok((Pattern::default(), 0));
    }
    if n > MAX_BRANCH_AND_BOUND {
        return Err(Error::SizeGuard(format!("branch and bound supports n ≤ {MAX_BRANCH_AND_BOUND}")));
    }
    let sizes: Vec<usize> = system.sets.iter().map(Vec::len).collect();
    let mut member_of = vec![Vec::new(); n];
    for (k, s) in system.sets.iter().enumerate() {
        for &i in s {
            member_of[i].push(k);
        }
    }
    let search = Search { member_of, sizes: &sizes };
    let prefix_len = (n - 1).min(6);
    let results = par::map_range(exec, 1usize << prefix_len, |code| {
        let mut node = Node { sums: vec![0; sizes.len()], left: sizes.clone(), bits: Vec::with_capacity(n) };
        search.assign(&mut node, 0, 1);
        for j in 0..prefix_len {
            let v = if code >> (prefix_len - 1 - j) & 1 == 1 { 1 } else { -1 };
            search.assign(&mut node, j + 1, v);
        }
        let mut best = None;
        search.dfs(&mut node, n, &mut best);
        best
    });
    let mut best: Option<(Vec<i8>, u64)> = None;
    for (bits, d) in results.into_iter().flatten() {
        if best.as_ref().is_none_or(|(_, b)| d < *b) {
            best = Some((bits, d));
        }
    }
    let (bits, d) = best.expect("some coloring is always found");
    Ok((Pattern::new(bits)?, d))
}

/// `max_b (|disc(c; supp b)| + |disc(c; supp −b)|) / n` over the class's
/// restrictions: an upper bound on the best uniform-weight correlation with
/// labels `c`.
pub fn coloring_to_gamma_bound(class: &BaseClassSpec, points: &[Point], coloring: &Pattern) -> Result<Rational> {
    let patterns = class.patterns(points)?;
    gamma_bound_of_patterns(&patterns, coloring)
}

pub fn gamma_bound_of_patterns(patterns: &[Pattern], coloring: &Pattern) -> Result<Rational> {
    let n = coloring.len();
    if n == 0 || patterns.iter().any(|b| b.len() != n) {
        return Err(Error::contract("coloring and patterns must share a nonzero length"));
    }
    let best = patterns
        .iter()
        .map(|b| set_disc(coloring, &b.support()) + set_disc(coloring, &b.negated().support()))
        .max()
        .unwrap_or(0);
    Ok(rational::ratio(best as i64, n as i64))
}

/// `max_b corr_uniform(b)` for labels `c`: γ* with the adversary fixed to
/// the uniform distribution.
pub fn uniform_best_correlation(patterns: &[Pattern], labels: &Pattern) -> Result<Rational> {
    let n = labels.len();
    if n == 0 || patterns.is_empty() || patterns.iter().any(|b| b.len() != n) {
        return Err(Error::contract("labels and patterns must share a nonzero length"));
    }
    let best = patterns.iter().map(|b| b.dot(labels)).max().expect("nonempty");
    Ok(rational::ratio(best, n as i64))
}
