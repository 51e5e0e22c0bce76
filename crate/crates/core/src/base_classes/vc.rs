//! VC dimension of explicit pattern sets, its dual, the Sauer–Shelah bound
//! and the rank of a pattern set.

use std::collections::HashSet;

use super::linalg::IntegerEchelon;
use super::BaseClassSpec;
use crate::error::{Error, Result};
use crate::sample::{Pattern, Point};

/// Upper limit on pattern-entry reads before `vc_dimension` gives up.
pub const VC_WORK_BUDGET: u64 = 2_000_000_000;

fn check_rectangular(patterns: &[Pattern]) -> Result<usize> {
    let Some(first) = patterns.first() else {
        return Err(Error::contract("pattern set is empty"));
    };
    let m = first.len();
    if patterns.iter().any(|p| p.len() != m) {
        return Err(Error::contract("patterns have different lengths"));
    }
    Ok(m)
}

/// Whether the patterns realise all `2^|cols|` labelings of `cols`.
pub fn shatters(patterns: &[Pattern], cols: &[usize]) -> bool {
    let k = cols.len();
    if k >= 64 || (patterns.len() as u128) < (1u128 << k) {
        return false;
    }
    let mut seen = vec![false; 1 << k];
    let mut count = 0usize;
    for p in patterns {
        let code = cols.iter().enumerate().fold(0usize, |acc, (b, &c)| acc | (((p.get(c) == 1) as usize) << b));
        if !seen[code] {
            seen[code] = true;
            count += 1;
            if count == seen.len() {
                return true;
            }
        }
    }
    false
}

/// Size of the largest shattered index set.
///
/// Shattered sets are closed under subsets, so candidates of size `k + 1`
/// are grown from shattered sets of size `k`. Errors with
/// [`Error::SizeGuard`] when the search would exceed [`VC_WORK_BUDGET`].
pub fn vc_dimension(patterns: &[Pattern]) -> Result<usize> {
    let m = check_rectangular(patterns)?;
    let mut distinct: Vec<&Pattern> = patterns.iter().collect();
    distinct.sort();
    distinct.dedup();
    let owned: Vec<Pattern> = distinct.into_iter().cloned().collect();
    let n = owned.len() as u64;

    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    let mut d = 0;
    let mut work = 0u64;
    loop {
        if (1u128 << (d + 1).min(127)) > n as u128 {
            return Ok(d);
        }
        let mut next = Vec::new();
        for set in &layer {
            let start = set.last().map_or(0, |&l| l + 1);
            for j in start..m {
                work = work.saturating_add(n * (d as u64 + 1));
                if work > VC_WORK_BUDGET {
                    return Err(Error::SizeGuard(format!(
                        "VC search over {m} points and {n} patterns exceeds the work budget"
                    )));
                }
                let mut cand = set.clone();
                cand.push(j);
                if shatters(&owned, &cand) {
                    next.push(cand);
                }
            }
        }
        if next.is_empty() {
            return Ok(d);
        }
        layer = next;
        d += 1;
    }
}

/// VC dimension of the dual class: points become hypotheses and patterns
/// become points.
pub fn dual_vc_dimension(patterns: &[Pattern]) -> Result<usize> {
    let m = check_rectangular(patterns)?;
    let mut cols: Vec<Pattern> = (0..m)
        .map(|j| Pattern::new(patterns.iter().map(|p| p.get(j)).collect()).expect("±1"))
        .collect();
    if cols.is_empty() {
        return Ok(0);
    }
    cols.sort();
    cols.dedup();
    vc_dimension(&cols)
}

/// Sauer–Shelah bound `Σ_{i≤d} C(m, i)`, saturating.
pub fn sauer_bound(m: usize, d: usize) -> u128 {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    for i in 0..=d.min(m) {
        total = total.saturating_add(binom);
        binom = binom.saturating_mul((m - i) as u128) / (i as u128 + 1);
    }
    total
}

/// Rank over the rationals of the class's restriction matrix on `points`.
/// Rank equal to the number of distinct points means every labeling
/// direction lies in the span of the restrictions.
pub fn span_rank(class: &BaseClassSpec, points: &[Point]) -> Result<usize> {
    pattern_rank(&class.patterns(points)?)
}

/// Rank over the rationals of patterns viewed as vectors in `R^m`.
pub fn pattern_rank(patterns: &[Pattern]) -> Result<usize> {
    let m = check_rectangular(patterns)?;
    let mut seen = HashSet::new();
    let mut ech = IntegerEchelon::default();
    for p in patterns {
        if ech.rank() == m {
            break;
        }
        if seen.insert(p) {
            let row: Vec<i64> = p.bits().iter().map(|&b| b as i64).collect();
            ech.push(&row);
        }
    }
    Ok(ech.rank())
}
