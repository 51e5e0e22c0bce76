//! Minimum γ* over labelings of small planar grids under halfspaces.

use std::time::{Duration, Instant};

use num_traits::ToPrimitive;

use crate::base_classes::BaseClassSpec;
use crate::error::{Error, Result};
use crate::gamma_vc::{square_grid, worst_labeling, MAX_SHATTER_POINTS};
use crate::par::{self, Exec};
use crate::rational::{self, Rational};
use crate::realizability::gamma_star_of_patterns;
use crate::rng::Rng;
use crate::sample::Pattern;

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeRow {
    pub n: usize,
    pub points: usize,
    pub labelings: u64,
    /// True when every labeling was solved; otherwise a random subset was.
    pub exact: bool,
    pub min_gamma_star: Rational,
    pub worst_labeling: Pattern,
    pub wall_time: Duration,
}

/// For each side length `n`, the minimum over labelings of the `n×n` grid
/// of γ* under planar halfspaces. Grids with at most
/// [`MAX_SHATTER_POINTS`] points are solved exhaustively; larger ones use
/// `sampled` uniformly random labelings drawn from `seed`.
pub fn halfspace_grid_probe(ns: &[usize], sampled: usize, seed: u64, exec: Exec) -> Result<Vec<ProbeRow>> {
    let class = BaseClassSpec::halfspaces(2)?;
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        if n == 0 || n > 12 {
            return Err(Error::SizeGuard(format!("grid side {n} outside 1..=12")));
        }
        let start = Instant::now();
        let points = square_grid(n);
        let patterns = class.patterns(&points)?;
        let k = points.len();
        let (labelings, exact, worst, value) = if k <= MAX_SHATTER_POINTS {
            let (w, v) = worst_labeling(exec, &patterns, k)?;
            (1u64 << k, true, w, v)
        } else {
            if sampled == 0 {
                return Err(Error::contract("sampled labeling count must be positive for large grids"));
            }
            let mut rng = Rng::seed_from(seed ^ n as u64);
            let draws: Vec<Vec<i8>> = (0..sampled).map(|_| (0..k).map(|_| rng.sign()).collect()).collect();
            let values = par::map(exec, &draws, |y| gamma_star_of_patterns(y, &patterns));
            let mut best: Option<(usize, Rational)> = None;
            for (i, v) in values.into_iter().enumerate() {
                let v = v?;
                if best.as_ref().is_none_or(|(_, b)| v < *b) {
                    best = Some((i, v));
                }
            }
            let (i, v) = best.expect("sampled > 0");
            (sampled as u64, false, Pattern::new(draws[i].clone())?, v)
        };
        rows.push(ProbeRow {
            n,
            points: k,
            labelings,
            exact,
            min_gamma_star: value,
            worst_labeling: worst,
            wall_time: start.elapsed(),
        });
    }
    Ok(rows)
}

/// CSV without timings, so reruns are byte-identical.
pub fn probe_csv(rows: &[ProbeRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "points", "labelings", "exact", "min_gamma_star", "min_gamma_star_f64", "worst_labeling"])?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.points.to_string(),
            r.labelings.to_string(),
            r.exact.to_string(),
            rational::format(&r.min_gamma_star),
            format!("{:.6}", r.min_gamma_star.to_f64().unwrap_or(f64::NAN)),
            r.worst_labeling.to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn small_grids_are_exact_and_monotone() {
        let rows = halfspace_grid_probe(&[1, 2, 3], 0, 0, Exec::Parallel).unwrap();
        assert_eq!(rows[0].min_gamma_star, int(1));
        assert_eq!(rows[1].labelings, 16);
        assert_eq!(rows[2].labelings, 512);
        assert!(rows.iter().all(|r| r.exact));
        assert!(rows[2].min_gamma_star <= rows[1].min_gamma_star);
        assert!(rows[1].min_gamma_star < int(1));
        let again = halfspace_grid_probe(&[1, 2, 3], 0, 0, Exec::Sequential).unwrap();
        assert_eq!(probe_csv(&rows).unwrap(), probe_csv(&again).unwrap());
    }
}
